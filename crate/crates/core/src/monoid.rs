//! Finitely generated submonoids of finitely generated abelian groups:
//! membership, intersections, saturation and the conductor ideal.
//!
//! Saturation membership reduces to cone membership. If `w^0` lies in
//! `cone(S)`, clearing denominators gives `n w^0 = Σ c_i s_i^0` with
//! `c_i >= 0`, so `n w - Σ c_i s_i` is torsion and is killed by the
//! exponent `e` of the torsion subgroup; hence `e n w ∈ S`.

use crate::abelian::{AbelianGroup, GroupElement, Presentation, Subgroup};
use crate::error::{Error, Result};
use crate::integer::{dot, IntMatrix};
use crate::lattice::IntegerProblem;
use crate::lp::Constraints;
use crate::polyhedral::{integral_direction, parallelotope_points, triangulate, zonotope, RationalCone, RationalPolyhedron};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use std::sync::{Arc, OnceLock};

/// Bound used for generators with zero free part in the membership
/// polytope: the lcm of the relevant torsion orders, or their product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CapMode {
    #[default]
    Lcm,
    Product,
}

#[derive(Clone, Debug)]
pub struct EmbeddedMonoid {
    group: Arc<AbelianGroup>,
    generators: Vec<GroupElement>,
    cap_mode: CapMode,
    cone: OnceLock<RationalCone>,
    plan: OnceLock<Plan>,
}

#[derive(Clone, Debug)]
enum Plan {
    /// Pointed cone; indices of the nonzero generators and their caps.
    Pointed { active: Vec<usize>, caps: Vec<Option<BigInt>> },
    /// Generators `inner` span the lineality space and form a group `H`.
    Quotient {
        inner: Vec<usize>,
        outer: Vec<usize>,
        quotient: Box<EmbeddedMonoid>,
        canonical: crate::abelian::Canonical,
        hull: Subgroup,
        relation: Vec<BigInt>,
    },
}

/// Elements `M` with `S̃ = M + S`, and the elements of `S` whose free parts
/// were used to build the zonotope.
#[derive(Clone, Debug)]
pub struct ModuleGeneratorSet {
    pub spanning_elements: Vec<GroupElement>,
    pub elements: Vec<GroupElement>,
}

#[derive(Clone, Debug)]
pub struct IntersectionResult {
    /// Lattice basis of the kernel of `(x, y) ↦ Σ x_i g_i - Σ y_j h_j`.
    pub kernel_basis: Vec<Vec<BigInt>>,
    /// Images of the parallelotope points, before any reduction.
    pub raw: Vec<GroupElement>,
    pub monoid: EmbeddedMonoid,
}

#[derive(Clone, Debug)]
pub struct ConductorPoint {
    pub interior_point: GroupElement,
    pub multiplier: BigInt,
    pub point: GroupElement,
}

fn free_norm(g: &GroupElement) -> BigInt {
    g.free().iter().map(|x| x.abs()).sum()
}

impl EmbeddedMonoid {
    pub fn new(group: &Arc<AbelianGroup>, generators: Vec<GroupElement>) -> Result<Self> {
        if generators.iter().any(|g| g.group() != group) {
            return Err(Error::GroupMismatch);
        }
        Ok(EmbeddedMonoid {
            group: group.clone(),
            generators,
            cap_mode: CapMode::default(),
            cone: OnceLock::new(),
            plan: OnceLock::new(),
        })
    }

    pub fn with_cap_mode(mut self, mode: CapMode) -> Self {
        if mode != self.cap_mode {
            self.cap_mode = mode;
            self.plan = OnceLock::new();
        }
        self
    }

    pub fn cap_mode(&self) -> CapMode {
        self.cap_mode
    }

    pub fn group(&self) -> &Arc<AbelianGroup> {
        &self.group
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// `cone(S)` in `Q^rank`.
    pub fn cone(&self) -> &RationalCone {
        self.cone.get_or_init(|| {
            let free: Vec<Vec<BigInt>> = self.generators.iter().map(|g| g.free().to_vec()).collect();
            RationalCone::from_generators(self.group.rank(), &free)
        })
    }

    fn check(&self, w: &GroupElement) -> Result<()> {
        if w.group() != &self.group {
            Err(Error::GroupMismatch)
        } else {
            Ok(())
        }
    }

    fn cap(&self, g: &GroupElement) -> BigInt {
        let orders = g.torsion().iter().zip(self.group.torsion_orders()).filter(|(x, _)| !x.is_zero());
        match self.cap_mode {
            CapMode::Lcm => orders.fold(BigInt::one(), |l, (_, a)| l.lcm(a)),
            CapMode::Product => orders.map(|(_, a)| a.clone()).product(),
        }
    }

    fn plan(&self) -> &Plan {
        self.plan.get_or_init(|| self.build_plan())
    }

    fn build_plan(&self) -> Plan {
        let active: Vec<usize> = (0..self.generators.len()).filter(|&i| !self.generators[i].is_zero()).collect();
        let cone = self.cone();
        if cone.is_pointed() {
            let caps = active
                .iter()
                .map(|&i| {
                    let g = &self.generators[i];
                    g.has_zero_free_part().then(|| self.cap(g))
                })
                .collect();
            return Plan::Pointed { active, caps };
        }
        // generators whose free part lies in the lineality space
        let normals = cone.facet_normals();
        let in_lineality = |g: &GroupElement| normals.iter().all(|n| dot(n, g.free()).is_zero());
        let (inner, outer): (Vec<usize>, Vec<usize>) =
            active.iter().partition(|&&i| in_lineality(&self.generators[i]));

        let hull = Subgroup::new(&self.group, inner.iter().map(|&i| self.generators[i].clone()).collect())
            .expect("same group");
        let n = self.group.ngens();
        let mut rel_cols: Vec<Vec<BigInt>> = Vec::new();
        let rel = self.group.relation_matrix();
        for j in 0..rel.ncols() {
            rel_cols.push(rel.column(j));
        }
        for &i in &inner {
            rel_cols.push(self.generators[i].coords());
        }
        let canonical = Presentation::new(n, IntMatrix::from_columns(n, &rel_cols)).canonicalize();
        let images = outer.iter().map(|&i| canonical.map(&self.generators[i].coords())).collect();
        let quotient = EmbeddedMonoid::new(&canonical.group, images).expect("same group").with_cap_mode(self.cap_mode);

        // strictly positive relation among the inner generators
        let k = inner.len();
        let mut lp = Constraints::new(k);
        for row in 0..self.group.rank() {
            let a: Vec<BigInt> = inner.iter().map(|&i| self.generators[i].free()[row].clone()).collect();
            lp.eqs.push((a, BigInt::zero()));
        }
        for j in 0..k {
            let mut e = vec![BigInt::zero(); k];
            e[j] = BigInt::one();
            lp.ineqs.push((e, BigInt::one()));
        }
        let point = lp.feasible_point().expect("lineality generators admit a positive relation");
        let exponent = self.group.exponent();
        let relation: Vec<BigInt> = integral_direction(&point).into_iter().map(|x| x * &exponent).collect();
        Plan::Quotient { inner, outer, quotient: Box::new(quotient), canonical, hull, relation }
    }

    /// The polyhedron `B` of coefficient vectors for the pointed case:
    /// `x >= 0`, `Σ x_i s_i^0 = w^0`, and `x_i <= b_i` for generators with
    /// zero free part. Coordinates follow the nonzero generators in order.
    pub fn membership_polytope(&self, w: &GroupElement) -> Result<RationalPolyhedron> {
        self.check(w)?;
        let Plan::Pointed { active, caps } = self.plan() else {
            return Err(Error::UnboundedPolyhedron);
        };
        let t = active.len();
        let mut p = RationalPolyhedron::new(t);
        for row in 0..self.group.rank() {
            let a: Vec<BigInt> = active.iter().map(|&i| self.generators[i].free()[row].clone()).collect();
            p.add_equation(a, w.free()[row].clone().into());
        }
        for (j, cap) in caps.iter().enumerate() {
            let mut e = vec![BigInt::zero(); t];
            e[j] = BigInt::one();
            p.add_inequality(e.clone(), BigInt::zero().into());
            if let Some(b) = cap {
                let neg = e.iter().map(|x| -x).collect();
                p.add_inequality(neg, (-b).into());
            }
        }
        Ok(p)
    }

    /// Coefficients `x >= 0` with `Σ x_i s_i = w`, indexed like the
    /// generators, or `None` if `w ∉ S`. In the pointed case this is the
    /// lexicographically first point of `B` satisfying the torsion
    /// congruences.
    pub fn witness(&self, w: &GroupElement) -> Result<Option<Vec<BigInt>>> {
        self.check(w)?;
        if !self.cone().contains(w.free()) {
            return Ok(None);
        }
        match self.plan() {
            Plan::Pointed { active, caps } => {
                let t = active.len();
                let mut prob = IntegerProblem::new(t);
                for row in 0..self.group.rank() {
                    let a: Vec<BigInt> = active.iter().map(|&i| self.generators[i].free()[row].clone()).collect();
                    prob.eqs.push((a, w.free()[row].clone()));
                }
                for (k, m) in self.group.torsion_orders().iter().enumerate() {
                    let a: Vec<BigInt> = active.iter().map(|&i| self.generators[i].torsion()[k].clone()).collect();
                    prob.congruences.push((a, w.torsion()[k].clone(), m.clone()));
                }
                for (j, cap) in caps.iter().enumerate() {
                    let mut e = vec![BigInt::zero(); t];
                    e[j] = BigInt::one();
                    if let Some(b) = cap {
                        prob.ineqs.push((e.iter().map(|x| -x).collect(), -b));
                    }
                    prob.ineqs.push((e, BigInt::zero()));
                }
                let x = prob.first().expect("membership polytope is bounded");
                Ok(x.map(|x| {
                    let mut full = vec![BigInt::zero(); self.generators.len()];
                    for (j, &i) in active.iter().enumerate() {
                        full[i] = x[j].clone();
                    }
                    full
                }))
            }
            Plan::Quotient { inner, outer, quotient, canonical, hull, relation } => {
                let image = canonical.map(&w.coords());
                let Some(xo) = quotient.witness(&image)? else {
                    return Ok(None);
                };
                let mut rest = w.clone();
                for (j, &i) in outer.iter().enumerate() {
                    rest = rest.sub(&self.generators[i].scale(&xo[j]))?;
                }
                let y = hull.solve(&rest)?.expect("remainder lies in the lineality group");
                // shift by a multiple of the positive relation to make y nonnegative
                let mut shift = BigInt::zero();
                for (yj, zj) in y.iter().zip(relation) {
                    if yj.is_negative() {
                        shift = shift.max(Integer::div_ceil(&-yj, zj));
                    }
                }
                let mut full = vec![BigInt::zero(); self.generators.len()];
                for (j, &i) in outer.iter().enumerate() {
                    full[i] = xo[j].clone();
                }
                for (j, &i) in inner.iter().enumerate() {
                    full[i] = &y[j] + &shift * &relation[j];
                }
                Ok(Some(full))
            }
        }
    }

    pub fn contains(&self, w: &GroupElement) -> Result<bool> {
        Ok(self.witness(w)?.is_some())
    }

    /// Evaluates `Σ x_i s_i`.
    pub fn evaluate(&self, x: &[BigInt]) -> GroupElement {
        let mut acc = GroupElement::zero(&self.group);
        for (c, g) in x.iter().zip(&self.generators) {
            if !c.is_zero() {
                acc = acc.add_unchecked(&g.scale(c));
            }
        }
        acc
    }

    pub fn in_saturation(&self, w: &GroupElement) -> Result<bool> {
        self.check(w)?;
        Ok(self.cone().contains(w.free()))
    }

    pub fn is_spanning(&self) -> bool {
        Subgroup::new(&self.group, self.generators.clone()).expect("same group").is_whole()
    }

    /// For each extreme ray the generator with the smallest free part on it.
    pub fn minimal_ray_generators(&self) -> Vec<GroupElement> {
        let cone = self.cone();
        cone.rays()
            .iter()
            .filter_map(|v| {
                self.generators
                    .iter()
                    .filter(|g| on_ray(g.free(), v))
                    .min_by(|a, b| free_norm(a).cmp(&free_norm(b)).then_with(|| a.coords().cmp(&b.coords())))
                    .cloned()
            })
            .collect()
    }

    pub fn module_generators(&self) -> ModuleGeneratorSet {
        let cone = self.cone();
        let spanning: Vec<GroupElement> = if cone.is_pointed() {
            let chosen = self.minimal_ray_generators();
            if chosen.len() == cone.rays().len() {
                chosen
            } else {
                self.generators.iter().filter(|g| !g.has_zero_free_part()).cloned().collect()
            }
        } else {
            self.generators.iter().filter(|g| !g.has_zero_free_part()).cloned().collect()
        };
        let free: Vec<Vec<BigInt>> = spanning.iter().map(|g| g.free().to_vec()).collect();
        let points = zonotope(self.group.rank(), &free).lattice_points().expect("zonotopes are bounded");
        let mut elements = Vec::new();
        for p in &points {
            for t in self.group.torsion_parts() {
                elements.push(GroupElement::new(&self.group, p.clone(), t).expect("dimensions match"));
            }
        }
        ModuleGeneratorSet { spanning_elements: spanning, elements }
    }

    pub fn in_conductor_ideal(&self, w: &GroupElement) -> Result<bool> {
        self.check(w)?;
        let m = self.module_generators();
        self.in_conductor_with(&m, w)
    }

    fn in_conductor_with(&self, m: &ModuleGeneratorSet, w: &GroupElement) -> Result<bool> {
        if !self.contains(w)? {
            return Ok(false);
        }
        let ok = m.elements.par_iter().all(|x| self.contains(&w.add_unchecked(x)).unwrap_or(false));
        Ok(ok)
    }

    /// The smallest multiple `r w` of the canonical interior point that
    /// lies in the conductor ideal.
    pub fn conductor_point(&self) -> Result<ConductorPoint> {
        if !self.is_spanning() {
            return Err(Error::NotSpanning);
        }
        let cone = self.cone();
        let summands: Vec<GroupElement> = if cone.is_pointed() {
            self.minimal_ray_generators()
        } else {
            self.generators.clone()
        };
        let mut free = vec![BigInt::zero(); self.group.rank()];
        for g in &summands {
            for (a, b) in free.iter_mut().zip(g.free()) {
                *a += b;
            }
        }
        let w = GroupElement::new(&self.group, free, vec![BigInt::zero(); self.group.torsion_orders().len()])?;
        let m = self.module_generators();
        let mut r = BigInt::one();
        loop {
            let p = w.scale(&r);
            if self.in_conductor_with(&m, &p)? {
                return Ok(ConductorPoint { interior_point: w, multiplier: r, point: p });
            }
            r += 1;
        }
    }

    /// Generators of `S ∩ S'` for monoids in the same group.
    pub fn intersect(&self, other: &EmbeddedMonoid) -> Result<EmbeddedMonoid> {
        Ok(self.intersect_with_details(other)?.monoid)
    }

    pub fn intersect_with_details(&self, other: &EmbeddedMonoid) -> Result<IntersectionResult> {
        if self.group != other.group {
            return Err(Error::AmbientMismatch);
        }
        let n1 = self.generators.len();
        let n = n1 + other.generators.len();
        let dom = AbelianGroup::free(n);
        let mut images = self.generators.clone();
        images.extend(other.generators.iter().map(|g| g.negate()));
        let beta = crate::abelian::GroupHom::new(dom, self.group.clone(), images)?;
        let basis = beta.kernel_lattice();
        let rho = basis.len();
        let to_full = |z: &[BigInt]| -> Vec<BigInt> {
            let mut v = vec![BigInt::zero(); n];
            for (c, b) in z.iter().zip(&basis) {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += c * bi;
                }
            }
            v
        };
        let image = |z: &[BigInt]| -> GroupElement { self.evaluate(&to_full(z)[..n1]) };

        // the cone ι^{-1}(Q_{>=0}^n) in parameter space
        let rows: Vec<Vec<BigInt>> = (0..n).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
        let cone = RationalCone::from_constraints(rho, &rows, &[]);
        let rays = cone.rays().to_vec();
        let mut points: Vec<Vec<BigInt>> = Vec::new();
        if !rays.is_empty() {
            for simplex in triangulate(rho, &rays) {
                let vs: Vec<Vec<BigInt>> = simplex.iter().map(|&i| rays[i].clone()).collect();
                points.extend(parallelotope_points(rho, &vs));
            }
        } else {
            points.push(vec![BigInt::zero(); rho]);
        }
        let mut seen = std::collections::BTreeSet::new();
        points.retain(|p| seen.insert(p.clone()));
        let raw: Vec<GroupElement> = points.iter().map(|z| image(z)).collect();

        // irreducible points of the kernel monoid: z is reducible iff some
        // other nonzero point h has coefficient vector below that of z
        let mut coeffs: Vec<Vec<BigInt>> =
            points.iter().map(|z| to_full(z)).filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        coeffs.sort_by_cached_key(|v| v.iter().sum::<BigInt>());
        let irreducible: Vec<&Vec<BigInt>> = coeffs
            .iter()
            .enumerate()
            .filter(|(i, z)| !coeffs[..*i].iter().any(|h| h != *z && h.iter().zip(z.iter()).all(|(a, b)| a <= b)))
            .map(|(_, z)| z)
            .collect();
        let mut gens: Vec<GroupElement> =
            irreducible.iter().map(|v| self.evaluate(&v[..n1])).filter(|g| !g.is_zero()).collect();
        gens.sort_by(|a, b| free_norm(a).cmp(&free_norm(b)).then_with(|| a.coords().cmp(&b.coords())));
        gens.dedup();
        let monoid = reduce_generators(&self.group, gens, self.cap_mode)?;
        Ok(IntersectionResult { kernel_basis: basis, raw, monoid })
    }
}

fn on_ray(x: &[BigInt], v: &[BigInt]) -> bool {
    // x = t v with t > 0
    let Some(j) = v.iter().position(|a| !a.is_zero()) else {
        return false;
    };
    let (t, r) = x[j].div_rem(&v[j]);
    r.is_zero() && t.is_positive() && x.iter().zip(v).all(|(a, b)| a == &(&t * b))
}

/// Drops generators that are combinations of the others. A first pass in
/// increasing norm keeps only elements not generated by those kept so far;
/// a second pass from the largest norm down removes what later elements
/// made redundant. Input must be sorted by increasing norm.
pub fn reduce_generators(
    group: &Arc<AbelianGroup>,
    gens: Vec<GroupElement>,
    mode: CapMode,
) -> Result<EmbeddedMonoid> {
    let mut kept: Vec<GroupElement> = Vec::new();
    for g in gens {
        if g.is_zero() || kept.contains(&g) {
            continue;
        }
        let m = EmbeddedMonoid::new(group, kept.clone())?.with_cap_mode(mode);
        if !m.contains(&g)? {
            kept.push(g);
        }
    }
    let mut i = kept.len();
    while i > 0 {
        i -= 1;
        let mut others = kept.clone();
        let g = others.remove(i);
        let m = EmbeddedMonoid::new(group, others)?.with_cap_mode(mode);
        if m.contains(&g)? {
            kept.remove(i);
        }
    }
    Ok(EmbeddedMonoid::new(group, kept)?.with_cap_mode(mode))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integer::to_big;

    fn running() -> EmbeddedMonoid {
        let k = AbelianGroup::new(1, to_big(&[4])).unwrap();
        let g = |f: i64, t: i64| GroupElement::from_i64(&k, &[f], &[t]).unwrap();
        EmbeddedMonoid::new(&k, vec![g(0, 2), g(1, 1), g(3, 2)]).unwrap()
    }

    fn numerical(gens: &[i64]) -> EmbeddedMonoid {
        let z = AbelianGroup::free(1);
        EmbeddedMonoid::new(&z, gens.iter().map(|&a| GroupElement::from_i64(&z, &[a], &[]).unwrap()).collect())
            .unwrap()
    }

    fn el(m: &EmbeddedMonoid, f: &[i64], t: &[i64]) -> GroupElement {
        GroupElement::from_i64(m.group(), f, t).unwrap()
    }

    #[test]
    fn running_membership() {
        let s = running();
        let w = el(&s, &[3], &[1]);
        assert_eq!(s.witness(&w).unwrap(), Some(to_big(&[1, 3, 0])));
        assert!(s.contains(&el(&s, &[0], &[0])).unwrap());
        assert_eq!(s.witness(&el(&s, &[0], &[0])).unwrap(), Some(to_big(&[0, 0, 0])));
        assert!(!s.contains(&el(&s, &[1], &[0])).unwrap());
        let b = s.membership_polytope(&w).unwrap().lattice_points().unwrap();
        let mut expected = Vec::new();
        for a in 0..=4 {
            expected.push(to_big(&[a, 0, 1]));
            expected.push(to_big(&[a, 3, 0]));
        }
        expected.sort();
        assert_eq!(b, expected);
    }

    #[test]
    fn running_conductor() {
        let s = running();
        let m = s.module_generators();
        let mut expected = Vec::new();
        for f in 0..=1 {
            for t in 0..4 {
                expected.push(el(&s, &[f], &[t]));
            }
        }
        assert_eq!(m.elements, expected);
        assert!(s.in_conductor_ideal(&el(&s, &[3], &[1])).unwrap());
        assert!(!s.in_conductor_ideal(&el(&s, &[1], &[0])).unwrap());
        assert!(!s.in_conductor_ideal(&el(&s, &[2], &[0])).unwrap());
        let c = s.conductor_point().unwrap();
        assert_eq!(c.interior_point, el(&s, &[1], &[0]));
        assert_eq!(c.point, el(&s, &[3], &[0]));
        assert!(s.in_saturation(&el(&s, &[0], &[1])).unwrap());
        assert!(s.is_spanning());
    }

    #[test]
    fn numerical_semigroups() {
        let s = numerical(&[2, 5]);
        assert!(!s.in_saturation(&el(&s, &[-1], &[])).unwrap());
        assert_eq!(s.conductor_point().unwrap().point, el(&s, &[4], &[]));
        assert!(numerical(&[2, 5]).is_spanning());
        assert!(!numerical(&[2, 4]).is_spanning());
        assert_eq!(numerical(&[]).conductor_point().unwrap_err(), Error::NotSpanning);
        let s1 = numerical(&[1]);
        assert!(s1.in_conductor_ideal(&el(&s1, &[0], &[])).unwrap());
        let m = s1.module_generators();
        assert_eq!(m.elements, vec![el(&s1, &[0], &[]), el(&s1, &[1], &[])]);
    }

    #[test]
    fn intersection_example() {
        let s1 = numerical(&[2, 5]);
        let s2 = numerical(&[3]);
        let r = s1.intersect_with_details(&s2).unwrap();
        let mut raw: Vec<i64> = r.raw.iter().map(|g| i64::try_from(&g.free()[0]).unwrap()).collect();
        raw.sort();
        assert_eq!(raw, vec![0, 6, 9, 12, 15, 21]);
        let mut gens: Vec<i64> = r.monoid.generators().iter().map(|g| i64::try_from(&g.free()[0]).unwrap()).collect();
        gens.sort();
        assert_eq!(gens, vec![6, 9]);
    }

    #[test]
    fn orthant_conductor_and_generators() {
        let z2 = AbelianGroup::free(2);
        let s = EmbeddedMonoid::new(
            &z2,
            vec![GroupElement::from_i64(&z2, &[1, 0], &[]).unwrap(), GroupElement::from_i64(&z2, &[0, 1], &[]).unwrap()],
        )
        .unwrap();
        let c = s.conductor_point().unwrap();
        assert_eq!(c.point, el(&s, &[1, 1], &[]));
        assert_eq!(c.multiplier, BigInt::one());
        assert_eq!(s.module_generators().elements.len(), 4);
    }

    #[test]
    fn non_pointed_membership() {
        // Z with generators -2, 3: the whole group
        let s = numerical(&[-2, 3]);
        for a in -7..=7 {
            let w = el(&s, &[a], &[]);
            let x = s.witness(&w).unwrap().unwrap();
            assert!(x.iter().all(|v| !v.is_negative()));
            assert_eq!(s.evaluate(&x), w);
        }
        // Z^2 with (1,0), (-1,0), (0,2): upper half plane with even y
        let z2 = AbelianGroup::free(2);
        let g = |a: i64, b: i64| GroupElement::from_i64(&z2, &[a, b], &[]).unwrap();
        let s = EmbeddedMonoid::new(&z2, vec![g(1, 0), g(-1, 0), g(0, 2)]).unwrap();
        assert!(s.contains(&g(-5, 4)).unwrap());
        assert!(!s.contains(&g(-5, 3)).unwrap());
        assert!(!s.contains(&g(0, -2)).unwrap());
    }

    #[test]
    fn cap_modes_agree() {
        let k = AbelianGroup::new(1, to_big(&[2, 4])).unwrap();
        let g = |f: i64, t: &[i64]| GroupElement::from_i64(&k, &[f], t).unwrap();
        let gens = vec![g(0, &[1, 2]), g(1, &[0, 1]), g(2, &[1, 0])];
        let lcm = EmbeddedMonoid::new(&k, gens.clone()).unwrap();
        let prod = EmbeddedMonoid::new(&k, gens).unwrap().with_cap_mode(CapMode::Product);
        for f in 0..4 {
            for t in k.torsion_parts() {
                let w = GroupElement::new(&k, vec![BigInt::from(f)], t).unwrap();
                assert_eq!(lcm.contains(&w).unwrap(), prod.contains(&w).unwrap());
            }
        }
    }
}
