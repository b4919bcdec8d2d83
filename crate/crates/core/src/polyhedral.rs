//! Rational polyhedral cones and polyhedra with exact V- and
//! H-descriptions, lattice points, facet forms, zonotopes and
//! triangulations.

use crate::dd::{cone_from_constraints, DdResult};
use crate::error::{Error, Result};
use crate::integer::{adjugate, dot, integer_kernel, primitive, saturated_basis, vec_gcd, IntMatrix};
use crate::lattice::IntegerProblem;
use crate::lp::Constraints;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::ops::ControlFlow;
use std::sync::OnceLock;

/// Facet normals and equations of a cone: `f · x >= 0`, `e · x = 0`.
/// Facet normals are primitive and lie in the linear span of the cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub facets: Vec<Vec<BigInt>>,
    pub equations: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug)]
enum ConeInput {
    Generators(Vec<Vec<BigInt>>),
    Constraints { ineqs: Vec<Vec<BigInt>>, eqs: Vec<Vec<BigInt>> },
}

#[derive(Clone, Debug)]
pub struct RationalCone {
    dim: usize,
    input: ConeInput,
    vrep: OnceLock<DdResult>,
    hrep: OnceLock<HRep>,
}

/// A facet with its primitive inward normal.
#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub cone: RationalCone,
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn integral_direction(x: &[BigRational]) -> Vec<BigInt> {
    let l = x.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let v: Vec<BigInt> = x.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive(&v)
}

impl RationalCone {
    pub fn from_generators(dim: usize, gens: &[Vec<BigInt>]) -> Self {
        let mut g: Vec<Vec<BigInt>> =
            gens.iter().filter(|v| v.iter().any(|x| !x.is_zero())).map(|v| primitive(v)).collect();
        g.sort();
        g.dedup();
        RationalCone { dim, input: ConeInput::Generators(g), vrep: OnceLock::new(), hrep: OnceLock::new() }
    }

    pub fn from_constraints(dim: usize, ineqs: &[Vec<BigInt>], eqs: &[Vec<BigInt>]) -> Self {
        RationalCone {
            dim,
            input: ConeInput::Constraints { ineqs: ineqs.to_vec(), eqs: eqs.to_vec() },
            vrep: OnceLock::new(),
            hrep: OnceLock::new(),
        }
    }

    /// The whole space `Q^dim`.
    pub fn whole(dim: usize) -> Self {
        Self::from_constraints(dim, &[], &[])
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn vrep(&self) -> &DdResult {
        self.vrep.get_or_init(|| match &self.input {
            ConeInput::Constraints { ineqs, eqs } => cone_from_constraints(self.dim, ineqs, eqs),
            ConeInput::Generators(_) => {
                let h = self.hrep();
                cone_from_constraints(self.dim, &h.facets, &h.equations)
            }
        })
    }

    pub fn hrep(&self) -> &HRep {
        self.hrep.get_or_init(|| {
            let gens: Vec<Vec<BigInt>> = match &self.input {
                ConeInput::Generators(g) => g.clone(),
                ConeInput::Constraints { .. } => {
                    let v = self.vrep();
                    let mut g = v.rays.clone();
                    for l in &v.lineality {
                        g.push(l.clone());
                        g.push(l.iter().map(|x| -x).collect());
                    }
                    g
                }
            };
            let dual = cone_from_constraints(self.dim, &gens, &[]);
            HRep { facets: dual.rays, equations: dual.lineality }
        })
    }

    /// Extreme rays of the pointed part (orthogonal to the lineality space).
    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.vrep().rays
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.vrep().lineality
    }

    pub fn facet_normals(&self) -> &[Vec<BigInt>] {
        &self.hrep().facets
    }

    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.hrep().equations
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        self.dim - self.equations().len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality().is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations().is_empty()
    }

    /// All generators of the cone: rays plus both signs of the lineality basis.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        let mut g = self.rays().to_vec();
        for l in self.lineality() {
            g.push(l.clone());
            g.push(l.iter().map(|x| -x).collect());
        }
        g
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        assert_eq!(x.len(), self.dim);
        if let ConeInput::Constraints { ineqs, eqs } = &self.input {
            return ineqs.iter().all(|a| !dot(a, x).is_negative()) && eqs.iter().all(|e| dot(e, x).is_zero());
        }
        let h = self.hrep();
        h.equations.iter().all(|e| dot(e, x).is_zero()) && h.facets.iter().all(|f| !dot(f, x).is_negative())
    }

    pub fn contains_rational(&self, x: &[BigRational]) -> bool {
        self.contains(&integral_direction(x))
    }

    /// Whether `x` lies in the span and strictly inside every facet.
    pub fn relative_interior_contains(&self, x: &[BigInt]) -> bool {
        let h = self.hrep();
        h.equations.iter().all(|e| dot(e, x).is_zero()) && h.facets.iter().all(|f| dot(f, x).is_positive())
    }

    pub fn relative_interior_contains_rational(&self, x: &[BigRational]) -> bool {
        self.relative_interior_contains(&integral_direction(x))
    }

    pub fn contains_cone(&self, other: &RationalCone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    pub fn facets(&self) -> Vec<Facet> {
        self.facet_normals()
            .iter()
            .map(|n| {
                let mut gens: Vec<Vec<BigInt>> =
                    self.rays().iter().filter(|r| dot(n, r).is_zero()).cloned().collect();
                for l in self.lineality() {
                    gens.push(l.clone());
                    gens.push(l.iter().map(|x| -x).collect());
                }
                Facet { normal: n.clone(), cone: RationalCone::from_generators(self.dim, &gens) }
            })
            .collect()
    }

    pub fn intersect(&self, other: &RationalCone) -> RationalCone {
        let mut ineqs = self.facet_normals().to_vec();
        ineqs.extend(other.facet_normals().iter().cloned());
        let mut eqs = self.equations().to_vec();
        eqs.extend(other.equations().iter().cloned());
        RationalCone::from_constraints(self.dim, &ineqs, &eqs)
    }

    /// A lattice point in the relative interior: the sum of the rays.
    pub fn interior_point(&self) -> Vec<BigInt> {
        let mut s = vec![BigInt::zero(); self.dim];
        for r in self.rays() {
            for (a, b) in s.iter_mut().zip(r) {
                *a += b;
            }
        }
        s
    }

    /// A basis of the lattice `span ∩ Z^dim`.
    pub fn span_lattice_basis(&self) -> Vec<Vec<BigInt>> {
        let eqs = self.equations();
        if eqs.is_empty() {
            return crate::integer::unit_vectors(self.dim);
        }
        integer_kernel(&IntMatrix::from_rows(self.dim, eqs))
    }

    /// A rational point strictly inside the cone, found by LP, or `None`
    /// if the cone is not full dimensional. Avoids the V-description.
    pub fn strict_interior_point(&self) -> Option<Vec<BigRational>> {
        let (ineqs, eqs) = match &self.input {
            ConeInput::Constraints { ineqs, eqs } => (ineqs.clone(), eqs.clone()),
            ConeInput::Generators(_) => (self.facet_normals().to_vec(), self.equations().to_vec()),
        };
        if !eqs.is_empty() {
            return None;
        }
        let mut c = Constraints::new(self.dim);
        c.ineqs = ineqs.iter().map(|a| (a.clone(), BigInt::one())).collect();
        c.feasible_point()
    }
}

/// The linear form `x ↦ normal · x / divisor`, primitive on the lattice
/// spanned by a cone and vanishing on one of its facets. Off the span it
/// is extended orthogonally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetForm {
    pub normal: Vec<BigInt>,
    pub divisor: BigInt,
}

impl FacetForm {
    pub fn level(&self, x: &[BigInt]) -> BigRational {
        BigRational::new(dot(&self.normal, x), self.divisor.clone())
    }

    pub fn level_rational(&self, x: &[BigRational]) -> BigRational {
        let s: BigRational = self
            .normal
            .iter()
            .zip(x)
            .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
            .sum();
        s / BigRational::from_integer(self.divisor.clone())
    }

    /// Value on a lattice point of the span, which is an integer.
    pub fn level_int(&self, x: &[BigInt]) -> BigInt {
        let v = self.level(x);
        assert!(v.is_integer(), "point off the lattice of the cone");
        v.to_integer()
    }

    /// The points of the `k`-th facet parallel: `{x in span : level(x) = k}`.
    pub fn parallel(&self, sigma: &RationalCone, k: &BigInt) -> RationalPolyhedron {
        let mut p = RationalPolyhedron::new(sigma.ambient_dim());
        for e in sigma.equations() {
            p.add_equation(e.clone(), BigRational::zero());
        }
        p.add_equation(self.normal.clone(), BigRational::from_integer(k * &self.divisor));
        p
    }
}

/// Facet form normalized on the lattice `span(sigma) ∩ Z^n`.
pub fn facet_form_for_normal(sigma: &RationalCone, normal: &[BigInt]) -> FacetForm {
    let basis = sigma.span_lattice_basis();
    let values: Vec<BigInt> = basis.iter().map(|b| dot(normal, b)).collect();
    let g = vec_gcd(&values);
    FacetForm { normal: normal.to_vec(), divisor: if g.is_zero() { BigInt::one() } else { g } }
}

pub fn facet_parallel_form(sigma: &RationalCone, facet: &RationalCone) -> Result<FacetForm> {
    if facet.ambient_dim() != sigma.ambient_dim() || !sigma.contains_cone(facet) {
        return Err(Error::NotAFacet);
    }
    if facet.dimension() + 1 != sigma.dimension() {
        return Err(Error::NotAFacet);
    }
    let gens = facet.generators();
    let n = sigma
        .facet_normals()
        .iter()
        .find(|n| gens.iter().all(|g| dot(n, g).is_zero()))
        .ok_or(Error::NotAFacet)?;
    Ok(facet_form_for_normal(sigma, n))
}

/// Polyhedron `{x : a · x >= b, c · x = d}` with integer normals and
/// rational offsets.
#[derive(Clone, Debug, Default)]
pub struct RationalPolyhedron {
    dim: usize,
    ineqs: Vec<(Vec<BigInt>, BigRational)>,
    eqs: Vec<(Vec<BigInt>, BigRational)>,
}

impl RationalPolyhedron {
    pub fn new(dim: usize) -> Self {
        RationalPolyhedron { dim, ineqs: Vec::new(), eqs: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn add_inequality(&mut self, a: Vec<BigInt>, b: BigRational) {
        assert_eq!(a.len(), self.dim);
        self.ineqs.push((a, b));
    }

    pub fn add_equation(&mut self, a: Vec<BigInt>, b: BigRational) {
        assert_eq!(a.len(), self.dim);
        self.eqs.push((a, b));
    }

    pub fn inequalities(&self) -> &[(Vec<BigInt>, BigRational)] {
        &self.ineqs
    }

    pub fn equations(&self) -> &[(Vec<BigInt>, BigRational)] {
        &self.eqs
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        let val = |a: &[BigInt]| -> BigRational {
            a.iter().zip(x).map(|(p, q)| BigRational::from_integer(p.clone()) * q).sum()
        };
        self.ineqs.iter().all(|(a, b)| &val(a) >= b) && self.eqs.iter().all(|(a, b)| &val(a) == b)
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        let q: Vec<BigRational> = x.iter().map(|v| BigRational::from_integer(v.clone())).collect();
        self.contains(&q)
    }

    fn lp(&self) -> Constraints {
        let mut c = Constraints::new(self.dim);
        let scale = |a: &[BigInt], b: &BigRational| -> (Vec<BigInt>, BigInt) {
            let d = b.denom();
            (a.iter().map(|x| x * d).collect(), b.numer().clone())
        };
        c.ineqs = self.ineqs.iter().map(|(a, b)| scale(a, b)).collect();
        c.eqs = self.eqs.iter().map(|(a, b)| scale(a, b)).collect();
        c
    }

    pub fn is_empty(&self) -> bool {
        self.lp().feasible_point().is_none()
    }

    /// Whether the recession cone is trivial.
    pub fn is_bounded(&self) -> bool {
        let ineqs: Vec<Vec<BigInt>> = self.ineqs.iter().map(|(a, _)| a.clone()).collect();
        let eqs: Vec<Vec<BigInt>> = self.eqs.iter().map(|(a, _)| a.clone()).collect();
        let rec = cone_from_constraints(self.dim, &ineqs, &eqs);
        rec.rays.is_empty() && rec.lineality.is_empty()
    }

    /// The integer relaxation: offsets are rounded in the valid direction.
    pub fn integer_problem(&self) -> IntegerProblem {
        let mut p = IntegerProblem::new(self.dim);
        for (a, b) in &self.ineqs {
            p.ineqs.push((a.clone(), b.ceil().to_integer()));
        }
        for (a, b) in &self.eqs {
            if b.is_integer() {
                p.eqs.push((a.clone(), b.to_integer()));
            } else {
                // no integer points: 0 = 1
                p.eqs.push((vec![BigInt::zero(); self.dim], BigInt::one()));
            }
        }
        p
    }

    /// Integer points in lexicographic order.
    pub fn lattice_points(&self) -> Result<Vec<Vec<BigInt>>> {
        self.integer_problem().solutions()
    }

    pub fn for_each_lattice_point(&self, visit: impl FnMut(&[BigInt]) -> ControlFlow<()>) -> Result<()> {
        self.integer_problem().for_each(visit)
    }

    /// Convex hull of finitely many rational points.
    pub fn from_vertices(dim: usize, points: &[Vec<BigRational>]) -> Self {
        let mut p = RationalPolyhedron::new(dim);
        if points.is_empty() {
            p.add_inequality(vec![BigInt::zero(); dim], BigRational::one());
            return p;
        }
        let lifted: Vec<Vec<BigInt>> = points
            .iter()
            .map(|x| {
                let mut v = x.clone();
                v.push(BigRational::one());
                integral_direction(&v)
            })
            .collect();
        let cone = RationalCone::from_generators(dim + 1, &lifted);
        let split = |n: &[BigInt]| -> (Vec<BigInt>, BigRational) {
            (n[..dim].to_vec(), BigRational::from_integer(-&n[dim]))
        };
        for f in cone.facet_normals() {
            let (a, b) = split(f);
            p.add_inequality(a, b);
        }
        for e in cone.equations() {
            let (a, b) = split(e);
            p.add_equation(a, b);
        }
        p
    }

    /// Vertices of a bounded polyhedron, sorted.
    pub fn vertices(&self) -> Result<Vec<Vec<BigRational>>> {
        if !self.is_bounded() {
            return Err(Error::UnboundedPolyhedron);
        }
        let hom = |a: &[BigInt], b: &BigRational| -> Vec<BigInt> {
            let mut v: Vec<BigInt> = a.iter().map(|x| x * b.denom()).collect();
            v.push(-b.numer());
            v
        };
        let mut ineqs: Vec<Vec<BigInt>> = self.ineqs.iter().map(|(a, b)| hom(a, b)).collect();
        let mut t = vec![BigInt::zero(); self.dim + 1];
        t[self.dim] = BigInt::one();
        ineqs.push(t);
        let eqs: Vec<Vec<BigInt>> = self.eqs.iter().map(|(a, b)| hom(a, b)).collect();
        let dd = cone_from_constraints(self.dim + 1, &ineqs, &eqs);
        let mut out: Vec<Vec<BigRational>> = dd
            .rays
            .iter()
            .filter(|r| r[self.dim].is_positive())
            .map(|r| r[..self.dim].iter().map(|x| BigRational::new(x.clone(), r[self.dim].clone())).collect())
            .collect();
        out.sort();
        Ok(out)
    }
}

/// H-description of the zonotope `{Σ t_i v_i : 0 <= t_i <= 1}`.
pub fn zonotope(dim: usize, vectors: &[Vec<BigInt>]) -> RationalPolyhedron {
    let nonzero: Vec<Vec<BigInt>> = vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut p = RationalPolyhedron::new(dim);
    let annihilator = integer_kernel(&IntMatrix::from_rows(dim, &nonzero));
    for e in &annihilator {
        p.add_equation(e.clone(), BigRational::zero());
    }
    let s = dim - annihilator.len();
    if s == 0 {
        return p;
    }
    let mut normals: Vec<Vec<BigInt>> = Vec::new();
    for subset in combinations(nonzero.len(), s - 1) {
        let mut rows: Vec<Vec<BigInt>> = subset.iter().map(|&i| nonzero[i].clone()).collect();
        rows.extend(annihilator.iter().cloned());
        let k = integer_kernel(&IntMatrix::from_rows(dim, &rows));
        if k.len() == 1 {
            let mut n = primitive(&k[0]);
            if n.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                n = n.iter().map(|x| -x).collect();
            }
            normals.push(n);
        }
    }
    normals.sort();
    normals.dedup();
    for n in normals {
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for v in &nonzero {
            let d = dot(&n, v);
            if d.is_negative() {
                lo += &d;
            } else {
                hi += &d;
            }
        }
        let neg: Vec<BigInt> = n.iter().map(|x| -x).collect();
        p.add_inequality(n, BigRational::from_integer(lo));
        p.add_inequality(neg, BigRational::from_integer(-hi));
    }
    p
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Pulling triangulation of a pointed cone given by its extreme rays.
/// Returns index sets of simplicial cones of full dimension.
pub fn triangulate(dim: usize, rays: &[Vec<BigInt>]) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = (0..rays.len()).collect();
    let mut out = Vec::new();
    pull(dim, rays, &idx, &mut out);
    for s in out.iter_mut() {
        s.sort();
    }
    out.sort();
    out
}

fn pull(dim: usize, rays: &[Vec<BigInt>], idx: &[usize], out: &mut Vec<Vec<usize>>) {
    let gens: Vec<Vec<BigInt>> = idx.iter().map(|&i| rays[i].clone()).collect();
    let cone = RationalCone::from_generators(dim, &gens);
    if idx.len() == cone.dimension() {
        out.push(idx.to_vec());
        return;
    }
    let apex = idx[0];
    for n in cone.facet_normals() {
        if dot(n, &rays[apex]).is_zero() {
            continue;
        }
        let face: Vec<usize> = idx.iter().copied().filter(|&i| dot(n, &rays[i]).is_zero()).collect();
        let mut sub = Vec::new();
        pull(dim, rays, &face, &mut sub);
        for mut s in sub {
            s.push(apex);
            out.push(s);
        }
    }
}

/// Lattice points of the closed parallelotope `{Σ t_i v_i : 0 <= t_i <= 1}`
/// for linearly independent `v_i`.
pub fn parallelotope_points(dim: usize, vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let d = vectors.len();
    if d == 0 {
        return vec![vec![BigInt::zero(); dim]];
    }
    // coordinates on the lattice span ∩ Z^dim
    let basis = saturated_basis(dim, vectors);
    assert_eq!(basis.len(), d, "vectors are not linearly independent");
    let bm = IntMatrix::from_columns(dim, &basis);
    let smith = crate::integer::smith_normal_form(&bm);
    let w_cols: Vec<Vec<BigInt>> =
        vectors.iter().map(|v| smith.solve(v).expect("vector lies in the saturated lattice")).collect();
    let w = IntMatrix::from_columns(d, &w_cols);
    let (det, adj) = adjugate(&w);
    let (sign, bound) = if det.is_negative() { (-BigInt::one(), -&det) } else { (BigInt::one(), det.clone()) };
    let mut prob = IntegerProblem::new(d);
    for i in 0..d {
        let row: Vec<BigInt> = adj.row(i).iter().map(|x| x * &sign).collect();
        let neg: Vec<BigInt> = row.iter().map(|x| -x).collect();
        prob.ineqs.push((row, BigInt::zero()));
        prob.ineqs.push((neg, -&bound));
    }
    let mut pts: Vec<Vec<BigInt>> = prob
        .solutions()
        .expect("parallelotope is bounded")
        .iter()
        .map(|z| bm.mul_vec(z))
        .collect();
    pts.sort();
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integer::to_big;

    fn vs(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| to_big(r)).collect()
    }

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn cones_from_generators() {
        let c = RationalCone::from_generators(1, &vs(&[&[0], &[1], &[3]]));
        assert_eq!(c.rays(), &vs(&[&[1]])[..]);
        assert_eq!(c.facet_normals(), &vs(&[&[1]])[..]);
        let c = RationalCone::from_generators(2, &vs(&[&[1, 0], &[0, 1], &[1, 1]]));
        assert_eq!(c.rays(), &vs(&[&[0, 1], &[1, 0]])[..]);
        let c = RationalCone::from_generators(2, &vs(&[&[1, 2], &[2, 1]]));
        assert_eq!(c.facet_normals(), &vs(&[&[-1, 2], &[2, -1]])[..]);
    }

    #[test]
    fn facets_and_forms() {
        let sigma = RationalCone::from_generators(2, &vs(&[&[0, 1], &[1, 2]]));
        let mut normals: Vec<Vec<BigInt>> = sigma.facets().iter().map(|f| f.normal.clone()).collect();
        normals.sort();
        assert_eq!(normals, vs(&[&[-2, 1], &[1, 0]]));
        let f2 = RationalCone::from_generators(2, &vs(&[&[0, 1]]));
        let form = facet_parallel_form(&sigma, &f2).unwrap();
        assert_eq!(form.normal, to_big(&[1, 0]));
        assert_eq!(form.level_int(&to_big(&[-4, 0])), BigInt::from(-4));
        let not_facet = RationalCone::from_generators(2, &vs(&[&[1, 1]]));
        assert_eq!(facet_parallel_form(&sigma, &not_facet), Err(Error::NotAFacet));

        let sigma = RationalCone::from_generators(3, &vs(&[&[1, 0, 49], &[0, 1, 0], &[0, 0, 1]]));
        let f = RationalCone::from_generators(3, &vs(&[&[0, 1, 0], &[0, 0, 1]]));
        let form = facet_parallel_form(&sigma, &f).unwrap();
        assert_eq!(form.normal, to_big(&[1, 0, 0]));
        assert_eq!(form.level_int(&to_big(&[4, -1, 106])), BigInt::from(4));
        let orthant = RationalCone::from_generators(3, &vs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(orthant.facets().len(), 3);
    }

    #[test]
    fn forms_on_lower_dimensional_cones() {
        // cone in the plane x = y inside Q^3; lattice basis (1,1,0), (0,0,1)
        let sigma = RationalCone::from_generators(3, &vs(&[&[1, 1, 0], &[1, 1, 2]]));
        assert_eq!(sigma.dimension(), 2);
        for f in sigma.facets() {
            let form = facet_form_for_normal(&sigma, &f.normal);
            let values: Vec<BigInt> =
                sigma.span_lattice_basis().iter().map(|b| form.level_int(b)).collect();
            assert!(vec_gcd(&values).is_one());
            for r in f.cone.rays() {
                assert!(form.level(r).is_zero());
            }
        }
    }

    #[test]
    fn relative_interior() {
        let ray = RationalCone::from_generators(2, &vs(&[&[1, 2]]));
        assert!(ray.relative_interior_contains(&to_big(&[2, 4])));
        assert!(!ray.relative_interior_contains(&to_big(&[0, 0])));
        let quad = RationalCone::from_generators(2, &vs(&[&[1, 0], &[0, 1]]));
        assert!(!quad.relative_interior_contains(&to_big(&[1, 0])));
        assert!(quad.relative_interior_contains(&to_big(&[1, 1])));
        let origin = RationalCone::from_generators(2, &[]);
        assert!(origin.relative_interior_contains(&to_big(&[0, 0])));
    }

    #[test]
    fn polytope_lattice_points() {
        let mut b = RationalPolyhedron::new(3);
        b.add_equation(to_big(&[0, 1, 3]), BigRational::from_integer(3.into()));
        for j in 0..3 {
            let mut e = vec![0; 3];
            e[j] = 1;
            b.add_inequality(to_big(&e), BigRational::zero());
        }
        b.add_inequality(to_big(&[-1, 0, 0]), BigRational::from_integer((-4).into()));
        let pts = b.lattice_points().unwrap();
        assert_eq!(pts.len(), 10);
        let square = RationalPolyhedron::from_vertices(2, &[q(&[0, 0]), q(&[1, 0]), q(&[0, 1]), q(&[1, 1])]);
        assert_eq!(square.lattice_points().unwrap().len(), 4);
        let empty = RationalPolyhedron::from_vertices(2, &[]);
        assert!(empty.lattice_points().unwrap().is_empty());
        let mut half = RationalPolyhedron::new(1);
        half.add_inequality(to_big(&[1]), BigRational::zero());
        assert_eq!(half.lattice_points(), Err(Error::UnboundedPolyhedron));
        assert!(!half.is_bounded());
    }

    #[test]
    fn zonotopes() {
        let z = zonotope(1, &vs(&[&[0], &[1], &[3]]));
        let pts = z.lattice_points().unwrap();
        assert_eq!(pts, vs(&[&[0], &[1], &[2], &[3], &[4]]));
        let z = zonotope(2, &[]);
        assert_eq!(z.lattice_points().unwrap(), vs(&[&[0, 0]]));
        let z = zonotope(2, &vs(&[&[1, 0], &[0, 1]]));
        assert_eq!(z.lattice_points().unwrap().len(), 4);
        let z = zonotope(2, &vs(&[&[1, 1], &[2, 2]]));
        assert_eq!(z.lattice_points().unwrap(), vs(&[&[0, 0], &[1, 1], &[2, 2], &[3, 3]]));
    }

    #[test]
    fn vertices_roundtrip() {
        let pts = vec![q(&[0, 0]), q(&[2, 0]), q(&[0, 3])];
        let p = RationalPolyhedron::from_vertices(2, &pts);
        let mut v = p.vertices().unwrap();
        v.sort();
        let mut e = pts.clone();
        e.sort();
        assert_eq!(v, e);
    }

    #[test]
    fn triangulations_and_parallelotopes() {
        let rays = vs(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        let t = triangulate(3, &rays);
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|s| s.len() == 3 && s.contains(&0)));
        let pts = parallelotope_points(2, &vs(&[&[1, 0], &[1, 2]]));
        assert_eq!(pts, vs(&[&[0, 0], &[1, 0], &[1, 1], &[1, 2], &[2, 2]]));
        // kernel cone of the intersection example: rays (3,0,2) and (0,3,5)
        let pts = parallelotope_points(3, &vs(&[&[3, 0, 2], &[0, 3, 5]]));
        assert_eq!(pts.len(), 6);
    }
}
