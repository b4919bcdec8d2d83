//! Fujita's base point freeness test for a Gorenstein Mori dream space.
//!
//! All computations run in `K = Pic(X)`. With `σ = cone(S)` for
//! `S = BPF(X)`, facets `F_i` and their primitive forms `u_i`, the class
//! `K_X + m L` is tested for every candidate `L` of level `k` on some facet,
//! over the finite range of `(i, m, k)` left by the conductor bound.

use crate::abelian::GroupElement;
use crate::error::{Error, Result};
use crate::mds::MoriDreamSpace;
use crate::monoid::EmbeddedMonoid;
use crate::polyhedral::{facet_form_for_normal, FacetForm, RationalCone, RationalPolyhedron};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

#[derive(Clone, Debug)]
pub struct FacetData {
    /// Primitive inward normal of the facet.
    pub normal: Vec<BigInt>,
    pub form: FacetForm,
    /// Rays of `σ` on the facet.
    pub rays: Vec<Vec<BigInt>>,
    /// Rays of `σ` off the facet.
    pub opposite_rays: Vec<Vec<BigInt>>,
    /// Elements of `S` with minimal free part on each ray of the facet,
    /// one per realizable torsion part.
    pub minimal_elements: Vec<GroupElement>,
}

#[derive(Clone, Debug)]
pub struct FujitaSetting {
    pub monoid: EmbeddedMonoid,
    pub sigma: RationalCone,
    pub facets: Vec<FacetData>,
    pub conductor: GroupElement,
    pub alphas: Vec<BigInt>,
    pub nu: BigInt,
    pub kx: GroupElement,
    pub dimension: i64,
}

/// One cell `(i, m, k)` of the test loop; `facet` is one-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopCell {
    pub facet: usize,
    pub m: i64,
    pub k: i64,
    pub candidates: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureWitness {
    pub facet: usize,
    pub m: i64,
    pub k: i64,
    pub class: GroupElement,
    /// `K_X + m L`.
    pub value: GroupElement,
    /// Whether the free part of the value lies in `σ`; if so the failure
    /// happens at the lattice or torsion level.
    pub in_cone: bool,
}

#[derive(Clone, Debug)]
pub struct FujitaReport {
    pub verdict: bool,
    pub reason: Option<String>,
    pub setting: Option<FujitaSetting>,
    pub trace: Vec<LoopCell>,
    pub witness: Option<FailureWitness>,
}

/// For each ray, the smallest positive multiple of the primitive direction
/// that is the free part of an element of `S`, with every torsion part
/// realizing it.
pub fn minimal_ray_elements(s: &EmbeddedMonoid, rays: &[Vec<BigInt>]) -> Result<Vec<GroupElement>> {
    let group = s.group();
    let mut out = Vec::new();
    for v in rays {
        // a generator on an extreme ray bounds the search
        let bound = s
            .generators()
            .iter()
            .filter_map(|g| ray_multiple(g.free(), v))
            .min()
            .ok_or_else(|| Error::InvalidInput("ray carries no generator".into()))?;
        let mut t = BigInt::one();
        while t <= bound {
            let free: Vec<BigInt> = v.iter().map(|x| x * &t).collect();
            let mut found = Vec::new();
            for tor in group.torsion_parts() {
                let w = GroupElement::new(group, free.clone(), tor)?;
                if s.contains(&w)? {
                    found.push(w);
                }
            }
            if !found.is_empty() {
                out.extend(found);
                break;
            }
            t += 1;
        }
    }
    Ok(out)
}

fn ray_multiple(x: &[BigInt], v: &[BigInt]) -> Option<BigInt> {
    let j = v.iter().position(|a| !a.is_zero())?;
    let (t, r) = x[j].div_rem(&v[j]);
    (r.is_zero() && t.is_positive() && x.iter().zip(v).all(|(a, b)| *a == &t * b)).then_some(t)
}

impl FujitaSetting {
    /// Builds the setting for a spanning monoid `S ⊆ K`, the canonical class
    /// `kx ∈ K` and the dimension of the variety.
    pub fn new(monoid: EmbeddedMonoid, kx: GroupElement, dimension: i64) -> Result<Self> {
        if kx.group() != monoid.group() {
            return Err(Error::GroupMismatch);
        }
        // 0 lies in the conductor ideal exactly when S is saturated
        let zero = GroupElement::zero(monoid.group());
        let conductor = if monoid.in_conductor_ideal(&zero)? { zero } else { monoid.conductor_point()?.point };
        let sigma = monoid.cone().clone();
        let mut normals = sigma.facet_normals().to_vec();
        normals.sort();
        let shifted = conductor.sub(&kx)?;
        let mut facets = Vec::with_capacity(normals.len());
        let mut alphas = Vec::with_capacity(normals.len());
        for n in normals {
            let form = facet_form_for_normal(&sigma, &n);
            let (rays, opposite_rays): (Vec<_>, Vec<_>) =
                sigma.rays().iter().cloned().partition(|r| crate::integer::dot(&n, r).is_zero());
            let minimal_elements = minimal_ray_elements(&monoid, &rays)?;
            alphas.push(form.level(shifted.free()).floor().to_integer());
            facets.push(FacetData { normal: n, form, rays, opposite_rays, minimal_elements });
        }
        let nu = alphas.iter().max().cloned().unwrap_or_else(BigInt::zero);
        Ok(FujitaSetting { monoid, sigma, facets, conductor, alphas, nu, kx, dimension })
    }

    /// Builds the setting of a Mori dream space; `kx` must be Cartier.
    pub fn from_space(x: &MoriDreamSpace, kx: &GroupElement) -> Result<Self> {
        let kx = x
            .to_picard(kx)?
            .ok_or_else(|| Error::InvalidInput("canonical class is not Cartier".into()))?;
        FujitaSetting::new(x.bpf_generators()?.clone(), kx, x.dimension())
    }

    fn strictly_inside(&self, x: &[BigInt]) -> bool {
        self.sigma.equations().iter().all(|e| crate::integer::dot(e, x).is_zero())
            && self.sigma.facet_normals().iter().all(|n| crate::integer::dot(n, x).is_positive())
    }

    /// The polytope `conv(p_j^k) + G_i` before intersecting with the
    /// interior of `σ`; `facet` is zero-based.
    pub fn candidate_polytope(&self, facet: usize, k: &BigInt) -> RationalPolyhedron {
        let f = &self.facets[facet];
        let dim = self.sigma.ambient_dim();
        let apexes: Vec<Vec<BigRational>> = f
            .opposite_rays
            .iter()
            .map(|v| {
                let scale = BigRational::from_integer(k.clone()) / f.form.level(v);
                v.iter().map(|x| BigRational::from_integer(x.clone()) * &scale).collect()
            })
            .collect();
        let mut zone: Vec<Vec<BigInt>> = f.minimal_elements.iter().map(|g| g.free().to_vec()).collect();
        zone.sort();
        zone.dedup();
        let mut points = Vec::new();
        for p in &apexes {
            for mask in 0..1usize << zone.len() {
                let mut q = p.clone();
                for (b, z) in zone.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        for (qi, zi) in q.iter_mut().zip(z) {
                            *qi += BigRational::from_integer(zi.clone());
                        }
                    }
                }
                points.push(q);
            }
        }
        RationalPolyhedron::from_vertices(dim, &points)
    }

    /// The candidate classes `Gp_i^k`; `facet` is zero-based.
    pub fn candidate_classes(&self, facet: usize, k: &BigInt) -> Result<Vec<GroupElement>> {
        let group = self.monoid.group();
        let mut out = Vec::new();
        for x in self.candidate_polytope(facet, k).lattice_points()? {
            if !self.strictly_inside(&x) {
                continue;
            }
            for t in group.torsion_parts() {
                out.push(GroupElement::new(group, x.clone(), t)?);
            }
        }
        Ok(out)
    }

    /// Cells `(facet, m, k)` in canonical order, `facet` zero-based.
    pub fn cells(&self) -> Vec<(usize, i64, i64)> {
        let mut cells = Vec::new();
        let lo = self.dimension + 1;
        let hi = self.nu.to_i64().expect("ν fits in i64") - 1;
        for (i, alpha) in self.alphas.iter().enumerate() {
            let alpha = alpha.to_i64().expect("α fits in i64");
            for m in lo.max(1)..=hi {
                let kmax = Integer::div_floor(&(alpha - 1), &m);
                for k in 1..=kmax {
                    cells.push((i, m, k));
                }
            }
        }
        cells
    }

    /// Runs every loop cell and reports the first failure in canonical order.
    pub fn run(&self) -> Result<(Vec<LoopCell>, Option<FailureWitness>)> {
        let cells = self.cells();
        let results: Vec<Result<(LoopCell, Option<FailureWitness>)>> =
            cells.par_iter().map(|&(i, m, k)| self.run_cell(i, m, k)).collect();
        let mut trace = Vec::with_capacity(results.len());
        let mut witness = None;
        for r in results {
            let (cell, w) = r?;
            if witness.is_none() {
                witness = w;
            }
            trace.push(cell);
        }
        Ok((trace, witness))
    }

    fn run_cell(&self, i: usize, m: i64, k: i64) -> Result<(LoopCell, Option<FailureWitness>)> {
        let gp = self.candidate_classes(i, &BigInt::from(k))?;
        let mb = BigInt::from(m);
        let mut failures = 0;
        let mut first = None;
        for l in &gp {
            let value = self.kx.add(&l.scale(&mb))?;
            if !self.monoid.contains(&value)? {
                failures += 1;
                if first.is_none() {
                    let in_cone = self.sigma.contains(value.free());
                    first = Some(FailureWitness { facet: i + 1, m, k, class: l.clone(), value, in_cone });
                }
            }
        }
        Ok((LoopCell { facet: i + 1, m, k, candidates: gp.len(), failures }, first))
    }

    pub fn report(self) -> Result<FujitaReport> {
        let (trace, witness) = self.run()?;
        Ok(FujitaReport { verdict: witness.is_none(), reason: None, setting: Some(self), trace, witness })
    }
}

/// Runs the test on a Mori dream space. A canonical class outside `Pic(X)`
/// gives `false` with reason `notGorenstein`.
pub fn fujita_bpf(x: &MoriDreamSpace, kx: &GroupElement) -> Result<FujitaReport> {
    if !x.is_gorenstein(kx)? {
        return Ok(FujitaReport {
            verdict: false,
            reason: Some("notGorenstein".into()),
            setting: None,
            trace: vec![],
            witness: None,
        });
    }
    FujitaSetting::from_space(x, kx)?.report()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;

    fn z2_monoid(gens: &[[i64; 2]]) -> EmbeddedMonoid {
        let k = AbelianGroup::free(2);
        EmbeddedMonoid::new(&k, gens.iter().map(|g| GroupElement::from_i64(&k, g, &[]).unwrap()).collect()).unwrap()
    }

    #[test]
    fn second_example_setting() {
        let s = z2_monoid(&[[0, 1], [1, 2]]);
        let kx = GroupElement::from_i64(s.group(), &[4, 0], &[]).unwrap();
        let st = FujitaSetting::new(s, kx, 6).unwrap();
        assert_eq!(st.alphas, vec![BigInt::from(8), BigInt::from(-4)]);
        assert_eq!(st.nu, BigInt::from(8));
        assert!(st.conductor.is_zero());
        assert_eq!(st.facets[0].rays, vec![vec![BigInt::from(1), BigInt::from(2)]]);
        let gp = st.candidate_classes(0, &BigInt::one()).unwrap();
        assert_eq!(gp.len(), 1);
        assert_eq!(gp[0].free(), &[BigInt::from(1), BigInt::from(3)]);
        let (trace, witness) = st.run().unwrap();
        assert_eq!(trace, vec![LoopCell { facet: 1, m: 7, k: 1, candidates: 1, failures: 1 }]);
        let w = witness.unwrap();
        assert_eq!(w.value.free(), &[BigInt::from(11), BigInt::from(21)]);
        assert!(!w.in_cone);
    }

    #[test]
    fn candidates_lie_on_the_level() {
        let s = z2_monoid(&[[2, 0], [3, 0], [0, 1], [1, 1]]);
        let kx = GroupElement::from_i64(s.group(), &[-3, -3], &[]).unwrap();
        let st = FujitaSetting::new(s, kx, 1).unwrap();
        for i in 0..st.facets.len() {
            for k in 1..4 {
                for l in st.candidate_classes(i, &BigInt::from(k)).unwrap() {
                    assert_eq!(st.facets[i].form.level_int(l.free()), BigInt::from(k));
                    assert!(st.sigma.relative_interior_contains(l.free()));
                }
            }
        }
    }
}
