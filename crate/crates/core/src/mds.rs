//! Mori dream spaces given by Cox ring data: generator degrees in the
//! class group, homogeneous relations and an ample class.
//!
//! Relevance of an F-face `γ` means `u ∈ relint cone(Q e_i : i ∈ γ)`, that
//! is, some `λ >= 0` with `Q λ = u` has support exactly `γ`. The set of such
//! `λ` with support inside `γ` is a face of the polyhedron
//! `Λ = {λ >= 0 : Q λ = u}`, so the test reduces to the supports of the
//! vertices and recession rays of `Λ`: one vertex must fit in `γ` and the
//! union of all fitting supports must be `γ`.

use crate::abelian::{AbelianGroup, GroupElement, Subgroup, SubgroupCoordinates};
use crate::error::{Error, Result};
use crate::monoid::{CapMode, EmbeddedMonoid};
use crate::polyhedral::RationalCone;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Largest number of variables for which all `2^r` faces are enumerated.
pub const MAX_ENUMERATED_VARS: usize = 30;

/// A set of variable indices, stored as a bit mask (bit `i` is variable `i`,
/// zero-based). Displayed one-based, as in `{1,3,4}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(pub u64);

impl Face {
    pub fn from_indices(indices: &[usize]) -> Self {
        Face(indices.iter().fold(0, |m, &i| m | 1 << i))
    }

    /// Zero-based indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        (0..64).filter(|&i| self.contains(i)).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(&self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coefficient: BigRational,
    pub exponents: Vec<u64>,
}

impl Monomial {
    fn support(&self) -> Face {
        Face(self.exponents.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (i, _)| m | 1 << i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    monomials: Vec<Monomial>,
}

impl Relation {
    pub fn new(monomials: Vec<Monomial>) -> Result<Self> {
        if monomials.iter().any(|m| m.coefficient.is_zero()) {
            return Err(Error::InvalidInput("relation has a zero coefficient".into()));
        }
        for (i, a) in monomials.iter().enumerate() {
            if monomials[..i].iter().any(|b| b.exponents == a.exponents) {
                return Err(Error::InvalidInput("relation repeats an exponent vector".into()));
            }
        }
        Ok(Relation { monomials })
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Whether restricting to `face` leaves zero or at least two monomials.
    pub fn admits(&self, face: Face) -> bool {
        self.monomials.iter().filter(|m| m.support().is_subset_of(face)).count() != 1
    }
}

/// Result of the per-face base point freeness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpfVerdict {
    pub in_picard: bool,
    /// First covering face whose monoid misses the class.
    pub failing_face: Option<Face>,
}

impl BpfVerdict {
    pub fn holds(&self) -> bool {
        self.in_picard && self.failing_face.is_none()
    }
}

#[derive(Debug)]
pub struct MoriDreamSpace {
    class_group: Arc<AbelianGroup>,
    degrees: Vec<GroupElement>,
    relations: Vec<Relation>,
    ample: GroupElement,
    user_ffaces: Option<Vec<Face>>,
    cap_mode: CapMode,
    ffaces: OnceLock<Result<Vec<Face>>>,
    relevant: OnceLock<Result<Vec<Face>>>,
    picard: OnceLock<(Subgroup, SubgroupCoordinates)>,
    bpf: OnceLock<Result<EmbeddedMonoid>>,
}

impl MoriDreamSpace {
    pub fn new(
        class_group: &Arc<AbelianGroup>,
        degrees: Vec<GroupElement>,
        relations: Vec<Relation>,
        ample: GroupElement,
    ) -> Result<Self> {
        if degrees.iter().chain(std::iter::once(&ample)).any(|g| g.group() != class_group) {
            return Err(Error::GroupMismatch);
        }
        let r = degrees.len();
        if r > 64 {
            return Err(Error::InvalidInput(format!("{r} variables exceed the supported 64")));
        }
        let x = MoriDreamSpace {
            class_group: class_group.clone(),
            degrees,
            relations,
            ample,
            user_ffaces: None,
            cap_mode: CapMode::default(),
            ffaces: OnceLock::new(),
            relevant: OnceLock::new(),
            picard: OnceLock::new(),
            bpf: OnceLock::new(),
        };
        for (index, rel) in x.relations.iter().enumerate() {
            for m in rel.monomials() {
                if m.exponents.len() != r {
                    return Err(Error::DimensionMismatch { expected: r, found: m.exponents.len() });
                }
            }
            let degs: Vec<GroupElement> = rel.monomials().iter().map(|m| x.monomial_degree(m)).collect();
            if degs.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::InhomogeneousRelation { index });
            }
        }
        Ok(x)
    }

    /// Replaces the F-face rule by an explicit list. Each face must still
    /// pass the monomial rule, which is necessary for every relation.
    pub fn with_ffaces(mut self, faces: Vec<Face>) -> Result<Self> {
        let full = self.full_face();
        for f in &faces {
            if !f.is_subset_of(full) {
                return Err(Error::InvalidInput(format!("face {f} uses an unknown variable")));
            }
            if !self.relations.iter().all(|rel| rel.admits(*f)) {
                return Err(Error::InvalidInput(format!("face {f} violates the monomial rule")));
            }
        }
        let mut faces = faces;
        faces.sort();
        faces.dedup();
        self.user_ffaces = Some(faces);
        self.reset();
        Ok(self)
    }

    pub fn with_cap_mode(mut self, mode: CapMode) -> Self {
        self.cap_mode = mode;
        self.reset();
        self
    }

    fn reset(&mut self) {
        self.ffaces = OnceLock::new();
        self.relevant = OnceLock::new();
        self.bpf = OnceLock::new();
    }

    pub fn num_vars(&self) -> usize {
        self.degrees.len()
    }

    pub fn class_group(&self) -> &Arc<AbelianGroup> {
        &self.class_group
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn ample_class(&self) -> &GroupElement {
        &self.ample
    }

    pub fn cap_mode(&self) -> CapMode {
        self.cap_mode
    }

    fn full_face(&self) -> Face {
        let r = self.num_vars();
        Face(if r == 64 { u64::MAX } else { (1u64 << r) - 1 })
    }

    fn monomial_degree(&self, m: &Monomial) -> GroupElement {
        let mut acc = GroupElement::zero(&self.class_group);
        for (e, d) in m.exponents.iter().zip(&self.degrees) {
            if *e > 0 {
                acc = acc.add_unchecked(&d.scale(&BigInt::from(*e)));
            }
        }
        acc
    }

    pub fn relation_degree(&self, index: usize) -> GroupElement {
        self.relations[index]
            .monomials()
            .first()
            .map(|m| self.monomial_degree(m))
            .unwrap_or_else(|| GroupElement::zero(&self.class_group))
    }

    /// Warnings about heuristic parts of the computation.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.relations.len() > 1 && self.user_ffaces.is_none() {
            w.push(format!(
                "{} relations and no explicit F-faces: the monomial rule is only a necessary condition",
                self.relations.len()
            ));
        }
        w
    }

    pub fn f_faces(&self) -> Result<&[Face]> {
        self.ffaces
            .get_or_init(|| {
                if let Some(faces) = &self.user_ffaces {
                    return Ok(faces.clone());
                }
                let r = self.num_vars();
                if r > MAX_ENUMERATED_VARS {
                    return Err(Error::InvalidInput(format!(
                        "{r} variables are too many to enumerate faces; list the F-faces explicitly"
                    )));
                }
                Ok((0..1u64 << r).map(Face).filter(|&f| self.relations.iter().all(|rel| rel.admits(f))).collect())
            })
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    /// Supports of the vertices and of the recession rays of
    /// `{λ >= 0 : Q^0 λ = u^0}`.
    fn fiber_supports(&self) -> (Vec<Face>, Vec<Face>) {
        let r = self.num_vars();
        let rank = self.class_group.rank();
        let mut ineqs = Vec::with_capacity(r + 1);
        for i in 0..=r {
            let mut e = vec![BigInt::zero(); r + 1];
            e[i] = BigInt::from(1);
            ineqs.push(e);
        }
        let eqs: Vec<Vec<BigInt>> = (0..rank)
            .map(|row| {
                let mut a: Vec<BigInt> = self.degrees.iter().map(|d| d.free()[row].clone()).collect();
                a.push(-&self.ample.free()[row]);
                a
            })
            .collect();
        let cone = RationalCone::from_constraints(r + 1, &ineqs, &eqs);
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for v in cone.rays() {
            let support = Face(v[..r].iter().enumerate().filter(|(_, x)| !x.is_zero()).fold(0, |m, (i, _)| m | 1 << i));
            if v[r].is_zero() {
                rays.push(support);
            } else {
                vertices.push(support);
            }
        }
        (vertices, rays)
    }

    /// Whether `u ∈ relint cone(Q e_i : i ∈ face)`.
    pub fn is_ample_in_relint(&self, face: Face) -> bool {
        let (vertices, rays) = self.fiber_supports();
        relint_test(face, &vertices, &rays)
    }

    pub fn relevant_faces(&self) -> Result<&[Face]> {
        self.relevant
            .get_or_init(|| {
                let ffaces = self.f_faces()?;
                let (vertices, rays) = self.fiber_supports();
                Ok(ffaces.iter().copied().filter(|&f| relint_test(f, &vertices, &rays)).collect())
            })
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    /// Inclusion-minimal relevant faces.
    pub fn covering_collection(&self) -> Result<Vec<Face>> {
        let rlv = self.relevant_faces()?;
        Ok(rlv
            .iter()
            .copied()
            .filter(|f| !rlv.iter().any(|g| g != f && g.is_subset_of(*f)))
            .collect())
    }

    fn face_degrees(&self, face: Face) -> Vec<GroupElement> {
        face.indices().iter().map(|&i| self.degrees[i].clone()).collect()
    }

    /// The monoid `Q(γ ∩ Z^r)` in the class group.
    pub fn face_monoid(&self, face: Face) -> EmbeddedMonoid {
        EmbeddedMonoid::new(&self.class_group, self.face_degrees(face))
            .expect("degrees live in the class group")
            .with_cap_mode(self.cap_mode)
    }

    fn face_cone(&self, face: Face) -> RationalCone {
        let free: Vec<Vec<BigInt>> = self.face_degrees(face).iter().map(|g| g.free().to_vec()).collect();
        RationalCone::from_generators(self.class_group.rank(), &free)
    }

    fn picard_data(&self) -> Result<&(Subgroup, SubgroupCoordinates)> {
        if let Some(p) = self.picard.get() {
            return Ok(p);
        }
        let cov = self.covering_collection()?;
        let mut pic = Subgroup::whole(&self.class_group);
        for f in &cov {
            let sub = Subgroup::new(&self.class_group, self.face_degrees(*f))?;
            pic = pic.intersection(&sub)?;
        }
        let coords = pic.coordinates();
        Ok(self.picard.get_or_init(|| (pic, coords)))
    }

    /// `Pic(X)` as a subgroup of the class group.
    pub fn picard_group(&self) -> Result<&Subgroup> {
        Ok(&self.picard_data()?.0)
    }

    /// Canonical coordinates on `Pic(X)`.
    pub fn picard_coordinates(&self) -> Result<&SubgroupCoordinates> {
        Ok(&self.picard_data()?.1)
    }

    /// Coordinates of `w` in `Pic(X)`, or `None` for a non-Cartier class.
    pub fn to_picard(&self, w: &GroupElement) -> Result<Option<GroupElement>> {
        if w.group() != &self.class_group {
            return Err(Error::GroupMismatch);
        }
        Ok(self.picard_coordinates()?.to_coords(w))
    }

    /// Generators of `BPF(X)` in `Pic(X)` coordinates, obtained by
    /// intersecting the monoids of the covering faces.
    pub fn bpf_generators(&self) -> Result<&EmbeddedMonoid> {
        self.bpf
            .get_or_init(|| {
                let cov = self.covering_collection()?;
                let coords = self.picard_coordinates()?;
                let mut faces = cov.into_iter();
                let Some(first) = faces.next() else {
                    let gens = crate::abelian::standard_generators(&coords.group);
                    let mut all: Vec<GroupElement> = gens.iter().map(|g| g.negate()).collect();
                    all.extend(gens);
                    return EmbeddedMonoid::new(&coords.group, all);
                };
                let mut acc = crate::monoid::reduce_generators(
                    &self.class_group,
                    sorted_by_norm(self.face_degrees(first)),
                    self.cap_mode,
                )?;
                for f in faces {
                    acc = acc.intersect(&self.face_monoid(f))?;
                }
                let mut gens: Vec<GroupElement> = acc
                    .generators()
                    .iter()
                    .map(|g| coords.to_coords(g).expect("BPF(X) lies in Pic(X)"))
                    .collect();
                gens.sort_by_key(|g| g.coords());
                Ok(EmbeddedMonoid::new(&coords.group, gens)?.with_cap_mode(self.cap_mode))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Tests `w ∈ BPF(X)`: `w` must be Cartier and lie in the monoid of
    /// every covering face. This is membership in the intersection monoid
    /// without computing its generators.
    pub fn base_point_free_verdict(&self, w: &GroupElement) -> Result<BpfVerdict> {
        if self.to_picard(w)?.is_none() {
            return Ok(BpfVerdict { in_picard: false, failing_face: None });
        }
        for f in self.covering_collection()? {
            if !self.face_monoid(f).contains(w)? {
                return Ok(BpfVerdict { in_picard: true, failing_face: Some(f) });
            }
        }
        Ok(BpfVerdict { in_picard: true, failing_face: None })
    }

    pub fn is_base_point_free(&self, w: &GroupElement) -> Result<bool> {
        Ok(self.base_point_free_verdict(w)?.holds())
    }

    /// Relevant faces whose stratum lies in the base locus of `w`.
    pub fn base_locus_faces(&self, w: &GroupElement) -> Result<Vec<Face>> {
        if w.group() != &self.class_group {
            return Err(Error::GroupMismatch);
        }
        let mut out = Vec::new();
        for &f in self.relevant_faces()? {
            if !self.face_monoid(f).contains(w)? {
                out.push(f);
            }
        }
        Ok(out)
    }

    fn intersect_face_cones(&self, faces: &[Face]) -> RationalCone {
        let rank = self.class_group.rank();
        faces
            .iter()
            .map(|&f| self.face_cone(f))
            .reduce(|a, b| a.intersect(&b))
            .unwrap_or_else(|| RationalCone::whole(rank))
    }

    /// The semiample cone `⋂ cone(Q e_i : i ∈ γ)` over the covering faces.
    pub fn semiample_cone(&self) -> Result<RationalCone> {
        Ok(self.intersect_face_cones(&self.covering_collection()?))
    }

    pub fn semiample_contains(&self, w: &GroupElement) -> Result<bool> {
        if w.group() != &self.class_group {
            return Err(Error::GroupMismatch);
        }
        Ok(self.semiample_cone()?.contains(w.free()))
    }

    /// `K_X = Σ deg(g_j) - Σ deg(f_i)`, valid for complete intersections.
    pub fn canonical_class(&self) -> GroupElement {
        let mut acc = GroupElement::zero(&self.class_group);
        for j in 0..self.relations.len() {
            acc = acc.add_unchecked(&self.relation_degree(j));
        }
        for d in &self.degrees {
            acc = acc.add_unchecked(&d.negate());
        }
        acc
    }

    pub fn is_gorenstein(&self, kx: &GroupElement) -> Result<bool> {
        Ok(self.to_picard(kx)?.is_some())
    }

    /// `Mov(X) = ⋂_i cone(Q e_j : j ≠ i)`.
    pub fn moving_cone(&self) -> RationalCone {
        let full = self.full_face();
        let faces: Vec<Face> = (0..self.num_vars()).map(|i| Face(full.0 & !(1 << i))).collect();
        self.intersect_face_cones(&faces)
    }

    /// Whether the chamber `⋂ cone(Q e_i : i ∈ γ)` over the relevant faces
    /// is full dimensional.
    pub fn q_factoriality_check(&self) -> Result<bool> {
        let chamber = self.intersect_face_cones(self.relevant_faces()?);
        Ok(chamber.is_full_dimensional())
    }

    /// `(r - #relations) - rank Cl(X)`.
    pub fn dimension(&self) -> i64 {
        self.num_vars() as i64 - self.relations.len() as i64 - self.class_group.rank() as i64
    }
}

fn sorted_by_norm(mut gens: Vec<GroupElement>) -> Vec<GroupElement> {
    gens.sort_by(|a, b| {
        let na: BigInt = a.free().iter().map(num_traits::Signed::abs).sum();
        let nb: BigInt = b.free().iter().map(num_traits::Signed::abs).sum();
        na.cmp(&nb).then_with(|| a.coords().cmp(&b.coords()))
    });
    gens
}

fn relint_test(face: Face, vertices: &[Face], rays: &[Face]) -> bool {
    let mut has_vertex = false;
    let mut union = 0u64;
    for v in vertices {
        if v.is_subset_of(face) {
            has_vertex = true;
            union |= v.0;
        }
    }
    if !has_vertex {
        return false;
    }
    for r in rays {
        if r.is_subset_of(face) {
            union |= r.0;
        }
    }
    union == face.0
}
