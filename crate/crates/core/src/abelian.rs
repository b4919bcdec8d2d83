//! Finitely generated abelian groups `Z^r ⊕ Z/a_1 ⊕ ... ⊕ Z/a_t`, their
//! elements, homomorphisms and subgroups.

use crate::error::{Error, Result};
use crate::integer::{integer_kernel, lattice_basis, smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Arc<Self>> {
        if let Some(a) = torsion.iter().find(|a| *a < &BigInt::from(2)) {
            return Err(Error::InvalidInput(format!("torsion order {a} is smaller than 2")));
        }
        Ok(Arc::new(AbelianGroup { rank, torsion }))
    }

    pub fn free(rank: usize) -> Arc<Self> {
        Arc::new(AbelianGroup { rank, torsion: Vec::new() })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion_orders(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of coordinates, free ones first.
    pub fn ngens(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }

    /// Least common multiple of the torsion orders.
    pub fn exponent(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |l, a| l.lcm(a))
    }

    /// Order of the torsion subgroup.
    pub fn torsion_size(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Every torsion part in lexicographic order.
    pub fn torsion_parts(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![Vec::new()];
        for a in &self.torsion {
            let mut next = Vec::new();
            for prefix in &out {
                let mut k = BigInt::zero();
                while &k < a {
                    let mut v = prefix.clone();
                    v.push(k.clone());
                    next.push(v);
                    k += 1;
                }
            }
            out = next;
        }
        out
    }

    /// Relation matrix of the group as a quotient of `Z^ngens`.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.ngens();
        let mut m = IntMatrix::zeros(n, self.torsion.len());
        for (k, a) in self.torsion.iter().enumerate() {
            m.set(self.rank + k, k, a.clone());
        }
        m
    }

    /// The canonical form with mutually inverse isomorphisms.
    pub fn canonicalize(self: &Arc<Self>) -> (Arc<AbelianGroup>, GroupHom, GroupHom) {
        let p = Presentation::new(self.ngens(), self.relation_matrix());
        let c = p.canonicalize();
        let to = (0..self.ngens()).map(|j| c.map(&unit(self.ngens(), j))).collect();
        let iso = GroupHom::new(self.clone(), c.group.clone(), to).expect("canonical map is well defined");
        let back = (0..c.group.ngens())
            .map(|j| GroupElement::from_coords(self, &c.lift_coords(&unit(c.group.ngens(), j))))
            .collect();
        let inv = GroupHom::new(c.group.clone(), self.clone(), back).expect("inverse map is well defined");
        (c.group.clone(), iso, inv)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        for a in &self.torsion {
            parts.push(format!("Z/{a}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub(crate) fn unit(n: usize, j: usize) -> Vec<BigInt> {
    (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: Arc<AbelianGroup>,
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
}

impl GroupElement {
    /// Builds an element, reducing torsion coordinates into `[0, a_i)`.
    pub fn new(group: &Arc<AbelianGroup>, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<Self> {
        if free.len() != group.rank {
            return Err(Error::DimensionMismatch { expected: group.rank, found: free.len() });
        }
        if torsion.len() != group.torsion.len() {
            return Err(Error::DimensionMismatch { expected: group.torsion.len(), found: torsion.len() });
        }
        let torsion = torsion.iter().zip(&group.torsion).map(|(x, a)| x.mod_floor(a)).collect();
        Ok(GroupElement { group: group.clone(), free, torsion })
    }

    pub fn from_i64(group: &Arc<AbelianGroup>, free: &[i64], torsion: &[i64]) -> Result<Self> {
        Self::new(group, crate::integer::to_big(free), crate::integer::to_big(torsion))
    }

    pub fn zero(group: &Arc<AbelianGroup>) -> Self {
        GroupElement {
            group: group.clone(),
            free: vec![BigInt::zero(); group.rank],
            torsion: vec![BigInt::zero(); group.torsion.len()],
        }
    }

    /// Element with the given coordinates (free ones first).
    pub fn from_coords(group: &Arc<AbelianGroup>, coords: &[BigInt]) -> Self {
        assert_eq!(coords.len(), group.ngens());
        let (f, t) = coords.split_at(group.rank);
        Self::new(group, f.to_vec(), t.to_vec()).expect("lengths checked")
    }

    pub fn group(&self) -> &Arc<AbelianGroup> {
        &self.group
    }

    pub fn free(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn coords(&self) -> Vec<BigInt> {
        self.free.iter().chain(&self.torsion).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(|x| x.is_zero())
    }

    pub fn has_zero_free_part(&self) -> bool {
        self.free.iter().all(|x| x.is_zero())
    }

    fn check(&self, other: &GroupElement) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.negate()))
    }

    pub(crate) fn add_unchecked(&self, other: &GroupElement) -> GroupElement {
        let free = self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect();
        let torsion = self
            .torsion
            .iter()
            .zip(&other.torsion)
            .zip(&self.group.torsion)
            .map(|((a, b), m)| (a + b).mod_floor(m))
            .collect();
        GroupElement { group: self.group.clone(), free, torsion }
    }

    pub fn negate(&self) -> GroupElement {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> GroupElement {
        let free = self.free.iter().map(|a| a * k).collect();
        let torsion =
            self.torsion.iter().zip(&self.group.torsion).map(|(a, m)| (a * k).mod_floor(m)).collect();
        GroupElement { group: self.group.clone(), free, torsion }
    }

    /// Parses `"free,...;torsion,..."`; a missing torsion part means zero.
    pub fn parse(group: &Arc<AbelianGroup>, s: &str) -> Result<Self> {
        let (f, t) = match s.split_once(';') {
            Some((f, t)) => (f, Some(t)),
            None => (s, None),
        };
        let list = |x: &str| -> Result<Vec<BigInt>> {
            let x = x.trim().trim_start_matches('[').trim_end_matches(']');
            if x.trim().is_empty() {
                return Ok(Vec::new());
            }
            x.split(',')
                .map(|p| p.trim().parse::<BigInt>().map_err(|_| Error::InvalidInput(format!("bad integer {p:?}"))))
                .collect()
        };
        let free = list(f)?;
        let torsion = match t {
            Some(t) => list(t)?,
            None => vec![BigInt::zero(); group.torsion.len()],
        };
        Self::new(group, free, torsion)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        if self.torsion.is_empty() {
            write!(f, "{}", join(&self.free))
        } else {
            write!(f, "{};{}", join(&self.free), join(&self.torsion))
        }
    }
}

/// A finite presentation `Z^n / im(relations)`; relations are columns.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub ngens: usize,
    pub relations: IntMatrix,
}

/// Canonical form of a presentation with the coordinate change.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub group: Arc<AbelianGroup>,
    /// Rows of `U` kept by the canonical form, in canonical coordinate order.
    forward: IntMatrix,
    /// Columns of `U^{-1}` matching the kept rows.
    backward: IntMatrix,
}

impl Presentation {
    pub fn new(ngens: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.nrows(), ngens);
        Presentation { ngens, relations }
    }

    pub fn canonicalize(&self) -> Canonical {
        let s = smith_normal_form(&self.relations);
        let n = self.ngens;
        let mut free_rows = Vec::new();
        let mut tors_rows = Vec::new();
        let mut orders = Vec::new();
        for i in 0..n {
            if i < s.rank {
                let d = s.d.get(i, i);
                if !d.is_one() {
                    tors_rows.push(i);
                    orders.push(d.clone());
                }
            } else {
                free_rows.push(i);
            }
        }
        let rows: Vec<usize> = free_rows.iter().chain(&tors_rows).copied().collect();
        let uinv = inverse_unimodular(&s.u);
        let forward = IntMatrix::from_rows(n, &rows.iter().map(|&i| s.u.row(i).to_vec()).collect::<Vec<_>>());
        let backward = IntMatrix::from_columns(n, &rows.iter().map(|&i| uinv.column(i)).collect::<Vec<_>>());
        let group = Arc::new(AbelianGroup { rank: free_rows.len(), torsion: orders });
        Canonical { group, forward, backward }
    }
}

impl Canonical {
    pub fn map(&self, x: &[BigInt]) -> GroupElement {
        GroupElement::from_coords(&self.group, &self.forward.mul_vec(x))
    }

    /// A preimage in `Z^n` of canonical coordinates.
    pub fn lift_coords(&self, c: &[BigInt]) -> Vec<BigInt> {
        self.backward.mul_vec(c)
    }
}

fn inverse_unimodular(u: &IntMatrix) -> IntMatrix {
    let n = u.nrows();
    let s = smith_normal_form(u);
    // u = s.u^{-1} d s.v^{-1} with d = I, so u^{-1} = s.v s.u
    debug_assert_eq!(s.rank, n);
    let _ = n;
    s.v.mul(&s.u)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    domain: Arc<AbelianGroup>,
    codomain: Arc<AbelianGroup>,
    images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn new(domain: Arc<AbelianGroup>, codomain: Arc<AbelianGroup>, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != domain.ngens() {
            return Err(Error::DimensionMismatch { expected: domain.ngens(), found: images.len() });
        }
        if images.iter().any(|g| *g.group() != codomain) {
            return Err(Error::GroupMismatch);
        }
        for (k, a) in domain.torsion.iter().enumerate() {
            if !images[domain.rank + k].scale(a).is_zero() {
                return Err(Error::InvalidInput(format!(
                    "image of torsion generator {} is not killed by its order {a}",
                    k + 1
                )));
            }
        }
        Ok(GroupHom { domain, codomain, images })
    }

    pub fn domain(&self) -> &Arc<AbelianGroup> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<AbelianGroup> {
        &self.codomain
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        if *x.group() != self.domain {
            return Err(Error::GroupMismatch);
        }
        Ok(self.apply_coords(&x.coords()))
    }

    pub fn apply_coords(&self, x: &[BigInt]) -> GroupElement {
        let mut acc = GroupElement::zero(&self.codomain);
        for (c, g) in x.iter().zip(&self.images) {
            if !c.is_zero() {
                acc = acc.add_unchecked(&g.scale(c));
            }
        }
        acc
    }

    /// Integer matrix `[[F, 0], [T, diag(b)]]` whose integer kernel,
    /// projected to the first `ngens` coordinates, is the kernel.
    fn kernel_system(&self) -> IntMatrix {
        let n = self.domain.ngens();
        let cod = &self.codomain;
        let t = cod.torsion.len();
        let mut m = IntMatrix::zeros(cod.ngens(), n + t);
        for (j, g) in self.images.iter().enumerate() {
            for (i, x) in g.coords().into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        for (k, b) in cod.torsion.iter().enumerate() {
            m.set(cod.rank + k, n + k, b.clone());
        }
        m
    }

    pub fn kernel(&self) -> Subgroup {
        let n = self.domain.ngens();
        let basis = integer_kernel(&self.kernel_system());
        let proj: Vec<Vec<BigInt>> = basis.iter().map(|v| v[..n].to_vec()).collect();
        let gens = lattice_basis(n, &proj)
            .into_iter()
            .map(|v| GroupElement::from_coords(&self.domain, &v))
            .filter(|g| !g.is_zero())
            .collect();
        Subgroup { ambient: self.domain.clone(), generators: gens }
    }

    /// Integer lattice basis of the kernel restricted to `Z^n`, for free domains.
    pub fn kernel_lattice(&self) -> Vec<Vec<BigInt>> {
        assert!(self.domain.is_torsion_free());
        let n = self.domain.ngens();
        let basis = integer_kernel(&self.kernel_system());
        let proj: Vec<Vec<BigInt>> = basis.iter().map(|v| v[..n].to_vec()).collect();
        lattice_basis(n, &proj)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    ambient: Arc<AbelianGroup>,
    generators: Vec<GroupElement>,
}

/// A subgroup presented as an abstract group with an embedding.
#[derive(Clone, Debug)]
pub struct SubgroupCoordinates {
    pub group: Arc<AbelianGroup>,
    /// Images in the ambient group of the canonical generators.
    pub basis: Vec<GroupElement>,
    kind: CoordKind,
}

#[derive(Clone, Debug)]
enum CoordKind {
    Identity,
    Lattice(IntMatrix),
    Smith { inclusion: GroupHom, canonical: Canonical },
}

impl Subgroup {
    pub fn new(ambient: &Arc<AbelianGroup>, generators: Vec<GroupElement>) -> Result<Self> {
        if generators.iter().any(|g| g.group() != ambient) {
            return Err(Error::GroupMismatch);
        }
        Ok(Subgroup { ambient: ambient.clone(), generators })
    }

    pub fn whole(ambient: &Arc<AbelianGroup>) -> Self {
        let generators = (0..ambient.ngens())
            .map(|j| GroupElement::from_coords(ambient, &unit(ambient.ngens(), j)))
            .collect();
        Subgroup { ambient: ambient.clone(), generators }
    }

    pub fn ambient(&self) -> &Arc<AbelianGroup> {
        &self.ambient
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    fn inclusion(&self) -> GroupHom {
        let dom = AbelianGroup::free(self.generators.len());
        GroupHom { domain: dom, codomain: self.ambient.clone(), images: self.generators.clone() }
    }

    /// Integer coefficients expressing `w` in the generators.
    pub fn solve(&self, w: &GroupElement) -> Result<Option<Vec<BigInt>>> {
        if *w.group() != self.ambient {
            return Err(Error::GroupMismatch);
        }
        let p = self.generators.len();
        let sys = self.inclusion().kernel_system();
        let sol = smith_normal_form(&sys).solve(&w.coords());
        Ok(sol.map(|x| x[..p].to_vec()))
    }

    pub fn contains(&self, w: &GroupElement) -> Result<bool> {
        Ok(self.solve(w)?.is_some())
    }

    pub fn is_whole(&self) -> bool {
        let n = self.ambient.ngens();
        (0..n).all(|j| {
            let e = GroupElement::from_coords(&self.ambient, &unit(n, j));
            self.contains(&e).expect("same group")
        })
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let p = self.generators.len();
        let mut images = self.generators.clone();
        images.extend(other.generators.iter().map(|g| g.negate()));
        let dom = AbelianGroup::free(images.len());
        let diff = GroupHom { domain: dom, codomain: self.ambient.clone(), images };
        let inc = self.inclusion();
        let mut gens: Vec<GroupElement> = diff
            .kernel_lattice()
            .iter()
            .map(|v| inc.apply_coords(&v[..p]))
            .filter(|g| !g.is_zero())
            .collect();
        gens.sort_by_key(|g| g.coords());
        gens.dedup();
        Ok(Subgroup { ambient: self.ambient.clone(), generators: gens })
    }

    /// Coordinates on the subgroup. The identity is used when the subgroup
    /// is everything, an echelon lattice basis when the ambient group is
    /// free, and the Smith canonical form otherwise.
    pub fn coordinates(&self) -> SubgroupCoordinates {
        if self.is_whole() {
            let basis = Subgroup::whole(&self.ambient).generators;
            return SubgroupCoordinates { group: self.ambient.clone(), basis, kind: CoordKind::Identity };
        }
        let n = self.ambient.ngens();
        if self.ambient.is_torsion_free() {
            let rows: Vec<Vec<BigInt>> = self.generators.iter().map(|g| g.coords()).collect();
            let b = lattice_basis(n, &rows);
            let basis = b.iter().map(|v| GroupElement::from_coords(&self.ambient, v)).collect();
            let group = AbelianGroup::free(b.len());
            let m = IntMatrix::from_columns(n, &b);
            return SubgroupCoordinates { group, basis, kind: CoordKind::Lattice(m) };
        }
        let inclusion = self.inclusion();
        let rel = inclusion.kernel_lattice();
        let p = self.generators.len();
        let canonical = Presentation::new(p, IntMatrix::from_columns(p, &rel)).canonicalize();
        let basis = (0..canonical.group.ngens())
            .map(|j| inclusion.apply_coords(&canonical.lift_coords(&unit(canonical.group.ngens(), j))))
            .collect();
        SubgroupCoordinates {
            group: canonical.group.clone(),
            basis,
            kind: CoordKind::Smith { inclusion, canonical },
        }
    }
}

impl SubgroupCoordinates {
    /// Coordinates of an ambient element, or `None` if it lies outside.
    pub fn to_coords(&self, w: &GroupElement) -> Option<GroupElement> {
        match &self.kind {
            CoordKind::Identity => Some(w.clone()),
            CoordKind::Lattice(m) => {
                let x = smith_normal_form(m).solve(w.free())?;
                Some(GroupElement::from_coords(&self.group, &x))
            }
            CoordKind::Smith { inclusion, canonical } => {
                let sub = Subgroup { ambient: inclusion.codomain.clone(), generators: inclusion.images.clone() };
                let x = sub.solve(w).ok()??;
                Some(canonical.map(&x))
            }
        }
    }

    /// The ambient element with the given subgroup coordinates.
    pub fn to_ambient(&self, x: &GroupElement) -> GroupElement {
        let amb = self.basis.first().map(|b| b.group().clone());
        let mut acc = match amb {
            Some(a) => GroupElement::zero(&a),
            None => return x.clone(),
        };
        for (c, b) in x.coords().iter().zip(&self.basis) {
            acc = acc.add_unchecked(&b.scale(c));
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.kind, CoordKind::Identity)
    }
}

/// Canonical generators of a group viewed as elements (unit vectors).
pub fn standard_generators(group: &Arc<AbelianGroup>) -> Vec<GroupElement> {
    Subgroup::whole(group).generators
}
