#![allow(dead_code)]

use bpfkit::abelian::{AbelianGroup, GroupElement};
use bpfkit::mds::{Monomial, MoriDreamSpace, Relation};
use bpfkit::monoid::EmbeddedMonoid;
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn space(rows: &[&[i64]], monomials: &[&[u64]], u: &[i64]) -> MoriDreamSpace {
    let k = AbelianGroup::free(rows.len());
    let r = rows[0].len();
    let degs = (0..r)
        .map(|j| GroupElement::from_i64(&k, &rows.iter().map(|row| row[j]).collect::<Vec<_>>(), &[]).unwrap())
        .collect();
    let rel = Relation::new(
        monomials
            .iter()
            .map(|e| Monomial { coefficient: BigRational::from_integer(1.into()), exponents: e.to_vec() })
            .collect(),
    )
    .unwrap();
    MoriDreamSpace::new(&k, degs, vec![rel], GroupElement::from_i64(&k, u, &[]).unwrap()).unwrap()
}

pub fn el(x: &MoriDreamSpace, v: &[i64]) -> GroupElement {
    GroupElement::from_i64(x.class_group(), v, &[]).unwrap()
}

pub fn fujita1() -> MoriDreamSpace {
    space(
        &[&[1, 1, 2, 0, 1, 1, 1, -1, 0, 0], &[0, 0, -1, 1, 0, -1, -1, 1, 0, 0], &[0, 36, 36, 0, 18, 49, 49, -48, 1, 1]],
        &[&[1, 1, 0, 0, 0, 0, 0, 0, 0, 0], &[0, 0, 1, 1, 0, 0, 0, 0, 0, 0], &[0, 0, 0, 0, 2, 0, 0, 0, 0, 0]],
        &[1, 1, 50],
    )
}

pub fn fujita2() -> MoriDreamSpace {
    space(
        &[&[0, 0, 1, 0, 0, 1, 1, 0, 1], &[1, 1, 0, 1, 1, 0, 1, 1, 2]],
        &[&[1, 7, 8, 0, 0, 0, 0, 0, 0], &[0, 0, 0, 1, 7, 8, 0, 0, 0], &[0, 0, 0, 0, 0, 0, 8, 0, 0]],
        &[1, 3],
    )
}

pub fn free_set(m: &EmbeddedMonoid) -> Vec<Vec<BigInt>> {
    let mut v: Vec<Vec<BigInt>> = m.generators().iter().map(|g| g.free().to_vec()).collect();
    v.sort();
    v
}

pub fn big(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    out.sort();
    out
}

pub const SURFACE_Q: [[i64; 15]; 12] = [
    [1, -1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, -1, 1, 1, 0, 0, 0, 0, 0, 0],
    [0, -1, 0, 0, 0, 1, 0, -1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0],
    [1, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, -1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
];

pub fn surface() -> MoriDreamSpace {
    let rows: Vec<&[i64]> = SURFACE_Q.iter().map(|r| &r[..]).collect();
    space(
        &rows,
        &[
            &[5, 1, 4, 3, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0, 2, 1, 1, 0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 1, 2, 1, 0, 0],
        ],
        &[-6, 12, 18, 24, 42, 18, 141, 99, 90, 86, 36, 75],
    )
}


/// `Z ⊕ Z/4` with generators `(0,2̄), (1,1̄), (3,2̄)`.
pub fn running_monoid() -> EmbeddedMonoid {
    let k = AbelianGroup::new(1, vec![BigInt::from(4)]).unwrap();
    let g = |f: i64, t: i64| GroupElement::from_i64(&k, &[f], &[t]).unwrap();
    EmbeddedMonoid::new(&k, vec![g(0, 2), g(1, 1), g(3, 2)]).unwrap()
}

pub fn numerical(gens: &[i64]) -> EmbeddedMonoid {
    let z = AbelianGroup::free(1);
    EmbeddedMonoid::new(&z, gens.iter().map(|&a| GroupElement::from_i64(&z, &[a], &[]).unwrap()).collect()).unwrap()
}
