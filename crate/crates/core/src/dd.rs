//! Double description method: extreme rays and lineality space of a cone
//! given by homogeneous linear inequalities and equations.

use crate::integer::{dot, integer_kernel, primitive, rational_inverse, unit_vectors, IntMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// V-description of a polyhedral cone: `cone(rays) + span(lineality)`.
/// Rays are primitive, lie in the orthogonal complement of the lineality
/// space, and are sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdResult {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Computes `{x in Q^dim : a · x >= 0 for a in ineqs, e · x = 0 for e in eqs}`.
pub fn cone_from_constraints(dim: usize, ineqs: &[Vec<BigInt>], eqs: &[Vec<BigInt>]) -> DdResult {
    // parametrize the equations: x = n0 y
    let n0: Vec<Vec<BigInt>> = if eqs.is_empty() {
        unit_vectors(dim)
    } else {
        integer_kernel(&IntMatrix::from_rows(dim, eqs))
    };
    if n0.is_empty() {
        return DdResult { rays: vec![], lineality: vec![] };
    }
    let n0m = IntMatrix::from_columns(dim, &n0);
    let a1: Vec<Vec<BigInt>> = ineqs.iter().map(|a| n0m.transpose().mul_vec(a)).collect();
    let d0 = n0.len();

    let ly = integer_kernel(&IntMatrix::from_rows(d0, &a1));
    let lineality: Vec<Vec<BigInt>> = ly.iter().map(|y| primitive(&n0m.mul_vec(y))).collect();
    let lineality = crate::integer::lattice_basis(dim, &lineality);

    // restrict to the orthogonal complement of the lineality space
    let ny: Vec<Vec<BigInt>> = if ly.is_empty() {
        unit_vectors(d0)
    } else {
        integer_kernel(&IntMatrix::from_rows(d0, &ly))
    };
    let d2 = ny.len();
    let mut rays = Vec::new();
    if d2 > 0 {
        let nym = IntMatrix::from_columns(d0, &ny);
        let a2: Vec<Vec<BigInt>> = a1
            .iter()
            .map(|a| nym.transpose().mul_vec(a))
            .filter(|a| a.iter().any(|x| !x.is_zero()))
            .collect();
        let full = n0m.mul(&nym);
        for z in pointed_rays(d2, &a2) {
            rays.push(primitive(&full.mul_vec(&z)));
        }
    }
    rays.sort();
    rays.dedup();
    DdResult { rays, lineality }
}

/// Extreme rays of the pointed cone `{z : a · z >= 0}`; `rows` has full
/// column rank `d`.
fn pointed_rays(d: usize, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    // greedy choice of d independent rows
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    let mut basis: Vec<Vec<BigRational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if chosen.len() == d {
            break;
        }
        let mut v: Vec<BigRational> = r.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        for (b, &p) in basis.iter().zip(&pivots) {
            if !v[p].is_zero() {
                let f = &v[p] / &b[p];
                for (vj, bj) in v.iter_mut().zip(b) {
                    *vj -= &f * bj;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            basis.push(v);
            pivots.push(p);
            chosen.push(i);
        }
    }
    assert_eq!(chosen.len(), d, "constraint rows do not define a pointed cone");

    let sub: Vec<Vec<BigInt>> = chosen.iter().map(|&i| rows[i].clone()).collect();
    let inv = rational_inverse(&sub);
    let mut rays: Vec<Vec<BigInt>> = Vec::with_capacity(d);
    let mut zeros: Vec<Bits> = Vec::with_capacity(d);
    for j in 0..d {
        let col: Vec<BigRational> = inv.iter().map(|row| row[j].clone()).collect();
        rays.push(clear_denominators(&col));
        let mut z = Bits::new(m);
        for (k, &ci) in chosen.iter().enumerate() {
            if k != j {
                z.set(ci);
            }
        }
        zeros.push(z);
    }

    let mut processed = vec![false; m];
    for &c in &chosen {
        processed[c] = true;
    }
    for (i, a) in rows.iter().enumerate() {
        if processed[i] {
            continue;
        }
        processed[i] = true;
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (k, v) in vals.iter().enumerate() {
                if v.is_zero() {
                    zeros[k].set(i);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = zeros[p].and(&zeros[q]);
                if common.count() + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|k| k == p || k == q || !common.subset_of(&zeros[k]));
                if !adjacent {
                    continue;
                }
                let r: Vec<BigInt> = rays[q]
                    .iter()
                    .zip(&rays[p])
                    .map(|(rq, rp)| &vals[p] * rq - &vals[q] * rp)
                    .collect();
                let mut z = common;
                z.set(i);
                new_rays.push(primitive(&r));
                new_zeros.push(z);
            }
        }
        let mut kept_rays = Vec::new();
        let mut kept_zeros = Vec::new();
        for k in 0..rays.len() {
            if vals[k].is_negative() {
                continue;
            }
            let mut z = zeros[k].clone();
            if vals[k].is_zero() {
                z.set(i);
            }
            kept_rays.push(std::mem::take(&mut rays[k]));
            kept_zeros.push(z);
        }
        kept_rays.extend(new_rays);
        kept_zeros.extend(new_zeros);
        rays = kept_rays;
        zeros = kept_zeros;
    }
    rays
}

fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| num_integer::Integer::lcm(&l, x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive(&ints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integer::to_big;

    fn rows(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| to_big(r)).collect()
    }

    #[test]
    fn orthant_and_square_pyramid() {
        let r = cone_from_constraints(2, &rows(&[&[1, 0], &[0, 1]]), &[]);
        assert_eq!(r.rays, rows(&[&[0, 1], &[1, 0]]));
        assert!(r.lineality.is_empty());
        // cone over a square: z >= |x|, z >= |y|
        let r = cone_from_constraints(
            3,
            &rows(&[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]]),
            &[],
        );
        assert_eq!(r.rays, rows(&[&[-1, -1, 1], &[-1, 1, 1], &[1, -1, 1], &[1, 1, 1]]));
    }

    #[test]
    fn lineality_and_equations() {
        // half-plane x >= 0 in Q^2: ray e1, lineality e2
        let r = cone_from_constraints(2, &rows(&[&[1, 0]]), &[]);
        assert_eq!(r.rays, rows(&[&[1, 0]]));
        assert_eq!(r.lineality, rows(&[&[0, 1]]));
        // x >= 0, y >= 0, x + y - z = 0 ... with z free: rays (1,0,1),(0,1,1)
        let r = cone_from_constraints(3, &rows(&[&[1, 0, 0], &[0, 1, 0]]), &rows(&[&[1, 1, -1]]));
        assert_eq!(r.rays, rows(&[&[0, 1, 1], &[1, 0, 1]]));
        // whole space
        let r = cone_from_constraints(2, &[], &[]);
        assert!(r.rays.is_empty());
        assert_eq!(r.lineality.len(), 2);
        // the origin
        let r = cone_from_constraints(1, &rows(&[&[1], &[-1]]), &[]);
        assert!(r.rays.is_empty() && r.lineality.is_empty());
    }

    #[test]
    fn redundant_inequalities() {
        let r = cone_from_constraints(2, &rows(&[&[1, 0], &[0, 1], &[1, 1], &[2, 1]]), &[]);
        assert_eq!(r.rays, rows(&[&[0, 1], &[1, 0]]));
        let r = cone_from_constraints(2, &rows(&[&[2, -1], &[-1, 2]]), &[]);
        assert_eq!(r.rays, rows(&[&[1, 2], &[2, 1]]));
    }
}
