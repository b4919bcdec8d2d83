//! Enumeration of integer points satisfying linear equations, congruences
//! and inequalities.
//!
//! The equations and congruences are solved over `Z` first, giving
//! `x = x0 + N y` with `N` in column echelon form. Because the pivots of `N`
//! are positive and strictly increasing, lexicographic order on `y` is
//! lexicographic order on `x`. The free parameters are then enumerated one
//! at a time with exact LP bounds.

use crate::error::{Error, Result};
use crate::integer::{dot, lattice_basis, smith_normal_form, IntMatrix};
use crate::lp::{Constraints, LpOutcome};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::ops::ControlFlow;

#[derive(Clone, Debug, Default)]
pub struct IntegerProblem {
    pub dim: usize,
    /// `a · x = b`
    pub eqs: Vec<(Vec<BigInt>, BigInt)>,
    /// `a · x ≡ b (mod m)`
    pub congruences: Vec<(Vec<BigInt>, BigInt, BigInt)>,
    /// `a · x >= b`
    pub ineqs: Vec<(Vec<BigInt>, BigInt)>,
}

struct Parametrized {
    origin: Vec<BigInt>,
    basis: Vec<Vec<BigInt>>,
    /// inequalities in parameter space: `g · y >= h`
    rows: Vec<(Vec<BigInt>, BigInt)>,
}

impl IntegerProblem {
    pub fn new(dim: usize) -> Self {
        IntegerProblem { dim, ..Default::default() }
    }

    fn parametrize(&self) -> Option<Parametrized> {
        let n = self.dim;
        let c = self.congruences.len();
        let mut m = IntMatrix::zeros(self.eqs.len() + c, n + c);
        let mut rhs = Vec::with_capacity(self.eqs.len() + c);
        for (i, (a, b)) in self.eqs.iter().enumerate() {
            for (j, x) in a.iter().enumerate() {
                m.set(i, j, x.clone());
            }
            rhs.push(b.clone());
        }
        for (k, (a, b, modulus)) in self.congruences.iter().enumerate() {
            let i = self.eqs.len() + k;
            for (j, x) in a.iter().enumerate() {
                m.set(i, j, x.clone());
            }
            m.set(i, n + k, -modulus);
            rhs.push(b.clone());
        }
        let s = smith_normal_form(&m);
        let z0 = s.solve(&rhs)?;
        let proj: Vec<Vec<BigInt>> = s.kernel_basis().iter().map(|v| v[..n].to_vec()).collect();
        let basis = lattice_basis(n, &proj);
        let origin = z0[..n].to_vec();
        let rows = self
            .ineqs
            .iter()
            .map(|(a, b)| {
                let g: Vec<BigInt> = basis.iter().map(|col| dot(a, col)).collect();
                (g, b - dot(a, &origin))
            })
            .collect();
        Some(Parametrized { origin, basis, rows })
    }

    /// Visits integer solutions in lexicographic order until `visit`
    /// breaks. Fails when the solution set is infinite.
    pub fn for_each(&self, mut visit: impl FnMut(&[BigInt]) -> ControlFlow<()>) -> Result<()> {
        let Some(p) = self.parametrize() else {
            return Ok(());
        };
        let k = p.basis.len();
        if k == 0 {
            if p.rows.iter().all(|(_, h)| !h.is_positive()) {
                let _ = visit(&p.origin);
            }
            return Ok(());
        }
        // boundedness of the relaxation
        let mut cons = Constraints::new(k);
        cons.ineqs = p.rows.clone();
        for j in 0..k {
            let mut e = vec![BigInt::zero(); k];
            e[j] = BigInt::from(1);
            match cons.maximize(&e) {
                LpOutcome::Infeasible => return Ok(()),
                LpOutcome::Unbounded => return Err(Error::UnboundedPolyhedron),
                LpOutcome::Optimal { .. } => {}
            }
            if let LpOutcome::Unbounded = cons.minimize(&e) {
                return Err(Error::UnboundedPolyhedron);
            }
        }
        let mut prefix = Vec::with_capacity(k);
        let mut x = p.origin.clone();
        let _ = recurse(&p, &mut prefix, &mut x, &mut visit);
        Ok(())
    }

    pub fn solutions(&self) -> Result<Vec<Vec<BigInt>>> {
        let mut out = Vec::new();
        self.for_each(|x| {
            out.push(x.to_vec());
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// The lexicographically first solution.
    pub fn first(&self) -> Result<Option<Vec<BigInt>>> {
        let mut out = None;
        self.for_each(|x| {
            out = Some(x.to_vec());
            ControlFlow::Break(())
        })?;
        Ok(out)
    }
}

/// Rows restricted to the parameters from `j` on, with the prefix substituted.
fn reduced_rows(p: &Parametrized, prefix: &[BigInt]) -> Vec<(Vec<BigInt>, BigInt)> {
    let j = prefix.len();
    p.rows
        .iter()
        .map(|(g, h)| {
            let fixed = dot(&g[..j], prefix);
            (g[j..].to_vec(), h - fixed)
        })
        .collect()
}

fn bounds(rows: &[(Vec<BigInt>, BigInt)], width: usize) -> Option<(BigInt, BigInt)> {
    if width == 1 {
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for (g, h) in rows {
            let g = &g[0];
            if g.is_zero() {
                if h.is_positive() {
                    return None;
                }
            } else if g.is_positive() {
                let b = Integer::div_ceil(h, g);
                lo = Some(lo.map_or(b.clone(), |l| l.max(b)));
            } else {
                let b = h.div_floor(g);
                hi = Some(hi.map_or(b.clone(), |u| u.min(b)));
            }
        }
        let (lo, hi) = (lo.expect("bounded"), hi.expect("bounded"));
        return (lo <= hi).then_some((lo, hi));
    }
    let mut cons = Constraints::new(width);
    cons.ineqs = rows.to_vec();
    let mut e = vec![BigInt::zero(); width];
    e[0] = BigInt::from(1);
    let hi = match cons.maximize(&e) {
        LpOutcome::Optimal { value, .. } => value.floor().to_integer(),
        LpOutcome::Infeasible => return None,
        LpOutcome::Unbounded => unreachable!("boundedness checked"),
    };
    let lo = match cons.minimize(&e) {
        LpOutcome::Optimal { value, .. } => ceil(&value),
        _ => return None,
    };
    (lo <= hi).then_some((lo, hi))
}

fn ceil(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

fn recurse(
    p: &Parametrized,
    prefix: &mut Vec<BigInt>,
    x: &mut Vec<BigInt>,
    visit: &mut impl FnMut(&[BigInt]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let k = p.basis.len();
    let j = prefix.len();
    let rows = reduced_rows(p, prefix);
    let Some((lo, hi)) = bounds(&rows, k - j) else {
        return ControlFlow::Continue(());
    };
    let col = &p.basis[j];
    let mut t = lo.clone();
    for (xi, ci) in x.iter_mut().zip(col) {
        *xi += ci * &t;
    }
    while t <= hi {
        prefix.push(t.clone());
        let flow = if j + 1 == k { visit(x) } else { recurse(p, prefix, x, visit) };
        prefix.pop();
        if flow.is_break() {
            return flow;
        }
        for (xi, ci) in x.iter_mut().zip(col) {
            *xi += ci;
        }
        t += 1;
    }
    for (xi, ci) in x.iter_mut().zip(col) {
        *xi -= ci * &t;
    }
    ControlFlow::Continue(())
}
