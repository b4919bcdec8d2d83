//! Exact linear programming by a two-phase simplex on a fraction-free
//! integer tableau with Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: BigRational, point: Vec<BigRational> },
}

/// Linear constraints over free variables: `ineq_i · z >= ineq_rhs_i` and
/// `eq_j · z = eq_rhs_j`.
#[derive(Clone, Debug, Default)]
pub struct Constraints {
    pub dim: usize,
    pub ineqs: Vec<(Vec<BigInt>, BigInt)>,
    pub eqs: Vec<(Vec<BigInt>, BigInt)>,
}

impl Constraints {
    pub fn new(dim: usize) -> Self {
        Constraints { dim, ineqs: Vec::new(), eqs: Vec::new() }
    }

    pub fn maximize(&self, c: &[BigInt]) -> LpOutcome {
        assert_eq!(c.len(), self.dim);
        let (a, b, cols) = self.standard_form();
        let mut cs = vec![BigInt::zero(); cols];
        for (j, cj) in c.iter().enumerate() {
            cs[j] = cj.clone();
            cs[self.dim + j] = -cj;
        }
        match solve_standard(&a, &b, &cs, cols) {
            StdOutcome::Infeasible => LpOutcome::Infeasible,
            StdOutcome::Unbounded => LpOutcome::Unbounded,
            StdOutcome::Optimal { value, x } => LpOutcome::Optimal { value, point: self.unsplit(&x) },
        }
    }

    pub fn minimize(&self, c: &[BigInt]) -> LpOutcome {
        let neg: Vec<BigInt> = c.iter().map(|x| -x).collect();
        match self.maximize(&neg) {
            LpOutcome::Optimal { value, point } => LpOutcome::Optimal { value: -value, point },
            other => other,
        }
    }

    pub fn feasible_point(&self) -> Option<Vec<BigRational>> {
        match self.maximize(&vec![BigInt::zero(); self.dim]) {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    fn unsplit(&self, x: &[BigRational]) -> Vec<BigRational> {
        (0..self.dim).map(|j| &x[j] - &x[self.dim + j]).collect()
    }

    /// Rows `[G, -G, -I] x = h` then `[E, -E, 0] x = e` with `x >= 0`.
    fn standard_form(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>, usize) {
        let k = self.dim;
        let m = self.ineqs.len();
        let cols = 2 * k + m;
        let mut a = Vec::with_capacity(m + self.eqs.len());
        let mut b = Vec::with_capacity(m + self.eqs.len());
        for (i, (g, h)) in self.ineqs.iter().enumerate() {
            let mut row = vec![BigInt::zero(); cols];
            for (j, x) in g.iter().enumerate() {
                row[j] = x.clone();
                row[k + j] = -x;
            }
            row[2 * k + i] = BigInt::from(-1);
            a.push(row);
            b.push(h.clone());
        }
        for (g, h) in &self.eqs {
            let mut row = vec![BigInt::zero(); cols];
            for (j, x) in g.iter().enumerate() {
                row[j] = x.clone();
                row[k + j] = -x;
            }
            a.push(row);
            b.push(h.clone());
        }
        (a, b, cols)
    }
}

enum StdOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: BigRational, x: Vec<BigRational> },
}

/// Integer tableau: every entry equals `d` times the rational tableau entry.
struct Tableau {
    rows: Vec<Vec<BigInt>>,
    obj: Vec<BigInt>,
    d: BigInt,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, s: usize) {
        let p = self.rows[r][s].clone();
        let d = self.d.clone();
        let pivot_row = self.rows[r].clone();
        let update = |row: &mut Vec<BigInt>| {
            let f = row[s].clone();
            for (x, pr) in row.iter_mut().zip(&pivot_row) {
                let mut v = &p * &*x;
                if !f.is_zero() && !pr.is_zero() {
                    v -= &f * pr;
                }
                *x = v / &d;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                update(row);
            }
        }
        update(&mut self.obj);
        self.d = p;
        self.basis[r] = s;
        if self.d.is_negative() {
            self.d = -&self.d;
            for row in self.rows.iter_mut().chain(std::iter::once(&mut self.obj)) {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
            }
        }
    }

    /// Runs Bland-rule simplex iterations restricted to columns `< limit`.
    /// Returns false when the objective is unbounded.
    fn optimize(&mut self, limit: usize) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(s) = (0..limit).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<usize> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][s];
                if !a.is_positive() {
                    continue;
                }
                best = match best {
                    None => Some(i),
                    Some(b) => {
                        let lhs = &self.rows[i][rhs] * &self.rows[b][s];
                        let rhs_v = &self.rows[b][rhs] * a;
                        if lhs < rhs_v || (lhs == rhs_v && self.basis[i] < self.basis[b]) {
                            Some(i)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            match best {
                Some(r) => self.pivot(r, s),
                None => return false,
            }
        }
    }
}

fn solve_standard(a: &[Vec<BigInt>], b: &[BigInt], c: &[BigInt], n: usize) -> StdOutcome {
    let m = a.len();
    let width = n + m + 1;
    let mut rows = Vec::with_capacity(m);
    for (i, (ai, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut row = vec![BigInt::zero(); width];
        for (j, x) in ai.iter().enumerate() {
            row[j] = if flip { -x } else { x.clone() };
        }
        row[n + i] = BigInt::from(1);
        row[width - 1] = if flip { -bi } else { bi.clone() };
        rows.push(row);
    }
    let mut obj = vec![BigInt::zero(); width];
    for row in &rows {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    let mut t = Tableau { rows, obj, d: BigInt::from(1), basis: (n..n + m).collect() };
    t.optimize(n + m);
    if !t.obj[width - 1].is_zero() {
        return StdOutcome::Infeasible;
    }

    // drive artificial variables out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    for row in t.rows.iter_mut() {
        let rhs = row[width - 1].clone();
        row.truncate(n);
        row.push(rhs);
    }
    let mut obj = vec![BigInt::zero(); n + 1];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        if c[bv].is_zero() {
            continue;
        }
        for (o, x) in obj.iter_mut().zip(row) {
            *o += &c[bv] * x;
        }
    }
    for j in 0..n {
        obj[j] -= &t.d * &c[j];
    }
    t.obj = obj;
    if !t.optimize(n) {
        return StdOutcome::Unbounded;
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        x[bv] = BigRational::new(row[n].clone(), t.d.clone());
    }
    StdOutcome::Optimal { value: BigRational::new(t.obj[n].clone(), t.d.clone()), x }
}
