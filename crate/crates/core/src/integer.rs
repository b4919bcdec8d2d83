//! Dense integer matrices, Smith and Hermite normal forms, and the integer
//! solvers built on them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Row-major matrix of arbitrary precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r.iter().cloned());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix column");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len(), "dimension mismatch in product");
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn rank(&self) -> usize {
        row_echelon(self).rank
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Determinant by fraction-free elimination. Square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(k, k) * a.get(i, j) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.get(k, k).clone();
        }
        let d = if n == 0 { BigInt::one() } else { a.get(n - 1, n - 1).clone() };
        if sign {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let v = s * f;
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += f * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let v = s * f;
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

pub fn vec_gcd(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = vec_gcd(v);
    if g.is_zero() || g.is_one() {
        v.to_vec()
    } else {
        v.iter().map(|x| x / &g).collect()
    }
}

pub fn unit_vectors(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Result of [`smith_normal_form`]: `u * m * v == d`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// Nonzero diagonal entries d_1 | d_2 | ... (all positive).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// An integer solution of `m x = b`, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.u.mul_vec(b);
        let mut y = vec![BigInt::zero(); self.v.nrows()];
        for (i, ci) in c.iter().enumerate() {
            if i < self.rank {
                let (q, r) = ci.div_rem(self.d.get(i, i));
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !ci.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }

    /// A lattice basis of the integer kernel of `m` (columns of `v` past the rank).
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank..self.v.ncols()).map(|j| self.v.column(j)).collect()
    }
}

fn min_abs_nonzero<'a>(entries: impl Iterator<Item = ((usize, usize), &'a BigInt)>) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), &BigInt)> = None;
    for (pos, x) in entries {
        if x.is_zero() {
            continue;
        }
        match best {
            Some((_, b)) if b.magnitude() <= x.magnitude() => {}
            _ => best = Some((pos, x)),
        }
    }
    best.map(|(p, _)| p)
}

/// Smith normal form with unimodular transforms, by elementary operations
/// with minimal-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let cells = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
        let Some((pi, pj)) = min_abs_nonzero(cells.map(|(i, j)| ((i, j), a.get(i, j)))) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let p = a.get(t, t).clone();
            for i in t + 1..rows {
                if !a.get(i, t).is_zero() {
                    let q = -a.get(i, t).div_floor(&p);
                    a.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !a.get(t, j).is_zero() {
                    let q = -a.get(t, j).div_floor(&p);
                    a.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                }
            }
            let line = (t + 1..rows)
                .map(|i| ((i, t), a.get(i, t)))
                .chain((t + 1..cols).map(|j| ((t, j), a.get(t, j))));
            if let Some((i, j)) = min_abs_nonzero(line) {
                // a smaller remainder is left in the pivot row or column
                if j == t {
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                } else {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                }
                continue;
            }
            let p = a.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Smith { u, d: a, v, rank: t }
}

/// Row echelon (Hermite) form `h = u * m` with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn row_echelon(m: &IntMatrix) -> Echelon {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        while let Some((pi, _)) = min_abs_nonzero((r..rows).map(|i| ((i, c), a.get(i, c)))) {
            a.swap_rows(r, pi);
            u.swap_rows(r, pi);
            let p = a.get(r, c).clone();
            let mut clean = true;
            for i in r + 1..rows {
                if !a.get(i, c).is_zero() {
                    let q = -a.get(i, c).div_floor(&p);
                    a.add_row_multiple(i, r, &q);
                    u.add_row_multiple(i, r, &q);
                    if !a.get(i, c).is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if a.get(r, c).is_zero() {
            continue;
        }
        if a.get(r, c).is_negative() {
            a.negate_row(r);
            u.negate_row(r);
        }
        let p = a.get(r, c).clone();
        for i in 0..r {
            let q = -a.get(i, c).div_floor(&p);
            a.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { h: a, u, pivots, rank: r }
}

/// Canonical echelon basis of the lattice generated by `vectors` (all of
/// length `dim`). The first nonzero coordinates of the returned vectors
/// sit at strictly increasing positions and are positive.
pub fn lattice_basis(dim: usize, vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = IntMatrix::from_rows(dim, vectors);
    let e = row_echelon(&m);
    (0..e.rank).map(|i| e.h.row(i).to_vec()).collect()
}

/// Lattice basis of `{x in Z^n : m x = 0}` in echelon form.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(m);
    lattice_basis(m.ncols(), &s.kernel_basis())
}

/// One integer solution of `m x = b`.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    smith_normal_form(m).solve(b)
}

/// Saturation of the lattice spanned by `vectors`: a basis of
/// `span_Q(vectors) ∩ Z^dim`, in echelon form.
pub fn saturated_basis(dim: usize, vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    // span ∩ Z^n is the kernel of the integer annihilator of the span.
    let m = IntMatrix::from_rows(dim, vectors);
    let annihilator = integer_kernel(&m);
    if annihilator.is_empty() {
        return unit_vectors(dim);
    }
    integer_kernel(&IntMatrix::from_rows(dim, &annihilator))
}

/// Inverse over `Q` of an invertible square matrix given by rows.
pub fn rational_inverse(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).expect("singular matrix");
        a.swap(c, p);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &piv;
        }
        let prow = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Determinant and adjugate, so that `m * adj == det * I`.
pub fn adjugate(m: &IntMatrix) -> (BigInt, IntMatrix) {
    let det = m.determinant();
    let n = m.nrows();
    let inv = rational_inverse(&m.row_vecs());
    let scale = BigRational::from_integer(det.clone());
    let mut adj = IntMatrix::zeros(n, n);
    for (i, row) in inv.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            adj.set(i, j, (x * &scale).to_integer());
        }
    }
    (det, adj)
}
