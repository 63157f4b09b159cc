//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix.
pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form: the nonzero rows and their pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Matrix,
    pub pivots: Vec<usize>,
}

fn width(m: &Matrix) -> usize {
    m.first().map(|r| r.len()).unwrap_or(0)
}

fn eliminate(m: &Matrix, ncols: usize, reduce_above: bool) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let p = match (r..a.len()).find(|&i| !a[i][c].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        a.swap(r, p);
        let inv = Scalar::one() / &a[r][c];
        for x in a[r][c..].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = a[r].clone();
        let targets: Box<dyn Iterator<Item = usize>> = if reduce_above { Box::new((0..a.len()).filter(move |&i| i != r)) } else { Box::new(r + 1..a.len()) };
        for i in targets {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for (x, y) in a[i][c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Rref { rows: a, pivots }
}

pub fn rref(m: &Matrix) -> Rref {
    eliminate(m, width(m), true)
}

pub fn rank(m: &Matrix) -> usize {
    eliminate(m, width(m), false).pivots.len()
}

/// Basis of `{x : m x = 0}` for a matrix with `ncols` columns.
pub fn kernel(m: &Matrix, ncols: usize) -> Vec<Vec<Scalar>> {
    let e = eliminate(m, ncols, true);
    let mut is_pivot = vec![false; ncols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

/// Solves `a x = b`. Returns `None` when inconsistent.
pub fn solve(a: &Matrix, b: &[Scalar], ncols: usize) -> Result<Option<Solution>> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!("{} rows against a right-hand side of length {}", a.len(), b.len())));
    }
    if a.iter().any(|r| r.len() != ncols) {
        return Err(Error::Dimension("ragged matrix".into()));
    }
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let e = eliminate(&aug, ncols + 1, true);
    if e.pivots.last() == Some(&ncols) {
        return Ok(None);
    }
    let mut particular = vec![Scalar::zero(); ncols];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        particular[p] = row[ncols].clone();
    }
    Ok(Some(Solution { particular, kernel: kernel(a, ncols) }))
}

/// Solves `sum x_j cols[j] = target`.
pub fn solve_columns(cols: &[Vec<Scalar>], target: &[Scalar]) -> Result<Option<Solution>> {
    let a = columns_to_matrix(cols, target.len())?;
    solve(&a, target, cols.len())
}

pub fn columns_to_matrix(cols: &[Vec<Scalar>], nrows: usize) -> Result<Matrix> {
    if cols.iter().any(|c| c.len() != nrows) {
        return Err(Error::Dimension("columns of unequal length".into()));
    }
    Ok((0..nrows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect())
}

pub fn transpose(m: &Matrix) -> Matrix {
    let w = width(m);
    (0..w).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    m.iter().map(|r| r.iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()).collect()
}

/// `sum c_j v_j`.
pub fn combine(coeffs: &[Scalar], vectors: &[Vec<Scalar>]) -> Vec<Scalar> {
    let n = vectors.first().map(|v| v.len()).unwrap_or(0);
    let mut out = vec![Scalar::zero(); n];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

pub fn determinant(m: &Matrix) -> Scalar {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Scalar::one();
    for c in 0..n {
        let p = match (c..n).find(|&i| !a[i][c].is_zero()) {
            Some(p) => p,
            None => return Scalar::zero(),
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = Scalar::one() / &a[c][c];
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// A linear subspace of `K^len`, stored by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    len: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl LinearSubspace {
    pub fn from_vectors(len: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != len) {
            return Err(Error::Dimension(format!("vectors must have length {len}")));
        }
        let e = eliminate(&vectors.to_vec(), len, true);
        Ok(LinearSubspace { len, basis: e.rows, pivots: e.pivots })
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Vector-space dimension.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Projective dimension (`rank - 1`, and -1 for the zero space).
    pub fn dim(&self) -> isize {
        self.rank() as isize - 1
    }

    /// Coordinates with respect to the echelon basis, if `v` lies in the space.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.len {
            return None;
        }
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let w = combine(&c, &self.basis);
        if w == v {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_space(&self, other: &LinearSubspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &LinearSubspace) -> Result<Self> {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Self::from_vectors(self.len, &v)
    }
}

/// `deg_e - 1 - dim(span)`: the failure of a degree-`deg_e` scheme to impose
/// independent conditions, read off its span.
pub fn h1_defect(span: &LinearSubspace, deg_e: usize) -> isize {
    deg_e as isize - 1 - span.dim()
}
