//! Dense matrices over K and an exact sparse solver.

use std::collections::BTreeMap;
use std::fmt;

use super::{FieldElem, ScalarError};

/// Dense row-major matrix over K.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElem::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = FieldElem::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElem>>) -> Result<Self, ScalarError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ScalarError::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| FieldElem::from_int(x)).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    pub fn diagonal(d: &[FieldElem]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, ScalarError> {
        if self.cols != other.rows {
            return Err(ScalarError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>, ScalarError> {
        if v.len() != self.cols {
            return Err(ScalarError::Dimension(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = FieldElem::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn scale(&self, s: &FieldElem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElem::is_zero)
    }

    fn to_sparse(&self) -> SparseMatrix {
        let mut s = SparseMatrix::new(self.cols);
        for i in 0..self.rows {
            s.push_row(
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect(),
            );
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.to_sparse().rank()
    }

    /// Basis of the right kernel {x : Ax = 0}, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<FieldElem>> {
        match solve_linear(self, &vec![FieldElem::zero(); self.rows]) {
            Solution::Unique(_) => Vec::new(),
            Solution::Affine { kernel, .. } => kernel,
            Solution::Empty => unreachable!("homogeneous systems are consistent"),
        }
    }

    pub fn det(&self) -> Result<FieldElem, ScalarError> {
        if self.rows != self.cols {
            return Err(ScalarError::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = FieldElem::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Ok(FieldElem::zero());
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det *= &piv;
            let inv = piv.inv()?;
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] * &inv;
                for j in c..n {
                    let t = &f * &a[(c, j)];
                    a[(r, j)] -= &t;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix, ScalarError> {
        if self.rows != self.cols {
            return Err(ScalarError::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[(r, c)].is_zero())
                .ok_or(ScalarError::Singular)?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let s = a[(c, c)].inv()?;
            for j in 0..n {
                a[(c, j)] *= &s;
                inv[(c, j)] *= &s;
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for j in 0..n {
                    let t = &f * &a[(c, j)];
                    a[(r, j)] -= &t;
                    let t = &f * &inv[(c, j)];
                    inv[(r, j)] -= &t;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = FieldElem;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElem {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElem {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Solution set of a linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<FieldElem>),
    /// `particular` has every free variable set to zero; `kernel[k]` has the
    /// k-th free variable set to one and the other free variables zero.
    Affine {
        particular: Vec<FieldElem>,
        kernel: Vec<Vec<FieldElem>>,
    },
    Empty,
}

impl Solution {
    pub fn kernel_dim(&self) -> Option<usize> {
        match self {
            Solution::Unique(_) => Some(0),
            Solution::Affine { kernel, .. } => Some(kernel.len()),
            Solution::Empty => None,
        }
    }

    pub fn particular(&self) -> Option<&[FieldElem]> {
        match self {
            Solution::Unique(x) | Solution::Affine { particular: x, .. } => Some(x),
            Solution::Empty => None,
        }
    }

    /// Checks membership of `x` in the solution set of `a·x = b`.
    pub fn contains(a: &Matrix, b: &[FieldElem], x: &[FieldElem]) -> bool {
        a.mul_vec(x).map(|ax| ax == b).unwrap_or(false)
    }
}

/// Sparse row: (column, value) pairs with strictly increasing columns and
/// nonzero values.
pub type SparseRow = Vec<(usize, FieldElem)>;

/// Row-sparse matrix, the input format of [`solve_sparse`].
#[derive(Debug, Clone, Default)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Appends a row; entries may come in any order and may repeat columns.
    pub fn push_row(&mut self, entries: SparseRow) {
        self.rows.push(normalize_row(entries));
    }

    pub fn rank(&self) -> usize {
        let zero = vec![FieldElem::zero(); self.rows.len()];
        Echelon::build(self, &zero)
            .map(|e| e.pivots.len())
            .unwrap_or(0)
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows.len(), self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                m[(i, *j)] = x.clone();
            }
        }
        m
    }
}

fn normalize_row(entries: SparseRow) -> SparseRow {
    let mut acc: BTreeMap<usize, FieldElem> = BTreeMap::new();
    for (j, x) in entries {
        *acc.entry(j).or_default() += &x;
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

// row - f * pivot, both sorted by column.
fn axpy(row: &[(usize, FieldElem)], f: &FieldElem, pivot: &[(usize, FieldElem)]) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(f * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(f * &pivot[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

struct Echelon {
    cols: usize,
    // pivot column -> normalized row (leading entry 1, rhs stored at column `cols`)
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    // Forward elimination. Rows are bucketed by leading column; within a bucket
    // the shortest row becomes the pivot, which keeps fill-in low. The reduced
    // echelon form, and hence every returned vector, does not depend on this choice.
    fn build(a: &SparseMatrix, b: &[FieldElem]) -> Option<Echelon> {
        let cols = a.cols;
        let mut buckets: BTreeMap<usize, Vec<SparseRow>> = BTreeMap::new();
        for (row, rhs) in a.rows.iter().zip(b) {
            let mut r = row.clone();
            if !rhs.is_zero() {
                r.push((cols, rhs.clone()));
            }
            if let Some(&(lead, _)) = r.first() {
                if lead == cols {
                    return None;
                }
                buckets.entry(lead).or_default().push(r);
            }
        }
        let mut pivots = BTreeMap::new();
        while let Some((col, mut rows)) = buckets.pop_first() {
            let best = rows
                .iter()
                .enumerate()
                .min_by_key(|(k, r)| (r.len(), *k))
                .map(|(k, _)| k)
                .expect("non-empty bucket");
            let mut piv = rows.swap_remove(best);
            let inv = piv[0].1.inv().expect("nonzero leading entry");
            if !inv.is_one() {
                for e in piv.iter_mut() {
                    e.1 *= &inv;
                }
            }
            for r in rows {
                let f = r[0].1.clone();
                let reduced = axpy(&r[1..], &f, &piv[1..]);
                if let Some(&(lead, _)) = reduced.first() {
                    if lead == cols {
                        return None;
                    }
                    buckets.entry(lead).or_default().push(reduced);
                }
            }
            pivots.insert(col, piv);
        }
        Some(Echelon { cols, pivots })
    }

    // Back-substitution with the given values on free columns.
    fn back_substitute(&self, free: &BTreeMap<usize, FieldElem>, with_rhs: bool) -> Vec<FieldElem> {
        let mut x = vec![FieldElem::zero(); self.cols];
        for (c, v) in free {
            x[*c] = v.clone();
        }
        for (&c, row) in self.pivots.iter().rev() {
            let mut v = FieldElem::zero();
            for (j, a) in &row[1..] {
                if *j == self.cols {
                    if with_rhs {
                        v += a;
                    }
                } else if !x[*j].is_zero() {
                    v -= &(a * &x[*j]);
                }
            }
            x[c] = v;
        }
        x
    }

    fn solution(&self) -> Solution {
        let particular = self.back_substitute(&BTreeMap::new(), true);
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| !self.pivots.contains_key(c))
            .collect();
        if free.is_empty() {
            return Solution::Unique(particular);
        }
        let kernel = free
            .iter()
            .map(|&f| {
                let mut m = BTreeMap::new();
                m.insert(f, FieldElem::one());
                self.back_substitute(&m, false)
            })
            .collect();
        Solution::Affine { particular, kernel }
    }
}

/// Exact solution set of `a·x = b` over K.
pub fn solve_sparse(a: &SparseMatrix, b: &[FieldElem]) -> Result<Solution, ScalarError> {
    if b.len() != a.rows() {
        return Err(ScalarError::Dimension(format!(
            "{} rows but right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    Ok(match Echelon::build(a, b) {
        Some(e) => e.solution(),
        None => Solution::Empty,
    })
}

/// Exact solution set of `a·x = b` over K for a dense system.
pub fn solve_linear(a: &Matrix, b: &[FieldElem]) -> Solution {
    assert_eq!(a.rows(), b.len(), "right-hand side length must equal row count");
    solve_sparse(&a.to_sparse(), b).expect("dimensions checked")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElem {
        FieldElem::from_int(n)
    }

    #[test]
    fn identity_system() {
        let b = vec![fe(1), FieldElem::omega()];
        assert_eq!(
            solve_linear(&Matrix::identity(2), &b),
            Solution::Unique(b.clone())
        );
    }

    #[test]
    fn zero_system_is_affine() {
        let s = solve_linear(&Matrix::zeros(1, 1), &[fe(0)]);
        assert_eq!(s.kernel_dim(), Some(1));
        assert_eq!(solve_linear(&Matrix::zeros(1, 1), &[fe(1)]), Solution::Empty);
    }

    #[test]
    fn dependent_rows_over_sqrt2() {
        let r2 = FieldElem::sqrt2();
        let a = Matrix::from_rows(vec![vec![fe(1), r2.clone()], vec![r2.clone(), fe(2)]]).unwrap();
        let s = solve_linear(&a, &[fe(0), fe(0)]);
        match s {
            Solution::Affine { kernel, .. } => {
                assert_eq!(kernel, vec![vec![-r2, fe(1)]]);
            }
            other => panic!("expected affine, got {other:?}"),
        }
        assert_eq!(a.rank(), 1);
        assert_eq!(a.det().unwrap(), fe(0));
    }

    #[test]
    fn inverse_and_det() {
        let a = Matrix::from_i64(&[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(a.det().unwrap(), fe(1));
        assert_eq!(Matrix::zeros(2, 2).inverse(), Err(ScalarError::Singular));
    }

    #[test]
    fn kernel_vectors_are_in_kernel() {
        let a = Matrix::from_i64(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]]);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(FieldElem::is_zero));
        }
    }
}
