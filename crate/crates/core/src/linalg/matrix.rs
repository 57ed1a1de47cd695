use super::subspace::FpSubspace;
use super::vector::{inv_mod, neg_mod, FpVector};
use super::LinalgError;

/// Dense matrix over F_p, stored as rows. Acts on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpMatrix {
    p: u32,
    cols: usize,
    generic: bool,
    rows: Vec<FpVector>,
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl FpMatrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, cols, generic: false, rows: (0..rows).map(|_| FpVector::zero(p, cols)).collect() }
    }

    /// Zero matrix whose rows use byte storage even for p = 2.
    pub fn zero_generic(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, cols, generic: true, rows: (0..rows).map(|_| FpVector::zero_generic(p, cols)).collect() }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = Self::zero(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.rows[i] = FpVector::from_entries(p, r);
        }
        m
    }

    /// Builds a matrix from row vectors of length `cols`.
    pub fn from_vectors(p: u32, cols: usize, rows: Vec<FpVector>) -> Self {
        let generic = rows.first().map(|r| !r.is_packed() && p == 2).unwrap_or(false);
        for r in &rows {
            assert_eq!(r.len(), cols);
            assert_eq!(r.prime(), p);
        }
        FpMatrix { p, cols, generic, rows }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(p: u32, rows: usize, columns: &[FpVector]) -> Self {
        let mut m = Self::zero(p, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, v) in c.iter_nonzero() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Same entries with the requested storage layout.
    pub fn with_layout(&self, generic: bool) -> Self {
        FpMatrix {
            p: self.p,
            cols: self.cols,
            generic: generic && self.p == 2,
            rows: self.rows.iter().map(|r| r.with_layout(generic)).collect(),
        }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows.len()
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn row(&self, i: usize) -> &FpVector {
        &self.rows[i]
    }
    pub fn row_vectors(&self) -> &[FpVector] {
        &self.rows
    }
    pub fn into_rows(self) -> Vec<FpVector> {
        self.rows
    }
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.rows[i].get(j)
    }
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.rows[i].set(j, v)
    }

    fn new_row(&self, len: usize) -> FpVector {
        if self.generic {
            FpVector::zero_generic(self.p, len)
        } else {
            FpVector::zero(self.p, len)
        }
    }

    pub fn column(&self, j: usize) -> FpVector {
        let mut v = self.new_row(self.rows());
        for (i, r) in self.rows.iter().enumerate() {
            v.set(i, r.get(j));
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix { p: self.p, cols: self.rows(), generic: self.generic, rows: Vec::new() };
        t.rows = (0..self.cols).map(|_| self.new_row(self.rows())).collect();
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r.iter_nonzero() {
                t.rows[j].set(i, v);
            }
        }
        t
    }

    /// self * other
    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix, LinalgError> {
        if self.cols != other.rows() {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: other.rows() });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = other.new_row(other.cols);
                for (k, c) in r.iter_nonzero() {
                    out.add_scaled(&other.rows[k], c);
                }
                out
            })
            .collect();
        Ok(FpMatrix { p: self.p, cols: other.cols, generic: other.generic, rows })
    }

    /// self * v for a column vector v.
    pub fn mul_vec(&self, v: &FpVector) -> Result<FpVector, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let mut out = self.new_row(self.rows());
        for (i, r) in self.rows.iter().enumerate() {
            let d = r.dot(v);
            if d != 0 {
                out.set(i, d);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix, LinalgError> {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &FpMatrix) -> Result<FpMatrix, LinalgError> {
        self.add_scaled(other, neg_mod(1, self.p))
    }

    fn add_scaled(&self, other: &FpMatrix, c: u32) -> Result<FpMatrix, LinalgError> {
        if self.rows() != other.rows() || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.add_scaled(b, c);
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = self.clone();
        out.rows.extend(other.rows.iter().cloned());
        out
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows(), other.rows());
        let cols = self.cols + other.cols;
        let mut out = FpMatrix { p: self.p, cols, generic: self.generic, rows: Vec::new() };
        out.rows = (0..self.rows()).map(|_| out.new_row(cols)).collect();
        for i in 0..self.rows() {
            for (j, v) in self.rows[i].iter_nonzero() {
                out.rows[i].set(j, v);
            }
            for (j, v) in other.rows[i].iter_nonzero() {
                out.rows[i].set(self.cols + j, v);
            }
        }
        out
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(pr) = (r..rows.len()).find(|&i| rows[i].get(col) != 0) else { continue };
            rows.swap(r, pr);
            let lead = rows[r].get(col);
            if lead != 1 {
                rows[r].scale(inv_mod(lead, p));
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r {
                    let c = row.get(col);
                    if c != 0 {
                        row.add_scaled(&pivot_row, neg_mod(c, p));
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        let rank = pivots.len();
        Rref { matrix: FpMatrix { p, cols: self.cols, generic: self.generic, rows }, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// {x : self * x = 0}
    pub fn kernel(&self) -> FpSubspace {
        let rr = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &rr.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = self.new_row(self.cols);
            v.set(free, 1);
            for (k, &pc) in rr.pivots.iter().enumerate() {
                let c = rr.matrix.rows[k].get(free);
                if c != 0 {
                    v.set(pc, neg_mod(c, p));
                }
            }
            basis.push(v);
        }
        FpSubspace::from_vectors(p, self.cols, basis)
    }

    /// Column space.
    pub fn image(&self) -> FpSubspace {
        let t = self.transpose();
        FpSubspace::from_vectors(self.p, self.rows(), t.rows)
    }

    /// {x : self * x ∈ target}, via the kernel of [self | -T] where T spans target.
    pub fn solve_preimage(&self, target: &FpSubspace) -> Result<FpSubspace, LinalgError> {
        if target.ambient_dim() != self.rows() {
            return Err(LinalgError::DimensionMismatch { expected: self.rows(), found: target.ambient_dim() });
        }
        let t = FpMatrix::from_columns(self.p, self.rows(), target.basis().row_vectors());
        let stacked = if self.generic { self.hstack(&t.with_layout(true)) } else { self.hstack(&t) };
        let k = stacked.kernel();
        let proj: Vec<FpVector> = k.basis().row_vectors().iter().map(|v| v.slice(0, self.cols)).collect();
        Ok(FpSubspace::from_vectors(self.p, self.cols, proj))
    }

    /// Some x with self * x = b, if one exists.
    pub fn solve(&self, b: &FpVector) -> Option<FpVector> {
        let mut ech = super::Echelon::tracked(self.p, self.rows(), self.cols);
        for j in 0..self.cols {
            ech.insert_tracked(self.column(j), FpVector::unit(self.p, self.cols, j));
        }
        ech.solve(b)
    }

    pub fn kronecker(&self, other: &FpMatrix) -> FpMatrix {
        let (r1, c1) = (self.rows(), self.cols);
        let (r2, c2) = (other.rows(), other.cols);
        let mut out = FpMatrix::zero(self.p, r1 * r2, c1 * c2);
        if self.generic {
            out = out.with_layout(true);
        }
        for i in 0..r1 {
            for (j, a) in self.rows[i].iter_nonzero() {
                for k in 0..r2 {
                    for (l, b) in other.rows[k].iter_nonzero() {
                        out.set(i * r2 + k, j * c2 + l, (a * b) % self.p);
                    }
                }
            }
        }
        out
    }

    /// Restricts to the given rows.
    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        FpMatrix { p: self.p, cols: self.cols, generic: self.generic, rows: idx.iter().map(|&i| self.rows[i].clone()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        let id = FpMatrix::identity(2, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        let m = FpMatrix::from_rows(2, 2, &[vec![1, 1], vec![1, 1]]);
        let r = m.rref();
        assert_eq!(r.matrix, FpMatrix::from_rows(2, 2, &[vec![1, 1], vec![0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(FpMatrix::zero(2, 2, 3).kernel().dim(), 3);
        assert_eq!(FpMatrix::identity(3, 4).kernel().dim(), 0);
        let k = FpMatrix::from_rows(2, 2, &[vec![1, 1]]).kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis().row(0).entries(), vec![1, 1]);
    }

    #[test]
    fn image_examples() {
        assert_eq!(FpMatrix::identity(5, 3).image().dim(), 3);
        assert_eq!(FpMatrix::zero(5, 3, 2).image().dim(), 0);
    }

    #[test]
    fn preimage_examples() {
        let m = FpMatrix::from_rows(3, 3, &[vec![1, 2, 0], vec![0, 1, 1]]);
        assert_eq!(m.solve_preimage(&FpSubspace::full(3, 2)).unwrap().dim(), 3);
        assert_eq!(m.solve_preimage(&FpSubspace::zero(3, 2)).unwrap(), m.kernel());
        let t = FpSubspace::from_vectors(3, 3, vec![FpVector::from_entries(3, &[1, 1, 0])]);
        assert_eq!(FpMatrix::identity(3, 3).solve_preimage(&t).unwrap(), t);
        assert!(m.solve_preimage(&FpSubspace::full(3, 5)).is_err());
    }

    #[test]
    fn kronecker_examples() {
        let k = FpMatrix::identity(2, 2).kronecker(&FpMatrix::identity(2, 3));
        assert_eq!(k, FpMatrix::identity(2, 6));
        let a = FpMatrix::from_rows(3, 2, &[vec![1, 2], vec![0, 1]]);
        assert!(a.kronecker(&FpMatrix::zero(3, 2, 2)).is_zero());
    }

    #[test]
    fn solve_finds_preimage() {
        let m = FpMatrix::from_rows(5, 3, &[vec![1, 2, 3], vec![0, 4, 1]]);
        let b = FpVector::from_entries(5, &[3, 2]);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), b);
    }
}
