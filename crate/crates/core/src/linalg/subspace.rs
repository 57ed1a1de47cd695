use super::matrix::FpMatrix;
use super::vector::{neg_mod, FpVector};
use super::LinalgError;

/// A subspace of F_p^ambient, held as the nonzero rows of an RREF matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpSubspace {
    p: u32,
    ambient: usize,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl FpSubspace {
    pub fn from_vectors(p: u32, ambient: usize, vectors: Vec<FpVector>) -> Self {
        let m = if vectors.is_empty() { FpMatrix::zero(p, 0, ambient) } else { FpMatrix::from_vectors(p, ambient, vectors) };
        let rr = m.rref();
        let keep: Vec<usize> = (0..rr.rank).collect();
        FpSubspace { p, ambient, basis: rr.matrix.select_rows(&keep), pivots: rr.pivots }
    }

    pub fn zero(p: u32, ambient: usize) -> Self {
        FpSubspace { p, ambient, basis: FpMatrix::zero(p, 0, ambient), pivots: vec![] }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        FpSubspace { p, ambient, basis: FpMatrix::identity(p, ambient), pivots: (0..ambient).collect() }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Residue of `v` after clearing its pivot coordinates.
    pub fn reduce(&self, v: &FpVector) -> FpVector {
        let mut w = v.clone();
        for (k, &c) in self.pivots.iter().enumerate() {
            let a = w.get(c);
            if a != 0 {
                w.add_scaled(self.basis.row(k), neg_mod(a, self.p));
            }
        }
        w
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        self.reduce(v).is_zero()
    }

    fn check(&self, other: &FpSubspace) -> Result<(), LinalgError> {
        if self.p != other.p || self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &FpSubspace) -> Result<FpSubspace, LinalgError> {
        self.check(other)?;
        let mut rows = self.basis.row_vectors().to_vec();
        rows.extend(other.basis.row_vectors().iter().cloned());
        Ok(FpSubspace::from_vectors(self.p, self.ambient, rows))
    }

    /// Zassenhaus: rows [a|a] and [b|0]; rows with vanishing left half span a∩b.
    pub fn intersect(&self, other: &FpSubspace) -> Result<FpSubspace, LinalgError> {
        self.check(other)?;
        let n = self.ambient;
        let zero = FpMatrix::zero(self.p, other.dim(), n);
        let top = self.basis.hstack(&self.basis);
        let bottom = other.basis.hstack(&zero);
        let rr = top.vstack(&bottom).rref();
        let rows = (0..rr.rank)
            .filter(|&k| rr.pivots[k] >= n)
            .map(|k| rr.matrix.row(k).slice(n, n))
            .collect();
        Ok(FpSubspace::from_vectors(self.p, n, rows))
    }

    pub fn is_subspace_of(&self, other: &FpSubspace) -> bool {
        self.basis.row_vectors().iter().all(|v| other.contains(v))
    }

    /// Image of this subspace under `m` (m.cols == ambient).
    pub fn image_under(&self, m: &FpMatrix) -> FpSubspace {
        let imgs = self.basis.row_vectors().iter().map(|v| m.mul_vec(v).expect("dimension")).collect();
        FpSubspace::from_vectors(self.p, m.rows(), imgs)
    }

    /// Coordinates of `v` in the RREF basis; `None` if v is not in the subspace.
    pub fn coordinates(&self, v: &FpVector) -> Option<Vec<u32>> {
        let coords: Vec<u32> = self.pivots.iter().map(|&c| v.get(c)).collect();
        let mut w = v.clone();
        for (k, &a) in coords.iter().enumerate() {
            w.add_scaled(self.basis.row(k), neg_mod(a, self.p));
        }
        w.is_zero().then_some(coords)
    }
}
