use std::sync::Arc;

use super::{block_sums, translate, FreeComplex, ResolutionError};
use crate::group::Group;
use crate::linalg::{Echelon, FpSubspace, FpVector};

/// Default cap on the number of columns of any differential.
pub const DEFAULT_BUDGET: usize = 20_000;

/// Minimal free resolution F_N → … → F_0 → F_p of the trivial module.
#[derive(Clone, Debug)]
pub struct MinimalResolution {
    group: Arc<Group>,
    max_degree: usize,
    betti: Vec<usize>,
    /// `differentials[k][j]` = d(e_j) ∈ F_{k-1} for k ≥ 1; index 0 is empty.
    differentials: Vec<Vec<FpVector>>,
    /// Tracked echelon of the images of all F_p-basis vectors of F_k under d_k.
    solvers: Vec<Option<Echelon>>,
}

/// Images under d_k of the basis vectors g·e_j of F_k, in the order j*|G| + g.
fn basis_images(group: &Group, k: usize, gens: &[FpVector]) -> Vec<FpVector> {
    let n = group.order();
    let p = group.prime();
    if k == 0 {
        return (0..n).map(|_| FpVector::from_entries(p, &[1])).collect();
    }
    gens.iter().flat_map(|d| (0..n).map(move |g| translate(group, d, g))).collect()
}

fn tracked_echelon(p: u32, width: usize, images: &[FpVector]) -> (Echelon, Vec<FpVector>) {
    let track = images.len();
    let mut ech = Echelon::tracked(p, width, track);
    let mut relations = Vec::new();
    for (i, img) in images.iter().enumerate() {
        if let Some(r) = ech.insert_tracked(img.clone(), FpVector::unit(p, track, i)) {
            relations.push(r);
        }
    }
    (ech, relations)
}

impl MinimalResolution {
    /// Resolves F_p through degree `max_degree`, refusing any differential
    /// wider than `budget` columns.
    pub fn build(group: Arc<Group>, max_degree: usize, budget: usize) -> Result<Self, ResolutionError> {
        let p = group.prime();
        let n = group.order();
        let mut betti = vec![1usize];
        let mut differentials: Vec<Vec<FpVector>> = vec![Vec::new()];
        let mut solvers: Vec<Option<Echelon>> = vec![None];
        for k in 0..=max_degree {
            let cols = betti[k] * n;
            if cols > budget {
                return Err(ResolutionError::BudgetExceeded { degree: k, columns: cols, budget });
            }
            let width = if k == 0 { 1 } else { betti[k - 1] * n };
            let images = basis_images(&group, k, &differentials[k]);
            let (ech, relations) = tracked_echelon(p, width, &images);
            if k > 0 {
                solvers.push(Some(ech));
            }
            if k == max_degree {
                break;
            }
            let kernel = FpSubspace::from_vectors(p, cols, relations);
            let mut rad = Echelon::new(p, cols);
            for v in kernel.basis().row_vectors() {
                for &s in group.generators() {
                    let mut w = translate(&group, v, s);
                    w.add_scaled(v, p - 1);
                    rad.insert(w);
                }
            }
            let rad_dim = rad.rank();
            let mut gens = Vec::new();
            for v in kernel.basis().row_vectors() {
                if rad.insert(v.clone()) {
                    gens.push(v.clone());
                }
            }
            if gens.len() + rad_dim != kernel.dim() {
                return Err(ResolutionError::Invariant(format!("degree {}: generator count mismatch", k + 1)));
            }
            betti.push(gens.len());
            differentials.push(gens);
        }
        let res = MinimalResolution { group, max_degree, betti, differentials, solvers };
        res.check()?;
        Ok(res)
    }

    /// Reassembles a resolution from stored differentials, rebuilding the
    /// solvers and rechecking every invariant.
    pub fn from_differentials(
        group: Arc<Group>,
        differentials: Vec<Vec<FpVector>>,
    ) -> Result<Self, ResolutionError> {
        let p = group.prime();
        let n = group.order();
        let max_degree = differentials.len().saturating_sub(1);
        let mut betti = vec![1usize];
        for (k, d) in differentials.iter().enumerate().skip(1) {
            for v in d {
                if v.len() != betti[k - 1] * n || v.prime() != p {
                    return Err(ResolutionError::Invariant(format!("degree {k}: malformed differential")));
                }
            }
            betti.push(d.len());
        }
        let mut solvers = vec![None];
        for k in 1..=max_degree {
            let images = basis_images(&group, k, &differentials[k]);
            let (ech, relations) = tracked_echelon(p, betti[k - 1] * n, &images);
            if k < max_degree {
                let kernel_dim = betti[k] * n - ech.rank();
                let next = FpSubspace::from_vectors(p, betti[k] * n, relations);
                if next.dim() != kernel_dim {
                    return Err(ResolutionError::Invariant(format!("degree {k}: kernel mismatch")));
                }
            }
            solvers.push(Some(ech));
        }
        let res = MinimalResolution { group, max_degree, betti, differentials, solvers };
        res.check()?;
        res.check_exact()?;
        Ok(res)
    }

    /// d∘d = 0 and minimality (every differential lands in the radical).
    pub fn check(&self) -> Result<(), ResolutionError> {
        let n = self.group.order();
        for k in 1..=self.max_degree {
            for (j, v) in self.differentials[k].iter().enumerate() {
                let sums = if k == 1 { vec![v.entry_sum()] } else { block_sums(v, n, self.betti[k - 1]) };
                if sums.iter().any(|&s| s != 0) {
                    return Err(ResolutionError::Invariant(format!("d_{k}(e_{j}) is not in the radical")));
                }
                if k >= 2 && !self.apply_differential(k - 1, v).is_zero() {
                    return Err(ResolutionError::Invariant(format!("d_{}∘d_{k}(e_{j}) ≠ 0", k - 1)));
                }
            }
        }
        Ok(())
    }

    /// Exactness for a stored resolution: image(d_{k+1}) spans ker(d_k) over F_p G.
    pub fn check_exact(&self) -> Result<(), ResolutionError> {
        let n = self.group.order();
        let p = self.prime();
        for k in 0..self.max_degree {
            let cols = self.betti[k] * n;
            let rank_k = if k == 0 { 1 } else { self.solvers[k].as_ref().map_or(0, |e| e.rank()) };
            let mut img = Echelon::new(p, cols);
            for v in &self.differentials[k + 1] {
                for g in 0..n {
                    img.insert(translate(&self.group, v, g));
                }
            }
            if img.rank() != cols - rank_k {
                return Err(ResolutionError::Invariant(format!("not exact at degree {k}")));
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn prime(&self) -> u32 {
        self.group.prime()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn betti(&self, k: usize) -> Result<usize, ResolutionError> {
        self.betti.get(k).copied().ok_or(ResolutionError::DegreeOutOfRange { degree: k, bound: self.max_degree })
    }

    /// (b_0, …, b_N)
    pub fn hilbert_fragment(&self) -> &[usize] {
        &self.betti
    }

    pub fn differential(&self, k: usize) -> &[FpVector] {
        &self.differentials[k]
    }

    /// d_k(v) for an arbitrary v ∈ F_k, k ≥ 1.
    pub fn apply_differential(&self, k: usize, v: &FpVector) -> FpVector {
        let n = self.group.order();
        let width = if k == 1 { n } else { self.betti[k - 1] * n };
        let p = self.prime();
        let mut out = FpVector::zero(p, width);
        for (i, c) in v.iter_nonzero() {
            let img = translate(&self.group, &self.differentials[k][i / n], i % n);
            out.add_scaled(&img, c);
        }
        out
    }

    /// Some x ∈ F_k with d_k(x) = y, for k ≥ 1.
    pub fn solve(&self, k: usize, y: &FpVector) -> Option<FpVector> {
        self.solvers.get(k)?.as_ref()?.solve(y)
    }

    /// The differentials as dense matrices F_k → F_{k-1} in the regular expansion.
    pub fn differential_matrix(&self, k: usize) -> crate::linalg::FpMatrix {
        let images = basis_images(&self.group, k, &self.differentials[k]);
        let rows = if k == 0 { 1 } else { self.betti[k - 1] * self.group.order() };
        crate::linalg::FpMatrix::from_columns(self.prime(), rows, &images)
    }
}

impl FreeComplex for MinimalResolution {
    fn group(&self) -> &Group {
        &self.group
    }

    fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn rank(&self, deg: usize) -> usize {
        self.betti.get(deg).copied().unwrap_or(0)
    }

    fn boundary(&self, deg: usize, j: usize) -> Vec<(usize, usize, u32)> {
        let n = self.group.order();
        self.differentials[deg][j].iter_nonzero().map(|(i, c)| (i / n, i % n, c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PcPresentation;

    fn cyclic(p: u32, k: usize) -> Arc<Group> {
        let mut pres = PcPresentation::elementary_abelian(p, k).unwrap();
        for i in 0..k - 1 {
            let mut w = vec![0; k];
            w[i + 1] = 1;
            pres.set_power(i, w).unwrap();
        }
        Arc::new(pres.to_group().unwrap())
    }

    #[test]
    fn cyclic_groups_are_periodic() {
        for (p, k) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)] {
            let r = MinimalResolution::build(cyclic(p, k), 7, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.hilbert_fragment(), &[1; 8]);
        }
    }

    #[test]
    fn trivial_group() {
        let g = Arc::new(PcPresentation::elementary_abelian(2, 0).unwrap().to_group().unwrap());
        let r = MinimalResolution::build(g, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.hilbert_fragment(), &[1, 0, 0, 0]);
    }

    #[test]
    fn budget_is_enforced() {
        let g = Arc::new(PcPresentation::elementary_abelian(2, 3).unwrap().to_group().unwrap());
        let err = MinimalResolution::build(g, 6, 100).unwrap_err();
        assert!(matches!(err, ResolutionError::BudgetExceeded { .. }));
    }

    #[test]
    fn rebuild_from_differentials() {
        let g = Arc::new(PcPresentation::elementary_abelian(3, 2).unwrap().to_group().unwrap());
        let r = MinimalResolution::build(g.clone(), 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.hilbert_fragment(), &[1, 2, 3, 4, 5]);
        let again = MinimalResolution::from_differentials(g, r.differentials.clone()).unwrap();
        assert_eq!(again.hilbert_fragment(), r.hilbert_fragment());
    }
}
