use super::{block_sums, translate, FreeComplex, MinimalResolution, ResolutionError};
use crate::linalg::{FpMatrix, FpVector};

/// A chain map f: P_{s+k} → R_k (k = 0, 1, …) equivariant along a group
/// homomorphism φ from P's group to R's group, where R is a minimal
/// resolution. Stored as the images of the generators of P.
#[derive(Clone, Debug)]
pub struct ChainMap {
    p: u32,
    shift: usize,
    target_n: usize,
    target_ranks: Vec<usize>,
    /// images[k][j] = f(e_j) for e_j ∈ P_{shift+k}, a vector in R_k.
    images: Vec<Vec<FpVector>>,
}

/// Extends `initial` (images of the generators of P_shift in R_0) to a chain
/// map through target degree `top`, solving d(x) = f(d e_j) one generator at
/// a time. `elem_map` is φ on elements.
pub fn lift_chain_map(
    source: &dyn FreeComplex,
    elem_map: &[usize],
    target: &MinimalResolution,
    shift: usize,
    initial: Vec<FpVector>,
    top: usize,
) -> Result<ChainMap, ResolutionError> {
    lift_chain_map_with(source, elem_map, target, shift, initial, top, &|k, y| target.solve(k, y))
}

/// [`lift_chain_map`] with a caller-supplied solver for d_k(x) = y in the
/// target. Different solvers give homotopic maps.
pub fn lift_chain_map_with(
    source: &dyn FreeComplex,
    elem_map: &[usize],
    target: &MinimalResolution,
    shift: usize,
    initial: Vec<FpVector>,
    top: usize,
    solve: &dyn Fn(usize, &FpVector) -> Option<FpVector>,
) -> Result<ChainMap, ResolutionError> {
    let tg = target.group();
    let n = tg.order();
    if elem_map.len() != source.group().order() {
        return Err(ResolutionError::Mismatch("element map has the wrong length".into()));
    }
    if top > target.max_degree() || shift + top > source.max_degree() {
        return Err(ResolutionError::DegreeOutOfRange { degree: shift + top, bound: source.max_degree() });
    }
    if initial.len() != source.rank(shift) {
        return Err(ResolutionError::Mismatch("initial map has the wrong number of generators".into()));
    }
    let p = target.prime();
    let mut images = vec![initial];
    for k in 1..=top {
        let prev = &images[k - 1];
        let mut cache: Vec<Option<FpVector>> = vec![None; prev.len() * n];
        let width = target.betti(k - 1)? * n;
        let mut row = Vec::with_capacity(source.rank(shift + k));
        for j in 0..source.rank(shift + k) {
            let mut y = FpVector::zero(p, width);
            for (g, x, c) in source.boundary(shift + k, j) {
                let h = elem_map[x];
                let slot = &mut cache[g * n + h];
                let t = slot.get_or_insert_with(|| translate(tg, &prev[g], h));
                y.add_scaled(t, c);
            }
            let x = if y.is_zero() {
                FpVector::zero(p, target.betti(k)? * n)
            } else {
                solve(k, &y).ok_or(ResolutionError::LiftFailed(shift + k))?
            };
            row.push(x);
        }
        images.push(row);
    }
    let target_ranks = (0..=top).map(|k| target.betti(k)).collect::<Result<_, _>>()?;
    Ok(ChainMap { p, shift, target_n: n, target_ranks, images })
}

impl ChainMap {
    pub fn shift(&self) -> usize {
        self.shift
    }

    /// Highest target degree reached.
    pub fn top(&self) -> usize {
        self.images.len() - 1
    }

    pub fn images(&self, k: usize) -> &[FpVector] {
        &self.images[k]
    }

    /// Matrix of the induced map H^k(R) → H^{shift+k}(P) in dual bases:
    /// entry (j, i) is the coefficient sum of f(e_j) on generator i.
    pub fn cohomology_matrix(&self, k: usize) -> FpMatrix {
        let rank = self.target_ranks[k];
        let rows: Vec<Vec<u32>> = self.images[k].iter().map(|v| block_sums(v, self.target_n, rank)).collect();
        if rows.is_empty() {
            return FpMatrix::zero(self.p, 0, rank);
        }
        FpMatrix::from_rows(self.p, rank, &rows)
    }
}
