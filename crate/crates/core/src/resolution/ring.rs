use std::sync::Arc;

use super::{lift_chain_map, ChainMap, ElementaryComplex, FreeComplex, MinimalResolution, ResolutionError, TensorComplex};
use crate::group::{ElemAbelian, Group, GroupHom};
use crate::linalg::{Echelon, FpMatrix, FpSubspace, FpVector};

/// Graded linear maps H^k(target) → H^k(source) for k ≤ top, as matrices
/// acting on coordinate column vectors.
#[derive(Clone, Debug)]
pub struct InducedMap {
    matrices: Vec<FpMatrix>,
}

impl InducedMap {
    pub fn from_matrices(matrices: Vec<FpMatrix>) -> Self {
        InducedMap { matrices }
    }

    pub fn top(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn matrix(&self, k: usize) -> &FpMatrix {
        &self.matrices[k]
    }

    pub fn apply(&self, k: usize, u: &FpVector) -> FpVector {
        self.matrices[k].mul_vec(u).expect("dimension checked by construction")
    }

    pub fn image(&self, k: usize) -> FpSubspace {
        self.matrices[k].image()
    }

    pub fn kernel(&self, k: usize) -> FpSubspace {
        self.matrices[k].kernel()
    }

    /// self ∘ other, degreewise (other applied first).
    pub fn compose(&self, other: &InducedMap) -> InducedMap {
        let top = self.top().min(other.top());
        InducedMap {
            matrices: (0..=top).map(|k| self.matrices[k].mul(&other.matrices[k]).expect("composable maps")).collect(),
        }
    }
}

fn unit_initial(p: u32, n: usize) -> Vec<FpVector> {
    vec![FpVector::unit(p, n, 0)]
}

/// φ*: H^*(target) → H^*(source) for a homomorphism given on elements, from
/// a chain map covering the identity of F_p.
pub fn induced_map(
    source: &dyn FreeComplex,
    elem_map: &[usize],
    target: &MinimalResolution,
    top: usize,
) -> Result<InducedMap, ResolutionError> {
    let n = target.group().order();
    let chain = lift_chain_map(source, elem_map, target, 0, unit_initial(target.prime(), n), top)?;
    Ok(InducedMap { matrices: (0..=top).map(|k| chain.cohomology_matrix(k)).collect() })
}

/// Restriction H^*(G) → H^*(H) along an embedding of H's elements into G.
pub fn restriction_map(
    res_g: &MinimalResolution,
    res_h: &dyn FreeComplex,
    embedding: &[usize],
    top: usize,
) -> Result<InducedMap, ResolutionError> {
    induced_map(res_h, embedding, res_g, top)
}

/// Inflation q*: H^*(Q) → H^*(G) along a validated q: G → Q.
pub fn inflation_map(
    res_g: &MinimalResolution,
    q: &GroupHom,
    res_q: &MinimalResolution,
    top: usize,
) -> Result<InducedMap, ResolutionError> {
    induced_map(res_g, q.map(), res_q, top)
}

/// The tensor product of resolutions of G and H, a minimal resolution of G × H.
pub fn kunneth(a: Arc<dyn FreeComplex>, b: Arc<dyn FreeComplex>) -> TensorComplex {
    TensorComplex::new(a, b)
}

/// Multiplication by v ∈ H^n(G): a chain map R_{n+k} → R_k whose k-th
/// cohomology matrix sends u ∈ H^k to u·v ∈ H^{n+k}.
pub fn multiplication_chain(
    res: &MinimalResolution,
    v: &FpVector,
    n: usize,
    top: usize,
) -> Result<ChainMap, ResolutionError> {
    let g = res.group();
    let ord = g.order();
    let p = res.prime();
    let initial = (0..res.betti(n)?)
        .map(|j| {
            let mut e = FpVector::zero(p, ord);
            e.set(0, v.get(j));
            e
        })
        .collect();
    let identity: Vec<usize> = (0..ord).collect();
    lift_chain_map(res, &identity, res, n, initial, top)
}

/// The coaction m*: H^*(G) → H^*(C) ⊗ H^*(G) for a central elementary
/// abelian C, induced by multiplication C × G → G. H^*(C) is modelled by
/// [`ElementaryComplex`] on the chosen basis of C.
pub struct ComoduleMap {
    tensor: TensorComplex,
    model: Arc<ElementaryComplex>,
    map: InducedMap,
}

pub fn comodule_map(
    res_g: &Arc<MinimalResolution>,
    c: &ElemAbelian,
    top: usize,
) -> Result<ComoduleMap, ResolutionError> {
    let g: &Group = res_g.group();
    if !g.is_central(c.subgroup()) {
        return Err(ResolutionError::Mismatch("subgroup is not central".into()));
    }
    let (_, _, emb) = c.pc_group(g);
    let model = Arc::new(ElementaryComplex::new(g.prime(), c.rank(), top));
    let tensor = TensorComplex::new(model.clone(), res_g.clone());
    let n = g.order();
    let elem_map: Vec<usize> = (0..emb.len() * n).map(|x| g.mul(emb[x / n], x % n)).collect();
    let map = induced_map(&tensor, &elem_map, res_g, top)?;
    Ok(ComoduleMap { tensor, model, map })
}

impl ComoduleMap {
    pub fn tensor(&self) -> &TensorComplex {
        &self.tensor
    }

    pub fn model(&self) -> &ElementaryComplex {
        &self.model
    }

    /// Matrix of m* in degree k; rows are the generators of (C ⊗ G)_k.
    pub fn matrix(&self, k: usize) -> &FpMatrix {
        self.map.matrix(k)
    }

    pub fn apply(&self, k: usize, u: &FpVector) -> FpVector {
        self.map.apply(k, u)
    }

    /// m*(u) split into nonzero terms (α, coordinate vector in H^{k−|α|}(G)).
    pub fn terms(&self, k: usize, u: &FpVector) -> Vec<(Vec<usize>, Vec<u32>)> {
        let img = self.apply(k, u);
        let mut out: Vec<(Vec<usize>, Vec<u32>)> = Vec::new();
        for i in 0..=k {
            let right = self.tensor.right().rank(k - i);
            for (a, alpha) in self.model.monomials(i).into_iter().enumerate() {
                let coords: Vec<u32> = (0..right).map(|j| img.get(self.tensor.index(k, i, a, j))).collect();
                if coords.iter().any(|&x| x != 0) {
                    out.push((alpha, coords));
                }
            }
        }
        out
    }

    /// Rows of m* in degree k with positive C-degree.
    fn positive_part(&self, k: usize) -> FpMatrix {
        let m = self.matrix(k);
        let start = if k == 0 { m.rows() } else { self.tensor.index(k, 1, 0, 0) };
        let idx: Vec<usize> = (start..m.rows()).collect();
        m.select_rows(&idx)
    }

    /// P_C H^k = ker(m* − π*), where π*(u) = 1 ⊗ u.
    pub fn primitives(&self, k: usize) -> FpSubspace {
        let pos = self.positive_part(k);
        if pos.rows() == 0 {
            return FpSubspace::full(pos.prime(), pos.cols());
        }
        pos.kernel()
    }

    /// Checks that the C-degree-0 component of m* is the identity (m restricted to G).
    pub fn counit_holds(&self, k: usize) -> bool {
        let m = self.matrix(k);
        let b = m.cols();
        (0..b).all(|r| (0..b).all(|c| m.get(r, c) == u32::from(r == c)))
    }
}

/// Ring structure of H^*(G) through degree N: Betti numbers, ring
/// generators and multiplication maps.
pub struct CohomologyFragment {
    res: Arc<MinimalResolution>,
    generators: Vec<(usize, FpVector)>,
    lifts: Vec<ChainMap>,
    decomposables: Vec<FpSubspace>,
}

impl CohomologyFragment {
    pub fn new(res: Arc<MinimalResolution>) -> Result<Self, ResolutionError> {
        let top = res.max_degree();
        let p = res.prime();
        let mut generators: Vec<(usize, FpVector)> = Vec::new();
        let mut lifts: Vec<ChainMap> = Vec::new();
        let mut decomposables = vec![FpSubspace::zero(p, 1)];
        for k in 1..=top {
            let b = res.betti(k)?;
            let mut dec = Vec::new();
            for ((d, _), lift) in generators.iter().zip(&lifts) {
                if *d < k {
                    dec.extend(lift.cohomology_matrix(k - d).transpose().into_rows());
                }
            }
            let dec = FpSubspace::from_vectors(p, b, dec);
            let mut ech = Echelon::new(p, b);
            for v in dec.basis().row_vectors() {
                ech.insert(v.clone());
            }
            for i in 0..b {
                let u = FpVector::unit(p, b, i);
                if ech.insert(u.clone()) {
                    lifts.push(multiplication_chain(&res, &u, k, top - k)?);
                    generators.push((k, u));
                }
            }
            decomposables.push(dec);
        }
        Ok(CohomologyFragment { res, generators, lifts, decomposables })
    }

    pub fn resolution(&self) -> &Arc<MinimalResolution> {
        &self.res
    }

    pub fn max_degree(&self) -> usize {
        self.res.max_degree()
    }

    pub fn betti(&self) -> &[usize] {
        self.res.hilbert_fragment()
    }

    /// Ring generators as (degree, coordinates).
    pub fn generators(&self) -> &[(usize, FpVector)] {
        &self.generators
    }

    pub fn generator_degrees(&self) -> Vec<usize> {
        self.generators.iter().map(|(d, _)| *d).collect()
    }

    /// Multiplication by the i-th ring generator, as a lifted chain map.
    pub fn generator_multiplication(&self, i: usize) -> &ChainMap {
        &self.lifts[i]
    }

    pub fn decomposables(&self, k: usize) -> &FpSubspace {
        &self.decomposables[k]
    }

    /// Matrix of u ↦ u·v from H^m to H^{m+n}, for v ∈ H^n.
    pub fn multiplication_matrix(&self, v: &FpVector, n: usize, m: usize) -> Result<FpMatrix, ResolutionError> {
        if m + n > self.max_degree() {
            return Err(ResolutionError::DegreeOutOfRange { degree: m + n, bound: self.max_degree() });
        }
        Ok(multiplication_chain(&self.res, v, n, m)?.cohomology_matrix(m))
    }

    /// Full multiplication maps by v: entry k is H^k → H^{n+k}, k ≤ N − n.
    pub fn multiplication_maps(&self, v: &FpVector, n: usize) -> Result<Vec<FpMatrix>, ResolutionError> {
        let top = self.max_degree() - n;
        let chain = multiplication_chain(&self.res, v, n, top)?;
        Ok((0..=top).map(|k| chain.cohomology_matrix(k)).collect())
    }

    pub fn product(&self, u: &FpVector, m: usize, v: &FpVector, n: usize) -> Result<FpVector, ResolutionError> {
        let mat = self.multiplication_matrix(v, n, m)?;
        Ok(mat.mul_vec(u).expect("coordinates of the right length"))
    }

    /// The table H^m ⊗ H^n → H^{m+n}: entry [i][j] is e_i · e_j.
    pub fn product_table(&self, m: usize, n: usize) -> Result<Vec<Vec<FpVector>>, ResolutionError> {
        let p = self.res.prime();
        let bm = self.res.betti(m)?;
        let bn = self.res.betti(n)?;
        let cols: Vec<FpMatrix> =
            (0..bn).map(|j| self.multiplication_matrix(&FpVector::unit(p, bn, j), n, m)).collect::<Result<_, _>>()?;
        Ok((0..bm).map(|i| cols.iter().map(|mat| mat.column(i)).collect()).collect())
    }
}
