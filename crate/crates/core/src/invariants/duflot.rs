use super::{polynomial_hilbert, DuflotData, GradedDims, GroupCohomology, InvariantError, Role};
use crate::linalg::{FpMatrix, FpSubspace, FpVector};
use crate::resolution::multiplication_chain;

impl GroupCohomology {
    /// Lifts of the generators of im(i*): the first solution of each
    /// restriction preimage in column order.
    pub fn duflot_lift(&self) -> Result<&DuflotData, InvariantError> {
        self.duflot.get_or_try_init(|| {
            let (t, _) = self.type_of()?;
            if !t.certified {
                return Err(InvariantError::Precondition(format!("type of {} is not certified at N = {}", self.label, self.max_degree)));
            }
            let r = self.restriction_to_center()?;
            let mut generators = Vec::new();
            for (deg, target) in self.image_generators()? {
                let xi = r
                    .matrix(deg)
                    .solve(&target)
                    .ok_or_else(|| InvariantError::Theorem(format!("no preimage in degree {deg}")))?;
                generators.push((deg, xi));
            }
            let algebra_dims = polynomial_hilbert(&t.entries, self.max_degree);
            let (image, _) = self.restriction_image()?;
            if image.dims != algebra_dims {
                return Err(InvariantError::Theorem(format!(
                    "im(i*) has dimensions {:?}, expected {:?} from the type",
                    image.dims, algebra_dims
                )));
            }
            Ok(DuflotData { generators, algebra_dims })
        })
    }

    /// For each Duflot generator ξ of degree a: matrices H^k → H^{k+a}, k ≤ N − a.
    pub(super) fn duflot_multiplications(&self) -> Result<&Vec<Vec<FpMatrix>>, InvariantError> {
        self.duflot_maps.get_or_try_init(|| {
            let d = self.duflot_lift()?;
            d.generators
                .iter()
                .map(|(a, xi)| {
                    if *a > self.max_degree {
                        return Ok(Vec::new());
                    }
                    let top = self.max_degree - a;
                    let chain = multiplication_chain(&self.res, xi, *a, top)?;
                    Ok((0..=top).map(|k| chain.cohomology_matrix(k)).collect())
                })
                .collect()
        })
    }

    /// The whole of H^k(G) for each k ≤ N.
    pub fn full_cohomology(&self) -> Vec<FpSubspace> {
        self.betti().iter().map(|&b| FpSubspace::full(self.prime(), b)).collect()
    }

    /// dim M^k/(A⁺M)^k for an A-submodule M given degreewise, with the
    /// freeness identity dim M = (dims of A) ⋆ (dims of Q_A M) checked through N.
    pub fn qa_dims(&self, m: &[FpSubspace], role: Role) -> Result<GradedDims, InvariantError> {
        let d = self.duflot_lift()?;
        let maps = self.duflot_multiplications()?;
        let p = self.prime();
        let mut dims = Vec::with_capacity(m.len());
        for k in 0..m.len() {
            let mut decomposable: Vec<FpVector> = Vec::new();
            for ((a, _), mats) in d.generators.iter().zip(maps) {
                if *a <= k && *a > 0 {
                    decomposable.extend(m[k - a].image_under(&mats[k - a]).basis().row_vectors().iter().cloned());
                }
            }
            let dec = FpSubspace::from_vectors(p, m[k].ambient_dim(), decomposable);
            if !dec.is_subspace_of(&m[k]) {
                return Err(InvariantError::Theorem(format!("A⁺M leaves M in degree {k}")));
            }
            dims.push(m[k].dim() - dec.dim());
        }
        for k in 0..m.len() {
            let conv: usize = (0..=k).map(|j| d.algebra_dims[j] * dims[k - j]).sum();
            if conv != m[k].dim() {
                return Err(InvariantError::Theorem(format!(
                    "{} is not free over the Duflot subalgebra in degree {k} ({} vs {conv})",
                    self.label,
                    m[k].dim()
                )));
            }
        }
        Ok(GradedDims::new(role, dims, true))
    }

    /// Q_A H^*(G).
    pub fn qa_cohomology(&self) -> Result<GradedDims, InvariantError> {
        let top = self.is_p_central();
        let mut g = self.qa_dims(&self.full_cohomology(), Role::QaH)?;
        g.top_degree_certified = top && self.e().is_ok_and(|e| e <= self.max_degree as i64);
        Ok(g)
    }
}
