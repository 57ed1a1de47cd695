//! H^*(G)_LF and R̄_d H^*(G) as equalizers over 𝒜_C(G), reduced to
//! conjugacy representatives. A family (x_V) over all V is determined by its
//! values on representatives; it is Inn(G)-invariant iff each x_R is fixed by
//! N_G(R), and the comparison along V₁ < R_upper with g·V₁·g⁻¹ = R_lower
//! pulls x_{R_lower} back along conjugation by g.

use std::sync::Arc;

use super::{GradedDims, GroupCohomology, InvariantError, Role, SubgroupData};
use crate::group::ElemAbelian;
use crate::linalg::{FpMatrix, FpSubspace};
use crate::resolution::{comodule_map, induced_map, InducedMap, MinimalResolution};

/// H^*(V) of an elementary abelian V ≤ G, on V's own basis.
struct ElementaryData {
    res: Arc<MinimalResolution>,
    embedding: Vec<usize>,
    index: Vec<Option<usize>>,
}

impl ElementaryData {
    fn new(ctx: &GroupCohomology, v: &ElemAbelian) -> Result<Self, InvariantError> {
        let (_, group, embedding) = v.pc_group(&ctx.group);
        let res = Arc::new(MinimalResolution::build(Arc::new(group), ctx.max_degree, ctx.budget)?);
        let mut index = vec![None; ctx.group.order()];
        for (i, &x) in embedding.iter().enumerate() {
            index[x] = Some(i);
        }
        Ok(ElementaryData { res, embedding, index })
    }

    /// Pullback along x ↦ g·x·g⁻¹ from this group into `target`.
    fn conj_into(&self, ctx: &GroupCohomology, g: usize, target: &ElementaryData) -> Result<InducedMap, InvariantError> {
        let map: Vec<usize> = self
            .embedding
            .iter()
            .map(|&x| target.index[ctx.group.conj(g, x)].expect("conjugate lies in the target"))
            .collect();
        Ok(induced_map(&*self.res, &map, &target.res, ctx.max_degree)?)
    }
}

fn conj_centralizers(
    ctx: &GroupCohomology,
    g: usize,
    source: &SubgroupData,
    target: &SubgroupData,
) -> Result<InducedMap, InvariantError> {
    let map: Vec<usize> = source.embedding.iter().map(|&x| target.local(ctx.group.conj(g, x))).collect();
    Ok(induced_map(&*source.resolution, &map, &target.resolution, ctx.max_degree)?)
}

struct ObjectData {
    v: ElementaryData,
    k: Arc<SubgroupData>,
    /// P_V H^d(C_G(V)) for d ≤ N.
    prim: Vec<FpSubspace>,
    /// For each Weyl generator n: conjugation by n on V and on C_G(V).
    weyl: Vec<(InducedMap, InducedMap)>,
}

struct EdgeData {
    upper: usize,
    lower: usize,
    /// Conjugation V₁ → R_lower and the inclusion V₁ → R_upper on H^*(−).
    alpha: InducedMap,
    iota: InducedMap,
    /// Conjugation C_G(R_upper) → C_G(R_lower).
    phi: InducedMap,
}

pub(super) struct EqualizerData {
    objects: Vec<ObjectData>,
    edges: Vec<EdgeData>,
}

impl EqualizerData {
    fn build(ctx: &GroupCohomology) -> Result<Self, InvariantError> {
        let cat = ctx.group.quillen_category_ac();
        let n = ctx.max_degree;
        let mut objects = Vec::with_capacity(cat.objects.len());
        for obj in &cat.objects {
            let k = ctx.subgroup(&obj.centralizer)?;
            let local = k.localize(&obj.subgroup)?;
            let coaction = comodule_map(&k.resolution, &local, n)?;
            let prim = (0..=n).map(|d| coaction.primitives(d)).collect();
            let v = ElementaryData::new(ctx, &obj.subgroup)?;
            let weyl = obj
                .weyl_generators
                .iter()
                .map(|&g| Ok((v.conj_into(ctx, g, &v)?, conj_centralizers(ctx, g, &k, &k)?)))
                .collect::<Result<Vec<_>, InvariantError>>()?;
            objects.push(ObjectData { v, k, prim, weyl });
        }
        let mut edges = Vec::with_capacity(cat.edges.len());
        for e in &cat.edges {
            let sub = ElementaryData::new(ctx, &e.sub)?;
            let (up, low) = (&objects[e.upper], &objects[e.lower]);
            let alpha = sub.conj_into(ctx, e.conjugator, &low.v)?;
            let iota = sub.conj_into(ctx, 0, &up.v)?;
            let phi = conj_centralizers(ctx, e.conjugator, &up.k, &low.k)?;
            edges.push(EdgeData { upper: e.upper, lower: e.lower, alpha, iota, phi });
        }
        Ok(EqualizerData { objects, edges })
    }
}

/// Kernel dimension of a block system: each constraint is a list of
/// (variable block, matrix) pairs with a common row count.
fn solution_dim(p: u32, widths: &[usize], constraints: &[Vec<(usize, FpMatrix)>]) -> usize {
    let mut offsets = vec![0usize; widths.len() + 1];
    for (i, w) in widths.iter().enumerate() {
        offsets[i + 1] = offsets[i] + w;
    }
    let total = offsets[widths.len()];
    let rows: usize = constraints.iter().map(|c| c.first().map_or(0, |(_, m)| m.rows())).sum();
    if total == 0 {
        return 0;
    }
    if rows == 0 {
        return total;
    }
    let mut big = FpMatrix::zero(p, rows, total);
    let mut r0 = 0;
    for c in constraints {
        let h = c.first().map_or(0, |(_, m)| m.rows());
        for (block, m) in c {
            for i in 0..m.rows() {
                for (j, a) in m.row(i).iter_nonzero() {
                    let cur = big.get(r0 + i, offsets[*block] + j);
                    big.set(r0 + i, offsets[*block] + j, (cur + a) % p);
                }
            }
        }
        r0 += h;
    }
    total - big.rank()
}

fn basis_columns(s: &FpSubspace) -> FpMatrix {
    let p = s.prime();
    if s.dim() == 0 {
        return FpMatrix::zero(p, s.ambient_dim(), 0);
    }
    FpMatrix::from_columns(p, s.ambient_dim(), s.basis().row_vectors())
}

fn minus_identity(m: &FpMatrix) -> FpMatrix {
    m.sub(&FpMatrix::identity(m.prime(), m.rows())).expect("square")
}

fn neg(m: &FpMatrix) -> FpMatrix {
    FpMatrix::zero(m.prime(), m.rows(), m.cols()).sub(m).expect("same shape")
}

fn mul(a: &FpMatrix, b: &FpMatrix) -> FpMatrix {
    a.mul(b).expect("composable")
}

impl GroupCohomology {
    fn equalizer_data(&self) -> Result<&EqualizerData, InvariantError> {
        self.equalizer.get_or_try_init(|| EqualizerData::build(self))
    }

    /// dim H^k(G)_LF for k ≤ N from the equalizer of primitives over 𝒜_C(G).
    pub fn lf_dims(&self) -> Result<GradedDims, InvariantError> {
        let data = self.equalizer_data()?;
        let p = self.prime();
        let mut dims = Vec::with_capacity(self.max_degree + 1);
        for k in 0..=self.max_degree {
            let s: Vec<FpMatrix> = data.objects.iter().map(|o| basis_columns(&o.prim[k])).collect();
            let widths: Vec<usize> = s.iter().map(|m| m.cols()).collect();
            let mut constraints = Vec::new();
            for (i, o) in data.objects.iter().enumerate() {
                for (_, phi) in &o.weyl {
                    constraints.push(vec![(i, mul(&minus_identity(phi.matrix(k)), &s[i]))]);
                }
            }
            for e in &data.edges {
                constraints.push(vec![(e.lower, mul(e.phi.matrix(k), &s[e.lower])), (e.upper, neg(&s[e.upper]))]);
            }
            dims.push(solution_dim(p, &widths, &constraints));
        }
        let certified = self.is_p_central() && self.e().is_ok_and(|e| e <= self.max_degree as i64);
        let mut g = GradedDims::new(Role::Lf, dims, certified);
        g.top_degree_certified = certified;
        Ok(g)
    }

    /// dim of the H^k(V)-graded part of R̄_d H^*(G) for k ≤ N (total degree k + d).
    pub fn bar_rd_dims(&self, d: usize) -> Result<GradedDims, InvariantError> {
        if d > self.max_degree {
            return Err(InvariantError::Precondition(format!("d = {d} exceeds N = {}", self.max_degree)));
        }
        let data = self.equalizer_data()?;
        let p = self.prime();
        let mut dims = Vec::with_capacity(self.max_degree + 1);
        for k in 0..=self.max_degree {
            let s: Vec<FpMatrix> = data
                .objects
                .iter()
                .map(|o| {
                    let bv = o.v.res.hilbert_fragment()[k];
                    FpMatrix::identity(p, bv).kronecker(&basis_columns(&o.prim[d]))
                })
                .collect();
            let widths: Vec<usize> = s.iter().map(|m| m.cols()).collect();
            let mut constraints = Vec::new();
            for (i, o) in data.objects.iter().enumerate() {
                for (alpha, phi) in &o.weyl {
                    let act = alpha.matrix(k).kronecker(phi.matrix(d));
                    constraints.push(vec![(i, mul(&minus_identity(&act), &s[i]))]);
                }
            }
            for e in &data.edges {
                let left = e.alpha.matrix(k).kronecker(e.phi.matrix(d));
                let bu = data.objects[e.upper].k.resolution.hilbert_fragment()[d];
                let right = e.iota.matrix(k).kronecker(&FpMatrix::identity(p, bu));
                constraints.push(vec![(e.lower, mul(&left, &s[e.lower])), (e.upper, neg(&mul(&right, &s[e.upper])))]);
            }
            dims.push(solution_dim(p, &widths, &constraints));
        }
        Ok(GradedDims::new(Role::BarRd(d), dims, false))
    }

    /// Largest d ≤ N with R̄_d ≠ 0 in some H^*(V)-degree ≤ N, or −1.
    pub fn d0_from_rd(&self) -> Result<i64, InvariantError> {
        let mut best = -1;
        for d in 0..=self.max_degree {
            if self.bar_rd_dims(d)?.total() > 0 {
                best = d as i64;
            }
        }
        Ok(best)
    }
}
