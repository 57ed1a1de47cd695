use std::sync::Arc;

use super::FreeComplex;
use crate::group::{Group, PcPresentation};

/// The resolution of F_p over the trivial group: F_p in degree 0.
#[derive(Clone, Debug)]
pub struct TrivialComplex {
    group: Group,
    max_degree: usize,
}

impl TrivialComplex {
    pub fn new(p: u32, max_degree: usize) -> Self {
        let group = PcPresentation::elementary_abelian(p, 0).and_then(|pr| pr.to_group()).expect("trivial group");
        TrivialComplex { group, max_degree }
    }
}

impl FreeComplex for TrivialComplex {
    fn group(&self) -> &Group {
        &self.group
    }
    fn max_degree(&self) -> usize {
        self.max_degree
    }
    fn rank(&self, deg: usize) -> usize {
        usize::from(deg == 0)
    }
    fn boundary(&self, _deg: usize, _j: usize) -> Vec<(usize, usize, u32)> {
        Vec::new()
    }
}

/// The periodic resolution of Z/p: rank one in every degree, with d = t − 1
/// in odd degrees and d = 1 + t + … + t^{p−1} in even degrees. Element k is t^k.
#[derive(Clone, Debug)]
pub struct PeriodicResolution {
    group: Group,
    max_degree: usize,
}

impl PeriodicResolution {
    pub fn new(p: u32, max_degree: usize) -> Self {
        let group = PcPresentation::elementary_abelian(p, 1).and_then(|pr| pr.to_group()).expect("Z/p");
        PeriodicResolution { group, max_degree }
    }
}

impl FreeComplex for PeriodicResolution {
    fn group(&self) -> &Group {
        &self.group
    }
    fn max_degree(&self) -> usize {
        self.max_degree
    }
    fn rank(&self, _deg: usize) -> usize {
        1
    }
    fn boundary(&self, deg: usize, _j: usize) -> Vec<(usize, usize, u32)> {
        let p = self.group.prime();
        if deg % 2 == 1 {
            vec![(0, 0, p - 1), (0, 1, 1)]
        } else {
            (0..p as usize).map(|k| (0, k, 1)).collect()
        }
    }
}

/// A ⊗ B over the product group, with d(a⊗b) = da⊗b + (−1)^{|a|} a⊗db.
/// Element (x, y) of the product is x·|B| + y; generators in degree k are
/// ordered by the degree i of the left factor, then left index, then right index.
pub struct TensorComplex {
    a: Arc<dyn FreeComplex>,
    b: Arc<dyn FreeComplex>,
    group: Group,
    max_degree: usize,
    /// offsets[k][i]: first generator of the (i, k−i) block; offsets[k][k+1] = rank.
    offsets: Vec<Vec<usize>>,
}

impl TensorComplex {
    pub fn new(a: Arc<dyn FreeComplex>, b: Arc<dyn FreeComplex>) -> Self {
        let group = Group::direct_product(a.group(), b.group()).expect("same prime");
        let max_degree = a.max_degree().min(b.max_degree());
        let offsets = (0..=max_degree)
            .map(|k| {
                let mut o = vec![0];
                for i in 0..=k {
                    o.push(o[i] + a.rank(i) * b.rank(k - i));
                }
                o
            })
            .collect();
        TensorComplex { a, b, group, max_degree, offsets }
    }

    pub fn left(&self) -> &Arc<dyn FreeComplex> {
        &self.a
    }

    pub fn right(&self) -> &Arc<dyn FreeComplex> {
        &self.b
    }

    /// Generator index of e_ja ⊗ e_jb with |e_ja| = i in total degree k.
    pub fn index(&self, k: usize, i: usize, ja: usize, jb: usize) -> usize {
        self.offsets[k][i] + ja * self.b.rank(k - i) + jb
    }

    /// Inverse of [`TensorComplex::index`]: (i, ja, jb).
    pub fn split(&self, k: usize, idx: usize) -> (usize, usize, usize) {
        let o = &self.offsets[k];
        let i = o.partition_point(|&x| x <= idx) - 1;
        let rb = self.b.rank(k - i);
        let r = idx - o[i];
        (i, r / rb, r % rb)
    }
}

impl FreeComplex for TensorComplex {
    fn group(&self) -> &Group {
        &self.group
    }
    fn max_degree(&self) -> usize {
        self.max_degree
    }
    fn rank(&self, deg: usize) -> usize {
        self.offsets.get(deg).map_or(0, |o| o[deg + 1])
    }
    fn boundary(&self, k: usize, idx: usize) -> Vec<(usize, usize, u32)> {
        let p = self.group.prime();
        let nb = self.b.group().order();
        let (i, ja, jb) = self.split(k, idx);
        let mut out = Vec::new();
        if i >= 1 {
            for (ja2, x, c) in self.a.boundary(i, ja) {
                out.push((self.index(k - 1, i - 1, ja2, jb), x * nb, c));
            }
        }
        if k - i >= 1 {
            let odd = i % 2 == 1;
            for (jb2, y, c) in self.b.boundary(k - i, jb) {
                let c = if odd && c != 0 { p - c } else { c };
                out.push((self.index(k - 1, i, ja, jb2), y, c));
            }
        }
        out
    }
}

/// Minimal resolution of (Z/p)^c as the tensor product of c periodic
/// resolutions. Generators of degree k correspond to exponent vectors α with
/// |α| = k, so at p = 2 the dual basis is the monomial basis x^α of
/// F_2[x_1, …, x_c].
pub struct ElementaryComplex {
    rank: usize,
    inner: Arc<dyn FreeComplex>,
}

impl ElementaryComplex {
    pub fn new(p: u32, rank: usize, max_degree: usize) -> Self {
        let mut inner: Arc<dyn FreeComplex> = if rank == 0 {
            Arc::new(TrivialComplex::new(p, max_degree))
        } else {
            Arc::new(PeriodicResolution::new(p, max_degree))
        };
        for _ in 1..rank {
            inner = Arc::new(TensorComplex::new(Arc::new(PeriodicResolution::new(p, max_degree)), inner));
        }
        ElementaryComplex { rank, inner }
    }

    pub fn rank_c(&self) -> usize {
        self.rank
    }

    /// Generator index of the exponent vector `alpha` in degree |α|.
    pub fn monomial_index(&self, alpha: &[usize]) -> usize {
        assert_eq!(alpha.len(), self.rank);
        monomial_index(alpha)
    }

    /// Exponent vectors of degree k in generator order.
    pub fn monomials(&self, k: usize) -> Vec<Vec<usize>> {
        monomials(self.rank, k)
    }
}

fn count(c: usize, k: usize) -> usize {
    if c == 0 {
        return usize::from(k == 0);
    }
    // binomial(k + c − 1, c − 1)
    let (n, r) = (k + c - 1, c - 1);
    (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn monomial_index(alpha: &[usize]) -> usize {
    if alpha.len() <= 1 {
        return 0;
    }
    let k: usize = alpha.iter().sum();
    let c = alpha.len();
    let before: usize = (0..alpha[0]).map(|i| count(c - 1, k - i)).sum();
    before + monomial_index(&alpha[1..])
}

fn monomials(c: usize, k: usize) -> Vec<Vec<usize>> {
    if c == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    if c == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for i in 0..=k {
        for rest in monomials(c - 1, k - i) {
            let mut a = vec![i];
            a.extend(rest);
            out.push(a);
        }
    }
    out
}

impl FreeComplex for ElementaryComplex {
    fn group(&self) -> &Group {
        self.inner.group()
    }
    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }
    fn rank(&self, deg: usize) -> usize {
        self.inner.rank(deg)
    }
    fn boundary(&self, deg: usize, j: usize) -> Vec<(usize, usize, u32)> {
        self.inner.boundary(deg, j)
    }
}
