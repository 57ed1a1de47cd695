use std::collections::{BTreeSet, HashMap};

use super::pc::PcPresentation;
use super::table::Group;
use super::GroupError;

/// A subgroup, identified by its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn generated(g: &Group, gens: &[usize]) -> Self {
        Subgroup { elements: g.closure(gens) }
    }

    pub fn whole(g: &Group) -> Self {
        Subgroup { elements: (0..g.order()).collect() }
    }

    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    /// `elements` must be closed under multiplication; they are sorted here.
    pub fn from_elements(g: &Group, mut elements: Vec<usize>) -> Result<Self, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        let s = Subgroup { elements };
        for &x in &s.elements {
            for &y in &s.elements {
                if !s.contains(g.mul(x, y)) {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        if !s.contains(0) {
            return Err(GroupError::NotASubgroup);
        }
        Ok(s)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn conjugate(&self, g: &Group, by: usize) -> Subgroup {
        let mut e: Vec<usize> = self.elements.iter().map(|&x| g.conj(by, x)).collect();
        e.sort_unstable();
        Subgroup { elements: e }
    }

    /// The subgroup as a group in its own right; element i of the result is
    /// `embedding[i]` in the parent (identity first).
    pub fn as_group(&self, g: &Group) -> Result<(Group, Vec<usize>), GroupError> {
        let n = self.order();
        let pos: HashMap<usize, usize> = self.elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut table = vec![0u32; n * n];
        for (i, &x) in self.elements.iter().enumerate() {
            for (j, &y) in self.elements.iter().enumerate() {
                table[i * n + j] = pos[&g.mul(x, y)] as u32;
            }
        }
        Ok((Group::from_table(g.prime(), n, table)?, self.elements.clone()))
    }
}

/// An elementary abelian subgroup with a chosen basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElemAbelian {
    subgroup: Subgroup,
    basis: Vec<usize>,
}

impl ElemAbelian {
    /// Checks that `basis` generates an elementary abelian group of rank |basis|.
    pub fn from_basis(g: &Group, basis: Vec<usize>) -> Result<Self, GroupError> {
        let p = g.prime() as u64;
        for &x in &basis {
            if x == 0 || g.pow(x, p) != 0 {
                return Err(GroupError::NotElementaryAbelian);
            }
            for &y in &basis {
                if !g.commutes(x, y) {
                    return Err(GroupError::NotElementaryAbelian);
                }
            }
        }
        let subgroup = Subgroup::generated(g, &basis);
        if subgroup.order() != (p as usize).pow(basis.len() as u32) {
            return Err(GroupError::NotElementaryAbelian);
        }
        Ok(ElemAbelian { subgroup, basis })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Presentation of (Z/p)^rank on this basis and the embedding of its
    /// elements (pc indices) into the parent.
    pub fn pc_group(&self, g: &Group) -> (PcPresentation, Group, Vec<usize>) {
        let pres = PcPresentation::elementary_abelian(g.prime(), self.rank()).expect("prime checked");
        let group = pres.to_group().expect("elementary abelian presentation is consistent");
        let emb = (0..group.order())
            .map(|idx| {
                let e = pres.element_of(idx);
                e.0.iter().zip(&self.basis).fold(0, |acc, (&k, &b)| g.mul(acc, g.pow(b, k as u64)))
            })
            .collect();
        (pres, group, emb)
    }
}

/// Result of sorting subgroups into conjugacy classes.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    /// Input indices chosen as representatives (first member of each class).
    pub reps: Vec<usize>,
    /// For each input: (class number, g) with g·S·g⁻¹ equal to the class representative.
    pub membership: Vec<(usize, usize)>,
}

impl Group {
    pub fn center(&self) -> Subgroup {
        let gens = self.generators();
        let z = (0..self.order()).filter(|&x| gens.iter().all(|&s| self.commutes(x, s))).collect();
        Subgroup { elements: z }
    }

    pub fn is_central(&self, s: &Subgroup) -> bool {
        s.elements().iter().all(|&x| self.generators().iter().all(|&g| self.commutes(x, g)))
    }

    /// C(G): elements of Z(G) of order dividing p.
    pub fn omega1_center(&self) -> ElemAbelian {
        let p = self.prime() as u64;
        let socle: Vec<usize> = self.center().elements().iter().copied().filter(|&x| self.pow(x, p) == 0).collect();
        greedy_basis(self, &socle)
    }

    pub fn is_p_central(&self) -> bool {
        let p = self.prime() as u64;
        let z = self.center();
        (0..self.order()).all(|x| self.pow(x, p) != 0 || z.contains(x))
    }

    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        let e = (0..self.order()).filter(|&x| s.elements().iter().all(|&y| self.commutes(x, y))).collect();
        Subgroup { elements: e }
    }

    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        let e = (0..self.order()).filter(|&x| s.elements().iter().all(|&y| s.contains(self.conj(x, y)))).collect();
        Subgroup { elements: e }
    }

    /// Elementary abelian subgroups, optionally only those containing `containing`.
    /// Sorted by rank, then by element list.
    pub fn elementary_abelian_subgroups(&self, containing: Option<&ElemAbelian>) -> Vec<ElemAbelian> {
        let p = self.prime() as u64;
        let start = match containing {
            Some(v) => v.clone(),
            None => ElemAbelian { subgroup: Subgroup::trivial(), basis: vec![] },
        };
        let order_p: Vec<usize> = (1..self.order()).filter(|&x| self.pow(x, p) == 0).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(start.subgroup.elements.clone());
        let mut out = vec![start.clone()];
        let mut layer = vec![start];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for v in &layer {
                for &x in &order_p {
                    if v.subgroup.contains(x) || !v.basis.iter().all(|&b| self.commutes(x, b)) {
                        continue;
                    }
                    let mut basis = v.basis.clone();
                    basis.push(x);
                    let sub = Subgroup::generated(self, &basis);
                    if seen.insert(sub.elements.clone()) {
                        next.push(ElemAbelian { subgroup: sub, basis });
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.sort_by(|a, b| (a.rank(), &a.subgroup.elements).cmp(&(b.rank(), &b.subgroup.elements)));
        out
    }

    pub fn p_rank(&self) -> usize {
        self.elementary_abelian_subgroups(None).iter().map(|v| v.rank()).max().unwrap_or(0)
    }

    /// Index-p subgroups: kernels of the nonzero maps G → G/Φ → Z/p, one per line.
    pub fn maximal_subgroups(&self) -> Vec<Subgroup> {
        let p = self.prime();
        let phi = self.frattini();
        let gens = self.generators().to_vec();
        let d = gens.len();
        let mut coord: Vec<Vec<u32>> = vec![Vec::new(); self.order()];
        let total = (p as usize).pow(d as u32);
        for idx in 0..total {
            let mut e = vec![0u32; d];
            let mut t = idx;
            for k in (0..d).rev() {
                e[k] = (t % p as usize) as u32;
                t /= p as usize;
            }
            let rep = e.iter().zip(&gens).fold(0, |acc, (&k, &b)| self.mul(acc, self.pow(b, k as u64)));
            for &y in &phi {
                coord[self.mul(rep, y)] = e.clone();
            }
        }
        let mut out = Vec::new();
        for idx in 1..total {
            let mut lam = vec![0u32; d];
            let mut t = idx;
            for k in (0..d).rev() {
                lam[k] = (t % p as usize) as u32;
                t /= p as usize;
            }
            // one functional per line: first nonzero coordinate equal to 1
            if lam.iter().find(|&&c| c != 0) != Some(&1) {
                continue;
            }
            let elems = (0..self.order())
                .filter(|&x| coord[x].iter().zip(&lam).map(|(&a, &b)| a * b).sum::<u32>() % p == 0)
                .collect();
            out.push(Subgroup { elements: elems });
        }
        out
    }

    /// Groups the given subgroups by G-conjugacy, recording conjugators.
    pub fn conjugacy_reps(&self, subgroups: &[Subgroup]) -> ConjugacyClasses {
        let mut reps: Vec<usize> = Vec::new();
        let mut membership = Vec::with_capacity(subgroups.len());
        for (i, s) in subgroups.iter().enumerate() {
            let mut found = None;
            'outer: for (c, &r) in reps.iter().enumerate() {
                if subgroups[r].order() != s.order() {
                    continue;
                }
                for g in 0..self.order() {
                    if s.conjugate(self, g) == subgroups[r] {
                        found = Some((c, g));
                        break 'outer;
                    }
                }
            }
            match found {
                Some(m) => membership.push(m),
                None => {
                    membership.push((reps.len(), 0));
                    reps.push(i);
                }
            }
        }
        ConjugacyClasses { reps, membership }
    }
}

/// Basis of an elementary abelian subgroup given by its element list.
fn greedy_basis(g: &Group, elements: &[usize]) -> ElemAbelian {
    let mut basis = Vec::new();
    let mut span = Subgroup::trivial();
    for &x in elements {
        if !span.contains(x) {
            basis.push(x);
            span = Subgroup::generated(g, &basis);
        }
    }
    ElemAbelian { subgroup: span, basis }
}

/// Elementary abelian subgroup from an element list (closed, exponent p, abelian).
pub fn elem_abelian_from_subgroup(g: &Group, s: &Subgroup) -> Result<ElemAbelian, GroupError> {
    let e = greedy_basis(g, s.elements());
    if e.subgroup != *s {
        return Err(GroupError::NotElementaryAbelian);
    }
    ElemAbelian::from_basis(g, e.basis)
}
