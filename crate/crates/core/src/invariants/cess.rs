use super::{Bounded, GradedDims, GroupCohomology, InvariantError, Role};
use crate::group::Subgroup;
use crate::linalg::FpSubspace;

impl GroupCohomology {
    /// P_C H^k(G) ⊆ H^k(G) for k ≤ N.
    pub fn primitive_spaces(&self) -> Result<&Vec<FpSubspace>, InvariantError> {
        self.primitives.get_or_try_init(|| {
            let m = self.comodule()?;
            Ok((0..=self.max_degree).map(|k| m.primitives(k)).collect())
        })
    }

    /// dim P_C M per degree for M = H^* (`cess = false`) or Cess^*.
    pub fn pc_primitive_dims(&self, cess: bool) -> Result<GradedDims, InvariantError> {
        let prim = self.primitive_spaces()?;
        if !cess {
            let dims = prim.iter().map(|s| s.dim()).collect();
            return Ok(GradedDims::new(Role::PcH, dims, false));
        }
        let ess = self.cess_spaces()?;
        let dims = prim
            .iter()
            .zip(ess)
            .map(|(a, b)| a.intersect(b).map(|s| s.dim()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| InvariantError::Theorem(e.to_string()))?;
        Ok(GradedDims::new(Role::PcCess, dims, false))
    }

    /// Representatives U ⊋ C(G) of rank c + 1, up to conjugacy.
    pub fn cess_test_subgroups(&self) -> Vec<Subgroup> {
        let c = self.center.rank();
        let all: Vec<Subgroup> = self
            .group
            .elementary_abelian_subgroups(Some(&self.center))
            .into_iter()
            .filter(|v| v.rank() == c + 1)
            .map(|v| v.subgroup().clone())
            .collect();
        let classes = self.group.conjugacy_reps(&all);
        classes.reps.iter().map(|&i| all[i].clone()).collect()
    }

    /// Cess^k(G): the intersection of the kernels of restriction to C_G(U)
    /// over U ⊋ C(G). Every such U contains one of rank c + 1, whose
    /// centralizer is larger, so those suffice. For p-central G this is H^*.
    pub fn cess_spaces(&self) -> Result<&Vec<FpSubspace>, InvariantError> {
        self.cess.get_or_try_init(|| {
            let mut spaces = self.full_cohomology();
            for u in self.cess_test_subgroups() {
                let k = self.subgroup(&self.group.centralizer(&u))?;
                let r = k.restriction_from(&self.res, self.max_degree)?;
                for (deg, s) in spaces.iter_mut().enumerate() {
                    *s = s.intersect(&r.kernel(deg)).map_err(|e| InvariantError::Theorem(e.to_string()))?;
                }
            }
            Ok(spaces)
        })
    }

    pub fn cess_dims(&self) -> Result<GradedDims, InvariantError> {
        let dims = self.cess_spaces()?.iter().map(|s| s.dim()).collect();
        Ok(GradedDims::new(Role::Cess, dims, false))
    }

    /// Q_A Cess^*(G), freeness checked.
    pub fn qa_cess_dims(&self) -> Result<GradedDims, InvariantError> {
        let cess = self.cess_spaces()?.clone();
        self.qa_dims(&cess, Role::QaCess)
    }

    /// Top nonzero degree of `dims` certified by duality (r − c = 1) or the safety margin.
    fn certify(&self, dims: &GradedDims, qa_cess: &GradedDims) -> Result<Bounded, InvariantError> {
        let (t, _) = self.type_of()?;
        let e = super::e_of(t);
        let value = dims.top_degree();
        let n = self.max_degree as i64;
        if self.p_rank() == self.center.rank() + 1 {
            if !t.certified || e > n {
                return Ok(Bounded { value, certified: false, heuristic: false });
            }
            if !qa_cess.is_palindromic(e as usize) {
                return Err(InvariantError::Theorem(format!(
                    "Q_A Cess of {} is not palindromic about {e}: {:?}",
                    self.label, qa_cess.dims
                )));
            }
            return Ok(Bounded { value, certified: true, heuristic: false });
        }
        let margin = value.max(0) + t.max_entry() as i64;
        Ok(Bounded { value, certified: t.certified && n >= margin, heuristic: true })
    }

    /// e′(G): top degree of Q_A Cess, or −1. Equals e(G) for p-central G.
    pub fn e_prime(&self) -> Result<Bounded, InvariantError> {
        if self.is_p_central() {
            let t = &self.type_of()?.0;
            return Ok(Bounded { value: super::e_of(t), certified: t.certified, heuristic: false });
        }
        let q = self.qa_cess_dims()?;
        self.certify(&q, &q)
    }

    /// e″(G): top degree of P_C Cess, or −1. Equals e(G) for p-central G.
    pub fn e_double_prime(&self) -> Result<Bounded, InvariantError> {
        if self.is_p_central() {
            let t = &self.type_of()?.0;
            return Ok(Bounded { value: super::e_of(t), certified: t.certified, heuristic: false });
        }
        let q = self.qa_cess_dims()?;
        let pc = self.pc_primitive_dims(true)?;
        self.certify(&pc, &q)
    }

    /// Whether Cess^*(G) ≠ 0, with certification. A nonzero class within N is
    /// conclusive; vanishing is conclusive under duality when N ≥ e(G).
    pub fn cess_nonzero(&self) -> Result<(bool, bool), InvariantError> {
        if self.is_p_central() {
            return Ok((true, true));
        }
        let nonzero = self.cess_dims()?.total() > 0;
        if nonzero {
            return Ok((true, true));
        }
        let b = self.e_prime()?;
        Ok((false, b.certified && !b.heuristic))
    }
}
