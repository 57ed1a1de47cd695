use super::{Bounded, GroupCohomology, InvariantError};
use crate::group::Subgroup;
use crate::linalg::FpVector;

/// (d₀, d₁) of a group whose Sylow p-subgroup is the given p-central group.
pub fn sylow_transfer(sylow: &GroupCohomology) -> Result<(i64, i64), InvariantError> {
    sylow.d0_d1_p_central()
}

impl GroupCohomology {
    /// (d₀, d₁) = (e, e + h) for p-central G.
    pub fn d0_d1_p_central(&self) -> Result<(i64, i64), InvariantError> {
        if !self.is_p_central() {
            return Err(InvariantError::Precondition(format!("{} is not p-central", self.label)));
        }
        let t = &self.type_of()?.0;
        if !t.certified {
            return Err(InvariantError::Precondition(format!("type of {} is not certified", self.label)));
        }
        let e = super::e_of(t);
        Ok((e, e + super::h_of(t, self.prime())))
    }

    /// Representatives V (up to conjugacy) with V = C(C_G(V)), each with its centralizer.
    pub fn detecting_subgroups(&self) -> Vec<(Subgroup, Subgroup)> {
        let all: Vec<Subgroup> =
            self.group.elementary_abelian_subgroups(None).into_iter().map(|v| v.subgroup().clone()).collect();
        let classes = self.group.conjugacy_reps(&all);
        classes
            .reps
            .iter()
            .filter_map(|&i| {
                let v = &all[i];
                let k = self.group.centralizer(v);
                let ck = self.group.centralizer(&k);
                let center_of_k: Vec<usize> = k
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&x| ck.contains(x) && self.group.pow(x, self.prime() as u64) == 0)
                    .collect();
                (center_of_k == v.elements()).then(|| (v.clone(), k))
            })
            .collect()
    }

    /// d₀(G) = max e″(C_G(V)) over V = C(C_G(V)); certified when every term is.
    pub fn d0_general(&self) -> Result<Bounded, InvariantError> {
        let mut best = Bounded { value: -1, certified: true, heuristic: false };
        for (v, k) in self.detecting_subgroups() {
            let b = if k.order() == self.group.order() {
                self.e_double_prime()?
            } else {
                self.child(format!("{}:C(V{})", self.label, v.order()), &k)?.e_double_prime()?
            };
            best.value = best.value.max(b.value);
            best.certified &= b.certified;
            best.heuristic |= b.heuristic;
        }
        Ok(best)
    }

    /// A generator of the one-dimensional P_C H^{e(G)} for p-central G with e(G) > 0.
    pub fn top_primitive_class(&self) -> Result<(usize, FpVector), InvariantError> {
        let (e, _) = self.d0_d1_p_central()?;
        if e <= 0 {
            return Err(InvariantError::Precondition("e(G) = 0 has no essential top class".into()));
        }
        let e = e as usize;
        if e > self.max_degree {
            return Err(InvariantError::Precondition(format!("e(G) = {e} exceeds N = {}", self.max_degree)));
        }
        let prim = &self.primitive_spaces()?[e];
        if prim.dim() != 1 {
            return Err(InvariantError::Theorem(format!("P_C H^{e} has dimension {}, not 1", prim.dim())));
        }
        Ok((e, prim.basis().row(0).clone()))
    }

    /// True when z ∈ H^deg(G) restricts to zero on every maximal subgroup.
    pub fn is_essential(&self, deg: usize, z: &FpVector) -> Result<bool, InvariantError> {
        for m in self.group.maximal_subgroups() {
            let sub = self.subgroup(&m)?;
            let r = sub.restriction_from(&self.res, deg)?;
            if !r.apply(deg, z).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
