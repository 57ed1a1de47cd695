use super::{e_of, h_of, FrobeniusFlag, GradedDims, GroupCohomology, GroupType, InvariantError, Role};
use crate::linalg::{Echelon, FpMatrix, FpSubspace, FpVector};
use crate::resolution::{induced_map, ElementaryComplex, InducedMap};

impl GroupCohomology {
    /// Restriction H^*(G) → H^*(C) with H^*(C) in the monomial basis of the
    /// elementary model on the chosen basis of C.
    pub fn restriction_to_center(&self) -> Result<&InducedMap, InvariantError> {
        self.restriction.get_or_try_init(|| {
            let model = ElementaryComplex::new(self.prime(), self.center.rank(), self.max_degree);
            let (_, _, emb) = self.center.pc_group(&self.group);
            Ok(induced_map(&model, &emb, &self.res, self.max_degree)?)
        })
    }

    /// im(i*) ⊆ H^k(C) for every k ≤ N.
    pub fn restriction_image(&self) -> Result<(GradedDims, Vec<FpSubspace>), InvariantError> {
        let r = self.restriction_to_center()?;
        let spaces: Vec<FpSubspace> = (0..=self.max_degree).map(|k| r.image(k)).collect();
        let dims = spaces.iter().map(|s| s.dim()).collect();
        Ok((GradedDims::new(Role::ImRestriction, dims, true), spaces))
    }

    /// Matrix sending c ∈ F_p^c to Σ cᵢ·(monomial with exponent `slot_degree` in slot i).
    pub(super) fn power_matrix(&self, slot_degree: usize) -> FpMatrix {
        let c = self.center.rank();
        let p = self.prime();
        let model = ElementaryComplex::new(p, c, 0);
        let len = model.monomials(slot_degree).len();
        let cols: Vec<FpVector> = (0..c)
            .map(|i| {
                let mut alpha = vec![0; c];
                alpha[i] = slot_degree;
                FpVector::unit(p, len, model.monomial_index(&alpha))
            })
            .collect();
        if c == 0 {
            return FpMatrix::zero(p, len, 0);
        }
        FpMatrix::from_columns(p, len, &cols)
    }

    /// Degree of the Frobenius level j: 2^j at p = 2, 2p^j at odd p.
    pub(super) fn level_degree(&self, j: u32) -> usize {
        let p = self.prime() as usize;
        if p == 2 {
            1 << j
        } else {
            2 * p.pow(j)
        }
    }

    fn preimage_of_image(&self, degree: usize) -> Result<FpSubspace, InvariantError> {
        let r = self.restriction_to_center()?;
        let f = self.power_matrix(degree);
        if f.cols() == 0 {
            return Ok(FpSubspace::zero(self.prime(), 0));
        }
        f.solve_preimage(&r.image(degree)).map_err(|e| InvariantError::Theorem(e.to_string()))
    }

    /// The type of G with its Frobenius flag. Uncertified entries sit at the
    /// lower bound given by the first level beyond the degree bound.
    pub fn type_of(&self) -> Result<&(GroupType, FrobeniusFlag), InvariantError> {
        self.typing.get_or_try_init(|| {
            let p = self.prime();
            let c = self.center.rank();
            let exterior =
                if p == 2 || c == 0 { FpSubspace::zero(p, c) } else { self.preimage_of_image(1)? };
            let mut levels: Vec<FpSubspace> = Vec::new();
            let mut entries: Vec<u32> = vec![1; exterior.dim()];
            let mut prev = exterior.dim();
            let mut j = 0u32;
            let mut saturated = c == prev;
            while !saturated && self.level_degree(j) <= self.max_degree {
                let level = self.preimage_of_image(self.level_degree(j))?;
                if !exterior.is_subspace_of(&level) || levels.last().is_some_and(|l| !l.is_subspace_of(&level)) {
                    return Err(InvariantError::Theorem("Frobenius flag is not increasing".into()));
                }
                let jump = level.dim().saturating_sub(prev);
                entries.extend(std::iter::repeat(self.level_degree(j) as u32).take(jump));
                prev = level.dim();
                saturated = level.is_full();
                levels.push(level);
                j += 1;
            }
            let missing = c - entries.len();
            entries.extend(std::iter::repeat(self.level_degree(j) as u32).take(missing));
            entries.sort_unstable_by(|a, b| b.cmp(a));
            let flag = FrobeniusFlag { levels, exterior, saturated };
            Ok((GroupType { entries, certified: saturated }, flag))
        })
    }

    pub fn group_type(&self) -> Result<GroupType, InvariantError> {
        Ok(self.type_of()?.0.clone())
    }

    pub fn e(&self) -> Result<i64, InvariantError> {
        Ok(e_of(&self.type_of()?.0))
    }

    pub fn h(&self) -> Result<i64, InvariantError> {
        Ok(h_of(&self.type_of()?.0, self.prime()))
    }

    /// For each new flag vector: (generator degree, target class in H^deg(C)).
    /// Odd p contributes both xᵢ and yᵢ for each exterior direction.
    pub(super) fn image_generators(&self) -> Result<Vec<(usize, FpVector)>, InvariantError> {
        let (_, flag) = self.type_of()?;
        let p = self.prime();
        let c = self.center.rank();
        let mut out = Vec::new();
        let mut ech = Echelon::new(p, c);
        for v in flag.exterior.basis().row_vectors() {
            ech.insert(v.clone());
            out.push((1, self.power_matrix(1).mul_vec(v).expect("length c")));
            out.push((2, self.power_matrix(2).mul_vec(v).expect("length c")));
        }
        for (j, level) in flag.levels.iter().enumerate() {
            let deg = self.level_degree(j as u32);
            for v in level.basis().row_vectors() {
                if ech.insert(v.clone()) {
                    out.push((deg, self.power_matrix(deg).mul_vec(v).expect("length c")));
                }
            }
        }
        Ok(out)
    }
}
