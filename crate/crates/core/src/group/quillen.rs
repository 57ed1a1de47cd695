use super::subgroups::{ElemAbelian, Subgroup};
use super::table::Group;

/// A conjugacy-class representative V ⊇ C(G).
#[derive(Clone, Debug)]
pub struct AcObject {
    pub subgroup: ElemAbelian,
    pub centralizer: Subgroup,
    pub normalizer: Subgroup,
    /// Elements of N_G(V) whose images generate W_G(V) = N_G(V)/C_G(V).
    pub weyl_generators: Vec<usize>,
}

impl AcObject {
    pub fn weyl_order(&self) -> usize {
        self.normalizer.order() / self.centralizer.order()
    }
}

/// A proper inclusion V1 < R_upper with V1 conjugate to R_lower:
/// `conjugator` g satisfies g·V1·g⁻¹ = R_lower.
#[derive(Clone, Debug)]
pub struct AcEdge {
    pub upper: usize,
    pub lower: usize,
    pub sub: ElemAbelian,
    pub conjugator: usize,
}

/// 𝒜_C(G) reduced to conjugacy representatives.
#[derive(Clone, Debug)]
pub struct QuillenCategoryAC {
    pub center: ElemAbelian,
    pub objects: Vec<AcObject>,
    pub edges: Vec<AcEdge>,
}

impl Group {
    pub fn quillen_category_ac(&self) -> QuillenCategoryAC {
        let c = self.omega1_center();
        let all = self.elementary_abelian_subgroups(Some(&c));
        let subs: Vec<Subgroup> = all.iter().map(|v| v.subgroup().clone()).collect();
        let classes = self.conjugacy_reps(&subs);
        let objects: Vec<AcObject> = classes
            .reps
            .iter()
            .map(|&r| {
                let v = all[r].clone();
                let centralizer = self.centralizer(v.subgroup());
                let normalizer = self.normalizer(v.subgroup());
                let mut gens = Vec::new();
                let mut span = centralizer.clone();
                for &x in normalizer.elements() {
                    if !span.contains(x) {
                        gens.push(x);
                        let mut all_gens: Vec<usize> = centralizer.elements().to_vec();
                        all_gens.extend(gens.iter().copied());
                        span = Subgroup::generated(self, &all_gens);
                    }
                }
                AcObject { subgroup: v, centralizer, normalizer, weyl_generators: gens }
            })
            .collect();
        let mut edges = Vec::new();
        for (upper, obj) in objects.iter().enumerate() {
            for (i, v) in all.iter().enumerate() {
                let s = v.subgroup();
                if s.order() < obj.subgroup.subgroup().order() && s.is_subgroup_of(obj.subgroup.subgroup()) {
                    let (lower, conjugator) = classes.membership[i];
                    edges.push(AcEdge { upper, lower, sub: v.clone(), conjugator });
                }
            }
        }
        QuillenCategoryAC { center: c, objects, edges }
    }
}
