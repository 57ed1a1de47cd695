use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::OnceCell;

use super::{DuflotData, FrobeniusFlag, GroupType, InvariantError};
use crate::group::{ElemAbelian, Group, Subgroup};
use crate::linalg::{FpMatrix, FpSubspace};
use crate::resolution::{comodule_map, restriction_map, ComoduleMap, InducedMap, MinimalResolution};

/// A subgroup realised as a group in its own right, with its resolution.
pub struct SubgroupData {
    pub group: Arc<Group>,
    /// Element of the parent for each element of the subgroup.
    pub embedding: Vec<usize>,
    /// Inverse of `embedding` on the parent (None off the subgroup).
    pub index: Vec<Option<usize>>,
    pub resolution: Arc<MinimalResolution>,
}

impl SubgroupData {
    pub fn local(&self, x: usize) -> usize {
        self.index[x].expect("element lies in the subgroup")
    }

    /// Restriction H^*(parent) → H^*(subgroup) through degree `top`.
    pub fn restriction_from(&self, parent: &MinimalResolution, top: usize) -> Result<InducedMap, InvariantError> {
        Ok(restriction_map(parent, &*self.resolution, &self.embedding, top)?)
    }

    /// An elementary abelian subgroup of the parent, rebased into this group.
    pub fn localize(&self, v: &ElemAbelian) -> Result<ElemAbelian, InvariantError> {
        Ok(ElemAbelian::from_basis(&self.group, v.basis().iter().map(|&x| self.local(x)).collect())?)
    }
}

/// Lazily computed cohomological data of one group through a degree bound.
pub struct GroupCohomology {
    pub(super) label: String,
    pub(super) group: Arc<Group>,
    pub(super) max_degree: usize,
    pub(super) budget: usize,
    pub(super) res: Arc<MinimalResolution>,
    pub(super) center: ElemAbelian,
    pub(super) restriction: OnceCell<InducedMap>,
    pub(super) typing: OnceCell<(GroupType, FrobeniusFlag)>,
    pub(super) duflot: OnceCell<DuflotData>,
    pub(super) duflot_maps: OnceCell<Vec<Vec<FpMatrix>>>,
    pub(super) comodule: OnceCell<ComoduleMap>,
    pub(super) primitives: OnceCell<Vec<FpSubspace>>,
    pub(super) cess: OnceCell<Vec<FpSubspace>>,
    pub(super) equalizer: OnceCell<super::equalizer::EqualizerData>,
    subgroups: Mutex<HashMap<Vec<usize>, Arc<SubgroupData>>>,
}

impl GroupCohomology {
    pub fn new(label: impl Into<String>, group: Arc<Group>, max_degree: usize, budget: usize) -> Result<Self, InvariantError> {
        let res = MinimalResolution::build(group.clone(), max_degree, budget)?;
        Ok(Self::from_resolution(label, Arc::new(res), budget))
    }

    pub fn from_resolution(label: impl Into<String>, res: Arc<MinimalResolution>, budget: usize) -> Self {
        let group = res.group().clone();
        let center = group.omega1_center();
        GroupCohomology {
            label: label.into(),
            max_degree: res.max_degree(),
            group,
            budget,
            res,
            center,
            restriction: OnceCell::new(),
            typing: OnceCell::new(),
            duflot: OnceCell::new(),
            duflot_maps: OnceCell::new(),
            comodule: OnceCell::new(),
            primitives: OnceCell::new(),
            cess: OnceCell::new(),
            equalizer: OnceCell::new(),
            subgroups: Mutex::new(HashMap::new()),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn prime(&self) -> u32 {
        self.group.prime()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn resolution(&self) -> &Arc<MinimalResolution> {
        &self.res
    }

    pub fn center(&self) -> &ElemAbelian {
        &self.center
    }

    pub fn p_rank(&self) -> usize {
        self.group.p_rank()
    }

    pub fn is_p_central(&self) -> bool {
        self.group.is_p_central()
    }

    /// dim H^k(G) for k ≤ N.
    pub fn betti(&self) -> &[usize] {
        self.res.hilbert_fragment()
    }

    /// The subgroup as a group with a resolution through the same bound; shared per subgroup.
    pub fn subgroup(&self, s: &Subgroup) -> Result<Arc<SubgroupData>, InvariantError> {
        let key = s.elements().to_vec();
        if let Some(d) = self.subgroups.lock().expect("subgroup cache").get(&key) {
            return Ok(d.clone());
        }
        if s.order() == self.group.order() {
            let n = self.group.order();
            let data = Arc::new(SubgroupData {
                group: self.group.clone(),
                embedding: (0..n).collect(),
                index: (0..n).map(Some).collect(),
                resolution: self.res.clone(),
            });
            self.subgroups.lock().expect("subgroup cache").insert(key, data.clone());
            return Ok(data);
        }
        let (group, embedding) = s.as_group(&self.group)?;
        let group = Arc::new(group);
        let mut index = vec![None; self.group.order()];
        for (i, &x) in embedding.iter().enumerate() {
            index[x] = Some(i);
        }
        let resolution = Arc::new(MinimalResolution::build(group.clone(), self.max_degree, self.budget)?);
        let data = Arc::new(SubgroupData { group, embedding, index, resolution });
        self.subgroups.lock().expect("subgroup cache").insert(key, data.clone());
        Ok(data)
    }

    /// The coaction of H^*(C) on H^*(G).
    pub fn comodule(&self) -> Result<&ComoduleMap, InvariantError> {
        self.comodule.get_or_try_init(|| Ok(comodule_map(&self.res, &self.center, self.max_degree)?))
    }

    /// A context for a subgroup (typically a centralizer) sharing this bound and budget.
    pub fn child(&self, label: impl Into<String>, s: &Subgroup) -> Result<GroupCohomology, InvariantError> {
        let data = self.subgroup(s)?;
        Ok(GroupCohomology::from_resolution(label, data.resolution.clone(), self.budget))
    }
}
