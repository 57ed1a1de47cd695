use std::sync::Arc;

use super::pc::PcPresentation;
use super::subgroups::{ElemAbelian, Subgroup};
use super::table::Group;
use super::GroupError;

/// A presentation together with its validated multiplication table.
#[derive(Clone, Debug)]
pub struct PcGroup {
    pub presentation: PcPresentation,
    pub group: Arc<Group>,
}

impl PcGroup {
    pub fn new(presentation: PcPresentation) -> Result<Self, GroupError> {
        let group = Arc::new(presentation.to_group()?);
        Ok(PcGroup { presentation, group })
    }
}

/// Homomorphism between groups, stored as a full element map. Built either
/// from images of pc generators (checked against every relation) or from an
/// explicit map (checked on all pairs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    generator_images: Vec<usize>,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn from_generator_images(src: &PcGroup, target: &Group, images: Vec<usize>) -> Result<Self, GroupError> {
        let pres = &src.presentation;
        if images.len() != pres.num_gens() {
            return Err(GroupError::InvalidHom("wrong number of generator images".into()));
        }
        let p = pres.prime() as u64;
        let eval = |w: &[u32]| w.iter().zip(&images).fold(0, |acc, (&k, &x)| target.mul(acc, target.pow(x, k as u64)));
        for i in 0..pres.num_gens() {
            if target.pow(images[i], p) != eval(pres.power(i)) {
                return Err(GroupError::InvalidHom(format!("power relation of g{} fails", i + 1)));
            }
            for j in i + 1..pres.num_gens() {
                if target.commutator(images[j], images[i]) != eval(pres.commutator(j, i)) {
                    return Err(GroupError::InvalidHom(format!("commutator relation [g{}, g{}] fails", j + 1, i + 1)));
                }
            }
        }
        let map = (0..pres.order()).map(|x| eval(&pres.element_of(x).0)).collect();
        Ok(GroupHom { generator_images: images, map })
    }

    pub fn from_map(src: &Group, target: &Group, map: Vec<usize>) -> Result<Self, GroupError> {
        if !src.is_hom_into(target, &map) {
            return Err(GroupError::InvalidHom("map is not multiplicative".into()));
        }
        Ok(GroupHom { generator_images: src.generators().iter().map(|&g| map[g]).collect(), map })
    }

    pub fn generator_images(&self) -> &[usize] {
        &self.generator_images
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.map.len()).filter(|&x| self.map[x] == 0).collect()
    }
}

/// Presentation of G/Z and the projection, for Z central.
pub fn quotient_by_central(g: &PcGroup, z: &Subgroup) -> Result<(PcPresentation, GroupHom), GroupError> {
    let grp = &g.group;
    if !grp.is_central(z) {
        return Err(GroupError::NotCentral);
    }
    let n = grp.order();
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] == usize::MAX {
            for &y in z.elements() {
                coset[grp.mul(x, y)] = reps.len();
            }
            reps.push(x);
        }
    }
    let m = reps.len();
    let mut table = vec![0u32; m * m];
    for a in 0..m {
        for b in 0..m {
            table[a * m + b] = coset[grp.mul(reps[a], reps[b])] as u32;
        }
    }
    let q = Group::from_table(grp.prime(), m, table)?;
    let (qpres, pc_to_q) = PcPresentation::from_group(&q)?;
    let mut q_to_pc = vec![0; m];
    for (pc, &e) in pc_to_q.iter().enumerate() {
        q_to_pc[e] = pc;
    }
    let qpc = PcGroup::new(qpres.clone())?;
    let images = (0..g.presentation.num_gens()).map(|k| q_to_pc[coset[g.presentation.generator(k)]]).collect();
    let hom = GroupHom::from_generator_images(g, &qpc.group, images)?;
    Ok((qpres, hom))
}

/// m: C × G → G, (c, g) ↦ cg, on the product presentation (C's basis first).
pub fn multiplication_hom(g: &PcGroup, c: &ElemAbelian) -> Result<(PcGroup, GroupHom), GroupError> {
    if !g.group.is_central(c.subgroup()) {
        return Err(GroupError::NotCentral);
    }
    let cpres = PcPresentation::elementary_abelian(g.presentation.prime(), c.rank())?;
    let prod = PcGroup::new(PcPresentation::direct_product(&cpres, &g.presentation)?)?;
    let mut images: Vec<usize> = c.basis().to_vec();
    images.extend((0..g.presentation.num_gens()).map(|k| g.presentation.generator(k)));
    let hom = GroupHom::from_generator_images(&prod, &g.group, images)?;
    Ok((prod, hom))
}
