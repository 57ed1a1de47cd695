use pcoh::catalog::{builtin, builtin_ids, resolve};
use pcoh::group::{multiplication_hom, quotient_by_central, Group, PcGroup, PcPresentation, Subgroup};
use proptest::prelude::*;

fn group(id: &str) -> PcGroup {
    builtin(id).unwrap().group
}

#[test]
fn centers() {
    let v = group("Z2^3");
    assert_eq!(v.group.center().order(), 8);
    assert_eq!(v.group.omega1_center().rank(), 3);
    assert_eq!(group("Q8").group.omega1_center().rank(), 1);
    assert_eq!(group("W2").group.omega1_center().rank(), 3);
    for id in builtin_ids() {
        let g = group(id).group;
        let brute = (0..g.order()).filter(|&x| (0..g.order()).all(|y| g.commutes(x, y))).count();
        assert_eq!(brute, g.center().order(), "{id}");
    }
}

#[test]
fn p_centrality_matches_rank_equality() {
    for id in builtin_ids() {
        let g = group(id).group;
        assert_eq!(g.is_p_central(), g.p_rank() == g.omega1_center().rank(), "{id}");
    }
    assert!(group("Q8").group.is_p_central());
    assert!(!group("D8").group.is_p_central());
    assert!(group("Z2^4").group.is_p_central());
}

#[test]
fn elementary_abelian_enumeration() {
    let v = group("Z2^2").group;
    let subs = v.elementary_abelian_subgroups(None);
    let by_rank: Vec<usize> = (0..3).map(|r| subs.iter().filter(|s| s.rank() == r).count()).collect();
    assert_eq!(by_rank, vec![1, 3, 1]);
    let q = group("Q8").group;
    assert_eq!(q.elementary_abelian_subgroups(None).len(), 2);
    assert_eq!(q.p_rank(), 1);
    let d = group("D8").group;
    assert_eq!(d.p_rank(), 2);
    assert_eq!(d.elementary_abelian_subgroups(None).iter().filter(|s| s.rank() == 2).count(), 2);
    assert_eq!(group("Z2^4").group.p_rank(), 4);
}

#[test]
fn maximal_subgroup_counts() {
    assert_eq!(group("Z4").group.maximal_subgroups().len(), 1);
    let q = group("Q8").group;
    let m = q.maximal_subgroups();
    assert_eq!(m.len(), 3);
    for s in &m {
        assert_eq!(s.order(), 4);
        assert!(s.elements().iter().any(|&x| q.element_order(x) == 4));
    }
    assert_eq!(group("Z2^2").group.maximal_subgroups().len(), 3);
}

#[test]
fn conjugacy_classes_of_subgroups() {
    let v = group("Z2^3").group;
    let subs: Vec<Subgroup> = v.elementary_abelian_subgroups(None).iter().map(|e| e.subgroup().clone()).collect();
    assert_eq!(v.conjugacy_reps(&subs).reps.len(), subs.len());
    let d = group("D8").group;
    let fours: Vec<Subgroup> =
        d.elementary_abelian_subgroups(None).iter().filter(|e| e.rank() == 2).map(|e| e.subgroup().clone()).collect();
    assert_eq!(d.conjugacy_reps(&fours).reps.len(), 2);
    // non-central involutions of D8 fall in two classes of size 2
    let invs: Vec<Subgroup> = d
        .elementary_abelian_subgroups(None)
        .iter()
        .filter(|e| e.rank() == 1 && !d.is_central(e.subgroup()))
        .map(|e| e.subgroup().clone())
        .collect();
    let classes = d.conjugacy_reps(&invs);
    assert_eq!(classes.reps.len(), 2);
    for (i, &(c, g)) in classes.membership.iter().enumerate() {
        assert_eq!(invs[i].conjugate(&d, g), invs[classes.reps[c]]);
    }
    let q = group("Q8").group;
    assert_eq!(q.conjugacy_reps(&q.maximal_subgroups()).reps.len(), 3);
}

#[test]
fn products_and_quotients() {
    let q8 = group("Q8");
    let z4 = group("Z4");
    let prod = PcPresentation::direct_product(&q8.presentation, &z4.presentation).unwrap();
    assert_eq!(prod.order(), 32);
    let w = group("W2");
    let c = w.group.omega1_center();
    let (qp, hom) = quotient_by_central(&w, c.subgroup()).unwrap();
    let qg = qp.to_group().unwrap();
    assert_eq!(qg.order(), 4);
    assert_eq!(qg.p_rank(), 2);
    assert_eq!(hom.kernel(), c.subgroup().elements().to_vec());
    let z = q8.group.center();
    let (qp, hom) = quotient_by_central(&q8, &z).unwrap();
    let qg = qp.to_group().unwrap();
    assert!(qg.is_abelian() && qg.p_rank() == 2);
    assert_eq!(hom.kernel(), z.elements().to_vec());
    assert!(q8.group.is_hom_into(&qg, hom.map()));
    let d8 = group("D8");
    let fours = d8.group.elementary_abelian_subgroups(None);
    let noncentral = fours.iter().find(|e| !d8.group.is_central(e.subgroup())).unwrap();
    assert!(quotient_by_central(&d8, noncentral.subgroup()).is_err());
}

#[test]
fn multiplication_hom_restrictions() {
    for id in ["W2", "Q8", "Z2^3"] {
        let g = group(id);
        let c = g.group.omega1_center();
        let (prod, m) = multiplication_hom(&g, &c).unwrap();
        assert!(prod.group.is_hom_into(&g.group, m.map()));
        let n = g.group.order();
        let (_, _, emb) = c.pc_group(&g.group);
        for (ci, &ce) in emb.iter().enumerate() {
            assert_eq!(m.apply(ci * n), ce);
        }
        for x in 0..n {
            assert_eq!(m.apply(x), x);
        }
    }
    let v = group("Z2^2");
    let c = v.group.omega1_center();
    let (prod, m) = multiplication_hom(&v, &c).unwrap();
    // group addition on coordinates
    for x in 0..prod.group.order() {
        let (a, b) = (x / 4, x % 4);
        let (_, _, emb) = c.pc_group(&v.group);
        assert_eq!(m.apply(x), v.group.mul(emb[a], b));
    }
}

#[test]
fn centralizers_and_normalizers() {
    let w = group("W2").group;
    let c = w.omega1_center();
    assert_eq!(w.centralizer(c.subgroup()).order(), 32);
    let d = group("D32").group;
    for v in d.elementary_abelian_subgroups(None) {
        let s = v.subgroup();
        let nz = d.normalizer(s);
        let cz = d.centralizer(s);
        assert!(cz.is_subgroup_of(&nz));
        assert_eq!(nz.order() % cz.order(), 0);
    }
}

#[test]
fn maximal_elementary_abelian_centralizers_are_p_central() {
    for id in ["D8", "D16", "D32", "SD16", "SD32", "Z2^3"] {
        let g = group(id).group;
        let subs = g.elementary_abelian_subgroups(None);
        for v in &subs {
            let maximal = !subs.iter().any(|w| w.rank() > v.rank() && v.subgroup().is_subgroup_of(w.subgroup()));
            if maximal {
                let (k, _) = g.centralizer(v.subgroup()).as_group(&g).unwrap();
                assert!(k.is_p_central(), "{id}");
            }
        }
    }
}

#[test]
fn quillen_category_shapes() {
    for id in ["Q8", "W2", "Z2^2", "64#187"] {
        let q = group(id).group.quillen_category_ac();
        assert_eq!(q.objects.len(), 1, "{id}");
        assert!(q.edges.is_empty());
    }
    let d = group("D8").group;
    let q = d.quillen_category_ac();
    assert_eq!(q.objects.len(), 3);
    for o in &q.objects {
        assert!(q.center.subgroup().is_subgroup_of(o.subgroup.subgroup()));
    }
    for e in &q.edges {
        let r = q.objects[e.lower].subgroup.subgroup();
        assert_eq!(&e.sub.subgroup().conjugate(&d, e.conjugator), r);
    }
}

fn word_strategy(n: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    proptest::collection::vec((0..n, -3i64..4), 0..24)
}

fn table_fold(g: &Group, pres: &PcPresentation, w: &[(usize, i64)]) -> usize {
    w.iter().fold(0, |acc, &(k, e)| {
        let x = pres.generator(k);
        let xe = if e >= 0 { g.pow(x, e as u64) } else { g.pow(g.inv(x), (-e) as u64) };
        g.mul(acc, xe)
    })
}

fn table_split(g: &Group, pres: &PcPresentation, w: &[(usize, i64)]) -> usize {
    if w.len() <= 1 {
        return table_fold(g, pres, w);
    }
    let (a, b) = w.split_at(w.len() / 2);
    g.mul(table_split(g, pres, a), table_split(g, pres, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn collection_is_deterministic(idx in 0usize..4, seed in word_strategy(6)) {
        let id = ["Q16", "W2", "64#187", "SD32"][idx];
        let g = group(id);
        let n = g.presentation.num_gens();
        let w: Vec<(usize, i64)> = seed.into_iter().map(|(k, e)| (k % n, e)).collect();
        let stack = g.presentation.index_of(&g.presentation.normal_form(&w).unwrap().0);
        prop_assert_eq!(stack, table_fold(&g.group, &g.presentation, &w));
        prop_assert_eq!(stack, table_split(&g.group, &g.presentation, &w));
    }
}

#[test]
fn product_id_fingerprint() {
    let e = resolve("Z4×Z4").unwrap();
    assert_eq!(e.group.group.order(), 16);
    assert_eq!(e.group.group.omega1_center().rank(), 2);
}
