use std::sync::Arc;

use pcoh::catalog::{identify_as, resolve};
use pcoh::group::{quotient_by_central, Group, PcGroup, PcPresentation};
use pcoh::invariants::{e_of, h_of, polynomial_hilbert, report, GroupCohomology, GroupType, InvariantError, Role};
use pcoh::linalg::FpSubspace;
use pcoh::resolution::{inflation_map, MinimalResolution, DEFAULT_BUDGET};
use proptest::prelude::*;

fn ctx(id: &str, n: usize) -> GroupCohomology {
    let g = resolve(id).unwrap().group.group;
    GroupCohomology::new(id, g, n, DEFAULT_BUDGET).unwrap()
}

fn ctx_of(label: &str, pres: PcPresentation, n: usize) -> GroupCohomology {
    let g = PcGroup::new(pres).unwrap().group;
    GroupCohomology::new(label, g, n, DEFAULT_BUDGET).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Z/p^{k₁} × Z/p^{k₂} × … as a pc presentation.
fn abelian(p: u32, exps: &[usize]) -> PcPresentation {
    let n: usize = exps.iter().sum();
    let mut pres = PcPresentation::elementary_abelian(p, n).unwrap();
    let mut at = 0;
    for &k in exps {
        for i in at..at + k - 1 {
            let mut w = vec![0; n];
            w[i + 1] = 1;
            pres.set_power(i, w).unwrap();
        }
        at += k;
    }
    pres
}

fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    let n = a.len().min(b.len());
    (0..n).map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum()).collect()
}

const P_CENTRAL: [&str; 6] = ["Z4", "Z8", "Q8", "Q16", "W2", "Q8×Z4"];
const NON_P_CENTRAL: [&str; 3] = ["D8", "D16", "SD16"];

#[test]
fn e_and_h_formulas() {
    let t = |e: &[u32]| GroupType { entries: e.to_vec(), certified: true };
    assert_eq!((e_of(&t(&[8, 8])), h_of(&t(&[8, 8]), 2)), (14, 4));
    assert_eq!((e_of(&t(&[4, 2])), h_of(&t(&[4, 2]), 2)), (4, 2));
    assert_eq!((e_of(&t(&[1, 1, 1])), h_of(&t(&[1, 1, 1]), 2)), (0, 0));
    assert_eq!((e_of(&t(&[2])), h_of(&t(&[2]), 2)), (1, 1));
    assert_eq!((e_of(&t(&[6, 1])), h_of(&t(&[6, 1]), 3)), (5, 2));
    assert_eq!(polynomial_hilbert(&[2, 2], 4), vec![1, 0, 2, 0, 3]);
    assert_eq!(polynomial_hilbert(&[1], 3), vec![1, 1, 1, 1]);
}

#[test]
fn restriction_images() {
    // Z/4: F_2[x²]
    let z4 = ctx("Z4", 8);
    let (im, _) = z4.restriction_image().unwrap();
    assert_eq!(im.dims, vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
    // G = C: everything
    for (id, c) in [("Z2", 1usize), ("Z2^2", 2), ("Z2^3", 3)] {
        let g = ctx(id, 5);
        let (im, spaces) = g.restriction_image().unwrap();
        for (k, s) in spaces.iter().enumerate() {
            assert!(s.is_full(), "{id} degree {k}");
            assert_eq!(im.dims[k], binomial(k + c - 1, c - 1));
        }
    }
}

#[test]
fn types_of_the_corpus() {
    for (id, n, t) in [
        ("Q8", 8, vec![4]),
        ("W2", 6, vec![2, 2, 2]),
        ("Z4", 4, vec![2]),
        ("Z16", 4, vec![2]),
        ("Z2^3", 3, vec![1, 1, 1]),
        ("D8", 6, vec![2]),
        ("SD16", 6, vec![4]),
        ("Q8×Z4", 6, vec![4, 2]),
        ("Z4×Z4", 4, vec![2, 2]),
    ] {
        let g = ctx(id, n);
        let (ty, flag) = g.type_of().unwrap();
        assert_eq!(ty.entries, t, "{id}");
        assert!(ty.certified && flag.saturated, "{id}");
        for w in flag.levels.windows(2) {
            assert!(w[0].is_subspace_of(&w[1]), "{id}: flag must increase");
        }
    }
}

#[test]
fn uncertified_type_reports_a_lower_bound() {
    // The Q8 flag saturates at x⁴; at N = 3 it cannot.
    let g = ctx("Q8", 3);
    let ty = g.group_type().unwrap();
    assert!(!ty.certified);
    assert_eq!(ty.entries, vec![4]);
    assert!(matches!(g.duflot_lift(), Err(InvariantError::Precondition(_))));
    let r = report(&g);
    assert!(!r.certified.group_type && !r.certified.d0);
}

#[test]
fn odd_prime_types() {
    assert_eq!(ctx_of("Z9", abelian(3, &[2]), 6).group_type().unwrap().entries, vec![2]);
    assert_eq!(ctx_of("Z27", abelian(3, &[3]), 6).group_type().unwrap().entries, vec![2]);
    assert_eq!(ctx_of("Z3^2", abelian(3, &[1, 1]), 4).group_type().unwrap().entries, vec![1, 1]);
    let g = ctx_of("Z9×Z3", abelian(3, &[2, 1]), 6);
    assert_eq!(g.group_type().unwrap().entries, vec![2, 1]);
    assert_eq!((g.e().unwrap(), g.h().unwrap()), (1, 1));
    // Exterior plus polynomial generator for the split factor.
    let degs: Vec<usize> = g.duflot_lift().unwrap().generators.iter().map(|(d, _)| *d).collect();
    assert_eq!(degs, vec![1, 2, 2]);
    assert_eq!(g.qa_cohomology().unwrap().dims, vec![1, 1, 0, 0, 0, 0, 0]);
}

#[test]
fn duflot_subalgebras() {
    let w2 = ctx("W2", 6);
    let d = w2.duflot_lift().unwrap();
    assert_eq!(d.generators.iter().map(|(k, _)| *k).collect::<Vec<_>>(), vec![2, 2, 2]);
    assert_eq!(d.algebra_dims, vec![1, 0, 3, 0, 6, 0, 10]);
    // Restrictions of the lifts are the chosen image generators.
    let r = w2.restriction_to_center().unwrap();
    let imgs: Vec<_> = d.generators.iter().map(|(k, xi)| r.apply(*k, xi)).collect();
    let span = FpSubspace::from_vectors(2, imgs[0].len(), imgs.clone());
    assert_eq!(span.dim(), 3);
    assert_eq!(span, w2.restriction_image().unwrap().1[2], "lifts restrict onto im(i*) in degree 2");

    let e = ctx("Z2^3", 4);
    let d = e.duflot_lift().unwrap();
    assert_eq!(d.algebra_dims, e.betti().to_vec());
    let z4 = ctx("Z4", 4);
    assert_eq!(z4.duflot_lift().unwrap().generators.len(), 1);
    assert_eq!(z4.duflot_lift().unwrap().generators[0].0, 2);
}

#[test]
fn indecomposables_and_primitives_of_w2() {
    let g = ctx("W2", 8);
    assert_eq!(g.qa_cohomology().unwrap().dims, vec![1, 2, 2, 1, 0, 0, 0, 0, 0]);
    let pc = g.pc_primitive_dims(false).unwrap();
    assert_eq!(pc.dims, vec![1, 2, 0, 1, 0, 0, 0, 0, 0]);
    // P_C H² is exactly the inflated part, which vanishes for W2.
    let pg = resolve("W2").unwrap().group;
    let (qp, q) = quotient_by_central(&pg, g.center().subgroup()).unwrap();
    let rq = MinimalResolution::build(Arc::new(qp.to_group().unwrap()), 2, DEFAULT_BUDGET).unwrap();
    let inf = inflation_map(g.resolution(), &q, &rq, 2).unwrap();
    assert_eq!(inf.image(2), g.primitive_spaces().unwrap()[2]);
    assert_eq!(inf.image(1), g.primitive_spaces().unwrap()[1]);
}

#[test]
fn p_central_duality() {
    for id in P_CENTRAL {
        let g = ctx(id, 8);
        let e = g.e().unwrap() as usize;
        let qa = g.qa_cohomology().unwrap();
        let pc = g.pc_primitive_dims(false).unwrap();
        assert!(qa.is_palindromic(e), "{id}: {:?}", qa.dims);
        assert_eq!(qa.top_degree(), e as i64, "{id}");
        assert_eq!((qa.dims[e], pc.dims[e]), (1, 1), "{id}");
        assert!(pc.dims[e + 1..].iter().all(|&x| x == 0), "{id}");
    }
}

#[test]
fn primitives_embed_in_indecomposables() {
    for id in P_CENTRAL.iter().chain(&NON_P_CENTRAL) {
        let g = ctx(id, 7);
        let qa = g.qa_cohomology().unwrap();
        let pc = g.pc_primitive_dims(false).unwrap();
        let qa_c = g.qa_cess_dims().unwrap();
        let pc_c = g.pc_primitive_dims(true).unwrap();
        for k in 0..=7 {
            assert!(pc.dims[k] <= qa.dims[k], "{id} H degree {k}");
            assert!(pc_c.dims[k] <= qa_c.dims[k], "{id} Cess degree {k}");
        }
        assert_eq!(pc.dims[0], 1);
    }
}

#[test]
fn freeness_violation_is_a_hard_failure() {
    // Degree-zero classes alone are not closed under the Duflot generators.
    let g = ctx("Z4", 4);
    let mut m: Vec<FpSubspace> = g.betti().iter().map(|&b| FpSubspace::zero(2, b)).collect();
    m[0] = FpSubspace::full(2, 1);
    assert!(matches!(g.qa_dims(&m, Role::QaH), Err(InvariantError::Theorem(_))));
}

#[test]
fn central_essential_cohomology() {
    let d8 = ctx("D8", 8);
    assert_eq!(d8.cess_dims().unwrap().total(), 0);
    assert_eq!(d8.e_prime().unwrap().value, -1);
    assert!(d8.e_prime().unwrap().certified);
    let sd = ctx("SD16", 8);
    let q = sd.qa_cess_dims().unwrap();
    assert!(q.total() > 0);
    assert!(q.is_palindromic(3), "r − c = 1 duality about e = 3: {:?}", q.dims);
    let ep = sd.e_prime().unwrap();
    assert_eq!((ep.value, ep.certified, ep.heuristic), (2, true, false));
    // e′ = e − (lowest degree of Cess)
    let low = sd.cess_dims().unwrap().dims.iter().position(|&d| d > 0).unwrap() as i64;
    assert_eq!(ep.value, sd.e().unwrap() - low);
    // p-central: Cess is all of H^*
    let q8 = ctx("Q8", 4);
    assert_eq!(q8.cess_dims().unwrap().dims, q8.betti().to_vec());
    assert!(q8.cess_test_subgroups().is_empty());
}

#[test]
fn e_double_prime_bounded_by_e_prime_and_e() {
    for id in P_CENTRAL.iter().chain(&NON_P_CENTRAL) {
        let g = ctx(id, 8);
        let (e1, e2) = (g.e_prime().unwrap().value, g.e_double_prime().unwrap().value);
        assert!(e2 <= e1, "{id}");
        assert!(e1 <= g.e().unwrap(), "{id}");
        if !g.is_p_central() {
            assert!(e1 < g.e().unwrap(), "{id}");
        }
    }
}

#[test]
fn detection_numbers() {
    assert_eq!(ctx("Q8", 8).d0_d1_p_central().unwrap(), (3, 5));
    assert_eq!(ctx("Z2^3", 4).d0_d1_p_central().unwrap(), (0, 0));
    assert!(matches!(ctx("D8", 4).d0_d1_p_central(), Err(InvariantError::Precondition(_))));
    assert_eq!(pcoh::invariants::sylow_transfer(&ctx("Q8", 6)).unwrap(), (3, 5));
    for (id, d0) in [("D8", 0), ("D16", 0), ("SD16", 2), ("Q8", 3), ("Z4", 1)] {
        let g = ctx(id, 8);
        let b = g.d0_general().unwrap();
        assert_eq!(b.value, d0, "{id}");
        assert!(b.certified, "{id}");
    }
    // p-central: only V = C(G) qualifies
    let w2 = ctx("W2", 6);
    let dv = w2.detecting_subgroups();
    assert_eq!(dv.len(), 1);
    assert_eq!(dv[0].0.order(), 8);
}

#[test]
fn detection_from_the_rd_equalizer() {
    for id in ["D8", "SD16", "Q8", "Z4", "W2", "D16"] {
        let g = ctx(id, 7);
        assert_eq!(g.d0_from_rd().unwrap(), g.d0_general().unwrap().value, "{id}");
    }
}

#[test]
fn essential_top_classes() {
    for (id, e) in [("W2", 3), ("Q8", 3), ("Q8×Z4", 4), ("Z4", 1)] {
        let g = ctx(id, 6);
        let (deg, z) = g.top_primitive_class().unwrap();
        assert_eq!(deg, e, "{id}");
        assert!(g.is_essential(deg, &z).unwrap(), "{id}");
    }
    // Essential classes restrict to zero on every Z/4 of Q8; the degree-1 classes do not.
    let q8 = ctx("Q8", 4);
    for i in 0..2 {
        assert!(!q8.is_essential(1, &pcoh::linalg::FpVector::unit(2, 2, i)).unwrap());
    }
    assert!(matches!(ctx("Z2^2", 4).top_primitive_class(), Err(InvariantError::Precondition(_))));
}

#[test]
fn equalizers_match_p_central_shortcuts() {
    for id in P_CENTRAL {
        let g = ctx(id, 6);
        let c = g.center().rank();
        let pc = g.pc_primitive_dims(false).unwrap();
        assert_eq!(g.lf_dims().unwrap().dims, pc.dims, "{id}");
        for d in 0..=6 {
            let rd = g.bar_rd_dims(d).unwrap();
            let expect: Vec<usize> = (0..=6).map(|k| binomial(k + c - 1, c - 1) * pc.dims[d]).collect();
            assert_eq!(rd.dims, expect, "{id} d = {d}");
        }
    }
}

#[test]
fn lf_of_non_p_central_groups() {
    // D8: detected on the Klein fours, LF is only the unit.
    assert_eq!(ctx("D8", 6).lf_dims().unwrap().dims, vec![1, 0, 0, 0, 0, 0, 0]);
    // R̄_0 of D8: pairs of classes in F_2[α, β(α+β)] (Weyl invariants of each
    // Klein four) agreeing on the center, where both restrict onto F_2[u²].
    // Dimensions 2·(1,1,2,2,3,3,4) − (1,0,1,0,1,0,1), i.e. those of H^*(D8).
    let r0 = ctx("D8", 6).bar_rd_dims(0).unwrap();
    assert_eq!(r0.dims, vec![1, 2, 3, 4, 5, 6, 7]);
}

#[test]
fn product_laws() {
    let a = ctx("Q8", 8);
    let b = ctx("Z4", 8);
    let ab = ctx("Q8×Z4", 8);
    assert_eq!(ab.group_type().unwrap().entries, vec![4, 2]);
    assert_eq!(ab.e().unwrap(), a.e().unwrap() + b.e().unwrap());
    assert_eq!(ab.h().unwrap(), a.h().unwrap().max(b.h().unwrap()));
    let (d0a, d1a) = a.d0_d1_p_central().unwrap();
    let (d0b, d1b) = b.d0_d1_p_central().unwrap();
    assert_eq!(ab.d0_d1_p_central().unwrap(), (d0a + d0b, (d1a + d0b).max(d0a + d1b)));
    assert_eq!(ab.d0_d1_p_central().unwrap(), (4, 6));
    assert_eq!(ab.qa_cohomology().unwrap().dims, convolve(&a.qa_cohomology().unwrap().dims, &b.qa_cohomology().unwrap().dims));
    assert_eq!(
        ab.pc_primitive_dims(false).unwrap().dims,
        convolve(&a.pc_primitive_dims(false).unwrap().dims, &b.pc_primitive_dims(false).unwrap().dims)
    );
    assert_eq!(ab.betti(), convolve(a.betti(), b.betti()));

    let zz = ctx("Z4×Z4", 8);
    assert_eq!(zz.group_type().unwrap().entries, vec![2, 2]);
    assert_eq!(zz.d0_d1_p_central().unwrap(), (2, 3));
    assert_eq!(zz.e_prime().unwrap().value, 2 * b.e_prime().unwrap().value);

    // Cess(G × H) = Cess(G) ⊗ Cess(H), and e′ adds.
    let sd = ctx("SD16", 7);
    let z2 = ctx("Z2", 7);
    let prod = ctx("SD16×Z2", 7);
    assert_eq!(prod.cess_dims().unwrap().dims, convolve(&sd.cess_dims().unwrap().dims, &z2.cess_dims().unwrap().dims));
    assert_eq!(prod.e_prime().unwrap().value, sd.e_prime().unwrap().value + z2.e_prime().unwrap().value);
    assert_eq!(prod.d0_general().unwrap().value, sd.d0_general().unwrap().value);
    assert_eq!(ctx("D8×Z2", 6).cess_dims().unwrap().total(), 0);
}

#[test]
fn report_fields() {
    let r = report(&ctx("Q8", 8));
    assert_eq!(r.group_type, Some(vec![4]));
    assert_eq!((r.e, r.h, r.d0, r.d1), (Some(3), Some(2), Some(3), Some(5)));
    assert!(r.p_central && r.certified.all());
    let r = report(&ctx("D8", 8));
    assert_eq!((r.rank, r.center_rank, r.p_central), (2, 1, false));
    assert_eq!((r.e, r.e_prime, r.d0, r.d1), (Some(1), Some(-1), Some(0), None));
    assert_eq!(r.cess_nonzero, Some(false));
    let json = serde_json::to_value(&r).unwrap();
    for key in [
        "group_id", "p", "order", "rank", "center_rank", "p_central", "type", "e", "h", "d0", "d1", "e_prime",
        "e_double_prime", "cess_nonzero", "truncation_degree", "certified",
    ] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    assert!(json["d1"].is_null());
    let back: pcoh::invariants::InvariantReport = serde_json::from_value(json).unwrap();
    assert_eq!(back, r);
}

#[test]
fn external_presentation_of_64_108() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/64_108.pcp");
    let entry = identify_as(path, "64#108").unwrap();
    let g: &Group = &entry.group.group;
    // Structure: C = Φ(G) of rank 2, |[G,G]| = 2, a unique maximal V of rank 3 with |C_G(V)| = 32.
    assert_eq!(g.frattini().len(), 4);
    assert_eq!(g.omega1_center().rank(), 2);
    let maxv: Vec<_> = g.elementary_abelian_subgroups(None).into_iter().filter(|v| v.rank() == 3).collect();
    assert_eq!(maxv.len(), 1);
    assert_eq!(g.centralizer(maxv[0].subgroup()).order(), 32);
    assert!(identify_as(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/64_108.pcp"), "64#999").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Abelian 2-groups: one entry 2 per cyclic factor of order ≥ 4, 1 per Z/2.
    #[test]
    fn abelian_types(exps in prop::collection::vec(1usize..=3, 1..=3)) {
        prop_assume!(exps.iter().sum::<usize>() <= 5);
        let g = ctx_of("abelian", abelian(2, &exps), 4);
        let mut want: Vec<u32> = exps.iter().map(|&k| if k == 1 { 1 } else { 2 }).collect();
        want.sort_unstable_by(|a, b| b.cmp(a));
        let t = g.group_type().unwrap();
        prop_assert_eq!(&t.entries, &want);
        let e = g.e().unwrap();
        prop_assert_eq!(e, want.iter().map(|&a| a as i64 - 1).sum::<i64>());
        let qa = g.qa_cohomology().unwrap();
        prop_assert!(qa.is_palindromic(e as usize));
        prop_assert_eq!(qa.total(), 1usize << e);
        prop_assert_eq!(g.lf_dims().unwrap().dims, g.pc_primitive_dims(false).unwrap().dims);
    }
}
