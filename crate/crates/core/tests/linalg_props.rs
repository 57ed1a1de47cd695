use std::collections::HashSet;

use pcoh::linalg::{FpMatrix, FpSubspace, FpVector};
use proptest::prelude::*;

fn matrix_strategy(p: u32, max_r: usize, max_c: usize) -> impl Strategy<Value = FpMatrix> {
    (1..=max_r, 1..=max_c).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(proptest::collection::vec(0..p, c), r)
            .prop_map(move |rows| FpMatrix::from_rows(p, c, &rows))
    })
}

/// Every vector of F_p^n spanned by the given rows, by brute enumeration.
fn span_set(p: u32, n: usize, rows: &[FpVector]) -> HashSet<Vec<u32>> {
    let mut set = HashSet::new();
    set.insert(vec![0; n]);
    for r in rows {
        let current: Vec<Vec<u32>> = set.iter().cloned().collect();
        for v in current {
            for c in 1..p {
                let w: Vec<u32> = (0..n).map(|i| (v[i] + c * r.get(i)) % p).collect();
                set.insert(w);
            }
        }
    }
    set
}

fn log_p(p: u32, size: usize) -> usize {
    let mut k = 0;
    let mut s = 1usize;
    while s < size {
        s *= p as usize;
        k += 1;
    }
    k
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity_mod2(m in matrix_strategy(2, 50, 70)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        for v in m.kernel().basis().row_vectors() {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn rank_nullity_mod5(m in matrix_strategy(5, 20, 25)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        prop_assert_eq!(m.image().dim(), m.rank());
    }

    #[test]
    fn rref_idempotent(m in matrix_strategy(3, 15, 15)) {
        let once = m.rref();
        let twice = once.matrix.rref();
        prop_assert_eq!(once.matrix, twice.matrix);
        prop_assert_eq!(once.pivots, twice.pivots);
    }

    #[test]
    fn dimension_formula_brute_force(
        p in prop_oneof![Just(2u32), Just(3u32)],
        seed_a in proptest::collection::vec(0u32..1000, 0..30),
        seed_b in proptest::collection::vec(0u32..1000, 0..30),
        n in 1usize..6,
    ) {
        let n = if p == 2 { n + 3 } else { n };
        let mk = |seed: &[u32]| -> Vec<FpVector> {
            seed.chunks(n).filter(|c| c.len() == n)
                .map(|c| FpVector::from_entries(p, &c.iter().map(|x| x % p).collect::<Vec<_>>()))
                .collect()
        };
        let (ra, rb) = (mk(&seed_a), mk(&seed_b));
        let a = FpSubspace::from_vectors(p, n, ra.clone());
        let b = FpSubspace::from_vectors(p, n, rb.clone());
        let i = a.intersect(&b).unwrap();
        let s = a.sum(&b).unwrap();
        prop_assert_eq!(a.dim() + b.dim(), i.dim() + s.dim());
        let sa = span_set(p, n, &ra);
        let sb = span_set(p, n, &rb);
        let inter: HashSet<_> = sa.intersection(&sb).cloned().collect();
        prop_assert_eq!(log_p(p, inter.len()), i.dim());
        prop_assert_eq!(span_set(p, n, i.basis().row_vectors()), inter);
        for v in &sa {
            prop_assert!(a.contains(&FpVector::from_entries(p, v)));
        }
    }

    #[test]
    fn kronecker_rank_multiplicative(a in matrix_strategy(2, 4, 4), b in matrix_strategy(2, 4, 4)) {
        prop_assert_eq!(a.kronecker(&b).rank(), a.rank() * b.rank());
    }

    #[test]
    fn preimage_is_exact(m in matrix_strategy(3, 6, 6), seed in proptest::collection::vec(0u32..3, 0..18)) {
        let rows = m.rows();
        let vs: Vec<FpVector> = seed.chunks(rows).filter(|c| c.len() == rows)
            .map(|c| FpVector::from_entries(3, c)).collect();
        let t = FpSubspace::from_vectors(3, rows, vs);
        let pre = m.solve_preimage(&t).unwrap();
        for v in pre.basis().row_vectors() {
            prop_assert!(t.contains(&m.mul_vec(v).unwrap()));
        }
        // dim pre = dim ker + dim(t ∩ im)
        let inter = t.intersect(&m.image()).unwrap();
        prop_assert_eq!(pre.dim(), m.kernel().dim() + inter.dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn packed_matches_generic(r in 1usize..200, c in 1usize..200, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let rows: Vec<Vec<u32>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(0..2)).collect()).collect();
        let packed = FpMatrix::from_rows(2, c, &rows);
        let generic = packed.with_layout(true);
        prop_assert!(packed.row(0).is_packed());
        prop_assert!(!generic.row(0).is_packed());
        let a = packed.rref();
        let b = generic.rref();
        prop_assert_eq!(&a.pivots, &b.pivots);
        for i in 0..r {
            for j in 0..c {
                prop_assert_eq!(a.matrix.get(i, j), b.matrix.get(i, j));
            }
        }
        let t = packed.transpose();
        let prod = packed.mul(&t).unwrap();
        let prod_g = generic.mul(&generic.transpose()).unwrap();
        prop_assert_eq!(prod, prod_g.with_layout(false));
    }
}

#[test]
fn identity_and_zero_images() {
    assert!(FpMatrix::identity(2, 4).image().is_full());
    assert_eq!(FpMatrix::identity(7, 4).kernel().dim(), 0);
}
