use proptest::prelude::*;
use rand::Rng;
use sepcheck_core::random::{random_block, random_structured_state_with};
use sepcheck_core::*;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn permutation_strategy(n: usize) -> impl Strategy<Value = QubitPermutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|p| QubitPermutation::new(p).unwrap())
}

/// Single-qubit masks drawn from {01, 10, 11}.
fn qubit_masks<R: Rng>(n: usize, rng: &mut R) -> Vec<Option<SupportMask>> {
    (0..n)
        .map(|_| Some(["01", "10", "11"][rng.gen_range(0..3)].parse().unwrap()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_is_associative(seed in any::<u64>(), a in 1usize..4, b in 1usize..4, c in 1usize..4) {
        let mut rng = rng_from_seed(seed);
        let x = random_block(a, None, &mut rng).unwrap();
        let y = random_block(b, None, &mut rng).unwrap();
        let z = random_block(c, None, &mut rng).unwrap();
        let left = x.tensor(&y).tensor(&z);
        let right = x.tensor(&y.tensor(&z));
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn tensor_multiplies_norms(seed in any::<u64>(), a in 1usize..5, b in 1usize..5) {
        let mut rng = rng_from_seed(seed);
        let x = random_block(a, None, &mut rng).unwrap();
        let y = random_block(b, None, &mut rng).unwrap();
        prop_assert!((x.tensor(&y).norm_sqr() - x.norm_sqr() * y.norm_sqr()).abs() <= 1e-12);
    }

    #[test]
    fn permutation_inverse_is_exact(
        (n, perm) in (1usize..9).prop_flat_map(|n| (Just(n), permutation_strategy(n))),
        seed in any::<u64>(),
    ) {
        let mut rng = rng_from_seed(seed);
        let s = random_block(n, None, &mut rng).unwrap();
        let back = s.permute_qubits(&perm).unwrap().permute_qubits(&perm.inverse()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn block_respecting_permutations_commute_with_tensor(
        seed in any::<u64>(),
        (a, pa) in (1usize..5).prop_flat_map(|n| (Just(n), permutation_strategy(n))),
        (b, pb) in (1usize..5).prop_flat_map(|n| (Just(n), permutation_strategy(n))),
    ) {
        let mut rng = rng_from_seed(seed);
        let x = random_block(a, None, &mut rng).unwrap();
        let y = random_block(b, None, &mut rng).unwrap();
        let joint: Vec<usize> = pa.as_slice().iter().copied()
            .chain(pb.as_slice().iter().map(|&q| q + a))
            .collect();
        let joint = QubitPermutation::new(joint).unwrap();
        let lhs = x.tensor(&y).permute_qubits(&joint).unwrap();
        let rhs = x.permute_qubits(&pa).unwrap().tensor(&y.permute_qubits(&pb).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn products_pass_full_test_and_round_trip(seed in any::<u64>(), n in 1usize..9, masked in any::<bool>()) {
        let mut rng = rng_from_seed(seed);
        let masks = masked.then(|| qubit_masks(n, &mut rng));
        let s = random_structured_state_with(&vec![1; n], masks.as_deref(), &mut rng).unwrap();
        let mask = amplitude_abstraction(&s, tol().zero);
        prop_assert!(is_well_formed_mask(&mask).unwrap());
        let r = is_fully_separable(&s, &tol());
        prop_assert!(r.separable);
        prop_assert!(r.witness.is_none());
        let factors = r.factors.unwrap();
        let back = PureState::product_of(&factors).unwrap();
        prop_assert!(back.max_abs_diff(&s) < 1e-9);
        for f in &factors[1..] {
            let lead = if f.amp0.norm() > tol().zero { f.amp0 } else { f.amp1 };
            prop_assert!(lead.im.abs() < 1e-12 && lead.re > 0.0);
        }
    }

    #[test]
    fn products_satisfy_adjacent_pair_identity(seed in any::<u64>(), n in 2usize..9) {
        let s = random_structured_state(&vec![1; n], seed, None).unwrap();
        let a = s.amplitudes();
        let out = pair_product_invariant(a, tol().pp).unwrap();
        prop_assert!(out.invariant);
        for i in 1..(1usize << (n - 1)) {
            let lhs = a[2 * i - 1] * a[2 * i];
            let rhs = a[2 * i - 2] * a[2 * i + 1];
            prop_assert!((lhs - rhs).norm() <= 1e-9 * 1f64.max(lhs.norm()).max(rhs.norm()));
        }
    }

    #[test]
    fn full_test_matches_oracle(seed in any::<u64>(), n in 2usize..8) {
        let mut rng = rng_from_seed(seed);
        let blocks = random_partition(n, &mut rng);
        let s = planted_state(&blocks, &mut rng).unwrap();
        let r = is_fully_separable(&s, &tol());
        prop_assert_eq!(r.separable, oracle_fully_separable(&s, tol().rank));
        prop_assert_eq!(r.factors.is_some(), r.separable);
        prop_assert_eq!(r.witness.is_some(), !r.separable);
    }

    #[test]
    fn tensor_products_split_at_their_seam(seed in any::<u64>(), a in 1usize..5, b in 1usize..5, mask_a in any::<bool>()) {
        let mut rng = rng_from_seed(seed);
        let left_mask = mask_a.then(|| {
            let len = 1usize << a;
            let keep = rng.gen_range(1..len);
            SupportMask::from_bools((0..len).map(|i| i >= keep || i == 0 || rng.gen_bool(0.3)))
        });
        let left = random_block(a, left_mask.as_ref(), &mut rng).unwrap();
        let right_mask = {
            let len = 1usize << b;
            let first = rng.gen_range(0..len);
            SupportMask::from_bools((0..len).map(|i| i == first || (i > first && rng.gen_bool(0.5))))
        };
        let right = random_block(b, Some(&right_mask), &mut rng).unwrap();
        let s = left.tensor(&right);
        prop_assert!(oracle_pq(&s, a, tol().rank).unwrap());
        let r = is_pq_separable(&s, a, &tol()).unwrap();
        prop_assert!(r.separable, "{:?}", r.witness);
        let (l, rt) = r.factors.unwrap();
        prop_assert!(l.tensor(&rt).max_abs_diff(&s) < 1e-9);
        prop_assert!((l.norm_sqr() - 1.0).abs() < 1e-9);
        prop_assert!((rt.norm_sqr() - 1.0).abs() < 1e-9);
        prop_assert!(r.counters.cross_comparisons <= ((1u64 << a) - 1) * ((1u64 << b) - 1));
    }

    #[test]
    fn full_separability_implies_every_split(seed in any::<u64>(), n in 2usize..8) {
        let s = random_structured_state(&vec![1; n], seed, None).unwrap();
        for p in 1..n {
            prop_assert!(is_pq_separable(&s, p, &tol()).unwrap().separable);
        }
    }

    #[test]
    fn pq_test_matches_oracle_on_traps(seed in any::<u64>(), n in 2usize..8, p_pick in any::<usize>()) {
        let p = 1 + p_pick % (n - 1);
        let mut rng = rng_from_seed(seed);
        let s = zero_pattern_trap(n, p, &mut rng).unwrap();
        let pivot = find_pivot(&s, p, tol().zero).unwrap();
        let mut counters = Default::default();
        let literal = pq::cross_product_condition(&s, p, pivot, tol().pp, &mut counters).unwrap();
        prop_assert!(literal.is_none());
        prop_assert!(!oracle_pq(&s, p, tol().rank).unwrap());
        prop_assert!(!is_pq_separable(&s, p, &tol()).unwrap().separable);
    }

    #[test]
    fn decompose_structure_follows_permutations(
        seed in any::<u64>(),
        (n, perm) in (2usize..7).prop_flat_map(|n| (Just(n), permutation_strategy(n))),
    ) {
        let mut rng = rng_from_seed(seed);
        let blocks = random_partition(n, &mut rng);
        let s = planted_state(&blocks, &mut rng).unwrap();
        let tree = decompose(&s, &tol()).unwrap();
        prop_assert_eq!(tree.block_sets(), blocks.clone());
        prop_assert!(tree.reconstruct().unwrap().max_abs_diff(&s) < 1e-9);
        prop_assert_eq!(tree.blocks.len() == n, is_fully_separable(&s, &tol()).separable);

        // output qubit t carries input qubit perm[t]
        let moved = s.permute_qubits(&perm).unwrap();
        let inv = perm.inverse();
        let mut expected: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| {
                let mut m: Vec<usize> = b.iter().map(|&q| inv.as_slice()[q]).collect();
                m.sort_unstable();
                m
            })
            .collect();
        expected.sort();
        let mut got = decompose(&moved, &tol()).unwrap().block_sets();
        got.sort();
        prop_assert_eq!(got, expected);
    }
}

#[test]
fn enumeration_members_pass_and_count() {
    for n in 1..=6 {
        let all = enumerate_well_formed(n).unwrap();
        assert_eq!(all.len(), 3usize.pow(n as u32));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|m| is_well_formed_mask(m).unwrap()));
        assert!(all.iter().all(|m| m.popcount().is_power_of_two()));
    }
}

#[test]
fn irreducible_blocks_have_no_separating_subset() {
    let mut rng = rng_from_seed(2024);
    for _ in 0..20 {
        let blocks = random_partition(6, &mut rng);
        let s = planted_state(&blocks, &mut rng).unwrap();
        let tree = decompose(&s, &tol()).unwrap();
        for block in &tree.blocks {
            let m = block.qubits.len();
            for mask in 1..(1usize << m) - 1 {
                let subset: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
                let r = is_pq_separable_subset(&block.state, &subset, &tol()).unwrap();
                assert!(
                    !r.separable,
                    "block {:?} splits on {subset:?}",
                    block.qubits
                );
            }
        }
    }
}

#[test]
fn spectral_oracle_agrees_with_minor_oracle() {
    let mut rng = rng_from_seed(77);
    for n in 2..7 {
        for _ in 0..30 {
            let blocks = random_partition(n, &mut rng);
            let s = planted_state(&blocks, &mut rng).unwrap();
            for p in 1..n {
                let m = ReshapedMatrix::new(&s, p).unwrap();
                let weight = m.top_singular_weight(500);
                let rank_one = oracle_pq(&s, p, 1e-9).unwrap();
                assert_eq!(
                    weight >= 1.0 - 1e-9,
                    rank_one,
                    "n={n} p={p} weight={weight}"
                );
            }
        }
    }
}
