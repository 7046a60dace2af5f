mod common;

use common::*;
use minrank_core::code::{
    derive_decoding, is_valid, low_weight_satisfied_count, low_weight_support, satisfies,
    satisfies_with_queries, simulate_broadcast, QUERY_SUBSET_BUDGET,
};
use minrank_core::gf::SPAN_BUDGET;
use minrank_core::{Field, Graph, IndexCode, Matrix};
use proptest::prelude::*;

fn small_field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![Field::GF2, Field::GF3])
}

/// A directed graph on n vertices with an n×l generator over GF(2) or GF(3).
fn instance(max_n: usize, max_l: usize) -> impl Strategy<Value = (Graph, IndexCode)> {
    (1..=max_n, 1..=max_l, small_field(), any::<u64>()).prop_flat_map(|(n, l, f, mask)| {
        let arcs = n * (n - 1);
        let g = Graph::from_arc_mask(n, if arcs >= 64 { mask } else { mask & ((1 << arcs) - 1) }).unwrap();
        matrix(f, n, l).prop_map(move |m| (g.clone(), IndexCode::new(m).unwrap()))
    })
}

/// Some `E·c` with `c` supported inside a `k`-subset of columns satisfies `i`.
fn satisfied_through_queries(g: &Graph, e: &Matrix, i: usize, k: usize) -> bool {
    let f = e.field();
    let l = e.cols();
    (0u32..1 << l).filter(|s| s.count_ones() as usize <= k).any(|s| {
        let cols: Vec<usize> = (0..l).filter(|j| s >> j & 1 == 1).collect();
        words(f.order(), cols.len()).into_iter().any(|c| {
            let v: Vec<u8> = (0..e.rows())
                .map(|r| {
                    cols.iter()
                        .zip(&c)
                        .fold(0u8, |acc, (&j, &x)| f.add(acc, f.mul(e.get(r, j), x)))
                })
                .collect();
            satisfies_def(g, &v, i)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn rank_test_matches_span_search((g, code) in instance(6, 6)) {
        let span = span_brute(code.generator());
        for i in 0..g.n() {
            let brute = span.iter().any(|v| satisfies_def(&g, v, i));
            prop_assert_eq!(satisfies(&g, &code, i).unwrap(), brute, "vertex {}", i);
        }
    }

    #[test]
    fn query_test_matches_brute_force((g, code) in instance(5, 4)) {
        for i in 0..g.n() {
            let mut last = false;
            for q in 1..=code.len() + 1 {
                let got = satisfies_with_queries(&g, &code, i, q, QUERY_SUBSET_BUDGET).unwrap();
                prop_assert_eq!(got, satisfied_through_queries(&g, code.generator(), i, q));
                prop_assert!(got || !last, "not monotone in q");
                last = got;
            }
            prop_assert_eq!(last, satisfies(&g, &code, i).unwrap());
        }
    }

    #[test]
    fn more_side_information_never_hurts((g, code) in instance(6, 5), a in any::<usize>(), b in any::<usize>()) {
        let n = g.n();
        prop_assume!(n >= 2);
        let (i, j) = (a % n, b % n);
        prop_assume!(i != j && !g.has_arc(i, j));
        let bigger = g.with_arc(i, j).unwrap();
        for v in 0..n {
            if satisfies(&g, &code, v).unwrap() {
                prop_assert!(satisfies(&bigger, &code, v).unwrap());
            }
        }
    }

    #[test]
    fn low_weight_support_bound((_, code) in instance(8, 5)) {
        let n = code.n();
        let span = span_brute(code.generator());
        for r in 0..=n {
            let support = low_weight_support(&code, r, SPAN_BUDGET).unwrap();
            prop_assert!(support.len() <= r * code.len());
            let brute: Vec<usize> = (0..n)
                .filter(|&j| span.iter().any(|v| weight(v) <= r && v[j] != 0))
                .collect();
            prop_assert_eq!(support, brute);
        }
    }

    #[test]
    fn low_weight_satisfied_count_bound((g, code) in instance(8, 4)) {
        let n = g.n();
        let r = n / (2 * code.len());
        let count = low_weight_satisfied_count(&g, &code, r, SPAN_BUDGET).unwrap();
        prop_assert!(2 * count <= n);
        let support = low_weight_support(&code, r, SPAN_BUDGET).unwrap();
        prop_assert!(count <= support.len());
    }

    #[test]
    fn derived_decoders_recover_every_word((g, code) in instance(5, 5)) {
        prop_assume!(is_valid(&g, &code).unwrap());
        let scheme = derive_decoding(&g, &code, None, QUERY_SUBSET_BUDGET).unwrap();
        scheme.check(&g, &code).unwrap();
        for x in words(code.field().order(), g.n()) {
            prop_assert_eq!(simulate_broadcast(&g, &code, &scheme, &x).unwrap(), x);
        }
    }

    #[test]
    fn query_limited_decoders_respect_the_limit((g, code) in instance(5, 4), q in 1usize..4) {
        match derive_decoding(&g, &code, Some(q), QUERY_SUBSET_BUDGET) {
            Ok(scheme) => {
                prop_assert!(scheme.query_complexity() <= q);
                scheme.check(&g, &code).unwrap();
                for x in words(code.field().order(), g.n()) {
                    prop_assert_eq!(simulate_broadcast(&g, &code, &scheme, &x).unwrap(), x);
                }
            }
            Err(minrank_core::Error::Unsatisfied { vertex, .. }) => {
                prop_assert!(!satisfied_through_queries(&g, code.generator(), vertex, q));
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}
