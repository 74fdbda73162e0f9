use plateau_core::boolfun::mobius_in_place;
use plateau_core::regularity::{full_characterization, Verdict};
use plateau_core::transform::{fourier_relation_holds, parseval_check};
use plateau_core::{classify_plateaued, fourier, walsh_hadamard, AnalysisConfig, BooleanFunction, CayleyGraph};
use proptest::prelude::*;

fn function(max_n: u32) -> impl Strategy<Value = BooleanFunction> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), 1usize << n).prop_map(|t| BooleanFunction::from_vec(t).unwrap())
    })
}

fn pair(max_n: u32) -> impl Strategy<Value = (BooleanFunction, BooleanFunction)> {
    (1..=max_n).prop_flat_map(|n| {
        let v = proptest::collection::vec(any::<bool>(), 1usize << n);
        (v.clone(), v).prop_map(|(a, b)| {
            (
                BooleanFunction::from_vec(a).unwrap(),
                BooleanFunction::from_vec(b).unwrap(),
            )
        })
    })
}

proptest! {
    #[test]
    fn mobius_is_an_involution(f in function(10)) {
        let mut t = f.truth_table().to_vec();
        mobius_in_place(&mut t);
        mobius_in_place(&mut t);
        prop_assert_eq!(t, f.truth_table());
    }

    #[test]
    fn anf_round_trip(f in function(9)) {
        prop_assert_eq!(f.to_anf().to_function(), f.clone());
        let text = f.to_anf().to_string();
        prop_assert_eq!(plateau_core::parse_anf(&text, f.n()).unwrap().to_function(), f);
    }

    #[test]
    fn text_encodings_round_trip(f in function(10)) {
        prop_assert_eq!(BooleanFunction::from_bit_string(&f.to_bit_string()).unwrap(), f.clone());
        if let Some(hex) = f.to_hex() {
            prop_assert_eq!(BooleanFunction::from_hex(&hex).unwrap(), f);
        }
    }

    #[test]
    fn parseval_and_relation(f in function(10)) {
        let w = walsh_hadamard(&f);
        prop_assert!(parseval_check(&w).unwrap());
        prop_assert!(fourier_relation_holds(&w, &fourier(&f)).unwrap());
        prop_assert_eq!(w.values[0], (1i64 << f.n()) - 2 * f.weight() as i64);
    }

    #[test]
    fn anf_is_additive((f, g) in pair(8)) {
        let sum = f.xor(&g).unwrap();
        prop_assert_eq!(sum.to_anf(), f.to_anf().xor(&g.to_anf()).unwrap());
    }

    #[test]
    fn complement_negates_wht(f in function(9)) {
        let a = walsh_hadamard(&f).values;
        let b = walsh_hadamard(&f.complement()).values;
        prop_assert!(a.iter().zip(&b).all(|(x, y)| *x == -*y));
        let ra = classify_plateaued(&walsh_hadamard(&f)).unwrap();
        let rb = classify_plateaued(&walsh_hadamard(&f.complement())).unwrap();
        prop_assert_eq!((ra.is_plateaued, ra.s), (rb.is_plateaued, rb.s));
    }

    #[test]
    fn translation_preserves_wht_magnitudes(f in function(8), c in any::<usize>()) {
        let c = c % f.len();
        let a: Vec<u64> = walsh_hadamard(&f).values.iter().map(|v| v.unsigned_abs()).collect();
        let b: Vec<u64> = walsh_hadamard(&f.translate(c)).values.iter().map(|v| v.unsigned_abs()).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn cayley_graph_is_regular_and_dyadic(f in function(6)) {
        prop_assume!(!f.value(0));
        let g = CayleyGraph::build(&f).unwrap();
        let a = g.adjacency_matrix(8).unwrap();
        prop_assert!(a.is_symmetric());
        prop_assert!(a.row_sums().unwrap().iter().all(|&s| s == f.weight() as i128));
        let c = 5 % g.order();
        for i in 0..g.order() {
            for j in 0..g.order() {
                prop_assert_eq!(a.get(i, j), a.get(i ^ c, j ^ c));
            }
        }
        let trace: i128 = (0..g.order()).map(|i| *a.get(i, i)).sum();
        prop_assert_eq!(trace, 0);
    }

    #[test]
    fn eigenvalue_sums_match_traces(f in function(6)) {
        prop_assume!(!f.value(0));
        let g = CayleyGraph::build(&f).unwrap();
        let a = g.adjacency_matrix(8).unwrap();
        let w = fourier(&f).values;
        for k in 1..=3u32 {
            let p = a.pow(k).unwrap();
            let trace: i128 = (0..g.order()).map(|i| *p.get(i, i)).sum();
            let power_sum: i128 = w.iter().map(|&l| (l as i128).pow(k)).sum();
            prop_assert_eq!(trace, power_sum);
        }
    }

    #[test]
    fn characterization_never_errs_below_the_dense_limit(f in function(6)) {
        prop_assume!(!f.value(0));
        let c = full_characterization(&f, &AnalysisConfig::default()).unwrap();
        let plateaued = c.plateau.is_plateaued;
        match c.verdict {
            Verdict::NotPlateaued => prop_assert!(!plateaued),
            Verdict::Degenerate => prop_assert_eq!(c.weight, 0),
            _ => prop_assert!(plateaued),
        }
    }
}
