use num_rational::Ratio;
use proptest::prelude::*;

use sumprod_core::group::{is_prime, CharIndex, GroupSpec, MulStructure};
use sumprod_core::setops::{dilate, popular_sums, product_set, rep_counts, sumset, sumset_naive};
use sumprod_core::spectral::{fourier, l2_norm};
use sumprod_core::sumprod::{
    construct_extremal, crossing_ceil, exhaustive_search, f_alpha, f_alpha_bruteforce, polya_vinogradov_report,
    structured_search, ConstructionParams, SearchConfig, SearchRecord,
};
use sumprod_core::{GSet, GridFunction64};

fn group() -> impl Strategy<Value = GroupSpec> {
    prop::collection::vec(2u64..9, 1..4).prop_map(|f| GroupSpec::new(&f).unwrap())
}

fn set_in(g: GroupSpec) -> impl Strategy<Value = GSet> {
    let n = g.order();
    prop::collection::vec(any::<bool>(), n).prop_map(move |bits| GSet::from_fn(g.clone(), |x| bits[x]))
}

fn small_prime() -> impl Strategy<Value = u64> {
    (3u64..80).prop_filter("prime", |&p| is_prime(p))
}

fn set_mod_p() -> impl Strategy<Value = GSet> {
    small_prime().prop_flat_map(|p| set_in(GroupSpec::cyclic(p).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn characters_are_homomorphisms((g, a, b, c) in group().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), 0..n, 0..n, 0..n)
    })) {
        let l = g.exponent();
        let gamma = CharIndex(c);
        let lhs = g.phase_numerator(gamma, g.add(a, b));
        let rhs = (g.phase_numerator(gamma, a) + g.phase_numerator(gamma, b)) % l;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parseval((g, re, im) in group().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(-1.0f64..1.0, n), prop::collection::vec(-1.0f64..1.0, n))
    })) {
        let f = GridFunction64::from_fn(g, |x| num_complex::Complex::new(re[x], im[x]));
        let s = fourier(&f);
        prop_assert!((l2_norm(&f).powi(2) - s.l2().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn sumset_matches_naive((a, b) in group().prop_flat_map(|g| (set_in(g.clone()), set_in(g)))) {
        prop_assert_eq!(sumset(&a, &b).unwrap(), sumset_naive(&a, &b).unwrap());
    }

    #[test]
    fn representation_counts_sum_to_square(a in group().prop_flat_map(set_in)) {
        prop_assert_eq!(rep_counts(&a).iter().sum::<usize>(), a.len() * a.len());
    }

    #[test]
    fn popular_sums_lie_in_sumset(a in group().prop_flat_map(set_in), k in 1u64..20) {
        let s = popular_sums(&a, &Ratio::new(1, k)).unwrap();
        prop_assert!(s.is_subset(&sumset(&a, &a).unwrap()));
    }

    #[test]
    fn dilation_preserves_sizes(a in set_mod_p(), c in 1u64..1000) {
        let p = a.group().order() as u64;
        prop_assume!(c % p != 0);
        let mul = MulStructure::new(p).unwrap();
        let b = dilate(&a, c).unwrap();
        prop_assert_eq!(b.len(), a.len());
        prop_assert_eq!(sumset(&b, &b).unwrap().len(), sumset(&a, &a).unwrap().len());
        prop_assert_eq!(
            product_set(&b, &b, &mul).unwrap().len(),
            product_set(&a, &a, &mul).unwrap().len()
        );
    }

    #[test]
    fn f_alpha_matches_bruteforce(num in 1i64..5000, den in 2i64..5000) {
        prop_assume!(num < den);
        let alpha = Ratio::new(num, den);
        let exact = f_alpha(&alpha).unwrap().value;
        prop_assert_eq!(exact, f_alpha_bruteforce(&alpha, crossing_ceil(&alpha) + 1).unwrap());
    }

    #[test]
    fn f_alpha_is_monotone(a in 1i64..10_000, b in 1i64..10_000) {
        let (lo, hi) = (Ratio::new(a.min(b), 10_001), Ratio::new(a.max(b), 10_001));
        prop_assert!(f_alpha(&lo).unwrap().value <= f_alpha(&hi).unwrap().value);
    }

    #[test]
    fn record_round_trip(a in set_mod_p()) {
        prop_assume!(!a.is_empty());
        let p = a.group().order() as u64;
        let rec = SearchRecord::from_witness(p, a.len(), a, sumprod_core::sumprod::SearchMode::Exhaustive).unwrap();
        prop_assert_eq!(SearchRecord::from_json(&rec.to_json()).unwrap(), rec);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn structured_never_beats_exhaustive(p in (3u64..20).prop_filter("prime", |&p| is_prime(p)), m in 1usize..19) {
        prop_assume!(m < p as usize);
        let cfg = SearchConfig::default();
        let best = exhaustive_search(p, m, &cfg).unwrap().max_size();
        if let Ok(s) = structured_search(p, m, &cfg) {
            prop_assert!(s.max_size() >= best);
            prop_assert!(s.witness.len() >= m);
        }
    }

    #[test]
    fn construction_within_corrected_envelope(
        (p, ell, n) in (5u64..2000)
            .prop_filter("prime", |&p| is_prime(p))
            .prop_flat_map(|p| {
                let ells: Vec<u64> = (1..=8).filter(|l| (p - 1) % l == 0).collect();
                (Just(p), prop::sample::select(ells), 1..p)
            })
    ) {
        let params = ConstructionParams::new(p, ell, n).unwrap();
        let (a, r) = construct_extremal(&params).unwrap();
        prop_assert_eq!(a.len(), r.card);
        prop_assert!(r.sum_size < 2 * n as usize);
        prop_assert!(r.prod_size as u64 <= (p - 1) / ell);
        let pv = polya_vinogradov_report(&params).unwrap();
        let pf = p as f64;
        let corrected = (2.0 * ell as f64 * (r.card as f64 + pv.deviation) / pf).max(1.0 / ell as f64) + 2.0 / pf;
        prop_assert!(r.max_ratio() <= corrected, "ratio {} > {}", r.max_ratio(), corrected);
    }
}
