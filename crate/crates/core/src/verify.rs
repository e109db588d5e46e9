//! Named invariant suites, runnable from the command line.
//!
//! Every input here is a fixed arithmetic family, so runs are reproducible.

use std::time::Instant;

use num_complex::Complex;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{abelian_groups_of_order, is_prime, GroupSpec, MulStructure};
use crate::regularity::{
    counting_exceptions, pythagoras_gap, structured_superset, weak_regularity, RegularityConfig,
};
use crate::setops::{kneser_check, lemma_kneser_bound, GSet};
use crate::spectral::{self, fourier, naive, GridFunction};
use crate::sumprod::{
    construct_extremal, exhaustive_search, f_alpha, f_alpha_bruteforce, gauss_orthogonality, intersect_estimate,
    polya_vinogradov_report, ConstructionParams, ConstructionReport, PolyaVinogradovReport, SearchConfig,
};

pub const SUITES: &[&str] = &[
    "falpha",
    "spectral",
    "pythagoras",
    "regularity",
    "counting",
    "kneser",
    "gauss",
    "orbit",
    "construction",
];

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// A check returns a summary on success and a description of the first
/// violation on failure.
type Check = (&'static str, fn() -> std::result::Result<String, String>);

fn run(suite: &str, checks: &[Check]) -> SuiteReport {
    let checks = checks
        .iter()
        .map(|(name, check)| {
            let start = Instant::now();
            let outcome = check();
            let millis = start.elapsed().as_secs_f64() * 1e3;
            let (passed, detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckOutcome { name: name.to_string(), passed, detail, millis }
        })
        .collect();
    SuiteReport { suite: suite.to_string(), checks }
}

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    let checks: &[Check] = match name {
        "falpha" => &[
            ("anchors", falpha_anchors),
            ("bruteforce", falpha_bruteforce),
            ("continuity", falpha_continuity),
            ("monotone", falpha_monotone),
        ],
        "spectral" => &[
            ("parseval", spectral_parseval),
            ("inversion", spectral_inversion),
            ("convolution", spectral_convolution),
            ("u2", spectral_u2),
        ],
        "pythagoras" => &[("chains", pythagoras_chains)],
        "regularity" => &[("weak", regularity_weak), ("superset", regularity_superset)],
        "counting" => &[("quadratic_phases", counting_quadratic)],
        "kneser" => &[("exhaustive", kneser_exhaustive)],
        "gauss" => &[("magnitudes", gauss_magnitudes), ("intersections", gauss_intersections)],
        "orbit" => &[("reduction", orbit_reduction), ("full_enumeration", orbit_full)],
        "construction" => &[
            ("thirteen", construction_thirteen),
            ("envelope", construction_envelope),
            ("deviation_envelope", construction_deviation_envelope),
        ],
        _ => {
            return Err(Error::InvalidParameter(format!(
                "unknown suite {name:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(run(name, checks))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: Error) -> String {
    e.to_string()
}

/// Deterministic test sets in `Z/p`: quadratic level sets, intervals and
/// multiplicative cosets.
pub fn regression_sets(p: u64) -> Vec<GSet> {
    let g = GroupSpec::cyclic(p).expect("p is small");
    let n = p as usize;
    let mut out = vec![
        GSet::from_fn(g.clone(), |x| x < n / 3),
        GSet::from_fn(g.clone(), |x| (x * x * 7 + 3 * x) % n < n / 4),
        GSet::from_fn(g.clone(), |x| x % 5 == 1 || x < n / 10),
    ];
    if let Ok(mul) = MulStructure::new(p) {
        if (p - 1) % 2 == 0 {
            out.push(mul.subgroup(2).expect("2 | p - 1"));
        }
    }
    out
}

fn rational_grid(max_den: i64) -> impl Iterator<Item = Ratio<i64>> {
    (2..=max_den).flat_map(move |b| (1..b).map(move |a| Ratio::new(a, b)))
}

fn falpha_anchors() -> std::result::Result<String, String> {
    let cases = [((1, 2), (1, 1)), ((1, 12), (1, 2)), ((1, 4), (1, 1)), ((1, 16), (3, 8)), ((1, 50), (1, 5))];
    for ((a, b), (c, d)) in cases {
        let v = f_alpha(&Ratio::new(a, b)).map_err(e2s)?.value;
        ensure(v == Ratio::new(c, d), || format!("f({a}/{b}) = {v}, expected {c}/{d}"))?;
    }
    Ok(format!("{} anchors", cases.len()))
}

fn falpha_bruteforce() -> std::result::Result<String, String> {
    let mut n = 0;
    for alpha in rational_grid(120) {
        let profile = f_alpha(&alpha).map_err(e2s)?;
        let brute = f_alpha_bruteforce(&alpha, crate::sumprod::crossing_ceil(&alpha) + 2).map_err(e2s)?;
        ensure(profile.value == brute, || format!("alpha = {alpha}: {} vs {brute}", profile.value))?;
        n += 1;
    }
    Ok(format!("{n} rationals agree"))
}

fn falpha_continuity() -> std::result::Result<String, String> {
    let h = Ratio::new(1, 1_000_000_007i64);
    for ell in 1..=50i64 {
        for boundary in [Ratio::new(1, 2 * ell * ell), Ratio::new(1, 2 * ell * (ell + 1))] {
            let at = f_alpha(&boundary).map_err(e2s)?.value;
            ensure(at == Ratio::new(1, ell), || format!("f({boundary}) = {at}, expected 1/{ell}"))?;
            let slope = Ratio::from_integer(2 * (ell + 2));
            for side in [boundary + h, boundary - h] {
                if side <= Ratio::from_integer(0) || side >= Ratio::from_integer(1) {
                    continue;
                }
                let v = f_alpha(&side).map_err(e2s)?.value;
                let gap = if v > at { v - at } else { at - v };
                ensure(gap <= slope * h, || format!("jump of {gap} next to {boundary}"))?;
            }
        }
    }
    Ok("100 boundaries".into())
}

fn falpha_monotone() -> std::result::Result<String, String> {
    let mut grid: Vec<Ratio<i64>> = rational_grid(150).collect();
    grid.sort();
    grid.dedup();
    let values: Vec<_> = grid.iter().map(|a| f_alpha(a).map(|p| p.value)).collect::<Result<_>>().map_err(e2s)?;
    for (w, a) in values.windows(2).zip(grid.windows(2)) {
        ensure(w[0] <= w[1], || format!("f decreases between {} and {}", a[0], a[1]))?;
    }
    Ok(format!("{} sorted points", grid.len()))
}

fn test_groups() -> Vec<GroupSpec> {
    [&[12][..], &[2, 6], &[64], &[3, 5, 7], &[2, 2, 2, 2, 8], &[4096], &[16, 256]]
        .iter()
        .map(|f| GroupSpec::new(f).expect("small orders"))
        .collect()
}

fn sample(g: &GroupSpec, salt: usize) -> GridFunction<f64> {
    GridFunction::from_fn(g.clone(), |x| {
        let re = ((x * x * 37 + 11 * x + salt) % 17) as f64 / 17.0 - 0.5;
        let im = ((x * 13 + salt * 5) % 7) as f64 / 7.0 - 0.5;
        Complex::new(re, im)
    })
}

fn max_dev(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn spectral_parseval() -> std::result::Result<String, String> {
    for g in test_groups() {
        let f = sample(&g, 1);
        let lhs = spectral::l2_norm(&f).powi(2);
        let rhs = fourier(&f).l2().powi(2);
        ensure((lhs - rhs).abs() <= 1e-12, || format!("{:?}: {lhs} vs {rhs}", g.factors()))?;
    }
    Ok("7 groups".into())
}

fn spectral_inversion() -> std::result::Result<String, String> {
    for g in test_groups() {
        let f = sample(&g, 2);
        let back = fourier(&f).inverse();
        let d = max_dev(f.values(), back.values());
        ensure(d <= 1e-10, || format!("{:?}: deviation {d}", g.factors()))?;
    }
    Ok("7 groups".into())
}

fn spectral_convolution() -> std::result::Result<String, String> {
    for g in test_groups() {
        let (f, h) = (sample(&g, 3), sample(&g, 4));
        let conv = fourier(&spectral::convolve(&f, &h).map_err(e2s)?);
        let (ff, fh) = (fourier(&f), fourier(&h));
        let prod: Vec<_> = ff.coeffs().iter().zip(fh.coeffs()).map(|(a, b)| a * b).collect();
        let d = max_dev(conv.coeffs(), &prod);
        ensure(d <= 1e-12, || format!("{:?}: deviation {d}", g.factors()))?;
        if g.order() <= 128 {
            let direct = naive::convolve(&f, &h).map_err(e2s)?;
            let fast = spectral::convolve(&f, &h).map_err(e2s)?;
            let d = max_dev(direct.values(), fast.values());
            ensure(d <= 1e-12, || format!("{:?}: direct convolution deviation {d}", g.factors()))?;
        }
    }
    Ok("7 groups".into())
}

fn spectral_u2() -> std::result::Result<String, String> {
    let mut n = 0;
    for g in test_groups().into_iter().filter(|g| g.order() <= 128) {
        let f = sample(&g, 5);
        let (a, b) = (naive::u2_norm(&f), spectral::u2_norm(&f));
        ensure((a - b).abs() <= 1e-9, || format!("{:?}: {a} vs {b}", g.factors()))?;
        n += 1;
    }
    Ok(format!("{n} groups against the direct quadruple sum"))
}

fn pythagoras_chains() -> std::result::Result<String, String> {
    let mut pairs = 0;
    for p in [101, 211] {
        for (i, a) in regression_sets(p).iter().enumerate() {
            let f = GridFunction::<f64>::indicator(a);
            let report = weak_regularity(&f, 0.25, &RegularityConfig::default()).map_err(e2s)?;
            let chain = report.replay_chain().map_err(e2s)?;
            for fine in 1..chain.len() {
                for coarse in 0..fine {
                    let (l, r) = pythagoras_gap(&f, &chain[coarse], &chain[fine]).map_err(e2s)?;
                    ensure((l - r).abs() <= 1e-12, || format!("p={p} set {i}: {l} vs {r}"))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} refinement pairs"))
}

fn regularity_weak() -> std::result::Result<String, String> {
    let cfg = RegularityConfig::default();
    let mut runs = 0;
    for p in [101, 211] {
        for a in regression_sets(p) {
            for delta in [0.2, 0.3] {
                let r = weak_regularity(&GridFunction::<f64>::indicator(&a), delta, &cfg).map_err(e2s)?;
                ensure(r.final_u2 <= delta, || format!("final U2 {} > {delta}", r.final_u2))?;
                ensure(r.iterations as u64 <= cfg.iteration_cap(delta), || "iteration cap exceeded".into())?;
                ensure(r.energy_trace.windows(2).all(|w| w[1] >= w[0] - 1e-12), || "energy decreased".into())?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} decompositions"))
}

fn regularity_superset() -> std::result::Result<String, String> {
    let eps = Ratio::new(1u64, 8);
    let delta = 9e-7;
    let mut runs = 0;
    for a in regression_sets(101) {
        let (_, r) = structured_superset(&a, &eps, delta, &RegularityConfig::default()).map_err(e2s)?;
        ensure(r.missed_ok && r.spurious_ok, || {
            format!("defects {} / {} exceed eps", r.missed_fraction, r.spurious_fraction)
        })?;
        runs += 1;
    }
    Ok(format!("{runs} sets"))
}

fn counting_quadratic() -> std::result::Result<String, String> {
    let mut pairs = 0;
    for p in [211usize, 1009] {
        let g = GroupSpec::cyclic(p as u64).map_err(e2s)?;
        for k in 1..6 {
            let phase = GridFunction::<f64>::from_fn(g.clone(), |x| spectral::unit_phase(k * x * x % p, p));
            let delta = spectral::u2_norm(&phase).max(1e-3);
            let f = GridFunction::<f64>::indicator(&GSet::from_fn(g.clone(), |x| x % (k + 2) == 0));
            let bad = counting_exceptions(&f, &phase, delta).map_err(e2s)?;
            ensure(bad as f64 <= delta * p as f64, || format!("p={p}, k={k}: {bad} exceptions"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn kneser_exhaustive() -> std::result::Result<String, String> {
    let mut sets = 0u64;
    for order in 1..=16 {
        for g in abelian_groups_of_order(order) {
            let n = g.order();
            for mask in 1u64..(1 << n) {
                let a = GSet::from_words(g.clone(), vec![mask]).map_err(e2s)?;
                let r = kneser_check(&a).map_err(e2s)?;
                ensure(r.holds, || format!("{:?} {:?}: {} < {}", g.factors(), a.elements(), r.lhs, r.rhs))?;
                for ell in 1..=n as u64 {
                    ensure(lemma_kneser_bound(&a, ell).map_err(e2s)?, || {
                        format!("{:?} {:?}: size bound fails at ell={ell}", g.factors(), a.elements())
                    })?;
                }
                sets += 1;
            }
        }
    }
    Ok(format!("{sets} subsets"))
}

fn gauss_magnitudes() -> std::result::Result<String, String> {
    let mut n = 0;
    for p in (3..=101u64).filter(|&p| is_prime(p)) {
        let mul = MulStructure::new(p).map_err(e2s)?;
        let target = (p as f64).powf(-0.5);
        for r in 1..p as usize {
            for chi in 1..p as usize - 1 {
                let v = gauss_orthogonality::<f64>(&mul, r, chi).map_err(e2s)?.norm();
                ensure((v - target).abs() <= 1e-10, || format!("p={p}, r={r}, chi={chi}: {v}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} sums"))
}

/// Intervals against multiplicative cosets.
pub fn intersection_instances(p: u64) -> Result<Vec<(GSet, GSet)>> {
    let mul = MulStructure::new(p)?;
    let field = mul.additive_group();
    let n = p as usize;
    let mut out = Vec::new();
    for ell in crate::group::divisors(p - 1).into_iter().filter(|&l| (2..=6).contains(&l)) {
        for (lo, len) in [(0, n / 2), (n / 7, n / 3), (1, n / 10)] {
            let interval = GSet::from_fn(field.clone(), |x| x >= lo && x < lo + len);
            out.push((interval, mul.coset(ell, 1)?));
        }
    }
    Ok(out)
}

fn gauss_intersections() -> std::result::Result<String, String> {
    let mut n = 0;
    for p in [211, 1009, 10007] {
        let mul = MulStructure::new(p).map_err(e2s)?;
        for (a1, a2) in intersection_instances(p).map_err(e2s)? {
            let r = intersect_estimate(&a1, &a2, 64, &mul).map_err(e2s)?;
            ensure(r.within_pv, || format!("p={p}: error {} > {}", r.error, r.pv_bound))?;
            ensure(r.within_fg, || format!("p={p}: error {} > fg bound {}", r.error, r.fg_bound))?;
            n += 1;
        }
    }
    Ok(format!("{n} instances"))
}

fn orbit_reduction() -> std::result::Result<String, String> {
    let reduced = SearchConfig::default();
    let full = SearchConfig { orbit_reduction: false, ..SearchConfig::default() };
    let mut n = 0;
    for p in [3u64, 5, 7, 11, 13] {
        for m in 1..=p as usize {
            let a = exhaustive_search(p, m, &reduced).map_err(e2s)?;
            let b = exhaustive_search(p, m, &full).map_err(e2s)?;
            ensure(a == b, || format!("p={p}, m={m}: {:?} vs {:?}", a.witness, b.witness))?;
            n += 1;
        }
    }
    Ok(format!("{n} searches"))
}

/// Minimum of `max(|A+A|, |A.A|)` over all subsets with at least `m` elements.
pub fn brute_force_minimum(p: u64, m: usize) -> Result<usize> {
    let mul = MulStructure::new(p)?;
    let g = mul.additive_group();
    let mut best = usize::MAX;
    for mask in 1u64..(1 << p) {
        if (mask.count_ones() as usize) < m {
            continue;
        }
        let a = GSet::from_words(g.clone(), vec![mask])?;
        let s = crate::setops::sumset_naive(&a, &a)?.len();
        let q = crate::setops::product_set_naive(&a, &a, &mul)?.len();
        best = best.min(s.max(q));
    }
    Ok(best)
}

fn orbit_full() -> std::result::Result<String, String> {
    let mut n = 0;
    for p in [3u64, 5, 7, 11] {
        for m in 1..=p as usize {
            let rec = exhaustive_search(p, m, &SearchConfig::default()).map_err(e2s)?;
            let truth = brute_force_minimum(p, m).map_err(e2s)?;
            ensure(rec.max_size() == truth, || format!("p={p}, m={m}: {} vs {truth}", rec.max_size()))?;
            n += 1;
        }
    }
    Ok(format!("{n} searches against full enumeration"))
}

fn construction_thirteen() -> std::result::Result<String, String> {
    let (a, r) = construct_extremal(&ConstructionParams::new(13, 3, 6).map_err(e2s)?).map_err(e2s)?;
    ensure(a.elements() == vec![1, 5] && r.sum_size == 3 && r.prod_size == 3, || format!("{a:?}: {r:?}"))?;
    Ok("A = {1, 5}".into())
}

/// The instances `N = ceil(ell p / 20)` at `p = 9973`, `ell in {2, 3, 4}`.
pub fn large_constructions() -> Result<Vec<(ConstructionParams, ConstructionReport, PolyaVinogradovReport)>> {
    [2, 3, 4]
        .into_iter()
        .map(|ell| {
            let params = ConstructionParams::from_alpha(9973, ell, &Ratio::new(1, 20))?;
            let (_, report) = construct_extremal(&params)?;
            Ok((params, report, polya_vinogradov_report(&params)?))
        })
        .collect()
}

/// `max(2 ell |A| / p, 1 / ell)`
pub fn construction_envelope_of(r: &ConstructionReport) -> f64 {
    let ell = r.params.ell as f64;
    (2.0 * ell * r.card as f64 / r.params.p as f64).max(1.0 / ell)
}

/// Compares the size ratio with the envelope at `alpha = |A| / p`, allowing 0.01.
fn construction_envelope() -> std::result::Result<String, String> {
    let mut failures = Vec::new();
    for (params, r, pv) in large_constructions().map_err(e2s)? {
        let excess = r.max_ratio() - construction_envelope_of(&r);
        if excess > 0.01 {
            failures.push(format!("ell={}: excess {excess:.4} with |A| = {} vs N/ell = {:.1}", params.ell, r.card, pv.n_over_ell));
        }
        ensure(pv.within, || format!("ell={}: deviation {} > {}", params.ell, pv.deviation, pv.bound))?;
    }
    if failures.is_empty() {
        Ok("ell in {2, 3, 4} within 0.01".into())
    } else {
        Err(failures.join("; "))
    }
}

/// The same envelope with `|A|` replaced by `N / ell`, plus the `2/p` slack:
/// `|A + A| <= 2N - 1` and `|A . A| <= (p - 1) / ell` make this unconditional.
fn construction_deviation_envelope() -> std::result::Result<String, String> {
    for (params, r, pv) in large_constructions().map_err(e2s)? {
        let (p, ell) = (params.p as f64, params.ell as f64);
        let corrected = (2.0 * ell * (r.card as f64 + pv.deviation) / p).max(1.0 / ell) + 2.0 / p;
        ensure(r.max_ratio() <= corrected, || format!("ell={}: {} > {corrected}", params.ell, r.max_ratio()))?;
    }
    Ok("3 instances".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nonexistent").is_err());
    }

    #[test]
    fn quick_suites_pass() {
        for name in ["falpha", "gauss"] {
            let report = run_suite(name).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn index_four_envelope_is_the_only_construction_failure() {
        let report = run_suite("construction").unwrap();
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
        assert_eq!(failed.len(), 1, "{report:?}");
        assert_eq!(failed[0].name, "envelope");
        assert!(failed[0].detail.starts_with("ell=4:"), "{}", failed[0].detail);
    }
}
