//! Exact and structured searches for `min max(|A+A|, |A.A|)` over `|A| >= m`.
//!
//! The exhaustive search enumerates sets of size exactly `m` (both sizes are
//! monotone under inclusion, so larger sets never do better) and evaluates only
//! dilation-orbit representatives, the lexicographically least bit vector among
//! `{cA : c != 0}`. Work is cut into a fixed number of rank ranges, so the result
//! does not depend on the worker count.

use std::cmp::Ordering;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::falpha::{f_alpha, ratio_to_f64};
use crate::error::{Error, Result};
use crate::group::{divisors, MulStructure};
use crate::setops::{format_set_line, parse_set_line, product_set, sumset, GSet};

pub const DEFAULT_EXHAUSTIVE_LIMIT: u64 = 29;
/// Bit-vector kernels keep a whole set in one `u64`.
pub const MAX_EXHAUSTIVE_LIMIT: u64 = 61;
const CHUNKS: u64 = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Structured,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub workers: usize,
    pub exhaustive_limit: u64,
    pub orbit_reduction: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { workers: 1, exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT, orbit_reduction: true }
    }
}

impl SearchConfig {
    pub fn with_workers(workers: usize) -> Self {
        Self { workers, ..Self::default() }
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        if self.workers == 0 {
            return Err(Error::InvalidParameter("workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("cannot start worker pool: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RecordWire", into = "RecordWire")]
pub struct SearchRecord {
    pub p: u64,
    pub min_card: usize,
    pub witness: GSet,
    pub sum_size: usize,
    pub prod_size: usize,
    /// `max(sum_size, prod_size) / p`
    pub ratio: f64,
    pub mode: SearchMode,
    /// `f(min_card / p)`
    pub f_alpha_line: f64,
    /// `(p |A|)^(1/2) / p`, implied constant 1.
    pub garaev_line: f64,
    /// `(2 p |A|)^(1/2) / p`, advisory.
    pub conjecture_line: f64,
}

#[derive(Serialize, Deserialize)]
struct RecordWire {
    p: u64,
    min_card: usize,
    witness: String,
    sum_size: usize,
    prod_size: usize,
    ratio: f64,
    mode: SearchMode,
    f_alpha_line: f64,
    garaev_line: f64,
    conjecture_line: f64,
}

impl From<SearchRecord> for RecordWire {
    fn from(r: SearchRecord) -> Self {
        Self {
            p: r.p,
            min_card: r.min_card,
            witness: format_set_line(&r.witness),
            sum_size: r.sum_size,
            prod_size: r.prod_size,
            ratio: r.ratio,
            mode: r.mode,
            f_alpha_line: r.f_alpha_line,
            garaev_line: r.garaev_line,
            conjecture_line: r.conjecture_line,
        }
    }
}

impl TryFrom<RecordWire> for SearchRecord {
    type Error = Error;

    fn try_from(w: RecordWire) -> Result<Self> {
        let rec = SearchRecord {
            p: w.p,
            min_card: w.min_card,
            witness: parse_set_line(&w.witness)?,
            sum_size: w.sum_size,
            prod_size: w.prod_size,
            ratio: w.ratio,
            mode: w.mode,
            f_alpha_line: w.f_alpha_line,
            garaev_line: w.garaev_line,
            conjecture_line: w.conjecture_line,
        };
        rec.validate()?;
        Ok(rec)
    }
}

fn f_alpha_line(p: u64, min_card: usize) -> Result<f64> {
    if min_card as u64 >= p {
        return Ok(1.0);
    }
    let alpha = Ratio::new(min_card as i64, p as i64);
    Ok(ratio_to_f64(&f_alpha(&alpha)?.value))
}

impl SearchRecord {
    /// Builds a record from a witness, computing every derived field.
    pub fn from_witness(p: u64, min_card: usize, witness: GSet, mode: SearchMode) -> Result<Self> {
        let mul = MulStructure::new(p)?;
        if witness.group() != &mul.additive_group() {
            return Err(Error::MissingMulStructure);
        }
        let sum_size = sumset(&witness, &witness)?.len();
        let prod_size = product_set(&witness, &witness, &mul)?.len();
        let pf = p as f64;
        let card = witness.len() as f64;
        Ok(Self {
            p,
            min_card,
            sum_size,
            prod_size,
            ratio: sum_size.max(prod_size) as f64 / pf,
            mode,
            f_alpha_line: f_alpha_line(p, min_card)?,
            garaev_line: (pf * card).sqrt() / pf,
            conjecture_line: (2.0 * pf * card).sqrt() / pf,
            witness,
        })
    }

    pub fn max_size(&self) -> usize {
        self.sum_size.max(self.prod_size)
    }

    /// Recomputes every derived field from the witness.
    pub fn validate(&self) -> Result<()> {
        if self.min_card == 0 || self.min_card as u64 > self.p {
            return Err(Error::Validation(format!("min_card {} out of range for p = {}", self.min_card, self.p)));
        }
        if self.witness.len() < self.min_card {
            return Err(Error::Validation(format!(
                "witness has {} elements, below min_card {}",
                self.witness.len(),
                self.min_card
            )));
        }
        let fresh = Self::from_witness(self.p, self.min_card, self.witness.clone(), self.mode)?;
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12;
        if fresh.sum_size != self.sum_size || fresh.prod_size != self.prod_size {
            return Err(Error::Validation(format!(
                "stored sizes ({}, {}) disagree with witness ({}, {})",
                self.sum_size, self.prod_size, fresh.sum_size, fresh.prod_size
            )));
        }
        if !(close(fresh.ratio, self.ratio)
            && close(fresh.f_alpha_line, self.f_alpha_line)
            && close(fresh.garaev_line, self.garaev_line)
            && close(fresh.conjecture_line, self.conjecture_line))
        {
            return Err(Error::Validation("stored derived lines disagree with witness".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn from_json(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::Validation(e.to_string()))
    }
}

/// Lexicographic order on indicator vectors `(1_A(0), 1_A(1), ...)`.
pub fn lex_cmp(a: &GSet, b: &GSet) -> Ordering {
    for (x, y) in a.words().iter().zip(b.words()) {
        let diff = x ^ y;
        if diff != 0 {
            let low = diff & diff.wrapping_neg();
            return if x & low == 0 { Ordering::Less } else { Ordering::Greater };
        }
    }
    Ordering::Equal
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// The `rank`-th `k`-subset of `{0..n}` in colexicographic order.
fn unrank_colex(mut rank: u64, k: u64, n: u64) -> u64 {
    let mut mask = 0u64;
    let mut top = n;
    for i in (1..=k).rev() {
        let mut c = i - 1;
        while c + 1 < top && binomial(c + 1, i) <= rank {
            c += 1;
        }
        rank -= binomial(c, i);
        mask |= 1 << c;
        top = c;
    }
    mask
}

/// Next mask with the same popcount (Gosper).
fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

fn rotate(x: u64, s: u32, n: u32, full: u64) -> u64 {
    if s == 0 {
        x
    } else {
        ((x << s) | (x >> (n - s))) & full
    }
}

fn cyclic_sumset(mask: u64, n: u32) -> u64 {
    let full = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut acc = 0;
    let mut rest = mask;
    while rest != 0 {
        acc |= rotate(mask, rest.trailing_zeros(), n, full);
        rest &= rest - 1;
    }
    acc
}

/// Byte-indexed tables for the orbit and product kernels.
struct Kernel {
    p: u32,
    bytes: usize,
    /// `dilate[(c * bytes + chunk) * 256 + byte]`: key bits of `c * (elements of byte)`.
    dilate: Vec<u64>,
    /// discrete-log masks on `Z/(p-1)` for the nonzero elements of each byte.
    logs: Vec<u64>,
}

impl Kernel {
    fn new(mul: &MulStructure) -> Self {
        let p = mul.p();
        let bytes = p.div_ceil(8);
        let mut dilate = vec![0u64; p * bytes * 256];
        let mut logs = vec![0u64; bytes * 256];
        for chunk in 0..bytes {
            for byte in 0..256usize {
                let elems = (0..8).filter(|b| byte >> b & 1 == 1).map(|b| chunk * 8 + b).filter(|&x| x < p);
                for x in elems {
                    if x != 0 {
                        logs[chunk * 256 + byte] |= 1 << mul.dlog_unchecked(x);
                    }
                    for c in 1..p {
                        dilate[(c * bytes + chunk) * 256 + byte] |= 1 << (p - 1 - c * x % p);
                    }
                }
            }
        }
        Self { p: p as u32, bytes, dilate, logs }
    }

    fn key(&self, mask: u64, c: usize) -> u64 {
        let base = c * self.bytes * 256;
        (0..self.bytes).fold(0, |acc, chunk| {
            acc | self.dilate[base + chunk * 256 + (mask >> (8 * chunk) & 0xff) as usize]
        })
    }

    /// Whether `mask` is the lexicographically least member of its dilation orbit.
    fn canonical(&self, mask: u64) -> bool {
        let own = self.key(mask, 1);
        (2..self.p as usize).all(|c| self.key(mask, c) >= own)
    }

    fn sum_size(&self, mask: u64) -> u32 {
        cyclic_sumset(mask, self.p).count_ones()
    }

    fn prod_size(&self, mask: u64) -> u32 {
        let logs = (0..self.bytes).fold(0, |acc, chunk| acc | self.logs[chunk * 256 + (mask >> (8 * chunk) & 0xff) as usize]);
        cyclic_sumset(logs, self.p - 1).count_ones() + u32::from(mask & 1 == 1)
    }
}

/// Best `(max size, key)` in one rank range; smaller is better on both.
fn search_range(kernel: &Kernel, m: u64, lo: u64, hi: u64, reduce: bool) -> Option<(u32, u64, u64)> {
    let mut mask = unrank_colex(lo, m, kernel.p as u64);
    let mut best: Option<(u32, u64, u64)> = None;
    for i in lo..hi {
        if i > lo {
            mask = next_combination(mask);
        }
        if reduce && !kernel.canonical(mask) {
            continue;
        }
        let bound = best.map_or(u32::MAX, |b| b.0);
        let s = kernel.sum_size(mask);
        if s > bound {
            continue;
        }
        let value = s.max(kernel.prod_size(mask));
        let key = kernel.key(mask, 1);
        if best.map_or(true, |b| (value, key) < (b.0, b.1)) {
            best = Some((value, key, mask));
        }
    }
    best
}

/// Exact minimum of `max(|A+A|, |A.A|)` over `A subset F_p` with `|A| >= min_card`.
///
/// The witness is the lexicographically least minimizer of size `min_card`.
pub fn exhaustive_search(p: u64, min_card: usize, cfg: &SearchConfig) -> Result<SearchRecord> {
    let limit = cfg.exhaustive_limit.min(MAX_EXHAUSTIVE_LIMIT);
    if p > limit {
        return Err(Error::InvalidParameter(format!("p = {p} exceeds the exhaustive limit {limit}")));
    }
    let mul = MulStructure::new(p)?;
    if min_card == 0 || min_card as u64 > p {
        return Err(Error::InvalidParameter(format!("min_card must lie in [1, {p}], got {min_card}")));
    }
    let kernel = Kernel::new(&mul);
    let m = min_card as u64;
    let total = binomial(p, m);
    let chunks = CHUNKS.min(total);
    let ranges: Vec<(u64, u64)> = (0..chunks).map(|i| (total * i / chunks, total * (i + 1) / chunks)).collect();
    let best = cfg.pool()?.install(|| {
        ranges
            .par_iter()
            .filter_map(|&(lo, hi)| search_range(&kernel, m, lo, hi, cfg.orbit_reduction))
            .min_by_key(|&(value, key, _)| (value, key))
    });
    let (_, _, mask) = best.expect("at least one set of every size exists");
    let witness = GSet::from_words(mul.additive_group(), vec![mask])?;
    SearchRecord::from_witness(p, min_card, witness, SearchMode::Exhaustive)
}

/// Best member of `{[1, N] cap cH : ell | p - 1, c a coset representative}`
/// with at least `min_card` elements.
///
/// Dilating a member by `d` gives another member's dilate `d([1,N] cap cH)`,
/// which has the same sum and product sizes, so the `d`-closure of the family
/// adds no new values and is not enumerated.
pub fn structured_search(p: u64, min_card: usize, cfg: &SearchConfig) -> Result<SearchRecord> {
    let mul = MulStructure::new(p)?;
    if min_card == 0 || min_card as u64 >= p {
        return Err(Error::InvalidParameter(format!("min_card must lie in [1, {p}), got {min_card}")));
    }
    let candidates: Vec<(u64, u64)> = divisors(p - 1)
        .into_iter()
        .flat_map(|ell| (0..ell).map(move |s| (ell, s)))
        .collect();
    let field = mul.additive_group();
    let build = |&(ell, s): &(u64, u64)| -> Option<GSet> {
        let mut taken = 0;
        let mut n = 0;
        while taken < min_card {
            n += 1;
            if n as u64 >= p {
                return None;
            }
            if mul.dlog_unchecked(n) as u64 % ell == s {
                taken += 1;
            }
        }
        Some(GSet::from_fn(field.clone(), |x| (1..=n).contains(&x) && mul.dlog_unchecked(x) as u64 % ell == s))
    };
    let best = cfg.pool()?.install(|| {
        candidates
            .par_iter()
            .filter_map(build)
            .map(|a| {
                let value = sumset(&a, &a).map(|s| s.len()).unwrap_or(usize::MAX)
                    .max(product_set(&a, &a, &mul).map(|s| s.len()).unwrap_or(usize::MAX));
                (value, a)
            })
            .min_by(|x, y| x.0.cmp(&y.0).then_with(|| lex_cmp(&x.1, &y.1)))
    });
    let (_, witness) = best.ok_or_else(|| {
        Error::InvalidParameter(format!("no structured set in F_{p} reaches {min_card} elements"))
    })?;
    SearchRecord::from_witness(p, min_card, witness, SearchMode::Structured)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_unrank_matches_gosper() {
        let mut mask = unrank_colex(0, 3, 7);
        assert_eq!(mask, 0b111);
        for r in 1..binomial(7, 3) {
            mask = next_combination(mask);
            assert_eq!(unrank_colex(r, 3, 7), mask);
        }
        assert_eq!(mask, 0b111_0000);
    }

    #[test]
    fn small_examples() {
        let cfg = SearchConfig::default();
        assert_eq!(exhaustive_search(5, 2, &cfg).unwrap().max_size(), 3);
        assert_eq!(exhaustive_search(7, 2, &cfg).unwrap().max_size(), 3);
        let full = exhaustive_search(5, 5, &cfg).unwrap();
        assert_eq!((full.max_size(), full.witness.len()), (5, 5));
    }

    #[test]
    fn witness_is_lex_least() {
        // Among 2-subsets of F_5 with max size 3, {3, 4} has the least indicator vector.
        let rec = exhaustive_search(5, 2, &SearchConfig::default()).unwrap();
        assert_eq!(rec.witness.elements(), vec![3, 4]);
    }

    #[test]
    fn limit_enforced() {
        assert!(exhaustive_search(31, 3, &SearchConfig::default()).is_err());
        assert!(exhaustive_search(9, 3, &SearchConfig::default()).is_err());
        assert!(exhaustive_search(7, 0, &SearchConfig::default()).is_err());
    }

    #[test]
    fn structured_thirteen() {
        let rec = structured_search(13, 2, &SearchConfig::default()).unwrap();
        assert!(rec.ratio <= 3.0 / 13.0);
        assert_eq!(rec.mode, SearchMode::Structured);
    }

    #[test]
    fn record_round_trip_and_tamper() {
        let rec = exhaustive_search(11, 3, &SearchConfig::default()).unwrap();
        let line = rec.to_json();
        assert_eq!(SearchRecord::from_json(&line).unwrap(), rec);
        let tampered = line.replace(&format!("\"sum_size\":{}", rec.sum_size), "\"sum_size\":1");
        assert!(SearchRecord::from_json(&tampered).is_err());
    }

    #[test]
    fn lex_order() {
        let g = crate::group::GroupSpec::cyclic(70).unwrap();
        let a = GSet::from_elements(g.clone(), [3, 4]).unwrap();
        let b = GSet::from_elements(g.clone(), [0]).unwrap();
        let c = GSet::from_elements(g, [3, 69]).unwrap();
        assert_eq!(lex_cmp(&a, &b), Ordering::Less);
        assert_eq!(lex_cmp(&c, &a), Ordering::Less);
        assert_eq!(lex_cmp(&a, &a), Ordering::Equal);
    }

    #[test]
    fn primality_required() {
        assert!(!crate::group::is_prime(4));
        assert!(structured_search(4, 2, &SearchConfig::default()).is_err());
    }
}
