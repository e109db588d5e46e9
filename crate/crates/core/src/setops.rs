//! Subsets of a finite abelian group stored as bit-vectors.
//!
//! On cyclic groups, sumsets use a word-level rotate-and-OR kernel; other
//! groups fall back to translating element by element. Product sets in
//! `F_p` are sumsets in discrete-log coordinates on `Z/(p-1)`.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{is_prime, GroupSpec, MulStructure};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GSet {
    group: GroupSpec,
    bits: Vec<u64>,
    card: usize,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl GSet {
    pub fn empty(group: GroupSpec) -> Self {
        let w = words_for(group.order());
        Self { group, bits: vec![0; w], card: 0 }
    }

    pub fn full(group: GroupSpec) -> Self {
        Self::from_fn(group, |_| true)
    }

    pub fn from_fn(group: GroupSpec, mut pred: impl FnMut(usize) -> bool) -> Self {
        let mut bits = vec![0u64; words_for(group.order())];
        for x in 0..group.order() {
            if pred(x) {
                bits[x >> 6] |= 1 << (x & 63);
            }
        }
        Self::from_words_unchecked(group, bits)
    }

    pub fn from_elements(group: GroupSpec, elems: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = group.order();
        let mut bits = vec![0u64; words_for(n)];
        for x in elems {
            group.check(x)?;
            bits[x >> 6] |= 1 << (x & 63);
        }
        Ok(Self::from_words_unchecked(group, bits))
    }

    /// Builds a set from raw words; bits at or beyond the group order must be clear.
    pub fn from_words(group: GroupSpec, bits: Vec<u64>) -> Result<Self> {
        let n = group.order();
        if bits.len() != words_for(n) {
            return Err(Error::InvalidParameter(format!(
                "expected {} words, got {}",
                words_for(n),
                bits.len()
            )));
        }
        if n % 64 != 0 && bits[bits.len() - 1] >> (n % 64) != 0 {
            return Err(Error::InvalidParameter("bits set beyond the group order".into()));
        }
        Ok(Self::from_words_unchecked(group, bits))
    }

    fn from_words_unchecked(group: GroupSpec, bits: Vec<u64>) -> Self {
        let card = bits.iter().map(|w| w.count_ones() as usize).sum();
        Self { group, bits, card }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.group.order() && self.bits[x >> 6] >> (x & 63) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Indicator values, one per element.
    pub fn indicator(&self) -> Vec<bool> {
        (0..self.group.order()).map(|x| self.contains(x)).collect()
    }

    fn same_group(&self, other: &GSet) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn zip_words(&self, other: &GSet, f: impl Fn(u64, u64) -> u64) -> Result<GSet> {
        self.same_group(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self::from_words_unchecked(self.group.clone(), bits))
    }

    pub fn union(&self, other: &GSet) -> Result<GSet> {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &GSet) -> Result<GSet> {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &GSet) -> Result<GSet> {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> GSet {
        let n = self.group.order();
        let mut bits: Vec<u64> = self.bits.iter().map(|w| !w).collect();
        mask_tail(&mut bits, n);
        Self::from_words_unchecked(self.group.clone(), bits)
    }

    pub fn is_subset(&self, other: &GSet) -> bool {
        self.group == other.group && self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & !b == 0)
    }

    /// `self + h`.
    pub fn translate(&self, h: usize) -> GSet {
        let n = self.group.order();
        let mut out = vec![0u64; self.bits.len()];
        if self.group.is_cyclic() {
            rotate_or_into(&self.bits, n, h % n, &mut out);
        } else {
            for x in self.iter() {
                let y = self.group.add(x, h);
                out[y >> 6] |= 1 << (y & 63);
            }
        }
        Self::from_words_unchecked(self.group.clone(), out)
    }

    /// `{-x : x in self}`.
    pub fn negate(&self) -> GSet {
        Self::from_elements(self.group.clone(), self.iter().map(|x| self.group.neg(x)))
            .expect("negation stays in the group")
    }

    /// Residue-list rendering, e.g. `{1,5,8}`.
    pub fn to_residue_string(&self) -> String {
        let body: Vec<String> = self.iter().map(|x| x.to_string()).collect();
        format!("{{{}}}", body.join(","))
    }

    /// Little-endian hex of the bit-vector: byte `i` carries elements `8i..8i+8`.
    pub fn to_hex(&self) -> String {
        let nbytes = self.group.order().div_ceil(8);
        let mut s = String::with_capacity(2 * nbytes);
        for i in 0..nbytes {
            let byte = (self.bits[i / 8] >> (8 * (i % 8))) & 0xff;
            s.push_str(&format!("{byte:02x}"));
        }
        s
    }

    pub fn from_hex(group: GroupSpec, hex: &str) -> Result<Self> {
        let hex = hex.trim();
        let nbytes = group.order().div_ceil(8);
        if hex.len() != 2 * nbytes || !hex.is_ascii() {
            return Err(Error::Parse(format!(
                "expected {} hex digits for a group of order {}, got {}",
                2 * nbytes,
                group.order(),
                hex.len()
            )));
        }
        let mut bits = vec![0u64; words_for(group.order())];
        for i in 0..nbytes {
            let byte = u64::from_str_radix(&hex[2 * i..2 * i + 2], 16)
                .map_err(|e| Error::Parse(format!("bad hex byte at {i}: {e}")))?;
            bits[i / 8] |= byte << (8 * (i % 8));
        }
        Self::from_words(group, bits)
    }
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSet{:?}{}", self.group.factors(), self.to_residue_string())
    }
}

fn mask_tail(bits: &mut [u64], n: usize) {
    if n % 64 != 0 {
        if let Some(last) = bits.last_mut() {
            *last &= (1u64 << (n % 64)) - 1;
        }
    }
}

/// ORs `src` rotated by `shift` (mod `n`) into `out`: bit `i` lands on `(i + shift) mod n`.
pub(crate) fn rotate_or_into(src: &[u64], n: usize, shift: usize, out: &mut [u64]) {
    debug_assert!(shift < n);
    // Bits [0, n - shift) move up by `shift`.
    shl_or_into(src, shift, n, out);
    // Bits [n - shift, n) wrap around to [0, shift).
    if shift > 0 {
        shr_or_into(src, n - shift, n, out);
    }
}

/// `out |= (src << s)` truncated to `n` bits.
fn shl_or_into(src: &[u64], s: usize, n: usize, out: &mut [u64]) {
    let (ws, bs) = (s / 64, s % 64);
    let w = out.len();
    for i in (ws..w).rev() {
        let j = i - ws;
        let mut v = src[j] << bs;
        if bs > 0 && j > 0 {
            v |= src[j - 1] >> (64 - bs);
        }
        out[i] |= v;
    }
    mask_tail(out, n);
}

/// `out |= (src >> s)`; `src` has no bits at or beyond `n`.
fn shr_or_into(src: &[u64], s: usize, _n: usize, out: &mut [u64]) {
    let (ws, bs) = (s / 64, s % 64);
    let w = src.len();
    for i in 0..w.saturating_sub(ws) {
        let j = i + ws;
        let mut v = src[j] >> bs;
        if bs > 0 && j + 1 < w {
            v |= src[j + 1] << (64 - bs);
        }
        out[i] |= v;
    }
}

/// `A + B = {a + b}`.
pub fn sumset(a: &GSet, b: &GSet) -> Result<GSet> {
    a.same_group(b)?;
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let n = a.group.order();
    let mut out = vec![0u64; large.bits.len()];
    if a.group.is_cyclic() {
        for x in small.iter() {
            rotate_or_into(&large.bits, n, x, &mut out);
        }
    } else {
        let large_elems = large.elements();
        for x in small.iter() {
            for &y in &large_elems {
                let s = a.group.add(x, y);
                out[s >> 6] |= 1 << (s & 63);
            }
        }
    }
    Ok(GSet::from_words_unchecked(a.group.clone(), out))
}

/// Quadratic reference implementation of [`sumset`].
pub fn sumset_naive(a: &GSet, b: &GSet) -> Result<GSet> {
    a.same_group(b)?;
    let mut hit = vec![false; a.group.order()];
    for x in a.iter() {
        for y in b.iter() {
            hit[a.group.add(x, y)] = true;
        }
    }
    Ok(GSet::from_fn(a.group.clone(), |x| hit[x]))
}

fn check_field(a: &GSet, mul: &MulStructure) -> Result<()> {
    if a.group.is_cyclic() && a.group.order() == mul.p() {
        Ok(())
    } else {
        Err(Error::MissingMulStructure)
    }
}

/// The nonzero part of a subset of `F_p`, in discrete-log coordinates on `Z/(p-1)`.
pub fn to_dlog_coords(a: &GSet, mul: &MulStructure) -> Result<GSet> {
    check_field(a, mul)?;
    GSet::from_elements(mul.group(), a.iter().filter(|&x| x != 0).map(|x| mul.dlog_unchecked(x)))
}

/// Inverse of [`to_dlog_coords`], optionally adding `0`.
pub fn from_dlog_coords(logs: &GSet, mul: &MulStructure, with_zero: bool) -> Result<GSet> {
    if logs.group != mul.group() {
        return Err(Error::GroupMismatch);
    }
    let zero = with_zero.then_some(0);
    GSet::from_elements(mul.additive_group(), logs.iter().map(|k| mul.exp(k)).chain(zero))
}

/// `A . B = {ab}` in `F_p`, computed as a sumset of discrete logs.
pub fn product_set(a: &GSet, b: &GSet, mul: &MulStructure) -> Result<GSet> {
    a.same_group(b)?;
    check_field(a, mul)?;
    let logs = sumset(&to_dlog_coords(a, mul)?, &to_dlog_coords(b, mul)?)?;
    let zero = (a.contains(0) && !b.is_empty()) || (b.contains(0) && !a.is_empty());
    from_dlog_coords(&logs, mul, zero)
}

pub fn product_set_naive(a: &GSet, b: &GSet, mul: &MulStructure) -> Result<GSet> {
    a.same_group(b)?;
    check_field(a, mul)?;
    let p = mul.p();
    let mut hit = vec![false; p];
    for x in a.iter() {
        for y in b.iter() {
            hit[x * y % p] = true;
        }
    }
    Ok(GSet::from_fn(a.group.clone(), |x| hit[x]))
}

/// `|A cap (x - A)|`, the number of ordered pairs in `A^2` summing to `x`.
pub fn rep_count(a: &GSet, x: usize) -> Result<usize> {
    a.group.check(x)?;
    Ok(a.iter().filter(|&y| a.contains(a.group.sub(x, y))).count())
}

/// Representation counts for every element at once.
pub fn rep_counts(a: &GSet) -> Vec<usize> {
    let mut counts = vec![0usize; a.group.order()];
    let elems = a.elements();
    for &x in &elems {
        for &y in &elems {
            counts[a.group.add(x, y)] += 1;
        }
    }
    counts
}

/// Whether `count >= eps * order`, exactly.
pub(crate) fn meets_fraction(count: usize, eps: &Ratio<u64>, order: usize) -> bool {
    (count as u128) * (*eps.denom() as u128) >= (*eps.numer() as u128) * (order as u128)
}

/// `S_eps(A) = {x : |A cap (x - A)| >= eps |G|}` with exact rational comparison.
pub fn popular_sums(a: &GSet, eps: &Ratio<u64>) -> Result<GSet> {
    if *eps.numer() == 0 {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    let n = a.group.order();
    let counts = rep_counts(a);
    Ok(GSet::from_fn(a.group.clone(), |x| meets_fraction(counts[x], eps, n)))
}

fn check_prime_field(a: &GSet) -> Result<usize> {
    let n = a.group.order();
    if a.group.is_cyclic() && is_prime(n as u64) {
        Ok(n)
    } else {
        Err(Error::InvalidParameter("dilation needs a set in F_p".into()))
    }
}

/// `cA = {c a mod p}`.
pub fn dilate(a: &GSet, c: u64) -> Result<GSet> {
    let p = check_prime_field(a)?;
    let c = (c % p as u64) as usize;
    if c == 0 {
        return Err(Error::ZeroDilation);
    }
    GSet::from_elements(a.group.clone(), a.iter().map(|x| x * c % p))
}

/// `{h : S + h = S}` by direct scan over all translates.
pub fn kneser_stabilizer(s: &GSet) -> Result<GSet> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let g = &s.group;
    Ok(GSet::from_fn(g.clone(), |h| s.translate(h) == *s))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KneserReport {
    /// `|A + A|`
    pub lhs: usize,
    /// `2|A + H| - |H|`
    pub rhs: i64,
    pub stabilizer: Vec<usize>,
    pub holds: bool,
}

/// Checks `|A + A| >= 2|A + H| - |H|` with `H` the stabilizer of `A + A`.
pub fn kneser_check(a: &GSet) -> Result<KneserReport> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let ss = sumset(a, a)?;
    let h = kneser_stabilizer(&ss)?;
    let a_plus_h = sumset(a, &h)?;
    let rhs = 2 * a_plus_h.len() as i64 - h.len() as i64;
    Ok(KneserReport {
        lhs: ss.len(),
        rhs,
        stabilizer: h.elements(),
        holds: ss.len() as i64 >= rhs,
    })
}

/// `|A| > |G|/(ell+1)` implies `|A + A| >= |G|/ell`. Returns whether the
/// implication holds for `A` (vacuously true when the hypothesis fails).
pub fn lemma_kneser_bound(a: &GSet, ell: u64) -> Result<bool> {
    if ell == 0 {
        return Err(Error::InvalidParameter("ell must be at least 1".into()));
    }
    let n = a.group.order() as u64;
    let card = a.len() as u64;
    if card * (ell + 1) <= n {
        return Ok(true);
    }
    let ss = sumset(a, a)?;
    Ok(ss.len() as u64 * ell >= n)
}

/// One line of a set file: `p=<prime>;elems=<residues>` or `p=<prime>;hexbits=<hex>`.
pub fn parse_set_line(line: &str) -> Result<GSet> {
    let mut p = None;
    let mut body = None;
    for part in line.trim().split(';') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
        match key.trim() {
            "p" => {
                p = Some(
                    value
                        .trim()
                        .parse::<u64>()
                        .map_err(|e| Error::Parse(format!("bad prime {value:?}: {e}")))?,
                )
            }
            "elems" | "hexbits" => body = Some((key.trim(), value.trim())),
            other => return Err(Error::Parse(format!("unknown key {other:?}"))),
        }
    }
    let p = p.ok_or_else(|| Error::Parse("missing p=".into()))?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let group = GroupSpec::cyclic(p)?;
    match body {
        Some(("elems", v)) => {
            let elems = v
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad residue {s:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            GSet::from_elements(group, elems)
        }
        Some((_, v)) => GSet::from_hex(group, v),
        None => Err(Error::Parse("missing elems= or hexbits=".into())),
    }
}

/// Renders a subset of `F_p` as a set-file line, residue list up to 64 elements.
pub fn format_set_line(a: &GSet) -> String {
    let p = a.group.order();
    if a.len() <= 64 {
        let elems: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        format!("p={p};elems={}", elems.join(","))
    } else {
        format!("p={p};hexbits={}", a.to_hex())
    }
}

pub fn parse_set_file(text: &str) -> Result<Vec<GSet>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_set_line)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: u64, elems: &[usize]) -> GSet {
        GSet::from_elements(GroupSpec::cyclic(n).unwrap(), elems.iter().copied()).unwrap()
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(sumset(&set(5, &[0, 1]), &set(5, &[0, 1])).unwrap().elements(), vec![0, 1, 2]);
        assert_eq!(sumset(&set(6, &[0, 3]), &set(6, &[0, 3])).unwrap().elements(), vec![0, 3]);
        let a = set(13, &[1, 5]);
        assert_eq!(sumset(&a, &a).unwrap().elements(), vec![2, 6, 10]);
    }

    #[test]
    fn sumset_group_mismatch() {
        assert_eq!(sumset(&set(5, &[0]), &set(7, &[0])), Err(Error::GroupMismatch));
    }

    #[test]
    fn rotation_across_word_boundaries() {
        let a = set(130, &[0, 63, 64, 127, 129]);
        for h in 0..130 {
            let expect: Vec<usize> = {
                let mut v: Vec<usize> = a.iter().map(|x| (x + h) % 130).collect();
                v.sort();
                v
            };
            assert_eq!(a.translate(h).elements(), expect, "shift {h}");
        }
    }

    #[test]
    fn product_set_examples() {
        let m7 = MulStructure::new(7).unwrap();
        let a = set(7, &[1, 2, 4]);
        assert_eq!(product_set(&a, &a, &m7).unwrap().elements(), vec![1, 2, 4]);
        let a = set(7, &[0, 3]);
        assert_eq!(product_set(&a, &a, &m7).unwrap().elements(), vec![0, 2]);
        let m13 = MulStructure::new(13).unwrap();
        let a = set(13, &[1, 5]);
        assert_eq!(product_set(&a, &a, &m13).unwrap().elements(), vec![1, 5, 12]);
        assert_eq!(product_set(&a, &a, &m7), Err(Error::MissingMulStructure));
        let z = set(7, &[0]);
        assert_eq!(product_set(&z, &set(7, &[]), &m7).unwrap().len(), 0);
        assert_eq!(product_set(&z, &set(7, &[3]), &m7).unwrap().elements(), vec![0]);
    }

    #[test]
    fn rep_count_examples() {
        let a = set(7, &[0, 1, 2]);
        assert_eq!(rep_count(&a, 2).unwrap(), 3);
        assert_eq!(rep_count(&a, 6).unwrap(), 0);
        let full = GSet::full(GroupSpec::cyclic(9).unwrap());
        for x in 0..9 {
            assert_eq!(rep_count(&full, x).unwrap(), 9);
        }
        assert_eq!(rep_counts(&a)[..5], [1, 2, 3, 2, 1]);
    }

    #[test]
    fn popular_sum_examples() {
        let full = GSet::full(GroupSpec::cyclic(5).unwrap());
        assert_eq!(popular_sums(&full, &Ratio::new(2, 5)).unwrap().len(), 5);
        let a = set(7, &[0, 1, 2]);
        assert_eq!(popular_sums(&a, &Ratio::new(2, 7)).unwrap().elements(), vec![1, 2, 3]);
        assert!(popular_sums(&set(5, &[0]), &Ratio::new(1, 2)).unwrap().is_empty());
        assert!(popular_sums(&a, &Ratio::new(0, 1)).is_err());
    }

    #[test]
    fn dilation_examples() {
        let a = set(13, &[1, 5]);
        assert_eq!(dilate(&a, 1).unwrap(), a);
        assert_eq!(dilate(&a, 2).unwrap().elements(), vec![2, 10]);
        assert_eq!(dilate(&a, 13), Err(Error::ZeroDilation));
        assert!(dilate(&set(12, &[1]), 5).is_err());
    }

    #[test]
    fn stabilizer_examples() {
        assert_eq!(kneser_stabilizer(&set(6, &[0, 3])).unwrap().elements(), vec![0, 3]);
        let full = GSet::full(GroupSpec::cyclic(8).unwrap());
        assert_eq!(kneser_stabilizer(&full).unwrap(), full);
        assert_eq!(kneser_stabilizer(&set(6, &[])), Err(Error::EmptySet));
    }

    #[test]
    fn kneser_examples() {
        let r = kneser_check(&set(6, &[0, 3])).unwrap();
        assert_eq!((r.lhs, r.rhs, r.stabilizer.clone()), (2, 2, vec![0, 3]));
        let r = kneser_check(&set(5, &[0, 1])).unwrap();
        assert_eq!((r.lhs, r.rhs, r.stabilizer.clone()), (3, 3, vec![0]));
        // A coset of {0, 4, 8} in Z/12.
        let r = kneser_check(&set(12, &[1, 5, 9])).unwrap();
        assert_eq!(r.lhs as i64, r.rhs);
    }

    #[test]
    fn lemma_kneser_examples() {
        // |A| = 3 is not > 6/2, so the implication is vacuous even though |A+A| = 5 < 6.
        let a = set(6, &[0, 1, 2]);
        assert_eq!(sumset(&a, &a).unwrap().len(), 5);
        assert!(lemma_kneser_bound(&a, 1).unwrap());
        assert!(lemma_kneser_bound(&set(6, &[0, 1, 2, 3]), 1).unwrap());
        let full = GSet::full(GroupSpec::cyclic(6).unwrap());
        for ell in 1..6 {
            assert!(lemma_kneser_bound(&full, ell).unwrap());
        }
        assert!(lemma_kneser_bound(&a, 0).is_err());
    }

    #[test]
    fn set_lines() {
        let a = parse_set_line("p=13;elems=1,5").unwrap();
        assert_eq!(a.elements(), vec![1, 5]);
        assert_eq!(format_set_line(&a), "p=13;elems=1,5");
        let b = parse_set_line("p=13;hexbits=2200").unwrap();
        assert_eq!(b, a);
        assert_eq!(a.to_hex(), "2200");
        assert!(parse_set_line("p=12;elems=1").is_err());
        assert!(parse_set_line("p=13;elems=13").is_err());
        assert!(parse_set_line("p=13;hexbits=22").is_err());
        assert!(parse_set_line("p=13;hexbits=0020").is_err());
        assert!(parse_set_line("elems=1").is_err());
        let big = GSet::from_fn(GroupSpec::cyclic(211).unwrap(), |x| x % 3 == 0);
        let line = format_set_line(&big);
        assert!(line.contains("hexbits="));
        assert_eq!(parse_set_line(&line).unwrap(), big);
    }

    #[test]
    fn set_algebra() {
        let a = set(10, &[1, 2, 3]);
        let b = set(10, &[3, 4]);
        assert_eq!(a.union(&b).unwrap().elements(), vec![1, 2, 3, 4]);
        assert_eq!(a.intersection(&b).unwrap().elements(), vec![3]);
        assert_eq!(a.difference(&b).unwrap().elements(), vec![1, 2]);
        assert_eq!(a.complement().len(), 7);
        assert!(set(10, &[2]).is_subset(&a));
        assert_eq!(a.negate().elements(), vec![7, 8, 9]);
    }
}
