use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::MulStructure;
use crate::setops::GSet;
use crate::spectral::{fourier, GridFunction, Spectrum};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectReport {
    pub p: usize,
    pub actual: usize,
    /// `|A1| |A2| / p`
    pub predicted: f64,
    pub error: f64,
    /// Rigorous bound on `error` from the best pair of spectral truncations.
    pub fg_bound: f64,
    /// Additive characters kept for `A1`.
    pub additive_terms: usize,
    /// Multiplicative characters kept for `A2`.
    pub multiplicative_terms: usize,
    /// `max` of the two truncated spectral l1 masses.
    pub k: f64,
    /// `sqrt(p) ln p`
    pub pv_bound: f64,
    pub within_fg: bool,
    pub within_pv: bool,
}

/// Prefix l1 masses and suffix l2 masses of a spectrum taken in rank order,
/// with the trivial character forced first.
struct Profile {
    l1: Vec<f64>,
    kept_sq: Vec<f64>,
    tail_sq: Vec<f64>,
}

fn profile(s: &Spectrum<f64>, budget: usize) -> Profile {
    let order: Vec<usize> = std::iter::once(0)
        .chain(s.ranked().into_iter().map(|c| c.0).filter(|&i| i != 0))
        .collect();
    let mags: Vec<f64> = order.iter().map(|&i| s.coeffs()[i].norm_sqr()).collect();
    let mut suffix = vec![0.0; mags.len() + 1];
    for i in (0..mags.len()).rev() {
        suffix[i] = suffix[i + 1] + mags[i];
    }
    let budget = budget.clamp(1, mags.len());
    let (mut l1, mut kept_sq, mut tail_sq) = (Vec::new(), Vec::new(), Vec::new());
    let (mut a, mut b) = (0.0, 0.0);
    for k in 0..budget {
        a += mags[k].sqrt();
        b += mags[k];
        l1.push(a);
        kept_sq.push(b);
        tail_sq.push(suffix[k + 1]);
    }
    Profile { l1, kept_sq, tail_sq }
}

/// Compares `|A1 cap A2|` with `|A1| |A2| / p` and bounds the gap by expanding
/// `1_A1` in additive characters and `1_A2` in multiplicative ones.
///
/// With `f`, `g` the truncations and `K` the larger of their l1 masses,
/// `p^-1 |A1 cap A2^x| = <f, g> + <1_A1 - f, 1_A2^x> + <f, 1_A2^x - g>`; every
/// cross term of `<f, g>` other than the trivial pair is a normalized Gauss
/// sum of size at most `p^(-1/2)`. The point `0` adds at most 1.
pub fn intersect_estimate(a1: &GSet, a2: &GSet, budget: usize, mul: &MulStructure) -> Result<IntersectReport> {
    let p = mul.p();
    let field = mul.additive_group();
    if a1.group() != &field || a2.group() != &field {
        return Err(Error::MissingMulStructure);
    }
    let pf = p as f64;
    let actual = a1.intersection(a2)?.len();
    let predicted = a1.len() as f64 * a2.len() as f64 / pf;
    let error = (actual as f64 - predicted).abs();

    let additive = profile(&fourier(&GridFunction::<f64>::indicator(a1)), budget);
    let logs = GridFunction::<f64>::from_real(
        mul.group(),
        &(0..p - 1).map(|k| if a2.contains(mul.exp(k)) { 1.0 } else { 0.0 }).collect::<Vec<_>>(),
    )?;
    let multiplicative = profile(&fourier(&logs), budget);

    let b_norm = ((a2.len() - usize::from(a2.contains(0))) as f64 / pf).sqrt();
    let shrink = ((pf - 1.0) / pf).sqrt();
    let zero_slack = if a2.contains(0) { 1.0 } else { 0.0 };
    let mut best = (f64::INFINITY, 0, 0, 0.0);
    for i in 0..additive.l1.len() {
        let leak_a = additive.tail_sq[i].max(0.0).sqrt() * b_norm;
        let f_norm = additive.kept_sq[i].sqrt();
        for j in 0..multiplicative.l1.len() {
            let k = additive.l1[i].max(multiplicative.l1[j]);
            let leak_b = f_norm * multiplicative.tail_sq[j].max(0.0).sqrt() * shrink;
            let bound = pf * (k * k / pf.sqrt() + leak_a + leak_b) + zero_slack;
            if bound < best.0 {
                best = (bound, i + 1, j + 1, k);
            }
        }
    }
    let pv_bound = pf.sqrt() * pf.ln();
    Ok(IntersectReport {
        p,
        actual,
        predicted,
        error,
        fg_bound: best.0,
        additive_terms: best.1,
        multiplicative_terms: best.2,
        k: best.3,
        pv_bound,
        within_fg: error <= best.0 * (1.0 + 1e-9),
        within_pv: error <= pv_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_sets() {
        let mul = MulStructure::new(31).unwrap();
        let g = mul.additive_group();
        let a1 = GSet::full(g.clone());
        let a2 = GSet::from_fn(g, |x| x != 0);
        let r = intersect_estimate(&a1, &a2, 8, &mul).unwrap();
        assert_eq!(r.actual, 30);
        assert!((r.predicted - 30.0).abs() < 1e-12);
        assert!(r.error <= 1.0 && r.within_fg);
    }

    #[test]
    fn interval_against_coset() {
        let mul = MulStructure::new(211).unwrap();
        let a1 = GSet::from_fn(mul.additive_group(), |x| (10..80).contains(&x));
        let a2 = mul.coset(3, 1).unwrap();
        let r = intersect_estimate(&a1, &a2, 64, &mul).unwrap();
        assert!(r.within_fg, "{r:?}");
        assert!(r.within_pv);
    }

    #[test]
    fn rejects_foreign_group() {
        let mul = MulStructure::new(11).unwrap();
        let other = GSet::full(crate::group::GroupSpec::cyclic(12).unwrap());
        assert!(intersect_estimate(&other, &other, 4, &mul).is_err());
    }
}
