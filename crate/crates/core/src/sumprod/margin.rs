use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::falpha::ratio_to_f64;
use super::search::SearchRecord;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarginRow {
    pub ell: u64,
    /// `ratio + eps`
    pub beta: f64,
    /// `|A| / p`
    pub density: f64,
    /// `beta / (2 (ell + 1))`
    pub bound: f64,
    pub margin: f64,
    pub holds: bool,
}

/// Rows are advisory: the density bound is only claimed for large `p`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarginReport {
    pub p: u64,
    pub ratio: f64,
    pub eps: f64,
    pub advisory: bool,
    pub rows: Vec<MarginRow>,
}

/// For every `ell` with `ratio + eps < 1/ell`, compares the witness density
/// with `(ratio + eps) / (2 (ell + 1))`. Comparisons are exact.
pub fn theorem_main_margin(rec: &SearchRecord, eps: &Ratio<i64>) -> Result<MarginReport> {
    if *eps.numer() <= 0 || eps.numer() >= eps.denom() {
        return Err(Error::InvalidParameter(format!("eps must lie in (0, 1), got {eps}")));
    }
    rec.validate()?;
    let p = rec.p as i128;
    let ratio = Ratio::new(rec.max_size() as i128, p);
    let beta = ratio + Ratio::new(*eps.numer() as i128, *eps.denom() as i128);
    let density = Ratio::new(rec.witness.len() as i128, p);
    let mut rows = Vec::new();
    let mut ell = 1i128;
    while beta < Ratio::new(1, ell) {
        let bound = beta / Ratio::from_integer(2 * (ell + 1));
        rows.push(MarginRow {
            ell: ell as u64,
            beta: ratio_to_f64(&beta),
            density: ratio_to_f64(&density),
            bound: ratio_to_f64(&bound),
            margin: ratio_to_f64(&(bound - density)),
            holds: density <= bound,
        });
        ell += 1;
    }
    Ok(MarginReport {
        p: rec.p,
        ratio: ratio_to_f64(&ratio),
        eps: ratio_to_f64(eps),
        advisory: true,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sumprod::search::{exhaustive_search, SearchConfig};

    #[test]
    fn saturated_record_has_no_rows() {
        let rec = exhaustive_search(5, 5, &SearchConfig::default()).unwrap();
        let r = theorem_main_margin(&rec, &Ratio::new(1, 10)).unwrap();
        assert!(r.rows.is_empty());
        assert!(r.advisory);
    }

    #[test]
    fn small_prime_rows_are_advisory() {
        let rec = exhaustive_search(5, 1, &SearchConfig::default()).unwrap();
        let r = theorem_main_margin(&rec, &Ratio::new(1, 20)).unwrap();
        // ratio 1/5 + 1/20 = 1/4, so ell in {1, 2, 3}.
        assert_eq!(r.rows.iter().map(|row| row.ell).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert!(r.advisory);
    }
}
