use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{is_prime, MulStructure};
use crate::setops::{product_set, sumset, GSet};

/// `A = [1, N] cap H` with `H` the multiplicative subgroup of index `ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub p: u64,
    pub ell: u64,
    pub n: u64,
}

impl ConstructionParams {
    pub fn new(p: u64, ell: u64, n: u64) -> Result<Self> {
        let params = Self { p, ell, n };
        params.validate()?;
        Ok(params)
    }

    /// `N = ceil(ell * alpha * p)`, clamped into `[1, p)`.
    pub fn from_alpha(p: u64, ell: u64, alpha: &Ratio<i64>) -> Result<Self> {
        if *alpha.numer() <= 0 || alpha.numer() >= alpha.denom() {
            return Err(Error::InvalidParameter(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        let scaled = Ratio::new(*alpha.numer() as i128 * ell as i128 * p as i128, *alpha.denom() as i128);
        let n = scaled.ceil().to_integer().clamp(1, p as i128 - 1) as u64;
        Self::new(p, ell, n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 2 || !is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        if self.ell == 0 || (self.p - 1) % self.ell != 0 {
            return Err(Error::NotDivisor { ell: self.ell, p_minus_one: self.p - 1 });
        }
        if self.n == 0 || self.n >= self.p {
            return Err(Error::InvalidParameter(format!("N must lie in [1, {}), got {}", self.p, self.n)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub params: ConstructionParams,
    pub card: usize,
    pub sum_size: usize,
    pub prod_size: usize,
    /// `2N - 1`
    pub sum_bound: u64,
    /// `(p - 1) / ell`
    pub prod_bound: u64,
    /// `max(2 ell |A|, p / ell)`, the predicted size of `max(|A+A|, |A.A|)`.
    pub envelope: f64,
}

impl ConstructionReport {
    pub fn max_ratio(&self) -> f64 {
        self.sum_size.max(self.prod_size) as f64 / self.params.p as f64
    }
}

pub fn construct_extremal(params: &ConstructionParams) -> Result<(GSet, ConstructionReport)> {
    params.validate()?;
    let mul = MulStructure::new(params.p)?;
    let h = mul.subgroup(params.ell)?;
    let a = GSet::from_fn(mul.additive_group(), |x| x >= 1 && x as u64 <= params.n && h.contains(x));
    let sum_size = sumset(&a, &a)?.len();
    let prod_size = product_set(&a, &a, &mul)?.len();
    let sum_bound = 2 * params.n - 1;
    let prod_bound = (params.p - 1) / params.ell;
    if sum_size as u64 > sum_bound || prod_size as u64 > prod_bound {
        return Err(Error::Validation(format!(
            "construction bound violated: |A+A| = {sum_size} (max {sum_bound}), |A.A| = {prod_size} (max {prod_bound})"
        )));
    }
    let envelope = (2.0 * params.ell as f64 * a.len() as f64).max(params.p as f64 / params.ell as f64);
    let report = ConstructionReport {
        params: *params,
        card: a.len(),
        sum_size,
        prod_size,
        sum_bound,
        prod_bound,
        envelope,
    };
    Ok((a, report))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyaVinogradovReport {
    pub count: usize,
    pub n_over_ell: f64,
    /// `| |A| - N/ell |`
    pub deviation: f64,
    /// `sqrt(p) ln p`, taking the implied constant as 1.
    pub bound: f64,
    pub within: bool,
}

pub fn polya_vinogradov_report(params: &ConstructionParams) -> Result<PolyaVinogradovReport> {
    params.validate()?;
    let mul = MulStructure::new(params.p)?;
    let count = (1..=params.n as usize)
        .filter(|&x| mul.dlog_unchecked(x) as u64 % params.ell == 0)
        .count();
    let n_over_ell = params.n as f64 / params.ell as f64;
    let deviation = (count as f64 - n_over_ell).abs();
    let p = params.p as f64;
    let bound = p.sqrt() * p.ln();
    Ok(PolyaVinogradovReport { count, n_over_ell, deviation, bound, within: deviation <= bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thirteen() {
        let params = ConstructionParams::new(13, 3, 6).unwrap();
        let (a, r) = construct_extremal(&params).unwrap();
        assert_eq!(a.elements(), vec![1, 5]);
        assert_eq!((r.sum_size, r.prod_size), (3, 3));
        let h = crate::group::mul_subgroup(13, 3).unwrap();
        assert_eq!(h.elements(), vec![1, 5, 8, 12]);
        let pv = polya_vinogradov_report(&params).unwrap();
        assert_eq!((pv.count, pv.n_over_ell, pv.deviation), (2, 2.0, 0.0));
    }

    #[test]
    fn full_multiplicative_group() {
        let (a, r) = construct_extremal(&ConstructionParams::new(13, 1, 12).unwrap()).unwrap();
        assert_eq!(a.len(), 12);
        assert_eq!(r.prod_size, 12);
    }

    #[test]
    fn quadratic_residues_below_half() {
        let params = ConstructionParams::new(101, 2, 50).unwrap();
        let pv = polya_vinogradov_report(&params).unwrap();
        let direct = (1..=50u64).filter(|&x| (1..101u64).any(|y| y * y % 101 == x)).count();
        assert_eq!(pv.count, direct);
        assert!(pv.within);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ConstructionParams::new(13, 5, 6).is_err());
        assert!(ConstructionParams::new(12, 1, 6).is_err());
        assert!(ConstructionParams::new(13, 3, 13).is_err());
        assert!(ConstructionParams::new(13, 3, 0).is_err());
    }

    #[test]
    fn from_alpha_rounds_up() {
        let params = ConstructionParams::from_alpha(9973, 3, &Ratio::new(1, 20)).unwrap();
        assert_eq!(params.n, 1496);
    }
}
