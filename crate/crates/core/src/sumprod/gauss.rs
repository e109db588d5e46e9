use num_complex::Complex;

use crate::error::{Error, Result};
use crate::group::MulStructure;
use crate::scalar::Scalar;
use crate::spectral::unit_phase;

/// `E_n e_p(r n) conj(chi_j(n))` over `n in F_p`, with `chi_j(g^k) = e(j k / (p-1))`
/// and `chi_j(0) = 0`.
///
/// Each phase is reduced exactly over the denominator `p (p - 1)`.
pub fn gauss_orthogonality<T: Scalar>(mul: &MulStructure, r: usize, chi: usize) -> Result<Complex<T>> {
    let p = mul.p();
    if r >= p {
        return Err(Error::IndexOutOfRange { index: r, order: p });
    }
    if chi >= p - 1 {
        return Err(Error::IndexOutOfRange { index: chi, order: p - 1 });
    }
    let den = p * (p - 1);
    let mut acc = Complex::new(T::zero(), T::zero());
    for n in 1..p {
        let additive = (r * n % p) * (p - 1);
        let multiplicative = (chi * mul.dlog_unchecked(n) % (p - 1)) * p;
        acc = acc + unit_phase::<T>((additive + den - multiplicative) % den, den);
    }
    Ok(acc / T::of_usize(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven() {
        let mul = MulStructure::new(7).unwrap();
        let quad = gauss_orthogonality::<f64>(&mul, 1, 3).unwrap();
        assert!((quad.norm() - 7f64.powf(-0.5)).abs() < 1e-10);
        assert!(gauss_orthogonality::<f64>(&mul, 0, 2).unwrap().norm() < 1e-12);
        assert!((gauss_orthogonality::<f64>(&mul, 1, 0).unwrap().norm() - 1.0 / 7.0).abs() < 1e-12);
        let both = gauss_orthogonality::<f64>(&mul, 0, 0).unwrap();
        assert!((both - Complex::new(6.0 / 7.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn range_checked() {
        let mul = MulStructure::new(7).unwrap();
        assert!(gauss_orthogonality::<f64>(&mul, 7, 1).is_err());
        assert!(gauss_orthogonality::<f64>(&mul, 1, 6).is_err());
    }

    #[test]
    fn single_precision() {
        let mul = MulStructure::new(31).unwrap();
        let v = gauss_orthogonality::<f32>(&mul, 5, 7).unwrap();
        assert!((v.norm() - 31f32.powf(-0.5)).abs() < 1e-5);
    }
}
