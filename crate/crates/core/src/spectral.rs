//! Fourier analysis on a finite abelian group.
//!
//! Normalization is asymmetric and used everywhere in the crate: averages on
//! the group side, sums on the character side.
//!
//! ```text
//! f^(gamma) = E_x f(x) e(-gamma(x))        f(x) = sum_gamma f^(gamma) e(gamma(x))
//! ||f||_p^p = E_x |f(x)|^p                 ||f^||_p^p = sum_gamma |f^(gamma)|^p
//! (f * g)(x) = E_y f(y) g(x - y)           ||f||_U2 = ||f^||_4
//! ```
//!
//! The transform runs one cyclic factor at a time with `rustfft`; the
//! quadratic [`naive`] routines are kept as independent oracles.

use num_complex::Complex;
use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::group::{CharIndex, GroupSpec};
use crate::scalar::Scalar;
use crate::setops::GSet;

/// Tolerance used for the optional 1-boundedness flag.
pub const ONE_BOUNDED_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction<T: Scalar> {
    group: GroupSpec,
    values: Vec<Complex<T>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T: Scalar> {
    group: GroupSpec,
    coeffs: Vec<Complex<T>>,
}

fn check_len(group: &GroupSpec, len: usize) -> Result<()> {
    if len == group.order() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "expected {} values for a group of order {}, got {len}",
            group.order(),
            group.order()
        )))
    }
}

/// `e(theta) = exp(2 pi i theta)` for `theta = num / den`.
pub fn unit_phase<T: Scalar>(num: usize, den: usize) -> Complex<T> {
    let theta = T::TAU() * T::of_usize(num % den) / T::of_usize(den);
    Complex::new(theta.cos(), theta.sin())
}

impl<T: Scalar> GridFunction<T> {
    pub fn new(group: GroupSpec, values: Vec<Complex<T>>) -> Result<Self> {
        check_len(&group, values.len())?;
        Ok(Self { group, values })
    }

    pub fn from_real(group: GroupSpec, values: &[T]) -> Result<Self> {
        check_len(&group, values.len())?;
        Ok(Self { group, values: values.iter().map(|&v| Complex::new(v, T::zero())).collect() })
    }

    pub fn from_fn(group: GroupSpec, f: impl FnMut(usize) -> Complex<T>) -> Self {
        let values = (0..group.order()).map(f).collect();
        Self { group, values }
    }

    pub fn constant(group: GroupSpec, c: Complex<T>) -> Self {
        Self::from_fn(group, |_| c)
    }

    pub fn zero(group: GroupSpec) -> Self {
        Self::constant(group, Complex::new(T::zero(), T::zero()))
    }

    pub fn indicator(set: &GSet) -> Self {
        let (one, zero) = (T::one(), T::zero());
        Self::from_fn(set.group().clone(), |x| {
            Complex::new(if set.contains(x) { one } else { zero }, zero)
        })
    }

    /// `x -> e(gamma(x))`.
    pub fn character(group: GroupSpec, gamma: CharIndex) -> Result<Self> {
        group.check(gamma.0)?;
        let l = group.exponent();
        let g = group.clone();
        Ok(Self::from_fn(group, |x| unit_phase(g.phase_numerator(gamma, x), l)))
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    pub fn sup_norm(&self) -> T {
        self.values.iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }

    pub fn is_one_bounded(&self) -> bool {
        self.sup_norm() <= T::one() + T::of_f64(ONE_BOUNDED_SLACK)
    }

    pub fn mean(&self) -> Complex<T> {
        let s: Complex<T> = self.values.iter().copied().sum();
        s / T::of_usize(self.values.len())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { group: self.group.clone(), values })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self { group: self.group.clone(), values: self.values.iter().map(|&v| v * c).collect() }
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self { group: self.group.clone(), values: self.values.iter().map(|&v| f(v)).collect() }
    }
}

impl<T: Scalar> Spectrum<T> {
    pub fn new(group: GroupSpec, coeffs: Vec<Complex<T>>) -> Result<Self> {
        check_len(&group, coeffs.len())?;
        Ok(Self { group, coeffs })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn get(&self, gamma: CharIndex) -> Complex<T> {
        self.coeffs[gamma.0]
    }

    /// `sum |c|`
    pub fn l1(&self) -> T {
        self.coeffs.iter().map(|c| c.norm()).fold(T::zero(), |a, b| a + b)
    }

    /// `(sum |c|^p)^(1/p)` for `p >= 1`.
    pub fn lp(&self, p: T) -> Result<T> {
        check_exponent(p)?;
        let s = self.coeffs.iter().map(|c| c.norm().powf(p)).fold(T::zero(), |a, b| a + b);
        Ok(s.powf(p.recip()))
    }

    pub fn l2(&self) -> T {
        self.coeffs.iter().map(|c| c.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt()
    }

    pub fn sup(&self) -> T {
        self.coeffs.iter().map(|c| c.norm()).fold(T::zero(), T::max)
    }

    /// Largest coefficient in modulus; ties go to the smallest index.
    pub fn argmax(&self) -> CharIndex {
        let mut best = (0, T::neg_infinity());
        for (i, c) in self.coeffs.iter().enumerate() {
            let m = c.norm_sqr();
            if m > best.1 {
                best = (i, m);
            }
        }
        CharIndex(best.0)
    }

    /// `sum f^ conj(g^)`
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b.conj()).sum())
    }

    pub fn inverse(&self) -> GridFunction<T> {
        let mut values = self.coeffs.clone();
        transform_in_place(&self.group, &mut values, FftDirection::Inverse);
        GridFunction { group: self.group.clone(), values }
    }

    /// Keeps only the coefficients at `keep`, zeroing the rest.
    pub fn restricted(&self, keep: impl IntoIterator<Item = CharIndex>) -> Self {
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); self.coeffs.len()];
        for g in keep {
            coeffs[g.0] = self.coeffs[g.0];
        }
        Self { group: self.group.clone(), coeffs }
    }

    /// Character indices sorted by decreasing modulus, ties by index.
    pub fn ranked(&self) -> Vec<CharIndex> {
        let mut idx: Vec<usize> = (0..self.coeffs.len()).collect();
        idx.sort_by(|&a, &b| {
            self.coeffs[b]
                .norm_sqr()
                .partial_cmp(&self.coeffs[a].norm_sqr())
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        idx.into_iter().map(CharIndex).collect()
    }
}

fn check_exponent<T: Scalar>(p: T) -> Result<()> {
    if p >= T::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("norm exponent must be >= 1, got {:?}", p)))
    }
}

/// Unnormalized transform along every cyclic factor.
fn transform_in_place<T: Scalar>(group: &GroupSpec, data: &mut [Complex<T>], dir: FftDirection) {
    let mut planner = FftPlanner::<T>::new();
    let mut stride = 1;
    for &n in group.factors() {
        let fft = planner.plan_fft(n, dir);
        if stride == 1 {
            fft.process(data);
        } else {
            let block = n * stride;
            let mut line = vec![Complex::new(T::zero(), T::zero()); n];
            for outer in (0..data.len()).step_by(block) {
                for inner in 0..stride {
                    let base = outer + inner;
                    for (k, slot) in line.iter_mut().enumerate() {
                        *slot = data[base + k * stride];
                    }
                    fft.process(&mut line);
                    for (k, v) in line.iter().enumerate() {
                        data[base + k * stride] = *v;
                    }
                }
            }
        }
        stride *= n;
    }
}

/// `f^(gamma) = E_x f(x) e(-gamma(x))`.
pub fn fourier<T: Scalar>(f: &GridFunction<T>) -> Spectrum<T> {
    let mut coeffs = f.values.clone();
    transform_in_place(&f.group, &mut coeffs, FftDirection::Forward);
    let inv = T::of_usize(coeffs.len()).recip();
    for c in &mut coeffs {
        *c = *c * inv;
    }
    Spectrum { group: f.group.clone(), coeffs }
}

/// `(f * g)(x) = E_y f(y) g(x - y)`, through `(f * g)^ = f^ g^`.
pub fn convolve<T: Scalar>(f: &GridFunction<T>, g: &GridFunction<T>) -> Result<GridFunction<T>> {
    if f.group != g.group {
        return Err(Error::GroupMismatch);
    }
    let (ff, gg) = (fourier(f), fourier(g));
    let coeffs = ff.coeffs.iter().zip(&gg.coeffs).map(|(a, b)| a * b).collect();
    Ok(Spectrum { group: f.group.clone(), coeffs }.inverse())
}

/// `||f||_U2 = (sum |f^|^4)^(1/4)`.
pub fn u2_norm<T: Scalar>(f: &GridFunction<T>) -> T {
    u2_from_spectrum(&fourier(f))
}

pub fn u2_from_spectrum<T: Scalar>(s: &Spectrum<T>) -> T {
    let sum = s.coeffs.iter().map(|c| {
        let m = c.norm_sqr();
        m * m
    });
    sum.fold(T::zero(), |a, b| a + b).sqrt().sqrt()
}

/// `(E |f|^p)^(1/p)` for `p >= 1`.
pub fn lp_norm<T: Scalar>(f: &GridFunction<T>, p: T) -> Result<T> {
    check_exponent(p)?;
    let s = f.values.iter().map(|v| v.norm().powf(p)).fold(T::zero(), |a, b| a + b);
    Ok((s / T::of_usize(f.values.len())).powf(p.recip()))
}

pub fn l2_norm<T: Scalar>(f: &GridFunction<T>) -> T {
    let s = f.values.iter().map(|v| v.norm_sqr()).fold(T::zero(), |a, b| a + b);
    (s / T::of_usize(f.values.len())).sqrt()
}

pub fn spectrum_l1<T: Scalar>(s: &Spectrum<T>) -> T {
    s.l1()
}

/// `<f, g> = E_x f(x) conj(g(x))`.
pub fn inner<T: Scalar>(f: &GridFunction<T>, g: &GridFunction<T>) -> Result<Complex<T>> {
    if f.group != g.group {
        return Err(Error::GroupMismatch);
    }
    let s: Complex<T> = f.values.iter().zip(&g.values).map(|(a, b)| a * b.conj()).sum();
    Ok(s / T::of_usize(f.values.len()))
}

/// Direct-summation oracles, quadratic or worse, that share no code with
/// the fast paths above.
pub mod naive {
    use super::*;

    pub fn fourier<T: Scalar>(f: &GridFunction<T>) -> Spectrum<T> {
        let g = &f.group;
        let (n, l) = (g.order(), g.exponent());
        let coeffs = (0..n)
            .map(|gamma| {
                let s: Complex<T> = (0..n)
                    .map(|x| f.values[x] * unit_phase::<T>(l - g.phase_numerator(CharIndex(gamma), x), l))
                    .sum();
                s / T::of_usize(n)
            })
            .collect();
        Spectrum { group: g.clone(), coeffs }
    }

    pub fn inverse<T: Scalar>(s: &Spectrum<T>) -> GridFunction<T> {
        let g = &s.group;
        let (n, l) = (g.order(), g.exponent());
        let values = (0..n)
            .map(|x| {
                (0..n)
                    .map(|gamma| s.coeffs[gamma] * unit_phase::<T>(g.phase_numerator(CharIndex(gamma), x), l))
                    .sum()
            })
            .collect();
        GridFunction { group: g.clone(), values }
    }

    pub fn convolve<T: Scalar>(f: &GridFunction<T>, h: &GridFunction<T>) -> Result<GridFunction<T>> {
        if f.group != h.group {
            return Err(Error::GroupMismatch);
        }
        let g = &f.group;
        let n = g.order();
        let values = (0..n)
            .map(|x| {
                let s: Complex<T> = (0..n).map(|y| f.values[y] * h.values[g.sub(x, y)]).sum();
                s / T::of_usize(n)
            })
            .collect();
        Ok(GridFunction { group: g.clone(), values })
    }

    /// `E_{x,h1,h2} f(x) conj f(x+h1) conj f(x+h2) f(x+h1+h2)`, to the 1/4 power.
    pub fn u2_norm<T: Scalar>(f: &GridFunction<T>) -> T {
        let g = &f.group;
        let n = g.order();
        let table = g.addition_table();
        let v = &f.values;
        let mut acc = Complex::new(T::zero(), T::zero());
        for x in 0..n {
            for h1 in 0..n {
                let x1 = table[x * n + h1] as usize;
                let a = v[x] * v[x1].conj();
                for h2 in 0..n {
                    let x2 = table[x * n + h2] as usize;
                    let x12 = table[x1 * n + h2] as usize;
                    acc = acc + a * v[x2].conj() * v[x12];
                }
            }
        }
        let mean = acc.re / T::of_usize(n * n * n);
        mean.max(T::zero()).sqrt().sqrt()
    }
}
