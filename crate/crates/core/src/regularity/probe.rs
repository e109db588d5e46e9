use serde::{Deserialize, Serialize};

use crate::setops::GSet;
use crate::spectral::{fourier, l2_norm, GridFunction};

/// One point `(M, F(M))` of an empirical growth curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurabilityProbe {
    pub m: f64,
    /// `||1_E - f_str||_2` after clamping `f_str` to the unit disc.
    pub achieved_l2_error: f64,
    /// `||f_str^||_1` of the clamped approximant.
    pub achieved_spectral_l1: f64,
    /// Number of Fourier coefficients kept before clamping.
    pub truncation_size: usize,
    /// Whether the clamped approximant met the `1/M` target.
    pub reached: bool,
}

/// For each `M`, truncates the spectrum of `1_E` to its `k` largest
/// coefficients with `k` minimal such that the truncation is within `1/M`
/// in `L^2` (always keeping at least one), clamps the result pointwise to the unit disc, and records the
/// spectral `l^1` mass of what remains.
pub fn measurability_probe(e: &GSet, m_list: &[f64]) -> Vec<MeasurabilityProbe> {
    let f = GridFunction::<f64>::indicator(e);
    let spec = fourier(&f);
    let ranked = spec.ranked();
    // tail[k] = L^2 mass outside the k largest coefficients.
    let mut tail = vec![0.0f64; ranked.len() + 1];
    for k in (0..ranked.len()).rev() {
        tail[k] = tail[k + 1] + spec.get(ranked[k]).norm_sqr();
    }
    m_list
        .iter()
        .map(|&m| {
            let target = 1.0 / m;
            let k = (1..=ranked.len())
                .find(|&k| tail[k].max(0.0).sqrt() <= target)
                .unwrap_or(ranked.len());
            let approx = spec.restricted(ranked[..k].iter().copied()).inverse();
            let clamped = approx.map(|v| if v.norm() > 1.0 { v / v.norm() } else { v });
            let err = l2_norm(&f.sub(&clamped).expect("same group"));
            MeasurabilityProbe {
                m,
                achieved_l2_error: err,
                achieved_spectral_l1: fourier(&clamped).l1(),
                truncation_size: k,
                reached: err <= target,
            }
        })
        .collect()
}
