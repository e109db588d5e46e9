//! Energy-increment decomposition `f = f_B + (f - f_B)` with a small-U2 residual.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::factor::{project, Factor};
use crate::error::{Error, Result};
use crate::group::{CharIndex, GroupSpec};
use crate::scalar::Scalar;
use crate::setops::GSet;
use crate::spectral::{fourier, l2_norm, u2_from_spectrum, GridFunction};

/// Above this many grid offsets the arc scan walks distinct windows instead of offsets.
const DIRECT_SCAN_LIMIT: u64 = 1 << 22;

/// Inclusion slack for arc endpoints.
const ARC_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularityConfig {
    /// Arc length is `arc_constant * delta^2`.
    pub arc_constant: f64,
    /// Minimum energy gain per step, as a multiple of `delta^8`.
    pub increment_floor: f64,
    /// Minimum `|<g, 1_E>|` per step, as a multiple of `delta^4`.
    pub correlation_floor: f64,
}

impl Default for RegularityConfig {
    fn default() -> Self {
        Self {
            arc_constant: 1.0 / (4.0 * std::f64::consts::PI),
            increment_floor: 1.0 / 64.0,
            correlation_floor: 1.0 / 8.0,
        }
    }
}

impl RegularityConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("arc_constant", self.arc_constant),
            ("increment_floor", self.increment_floor),
            ("correlation_floor", self.correlation_floor),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn arc_length(&self, delta: f64) -> f64 {
        self.arc_constant * delta * delta
    }

    /// `ceil(1 / (c0 delta^8))`, saturating.
    pub fn iteration_cap(&self, delta: f64) -> u64 {
        let cap = (1.0 / (self.increment_floor * delta.powi(8))).ceil();
        if cap.is_finite() && cap < u64::MAX as f64 {
            cap as u64
        } else {
            u64::MAX
        }
    }
}

/// One refinement step: the character, arc offset and arc length used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChosenArc {
    pub gamma: CharIndex,
    pub t: f64,
    pub ell: f64,
    /// `|<f - f_B, 1_E>|` for the chosen level set.
    pub correlation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub delta: f64,
    pub factor: Factor,
    pub iterations: usize,
    /// `||f_B||_2^2` for each factor in the chain, trivial factor first.
    pub energy_trace: Vec<f64>,
    pub final_u2: f64,
    pub chosen_characters: Vec<ChosenArc>,
}

impl DecompositionReport {
    /// Rebuilds every factor of the refinement chain from the recorded arcs.
    pub fn replay_chain(&self) -> Result<Vec<Factor>> {
        let g = self.factor.group().clone();
        let mut chain = vec![Factor::trivial(g.clone())];
        for arc in &self.chosen_characters {
            let e = level_set(&g, arc.gamma, arc.t, arc.ell)?;
            let next = chain.last().expect("nonempty").refine_by_set(&e)?;
            chain.push(next);
        }
        if chain.last() != Some(&self.factor) {
            return Err(Error::Validation("replayed chain does not end at the reported factor".into()));
        }
        Ok(chain)
    }

    /// Rechecks a stored report against the function it claims to decompose:
    /// the chain replays, and the energies and final `U2` distance recompute.
    pub fn verify_against<T: Scalar>(&self, f: &GridFunction<T>) -> Result<()> {
        self.factor.validate()?;
        if f.group() != self.factor.group() {
            return Err(Error::GroupMismatch);
        }
        let chain = self.replay_chain()?;
        if chain.len() != self.iterations + 1 || self.energy_trace.len() != chain.len() {
            return Err(Error::Validation("chain length disagrees with the iteration count".into()));
        }
        for (b, &stored) in chain.iter().zip(&self.energy_trace) {
            let energy = l2_norm(&project(f, b)?).to_f64_lossy().powi(2);
            if (energy - stored).abs() > 1e-9 {
                return Err(Error::Validation(format!("stored energy {stored} vs recomputed {energy}")));
            }
        }
        let fb = project(f, &self.factor)?;
        let u2 = u2_from_spectrum(&fourier(&f.sub(&fb)?)).to_f64_lossy();
        if (u2 - self.final_u2).abs() > 1e-9 || u2 > self.delta {
            return Err(Error::Validation(format!("final U2 {u2} (stored {}) against delta {}", self.final_u2, self.delta)));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: Self = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        r.factor.validate()?;
        Ok(r)
    }
}

/// `E = {x : gamma(x) in [t, t + ell] mod 1}`.
pub fn level_set(g: &GroupSpec, gamma: CharIndex, t: f64, ell: f64) -> Result<GSet> {
    g.check(gamma.0)?;
    if !(ell > 0.0 && ell < 1.0) {
        return Err(Error::InvalidParameter(format!("arc length must lie in (0, 1), got {ell}")));
    }
    let l = g.exponent() as f64;
    Ok(GSet::from_fn(g.clone(), |x| {
        let phase = g.phase_numerator(gamma, x) as f64 / l;
        let d = (phase - t).rem_euclid(1.0);
        d <= ell + ARC_SLACK || d >= 1.0 - ARC_SLACK
    }))
}

/// The character maximizing `|g^(gamma)|`, ties to the smallest index.
///
/// Errors when `||g||_U2 < delta`, which means the caller had no business asking.
pub fn find_large_character<T: Scalar>(g: &GridFunction<T>, delta: f64) -> Result<CharIndex> {
    let spec = fourier(g);
    let u2 = u2_from_spectrum(&spec).to_f64_lossy();
    if u2 < delta {
        return Err(Error::Precondition(format!("U2 norm {u2} is below delta {delta}")));
    }
    Ok(spec.argmax())
}

/// Best arc offset on the grid `{j / K}` with `K = ceil(4 / ell)`.
///
/// Returns `(j, K, |<g, 1_{E_t}>|)` for the smallest `j` attaining the maximum.
fn scan_arcs<T: Scalar>(g: &GridFunction<T>, gamma: CharIndex, ell: f64) -> (u64, u64, f64) {
    let group = g.group();
    let l = group.exponent();
    let n = group.order() as f64;
    // Mass of g on each phase class, divided by |G|.
    let mut mass = vec![Complex::new(0.0f64, 0.0); l];
    for (x, v) in g.values().iter().enumerate() {
        let k = group.phase_numerator(gamma, x);
        mass[k] += Complex::new(v.re.to_f64_lossy(), v.im.to_f64_lossy()) / n;
    }
    // prefix[i] = sum of mass over buckets [0, i) of the doubled ring.
    let mut prefix = Vec::with_capacity(2 * l + 1);
    prefix.push(Complex::new(0.0, 0.0));
    for i in 0..2 * l {
        let next = prefix[i] + mass[i % l];
        prefix.push(next);
    }
    let window = |lo: u64, hi: i64| -> f64 {
        let lo = lo as i64;
        if hi < lo {
            return 0.0;
        }
        if hi - lo + 1 >= l as i64 {
            return prefix[l].norm();
        }
        let start = (lo as usize) % l;
        let len = (hi - lo + 1) as usize;
        (prefix[start + len] - prefix[start]).norm()
    };

    let k_grid = (4.0 / ell).ceil() as u64;
    let lu = l as u128;
    let lo_of = |j: u64| -> u64 { ((j as u128 * lu).div_ceil(k_grid as u128)) as u64 };
    let hi_of = |j: u64| -> i64 {
        let t_scaled = (j as u128 * lu) as f64 / k_grid as f64;
        (t_scaled + l as f64 * ell).floor() as i64
    };

    let mut best = (0u64, -1.0f64);
    if k_grid <= DIRECT_SCAN_LIMIT {
        for j in 0..k_grid {
            let c = window(lo_of(j), hi_of(j));
            if c > best.1 {
                best = (j, c);
            }
        }
    } else {
        // Here K > L, so consecutive offsets move `hi` by at most one and every
        // intermediate window is realized by some offset.
        for k0 in 0..=l as u64 {
            let (jmin, jmax) = if k0 == 0 {
                (0, 0)
            } else {
                let jmin = ((k0 - 1) as u128 * k_grid as u128 / lu) as u64 + 1;
                let jmax = ((k0 as u128 * k_grid as u128 / lu) as u64).min(k_grid - 1);
                (jmin, jmax)
            };
            if jmin > jmax {
                continue;
            }
            for h in hi_of(jmin)..=hi_of(jmax) {
                let c = window(k0, h);
                if c > best.1 {
                    // Smallest offset in [jmin, jmax] whose window ends at h.
                    let (mut a, mut b) = (jmin, jmax);
                    while a < b {
                        let mid = a + (b - a) / 2;
                        if hi_of(mid) >= h {
                            b = mid;
                        } else {
                            a = mid + 1;
                        }
                    }
                    best = (a, c);
                }
            }
        }
    }
    (best.0, k_grid, best.1)
}

/// Outcome of one refinement.
#[derive(Clone, Debug, PartialEq)]
pub struct StepOutcome {
    pub factor: Factor,
    pub arc: ChosenArc,
    pub energy_before: f64,
    pub energy_after: f64,
}

/// Refines `b` by the best level set of the largest character of `f - f_B`.
pub fn energy_increment_step<T: Scalar>(
    f: &GridFunction<T>,
    b: &Factor,
    delta: f64,
    cfg: &RegularityConfig,
) -> Result<StepOutcome> {
    step_inner(f, b, delta, cfg, 0)
}

fn step_inner<T: Scalar>(
    f: &GridFunction<T>,
    b: &Factor,
    delta: f64,
    cfg: &RegularityConfig,
    iteration: usize,
) -> Result<StepOutcome> {
    cfg.validate()?;
    let fb = project(f, b)?;
    let residual = f.sub(&fb)?;
    let spec = fourier(&residual);
    let u2 = u2_from_spectrum(&spec).to_f64_lossy();
    if u2 <= delta {
        return Err(Error::Precondition(format!("residual U2 norm {u2} is already <= delta {delta}")));
    }
    let gamma = spec.argmax();
    let ell = cfg.arc_length(delta);
    if !(ell > 0.0 && ell < 1.0) {
        return Err(Error::InvalidParameter(format!("arc length {ell} outside (0, 1)")));
    }
    let (j, k_grid, _) = scan_arcs(&residual, gamma, ell);
    let t = j as f64 / k_grid as f64;
    let e = level_set(f.group(), gamma, t, ell)?;
    let correlation = crate::spectral::inner(&residual, &GridFunction::<T>::indicator(&e))?
        .norm()
        .to_f64_lossy();
    let floor = cfg.correlation_floor * delta.powi(4);
    if correlation < floor {
        return Err(Error::IncrementStalled {
            iteration,
            detail: format!(
                "best level set of character {} has correlation {correlation:e} < {floor:e} (u2 {u2}, t {t}, ell {ell})",
                gamma.0
            ),
        });
    }
    let refined = b.refine_by_set(&e)?;
    let energy_before = l2_norm(&fb).to_f64_lossy().powi(2);
    let energy_after = l2_norm(&project(f, &refined)?).to_f64_lossy().powi(2);
    let gain_floor = cfg.increment_floor * delta.powi(8);
    if energy_after - energy_before < gain_floor {
        return Err(Error::IncrementStalled {
            iteration,
            detail: format!(
                "energy gain {:e} < {gain_floor:e}",
                energy_after - energy_before
            ),
        });
    }
    Ok(StepOutcome {
        factor: refined,
        arc: ChosenArc { gamma, t, ell, correlation },
        energy_before,
        energy_after,
    })
}

/// Iterates [`energy_increment_step`] from the trivial factor until
/// `||f - f_B||_U2 <= delta`.
pub fn weak_regularity<T: Scalar>(
    f: &GridFunction<T>,
    delta: f64,
    cfg: &RegularityConfig,
) -> Result<DecompositionReport> {
    cfg.validate()?;
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::InvalidParameter(format!("delta must lie in (0, 1/2), got {delta}")));
    }
    if !f.is_one_bounded() {
        return Err(Error::Precondition("input function is not 1-bounded".into()));
    }
    let cap = cfg.iteration_cap(delta);
    let mut factor = Factor::trivial(f.group().clone());
    let mut energy_trace = Vec::new();
    let mut chosen = Vec::new();
    loop {
        let fb = project(f, &factor)?;
        energy_trace.push(l2_norm(&fb).to_f64_lossy().powi(2));
        let u2 = u2_from_spectrum(&fourier(&f.sub(&fb)?)).to_f64_lossy();
        if u2 <= delta {
            return Ok(DecompositionReport {
                delta,
                factor,
                iterations: chosen.len(),
                energy_trace,
                final_u2: u2,
                chosen_characters: chosen,
            });
        }
        if chosen.len() as u64 >= cap {
            return Err(Error::IterationCap { cap });
        }
        let step = step_inner(f, &factor, delta, cfg, chosen.len())?;
        factor = step.factor;
        chosen.push(step.arc);
    }
}

/// Number of `x` with `|(f * g)(x)| > delta^(1/2)`; the counting lemma
/// bounds it by `delta |G|` whenever `||g||_U2 <= delta` and both are 1-bounded.
pub fn counting_exceptions<T: Scalar>(f: &GridFunction<T>, g: &GridFunction<T>, delta: f64) -> Result<usize> {
    let conv = crate::spectral::convolve(f, g)?;
    let threshold = delta.sqrt();
    Ok(conv.values().iter().filter(|v| v.norm().to_f64_lossy() > threshold).count())
}
