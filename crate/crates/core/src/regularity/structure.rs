use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::decompose::{weak_regularity, DecompositionReport, RegularityConfig};
use crate::error::{Error, Result};
use crate::setops::{meets_fraction, popular_sums, rep_counts, sumset, GSet};
use crate::spectral::GridFunction;

fn ratio_f64(r: &Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn check_open_half(name: &str, r: &Ratio<u64>) -> Result<()> {
    // 0 < r < 1/2
    if *r.numer() == 0 || 2 * *r.numer() >= *r.denom() {
        return Err(Error::InvalidParameter(format!("{name} must lie in (0, 1/2), got {r}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupersetReport {
    pub eps: f64,
    pub delta: f64,
    pub decomposition: DecompositionReport,
    /// Cells of the final factor whose density of `A` is at least `eps`.
    pub kept_cells: usize,
    pub superset_size: usize,
    /// `|A \ A'| / |G|`
    pub missed_fraction: f64,
    /// `|S_eps(A') \ (A + A)| / |G|`
    pub spurious_fraction: f64,
    pub missed_ok: bool,
    pub spurious_ok: bool,
}

/// `eps` in `(0, 1/2)` and `2 sqrt(delta) < eps^3`.
pub fn superset_constraint(eps: &Ratio<u64>, delta: f64) -> Result<()> {
    check_open_half("eps", eps)?;
    if !(delta > 0.0 && 2.0 * delta.sqrt() < ratio_f64(eps).powi(3)) {
        return Err(Error::InvalidParameter(format!(
            "need 2 sqrt(delta) < eps^3, got delta = {delta}, eps = {eps}"
        )));
    }
    Ok(())
}

/// Regularizes `1_A` and keeps every cell where `A` has density at least `eps`.
///
/// Requires `2 sqrt(delta) < eps^3`.
pub fn structured_superset(
    a: &GSet,
    eps: &Ratio<u64>,
    delta: f64,
    cfg: &RegularityConfig,
) -> Result<(GSet, SupersetReport)> {
    superset_constraint(eps, delta)?;
    let decomposition = weak_regularity(&GridFunction::<f64>::indicator(a), delta, cfg)?;
    superset_from_decomposition(a, eps, decomposition)
}

/// The superset step alone, for a decomposition of `1_A` computed earlier.
pub fn superset_from_decomposition(
    a: &GSet,
    eps: &Ratio<u64>,
    decomposition: DecompositionReport,
) -> Result<(GSet, SupersetReport)> {
    let delta = decomposition.delta;
    superset_constraint(eps, delta)?;
    let factor = &decomposition.factor;
    if factor.group() != a.group() {
        return Err(Error::GroupMismatch);
    }

    let mut hits = vec![0usize; factor.cells()];
    for x in a.iter() {
        hits[factor.cell_of(x)] += 1;
    }
    let keep: Vec<bool> = hits
        .iter()
        .zip(factor.cell_sizes())
        .map(|(&h, &size)| meets_fraction(h, eps, size))
        .collect();
    let superset = GSet::from_fn(a.group().clone(), |x| keep[factor.cell_of(x)]);

    let n = a.group().order();
    let missed = a.difference(&superset)?.len();
    let spurious = popular_sums(&superset, eps)?.difference(&sumset(a, a)?)?.len();
    let report = SupersetReport {
        eps: ratio_f64(eps),
        delta,
        kept_cells: keep.iter().filter(|&&k| k).count(),
        superset_size: superset.len(),
        missed_fraction: missed as f64 / n as f64,
        spurious_fraction: spurious as f64 / n as f64,
        missed_ok: fraction_at_most(missed, eps, n),
        spurious_ok: fraction_at_most(spurious, eps, n),
        decomposition,
    };
    Ok((superset, report))
}

/// `count <= eps * order`, exactly.
fn fraction_at_most(count: usize, eps: &Ratio<u64>, order: usize) -> bool {
    (count as u128) * (*eps.denom() as u128) <= (*eps.numer() as u128) * (order as u128)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PopularRestrictReport {
    pub removed: Vec<usize>,
    /// `|A \ A'| / |G|`; reported only, never enforced.
    pub removed_fraction: f64,
    pub within_eps: bool,
    /// `|(A' + A') \ S_delta(A)| / |G|` at exit.
    pub unpopular_fraction: f64,
}

/// Greedily deletes elements of `A` until every sum in `A' + A'` is
/// `delta`-popular in `A`.
///
/// Each round removes the element lying in the most pairs `(a, b)` of `A'`
/// whose sum is unpopular; ties go to the smallest element.
pub fn popular_restrict(a: &GSet, delta: &Ratio<u64>, eps: &Ratio<u64>) -> Result<(GSet, PopularRestrictReport)> {
    check_open_half("delta", delta)?;
    check_open_half("eps", eps)?;
    let g = a.group();
    let n = g.order();
    let counts = rep_counts(a);
    let popular: Vec<bool> = counts.iter().map(|&c| meets_fraction(c, delta, n)).collect();

    let mut alive = a.indicator();
    let mut removed = Vec::new();
    loop {
        let members: Vec<usize> = (0..n).filter(|&x| alive[x]).collect();
        let mut score = vec![0usize; n];
        let mut unpopular = vec![false; n];
        for &x in &members {
            for &y in &members {
                let s = g.add(x, y);
                if !popular[s] {
                    unpopular[s] = true;
                    score[x] += 1;
                }
            }
        }
        let worst = members.iter().copied().fold(None, |best: Option<usize>, x| match best {
            Some(b) if score[b] >= score[x] => Some(b),
            _ if score[x] > 0 => Some(x),
            other => other,
        });
        match worst {
            Some(x) => {
                alive[x] = false;
                removed.push(x);
            }
            None => {
                let left = GSet::from_fn(g.clone(), |x| alive[x]);
                let unpopular_count = unpopular.iter().filter(|&&u| u).count();
                let report = PopularRestrictReport {
                    removed_fraction: removed.len() as f64 / n as f64,
                    within_eps: fraction_at_most(removed.len(), eps, n),
                    removed,
                    unpopular_fraction: unpopular_count as f64 / n as f64,
                };
                return Ok((left, report));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::setops::GSet;

    fn cyc(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    #[test]
    fn subgroup_superset_is_itself() {
        let g = cyc(12);
        let h = GSet::from_fn(g.clone(), |x| x % 3 == 0);
        let eps = Ratio::new(1, 8);
        let delta = 9e-7;
        let (sup, r) = structured_superset(&h, &eps, delta, &RegularityConfig::default()).unwrap();
        assert_eq!(sup, h);
        assert_eq!((r.missed_fraction, r.spurious_fraction), (0.0, 0.0));
        assert!(r.missed_ok && r.spurious_ok);
    }

    #[test]
    fn constraint_enforced() {
        let a = GSet::full(cyc(11));
        let cfg = RegularityConfig::default();
        assert!(structured_superset(&a, &Ratio::new(1, 10), 0.4, &cfg).is_err());
        assert!(structured_superset(&a, &Ratio::new(1, 2), 1e-9, &cfg).is_err());
    }

    #[test]
    fn restrict_keeps_full_group() {
        let a = GSet::full(cyc(13));
        let (left, r) = popular_restrict(&a, &Ratio::new(1, 20), &Ratio::new(1, 8)).unwrap();
        assert_eq!(left, a);
        assert!(r.removed.is_empty());
    }

    #[test]
    fn restrict_removes_isolated_point_first() {
        let g = cyc(101);
        let a = GSet::from_elements(g, (0..10).chain([50])).unwrap();
        let (left, r) = popular_restrict(&a, &Ratio::new(3, 101), &Ratio::new(1, 8)).unwrap();
        assert_eq!(r.removed[0], 50);
        assert_eq!(r.unpopular_fraction, 0.0);
        assert!(!left.contains(50));
        let s = crate::setops::popular_sums(&a, &Ratio::new(3, 101)).unwrap();
        assert!(sumset(&left, &left).unwrap().is_subset(&s));
    }

    #[test]
    fn restrict_keeps_coset() {
        let g = cyc(20);
        let coset = GSet::from_fn(g, |x| x % 4 == 1);
        let (left, _) = popular_restrict(&coset, &Ratio::new(1, 10), &Ratio::new(1, 8)).unwrap();
        assert_eq!(left, coset);
    }
}
