use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::scalar::Scalar;
use crate::setops::GSet;
use crate::spectral::GridFunction;
use num_complex::Complex;

/// A partition of a group into labelled cells.
///
/// Cell ids are compact (`0..cells`) and assigned in order of first
/// appearance when scanning element indices upward, so two factors with the
/// same partition always carry the same labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    group: GroupSpec,
    cell_of: Vec<u32>,
    cell_sizes: Vec<usize>,
}

impl Factor {
    /// The one-cell factor.
    pub fn trivial(group: GroupSpec) -> Self {
        let n = group.order();
        Self { group, cell_of: vec![0; n], cell_sizes: vec![n] }
    }

    /// Every element in its own cell.
    pub fn singletons(group: GroupSpec) -> Self {
        let n = group.order();
        Self { group, cell_of: (0..n as u32).collect(), cell_sizes: vec![1; n] }
    }

    /// Builds a factor from arbitrary labels, compacting them.
    pub fn from_labels<L: Copy + Eq + std::hash::Hash>(group: GroupSpec, labels: &[L]) -> Result<Self> {
        if labels.len() != group.order() {
            return Err(Error::InvalidParameter(format!(
                "expected {} labels, got {}",
                group.order(),
                labels.len()
            )));
        }
        let mut ids = std::collections::HashMap::new();
        let mut cell_sizes = Vec::new();
        let cell_of = labels
            .iter()
            .map(|l| {
                let next = ids.len() as u32;
                let id = *ids.entry(*l).or_insert(next);
                if id as usize == cell_sizes.len() {
                    cell_sizes.push(0);
                }
                cell_sizes[id as usize] += 1;
                id
            })
            .collect();
        Ok(Self { group, cell_of, cell_sizes })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn cells(&self) -> usize {
        self.cell_sizes.len()
    }

    pub fn cell_of(&self, x: usize) -> usize {
        self.cell_of[x] as usize
    }

    pub fn labels(&self) -> &[u32] {
        &self.cell_of
    }

    pub fn cell_sizes(&self) -> &[usize] {
        &self.cell_sizes
    }

    /// Members of cell `id`.
    pub fn cell(&self, id: usize) -> GSet {
        GSet::from_fn(self.group.clone(), |x| self.cell_of[x] as usize == id)
    }

    /// Splits every cell `B` into `B cap E` and `B \ E`, dropping empty parts.
    pub fn refine_by_set(&self, e: &GSet) -> Result<Self> {
        if e.group() != &self.group {
            return Err(Error::GroupMismatch);
        }
        let labels: Vec<(u32, bool)> = (0..self.group.order())
            .map(|x| (self.cell_of[x], e.contains(x)))
            .collect();
        Self::from_labels(self.group.clone(), &labels)
    }

    /// Whether every cell of `self` lies inside one cell of `coarse`.
    pub fn refines(&self, coarse: &Factor) -> bool {
        if self.group != coarse.group {
            return false;
        }
        let mut parent = vec![u32::MAX; self.cells()];
        for (x, &c) in self.cell_of.iter().enumerate() {
            let p = &mut parent[c as usize];
            if *p == u32::MAX {
                *p = coarse.cell_of[x];
            } else if *p != coarse.cell_of[x] {
                return false;
            }
        }
        true
    }

    /// Validates the stored invariants.
    pub fn validate(&self) -> Result<()> {
        if self.cell_of.len() != self.group.order() {
            return Err(Error::Validation("cell assignment length".into()));
        }
        let mut sizes = vec![0usize; self.cells()];
        for &c in &self.cell_of {
            *sizes
                .get_mut(c as usize)
                .ok_or_else(|| Error::Validation(format!("cell id {c} out of range")))? += 1;
        }
        if sizes != self.cell_sizes || sizes.iter().any(|&s| s == 0) {
            return Err(Error::Validation("cell sizes do not match assignment".into()));
        }
        Ok(())
    }
}

/// `f_B(x)`: the average of `f` over the cell of `B` containing `x`.
pub fn project<T: Scalar>(f: &GridFunction<T>, b: &Factor) -> Result<GridFunction<T>> {
    if f.group() != b.group() {
        return Err(Error::GroupMismatch);
    }
    let zero = Complex::new(T::zero(), T::zero());
    let mut sums = vec![zero; b.cells()];
    for (x, v) in f.values().iter().enumerate() {
        sums[b.cell_of(x)] = sums[b.cell_of(x)] + v;
    }
    for (s, &size) in sums.iter_mut().zip(b.cell_sizes()) {
        *s = *s / T::of_usize(size);
    }
    Ok(GridFunction::from_fn(f.group().clone(), |x| sums[b.cell_of(x)]))
}

/// Both sides of `||f_B'||^2 - ||f_B||^2 = ||f_B' - f_B||^2` for `B'` refining `B`.
pub fn pythagoras_gap<T: Scalar>(f: &GridFunction<T>, coarse: &Factor, fine: &Factor) -> Result<(T, T)> {
    if !fine.refines(coarse) {
        return Err(Error::NotRefinement { fine: fine.cells(), coarse: coarse.cells() });
    }
    let fc = project(f, coarse)?;
    let ff = project(f, fine)?;
    let sq = |g: &GridFunction<T>| crate::spectral::l2_norm(g).powi(2);
    Ok((sq(&ff) - sq(&fc), sq(&ff.sub(&fc)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::l2_norm;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cyc(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    #[test]
    fn projection_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = cyc(12);
        let f = GridFunction::<f64>::from_fn(g.clone(), |_| Complex::new(rng.gen(), rng.gen()));
        let mean = f.mean();
        for v in project(&f, &Factor::trivial(g.clone())).unwrap().values() {
            assert!((v - mean).norm() < 1e-15);
        }
        assert_eq!(project(&f, &Factor::singletons(g.clone())).unwrap(), f);

        let parity = Factor::from_labels(g.clone(), &(0..12).map(|x| x % 2).collect::<Vec<_>>()).unwrap();
        let p = project(&f, &parity).unwrap();
        for x in 0..12 {
            let class: Vec<_> = (0..12).filter(|y| y % 2 == x % 2).collect();
            let avg = class.iter().map(|&y| f.values()[y]).sum::<Complex<f64>>() / 6.0;
            assert!((p.values()[x] - avg).norm() < 1e-15);
        }
        let again = project(&p, &parity).unwrap();
        for (a, b) in again.values().iter().zip(p.values()) {
            assert!((a - b).norm() < 1e-15);
        }
        assert!(l2_norm(&p) <= l2_norm(&f) + 1e-15);
    }

    #[test]
    fn refinement() {
        let g = cyc(10);
        let e = GSet::from_elements(g.clone(), [1, 2, 3]).unwrap();
        let t = Factor::trivial(g.clone());
        let r = t.refine_by_set(&e).unwrap();
        assert_eq!(r.cells(), 2);
        assert_eq!(r.cell(r.cell_of(1)), e);
        assert!(r.refines(&t));
        assert!(!t.refines(&r));
        let same = r.refine_by_set(&GSet::full(g.clone())).unwrap();
        assert_eq!(same, r);
        same.validate().unwrap();
    }

    #[test]
    fn random_refinement_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let g = cyc(24);
        let labels: Vec<u8> = (0..24).map(|_| rng.gen_range(0..4)).collect();
        let b = Factor::from_labels(g.clone(), &labels).unwrap();
        let e = GSet::from_fn(g.clone(), |_| rng.gen());
        let r = b.refine_by_set(&e).unwrap();
        assert!(r.cells() <= 2 * b.cells());
        for x in 0..24 {
            for y in 0..24 {
                if r.cell_of(x) == r.cell_of(y) {
                    assert_eq!(b.cell_of(x), b.cell_of(y));
                    assert_eq!(e.contains(x), e.contains(y));
                }
            }
        }
    }

    #[test]
    fn pythagoras_two_cells() {
        let g = cyc(10);
        let e = GSet::from_elements(g.clone(), [0, 4, 7]).unwrap();
        let f = GridFunction::<f64>::indicator(&e);
        let t = Factor::trivial(g.clone());
        let (l, r) = pythagoras_gap(&f, &t, &t.refine_by_set(&e).unwrap()).unwrap();
        assert!((l - 0.21).abs() < 1e-12 && (r - 0.21).abs() < 1e-12);
        let (l, r) = pythagoras_gap(&f, &t, &t).unwrap();
        assert!(l.abs() < 1e-15 && r.abs() < 1e-15);
        assert!(pythagoras_gap(&f, &t.refine_by_set(&e).unwrap(), &t).is_err());
    }

    #[test]
    fn pythagoras_random_chain() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = cyc(36);
        let f = GridFunction::<f64>::from_fn(g.clone(), |_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let mut chain = vec![Factor::trivial(g.clone())];
        for _ in 0..5 {
            let e = GSet::from_fn(g.clone(), |_| rng.gen());
            let next = chain.last().unwrap().refine_by_set(&e).unwrap();
            chain.push(next);
        }
        for i in 0..chain.len() {
            for j in i..chain.len() {
                let (l, r) = pythagoras_gap(&f, &chain[i], &chain[j]).unwrap();
                assert!((l - r).abs() < 1e-12);
            }
        }
    }
}
