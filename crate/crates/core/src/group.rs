//! Finite abelian groups in invariant-factor form, their characters, and the
//! multiplicative structure of a prime field.
//!
//! An element of `Z/n_1 x ... x Z/n_k` is stored as a single index in
//! `[0, order)` using mixed-radix little-endian coordinates: the first factor
//! varies fastest, so `index = x_1 + n_1 * (x_2 + n_2 * (x_3 + ...))`.
//! Characters are indexed the same way through their frequency vector
//! `(r_1, ..., r_k)`, with `gamma(x) = sum r_i x_i / n_i mod 1`.

use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setops::GSet;

/// Largest group order accepted by [`GroupSpec::new`].
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

/// Largest prime accepted by [`MulStructure::new`].
pub const DEFAULT_MAX_PRIME: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    factors: Vec<usize>,
    order: usize,
    /// Least common multiple of the factors; every character phase is a
    /// multiple of `1 / exponent`.
    exponent: usize,
}

/// Index of a character of a [`GroupSpec`], in the same mixed-radix layout
/// as elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CharIndex(pub usize);

impl GroupSpec {
    pub fn new(factors: &[u64]) -> Result<Self> {
        Self::with_max_order(factors, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(factors: &[u64], max_order: u64) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidParameter("empty invariant-factor list".into()));
        }
        let mut order: u64 = 1;
        let mut exponent: u64 = 1;
        for &n in factors {
            if n < 2 {
                return Err(Error::FactorTooSmall(n));
            }
            order = order
                .checked_mul(n)
                .filter(|&o| o <= max_order)
                .ok_or(Error::OrderTooLarge { max: max_order })?;
            exponent = exponent.lcm(&n);
        }
        Ok(Self {
            factors: factors.iter().map(|&n| n as usize).collect(),
            order: order as usize,
            exponent: exponent as usize,
        })
    }

    /// The cyclic group `Z/n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn check(&self, index: usize) -> Result<()> {
        if index < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, order: self.order })
        }
    }

    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        self.factors
            .iter()
            .map(|&n| {
                let c = index % n;
                index /= n;
                c
            })
            .collect()
    }

    pub fn index_of(&self, coords: &[usize]) -> Result<usize> {
        if coords.len() != self.factors.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates, got {}",
                self.factors.len(),
                coords.len()
            )));
        }
        let mut index = 0;
        for (&c, &n) in coords.iter().zip(&self.factors).rev() {
            if c >= n {
                return Err(Error::IndexOutOfRange { index: c, order: n });
            }
            index = index * n + c;
        }
        Ok(index)
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        if let [n] = self.factors[..] {
            let s = x + y;
            return if s >= n { s - n } else { s };
        }
        let (mut x, mut y) = (x, y);
        let (mut out, mut stride) = (0, 1);
        for &n in &self.factors {
            let s = (x % n + y % n) % n;
            out += s * stride;
            stride *= n;
            x /= n;
            y /= n;
        }
        out
    }

    pub fn neg(&self, x: usize) -> usize {
        if let [n] = self.factors[..] {
            return (n - x) % n;
        }
        let mut x = x;
        let (mut out, mut stride) = (0, 1);
        for &n in &self.factors {
            out += ((n - x % n) % n) * stride;
            stride *= n;
            x /= n;
        }
        out
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// Table `t[x * order + y] = x + y`; only sensible for small groups.
    pub fn addition_table(&self) -> Vec<u32> {
        let n = self.order;
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = self.add(x, y) as u32;
            }
        }
        table
    }

    /// Character phase as an exact fraction `numerator / exponent`.
    pub fn phase_numerator(&self, gamma: CharIndex, x: usize) -> usize {
        let l = self.exponent;
        let (mut r, mut x) = (gamma.0, x);
        let mut acc = 0usize;
        for &n in &self.factors {
            let (ri, xi) = (r % n, x % n);
            acc = (acc + (ri * xi % n) * (l / n)) % l;
            r /= n;
            x /= n;
        }
        acc
    }

    /// `gamma(x)` in `[0, 1)`.
    pub fn char_phase(&self, gamma: CharIndex, x: usize) -> Result<f64> {
        self.check(gamma.0)?;
        self.check(x)?;
        Ok(self.phase_numerator(gamma, x) as f64 / self.exponent as f64)
    }

    /// Phase numerators of `gamma` for every element, in element order.
    pub fn phase_table(&self, gamma: CharIndex) -> Vec<usize> {
        (0..self.order).map(|x| self.phase_numerator(gamma, x)).collect()
    }

    /// Every subgroup of a small group, each as a sorted element list.
    /// Used only by exhaustive checks, so cost is not a concern.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order;
        let mut seen = std::collections::BTreeSet::new();
        // Grow every known subgroup by one generator until nothing new appears.
        let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
        seen.insert(vec![0usize]);
        while let Some(h) = frontier.pop() {
            for g in 0..n {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let closed = self.closure(&h, g);
                if seen.insert(closed.clone()) {
                    frontier.push(closed);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn closure(&self, h: &[usize], g: usize) -> Vec<usize> {
        let mut members = vec![false; self.order];
        for &x in h {
            members[x] = true;
        }
        let mut queue: Vec<usize> = h.to_vec();
        let gens: Vec<usize> = h.iter().copied().chain(std::iter::once(g)).collect();
        if !members[g] {
            members[g] = true;
            queue.push(g);
        }
        while let Some(x) = queue.pop() {
            for &s in &gens {
                let y = self.add(x, s);
                if !members[y] {
                    members[y] = true;
                    queue.push(y);
                }
            }
        }
        (0..self.order).filter(|&x| members[x]).collect()
    }
}

/// All invariant-factor decompositions `n_1 | n_2 | ... | n_k` with product `order`.
pub fn abelian_groups_of_order(order: u64) -> Vec<GroupSpec> {
    fn rec(rem: u64, min: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rem == 1 {
            if !acc.is_empty() {
                out.push(acc.clone());
            }
            return;
        }
        let mut d = min.max(2);
        while d <= rem {
            let divides_chain = acc.last().map_or(true, |&last| d % last == 0);
            if rem % d == 0 && divides_chain {
                // The remaining factors must be multiples of d.
                let rest = rem / d;
                if rest == 1 || rest % d == 0 {
                    acc.push(d);
                    rec(rest, d, acc, out);
                    acc.pop();
                }
            }
            d += 1;
        }
    }
    if order == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(order, 2, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|f| GroupSpec::new(&f).expect("valid invariant factors"))
        .collect()
}

/// Deterministic primality test for the desk-scale primes used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

#[derive(Debug, PartialEq, Eq)]
struct MulTables {
    p: usize,
    root: usize,
    /// `dlog[x]` for `x` in `1..p`; `dlog[0]` is unused.
    dlog: Vec<u32>,
    /// `power[k] = root^k mod p` for `k` in `0..p-1`.
    power: Vec<u32>,
}

/// The multiplicative group of `F_p`, identified with `Z/(p-1)` through the
/// smallest primitive root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulStructure {
    tables: Arc<MulTables>,
}

impl MulStructure {
    pub fn new(p: u64) -> Result<Self> {
        Self::with_max_prime(p, DEFAULT_MAX_PRIME)
    }

    pub fn with_max_prime(p: u64, max_prime: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > max_prime {
            return Err(Error::PrimeTooLarge { p, max: max_prime });
        }
        let factors = distinct_prime_factors(p - 1);
        let root = (2..p)
            .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
            .expect("every prime has a primitive root");
        let n = (p - 1) as usize;
        let mut dlog = vec![u32::MAX; p as usize];
        let mut power = vec![0u32; n];
        let mut x = 1u64;
        for (k, slot) in power.iter_mut().enumerate() {
            *slot = x as u32;
            dlog[x as usize] = k as u32;
            x = x * root % p;
        }
        Ok(Self {
            tables: Arc::new(MulTables { p: p as usize, root: root as usize, dlog, power }),
        })
    }

    pub fn p(&self) -> usize {
        self.tables.p
    }

    pub fn primitive_root(&self) -> usize {
        self.tables.root
    }

    /// Discrete logarithm of a nonzero residue.
    pub fn dlog(&self, x: usize) -> Result<usize> {
        if x == 0 || x >= self.tables.p {
            return Err(Error::IndexOutOfRange { index: x, order: self.tables.p });
        }
        Ok(self.tables.dlog[x] as usize)
    }

    /// Unchecked table access for hot loops; `x` must be in `1..p`.
    pub fn dlog_unchecked(&self, x: usize) -> usize {
        self.tables.dlog[x] as usize
    }

    pub fn exp(&self, k: usize) -> usize {
        self.tables.power[k % (self.tables.p - 1)] as usize
    }

    /// `Z/(p-1)`, the additive model of `F_p^x`.
    pub fn group(&self) -> GroupSpec {
        GroupSpec::cyclic(self.tables.p as u64 - 1).expect("p - 1 >= 2")
    }

    pub fn additive_group(&self) -> GroupSpec {
        GroupSpec::cyclic(self.tables.p as u64).expect("p >= 3")
    }

    /// `{x in F_p^x : dlog(x) = 0 mod ell}`, the subgroup of index `ell`.
    pub fn subgroup(&self, ell: u64) -> Result<GSet> {
        let p = self.tables.p as u64;
        if ell == 0 || (p - 1) % ell != 0 {
            return Err(Error::NotDivisor { ell, p_minus_one: p - 1 });
        }
        self.coset(ell, 0)
    }

    /// `g^shift * H` where `H` has index `ell`.
    pub fn coset(&self, ell: u64, shift: usize) -> Result<GSet> {
        let p = self.tables.p as u64;
        if ell == 0 || (p - 1) % ell != 0 {
            return Err(Error::NotDivisor { ell, p_minus_one: p - 1 });
        }
        let n = self.tables.p - 1;
        let members = (0..n)
            .filter(|k| k % ell as usize == shift % ell as usize)
            .map(|k| self.tables.power[k] as usize);
        GSet::from_elements(self.additive_group(), members)
    }
}

/// `H = {x : dlog(x) = 0 mod ell}` as a subset of `F_p`.
pub fn mul_subgroup(p: u64, ell: u64) -> Result<GSet> {
    MulStructure::new(p)?.subgroup(ell)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_product_groups() {
        let g = GroupSpec::new(&[5]).unwrap();
        assert_eq!(g.order(), 5);
        let g = GroupSpec::new(&[2, 3]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.coords(4), vec![0, 2]);
        assert_eq!(g.index_of(&[0, 2]).unwrap(), 4);
        let g = GroupSpec::new(&[4, 4]).unwrap();
        assert_eq!(g.order(), 16);
    }

    #[test]
    fn rejects_bad_factors() {
        assert_eq!(GroupSpec::new(&[1]), Err(Error::FactorTooSmall(1)));
        assert!(matches!(
            GroupSpec::with_max_order(&[64, 64], 1000),
            Err(Error::OrderTooLarge { .. })
        ));
        assert!(GroupSpec::new(&[1 << 10, 1 << 10]).is_ok());
        assert!(GroupSpec::new(&[1 << 10, 1 << 10, 2]).is_err());
    }

    #[test]
    fn coords_round_trip() {
        let g = GroupSpec::new(&[3, 4, 5]).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.index_of(&g.coords(i)).unwrap(), i);
        }
    }

    #[test]
    fn char_phase_examples() {
        let g = GroupSpec::new(&[5]).unwrap();
        for x in 0..5 {
            assert_eq!(g.char_phase(CharIndex(0), x).unwrap(), 0.0);
        }
        assert_eq!(g.char_phase(CharIndex(1), 2).unwrap(), 0.4);

        let g = GroupSpec::new(&[2, 3]).unwrap();
        let gamma = CharIndex(g.index_of(&[1, 1]).unwrap());
        let x = g.index_of(&[1, 2]).unwrap();
        // 1/2 + 2/3 = 7/6 = 1/6 mod 1
        assert_eq!(g.phase_numerator(gamma, x), 1);
        assert!((g.char_phase(gamma, x).unwrap() - 1.0 / 6.0).abs() < 1e-15);

        assert!(g.char_phase(CharIndex(6), 0).is_err());
        assert!(g.char_phase(CharIndex(0), 6).is_err());
    }

    #[test]
    fn group_laws() {
        let g = GroupSpec::new(&[2, 6]).unwrap();
        for x in 0..g.order() {
            assert_eq!(g.add(x, g.neg(x)), 0);
            for y in 0..g.order() {
                assert_eq!(g.add(x, y), g.add(y, x));
                assert_eq!(g.sub(g.add(x, y), y), x);
            }
        }
    }

    #[test]
    fn primitive_roots() {
        let m = MulStructure::new(7).unwrap();
        assert_eq!(m.primitive_root(), 3);
        assert_eq!(m.dlog(2).unwrap(), 2);
        let m = MulStructure::new(5).unwrap();
        assert_eq!(m.primitive_root(), 2);
        assert_eq!(m.dlog(4).unwrap(), 2);
        let m = MulStructure::new(13).unwrap();
        assert_eq!(m.primitive_root(), 2);
        assert_eq!(m.dlog(8).unwrap(), 3);
    }

    #[test]
    fn primitive_root_rejects_composites() {
        assert_eq!(MulStructure::new(9), Err(Error::NotPrime(9)));
        assert_eq!(MulStructure::new(2), Err(Error::NotPrime(2)));
        assert_eq!(MulStructure::new(1), Err(Error::NotPrime(1)));
        assert!(matches!(
            MulStructure::with_max_prime(101, 100),
            Err(Error::PrimeTooLarge { .. })
        ));
    }

    #[test]
    fn dlog_round_trip_exhaustive() {
        for p in (3..400u64).filter(|&p| is_prime(p)) {
            let m = MulStructure::new(p).unwrap();
            let mut seen = vec![false; p as usize - 1];
            for x in 1..p as usize {
                let k = m.dlog(x).unwrap();
                assert!(!seen[k]);
                seen[k] = true;
                assert_eq!(pow_mod(m.primitive_root() as u64, k as u64, p) as usize, x);
            }
        }
    }

    #[test]
    fn multiplicative_subgroups() {
        assert_eq!(mul_subgroup(13, 3).unwrap().elements(), vec![1, 5, 8, 12]);
        assert_eq!(mul_subgroup(7, 2).unwrap().elements(), vec![1, 2, 4]);
        assert_eq!(mul_subgroup(11, 1).unwrap().elements(), (1..11).collect::<Vec<_>>());
        assert_eq!(
            mul_subgroup(13, 5),
            Err(Error::NotDivisor { ell: 5, p_minus_one: 12 })
        );
    }

    #[test]
    fn abelian_group_enumeration() {
        let shapes = |n| {
            abelian_groups_of_order(n)
                .into_iter()
                .map(|g| g.factors().to_vec())
                .collect::<Vec<_>>()
        };
        assert_eq!(shapes(16), vec![vec![2, 2, 2, 2], vec![2, 2, 4], vec![2, 8], vec![4, 4], vec![16]]);
        assert_eq!(shapes(12), vec![vec![2, 6], vec![12]]);
        assert_eq!(shapes(7), vec![vec![7]]);
    }

    #[test]
    fn subgroup_lattice_sizes() {
        // Z/2 x Z/2 has 5 subgroups; Z/12 has one per divisor.
        assert_eq!(GroupSpec::new(&[2, 2]).unwrap().subgroups().len(), 5);
        assert_eq!(GroupSpec::new(&[12]).unwrap().subgroups().len(), 6);
    }
}
