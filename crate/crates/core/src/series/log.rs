use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{BigRational, Zero};

use super::multi::total_degree;
use super::{Coeff, MultiSeries};

/// A polynomial in formal logarithm symbols `L_1..L_nvars` with `MultiSeries`
/// coefficients. `L_a` stands for `log y_a`, so the Euler derivation acts by
/// `theta_a L_b = delta_ab` together with the product rule.
///
/// Entries are keyed by the log-monomial exponent vector; the pure series part
/// sits at the all-zero key. Log degree is bounded by `log_bound` (1 covers
/// everything the mirror-map components need).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogSeries {
    nvars: usize,
    order: u32,
    log_bound: u32,
    parts: BTreeMap<Vec<u32>, MultiSeries>,
}

impl LogSeries {
    pub fn zero(nvars: usize, order: u32, log_bound: u32) -> Self {
        Self {
            nvars,
            order,
            log_bound,
            parts: BTreeMap::new(),
        }
    }

    /// Lift a plain series (log degree 0).
    pub fn from_series(s: MultiSeries, log_bound: u32) -> Self {
        let mut out = Self::zero(s.nvars(), s.order(), log_bound);
        out.add_part(vec![0; out.nvars], s);
        out
    }

    /// The bare symbol `L_a`.
    pub fn log_symbol(nvars: usize, order: u32, log_bound: u32, a: usize) -> Self {
        assert!(a < nvars, "log symbol index {a} out of range");
        assert!(log_bound >= 1, "log_bound must admit degree-1 symbols");
        let mut key = vec![0; nvars];
        key[a] = 1;
        let mut out = Self::zero(nvars, order, log_bound);
        out.add_part(key, MultiSeries::one(nvars, order));
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// True when every coefficient series vanishes through the given total
    /// degree in the ordinary variables.
    pub fn is_zero_through(&self, through: u32) -> bool {
        self.parts.values().all(|s| s.is_zero_through(through))
    }

    /// Coefficient series of the log monomial `L^key` (zero when absent).
    pub fn part(&self, key: &[u32]) -> MultiSeries {
        self.parts
            .get(key)
            .cloned()
            .unwrap_or_else(|| MultiSeries::zero(self.nvars, self.order))
    }

    /// The log-degree-0 part.
    pub fn series_part(&self) -> MultiSeries {
        self.part(&vec![0; self.nvars])
    }

    /// Iterate `(log exponent, coefficient series)` pairs deterministically.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &MultiSeries)> {
        self.parts.iter()
    }

    fn add_part(&mut self, key: Vec<u32>, s: MultiSeries) {
        assert_eq!(key.len(), self.nvars, "log exponent length mismatch");
        assert!(
            total_degree(&key) <= self.log_bound,
            "log degree exceeds bound"
        );
        if s.is_zero() {
            return;
        }
        assert_eq!(s.nvars(), self.nvars, "nvars mismatch");
        assert_eq!(s.order(), self.order, "truncation order mismatch");
        match self.parts.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &s;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "nvars mismatch");
        assert_eq!(self.order, other.order, "truncation order mismatch");
    }

    pub fn scalar_mul(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order, self.log_bound);
        }
        let parts = self
            .parts
            .iter()
            .map(|(k, s)| (k.clone(), s.scalar_mul(c)))
            .collect();
        Self {
            nvars: self.nvars,
            order: self.order,
            log_bound: self.log_bound,
            parts,
        }
    }

    /// Multiply every coefficient by a plain series.
    pub fn mul_series(&self, f: &MultiSeries) -> Self {
        let mut out = Self::zero(self.nvars, self.order, self.log_bound);
        for (k, s) in &self.parts {
            out.add_part(k.clone(), s * f);
        }
        out
    }

    /// Multiply by the monomial `c * y^expo`.
    pub fn mul_monomial(&self, expo: &[u32], c: &Coeff) -> Self {
        let mut out = Self::zero(self.nvars, self.order, self.log_bound);
        for (k, s) in &self.parts {
            out.add_part(k.clone(), s.mul_monomial(expo, c));
        }
        out
    }

    /// The Euler derivation `y_a d/dy_a` extended by `theta_a L_b = delta_ab`:
    /// `theta_a(L^k f) = L^k theta_a(f) + k_a L^(k - e_a) f`.
    pub fn theta(&self, a: usize) -> Self {
        assert!(a < self.nvars, "variable index {a} out of range");
        let mut out = Self::zero(self.nvars, self.order, self.log_bound);
        for (k, s) in &self.parts {
            out.add_part(k.clone(), s.theta(a));
            if k[a] > 0 {
                let mut lowered = k.clone();
                lowered[a] -= 1;
                let mult = BigRational::from_integer(k[a].into());
                out.add_part(lowered, s.scalar_mul(&mult));
            }
        }
        out
    }
}

impl Add for &LogSeries {
    type Output = LogSeries;
    fn add(self, rhs: &LogSeries) -> LogSeries {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        out.log_bound = self.log_bound.max(rhs.log_bound);
        for (k, s) in &rhs.parts {
            out.add_part(k.clone(), s.clone());
        }
        out
    }
}

impl Sub for &LogSeries {
    type Output = LogSeries;
    fn sub(self, rhs: &LogSeries) -> LogSeries {
        self + &-rhs
    }
}

impl Neg for &LogSeries {
    type Output = LogSeries;
    fn neg(self) -> LogSeries {
        self.scalar_mul(&super::rat_int(-1))
    }
}

impl fmt::Display for LogSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, s) in &self.parts {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut wrote_log = false;
            for (a, &e) in key.iter().enumerate() {
                match e {
                    0 => {}
                    1 => {
                        write!(f, "L{}", a + 1)?;
                        wrote_log = true;
                    }
                    _ => {
                        write!(f, "L{}^{}", a + 1, e)?;
                        wrote_log = true;
                    }
                }
            }
            if wrote_log {
                write!(f, "*({s})")?;
            } else {
                write!(f, "({s})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat_int, MultiSeries};
    use super::*;

    #[test]
    fn theta_of_log_symbol_is_one() {
        let l1 = LogSeries::log_symbol(2, 4, 1, 0);
        let expected = LogSeries::from_series(MultiSeries::one(2, 4), 1);
        assert_eq!(l1.theta(0), expected);
        assert!(l1.theta(1).is_zero());
    }

    #[test]
    fn theta_mixes_log_and_series_parts() {
        // theta^2 (L + 2*Xi) with Xi = y + (3/2)y^2 + (10/3)y^3 gives
        // 2y + 12y^2 + 60y^3: the log part dies after one derivation.
        let xi = MultiSeries::from_terms(
            1,
            3,
            [
                (vec![1], rat_int(1)),
                (vec![2], super::super::rat(3, 2)),
                (vec![3], super::super::rat(10, 3)),
            ],
        );
        let phi = &LogSeries::log_symbol(1, 3, 1, 0)
            + &LogSeries::from_series(xi.scalar_mul(&rat_int(2)), 1);
        let second = phi.theta(0).theta(0);
        let expected = LogSeries::from_series(
            MultiSeries::from_terms(
                1,
                3,
                [(vec![1], rat_int(2)), (vec![2], rat_int(12)), (vec![3], rat_int(60))],
            ),
            1,
        );
        assert_eq!(second, expected);
    }

    #[test]
    fn derivation_product_rule_against_series_factor() {
        // theta(f * Phi) = theta(f) Phi + f theta(Phi) with f a plain series.
        let f = MultiSeries::from_terms(2, 4, [(vec![1, 0], rat_int(3)), (vec![0, 2], rat_int(1))]);
        let phi = &LogSeries::log_symbol(2, 4, 1, 1)
            + &LogSeries::from_series(MultiSeries::variable(2, 4, 0), 1);
        for a in 0..2 {
            let lhs = phi.mul_series(&f).theta(a);
            let rhs = &phi.mul_series(&f.theta(a)) + &phi.theta(a).mul_series(&f);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn zero_through_ignores_high_terms() {
        let tail = MultiSeries::monomial(1, 5, vec![4], rat_int(7));
        let s = LogSeries::from_series(tail, 1);
        assert!(s.is_zero_through(3));
        assert!(!s.is_zero_through(4));
    }
}
