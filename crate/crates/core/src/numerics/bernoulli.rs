use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact Bernoulli numbers `B_0, B_1, …`, extended on demand.
///
/// Uses `Σ_{j=0}^{k} C(k+1, j) B_j = 0`, which fixes `B_1 = -1/2`.
#[derive(Debug, Clone, Default)]
pub struct BernoulliCache {
    values: Vec<BigRational>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache { values: Vec::new() }
    }

    /// Number of cached values.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&mut self, k: usize) -> BigRational {
        while self.values.len() <= k {
            let next = self.next_value();
            self.values.push(next);
        }
        self.values[k].clone()
    }

    fn next_value(&self) -> BigRational {
        let k = self.values.len();
        if k == 0 {
            return BigRational::one();
        }
        if k > 1 && k % 2 == 1 {
            return BigRational::zero();
        }
        // binomials C(k+1, j) for j = 0..k
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, b) in self.values.iter().enumerate() {
            if !b.is_zero() {
                acc += b * BigRational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(k + 1 - j) / BigInt::from(j + 1);
        }
        -acc / BigRational::from_integer(BigInt::from(k + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn known_values() {
        let mut c = BernoulliCache::new();
        assert_eq!(c.get(0), q(1, 1));
        assert_eq!(c.get(1), q(-1, 2));
        assert_eq!(c.get(2), q(1, 6));
        assert_eq!(c.get(3), q(0, 1));
        assert_eq!(c.get(4), q(-1, 30));
        assert_eq!(c.get(6), q(1, 42));
        assert_eq!(c.get(12), q(-691, 2730));
        assert_eq!(c.get(20), q(-174611, 330));
    }

    #[test]
    fn odd_values_vanish() {
        let mut c = BernoulliCache::new();
        for k in (3..60).step_by(2) {
            assert!(c.get(k).is_zero(), "B_{k}");
        }
    }

    #[test]
    fn recurrence_holds_exactly() {
        let mut c = BernoulliCache::new();
        for k in 1..40usize {
            let mut binom = BigInt::one();
            let mut s = BigRational::zero();
            for j in 0..=k {
                s += c.get(j) * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(k + 1 - j) / BigInt::from(j + 1);
            }
            assert!(s.is_zero(), "k = {k}");
        }
    }
}
