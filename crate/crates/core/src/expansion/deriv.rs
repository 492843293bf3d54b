use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numerics::{Complex, Context};

/// Exact coefficients of `D^k f = Σ_{i=1}^{k+1} A_{k,i} f^i` for `f = (e^X - 1)^{-1}`,
/// `D = d/dX`.
#[derive(Debug, Clone)]
pub struct DerivPoly {
    rows: Vec<Vec<BigInt>>,
}

impl DerivPoly {
    /// Rows `k = 0..=max_k`.
    pub fn new(max_k: usize) -> Self {
        let mut rows = vec![vec![BigInt::one()]];
        for k in 0..max_k {
            let prev = &rows[k];
            let mut next = vec![BigInt::zero(); k + 2];
            for i in 1..=k + 2 {
                let mut v = BigInt::zero();
                if i <= k + 1 {
                    v -= &prev[i - 1] * BigInt::from(i);
                }
                if i >= 2 {
                    v -= &prev[i - 2] * BigInt::from(i - 1);
                }
                next[i - 1] = v;
            }
            rows.push(next);
        }
        DerivPoly { rows }
    }

    pub fn max_order(&self) -> usize {
        self.rows.len() - 1
    }

    /// `[A_{k,1}, …, A_{k,k+1}]`.
    pub fn row(&self, k: usize) -> &[BigInt] {
        &self.rows[k]
    }

    /// `D^k f` given the value of `f`.
    pub fn eval(&self, k: usize, f: &Complex, ctx: &Context) -> Complex {
        // Horner in f, then one more factor of f
        let row = self.row(k);
        let mut acc = Complex::zero(ctx);
        for a in row.iter().rev() {
            acc = &acc * f + Complex::from_real(ctx.from_bigint(a));
        }
        &acc * f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(row: &[BigInt]) -> Vec<i64> {
        row.iter().map(|v| i64::try_from(v.clone()).unwrap()).collect()
    }

    #[test]
    fn low_rows() {
        let d = DerivPoly::new(3);
        assert_eq!(ints(d.row(0)), [1]);
        assert_eq!(ints(d.row(1)), [-1, -1]);
        assert_eq!(ints(d.row(2)), [1, 3, 2]);
        assert_eq!(ints(d.row(3)), [-1, -7, -12, -6]);
    }

    #[test]
    fn rows_match_finite_differences() {
        // central differences of D^{k-1} f at X0 approximate D^k f
        let ctx = Context::new(60).unwrap();
        let d = DerivPoly::new(8);
        let x0 = ctx.ratio(13, 10);
        let h = ctx.pow10(-20);
        let f_at = |x: &crate::Real| Complex::from_real((x.exp(&ctx) - 1).recip());
        for k in 1..=8 {
            let hi = d.eval(k - 1, &f_at(&(&x0 + &h)), &ctx);
            let lo = d.eval(k - 1, &f_at(&(&x0 - &h)), &ctx);
            let fd = (hi - lo).scale(&(&h * 2).recip());
            let exact = d.eval(k, &f_at(&x0), &ctx);
            let rel = ((&fd - &exact).abs() / exact.abs()).to_f64();
            assert!(rel < 1e-30, "k = {k}: {rel}");
        }
    }
}
