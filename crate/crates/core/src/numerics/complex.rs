use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::{Context, Real};

/// Complex number over [`Real`]; transcendental functions use principal branches.
#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let im = re.zero_like();
        Complex { re, im }
    }

    pub fn zero(ctx: &Context) -> Self {
        Complex::new(ctx.zero(), ctx.zero())
    }

    pub fn one(ctx: &Context) -> Self {
        Complex::new(ctx.one(), ctx.zero())
    }

    /// `r·e^{iθ}`.
    pub fn from_polar(r: &Real, theta: &Real, ctx: &Context) -> Self {
        Complex::new(r * theta.cos(ctx), r * theta.sin(ctx))
    }

    /// `e^{iθ}`.
    pub fn cis(theta: &Real, ctx: &Context) -> Self {
        Complex::new(theta.cos(ctx), theta.sin(ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        if self.im.is_zero() {
            self.re.abs()
        } else if self.re.is_zero() {
            self.im.abs()
        } else {
            self.norm_sqr().sqrt()
        }
    }

    pub fn arg(&self, ctx: &Context) -> Real {
        Real::atan2(&self.im, &self.re, ctx)
    }

    pub fn scale(&self, k: &Real) -> Self {
        Complex::new(&self.re * k, &self.im * k)
    }

    pub fn recip(&self) -> Self {
        if self.im.is_zero() {
            return Complex::new(self.re.recip(), self.im.clone());
        }
        let d = self.norm_sqr();
        Complex::new(&self.re / &d, -(&self.im / &d))
    }

    pub fn exp(&self, ctx: &Context) -> Self {
        let r = self.re.exp(ctx);
        if self.im.is_zero() {
            return Complex::new(r, self.im.clone());
        }
        Complex::from_polar(&r, &self.im, ctx)
    }

    /// Principal logarithm.
    pub fn ln(&self, ctx: &Context) -> Self {
        if self.im.is_zero() && self.re.is_positive() {
            return Complex::new(self.re.ln(ctx), self.im.clone());
        }
        Complex::new(self.abs().ln(ctx), self.arg(ctx))
    }

    /// Principal power `self^y` for real `y`.
    pub fn powf(&self, y: &Real, ctx: &Context) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        if self.im.is_zero() && self.re.is_positive() {
            return Complex::new(self.re.powf(y, ctx), self.im.clone());
        }
        let r = self.abs().powf(y, ctx);
        let theta = self.arg(ctx) * y;
        Complex::from_polar(&r, &theta, ctx)
    }

    /// Integer power by repeated squaring; negative exponents invert.
    pub fn powi(&self, n: i64) -> Self {
        if self.im.is_zero() {
            return Complex::new(self.re.powi(n), self.im.clone());
        }
        let mut base = self.clone();
        let mut e = n.unsigned_abs();
        let mut acc = Complex::from_real(self.re.one_like());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// `coth z = (1 + e^{-2z}) / (1 - e^{-2z})`, evaluated in the half-plane `Re z > 0`.
    pub fn coth(&self, ctx: &Context) -> Self {
        let u = (-self.clone() * 2).exp(ctx);
        let one = Complex::one(ctx);
        (&one + &u) / (&one - &u)
    }

    /// `sinh z`.
    pub fn sinh(&self, ctx: &Context) -> Self {
        let e = self.exp(ctx);
        (&e - &e.recip()).scale(&ctx.ratio(1, 2))
    }

    pub fn to_sci_strings(&self, digits: usize) -> (alloc::string::String, alloc::string::String) {
        (self.re.to_sci_string(digits), self.im.to_sci_string(digits))
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(17);
        write!(f, "{} + {}i", self.re.to_sci_string(d), self.im.to_sci_string(d))
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        if rhs.im.is_zero() {
            return Complex::new(&self.re * &rhs.re, &self.im * &rhs.re);
        }
        if self.im.is_zero() {
            return Complex::new(&self.re * &rhs.re, &self.re * &rhs.im);
        }
        Complex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        if rhs.im.is_zero() {
            return Complex::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        let d = rhs.norm_sqr();
        Complex::new(
            (&self.re * &rhs.re + &self.im * &rhs.im) / &d,
            (&self.im * &rhs.re - &self.re * &rhs.im) / &d,
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: &Complex) -> Complex {
                (&self).$method(rhs)
            }
        }
        impl $tr<Complex> for &Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Mul<&Real> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Real) -> Complex {
        self.scale(rhs)
    }
}

impl Mul<&Real> for Complex {
    type Output = Complex;
    fn mul(self, rhs: &Real) -> Complex {
        self.scale(rhs)
    }
}

impl Mul<i64> for Complex {
    type Output = Complex;
    fn mul(self, rhs: i64) -> Complex {
        Complex::new(self.re * rhs, self.im * rhs)
    }
}

impl Div<&Real> for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Real) -> Complex {
        Complex::new(&self.re / rhs, &self.im / rhs)
    }
}

impl Div<&Real> for Complex {
    type Output = Complex;
    fn div(self, rhs: &Real) -> Complex {
        (&self) / rhs
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

impl AddAssign<&Complex> for Complex {
    fn add_assign(&mut self, rhs: &Complex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign<Complex> for Complex {
    fn add_assign(&mut self, rhs: Complex) {
        *self += &rhs;
    }
}

impl SubAssign<&Complex> for Complex {
    fn sub_assign(&mut self, rhs: &Complex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Complex> for Complex {
    fn mul_assign(&mut self, rhs: &Complex) {
        *self = &*self * rhs;
    }
}
