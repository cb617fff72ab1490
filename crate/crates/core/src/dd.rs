//! Double-double arithmetic for the ascending Bessel series.
//!
//! Only the handful of operations the series need: sums, products and
//! quotients of (complex) double-double numbers. Roughly 32 significant
//! digits, which absorbs the `e^|z|` cancellation of the J/I series for the
//! arguments where it is used.

use core::ops::{Add, Mul, Neg, Sub};
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs_f64(self) -> f64 {
        libm::fabs(self.hi)
    }

    pub fn recip(self) -> Dd {
        Dd::ONE.div(self)
    }

    pub fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e } + Dd::new(q3)
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }
}

/// Complex double-double.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct DdC {
    pub re: Dd,
    pub im: Dd,
}

impl DdC {
    pub const ONE: DdC = DdC { re: Dd::ONE, im: Dd::ZERO };

    pub fn from_c64(z: Complex64) -> Self {
        DdC { re: Dd::new(z.re), im: Dd::new(z.im) }
    }

    pub fn from_dd(re: Dd) -> Self {
        DdC { re, im: Dd::ZERO }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Cheap magnitude bound, accurate to a factor of sqrt(2).
    pub fn norm1(self) -> f64 {
        self.re.abs_f64() + self.im.abs_f64()
    }

    pub fn scale(self, s: Dd) -> DdC {
        DdC { re: self.re * s, im: self.im * s }
    }

    pub fn div(self, b: DdC) -> DdC {
        let den = b.re * b.re + b.im * b.im;
        let num = self * DdC { re: b.re, im: -b.im };
        let inv = den.recip();
        num.scale(inv)
    }
}

impl Add for DdC {
    type Output = DdC;
    #[inline]
    fn add(self, b: DdC) -> DdC {
        DdC { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Sub for DdC {
    type Output = DdC;
    #[inline]
    fn sub(self, b: DdC) -> DdC {
        DdC { re: self.re - b.re, im: self.im - b.im }
    }
}

impl Mul for DdC {
    type Output = DdC;
    #[inline]
    fn mul(self, b: DdC) -> DdC {
        DdC {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}
