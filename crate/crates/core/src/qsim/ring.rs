//! Exact arithmetic in the ring generated by the Gaussian integers and
//! `1/sqrt(2)`, which is closed under the entries of H, X, Z, S, T, CNOT,
//! CCNOT and CZ. An element is
//!
//! `(a + b sqrt(2) + (c + d sqrt(2)) i) / sqrt(2)^e`
//!
//! kept in canonical form with minimal `e`, so structural equality is
//! value equality. Exact coefficients are what make the amplitude-degree
//! audits sound: there is no "numerically zero" threshold to tune.

use num_complex::Complex64;
use std::f64::consts::SQRT_2;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingElem {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
    e: u32,
}

impl RingElem {
    pub const ZERO: RingElem = RingElem {
        a: 0,
        b: 0,
        c: 0,
        d: 0,
        e: 0,
    };
    pub const ONE: RingElem = RingElem {
        a: 1,
        b: 0,
        c: 0,
        d: 0,
        e: 0,
    };
    pub const I: RingElem = RingElem {
        a: 0,
        b: 0,
        c: 1,
        d: 0,
        e: 0,
    };

    pub fn from_int(v: i64) -> Self {
        RingElem {
            a: v as i128,
            b: 0,
            c: 0,
            d: 0,
            e: 0,
        }
    }

    /// `1 / sqrt(2)`
    pub fn inv_sqrt2() -> Self {
        RingElem {
            a: 1,
            b: 0,
            c: 0,
            d: 0,
            e: 1,
        }
    }

    /// `e^{i pi / 4} = (1 + i) / sqrt(2)`, the nontrivial T entry.
    pub fn omega() -> Self {
        RingElem {
            a: 1,
            b: 0,
            c: 1,
            d: 0,
            e: 1,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0 && self.d == 0
    }

    /// True iff the imaginary component vanishes.
    pub fn is_real(&self) -> bool {
        self.c == 0 && self.d == 0
    }

    /// Raw components `(a, b, c, d, e)` of the canonical form.
    pub fn parts(&self) -> (i128, i128, i128, i128, u32) {
        (self.a, self.b, self.c, self.d, self.e)
    }

    fn normalize(mut self) -> Self {
        if self.is_zero() {
            self.e = 0;
            return self;
        }
        // (a + b sqrt2)/sqrt2 = b + (a/2) sqrt2, integral iff a is even.
        while self.e > 0 && self.a % 2 == 0 && self.c % 2 == 0 {
            self = RingElem {
                a: self.b,
                b: self.a / 2,
                c: self.d,
                d: self.c / 2,
                e: self.e - 1,
            };
        }
        self
    }

    /// Multiply numerator and denominator by `sqrt(2)` once.
    fn raised(self) -> Self {
        RingElem {
            a: 2 * self.b,
            b: self.a,
            c: 2 * self.d,
            d: self.c,
            e: self.e + 1,
        }
    }

    pub fn conj(&self) -> Self {
        RingElem {
            a: self.a,
            b: self.b,
            c: -self.c,
            d: -self.d,
            e: self.e,
        }
    }

    /// `|z|^2`, a real ring element.
    pub fn norm_sqr(&self) -> Self {
        *self * self.conj()
    }

    pub fn to_complex(&self) -> Complex64 {
        let scale = SQRT_2.powi(self.e as i32);
        Complex64::new(
            (self.a as f64 + self.b as f64 * SQRT_2) / scale,
            (self.c as f64 + self.d as f64 * SQRT_2) / scale,
        )
    }
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(self, rhs: RingElem) -> RingElem {
        let (mut lhs, mut rhs) = (self, rhs);
        while lhs.e < rhs.e {
            lhs = lhs.raised();
        }
        while rhs.e < lhs.e {
            rhs = rhs.raised();
        }
        RingElem {
            a: lhs.a + rhs.a,
            b: lhs.b + rhs.b,
            c: lhs.c + rhs.c,
            d: lhs.d + rhs.d,
            e: lhs.e,
        }
        .normalize()
    }
}

impl Sub for RingElem {
    type Output = RingElem;
    fn sub(self, rhs: RingElem) -> RingElem {
        self + (-rhs)
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
            e: self.e,
        }
    }
}

// Complex multiplication mixes + and - by nature.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for RingElem {
    type Output = RingElem;
    fn mul(self, rhs: RingElem) -> RingElem {
        // Components live in Z[sqrt2]: (a, b) stands for a + b sqrt2.
        let re1 = (self.a, self.b);
        let im1 = (self.c, self.d);
        let re2 = (rhs.a, rhs.b);
        let im2 = (rhs.c, rhs.d);
        let mul2 = |x: (i128, i128), y: (i128, i128)| -> (i128, i128) {
            (x.0 * y.0 + 2 * x.1 * y.1, x.0 * y.1 + x.1 * y.0)
        };
        let sub2 = |x: (i128, i128), y: (i128, i128)| (x.0 - y.0, x.1 - y.1);
        let add2 = |x: (i128, i128), y: (i128, i128)| (x.0 + y.0, x.1 + y.1);
        let re = sub2(mul2(re1, re2), mul2(im1, im2));
        let im = add2(mul2(re1, im2), mul2(im1, re2));
        RingElem {
            a: re.0,
            b: re.1,
            c: im.0,
            d: im.1,
            e: self.e + rhs.e,
        }
        .normalize()
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}r2 + ({} + {}r2)i)/r2^{}",
            self.a, self.b, self.c, self.d, self.e
        )
    }
}
