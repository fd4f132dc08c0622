//! Integers of the eighth cyclotomic field, a0 + a1 z + a2 z^2 + a3 z^3
//! with z^4 = -1.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Z8(pub [i64; 4]);

impl Z8 {
    pub const ZERO: Z8 = Z8([0, 0, 0, 0]);
    pub const ONE: Z8 = Z8([1, 0, 0, 0]);

    pub fn int(n: i64) -> Z8 {
        Z8([n, 0, 0, 0])
    }

    /// z^k for any integer k.
    pub fn zeta(k: i64) -> Z8 {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        Z8(c)
    }

    /// z + z^7, a square root of 2.
    pub fn sqrt2() -> Z8 {
        Z8::zeta(1) + Z8::zeta(7)
    }

    /// Multiplication by z^k: a signed rotation of the coefficients.
    pub fn rotate(self, k: i64) -> Z8 {
        let mut out = [0i64; 4];
        for (i, &a) in self.0.iter().enumerate() {
            let e = (i as i64 + k).rem_euclid(8) as usize;
            if e < 4 {
                out[e] += a;
            } else {
                out[e - 4] -= a;
            }
        }
        Z8(out)
    }

    pub fn scale(self, n: i64) -> Z8 {
        Z8(self.0.map(|a| a * n))
    }

    pub fn pow(self, mut e: u32) -> Z8 {
        let mut base = self;
        let mut acc = Z8::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(self) -> bool {
        self == Z8::ZERO
    }
}

impl Add for Z8 {
    type Output = Z8;
    fn add(self, o: Z8) -> Z8 {
        Z8([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2], self.0[3] + o.0[3]])
    }
}

impl Sub for Z8 {
    type Output = Z8;
    fn sub(self, o: Z8) -> Z8 {
        self + (-o)
    }
}

impl Neg for Z8 {
    type Output = Z8;
    fn neg(self) -> Z8 {
        Z8(self.0.map(|a| -a))
    }
}

impl Mul for Z8 {
    type Output = Z8;
    fn mul(self, o: Z8) -> Z8 {
        let mut acc = Z8::ZERO;
        for (i, &a) in self.0.iter().enumerate() {
            if a != 0 {
                acc = acc + o.rotate(i as i64).scale(a);
            }
        }
        acc
    }
}
