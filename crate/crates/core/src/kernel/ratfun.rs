//! Rational functions n(X)/d(X) over ℚ with monic denominator and
//! gcd(n, d) = 1.

use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::poly::Poly;
use super::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut r = RatFun { num, den };
        r.reduce();
        r
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RatFun::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// The numerator when the denominator is 1; None otherwise.
    pub fn as_poly(&self) -> Option<Poly> {
        if self.is_polynomial() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn inv(&self) -> RatFun {
        assert!(!self.is_zero(), "inverse of zero rational function");
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> RatFun {
        // (n/d)' = (n'd - nd')/d^2
        let n = &self.num.derivative() * &self.den;
        let m = &self.num * &self.den.derivative();
        RatFun::new(n - m, &self.den * &self.den)
    }

    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree().unwrap_or(0) > 0 {
            self.num = self.num.div_rem(&g).0;
            self.den = self.den.div_rem(&g).0;
        }
        let lead = self.den.leading();
        if !lead.is_one() {
            let inv = Rat::one() / lead;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        RatFun::new(
            &self.num * &rhs.den + &self.den * &rhs.num,
            &self.den * &rhs.den,
        )
    }
}

impl AddAssign for RatFun {
    fn add_assign(&mut self, rhs: RatFun) {
        *self = self.clone() + rhs;
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        self + (-rhs)
    }
}

impl SubAssign for RatFun {
    fn sub_assign(&mut self, rhs: RatFun) {
        *self = self.clone() - rhs;
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -self.num, den: self.den }
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl MulAssign for RatFun {
    fn mul_assign(&mut self, rhs: RatFun) {
        *self = self.clone() * rhs;
    }
}

impl Div for RatFun {
    type Output = RatFun;
    fn div(self, rhs: RatFun) -> RatFun {
        self * rhs.inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat::rat_i;

    #[test]
    fn reduce_and_derivative() {
        // (X^2 - 1)/(X - 1) = X + 1
        let f = RatFun::new(Poly::from_i64(&[-1, 0, 1]), Poly::from_i64(&[-1, 1]));
        assert!(f.is_polynomial());
        assert_eq!(f.as_poly().unwrap(), Poly::from_i64(&[1, 1]));

        // d/dX (1/X) = -1/X^2
        let g = RatFun::new(Poly::one(), Poly::x());
        let dg = g.derivative();
        assert_eq!(dg.num(), &Poly::from_i64(&[-1]));
        assert_eq!(dg.den(), &Poly::from_i64(&[0, 0, 1]));
        assert_eq!(dg.eval(&rat_i(2)), Some(crate::kernel::rat::rat(-1, 4)));
    }
}
