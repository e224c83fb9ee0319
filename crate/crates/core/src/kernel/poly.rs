//! Dense univariate polynomials over ℚ.
//!
//! The variable is anonymous; the same type serves polynomials in `z`
//! (operator coefficients) and in `n` (recurrence coefficients).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use super::rat::{rat_i, sign_of, Rat};
use crate::error::Error;
use crate::Result;

/// Dense polynomial; `coeffs[k]` is the coefficient of degree k. The leading
/// coefficient is nonzero unless the polynomial is zero (empty vector).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map(Zero::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial c·X^k.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// X itself.
    pub fn x() -> Self {
        Poly::monomial(Rat::one(), 1)
    }

    pub fn from_i64(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| rat_i(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat_i(k as i64))
                .collect(),
        )
    }

    /// k-th derivative.
    pub fn derivative_n(&self, k: usize) -> Poly {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitute X ↦ X + a (Taylor shift).
    pub fn shift(&self, a: &Rat) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * (Poly::x() + Poly::constant(a.clone())) + Poly::constant(c.clone());
        }
        acc
    }

    /// Substitute X ↦ c·X.
    pub fn rescale(&self, c: &Rat) -> Poly {
        let mut pow = Rat::one();
        Poly::new(
            self.coeffs
                .iter()
                .map(|a| {
                    let r = a * &pow;
                    pow *= c;
                    r
                })
                .collect(),
        )
    }

    /// Substitute X ↦ X^u.
    pub fn inflate(&self, u: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() * u.max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * u] = c.clone();
        }
        Poly::new(v)
    }

    /// Interpret as a polynomial in X^u: returns the deflated polynomial, or
    /// None if some coefficient sits at a degree not divisible by u.
    pub fn deflate(&self, u: usize) -> Option<Poly> {
        if u <= 1 {
            return Some(self.clone());
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() / u + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k % u != 0 {
                return None;
            }
            v[k / u] = c.clone();
        }
        Some(Poly::new(v))
    }

    /// Exact Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let dl = d.leading();
        let mut rem = self.clone();
        let mut q = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading() / dl.clone();
            let k = rd - dd;
            q[k] = c.clone();
            // rem -= c X^k d
            let sub = d.scale(&c);
            let mut shifted = vec![Rat::zero(); k];
            shifted.extend(sub.coeffs);
            rem = rem - Poly::new(shifted);
        }
        (Poly::new(q), rem)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.leading();
        self.scale(&(Rat::one() / l))
    }

    /// Rational content: positive rational `c` with `self = c * primitive`,
    /// where `primitive` has coprime integer coefficients.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for c in &self.coeffs {
            let n = (c * Rat::from_integer(den.clone())).numer().clone();
            num = num.gcd(&n);
        }
        Rat::new(num, den)
    }

    pub fn primitive(&self) -> Poly {
        let c = self.content();
        if c.is_zero() {
            return Poly::zero();
        }
        self.scale(&(Rat::one() / c))
    }

    /// All rational roots with multiplicities, plus the remaining factor
    /// after exact deflation (constant 1 when the polynomial splits).
    pub fn rational_roots(&self) -> Result<(BTreeMap<Rat, usize>, Poly)> {
        assert!(!self.is_zero(), "rational_roots of the zero polynomial");
        let mut roots = BTreeMap::new();
        let mut rem = self.primitive();
        // factor out X^k
        let val = rem.coeffs.iter().take_while(|c| c.is_zero()).count();
        if val > 0 {
            roots.insert(Rat::zero(), val);
            rem = Poly::new(rem.coeffs[val..].to_vec());
        }
        if rem.degree() == Some(0) {
            return Ok((roots, Poly::one()));
        }
        // integer coefficients after primitive()
        loop {
            if rem.degree().unwrap_or(0) == 0 {
                break;
            }
            let a0 = rem.coeff(0).numer().clone();
            let al = rem.leading().numer().clone();
            let mut found = None;
            'search: for p in divisors(&a0)? {
                for q in divisors(&al)? {
                    for sgn in [1i64, -1] {
                        let cand = Rat::new(p.clone() * BigInt::from(sgn), q.clone());
                        if rem.eval(&cand).is_zero() {
                            found = Some(cand);
                            break 'search;
                        }
                    }
                }
            }
            match found {
                Some(r) => {
                    // deflate exactly by (X - r) until it no longer divides
                    let lin = Poly::new(vec![-r.clone(), Rat::one()]);
                    let mut mult = 0;
                    loop {
                        let (q, rr) = rem.div_rem(&lin);
                        if rr.is_zero() {
                            rem = q.primitive();
                            mult += 1;
                        } else {
                            break;
                        }
                    }
                    roots.insert(r, mult);
                }
                None => break,
            }
        }
        let rem = if rem.degree().unwrap_or(0) == 0 {
            Poly::one()
        } else {
            rem
        };
        Ok((roots, rem))
    }

    /// Format with a named variable, parser-compatible: `3*z^2 - 1/2*z + 5`.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = if k == 0 {
                format!("{}", mag)
            } else {
                let pow = if k == 1 {
                    var.to_string()
                } else {
                    format!("{}^{}", var, k)
                };
                if mag.is_one() {
                    pow
                } else {
                    format!("{}*{}", mag, pow)
                }
            };
            if parts.is_empty() {
                parts.push(if sign_of(c) < 0 {
                    format!("-{}", body)
                } else {
                    body
                });
            } else {
                parts.push(format!("{} {}", if sign_of(c) < 0 { "-" } else { "+" }, body));
            }
        }
        parts.join(" ")
    }
}

/// Positive divisors of |n|; errors out when |n| is too large to factor by
/// trial division at desk scale.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Ok(vec![]);
    }
    let limit = BigInt::from(10_000_000_000_000u64);
    if n > limit {
        return Err(Error::RootSearchOverflow);
    }
    let n_u = n.to_string().parse::<u64>().map_err(|_| Error::RootSearchOverflow)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n_u {
        if n_u % d == 0 {
            small.push(BigInt::from(d));
            if d != n_u / d {
                large.push(BigInt::from(n_u / d));
            }
        }
        d += 1;
        if d > 3_500_000 {
            // trial bound reached: keep what we have plus n itself
            if large.last() != Some(&BigInt::from(n_u)) {
                large.push(BigInt::from(n_u));
            }
            break;
        }
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("z"))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let mut v = self.coeffs;
        if v.len() < rhs.coeffs.len() {
            v.resize(rhs.coeffs.len(), Rat::zero());
        }
        for (a, b) in v.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
        Poly::new(v)
    }
}

impl AddAssign for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        *self = self.clone() + rhs;
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl SubAssign for Poly {
    fn sub_assign(&mut self, rhs: Poly) {
        *self = self.clone() - rhs;
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        Poly::new(v)
    }
}

impl MulAssign for Poly {
    fn mul_assign(&mut self, rhs: Poly) {
        *self = &*self * &rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat::rat;

    #[test]
    fn roots_with_deflation() {
        // 9X^2 - 6X -> {0: 1, 2/3: 1}, remainder 1
        let p = Poly::from_i64(&[0, -6, 9]);
        let (roots, rem) = p.rational_roots().unwrap();
        assert_eq!(roots.get(&Rat::zero()), Some(&1));
        assert_eq!(roots.get(&rat(2, 3)), Some(&1));
        assert_eq!(rem, Poly::one());

        // X^2 + 1 -> no roots, remainder itself
        let p = Poly::from_i64(&[1, 0, 1]);
        let (roots, rem) = p.rational_roots().unwrap();
        assert!(roots.is_empty());
        assert_eq!(rem, Poly::from_i64(&[1, 0, 1]));

        // (X - 1/2)^2 (X + 2)
        let half = Poly::new(vec![rat(-1, 2), Rat::one()]);
        let p = &(&half * &half) * &Poly::from_i64(&[2, 1]);
        let (roots, rem) = p.rational_roots().unwrap();
        assert_eq!(roots.get(&rat(1, 2)), Some(&2));
        assert_eq!(roots.get(&rat_i(-2)), Some(&1));
        assert_eq!(rem, Poly::one());
    }

    #[test]
    fn root_eval_and_reconstruction() {
        let p = Poly::from_i64(&[-6, 11, -6, 1]); // (X-1)(X-2)(X-3)
        let (roots, rem) = p.rational_roots().unwrap();
        assert_eq!(rem, Poly::one());
        let mut rebuilt = Poly::constant(p.leading());
        for (r, m) in &roots {
            assert!(p.eval(r).is_zero());
            for _ in 0..*m {
                rebuilt = &rebuilt * &Poly::new(vec![-r.clone(), Rat::one()]);
            }
        }
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn shift_and_divrem() {
        let p = Poly::from_i64(&[1, 2, 1]); // (X+1)^2
        let q = p.shift(&rat_i(-1)); // X^2
        assert_eq!(q, Poly::from_i64(&[0, 0, 1]));

        let (quo, rem) = p.div_rem(&Poly::from_i64(&[1, 1]));
        assert_eq!(quo, Poly::from_i64(&[1, 1]));
        assert!(rem.is_zero());
    }

    #[test]
    fn display_round_shape() {
        let p = Poly::new(vec![rat_i(5), rat(-1, 2), rat_i(3)]);
        assert_eq!(p.to_string_var("z"), "3*z^2 - 1/2*z + 5");
    }
}
