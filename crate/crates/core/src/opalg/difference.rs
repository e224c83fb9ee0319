//! The difference ring ℚ[x]⟨Δ⟩ with Δ·x = x·Δ + Δ + 1. Products are
//! computed through the shift presentation E = Δ + 1, E·p(x) = p(x+1)·E.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::kernel::{rat_i, Poly, Rat};

/// Difference operator Σ_i c_i(x) Δ^i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceOp {
    coeffs: Vec<Poly>,
}

impl DifferenceOp {
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().map(Poly::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        DifferenceOp { coeffs }
    }

    pub fn zero() -> Self {
        DifferenceOp { coeffs: vec![] }
    }

    pub fn one() -> Self {
        DifferenceOp::new(vec![Poly::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn from_poly(p: Poly) -> Self {
        DifferenceOp::new(vec![p])
    }

    /// c·x^j·Δ^i.
    pub fn term(c: Rat, j: usize, i: usize) -> Self {
        let mut v = vec![Poly::zero(); i + 1];
        v[i] = Poly::monomial(c, j);
        DifferenceOp::new(v)
    }

    pub fn delta() -> Self {
        DifferenceOp::term(Rat::one(), 0, 1)
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Poly {
        self.coeffs.get(i).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Product with Δ·x = x·Δ + Δ + 1.
    pub fn mul(&self, rhs: &DifferenceOp) -> DifferenceOp {
        // to shift basis: Δ^i = (E-1)^i, multiply, convert back
        let a = self.to_shift_basis();
        let b = rhs.to_shift_basis();
        if a.is_empty() || b.is_empty() {
            return DifferenceOp::zero();
        }
        let mut prod = vec![Poly::zero(); a.len() + b.len() - 1];
        for (s, p) in a.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (t, q) in b.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                // E^s ∘ q(x) = q(x+s) ∘ E^s
                prod[s + t] += p * &q.shift(&rat_i(s as i64));
            }
        }
        DifferenceOp::from_shift_basis(&prod)
    }

    /// Coefficients of E^s with the operator written as Σ_s c_s(x) E^s.
    fn to_shift_basis(&self) -> Vec<Poly> {
        let n = self.coeffs.len();
        let mut out = vec![Poly::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // Δ^i = Σ_s C(i,s)(-1)^(i-s) E^s
            let mut binom = Rat::one();
            for s in 0..=i {
                if s > 0 {
                    binom = binom * rat_i((i - s + 1) as i64) / rat_i(s as i64);
                }
                let sign = if (i - s) % 2 == 0 { 1 } else { -1 };
                out[s] += c.scale(&(binom.clone() * rat_i(sign)));
            }
        }
        out
    }

    fn from_shift_basis(shift: &[Poly]) -> DifferenceOp {
        let n = shift.len();
        let mut out = vec![Poly::zero(); n];
        for (s, c) in shift.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // E^s = (Δ+1)^s = Σ_i C(s,i) Δ^i
            let mut binom = Rat::one();
            for i in 0..=s {
                if i > 0 {
                    binom = binom * rat_i((s - i + 1) as i64) / rat_i(i as i64);
                }
                out[i] += c.scale(&binom);
            }
        }
        DifferenceOp::new(out)
    }

    /// Content-free with positive leading entry, as for differential
    /// operators.
    pub fn normalize(&self) -> DifferenceOp {
        if self.is_zero() {
            return DifferenceOp::zero();
        }
        let mut den = BigInt::one();
        for p in &self.coeffs {
            for c in p.coeffs() {
                den = den.lcm(c.denom());
            }
        }
        let mut num = BigInt::zero();
        for p in &self.coeffs {
            for c in p.coeffs() {
                num = num.gcd((c * Rat::from_integer(den.clone())).numer());
            }
        }
        let content = Rat::new(num, den);
        let mut scale = Rat::one() / content;
        let lead = self.coeffs.last().unwrap().leading();
        if (lead * &scale).is_negative() {
            scale = -scale;
        }
        DifferenceOp::new(self.coeffs.iter().map(|p| p.scale(&scale)).collect())
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, p) in self.coeffs.iter().enumerate().rev() {
            if p.is_zero() {
                continue;
            }
            let dpow = match i {
                0 => String::new(),
                1 => "Delta".to_string(),
                _ => format!("Delta^{}", i),
            };
            let nterms = p.coeffs().iter().filter(|c| !c.is_zero()).count();
            if i == 0 {
                let s = p.to_string_var("x");
                if let Some(body) = s.strip_prefix('-') {
                    parts.push((true, body.to_string()));
                } else {
                    parts.push((false, s));
                }
            } else if nterms == 1 {
                let (j, c) = p
                    .coeffs()
                    .iter()
                    .enumerate()
                    .find(|(_, c)| !c.is_zero())
                    .unwrap();
                let mag = c.abs();
                let mut factors = Vec::new();
                if !mag.is_one() {
                    factors.push(format!("{}", mag));
                }
                if j == 1 {
                    factors.push("x".to_string());
                } else if j > 1 {
                    factors.push(format!("x^{}", j));
                }
                factors.push(dpow);
                parts.push((c.is_negative(), factors.join("*")));
            } else {
                parts.push((false, format!("({})*{}", p.to_string_var("x"), dpow)));
            }
        }
        let mut s = String::new();
        for (k, (neg, body)) in parts.iter().enumerate() {
            if k == 0 {
                if *neg {
                    s.push('-');
                }
            } else {
                s.push_str(if *neg { " - " } else { " + " });
            }
            s.push_str(body);
        }
        s
    }
}

impl fmt::Display for DifferenceOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Add for DifferenceOp {
    type Output = DifferenceOp;
    fn add(self, rhs: DifferenceOp) -> DifferenceOp {
        let mut v = self.coeffs;
        if v.len() < rhs.coeffs.len() {
            v.resize(rhs.coeffs.len(), Poly::zero());
        }
        for (a, b) in v.iter_mut().zip(rhs.coeffs.into_iter()) {
            *a += b;
        }
        DifferenceOp::new(v)
    }
}

impl Sub for DifferenceOp {
    type Output = DifferenceOp;
    fn sub(self, rhs: DifferenceOp) -> DifferenceOp {
        self + (-rhs)
    }
}

impl Neg for DifferenceOp {
    type Output = DifferenceOp;
    fn neg(self) -> DifferenceOp {
        DifferenceOp::new(self.coeffs.into_iter().map(|p| -p).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_times_x() {
        // Δ·x = xΔ + Δ + 1
        let got = DifferenceOp::delta().mul(&DifferenceOp::from_poly(Poly::x()));
        let want = DifferenceOp::new(vec![Poly::one(), Poly::from_i64(&[1, 1])]);
        assert_eq!(got, want);
    }

    #[test]
    fn x_times_delta() {
        let got = DifferenceOp::from_poly(Poly::x()).mul(&DifferenceOp::delta());
        let want = DifferenceOp::new(vec![Poly::zero(), Poly::x()]);
        assert_eq!(got, want);
        // identity
        let a = DifferenceOp::new(vec![Poly::from_i64(&[1, 2]), Poly::one()]);
        assert_eq!(a.mul(&DifferenceOp::one()), a);
    }

    #[test]
    fn commutator_is_delta_plus_one() {
        let dx = DifferenceOp::delta().mul(&DifferenceOp::from_poly(Poly::x()));
        let xd = DifferenceOp::from_poly(Poly::x()).mul(&DifferenceOp::delta());
        let comm = dx - xd;
        let want = DifferenceOp::new(vec![Poly::one(), Poly::one()]);
        assert_eq!(comm, want);
    }

    #[test]
    fn associativity_sample() {
        let a = DifferenceOp::new(vec![Poly::from_i64(&[0, 1]), Poly::one()]);
        let b = DifferenceOp::new(vec![Poly::from_i64(&[2]), Poly::from_i64(&[0, 3])]);
        let c = DifferenceOp::new(vec![Poly::from_i64(&[1, 1])]);
        let lhs = a.mul(&b).mul(&c);
        let rhs = a.mul(&b.mul(&c));
        assert_eq!(lhs, rhs);
    }
}
