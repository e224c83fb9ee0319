//! The θ = zD presentation of differential operators, used for indicial
//! data, ramification and descent. Commutation rule: θ·z = z·(θ + 1).

use num_traits::{One, Zero};
use std::fmt;

use super::diffop::DiffOp;
use crate::error::Error;
use crate::kernel::{rat_i, Poly, Rat};
use crate::Result;

/// Operator Σ_j b_j(z) θ^j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaOp {
    coeffs: Vec<Poly>,
}

impl ThetaOp {
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().map(Poly::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        ThetaOp { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, j: usize) -> Poly {
        self.coeffs.get(j).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Collect by powers of z: returns L_d(θ) polynomials with
    /// Σ_j b_j(z) θ^j = Σ_d z^d L_d(θ). Entry d of the result is L_d.
    pub fn by_z_power(&self) -> Vec<Poly> {
        let dmax = self.coeffs.iter().filter_map(Poly::degree).max().unwrap_or(0);
        let mut out = vec![Poly::zero(); dmax + 1];
        for (j, b) in self.coeffs.iter().enumerate() {
            for (d, c) in b.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out[d] += Poly::monomial(c.clone(), j);
                }
            }
        }
        out
    }

    /// The indicial polynomial at 0: Σ_j b_j(0) X^j after stripping the
    /// common z-power from the coefficients.
    pub fn indicial(&self) -> Poly {
        let strip = self.z_power_content();
        Poly::new(self.coeffs.iter().map(|b| b.coeff(strip)).collect())
    }

    fn z_power_content(&self) -> usize {
        self.coeffs
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.coeffs().iter().take_while(|c| c.is_zero()).count())
            .min()
            .unwrap_or(0)
    }

    /// Strip the common left z-power (same solution space).
    pub fn strip_z_power(&self) -> ThetaOp {
        let k = self.z_power_content();
        if k == 0 {
            return self.clone();
        }
        ThetaOp::new(
            self.coeffs
                .iter()
                .map(|p| {
                    if p.is_zero() {
                        Poly::zero()
                    } else {
                        Poly::new(p.coeffs()[k..].to_vec())
                    }
                })
                .collect(),
        )
    }

    /// Convert back to the D presentation via θ^k = Σ_t S(k,t) z^t D^t
    /// (Stirling numbers of the second kind).
    pub fn to_diffop(&self) -> DiffOp {
        let kmax = self.coeffs.len();
        let s2 = stirling2(kmax);
        let mut acc = DiffOp::zero();
        for (k, b) in self.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for (t, s) in s2[k].iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                let mono = DiffOp::term(s.clone(), t, t);
                acc = acc + DiffOp::from_poly(b.clone()).mul(&mono);
            }
        }
        acc
    }

    pub fn to_text(&self) -> String {
        let as_diff_style: Vec<Poly> = self.coeffs.clone();
        let tmp = DiffOp::new(as_diff_style);
        tmp.to_text().replace('D', "T")
    }
}

impl fmt::Display for ThetaOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Stirling numbers of the second kind S(k, t) for k, t ≤ n.
fn stirling2(n: usize) -> Vec<Vec<Rat>> {
    let mut s = vec![vec![Rat::zero(); n + 1]; n + 1];
    s[0][0] = Rat::one();
    for k in 1..=n {
        for t in 1..=k {
            let a = s[k - 1][t - 1].clone();
            let b = s[k - 1][t].clone();
            s[k][t] = a + b * rat_i(t as i64);
        }
    }
    s
}

/// Signed Stirling numbers of the first kind: [θ]_i = θ(θ-1)⋯(θ-i+1)
/// = Σ_k s(i,k) θ^k, returned as the polynomial [θ]_i for each i ≤ n.
fn falling_factorial_polys(n: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Poly::one());
    for i in 1..=n {
        let prev = out[i - 1].clone();
        // multiply by (X - (i-1))
        let lin = Poly::new(vec![rat_i(-((i - 1) as i64)), Rat::one()]);
        out.push(&prev * &lin);
    }
    out
}

impl DiffOp {
    /// θ-form: returns (T, m) with z^m · self = T as elements of ℚ[z]⟨θ⟩,
    /// m minimal.
    pub fn theta_form(&self) -> (ThetaOp, usize) {
        if self.is_zero() {
            return (ThetaOp::new(vec![]), 0);
        }
        let m = self
            .support()
            .iter()
            .map(|&(i, j)| i as i64 - j as i64)
            .max()
            .unwrap()
            .max(0) as usize;
        let mu = self.order().unwrap();
        let falls = falling_factorial_polys(mu);
        let mut out = vec![Poly::zero(); mu + 1];
        for (i, j) in self.support() {
            let a = self.entry(i, j);
            let zpow = m + j - i;
            for (k, s) in falls[i].coeffs().iter().enumerate() {
                if !s.is_zero() {
                    out[k] += Poly::monomial(a.clone() * s, zpow);
                }
            }
        }
        (ThetaOp::new(out), m)
    }

    /// Annihilator of f(z^u) for solutions f: in θ-form substitute z ↦ z^u
    /// and θ ↦ θ/u, then clear denominators.
    pub fn ramify(&self, u: usize) -> DiffOp {
        assert!(u >= 1);
        if u == 1 {
            return self.clone();
        }
        let (t, _) = self.theta_form();
        let ord = t.order().unwrap_or(0);
        let mut out = Vec::with_capacity(ord + 1);
        let ru = rat_i(u as i64);
        for (j, b) in t.coeffs().iter().enumerate() {
            // b_j(z^u) · u^(ord - j)
            let mut w = Rat::one();
            for _ in 0..(ord - j) {
                w *= &ru;
            }
            out.push(b.inflate(u).scale(&w));
        }
        ThetaOp::new(out).to_diffop().normalize()
    }

    /// Inverse of ramification: requires θ-form coefficients in ℚ[z^u];
    /// substitutes z^u ↦ z and θ ↦ uθ.
    pub fn descend(&self, u: usize) -> Result<DiffOp> {
        assert!(u >= 1);
        if u == 1 {
            return Ok(self.clone());
        }
        let (t, _) = self.theta_form();
        let mut out = Vec::new();
        let ru = rat_i(u as i64);
        let mut upow = Rat::one();
        for b in t.coeffs() {
            let d = b.deflate(u).ok_or(Error::DescentNotInvariant)?;
            out.push(d.scale(&upow));
            upow *= &ru;
        }
        Ok(ThetaOp::new(out).to_diffop().normalize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(terms: &[(i64, usize, usize)]) -> DiffOp {
        let mut acc = DiffOp::zero();
        for &(c, j, i) in terms {
            acc = acc + DiffOp::term(rat_i(c), j, i);
        }
        acc
    }

    #[test]
    fn theta_form_examples() {
        // zD -> (θ, m = 0)
        let (t, m) = DiffOp::theta().theta_form();
        assert_eq!(m, 0);
        assert_eq!(t.coeffs(), &[Poly::zero(), Poly::one()]);

        // D^2 - z -> (θ^2 - θ - z^3, m = 2)
        let airy = op(&[(1, 0, 2), (-1, 1, 0)]);
        let (t, m) = airy.theta_form();
        assert_eq!(m, 2);
        assert_eq!(
            t.coeffs(),
            &[Poly::from_i64(&[0, 0, 0, -1]), Poly::from_i64(&[-1]), Poly::one()]
        );

        // zD^2 + (1-3z)D + 2z -> (θ^2 - 3zθ + 2z^2, m = 1)
        let phi = op(&[(1, 1, 2), (1, 0, 1), (-3, 1, 1), (2, 1, 0)]);
        let (t, m) = phi.theta_form();
        assert_eq!(m, 1);
        assert_eq!(
            t.coeffs(),
            &[
                Poly::from_i64(&[0, 0, 2]),
                Poly::from_i64(&[0, -3]),
                Poly::one()
            ]
        );
    }

    #[test]
    fn theta_round_trip() {
        let phi = op(&[(1, 1, 2), (1, 0, 1), (-3, 1, 1), (2, 1, 0), (5, 0, 0)]);
        let (t, m) = phi.theta_form();
        let back = t.to_diffop();
        let zm = DiffOp::term(Rat::one(), m, 0);
        assert_eq!(back, zm.mul(&phi));
    }

    #[test]
    fn ramify_examples() {
        // θ - 1 annihilates z; ramified by 2 -> θ - 2
        let t1 = ThetaOp::new(vec![Poly::from_i64(&[-1]), Poly::one()]).to_diffop();
        let got = t1.ramify(2);
        let want = ThetaOp::new(vec![Poly::from_i64(&[-2]), Poly::one()])
            .to_diffop()
            .normalize();
        assert_eq!(got, want);

        // Airy: θ^2 - θ - z^3, u = 2 -> θ^2 - 2θ - 4 z^6
        let airy = op(&[(1, 0, 2), (-1, 1, 0)]);
        let got = airy.ramify(2);
        let want = ThetaOp::new(vec![
            Poly::from_i64(&[0, 0, 0, 0, 0, 0, -4]),
            Poly::from_i64(&[-2]),
            Poly::one(),
        ])
        .to_diffop()
        .normalize();
        assert_eq!(got, want);

        // u = 1 is the identity
        assert_eq!(airy.ramify(1), airy);
    }

    #[test]
    fn descend_examples() {
        // θ^2 - 2θ - 4z^6 descends by 3 to 9θ^2 - 6θ - 4z^2
        let t = ThetaOp::new(vec![
            Poly::from_i64(&[0, 0, 0, 0, 0, 0, -4]),
            Poly::from_i64(&[-2]),
            Poly::one(),
        ])
        .to_diffop();
        let got = t.descend(3).unwrap();
        let want = ThetaOp::new(vec![
            Poly::from_i64(&[0, 0, -4]),
            Poly::from_i64(&[-6]),
            Poly::from_i64(&[9]),
        ])
        .to_diffop()
        .normalize();
        assert_eq!(got, want);

        // θ - 2 with u = 2 -> 2θ - 2, normalized θ - 1
        let t = ThetaOp::new(vec![Poly::from_i64(&[-2]), Poly::one()]).to_diffop();
        let got = t.descend(2).unwrap();
        let want = ThetaOp::new(vec![Poly::from_i64(&[-1]), Poly::one()])
            .to_diffop()
            .normalize();
        assert_eq!(got, want);

        // θ - z with u = 2 fails the invariance requirement
        let t = ThetaOp::new(vec![Poly::from_i64(&[0, -1]), Poly::one()]).to_diffop();
        assert!(t.descend(2).is_err());
    }

    #[test]
    fn descend_after_ramify_is_identity() {
        let phi = op(&[(1, 1, 2), (1, 0, 1), (-3, 1, 1), (2, 1, 0)]).normalize();
        for u in 1..=4usize {
            let r = phi.ramify(u);
            assert_eq!(r.descend(u).unwrap(), phi);
        }
    }
}
