//! Elements of the Weyl algebra ℚ[z]⟨D⟩, stored as polynomial coefficients
//! of powers of D with the commutation rule `D·z = z·D + 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::kernel::{rat_i, Poly, Rat};

/// Differential operator Σ_i Q_i(z) D^i. Normal form keeps the coefficient
/// polynomials to the left of the D powers; `coeffs[i]` is Q_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOp {
    coeffs: Vec<Poly>,
}

impl DiffOp {
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().map(Poly::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    pub fn zero() -> Self {
        DiffOp { coeffs: vec![] }
    }

    pub fn one() -> Self {
        DiffOp::from_poly(Poly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplication operator by a polynomial.
    pub fn from_poly(p: Poly) -> Self {
        DiffOp::new(vec![p])
    }

    /// c·z^j·D^i.
    pub fn term(c: Rat, j: usize, i: usize) -> Self {
        let mut v = vec![Poly::zero(); i + 1];
        v[i] = Poly::monomial(c, j);
        DiffOp::new(v)
    }

    /// D itself.
    pub fn d() -> Self {
        DiffOp::term(Rat::one(), 0, 1)
    }

    /// z·D.
    pub fn theta() -> Self {
        DiffOp::term(Rat::one(), 1, 1)
    }

    /// Order in D; None for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree in z over all coefficients; None for the zero operator.
    pub fn z_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(Poly::degree).max()
    }

    /// Coefficient polynomial of D^i.
    pub fn coeff(&self, i: usize) -> Poly {
        self.coeffs.get(i).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Leading coefficient Q_μ.
    pub fn leading(&self) -> Poly {
        self.coeffs.last().cloned().unwrap_or_else(Poly::zero)
    }

    /// Grid entry a_{i,j} (coefficient of z^j D^i).
    pub fn entry(&self, i: usize, j: usize) -> Rat {
        self.coeff(i).coeff(j)
    }

    /// Support of the coefficient grid as (i, j) pairs.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, p) in self.coeffs.iter().enumerate() {
            for (j, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Content-free form with a deterministic sign: the coefficient of the
    /// lexicographically highest nonzero (i, j) is positive.
    pub fn normalize(&self) -> DiffOp {
        if self.is_zero() {
            return DiffOp::zero();
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
        let lead = self.leading().leading();
        if (lead * &scale).is_negative() {
            scale = -scale;
        }
        DiffOp::new(self.coeffs.iter().map(|p| p.scale(&scale)).collect())
    }

    /// Largest k with z^k dividing every coefficient.
    pub fn z_power_content(&self) -> usize {
        self.coeffs
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.coeffs().iter().take_while(|c| c.is_zero()).count())
            .min()
            .unwrap_or(0)
    }

    /// Remove the common left factor z^k (same solution space).
    pub fn strip_z_power(&self) -> DiffOp {
        let k = self.z_power_content();
        if k == 0 {
            return self.clone();
        }
        DiffOp::new(
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

    pub fn scale(&self, c: &Rat) -> DiffOp {
        DiffOp::new(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// Product in the Weyl algebra.
    pub fn mul(&self, rhs: &DiffOp) -> DiffOp {
        if self.is_zero() || rhs.is_zero() {
            return DiffOp::zero();
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out = vec![Poly::zero(); n];
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (k, q) in rhs.coeffs.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                // D^i ∘ q(z) = Σ_t C(i,t) q^(t)(z) D^(i-t)
                let mut binom = Rat::one();
                let mut qd = q.clone();
                for t in 0..=i {
                    if t > 0 {
                        binom = binom * rat_i((i - t + 1) as i64) / rat_i(t as i64);
                        qd = qd.derivative();
                        if qd.is_zero() {
                            break;
                        }
                    }
                    out[i + k - t] += &(p * &qd) * &Poly::constant(binom.clone());
                }
            }
        }
        DiffOp::new(out)
    }

    pub fn pow(&self, e: usize) -> DiffOp {
        let mut acc = DiffOp::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal adjoint Σ_j (-1)^j D^j ∘ Q_j(z), renormalized.
    pub fn adjoint(&self) -> DiffOp {
        let mut acc = DiffOp::zero();
        for (j, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let dj = DiffOp::term(rat_i(if j % 2 == 0 { 1 } else { -1 }), 0, j);
            acc = acc + dj.mul(&DiffOp::from_poly(q.clone()));
        }
        acc.normalize()
    }

    /// Fourier-Laplace transform: z ↦ -D, D ↦ z, expanded to normal form.
    /// With `symmetrized`, additionally z ↦ -z, D ↦ -D.
    pub fn fourier_laplace(&self, symmetrized: bool) -> DiffOp {
        let mut out: BTreeMap<usize, Poly> = BTreeMap::new();
        for (i, p) in self.coeffs.iter().enumerate() {
            for (j, a) in p.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                // a z^j D^i ↦ (-1)^j a D^j z^i = (-1)^j a Σ_t C(j,t) (i)_t z^(i-t) D^(j-t)
                let mut c = if j % 2 == 0 { a.clone() } else { -a.clone() };
                if symmetrized && (i + j) % 2 == 1 {
                    c = -c;
                }
                let mut w = Rat::one();
                for t in 0..=j.min(i) {
                    if t > 0 {
                        // C(j,t)/C(j,t-1) = (j-t+1)/t and falling factor (i-t+1)
                        w = w * rat_i((j - t + 1) as i64) / rat_i(t as i64)
                            * rat_i((i - t + 1) as i64);
                    }
                    let e = out.entry(j - t).or_insert_with(Poly::zero);
                    *e += Poly::monomial(c.clone() * &w, i - t);
                }
            }
        }
        let ord = out.keys().max().copied().unwrap_or(0);
        let mut v = vec![Poly::zero(); ord + 1];
        for (k, p) in out {
            v[k] = p;
        }
        DiffOp::new(v)
    }

    /// Substitute D ↦ D - ζ; solutions transform as y ↦ e^(ζz)·y.
    pub fn twist_exp(&self, zeta: &Rat) -> DiffOp {
        let mut acc = DiffOp::zero();
        let base = DiffOp::new(vec![Poly::constant(-zeta.clone()), Poly::one()]);
        for (i, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            acc = acc + DiffOp::from_poly(q.clone()).mul(&base.pow(i));
        }
        acc
    }

    /// Operator annihilating g(z) = h(1/z) for every solution h: substitute
    /// z ↦ 1/z, D ↦ -z²D and clear powers of z.
    pub fn invert(&self) -> DiffOp {
        // Laurent grid keyed by (order, z-exponent)
        let mut grid: BTreeMap<(usize, i64), Rat> = BTreeMap::new();
        // powers of (-z^2 D)
        let m = DiffOp::term(rat_i(-1), 2, 1);
        let mut mpow = DiffOp::one();
        for (i, p) in self.coeffs.iter().enumerate() {
            if i > 0 {
                mpow = mpow.mul(&m);
            }
            if p.is_zero() {
                continue;
            }
            for (j, a) in p.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (ii, jj) in mpow.support() {
                    let c = a * &mpow.entry(ii, jj);
                    let key = (ii, jj as i64 - j as i64);
                    let e = grid.entry(key).or_insert_with(Rat::zero);
                    *e += c;
                }
            }
        }
        grid.retain(|_, v| !v.is_zero());
        let min_j = grid.keys().map(|&(_, j)| j).min().unwrap_or(0);
        let shift = (-min_j).max(0);
        let ord = grid.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let mut v = vec![Poly::zero(); ord + 1];
        for ((i, j), c) in grid {
            v[i] += Poly::monomial(c, (j + shift) as usize);
        }
        DiffOp::new(v)
    }

    /// Substitute z ↦ z + a in every coefficient (Taylor shift).
    pub fn translate(&self, a: &Rat) -> DiffOp {
        DiffOp::new(self.coeffs.iter().map(|p| p.shift(a)).collect())
    }

    /// Format with explicit products and powers, parseable by the grammar.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<(bool, String)> = Vec::new(); // (negative, body)
        for (i, p) in self.coeffs.iter().enumerate().rev() {
            if p.is_zero() {
                continue;
            }
            let dpow = match i {
                0 => String::new(),
                1 => "D".to_string(),
                _ => format!("D^{}", i),
            };
            let nterms = p.coeffs().iter().filter(|c| !c.is_zero()).count();
            if i == 0 {
                let s = p.to_string_var("z");
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
                    factors.push("z".to_string());
                } else if j > 1 {
                    factors.push(format!("z^{}", j));
                }
                factors.push(dpow);
                parts.push((c.is_negative(), factors.join("*")));
            } else {
                parts.push((false, format!("({})*{}", p.to_string_var("z"), dpow)));
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

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Add for DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: DiffOp) -> DiffOp {
        let mut v = self.coeffs;
        if v.len() < rhs.coeffs.len() {
            v.resize(rhs.coeffs.len(), Poly::zero());
        }
        for (a, b) in v.iter_mut().zip(rhs.coeffs.into_iter()) {
            *a += b;
        }
        DiffOp::new(v)
    }
}

impl Sub for DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: DiffOp) -> DiffOp {
        self + (-rhs)
    }
}

impl Neg for DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp::new(self.coeffs.into_iter().map(|p| -p).collect())
    }
}

impl Mul for &DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        DiffOp::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    fn op(terms: &[(i64, usize, usize)]) -> DiffOp {
        let mut acc = DiffOp::zero();
        for &(c, j, i) in terms {
            acc = acc + DiffOp::term(rat_i(c), j, i);
        }
        acc
    }

    #[test]
    fn defining_relation() {
        // D * z = z D + 1
        let got = DiffOp::d().mul(&DiffOp::from_poly(Poly::x()));
        let want = op(&[(1, 1, 1), (1, 0, 0)]);
        assert_eq!(got, want);
        // D*z - z*D = 1
        let comm = got - DiffOp::from_poly(Poly::x()).mul(&DiffOp::d());
        assert_eq!(comm, DiffOp::one());
    }

    #[test]
    fn product_from_remark_factorization() {
        // (zD - 2z + 1) * ((z-1)D - z) = z(z-1)D^2 + (-3z^2+4z-1)D + 2z^2 - 2z
        let a = op(&[(1, 1, 1), (-2, 1, 0), (1, 0, 0)]);
        let b = op(&[(1, 1, 1), (-1, 0, 1), (-1, 1, 0)]);
        let got = a.mul(&b);
        let want = op(&[
            (1, 2, 2),
            (-1, 1, 2),
            (-3, 2, 1),
            (4, 1, 1),
            (-1, 0, 1),
            (2, 2, 0),
            (-2, 1, 0),
        ]);
        assert_eq!(got, want);
        // identity
        let a2 = a.mul(&DiffOp::one());
        assert_eq!(a2, a);
    }

    #[test]
    fn adjoint_examples() {
        // adjoint(D) = -D, normalized to D
        assert_eq!(DiffOp::d().adjoint(), DiffOp::d());
        // adjoint(z) = z
        let z = DiffOp::from_poly(Poly::x());
        assert_eq!(z.adjoint(), z);
        // adjoint(zD) = -Dz = -(zD + 1), normalized to zD + 1
        let got = DiffOp::theta().adjoint();
        assert_eq!(got, op(&[(1, 1, 1), (1, 0, 0)]));
    }

    #[test]
    fn adjoint_involution_and_antihom() {
        let a = op(&[(1, 1, 2), (2, 0, 1), (-3, 2, 0)]);
        let b = op(&[(1, 0, 1), (-1, 1, 0)]);
        assert_eq!(a.adjoint().adjoint(), a.normalize());
        let lhs = a.mul(&b).adjoint();
        let rhs = b.adjoint().mul(&a.adjoint()).normalize();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn fourier_laplace_airy() {
        // D^2 - z ↦ D + z^2 (unsymmetrized)
        let airy = op(&[(1, 0, 2), (-1, 1, 0)]);
        let got = airy.fourier_laplace(false);
        assert_eq!(got, op(&[(1, 0, 1), (1, 2, 0)]));
    }

    #[test]
    fn fourier_laplace_remark_psi() {
        // symmetrized FL of -(z-1)(z-2)D + 3 - z equals z D^2 + (1-3z) D + 2z
        let psi = op(&[(-1, 2, 1), (3, 1, 1), (-2, 0, 1), (-1, 1, 0), (3, 0, 0)]);
        let got = psi.fourier_laplace(true).normalize();
        let phi = op(&[(1, 1, 2), (1, 0, 1), (-3, 1, 1), (2, 1, 0)]);
        assert_eq!(got, phi.normalize());
    }

    #[test]
    fn fourier_laplace_euler_g_operator() {
        // symmetrized FL of z D^2 + (1-z) D - 1 equals z(1+z)D + z
        let phi = op(&[(1, 1, 2), (1, 0, 1), (-1, 1, 1), (-1, 0, 0)]);
        let got = phi.fourier_laplace(true).normalize();
        let want = op(&[(1, 1, 1), (1, 2, 1), (1, 1, 0)]);
        assert_eq!(got, want.normalize());
    }

    #[test]
    fn fl_involution() {
        // unsymmetrized applied twice then global symmetry = identity
        let a = op(&[(1, 2, 2), (5, 1, 1), (-2, 0, 1), (7, 3, 0)]);
        let twice = a.fourier_laplace(false).fourier_laplace(false);
        // symmetry z ↦ -z, D ↦ -D
        let sym = DiffOp::new(
            twice
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    Poly::new(
                        p.coeffs()
                            .iter()
                            .enumerate()
                            .map(|(j, c)| {
                                if (i + j) % 2 == 1 {
                                    -c.clone()
                                } else {
                                    c.clone()
                                }
                            })
                            .collect(),
                    )
                })
                .collect(),
        );
        assert_eq!(sym, a);
    }

    #[test]
    fn twist_examples() {
        // twist_exp(D, 1) = D - 1 (annihilates e^z)
        assert_eq!(
            DiffOp::d().twist_exp(&rat_i(1)),
            op(&[(1, 0, 1), (-1, 0, 0)])
        );
        // twist_exp(D^2 - 2D + 1, -1) = D^2
        let a = op(&[(1, 0, 2), (-2, 0, 1), (1, 0, 0)]);
        assert_eq!(a.twist_exp(&rat_i(-1)), op(&[(1, 0, 2)]));
        // removing the exponential from D - 1 uses ζ = -1
        let b = op(&[(1, 0, 1), (-1, 0, 0)]);
        assert_eq!(b.twist_exp(&rat_i(-1)), DiffOp::d());
    }

    #[test]
    fn invert_examples() {
        // invert(zD - 1) normalizes to zD + 1 (annihilates 1/z)
        let got = DiffOp::new(vec![Poly::from_i64(&[-1]), Poly::x()])
            .invert()
            .normalize();
        assert_eq!(got, op(&[(1, 1, 1), (1, 0, 0)]));
        // invert(D) is stored as z^2 D
        assert_eq!(DiffOp::d().invert().normalize(), op(&[(1, 2, 1)]));
    }

    #[test]
    fn normalize_content_sign() {
        let a = op(&[(-2, 1, 1), (-4, 0, 0)]);
        let n = a.normalize();
        assert_eq!(n, op(&[(1, 1, 1), (2, 0, 0)]));
        let b = DiffOp::term(rat(2, 3), 0, 1);
        assert_eq!(b.normalize(), DiffOp::d());
    }

    #[test]
    fn display_parses_back() {
        let a = op(&[(1, 1, 2), (1, 0, 1), (-3, 1, 1), (2, 1, 0)]);
        let s = a.to_text();
        assert_eq!(s, "z*D^2 + (-3*z + 1)*D + 2*z");
    }
}
