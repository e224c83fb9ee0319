//! Opaque Γ-value coefficients.
//!
//! Transformed series carry coefficients in the commutative ring generated
//! over ℚ by the symbols Γ(a)^±1 and the normalized derivatives
//! Γ^(k)(a)/Γ(a) for rational a. Arguments are reduced to a canonical
//! representative ā ∈ (0, 1] of a mod ℤ using Γ(x+1) = x·Γ(x), so equal
//! values get equal representations; Γ at nonpositive integers is rejected.


use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::Error;
use crate::kernel::{rat_i, Poly, Rat, RatFun};
use crate::Result;

/// A single factor: either Γ(arg) to an integer power (deriv = 0), or
/// (Γ^(deriv)(arg)/Γ(arg)) to a positive power (deriv ≥ 1). `arg` is always
/// the canonical representative in (0, 1].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SeedMonomial {
    factors: BTreeMap<(Rat, u32), i64>,
}

impl SeedMonomial {
    pub fn one() -> Self {
        SeedMonomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    fn mul(&self, rhs: &SeedMonomial) -> SeedMonomial {
        let mut f = self.factors.clone();
        for (k, e) in &rhs.factors {
            let slot = f.entry(k.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                f.remove(k);
            }
        }
        SeedMonomial { factors: f }
    }

    fn inv(&self) -> Option<SeedMonomial> {
        // only pure Γ-powers invert inside the ring
        if self.factors.keys().any(|(_, d)| *d > 0) {
            return None;
        }
        Some(SeedMonomial {
            factors: self.factors.iter().map(|(k, e)| (k.clone(), -e)).collect(),
        })
    }

    pub fn factors(&self) -> impl Iterator<Item = (&(Rat, u32), &i64)> {
        self.factors.iter()
    }
}

impl fmt::Display for SeedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for ((a, d), e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *d == 0 {
                write!(f, "G({})", a)?;
            } else {
                // normalized derivative Γ^(d)(a)/Γ(a)
                write!(f, "G{}({})", d, a)?;
            }
            if *e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

/// ℚ-linear combination of seed monomials. The monomial 1 carries the
/// rational part; no zero-valued entries are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SeedCombo {
    terms: BTreeMap<SeedMonomial, Rat>,
}

impl SeedCombo {
    pub fn zero() -> Self {
        SeedCombo::default()
    }

    pub fn one() -> Self {
        SeedCombo::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut t = BTreeMap::new();
        if !r.is_zero() {
            t.insert(SeedMonomial::one(), r);
        }
        SeedCombo { terms: t }
    }

    pub fn from_monomial(m: SeedMonomial, r: Rat) -> Self {
        let mut t = BTreeMap::new();
        if !r.is_zero() {
            t.insert(m, r);
        }
        SeedCombo { terms: t }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(SeedMonomial::is_one)
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.is_rational() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SeedMonomial, &Rat)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rat) -> SeedCombo {
        if c.is_zero() {
            return SeedCombo::zero();
        }
        SeedCombo {
            terms: self.terms.iter().map(|(m, r)| (m.clone(), r * c)).collect(),
        }
    }

    /// Multiplicative inverse when this is a single monomial whose seed part
    /// is a pure Γ-power.
    pub fn inv(&self) -> Result<SeedCombo> {
        if self.terms.len() != 1 {
            return Err(Error::NotInTransformImage(
                "cannot invert a non-monomial seed coefficient".into(),
            ));
        }
        let (m, r) = self.terms.iter().next().unwrap();
        let mi = m.inv().ok_or_else(|| {
            Error::NotInTransformImage("cannot invert a derivative seed".into())
        })?;
        Ok(SeedCombo::from_monomial(mi, Rat::one() / r.clone()))
    }
}

impl fmt::Display for SeedCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, r) in &self.terms {
            let neg = r.is_negative();
            let mag = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", mag, m)?;
            }
        }
        Ok(())
    }
}

impl Add for SeedCombo {
    type Output = SeedCombo;
    fn add(self, rhs: SeedCombo) -> SeedCombo {
        let mut t = self.terms;
        for (m, r) in rhs.terms {
            let slot = t.entry(m.clone()).or_insert_with(Rat::zero);
            *slot += r;
            if slot.is_zero() {
                t.remove(&m);
            }
        }
        SeedCombo { terms: t }
    }
}

impl AddAssign for SeedCombo {
    fn add_assign(&mut self, rhs: SeedCombo) {
        *self = self.clone() + rhs;
    }
}

impl Sub for SeedCombo {
    type Output = SeedCombo;
    fn sub(self, rhs: SeedCombo) -> SeedCombo {
        self + (-rhs)
    }
}

impl Neg for SeedCombo {
    type Output = SeedCombo;
    fn neg(self) -> SeedCombo {
        SeedCombo {
            terms: self.terms.into_iter().map(|(m, r)| (m, -r)).collect(),
        }
    }
}

impl Mul for &SeedCombo {
    type Output = SeedCombo;
    fn mul(self, rhs: &SeedCombo) -> SeedCombo {
        let mut out = SeedCombo::zero();
        for (m1, r1) in &self.terms {
            for (m2, r2) in &rhs.terms {
                out += SeedCombo::from_monomial(m1.mul(m2), r1 * r2);
            }
        }
        out
    }
}

impl Mul for SeedCombo {
    type Output = SeedCombo;
    fn mul(self, rhs: SeedCombo) -> SeedCombo {
        &self * &rhs
    }
}

/// Canonical representative of a mod ℤ inside (0, 1], and the integer shift
/// m with a = rep + m.
fn canonical_arg(a: &Rat) -> (Rat, i64) {
    let fl = a.floor();
    let mut rep = a - &fl;
    let mut m = fl.to_integer().to_i64().expect("argument shift fits i64");
    if rep.is_zero() {
        rep = Rat::one();
        m -= 1;
    }
    (rep, m)
}

/// Γ(a) as a seed combo, reduced to the canonical argument. Errors at
/// nonpositive integers.
pub fn gamma(a: &Rat) -> Result<SeedCombo> {
    gamma_power(a, 1)
}

/// Γ(a)^e for integer e, reduced to the canonical argument.
pub fn gamma_power(a: &Rat, e: i64) -> Result<SeedCombo> {
    let (rep, m) = canonical_arg(a);
    // Γ(rep + m) = Γ(rep) · (rep)_m  (m ≥ 0), or Γ(rep)/(rep+m)_(−m) (m < 0)
    let shift = shift_factor(&rep, m)?;
    let rational = if e >= 0 {
        pow_rat(&shift, e as u32)
    } else {
        Rat::one() / pow_rat(&shift, (-e) as u32)
    };
    if rep == Rat::one() {
        // class of integers: Γ(1) = 1, purely rational
        return Ok(SeedCombo::from_rat(rational));
    }
    let mut mono = SeedMonomial::one();
    mono.factors.insert((rep, 0), e);
    Ok(SeedCombo::from_monomial(mono, rational))
}

fn pow_rat(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// The rational factor linking Γ(rep + m) to Γ(rep).
fn shift_factor(rep: &Rat, m: i64) -> Result<Rat> {
    let mut f = Rat::one();
    if m >= 0 {
        for k in 0..m {
            f *= rep + rat_i(k);
        }
    } else {
        for k in 1..=(-m) {
            let t = rep - rat_i(k);
            if t.is_zero() {
                return Err(Error::GammaPole(format!("{}", rep - rat_i(k))));
            }
            f /= t;
        }
    }
    Ok(f)
}

/// Γ^(d)(a) as a seed combo over the canonical symbols. Uses the product
/// rule on Γ(x + m) = R(x)·Γ(x) with the rational function R from the
/// distribution relations.
pub fn gamma_deriv(a: &Rat, d: u32) -> Result<SeedCombo> {
    if d == 0 {
        return gamma(a);
    }
    let (rep, m) = canonical_arg(a);
    // R(x) as a rational function of x with Γ(x+m) = R(x) Γ(x)
    let r = shift_ratfun(m)?;
    // Γ^(d)(a) = Σ_i C(d,i) R^(i)(rep) Γ^(d-i)(rep)
    let mut acc = SeedCombo::zero();
    let mut binom = Rat::one();
    let mut rd = r;
    for i in 0..=d {
        if i > 0 {
            binom = binom * rat_i((d - i + 1) as i64) / rat_i(i as i64);
            rd = rd.derivative();
        }
        let rv = rd
            .eval(&rep)
            .ok_or_else(|| Error::GammaPole(format!("{}", rep)))?;
        if rv.is_zero() {
            continue;
        }
        acc += gamma_deriv_canonical(&rep, d - i)?.scale(&(rv * &binom));
    }
    Ok(acc)
}

/// Γ^(e)(rep) at a canonical rep, as Γ(rep)·(Γ^(e)/Γ)(rep).
fn gamma_deriv_canonical(rep: &Rat, e: u32) -> Result<SeedCombo> {
    if e == 0 {
        return gamma(rep);
    }
    let is_one = rep == &Rat::one();
    let mut mono = SeedMonomial::one();
    if !is_one {
        mono.factors.insert((rep.clone(), 0), 1);
    }
    mono.factors.insert((rep.clone(), e), 1);
    Ok(SeedCombo::from_monomial(mono, Rat::one()))
}

/// R(x) with Γ(x + m) = R(x) Γ(x): a product of linear factors as a
/// rational function in x.
fn shift_ratfun(m: i64) -> Result<RatFun> {
    let mut num = Poly::one();
    let mut den = Poly::one();
    if m >= 0 {
        for k in 0..m {
            num = &num * &Poly::new(vec![rat_i(k), Rat::one()]);
        }
    } else {
        for k in 1..=(-m) {
            den = &den * &Poly::new(vec![rat_i(-k), Rat::one()]);
        }
    }
    Ok(RatFun::new(num, den))
}
