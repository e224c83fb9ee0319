//! Truncated Puiseux-log series: finite sums of z^(α+n)·log^k z over one or
//! more exponent branches, with SeedCombo coefficients and explicit
//! truncation bookkeeping.
//!
//! Every series carries its valid order: an absolute exponent bound below
//! (at 0) or above (at ∞) which the stored terms are guaranteed exact.
//! Operator actions update the bound pessimistically.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use super::diffop::DiffOp;
use super::seed::SeedCombo;
use crate::kernel::{rat_i, Rat};

/// Expansion direction: ascending powers at 0, or descending powers (a
/// series in 1/z) at ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    AtZero,
    AtInfinity,
}

impl Direction {
    fn step(&self) -> i64 {
        match self {
            Direction::AtZero => 1,
            Direction::AtInfinity => -1,
        }
    }
}

/// One exponent branch: terms c[n][k] · z^(exponent + dir·n) · log^k z.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub exponent: Rat,
    /// coeffs[n][k], outer index the integer offset, inner the log power.
    pub coeffs: Vec<Vec<SeedCombo>>,
}

impl Branch {
    fn trim(&mut self) {
        for row in &mut self.coeffs {
            while row.last().map(SeedCombo::is_zero).unwrap_or(false) {
                row.pop();
            }
        }
        while self.coeffs.last().map(Vec::is_empty).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|r| r.iter().all(SeedCombo::is_zero))
    }

    pub fn max_log(&self) -> usize {
        self.coeffs
            .iter()
            .map(|r| r.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
    }
}

/// Finite Puiseux-log sum with truncation bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct PuiseuxLogSeries {
    dir: Direction,
    branches: Vec<Branch>,
    /// Exponent bound through which the representation is exact: all
    /// monomials with exponent ≤ valid (at 0) resp. ≥ valid (at ∞) are
    /// exactly represented.
    valid: Rat,
}

impl PuiseuxLogSeries {
    pub fn zero(dir: Direction, valid: Rat) -> Self {
        PuiseuxLogSeries { dir, branches: vec![], valid }
    }

    /// Series from rational power-series coefficients a_n z^n (at 0) or
    /// a_n z^(-n) (at ∞), exact through the window.
    pub fn from_rational_coeffs(dir: Direction, base: Rat, coeffs: &[Rat]) -> Self {
        let branch = Branch {
            exponent: base.clone(),
            coeffs: coeffs
                .iter()
                .map(|c| vec![SeedCombo::from_rat(c.clone())])
                .collect(),
        };
        let n = coeffs.len() as i64 - 1;
        let valid = &base + rat_i(n.max(0) * dir.step());
        let mut s = PuiseuxLogSeries { dir, branches: vec![branch], valid };
        s.normalize();
        s
    }

    /// Single monomial c·z^e·log^k z, valid through the given bound.
    pub fn monomial(dir: Direction, e: Rat, k: usize, c: SeedCombo, valid: Rat) -> Self {
        let mut row = vec![SeedCombo::zero(); k + 1];
        row[k] = c;
        let mut s = PuiseuxLogSeries {
            dir,
            branches: vec![Branch { exponent: e, coeffs: vec![row] }],
            valid,
        };
        s.normalize();
        s
    }

    pub fn direction(&self) -> Direction {
        self.dir
    }

    pub fn valid_through(&self) -> &Rat {
        &self.valid
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn is_zero(&self) -> bool {
        self.branches.iter().all(Branch::is_zero)
    }

    /// Coefficient of z^e·log^k z.
    pub fn coeff(&self, e: &Rat, k: usize) -> SeedCombo {
        for b in &self.branches {
            let diff = e - &b.exponent;
            if diff.denom() == &BigInt::one() {
                let n = diff.numer().to_i64().unwrap() * self.dir.step();
                if n >= 0 {
                    if let Some(row) = b.coeffs.get(n as usize) {
                        return row.get(k).cloned().unwrap_or_else(SeedCombo::zero);
                    }
                }
            }
        }
        SeedCombo::zero()
    }

    /// Merge branches in the same exponent class, drop terms beyond the
    /// valid bound, drop empty branches, sort by exponent.
    fn normalize(&mut self) {
        let step = self.dir.step();
        let mut merged: Vec<Branch> = Vec::new();
        for b in std::mem::take(&mut self.branches) {
            if let Some(t) = merged.iter_mut().find(|t| {
                let d = &b.exponent - &t.exponent;
                d.denom() == &BigInt::one()
            }) {
                // align: base = the earlier exponent in reading order
                let d = (&b.exponent - &t.exponent).numer().to_i64().unwrap() * step;
                if d >= 0 {
                    let off = d as usize;
                    for (n, row) in b.coeffs.into_iter().enumerate() {
                        while t.coeffs.len() <= n + off {
                            t.coeffs.push(vec![]);
                        }
                        add_row(&mut t.coeffs[n + off], row);
                    }
                } else {
                    let off = (-d) as usize;
                    let mut coeffs = b.coeffs;
                    for (n, row) in std::mem::take(&mut t.coeffs).into_iter().enumerate() {
                        while coeffs.len() <= n + off {
                            coeffs.push(vec![]);
                        }
                        add_row(&mut coeffs[n + off], row);
                    }
                    t.exponent = b.exponent;
                    t.coeffs = coeffs;
                }
            } else {
                merged.push(b);
            }
        }
        // truncate beyond the valid bound and trim
        for b in &mut merged {
            let keep = match self.dir {
                Direction::AtZero => {
                    let room = &self.valid - &b.exponent;
                    if room.is_negative() {
                        0
                    } else {
                        room.floor().to_integer().to_i64().unwrap_or(0).max(-1) as usize + 1
                    }
                }
                Direction::AtInfinity => {
                    let room = &b.exponent - &self.valid;
                    if room.is_negative() {
                        0
                    } else {
                        room.floor().to_integer().to_i64().unwrap_or(0).max(-1) as usize + 1
                    }
                }
            };
            b.coeffs.truncate(keep);
            b.trim();
        }
        merged.retain(|b| !b.coeffs.is_empty());
        merged.sort_by(|a, b| a.exponent.cmp(&b.exponent));
        self.branches = merged;
    }

    fn combine_valid(&self, other: &Rat) -> Rat {
        match self.dir {
            Direction::AtZero => self.valid.clone().min(other.clone()),
            Direction::AtInfinity => self.valid.clone().max(other.clone()),
        }
    }

    pub fn add(&self, other: &PuiseuxLogSeries) -> PuiseuxLogSeries {
        assert!(self.dir == other.dir, "direction mismatch");
        let mut s = PuiseuxLogSeries {
            dir: self.dir,
            branches: self
                .branches
                .iter()
                .chain(other.branches.iter())
                .cloned()
                .collect(),
            valid: self.combine_valid(&other.valid),
        };
        s.normalize();
        s
    }

    pub fn scale(&self, c: &SeedCombo) -> PuiseuxLogSeries {
        let mut s = self.clone();
        for b in &mut s.branches {
            for row in &mut b.coeffs {
                for e in row.iter_mut() {
                    *e = &*e * c;
                }
            }
            b.trim();
        }
        s.normalize();
        s
    }

    pub fn neg(&self) -> PuiseuxLogSeries {
        self.scale(&SeedCombo::from_rat(rat_i(-1)))
    }

    /// Multiply by z^j (j may be negative).
    pub fn mul_z_pow(&self, j: i64) -> PuiseuxLogSeries {
        let mut s = self.clone();
        for b in &mut s.branches {
            b.exponent += rat_i(j);
        }
        s.valid += rat_i(j);
        s
    }

    /// Multiply by z^e for rational e (exponent shift only).
    pub fn mul_z_rat(&self, e: &Rat) -> PuiseuxLogSeries {
        let mut s = self.clone();
        for b in &mut s.branches {
            b.exponent += e.clone();
        }
        s.valid += e.clone();
        s
    }

    /// d/dz: z^β log^k ↦ β z^(β-1) log^k + k z^(β-1) log^(k-1).
    pub fn derivative(&self) -> PuiseuxLogSeries {
        let step = self.dir.step();
        let mut out = Vec::new();
        for b in &self.branches {
            let mut coeffs = Vec::with_capacity(b.coeffs.len());
            for (n, row) in b.coeffs.iter().enumerate() {
                let beta = &b.exponent + rat_i(n as i64 * step);
                let mut new_row = vec![SeedCombo::zero(); row.len()];
                for (k, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    new_row[k] += c.scale(&beta);
                    if k > 0 {
                        new_row[k - 1] += c.scale(&rat_i(k as i64));
                    }
                }
                coeffs.push(new_row);
            }
            out.push(Branch { exponent: &b.exponent - Rat::one(), coeffs });
        }
        let mut s = PuiseuxLogSeries {
            dir: self.dir,
            branches: out,
            valid: &self.valid - Rat::one(),
        };
        s.normalize();
        s
    }

    /// Apply a differential operator termwise, with pessimistic truncation.
    pub fn apply(&self, op: &DiffOp) -> PuiseuxLogSeries {
        if op.is_zero() {
            return PuiseuxLogSeries::zero(self.dir, self.valid.clone());
        }
        // precompute derivatives up to the order
        let mu = op.order().unwrap();
        let mut ders = Vec::with_capacity(mu + 1);
        ders.push(self.clone());
        for i in 1..=mu {
            let d = ders[i - 1].derivative();
            ders.push(d);
        }
        let mut acc: Option<PuiseuxLogSeries> = None;
        for (i, j) in op.support() {
            let c = op.entry(i, j);
            let piece = ders[i].mul_z_pow(j as i64).scale(&SeedCombo::from_rat(c));
            acc = Some(match acc {
                None => piece,
                Some(a) => a.add(&piece),
            });
        }
        acc.unwrap_or_else(|| PuiseuxLogSeries::zero(self.dir, self.valid.clone()))
    }

    /// True when every stored coefficient within the valid window is zero.
    pub fn vanishes(&self) -> bool {
        self.is_zero()
    }

    /// True when the series vanishes through the given exponent bound
    /// (which must be within the valid window).
    pub fn vanishes_through(&self, bound: &Rat) -> bool {
        let ok_window = match self.dir {
            Direction::AtZero => bound <= &self.valid,
            Direction::AtInfinity => bound >= &self.valid,
        };
        if !ok_window {
            return false;
        }
        for b in &self.branches {
            for (n, row) in b.coeffs.iter().enumerate() {
                let e = &b.exponent + rat_i(n as i64 * self.dir.step());
                let inside = match self.dir {
                    Direction::AtZero => &e <= bound,
                    Direction::AtInfinity => &e >= bound,
                };
                if inside && row.iter().any(|c| !c.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    /// Multiply by a plain rational power series Σ f_n z^(n·dir) (same
    /// direction, f indexed from 0 and known through its window).
    pub fn mul_rational_series(&self, f: &[Rat]) -> PuiseuxLogSeries {
        let mut acc = PuiseuxLogSeries::zero(self.dir, self.valid.clone());
        for (n, c) in f.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let piece = self
                .mul_z_pow(n as i64 * self.dir.step())
                .scale(&SeedCombo::from_rat(c.clone()));
            acc = acc.add(&piece);
        }
        // the unknown f-tail first contributes at (lowest exponent) + window
        let e0 = match self.dir {
            Direction::AtZero => self.branches.iter().map(|b| b.exponent.clone()).min(),
            Direction::AtInfinity => self.branches.iter().map(|b| b.exponent.clone()).max(),
        };
        if let Some(e0) = e0 {
            let cap = e0 + rat_i((f.len() as i64 - 1).max(0) * self.dir.step());
            acc.valid = acc.combine_valid(&cap);
        }
        acc.normalize();
        acc
    }
}

fn add_row(dst: &mut Vec<SeedCombo>, src: Vec<SeedCombo>) {
    if dst.len() < src.len() {
        dst.resize(src.len(), SeedCombo::zero());
    }
    for (d, s) in dst.iter_mut().zip(src.into_iter()) {
        *d = std::mem::take(d) + s;
    }
}

impl fmt::Display for PuiseuxLogSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for b in &self.branches {
            for (n, row) in b.coeffs.iter().enumerate() {
                let e = &b.exponent + rat_i(n as i64 * self.dir.step());
                for (k, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    write!(f, "({})", c)?;
                    if !e.is_zero() {
                        write!(f, "*z^({})", e)?;
                    }
                    if k == 1 {
                        write!(f, "*log(z)")?;
                    } else if k > 1 {
                        write!(f, "*log(z)^{}", k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{pochhammer, rat};

    fn airy_series(n_max: usize) -> PuiseuxLogSeries {
        // Σ z^(3n) / (9^n (2/3)_n n!)
        let mut coeffs = vec![Rat::zero(); 3 * n_max + 1];
        let mut fact = Rat::one();
        let mut nine = Rat::one();
        for n in 0..=n_max {
            if n > 0 {
                fact *= rat_i(n as i64);
                nine *= rat_i(9);
            }
            let p = pochhammer(&rat(2, 3), n);
            coeffs[3 * n] = Rat::one() / (nine.clone() * p * fact.clone());
        }
        PuiseuxLogSeries::from_rational_coeffs(Direction::AtZero, Rat::zero(), &coeffs)
    }

    #[test]
    fn airy_annihilated() {
        let s = airy_series(10); // valid through z^30
        let airy = DiffOp::new(vec![
            crate::kernel::Poly::from_i64(&[0, -1]),
            crate::kernel::Poly::zero(),
            crate::kernel::Poly::one(),
        ]);
        let r = s.apply(&airy);
        assert!(r.vanishes_through(&rat_i(27)));
        assert!(r.vanishes());
    }

    #[test]
    fn euler_series_at_infinity() {
        // Σ (-1)^n n! z^(-n-1) annihilated by zD^2 + (1-z)D - 1
        let mut coeffs = Vec::new();
        let mut fact = Rat::one();
        for n in 0..=30i64 {
            if n > 0 {
                fact *= rat_i(n);
            }
            coeffs.push(if n % 2 == 0 { fact.clone() } else { -fact.clone() });
        }
        let s =
            PuiseuxLogSeries::from_rational_coeffs(Direction::AtInfinity, rat_i(-1), &coeffs);
        let op = DiffOp::new(vec![
            crate::kernel::Poly::from_i64(&[-1]),
            crate::kernel::Poly::from_i64(&[1, -1]),
            crate::kernel::Poly::from_i64(&[0, 1]),
        ]);
        let r = s.apply(&op);
        assert!(r.vanishes_through(&rat_i(-29)));
    }

    #[test]
    fn theta_on_log_monomial() {
        // θ(z^(1/2) log z) = (1/2) z^(1/2) log z + z^(1/2)
        let s = PuiseuxLogSeries::monomial(
            Direction::AtZero,
            rat(1, 2),
            1,
            SeedCombo::one(),
            rat_i(10),
        );
        let theta = s.derivative().mul_z_pow(1);
        assert_eq!(theta.coeff(&rat(1, 2), 1).as_rat(), Some(rat(1, 2)));
        assert_eq!(theta.coeff(&rat(1, 2), 0).as_rat(), Some(Rat::one()));
    }

    #[test]
    fn apply_is_ring_action() {
        let s = airy_series(8);
        let a = DiffOp::new(vec![
            crate::kernel::Poly::from_i64(&[1, 2]),
            crate::kernel::Poly::one(),
        ]);
        let b = DiffOp::new(vec![
            crate::kernel::Poly::from_i64(&[0, -1]),
            crate::kernel::Poly::from_i64(&[3]),
        ]);
        let ab = a.mul(&b);
        let lhs = s.apply(&ab);
        let rhs = s.apply(&b).apply(&a);
        // compare within the common window
        let bound = lhs.valid_through().clone().min(rhs.valid_through().clone());
        let diff = lhs.add(&rhs.neg());
        assert!(diff.vanishes_through(&bound));
    }

    #[test]
    fn branch_merging() {
        let a = PuiseuxLogSeries::monomial(
            Direction::AtZero,
            rat(1, 2),
            0,
            SeedCombo::one(),
            rat_i(10),
        );
        let b = PuiseuxLogSeries::monomial(
            Direction::AtZero,
            rat(5, 2),
            0,
            SeedCombo::one(),
            rat_i(10),
        );
        let s = a.add(&b);
        assert_eq!(s.branches().len(), 1);
        assert_eq!(s.coeff(&rat(1, 2), 0).as_rat(), Some(Rat::one()));
        assert_eq!(s.coeff(&rat(5, 2), 0).as_rat(), Some(Rat::one()));
    }
}
