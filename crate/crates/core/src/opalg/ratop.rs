//! Operators with rational-function coefficients ℚ(z)⟨D⟩: right division,
//! least common left multiples, and the reduction machinery behind the
//! denominator-sequence diagnostics.

use num_bigint::BigInt;

use num_traits::One;
use std::ops::{Add, Mul, Neg, Sub};

use super::diffop::DiffOp;
use crate::error::Error;
use crate::kernel::{rat_i, Poly, Rat, RatFun};
use crate::Result;

/// Operator Σ_i c_i(z) D^i with c_i ∈ ℚ(z).
#[derive(Debug, Clone, PartialEq)]
pub struct RatOp {
    coeffs: Vec<RatFun>,
}

impl RatOp {
    pub fn new(mut coeffs: Vec<RatFun>) -> Self {
        while coeffs.last().map(RatFun::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        RatOp { coeffs }
    }

    pub fn zero() -> Self {
        RatOp { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatOp::new(vec![RatFun::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> RatFun {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.coeffs
    }

    pub fn from_diffop(op: &DiffOp) -> Self {
        RatOp::new(op.coeffs().iter().cloned().map(RatFun::from_poly).collect())
    }

    /// Clear denominators by a left polynomial factor and normalize.
    pub fn clear_to_diffop(&self) -> DiffOp {
        let mut den = Poly::one();
        for c in &self.coeffs {
            // lcm(den, c.den) = den * c.den / gcd
            let g = den.gcd(c.den());
            den = &den.div_rem(&g).0 * c.den();
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let p = &den.div_rem(c.den()).0 * c.num();
            out.push(p);
        }
        DiffOp::new(out).normalize()
    }

    /// Product with D·c(z) = c(z)·D + c'(z).
    pub fn mul(&self, rhs: &RatOp) -> RatOp {
        if self.is_zero() || rhs.is_zero() {
            return RatOp::zero();
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out = vec![RatFun::zero(); n];
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (k, q) in rhs.coeffs.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
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
                    out[i + k - t] +=
                        p.clone() * qd.clone() * RatFun::constant(binom.clone());
                }
            }
        }
        RatOp::new(out)
    }
}

impl Add for RatOp {
    type Output = RatOp;
    fn add(self, rhs: RatOp) -> RatOp {
        let mut v = self.coeffs;
        if v.len() < rhs.coeffs.len() {
            v.resize(rhs.coeffs.len(), RatFun::zero());
        }
        for (a, b) in v.iter_mut().zip(rhs.coeffs.into_iter()) {
            *a += b;
        }
        RatOp::new(v)
    }
}

impl Sub for RatOp {
    type Output = RatOp;
    fn sub(self, rhs: RatOp) -> RatOp {
        self + (-rhs)
    }
}

impl Neg for RatOp {
    type Output = RatOp;
    fn neg(self) -> RatOp {
        RatOp::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for &RatOp {
    type Output = RatOp;
    fn mul(self, rhs: &RatOp) -> RatOp {
        RatOp::mul(self, rhs)
    }
}

/// Right division in ℚ(z)⟨D⟩: A = q·B + r with ord r < ord B.
pub fn right_divide(a: &RatOp, b: &RatOp) -> Result<(RatOp, RatOp)> {
    if b.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let ob = b.order().unwrap();
    let bl = b.coeff(ob);
    let mut rem = a.clone();
    let mut quo = RatOp::zero();
    while let Some(or) = rem.order() {
        if or < ob || rem.is_zero() {
            break;
        }
        let c = rem.coeff(or) / bl.clone();
        let mut qv = vec![RatFun::zero(); or - ob + 1];
        qv[or - ob] = c;
        let qterm = RatOp::new(qv);
        rem = rem - qterm.mul(b);
        quo = quo + qterm;
        if rem.order() == Some(or) {
            return Err(Error::Internal("right division failed to reduce order".into()));
        }
    }
    Ok((quo, rem))
}

/// Remainder of D^k modulo right division by B, iterated efficiently:
/// returns the reductions of D^0, D^1, …, D^kmax as coefficient vectors of
/// length ord B.
pub fn power_remainders(b: &RatOp, kmax: usize) -> Result<Vec<Vec<RatFun>>> {
    let ob = b.order().ok_or(Error::ZeroDivisor)?;
    if ob == 0 {
        return Ok(vec![vec![]; kmax + 1]);
    }
    let bl = b.coeff(ob);
    // D^ob ≡ -(1/bl) Σ_{j<ob} b_j D^j
    let reduce_top: Vec<RatFun> = (0..ob)
        .map(|j| -(b.coeff(j) / bl.clone()))
        .collect();
    let mut out = Vec::with_capacity(kmax + 1);
    let mut cur = vec![RatFun::zero(); ob];
    cur[0] = RatFun::one();
    out.push(cur.clone());
    for _ in 0..kmax {
        // multiply by D: derivative plus shift, reduce the top
        let mut next = vec![RatFun::zero(); ob + 1];
        for (j, c) in cur.iter().enumerate() {
            next[j] += c.derivative();
            next[j + 1] += c.clone();
        }
        let top = next.pop().unwrap();
        if !top.is_zero() {
            for (j, r) in reduce_top.iter().enumerate() {
                next[j] += top.clone() * r.clone();
            }
        }
        cur = next;
        out.push(cur.clone());
    }
    Ok(out)
}

/// Least common left multiple of two nonzero operators, cleared to ℚ[z]⟨D⟩
/// and normalized. The result is right-divisible by both inputs.
pub fn lclm(a: &DiffOp, b: &DiffOp) -> Result<DiffOp> {
    let ra = RatOp::from_diffop(a);
    let rb = RatOp::from_diffop(b);
    let oa = ra.order().ok_or(Error::ZeroOperator)?;
    let ob = rb.order().ok_or(Error::ZeroOperator)?;
    let dim = oa + ob;
    let rem_a = power_remainders(&ra, dim)?;
    let rem_b = power_remainders(&rb, dim)?;
    // Find minimal n such that the joint remainder vectors of D^0..D^n are
    // linearly dependent over ℚ(z); the dependency gives the lclm.
    for n in 1..=dim {
        // columns: k = 0..n, rows: oa + ob joint remainder entries
        let rows = oa + ob;
        let cols = n + 1;
        let mut m = vec![vec![RatFun::zero(); cols]; rows];
        for k in 0..cols {
            for j in 0..oa {
                m[j][k] = rem_a[k].get(j).cloned().unwrap_or_else(RatFun::zero);
            }
            for j in 0..ob {
                m[oa + j][k] = rem_b[k].get(j).cloned().unwrap_or_else(RatFun::zero);
            }
        }
        if let Some(kernel) = kernel_vector(m, cols) {
            // want the top coefficient nonzero; kernel_vector guarantees the
            // last free column is the pivot of the dependency
            if !kernel[n].is_zero() {
                let op = RatOp::new(kernel);
                return Ok(op.clear_to_diffop());
            }
        }
    }
    Err(Error::Internal("lclm: no dependency up to the order bound".into()))
}

/// A nonzero kernel vector of the row-listed matrix (rows × cols), preferring
/// the highest column as the dependent one; None if full column rank.
fn kernel_vector(mut m: Vec<Vec<RatFun>>, cols: usize) -> Option<Vec<RatFun>> {
    let rows = m.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0;
    for col in 0..cols {
        let mut piv = None;
        for r in row..rows {
            if !m[r][col].is_zero() {
                piv = Some(r);
                break;
            }
        }
        let Some(p) = piv else {
            // free column: build kernel vector from earlier pivots
            let mut v = vec![RatFun::zero(); cols];
            v[col] = RatFun::one();
            for c in (0..col).rev() {
                if let Some(pr) = pivot_of_col[c] {
                    // m[pr][c] v[c] + Σ_{c' > c} m[pr][c'] v[c'] = 0
                    let mut acc = RatFun::zero();
                    for (cc, vc) in v.iter().enumerate().skip(c + 1) {
                        if !vc.is_zero() && !m[pr][cc].is_zero() {
                            acc += m[pr][cc].clone() * vc.clone();
                        }
                    }
                    v[c] = -(acc / m[pr][c].clone());
                }
            }
            return Some(v);
        };
        m.swap(row, p);
        pivot_of_col[col] = Some(row);
        let inv = m[row][col].inv();
        for c in col..cols {
            let val = m[row][c].clone() * inv.clone();
            m[row][c] = val;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    let sub = m[row][c].clone() * f.clone();
                    m[r][c] -= sub;
                }
            }
        }
        row += 1;
        if row == rows {
            // remaining columns are all free; take the next one
            if col + 1 < cols {
                let mut v = vec![RatFun::zero(); cols];
                v[col + 1] = RatFun::one();
                for c in (0..=col).rev() {
                    if let Some(pr) = pivot_of_col[c] {
                        let mut acc = RatFun::zero();
                        for (cc, vc) in v.iter().enumerate().skip(c + 1) {
                            if !vc.is_zero() && !m[pr][cc].is_zero() {
                                acc += m[pr][cc].clone() * vc.clone();
                            }
                        }
                        v[c] = -acc;
                    }
                }
                return Some(v);
            }
            return None;
        }
    }
    None
}

/// Right division of polynomial operators, exposed over ℚ(z).
pub fn right_divide_diffops(a: &DiffOp, b: &DiffOp) -> Result<(RatOp, RatOp)> {
    right_divide(&RatOp::from_diffop(a), &RatOp::from_diffop(b))
}

/// The m-th Galochkin numerators: remainder of (1/m!) Q_μ^m D^(m+μ-1) under
/// right division by φ, negated, for m = 1..=n. Returns for each m the list
/// of polynomials Q_{m,j} (j < μ), verified polynomial after clearing.
pub fn galochkin_numerators(phi: &DiffOp, n: usize) -> Result<Vec<Vec<Poly>>> {
    let mu = phi.order().ok_or(Error::ZeroOperator)?;
    if mu == 0 {
        return Err(Error::ZeroOperator);
    }
    let qmu = phi.leading();
    let rop = RatOp::from_diffop(phi);
    let rems = power_remainders(&rop, n + mu - 1)?;
    let mut out = Vec::with_capacity(n);
    let mut qmu_pow = Poly::one();
    let mut fact = BigInt::one();
    for m in 1..=n {
        qmu_pow = &qmu_pow * &qmu;
        fact *= BigInt::from(m);
        let scale = RatFun::from_poly(qmu_pow.clone())
            * RatFun::constant(Rat::new(BigInt::one(), fact.clone()));
        let rem = &rems[m + mu - 1];
        let mut row = Vec::with_capacity(mu);
        for j in 0..mu {
            let q = -(scale.clone() * rem.get(j).cloned().unwrap_or_else(RatFun::zero));
            match q.as_poly() {
                Some(p) => row.push(p),
                None => {
                    return Err(Error::Internal(format!(
                        "Galochkin numerator Q_{{{},{}}} not polynomial",
                        m, j
                    )))
                }
            }
        }
        out.push(row);
    }
    Ok(out)
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
    fn divide_self() {
        let a = op(&[(1, 1, 1), (-1, 0, 0)]);
        let (q, r) = right_divide_diffops(&a, &a).unwrap();
        assert_eq!(q, RatOp::one());
        assert!(r.is_zero());
    }

    #[test]
    fn divide_remark_identity() {
        // (z-1)Φ divided by Θ = (z-1)D - z gives quotient zD - 2z + 1, rem 0
        let phi = op(&[(1, 1, 2), (1, 0, 1), (-3, 1, 1), (2, 1, 0)]);
        let zm1 = DiffOp::from_poly(Poly::from_i64(&[-1, 1]));
        let a = zm1.mul(&phi);
        let theta_op = op(&[(1, 1, 1), (-1, 0, 1), (-1, 1, 0)]);
        let (q, r) = right_divide_diffops(&a, &theta_op).unwrap();
        assert!(r.is_zero());
        let want = RatOp::from_diffop(&op(&[(1, 1, 1), (-2, 1, 0), (1, 0, 0)]));
        assert_eq!(q, want);
    }

    #[test]
    fn divide_d2_by_d() {
        let d2 = op(&[(1, 0, 2)]);
        let d = DiffOp::d();
        let (q, r) = right_divide_diffops(&d2, &d).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, RatOp::from_diffop(&DiffOp::d()));
    }

    #[test]
    fn divide_exactness_random_shape() {
        let a = op(&[(3, 2, 2), (1, 0, 1), (-2, 1, 0)]);
        let b = op(&[(1, 1, 1), (4, 0, 0)]);
        let (q, r) = right_divide_diffops(&a, &b).unwrap();
        let back = q.mul(&RatOp::from_diffop(&b)) + r.clone();
        assert_eq!(back, RatOp::from_diffop(&a));
        assert!(r.order().unwrap_or(0) < b.order().unwrap());
    }

    #[test]
    fn lclm_same() {
        let d = DiffOp::d();
        assert_eq!(lclm(&d, &d).unwrap(), d);
    }

    #[test]
    fn lclm_exponentials() {
        // lclm(D - 1, D - 2) = D^2 - 3D + 2
        let a = op(&[(1, 0, 1), (-1, 0, 0)]);
        let b = op(&[(1, 0, 1), (-2, 0, 0)]);
        let l = lclm(&a, &b).unwrap();
        assert_eq!(l, op(&[(1, 0, 2), (-3, 0, 1), (2, 0, 0)]));
    }

    #[test]
    fn lclm_divisibility() {
        // lclm(zD - 1, D): order 2, right-divisible by both
        let a = op(&[(1, 1, 1), (-1, 0, 0)]);
        let b = DiffOp::d();
        let l = lclm(&a, &b).unwrap();
        assert_eq!(l.order(), Some(2));
        for f in [&a, &b] {
            let (_, r) = right_divide_diffops(&l, f).unwrap();
            assert!(r.is_zero(), "lclm not divisible by {}", f);
        }
    }
}
