//! Arbitrary-precision rational numbers and a few sequence-level helpers.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::Result;

/// Exact rational number. `BigRational` keeps gcd(|num|, den) = 1 and den ≥ 1.
pub type Rat = BigRational;

/// Rational p/q from machine integers.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Rational from a machine integer.
pub fn rat_i(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Rational from big numerator/denominator.
pub fn rat_from_big(p: BigInt, q: BigInt) -> Rat {
    Rat::new(p, q)
}

/// Least positive integer `d` such that `d * v` is an integer for every `v`.
pub fn den_lcm(values: &[Rat]) -> BigInt {
    let mut acc = BigInt::one();
    for v in values {
        acc = acc.lcm(v.denom());
    }
    acc
}

/// Pochhammer symbol (a)_n = a (a+1) ⋯ (a+n-1).
pub fn pochhammer(a: &Rat, n: usize) -> Rat {
    let mut acc = Rat::one();
    let mut t = a.clone();
    for _ in 0..n {
        acc *= &t;
        t += Rat::one();
    }
    acc
}

/// Natural log of |x| for a nonzero rational, as f64 (diagnostics only).
pub fn ln_rat_abs(x: &Rat) -> f64 {
    ln_big_abs(x.numer()) - ln_big_abs(x.denom())
}

/// Natural log of |x| for a nonzero big integer.
pub fn ln_big_abs(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 52 {
        return x.abs().to_f64().unwrap().ln();
    }
    // top 52 bits as mantissa, rest as exponent
    let shift = bits - 52;
    let top = (x.abs() >> shift).to_f64().unwrap();
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Taylor coefficients of f∘g through order `n_max`, exact; g must have zero
/// constant term.
pub fn poly_compose_truncated(f: &[Rat], g: &[Rat], n_max: usize) -> Result<Vec<Rat>> {
    if !g.first().map(Zero::is_zero).unwrap_or(true) {
        return Err(Error::NonzeroConstantTerm);
    }
    let mut out = vec![Rat::zero(); n_max + 1];
    // Horner from the top coefficient of f: out = out*g + f_k, truncated.
    let top = f.len().min(n_max + 1);
    for k in (0..top).rev() {
        out = mul_truncated(&out, g, n_max);
        out[0] += &f[k];
    }
    // degrees of f beyond n_max cannot contribute since g has valuation >= 1
    Ok(out)
}

fn mul_truncated(a: &[Rat], b: &[Rat], n_max: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n_max + 1];
    for (i, ai) in a.iter().enumerate().take(n_max + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n_max + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Sign of a rational as -1, 0, 1.
pub fn sign_of(x: &Rat) -> i32 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn den_lcm_examples() {
        assert_eq!(den_lcm(&[rat_i(1), rat(1, 2), rat(1, 3)]), BigInt::from(6));
        assert_eq!(den_lcm(&[Rat::zero()]), BigInt::from(1));
        // brute-force smallest d <= 48 clearing all entries
        let vals = [rat(1, 4), rat(1, 6), rat(5, 8)];
        let mut brute = None;
        for d in 1..=48i64 {
            if vals
                .iter()
                .all(|v| (v * rat_i(d)).denom() == &BigInt::one())
            {
                brute = Some(d);
                break;
            }
        }
        assert_eq!(brute, Some(24));
        assert_eq!(den_lcm(&vals), BigInt::from(24));
    }

    #[test]
    fn compose_truncated_examples() {
        // f = 1 + w, g = z, N = 3
        let f = [rat_i(1), rat_i(1)];
        let g = [rat_i(0), rat_i(1)];
        let c = poly_compose_truncated(&f, &g, 3).unwrap();
        assert_eq!(c, vec![rat_i(1), rat_i(1), rat_i(0), rat_i(0)]);

        // exp(log 1/(1-z)) = 1/(1-z) through order 4
        let n = 4usize;
        let mut f = vec![Rat::zero(); n + 1]; // e^w
        let mut fact = Rat::one();
        for (k, fk) in f.iter_mut().enumerate() {
            if k > 0 {
                fact *= rat_i(k as i64);
            }
            *fk = Rat::one() / fact.clone();
        }
        let mut g = vec![Rat::zero(); n + 1]; // log 1/(1-z) = sum z^k/k
        for (k, gk) in g.iter_mut().enumerate().skip(1) {
            *gk = rat(1, k as i64);
        }
        let c = poly_compose_truncated(&f, &g, n).unwrap();
        assert!(c.iter().all(|x| x == &Rat::one()));

        // f = w, g = z + z^2, N = 2
        let c = poly_compose_truncated(
            &[rat_i(0), rat_i(1)],
            &[rat_i(0), rat_i(1), rat_i(1)],
            2,
        )
        .unwrap();
        assert_eq!(c, vec![rat_i(0), rat_i(1), rat_i(1)]);

        // nonzero constant term rejected
        assert!(poly_compose_truncated(&[rat_i(1)], &[rat_i(1)], 2).is_err());
    }

    #[test]
    fn ln_abs_large() {
        let big = BigInt::from(10).pow(50);
        let l = ln_big_abs(&big);
        assert!((l - 50.0 * 10f64.ln()).abs() < 1e-6);
    }
}
