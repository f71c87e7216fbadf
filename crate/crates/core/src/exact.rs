//! Small exact-arithmetic helpers shared by the counting routines.

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Parses `"n"`, `"-n"`, `"p/q"` or `"-p/q"` into a reduced rational.
///
/// Surrounding whitespace is ignored. Anything else, including a zero
/// denominator, a `+` sign or digit separators, is rejected.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::MalformedRational(text.to_string());
    let trimmed = text.trim();
    let (negative, body) = match trimmed.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, trimmed),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |s: &str| -> Result<BigInt> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::parse_bytes(s.as_bytes(), 10).ok_or_else(bad)
    };
    let mut numer = digits(num)?;
    let denom = match den {
        Some(d) => digits(d)?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    if negative {
        numer = -numer;
    }
    Ok(BigRational::new(numer, denom))
}

/// Canonical text form: `"n"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &BigRational) -> String {
    value.to_string()
}

/// Returns the integer value of `value`, or a [`Error::NonIntegerCount`].
pub fn to_integer(value: BigRational) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegerCount {
            value: value.to_string(),
        })
    }
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Product `lo · (lo+1) ⋯ hi`, empty (= 1) when `hi < lo`.
pub fn range_product(lo: i64, hi: i64) -> BigInt {
    (lo..=hi).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(2k-1)!! = 1 · 3 ⋯ (2k-1)`, with `(-1)!! = 1`.
pub fn odd_double_factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * (2 * i - 1))
}

/// Binomial coefficient for any integer top `n` and bottom `k`.
///
/// Uses the falling-factorial definition `n(n-1)⋯(n-k+1)/k!`, so negative `n`
/// is allowed and `k < 0` gives zero.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    let k = if n >= 0 { k.min(n - k) } else { k };
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn rational_pow(base: &BigRational, exp: u32) -> BigRational {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn int_pow(base: i64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `true` when `value` is divisible by `divisor` (which must be nonzero).
pub fn divides(divisor: &BigInt, value: &BigInt) -> bool {
    value.is_multiple_of(divisor)
}

/// Half-valence constant `c_ν = 2ν·C(2ν−1, ν−1)`; `c_2 = 12`.
pub fn c_nu(nu: u32) -> BigInt {
    let nu = i64::from(nu);
    binomial(2 * nu - 1, nu - 1) * (2 * nu)
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn int_to_rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}
