//! Fixed-point decimal reals for the few places that leave exact arithmetic.
//!
//! A [`Real`] is an integer multiple of `10^−FRACTION_DIGITS`. The integer
//! part is unbounded, so factorial-sized magnitudes are fine; precision is
//! absolute rather than relative, which suits the ratios near 1 that are
//! computed here.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::int_pow;

/// Decimal digits kept after the point.
pub const FRACTION_DIGITS: u32 = 64;

const PI_GUARD_DIGITS: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Real {
    scaled: BigInt,
}

fn scale() -> BigInt {
    int_pow(10, u64::from(FRACTION_DIGITS))
}

/// `num / den` rounded half away from zero; `den` must be nonzero.
fn div_round(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    if (r.abs() * 2u32) >= den.abs() {
        if (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus) {
            q - 1u32
        } else {
            q + 1u32
        }
    } else {
        q
    }
}

impl Real {
    pub fn zero() -> Self {
        Real { scaled: BigInt::zero() }
    }

    pub fn one() -> Self {
        Real::from_integer(BigInt::one())
    }

    pub fn from_integer(n: BigInt) -> Self {
        Real { scaled: n * scale() }
    }

    /// Nearest representable value.
    pub fn from_rational(q: &BigRational) -> Self {
        Real {
            scaled: div_round(&(q.numer() * scale()), q.denom()),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.scaled.is_positive()
    }

    pub fn abs(&self) -> Self {
        Real { scaled: self.scaled.abs() }
    }

    /// Square root, rounded down; `None` for negative input.
    pub fn sqrt(&self) -> Option<Self> {
        if self.scaled.is_negative() {
            return None;
        }
        Some(Real {
            scaled: (&self.scaled * scale()).sqrt(),
        })
    }

    /// π via Machin's formula, `16·atan(1/5) − 4·atan(1/239)`.
    pub fn pi() -> Self {
        let unit = int_pow(10, u64::from(FRACTION_DIGITS + PI_GUARD_DIGITS));
        let atan_inv = |x: i64| {
            let x2 = BigInt::from(x * x);
            let mut power = &unit / x;
            let mut sum = BigInt::zero();
            let mut k = 0i64;
            while !power.is_zero() {
                let term = &power / (2 * k + 1);
                if k % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
                power /= &x2;
                k += 1;
            }
            sum
        };
        let wide = atan_inv(5) * 16 - atan_inv(239) * 4;
        Real {
            scaled: div_round(&wide, &int_pow(10, u64::from(PI_GUARD_DIGITS))),
        }
    }

    /// Decimal digits and the exponent of the leading one, rounded to
    /// `sig` significant digits. Zero gives `None`.
    fn significant(&self, sig: u32) -> Option<(String, i64)> {
        if self.scaled.is_zero() {
            return None;
        }
        let digits = self.scaled.abs().to_str_radix(10);
        let len = digits.len() as i64;
        let sig = i64::from(sig.max(1));
        let mut mantissa = if len > sig {
            div_round(&self.scaled.abs(), &int_pow(10, (len - sig) as u64))
        } else {
            self.scaled.abs() * int_pow(10, (sig - len) as u64)
        };
        let mut exponent = len - 1 - i64::from(FRACTION_DIGITS);
        if mantissa.to_str_radix(10).len() as i64 > sig {
            mantissa /= 10u32;
            exponent += 1;
        }
        Some((mantissa.to_str_radix(10), exponent))
    }

    /// Formats like C's `%.{sig}g`: fixed notation for exponents in
    /// `[−4, sig)`, scientific otherwise, trailing zeros removed.
    pub fn to_significant(&self, sig: u32) -> String {
        let Some((digits, exponent)) = self.significant(sig) else {
            return String::from("0");
        };
        let sign = if self.scaled.is_negative() { "-" } else { "" };
        let trim = |s: String| -> String {
            if s.contains('.') {
                s.trim_end_matches('0').trim_end_matches('.').into()
            } else {
                s
            }
        };
        if exponent < -4 || exponent >= i64::from(sig.max(1)) {
            let (head, tail) = digits.split_at(1);
            let mantissa = trim(format!("{head}.{tail}"));
            let esign = if exponent < 0 { '-' } else { '+' };
            format!("{sign}{mantissa}e{esign}{:02}", exponent.abs())
        } else if exponent < 0 {
            let zeros = "0".repeat((-exponent - 1) as usize);
            format!("{sign}{}", trim(format!("0.{zeros}{digits}")))
        } else {
            let (int, frac) = digits.split_at(exponent as usize + 1);
            format!("{sign}{}", trim(format!("{int}.{frac}")))
        }
    }
}

impl fmt::Display for Real {
    /// Twelve significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_significant(12))
    }
}

impl Add for &Real {
    type Output = Real;

    fn add(self, rhs: &Real) -> Real {
        Real {
            scaled: &self.scaled + &rhs.scaled,
        }
    }
}

impl Sub for &Real {
    type Output = Real;

    fn sub(self, rhs: &Real) -> Real {
        Real {
            scaled: &self.scaled - &rhs.scaled,
        }
    }
}

impl Neg for &Real {
    type Output = Real;

    fn neg(self) -> Real {
        Real {
            scaled: -&self.scaled,
        }
    }
}

impl Mul for &Real {
    type Output = Real;

    fn mul(self, rhs: &Real) -> Real {
        Real {
            scaled: div_round(&(&self.scaled * &rhs.scaled), &scale()),
        }
    }
}

impl Div for &Real {
    type Output = Real;

    /// Panics on division by zero.
    fn div(self, rhs: &Real) -> Real {
        assert!(!rhs.scaled.is_zero(), "division by zero");
        Real {
            scaled: div_round(&(&self.scaled * scale()), &rhs.scaled),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn q(s: &str) -> Real {
        Real::from_rational(&parse_rational(s).unwrap())
    }

    #[test]
    fn pi_digits() {
        assert!(Real::pi()
            .to_significant(40)
            .starts_with("3.14159265358979323846264338327950288419"));
    }

    #[test]
    fn square_roots() {
        assert_eq!(q("9/4").sqrt().unwrap().to_string(), "1.5");
        assert_eq!(q("2").sqrt().unwrap().to_significant(20), "1.4142135623730950488");
        assert!(q("-1").sqrt().is_none());
    }

    #[test]
    fn formatting_like_printf_g() {
        assert_eq!(q("1").to_string(), "1");
        assert_eq!(q("0").to_string(), "0");
        assert_eq!(q("-1/8").to_string(), "-0.125");
        assert_eq!(q("2/3").to_string(), "0.666666666667");
        assert_eq!(q("1/30000").to_string(), "3.33333333333e-05");
        assert_eq!(q("1/3000").to_string(), "0.000333333333333");
        assert_eq!(q("123456789012345").to_string(), "1.23456789012e+14");
        assert_eq!(q("4999999999998/5").to_string(), "1e+12");
        assert_eq!(q("9999999999999999/100000000000").to_string(), "100000");
        assert_eq!(q("42").to_significant(1), "4e+01");
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&q("1/4") * &q("4"), q("1"));
        assert_eq!(&q("7") / &q("2"), q("7/2"));
        assert_eq!(&q("1/2") - &q("3/4"), q("-1/4"));
        assert_eq!((&q("1/2") + &q("1/4")).to_string(), "0.75");
        assert_eq!(-&q("2"), q("-2"));
        assert!(q("1/3") < q("1/2"));
    }

    proptest! {
        #[test]
        fn sqrt_squares_back(n in 1u64..1_000_000_000u64, d in 1u64..1000u64) {
            let x = Real::from_rational(&BigRational::new(n.into(), d.into()));
            let r = x.sqrt().unwrap();
            let err = (&(&r * &r) - &x).abs();
            prop_assert!(err < q("1/1000000000000000000000000000000000000000000000000"));
        }
    }
}
