//! Terminating hypergeometric sums and the hypergeometric count formulas.
//!
//! A sum `pFq(a; b; x)` with some upper parameter a non-positive integer `−N`
//! is taken to be its first `N+1` terms. A lower parameter `b ≤ 0` is allowed
//! only if its Pochhammer symbol stays nonzero over those terms (`−b ≥ N`);
//! otherwise the sum is undefined under this convention and an error is
//! returned rather than a guess.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coefficients::{Family, LaurentVector};
use crate::exact::{binomial, c_nu, factorial, int_to_rat, rat, to_integer};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergeometricSpec {
    pub upper: Vec<i64>,
    pub lower: Vec<i64>,
    pub argument: BigRational,
}

/// Rising factorial `x(x+1)⋯(x+m−1)`.
pub fn pochhammer(x: &BigRational, m: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut f = x.clone();
    for _ in 0..m {
        acc *= &f;
        f += BigRational::one();
    }
    acc
}

/// Number of the last term of a terminating sum.
fn termination_index(spec: &HypergeometricSpec) -> Result<i64> {
    spec.upper
        .iter()
        .filter(|&&a| a <= 0)
        .map(|&a| -a)
        .min()
        .ok_or_else(|| {
            Error::UndefinedHypergeometric(format!(
                "no non-positive upper parameter in {:?}",
                spec.upper
            ))
        })
}

pub fn terminating_pfq(spec: &HypergeometricSpec) -> Result<BigRational> {
    let n = termination_index(spec)?;
    if let Some(b) = spec.lower.iter().find(|&&b| b <= 0 && -b < n) {
        return Err(Error::UndefinedHypergeometric(format!(
            "lower parameter {b} vanishes before the sum terminates at {n}"
        )));
    }
    let mut total = BigRational::zero();
    let mut term = BigRational::one();
    for m in 0..=n {
        total += &term;
        if m == n {
            break;
        }
        let num: BigInt = spec.upper.iter().map(|a| BigInt::from(a + m)).product();
        let den: BigInt = spec.lower.iter().map(|b| BigInt::from(b + m)).product::<BigInt>() * (m + 1);
        term = term * BigRational::new(num, den) * &spec.argument;
    }
    Ok(total)
}

fn two_f_one(a: i64, b: i64, c: i64, x: &BigRational) -> Result<BigRational> {
    terminating_pfq(&HypergeometricSpec {
        upper: [a, b].into(),
        lower: [c].into(),
        argument: x.clone(),
    })
}

fn check_family(v: &LaurentVector, family: Family, deriv: u32) -> Result<()> {
    if v.spec().family != family || v.deriv_order() != deriv {
        return Err(Error::InvalidModel(format!(
            "expected a {family} vector at derivative order {deriv}, got {} at order {}",
            v.spec().family,
            v.deriv_order()
        )));
    }
    Ok(())
}

/// Shared shape of both sums:
/// `j!·c^j·(ν−1)^j · Σ_ℓ u_ℓ·C(h_ℓ+j, j)·₂F₁(−j, shift−νj; −h_ℓ−j; 1/(1−ν))`
/// with `h_ℓ = h0 + ℓ`.
fn hypergeometric_count(nu: u32, j: u32, coeffs: &[BigRational], h0: i64, shift: i64) -> Result<BigInt> {
    let (n, ji) = (i64::from(nu), i64::from(j));
    let x = BigRational::new(BigInt::one(), BigInt::from(1 - n));
    let mut total = BigRational::zero();
    for (l, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let h = h0 + l as i64;
        let f = two_f_one(-ji, shift - n * ji, -h - ji, &x)?;
        total += a * int_to_rat(binomial(h + ji, ji)) * f;
    }
    let scale = factorial(u64::from(j)) * num_traits::pow(c_nu(nu) * (n - 1), j as usize);
    to_integer(total * int_to_rat(scale))
}

/// Two-legged count from the order-0 coefficients `a_ℓ`, ℓ = 0..=3g−1.
pub fn count_z_hg(v: &LaurentVector, j: u32) -> Result<BigInt> {
    check_family(v, Family::TwoLegged, 0)?;
    let g = i64::from(v.spec().genus);
    hypergeometric_count(v.spec().nu, j, &v.natural_coeffs(), 2 * g - 2, 0)
}

/// Regular count from the plain order-0 coefficients `b_ℓ`, ℓ = 0..=3g−3.
pub fn count_e_hg(v: &LaurentVector, j: u32) -> Result<BigInt> {
    check_family(v, Family::Regular, 0)?;
    if j < 1 {
        return Err(Error::OutOfDomain {
            j,
            reason: "regular maps need at least one vertex".to_string(),
        });
    }
    let g = i64::from(v.spec().genus);
    hypergeometric_count(v.spec().nu, j, &v.natural_coeffs(), 2 * g - 4, 1)
}

/// Regular genus-1 count for any ν.
pub fn count_e1(nu: u32, j: u32) -> Result<BigInt> {
    if nu < 2 || j < 1 {
        return Err(Error::OutOfDomain {
            j,
            reason: format!("needs nu >= 2 and j >= 1 (nu = {nu})"),
        });
    }
    let (n, ji) = (i64::from(nu), i64::from(j));
    let x = rat(1 - n);
    let three_f_two = |t: i64| {
        terminating_pfq(&HypergeometricSpec {
            upper: [1, 1, 1 + t - ji].into(),
            lower: [2, (n - 1) * ji + 1 + t].into(),
            argument: x.clone(),
        })
    };
    let mut bracket = int_to_rat(binomial(n * ji - 1, ji - 1) * (n - 1)) * three_f_two(0)?;
    let second = binomial(n * ji - 1, ji - 2);
    // At j = 1 the second binomial vanishes and its ₃F₂ would not terminate.
    if !second.is_zero() {
        bracket -= int_to_rat(second * (n - 1) * (n - 1)) * three_f_two(1)?;
    }
    let scale = BigRational::new(
        factorial(u64::from(j)) * num_traits::pow(c_nu(nu), j as usize),
        BigInt::from(12),
    );
    to_integer(bracket * scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{builtin_genera, load_builtin};
    use crate::exact::parse_rational;
    use crate::four_valent::{count_contraction, tables};
    use crate::recurrence::{count_recurrence, invert_step};
    use proptest::prelude::*;

    fn pfq(upper: &[i64], lower: &[i64], x: &str) -> Result<BigRational> {
        terminating_pfq(&HypergeometricSpec {
            upper: upper.to_vec(),
            lower: lower.to_vec(),
            argument: parse_rational(x).unwrap(),
        })
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(-3), 2), rat(6));
        assert_eq!(pochhammer(&rat(7), 0), rat(1));
        assert_eq!(pochhammer(&rat(-3), 4), rat(0));
    }

    #[test]
    fn pfq_examples() {
        assert_eq!(pfq(&[1, 1, 0], &[2, 2], "-1").unwrap(), rat(1));
        assert_eq!(pfq(&[1, 1, -1], &[2, 3], "-1").unwrap(), parse_rational("7/6").unwrap());
        assert_eq!(pfq(&[-1, -2], &[-1], "-1").unwrap(), rat(3));
    }

    #[test]
    fn pfq_rejects_bad_specs() {
        assert!(pfq(&[1, 2], &[3], "1/2").is_err());
        assert!(pfq(&[-3, 1], &[-1], "1").is_err());
    }

    #[test]
    fn two_legged_examples() {
        let z1 = load_builtin(Family::TwoLegged, 1).unwrap();
        let z2 = load_builtin(Family::TwoLegged, 2).unwrap();
        assert_eq!(count_z_hg(&z1, 1).unwrap(), BigInt::zero());
        assert_eq!(count_z_hg(&z2, 3).unwrap(), BigInt::zero());
        assert_eq!(count_z_hg(&z1, 3).unwrap(), BigInt::from(62208));
    }

    #[test]
    fn regular_examples() {
        let b2 = invert_step(&load_builtin(Family::Regular, 2).unwrap()).unwrap();
        assert_eq!(count_e_hg(&b2, 1).unwrap(), BigInt::zero());
        assert_eq!(
            count_e_hg(&b2, 2).unwrap(),
            count_contraction(&load_builtin(Family::Regular, 2).unwrap(), 2).unwrap()
        );
        let b3 = invert_step(&load_builtin(Family::Regular, 3).unwrap()).unwrap();
        assert_eq!(
            int_to_rat(count_e_hg(&b3, 4).unwrap()),
            tables::table_count(Family::Regular, 3, 4).unwrap()
        );
    }

    #[test]
    fn genus_one_regular() {
        assert_eq!(count_e1(2, 1).unwrap(), BigInt::from(1));
        assert_eq!(count_e1(2, 2).unwrap(), BigInt::from(60));
        assert_eq!(count_e1(3, 1).unwrap(), BigInt::from(10));
        for j in 1..=20 {
            assert_eq!(count_e1(2, j).unwrap(), tables::regular_genus_one(j), "j={j}");
        }
    }

    #[test]
    fn agrees_with_recurrence() {
        for g in builtin_genera(Family::TwoLegged) {
            let v = load_builtin(Family::TwoLegged, g).unwrap();
            for j in 0..=8 {
                assert_eq!(count_z_hg(&v, j).unwrap(), count_recurrence(&v, j).unwrap());
            }
        }
        for g in builtin_genera(Family::Regular) {
            let v = load_builtin(Family::Regular, g).unwrap();
            let b = invert_step(&v).unwrap();
            for j in 1..=8 {
                assert_eq!(count_e_hg(&b, j).unwrap(), count_recurrence(&v, j).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn zero_argument_or_zero_parameter_gives_one(
            a in -8i64..=0, b in 1i64..6, c in 1i64..6, x in -5i64..5,
        ) {
            prop_assert_eq!(pfq(&[a, b], &[c], "0").unwrap(), rat(1));
            prop_assert_eq!(
                terminating_pfq(&HypergeometricSpec { upper: [0, b].into(), lower: [c].into(), argument: rat(x) }).unwrap(),
                rat(1)
            );
        }
    }
}
