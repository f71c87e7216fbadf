//! Leading large-`j` behaviour of the counts at fixed genus.
//!
//! With `s_c = (ν−1)^(ν−1)/(c_ν ν^ν)`, `q = 2ν/(ν−1)` and `m = 5g−1`
//! (two-legged) or `m = 5g−5` (regular), the dominant term is
//!
//! ```text
//! N∞(j) = j! · K · L · q^(−m/2) · j^((m−2)/2) / Γ(m/2) · s_c^(−j)
//! ```
//!
//! where `L` is the top coefficient of the initial vector and `K = ν/(ν−1)`
//! for two-legged maps, `K = 1` for regular ones. Everything except the
//! half-integer powers and `√π` is rational, so ratios are computed exactly
//! and only the final `√(πq/j)` correction is rounded.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::coefficients::{load_builtin, Family, LaurentVector, ModelSpec};
use crate::exact::{c_nu, factorial, int_pow, int_to_rat, odd_double_factorial, rational_pow};
use crate::four_valent::derive_closed_form;
use crate::real::Real;
use crate::recurrence::invert_step;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticParams {
    pub nu: u32,
    pub genus: u32,
    pub family: Family,
    pub s_c: BigRational,
    pub leading_coeff: BigRational,
    /// `m/2`, the argument of the Γ function.
    pub gamma_arg: BigRational,
}

impl AsymptoticParams {
    fn m(&self) -> i64 {
        let twice = &self.gamma_arg * BigInt::from(2);
        i64::try_from(twice.to_integer()).expect("small exponent")
    }

    fn q(&self) -> BigRational {
        let nu = i64::from(self.nu);
        BigRational::new(BigInt::from(2 * nu), BigInt::from(nu - 1))
    }

    fn k_factor(&self) -> BigRational {
        let nu = i64::from(self.nu);
        match self.family {
            Family::TwoLegged => BigRational::new(BigInt::from(nu), BigInt::from(nu - 1)),
            Family::Regular => BigRational::one(),
        }
    }

    /// The rational part of `N∞(j)`. For odd `m` the full term is this times
    /// `√(j/q)/√π`; for even `m` it is the full term.
    pub fn rational_part(&self, j: u32) -> BigRational {
        let m = self.m();
        let k = m / 2;
        let jj = BigInt::from(j);
        let mut r = int_to_rat(factorial(u64::from(j)))
            * self.k_factor()
            * &self.leading_coeff
            * rational_pow(&self.s_c.recip(), j)
            * rational_pow(&self.q().recip(), k as u32)
            * int_to_rat(num_traits::pow(jj, (k - 1) as usize));
        if m % 2 == 0 {
            r /= int_to_rat(factorial((k - 1) as u64));
        } else {
            // Γ(k + 1/2) = (2k−1)!!·√π / 2^k
            r *= BigRational::new(int_pow(2, k as u64), odd_double_factorial(k as u64));
        }
        r
    }

    fn half_integer_correction(&self, j: u32) -> Option<Real> {
        if self.m() % 2 == 0 {
            return None;
        }
        let pi_q_over_j = &Real::pi() * &Real::from_rational(&(self.q() / BigInt::from(j)));
        pi_q_over_j.sqrt()
    }
}

/// `(ν−1)^(ν−1) / (c_ν·ν^ν)`.
pub fn critical_point(nu: u32) -> BigRational {
    let n = i64::from(nu);
    BigRational::new(int_pow(n - 1, u64::from(nu) - 1), c_nu(nu) * int_pow(n, u64::from(nu)))
}

/// Top coefficient of the plain regular order-0 form, from the two-legged
/// top coefficient: `a / ((5g−5)(5g−3)ν²)`.
pub fn regular_leading_from_two_legged(nu: u32, genus: u32, a: &BigRational) -> BigRational {
    let g = i64::from(genus);
    let n = i64::from(nu);
    a / BigInt::from((5 * g - 5) * (5 * g - 3) * n * n)
}

/// Top coefficient of the plain order-0 form reached from a regular vector
/// by stepping back once.
pub fn regular_leading_from_vector(e: &LaurentVector) -> Result<BigRational> {
    let mut v = e.clone();
    while v.deriv_order() > 0 {
        v = invert_step(&v)?;
    }
    v.natural_coeffs().pop().ok_or(Error::EmptyVector)
}

fn check_params(nu: u32, family: Family, genus: u32) -> Result<()> {
    if nu < 2 || genus < family.min_fast_genus().max(1) {
        return Err(Error::InvalidModel(format!(
            "no asymptotic formula for nu = {nu}, {family} genus {genus}"
        )));
    }
    Ok(())
}

/// Parameters from a two-legged order-0 vector of the same genus, for either
/// family.
pub fn params_from_two_legged(z: &LaurentVector, family: Family) -> Result<AsymptoticParams> {
    let spec = z.spec();
    if spec.family != Family::TwoLegged || z.deriv_order() != 0 {
        return Err(Error::InvalidModel(
            "expected a two-legged vector at derivative order 0".into(),
        ));
    }
    let (nu, genus) = (spec.nu, spec.genus);
    check_params(nu, family, genus)?;
    let top = z.natural_coeffs().pop().ok_or(Error::EmptyVector)?;
    let (leading_coeff, m) = match family {
        Family::TwoLegged => (top, 5 * i64::from(genus) - 1),
        Family::Regular => (
            regular_leading_from_two_legged(nu, genus, &top),
            5 * i64::from(genus) - 5,
        ),
    };
    if !leading_coeff.is_positive() {
        return Err(Error::InvalidModel(format!(
            "leading coefficient {leading_coeff} is not positive"
        )));
    }
    Ok(AsymptoticParams {
        nu,
        genus,
        family,
        s_c: critical_point(nu),
        leading_coeff,
        gamma_arg: BigRational::new(BigInt::from(m), BigInt::from(2)),
    })
}

/// Parameters for a builtin (ν = 2) model.
pub fn params_for(spec: &ModelSpec) -> Result<AsymptoticParams> {
    check_params(spec.nu, spec.family, spec.genus)?;
    if spec.nu != 2 {
        return Err(Error::NoBuiltinData {
            family: Family::TwoLegged,
            genus: spec.genus,
        });
    }
    params_from_two_legged(&load_builtin(Family::TwoLegged, spec.genus)?, spec.family)
}

/// The dominant term `N∞(j)`.
pub fn n_infinity(params: &AsymptoticParams, j: u32) -> Real {
    let r = Real::from_rational(&params.rational_part(j));
    match params.half_integer_correction(j) {
        None => r,
        Some(c) => &r / &c,
    }
}

/// `count / N∞(j)`, exact up to the final square root.
pub fn ratio(params: &AsymptoticParams, count: &BigInt, j: u32) -> Real {
    let exact = int_to_rat(count.clone()) / params.rational_part(j);
    let r = Real::from_rational(&exact);
    match params.half_integer_correction(j) {
        None => r,
        Some(c) => &r * &c,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioRow {
    pub family: Family,
    pub genus: u32,
    pub j: u32,
    pub count: BigInt,
    pub ratio: Real,
}

/// Ratios for a builtin model, with exact counts from the closed form.
pub fn ratio_table(spec: &ModelSpec, j_values: &[u32]) -> Result<Vec<RatioRow>> {
    let params = params_for(spec)?;
    let closed = derive_closed_form(&load_builtin(spec.family, spec.genus)?)?;
    j_values
        .iter()
        .map(|&j| {
            if j < 1 {
                return Err(Error::OutOfDomain {
                    j,
                    reason: "the asymptotic term needs j >= 1".into(),
                });
            }
            let count = closed.count(j)?;
            let ratio = ratio(&params, &count, j);
            Ok(RatioRow {
                family: spec.family,
                genus: spec.genus,
                j,
                count,
                ratio,
            })
        })
        .collect()
}

/// Whether `|ratio − 1|` strictly decreases along the rows.
pub fn converges_monotonically(rows: &[RatioRow]) -> bool {
    let one = Real::one();
    let gaps: Vec<Real> = rows.iter().map(|r| (&r.ratio - &one).abs()).collect();
    gaps.windows(2).all(|w| w[1] < w[0])
}

/// `|ratio − 1|` of the last row.
pub fn final_gap(rows: &[RatioRow]) -> Option<Real> {
    rows.last().map(|r| (&r.ratio - &Real::one()).abs())
}
