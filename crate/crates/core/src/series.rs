//! Truncated power series in η and the series route to map counts.
//!
//! `z₀(η)` solves `z₀ = 1 + η·z₀^ν`. Composing a coefficient vector with it
//! and reading off Taylor coefficients reproduces the counts without any of
//! the recurrence machinery, which makes this an independent check.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coefficients::LaurentVector;
use crate::exact::{binomial, c_nu, factorial, int_to_rat, rat, to_integer};
use crate::{Error, Result};

/// Guard terms computed beyond the requested order and then discarded.
pub const GUARD_TERMS: usize = 2;

/// `Σ_{k=0..order} coeffs[k]·η^k`, exact through `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `η`.
    pub fn variable(order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `[η^k]`, zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        PowerSeries::from_coeffs((0..=order).map(|k| self.coeff(k)).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn reciprocal(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let acc: BigRational = (1..=k).map(|i| &self.coeffs[i] * &out[k - i]).sum();
            out.push(-acc * &inv0);
        }
        Some(PowerSeries { coeffs: out })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = PowerSeries::constant(BigRational::one(), self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries::from_coeffs((0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect())
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries::from_coeffs((0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect())
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + k] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }
}

/// `z₀(η)` through `order`, via Lagrange inversion:
/// `[η^n] z₀ = C(νn, n−1)/n` for `n ≥ 1` (Fuss–Catalan numbers).
pub fn solve_string(nu: u32, order: usize) -> PowerSeries {
    let nu = i64::from(nu);
    let coeffs = (0..=order as i64)
        .map(|n| {
            if n == 0 {
                BigRational::one()
            } else {
                BigRational::new(binomial(nu * n, n - 1), BigInt::from(n))
            }
        })
        .collect();
    PowerSeries { coeffs }
}

/// `1 − z₀ + η·z₀^ν`, which vanishes identically for a solution.
pub fn string_residual(nu: u32, z0: &PowerSeries) -> PowerSeries {
    let n = z0.order();
    let one = PowerSeries::constant(BigRational::one(), n);
    let eta = PowerSeries::variable(n);
    &(&one - z0) + &(&eta * &z0.pow(nu))
}

/// Series of the function a vector represents, as a function of η.
///
/// A vector at order `d` stands for `z₀^(dν+1)·Σ u_p (ν−(ν−1)z₀)^(−p)`; the
/// plain regular order-0 vector has no `z₀` prefactor.
pub fn compose_model(v: &LaurentVector, z0: &PowerSeries) -> Result<PowerSeries> {
    let spec = v.spec();
    let nu = spec.nu;
    let order = z0.order();
    let w = &PowerSeries::constant(rat(i64::from(nu)), order) - &z0.scale(&rat(i64::from(nu) - 1));
    let w_inv = w.reciprocal().expect("ν − (ν−1)z₀ starts at 1");

    let first = v.base_power();
    if first < 0 {
        return Err(Error::InvalidModel("negative powers are not supported".into()));
    }
    let mut power = w_inv.pow(first as u32);
    let mut total = PowerSeries::zero(order);
    for c in v.coeffs() {
        if !c.is_zero() {
            total = &total + &power.scale(c);
        }
        power = &power * &w_inv;
    }
    if !spec.is_plain_order(v.deriv_order()) {
        total = &total * &z0.pow(v.deriv_order() * nu + 1);
    }
    Ok(total)
}

/// Map count with `j` vertices from the series of a vector at order `d ≤ j`:
/// `c_ν^(j−min(d, j_G)) · (j−d)! · [η^(j−d)]`.
pub fn count_series(v: &LaurentVector, j: u32) -> Result<BigInt> {
    let spec = v.spec();
    let d = v.deriv_order();
    if i64::from(j) < spec.j_init || j < d {
        return Err(Error::OutOfDomain {
            j,
            reason: alloc::format!("vector at order {d} for the {} family", spec.family),
        });
    }
    let k = (j - d) as usize;
    let z0 = solve_string(spec.nu, k + GUARD_TERMS);
    let f = compose_model(v, &z0)?;
    if f.order() < k {
        return Err(Error::OrderMismatch { have: f.order(), need: k });
    }
    let carried = d.min(spec.j_init as u32);
    let scale = num_traits::pow(c_nu(spec.nu), (j - carried) as usize) * factorial(k as u64);
    to_integer(f.coeff(k) * int_to_rat(scale))
}

/// Planar two-legged count `j!·c_ν^j·[η^j] z₀`.
pub fn planar_two_legged_count(nu: u32, j: u32) -> BigInt {
    let z0 = solve_string(nu, j as usize);
    let value = z0.coeff(j as usize)
        * int_to_rat(factorial(u64::from(j)) * num_traits::pow(c_nu(nu), j as usize));
    to_integer(value).expect("Fuss–Catalan counts are integers")
}
