//! The ν = 2 fast path.
//!
//! For 4-valent maps every step matrix `A^(j)` is upper bidiagonal with
//! eigenvalues `2(2j+k)` and a common unipotent eigenbasis `S`. Summing the
//! columns of the product `A^(j−1)⋯A^(j_G)` gives a genus-independent row
//! vector `R^(j)` with
//!
//! ```text
//! R^(j)[n] = 2^−(n−1) · Σ_{k=1..n} C(n−1, k−1) · d_k^(j),   d_k^(j) = Π_{ℓ=j_G..j−1} 2(2ℓ+k),
//! ```
//!
//! and the count is `12^(j−j_G) · R^(j) · X` for the padded initial vector `X`.
//! Splitting `d_k` by the parity of `k` turns the contraction into the closed
//! form `12^(j−j_G)·(A(j)·(2j)!/j! + B(j)·4^j·j!)` with polynomial `A`, `B`.

mod linalg;
pub mod tables;

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub use linalg::{a_matrix, basis, d_matrix, RatMatrix, UnipotentBasis};

use crate::coefficients::{LaurentVector, ModelSpec};
use crate::exact::{binomial, factorial, int_pow, int_to_rat, odd_double_factorial, range_product, rat, to_integer};
use crate::hypergeometric::{terminating_pfq, HypergeometricSpec};
use crate::poly::Poly;
use crate::{Error, Result};

/// `d_m^(j) = Π_{ℓ=j_from..j−1} 2(2ℓ+m)`.
pub fn d_product(m: u32, j: u32, j_from: u32) -> BigInt {
    assert!(j >= j_from, "d_product needs j >= j_from");
    let m = i64::from(m);
    (i64::from(j_from)..i64::from(j)).fold(BigInt::from(1), |acc, l| acc * (2 * (2 * l + m)))
}

/// Closed form of `d_m^(j)` for products starting at `ℓ = 0`:
/// `d_{2p} = 4^j (j+p−1)!/(p−1)!` and `d_{2p+1} = (2j+2p)!·p!/((2p)!·(j+p)!)`.
pub fn d_closed_form(m: u32, j: u32) -> BigInt {
    assert!(m >= 1, "d_m is indexed from m = 1");
    let (p, j) = (i64::from(m / 2), i64::from(j));
    if m % 2 == 0 {
        int_pow(4, j as u64) * range_product(p, j + p - 1)
    } else {
        range_product(2 * p + 1, 2 * j + 2 * p) / range_product(p + 1, j + p)
    }
}

/// The contraction vector `R^(j)` truncated to `s` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowVector {
    pub j: u32,
    pub j_from: u32,
    pub entries: Vec<BigRational>,
}

pub fn row_vector(j: u32, j_from: u32, s: usize) -> RowVector {
    let d: Vec<BigInt> = (1..=s as u32).map(|m| d_product(m, j, j_from)).collect();
    let entries = (1..=s as i64)
        .map(|n| {
            let num: BigInt = (1..=n)
                .map(|k| binomial(n - 1, k - 1) * &d[(k - 1) as usize])
                .sum();
            BigRational::new(num, int_pow(2, (n - 1) as u64))
        })
        .collect();
    RowVector { j, j_from, entries }
}

fn require_fast_path(spec: &ModelSpec) -> Result<usize> {
    if spec.nu != 2 {
        return Err(Error::FastPathUndefined(format!(
            "the row-vector contraction needs nu = 2, got nu = {}",
            spec.nu
        )));
    }
    if !spec.fast_path_valid() {
        return Err(Error::FastPathUndefined(format!(
            "{} family at genus {} has j_G > j0",
            spec.family, spec.genus
        )));
    }
    Ok(spec.band_len.expect("nu = 2 has a band"))
}

fn require_initial(v: &LaurentVector) -> Result<usize> {
    let s = require_fast_path(v.spec())?;
    if i64::from(v.deriv_order()) != v.spec().j_init {
        return Err(Error::FastPathUndefined(format!(
            "initial vector must sit at derivative order {}, got {}",
            v.spec().j_init,
            v.deriv_order()
        )));
    }
    Ok(s)
}

/// Count by contraction: `12^(j−j_G) · R^(j) · X`.
pub fn count_contraction(v: &LaurentVector, j: u32) -> Result<BigInt> {
    let s = require_initial(v)?;
    let spec = v.spec();
    let jg = spec.j_init as u32;
    if j < jg {
        return Err(Error::OutOfDomain {
            j,
            reason: format!("the {} family needs at least {jg} vertices", spec.family),
        });
    }
    let row = row_vector(j, jg, s);
    let dot: BigRational = row.entries.iter().zip(v.coeffs()).map(|(r, x)| r * x).sum();
    to_integer(dot * int_to_rat(int_pow(12, u64::from(j - jg))))
}

/// `12^(j−j_G) · (poly_a(j)·(2j)!/j! + poly_b(j)·4^j·j!)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormCount {
    pub spec: ModelSpec,
    pub poly_a: Poly,
    pub poly_b: Poly,
}

impl ClosedFormCount {
    pub fn eval(&self, j: u32) -> BigRational {
        let jj = i64::from(j);
        let jg = self.spec.j_init;
        assert!(jj >= jg, "closed forms start at j = {jg}");
        let odd = int_to_rat(range_product(jj + 1, 2 * jj));
        let even = int_to_rat(int_pow(4, u64::from(j)) * factorial(u64::from(j)));
        int_to_rat(int_pow(12, (jj - jg) as u64))
            * (self.poly_a.eval_int(jj) * odd + self.poly_b.eval_int(jj) * even)
    }

    pub fn count(&self, j: u32) -> Result<BigInt> {
        to_integer(self.eval(j))
    }

    /// The values of `j` forced to zero by the Euler characteristic:
    /// `0..=2g−2` for two-legged maps, `1..=2g−3` for regular ones.
    pub fn forbidden_vertex_counts(&self) -> core::ops::RangeInclusive<i64> {
        let g = i64::from(self.spec.genus);
        match self.spec.family {
            crate::Family::TwoLegged => 0..=2 * g - 2,
            crate::Family::Regular => 1..=2 * g - 3,
        }
    }

    /// Whether both polynomials vanish at every forbidden vertex count.
    pub fn has_forbidden_roots(&self) -> bool {
        self.forbidden_vertex_counts()
            .all(|r| self.poly_a.eval_int(r).is_zero() && self.poly_b.eval_int(r).is_zero())
    }
}

/// Symbolically contracts the generic row vector with the initial vector.
pub fn derive_closed_form(v: &LaurentVector) -> Result<ClosedFormCount> {
    let s = require_initial(v)?;
    let spec = *v.spec();
    let x = v.coeffs();

    // Weight of d_k in the contraction: w_k = Σ_{n≥k} X[n]·C(n−1,k−1)/2^(n−1).
    let weights: Vec<BigRational> = (1..=s as i64)
        .map(|k| {
            (k..=s as i64)
                .map(|n| {
                    &x[(n - 1) as usize]
                        * BigRational::new(binomial(n - 1, k - 1), int_pow(2, (n - 1) as u64))
                })
                .sum()
        })
        .collect();

    let mut poly_a = Poly::zero();
    let mut poly_b = Poly::zero();
    for (k, w) in (1..=s as i64).zip(&weights) {
        if w.is_zero() {
            continue;
        }
        // Starting the products at ℓ = 1 divides d_k by its ℓ = 0 factor 2k.
        let shift = if spec.j_init == 1 { rat(2 * k) } else { rat(1) };
        let p = k / 2;
        let factor = if k % 2 == 1 {
            // d_{2p+1} = (2j)!/j! · Π_{i=1..p}(2j+2i−1) / (2p−1)!!
            let prod = (1..=p).fold(Poly::constant(rat(1)), |acc, i| {
                &acc * &Poly::linear(rat(2), rat(2 * i - 1))
            });
            prod.scale(&(w / (int_to_rat(odd_double_factorial(p as u64)) * &shift)))
        } else {
            // d_{2p} = 4^j·j! · Π_{i=1..p−1}(j+i) / (p−1)!
            let prod = (1..p).fold(Poly::constant(rat(1)), |acc, i| {
                &acc * &Poly::linear(rat(1), rat(i))
            });
            prod.scale(&(w / (int_to_rat(factorial((p - 1) as u64)) * &shift)))
        };
        if k % 2 == 1 {
            poly_a = &poly_a + &factor;
        } else {
            poly_b = &poly_b + &factor;
        }
    }
    Ok(ClosedFormCount {
        spec,
        poly_a,
        poly_b,
    })
}

/// Both sides of the conjectured identity
///
/// ```text
/// j!·2^(ℓ+2g−1)·C(2g−2+ℓ+j, j)·₂F₁(−j, −2j; 2−2g−ℓ−j; −1)
///     = Σ_{k=1..ℓ+2g} C(ℓ+2g−1, k−1)·Π_{m=0..j−1} 2(2m+k)
/// ```
pub fn conjecture_sides(g: u32, ell: u32, j: u32) -> Result<(BigInt, BigInt)> {
    if g < 1 {
        return Err(Error::InvalidModel("the identity is stated for g >= 1".to_string()));
    }
    let (gi, li, ji) = (i64::from(g), i64::from(ell), i64::from(j));
    let width = li + 2 * gi;
    let f = terminating_pfq(&HypergeometricSpec {
        upper: [-ji, -2 * ji].into(),
        lower: [2 - 2 * gi - li - ji].into(),
        argument: rat(-1),
    })?;
    let lhs = int_to_rat(factorial(u64::from(j)) * int_pow(2, (width - 1) as u64) * binomial(2 * gi - 2 + li + ji, ji)) * f;
    let rhs: BigInt = (1..=width)
        .map(|k| binomial(width - 1, k - 1) * d_product(k as u32, j, 0))
        .sum();
    Ok((to_integer(lhs)?, rhs))
}

pub fn conjecture_check(g: u32, ell: u32, j: u32) -> bool {
    matches!(conjecture_sides(g, ell, j), Ok((l, r)) if l == r)
}
