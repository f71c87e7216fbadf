//! Partial-fraction coefficient vectors and the embedded 4-valent data.
//!
//! A [`LaurentVector`] at derivative order `d` lists the coefficients of
//! `(ν − (ν−1)·z₀)^(−p)` for consecutive powers `p`, starting at
//! `base_power`. Two canonical layouts are used:
//!
//! * **band** (ν = 2): powers `2d+1 ..= 2d+s`, exactly `s` entries, with zero
//!   padding on the left while `d` is below `j₀`;
//! * **natural** (every other case): powers from the natural base `β+d`
//!   (`β−1` for the regular family at order 0) through `α+d+1` entries.
//!
//! Constructors accept any window whose entries outside the natural range are
//! zero and normalise it to the canonical layout, so structural equality of
//! vectors is equality of the represented functions.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::{c_nu, parse_rational};
use crate::{Error, Result};

/// Map family: maps with two extra 1-valent legs (`z`) or without (`e`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    TwoLegged,
    Regular,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::TwoLegged, Family::Regular];

    pub fn tag(self) -> &'static str {
        match self {
            Family::TwoLegged => "z",
            Family::Regular => "e",
        }
    }

    /// Smallest genus covered by the 4-valent fast path.
    pub fn min_fast_genus(self) -> u32 {
        match self {
            Family::TwoLegged => 1,
            Family::Regular => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z" => Ok(Family::TwoLegged),
            "e" => Ok(Family::Regular),
            other => Err(Error::InvalidModel(format!(
                "unknown family {other:?} (expected \"z\" or \"e\")"
            ))),
        }
    }
}

/// A (family, ν, g) triple with its derived structural parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModelSpec {
    pub family: Family,
    pub nu: u32,
    pub genus: u32,
    pub alpha: i64,
    pub beta: i64,
    /// Derivative order `j_G` at which the initial vector lives.
    pub j_init: i64,
    /// `j₀ = β − 1`.
    pub j_zero: i64,
    /// Band length `s = α + β`, meaningful only for ν = 2.
    pub band_len: Option<usize>,
}

impl ModelSpec {
    pub fn new(family: Family, nu: u32, genus: u32) -> Result<Self> {
        if nu < 2 {
            return Err(Error::InvalidModel(format!("nu must be at least 2, got {nu}")));
        }
        if genus < 1 {
            return Err(Error::InvalidModel("genus must be at least 1".to_string()));
        }
        let g = i64::from(genus);
        let (alpha, beta, j_init) = match family {
            Family::TwoLegged => (3 * g - 1, 2 * g, 0),
            Family::Regular => (3 * g - 4, 2 * g - 1, 1),
        };
        let band_len = (nu == 2).then(|| (alpha + beta) as usize);
        Ok(ModelSpec {
            family,
            nu,
            genus,
            alpha,
            beta,
            j_init,
            j_zero: beta - 1,
            band_len,
        })
    }

    /// Shorthand for the ν = 2 specs backed by embedded data.
    pub fn four_valent(family: Family, genus: u32) -> Result<Self> {
        ModelSpec::new(family, 2, genus)
    }

    /// Whether the vector machinery applies (`j_G ≤ j₀`).
    pub fn fast_path_valid(&self) -> bool {
        self.j_init <= self.j_zero
    }

    pub fn c_nu(&self) -> BigInt {
        c_nu(self.nu)
    }

    /// The regular family at order 0 uses the plain expansion of `e_g`.
    pub fn is_plain_order(&self, deriv: u32) -> bool {
        self.family == Family::Regular && deriv == 0
    }

    /// First power of the natural (unpadded) layout at order `deriv`.
    pub fn natural_base(&self, deriv: u32) -> i64 {
        if self.is_plain_order(deriv) {
            self.beta - 1
        } else {
            self.beta + i64::from(deriv)
        }
    }

    /// Number of entries of the natural layout at order `deriv`.
    pub fn natural_len(&self, deriv: u32) -> usize {
        if self.is_plain_order(deriv) {
            (self.alpha + 2) as usize
        } else {
            (self.alpha + i64::from(deriv) + 1) as usize
        }
    }

    /// Whether vectors at order `deriv` use the fixed-length band layout.
    pub fn uses_band(&self, deriv: u32) -> bool {
        self.band_len.is_some() && !self.is_plain_order(deriv)
    }

    /// Canonical `(first power, length)` window for vectors at order `deriv`.
    pub fn canonical_window(&self, deriv: u32) -> (i64, usize) {
        match self.band_len {
            Some(s) if self.uses_band(deriv) => (2 * i64::from(deriv) + 1, s),
            _ => (self.natural_base(deriv), self.natural_len(deriv)),
        }
    }

    fn check_vector_domain(&self, deriv: u32) -> Result<()> {
        if !self.fast_path_valid() {
            return Err(Error::InvalidModel(format!(
                "{} family at genus {} has j_G = {} > j0 = {}; use the dedicated genus-1 formula",
                self.family, self.genus, self.j_init, self.j_zero
            )));
        }
        if i64::from(deriv) < self.j_init && !self.is_plain_order(deriv) {
            return Err(Error::InvalidModel(format!(
                "derivative order {deriv} is below j_G = {}",
                self.j_init
            )));
        }
        Ok(())
    }
}

/// Exact coefficient vector of a partial-fraction expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentVector {
    spec: ModelSpec,
    deriv_order: u32,
    base_power: i64,
    coeffs: Vec<BigRational>,
}

impl LaurentVector {
    /// Builds a vector from an arbitrary window starting at `base_power`.
    ///
    /// Entries outside the natural range for `deriv_order` must be zero. The
    /// result is normalised to the canonical layout.
    pub fn from_parts(
        spec: ModelSpec,
        deriv_order: u32,
        base_power: i64,
        coeffs: Vec<BigRational>,
    ) -> Result<Self> {
        spec.check_vector_domain(deriv_order)?;
        if coeffs.is_empty() {
            return Err(Error::EmptyVector);
        }
        // Nonzero entries must lie in both the natural and the canonical window.
        let (band_lo, band_len) = spec.canonical_window(deriv_order);
        let lo = spec.natural_base(deriv_order).max(band_lo);
        let hi = (spec.natural_base(deriv_order) + spec.natural_len(deriv_order) as i64)
            .min(band_lo + band_len as i64)
            - 1;
        for (i, c) in coeffs.iter().enumerate() {
            let p = base_power + i as i64;
            if !c.is_zero() && (p < lo || p > hi) {
                return Err(Error::InvalidModel(format!(
                    "nonzero coefficient at power {p}, outside {lo}..={hi} for order {deriv_order}"
                )));
            }
        }
        let raw = LaurentVector {
            spec,
            deriv_order,
            base_power,
            coeffs,
        };
        let (base, len) = spec.canonical_window(deriv_order);
        Ok(raw.rewindow(base, len))
    }

    /// Builds a vector from its natural (unpadded) coefficients.
    ///
    /// Shorter input is zero-extended at the high end; longer input is an
    /// error.
    pub fn from_natural(spec: ModelSpec, deriv_order: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        spec.check_vector_domain(deriv_order)?;
        let max = spec.natural_len(deriv_order);
        if coeffs.len() > max {
            return Err(Error::TooManyCoefficients {
                len: coeffs.len(),
                max,
            });
        }
        LaurentVector::from_parts(spec, deriv_order, spec.natural_base(deriv_order), coeffs)
    }

    pub fn zero(spec: ModelSpec, deriv_order: u32) -> Result<Self> {
        let n = spec.natural_len(deriv_order);
        LaurentVector::from_natural(spec, deriv_order, vec![BigRational::zero(); n])
    }

    /// Builds a vector already in canonical layout; used by the step maps.
    pub(crate) fn from_canonical(
        spec: ModelSpec,
        deriv_order: u32,
        base_power: i64,
        coeffs: Vec<BigRational>,
    ) -> Self {
        let v = LaurentVector {
            spec,
            deriv_order,
            base_power,
            coeffs,
        };
        debug_assert_eq!(
            spec.canonical_window(deriv_order),
            (v.base_power, v.coeffs.len())
        );
        v
    }

    /// Re-expresses the same function over powers `base ..base+len`.
    /// Callers guarantee no nonzero entry falls outside.
    fn rewindow(self, base: i64, len: usize) -> Self {
        let coeffs = (0..len)
            .map(|i| self.coeff_at(base + i as i64))
            .collect();
        LaurentVector {
            spec: self.spec,
            deriv_order: self.deriv_order,
            base_power: base,
            coeffs,
        }
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn deriv_order(&self) -> u32 {
        self.deriv_order
    }

    pub fn base_power(&self) -> i64 {
        self.base_power
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `(ν − (ν−1)z₀)^(−power)`; zero outside the window.
    pub fn coeff_at(&self, power: i64) -> BigRational {
        usize::try_from(power - self.base_power)
            .ok()
            .and_then(|i| self.coeffs.get(i))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Value at `z₀ = 1`, where every power of `ν − (ν−1)z₀` equals one.
    pub fn sum(&self) -> BigRational {
        self.coeffs.iter().sum()
    }

    pub fn is_band(&self) -> bool {
        self.spec.uses_band(self.deriv_order)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn leading_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Coefficients over the natural window, starting at
    /// [`ModelSpec::natural_base`].
    pub fn natural_coeffs(&self) -> Vec<BigRational> {
        let base = self.spec.natural_base(self.deriv_order);
        (0..self.spec.natural_len(self.deriv_order))
            .map(|i| self.coeff_at(base + i as i64))
            .collect()
    }

    /// Entry-wise `self + k·other`; both must describe the same order.
    pub fn add_scaled(&self, k: &BigRational, other: &LaurentVector) -> Result<Self> {
        if self.spec != other.spec || self.deriv_order != other.deriv_order {
            return Err(Error::InvalidModel("vectors describe different models".to_string()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + k * b)
            .collect();
        Ok(LaurentVector::from_canonical(
            self.spec,
            self.deriv_order,
            self.base_power,
            coeffs,
        ))
    }
}

const BUILTIN_DATA: &str = include_str!("../data/initial_vectors.txt");

/// Raw text of the embedded initial vectors.
pub fn builtin_source() -> &'static str {
    BUILTIN_DATA
}

/// Genera with embedded data for `family`.
pub fn builtin_genera(family: Family) -> core::ops::RangeInclusive<u32> {
    family.min_fast_genus()..=7
}

/// Loads the embedded ν = 2 initial vector for `(family, genus)`.
///
/// Two-legged vectors sit at order 0 and regular vectors at order 1, both in
/// band layout.
pub fn load_builtin(family: Family, genus: u32) -> Result<LaurentVector> {
    let missing = || Error::NoBuiltinData { family, genus };
    let key = format!("{} {}:", family.tag(), genus);
    let line = BUILTIN_DATA
        .lines()
        .find(|l| l.starts_with(&key))
        .ok_or_else(missing)?;
    let coeffs = line[key.len()..]
        .split_whitespace()
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    let spec = ModelSpec::four_valent(family, genus)?;
    let d = spec.j_init as u32;
    if Some(coeffs.len()) != spec.band_len {
        return Err(Error::InvalidModel(format!(
            "embedded vector {family}{genus} has {} entries",
            coeffs.len()
        )));
    }
    LaurentVector::from_parts(spec, d, 2 * i64::from(d) + 1, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_traits::Signed;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn spec_parameters() {
        let z = ModelSpec::new(Family::TwoLegged, 2, 3).unwrap();
        assert_eq!((z.alpha, z.beta, z.j_init, z.j_zero, z.band_len), (8, 6, 0, 5, Some(14)));
        let e = ModelSpec::new(Family::Regular, 3, 2).unwrap();
        assert_eq!((e.alpha, e.beta, e.j_init, e.j_zero, e.band_len), (2, 3, 1, 2, None));
        assert!(!ModelSpec::new(Family::Regular, 2, 1).unwrap().fast_path_valid());
        assert!(ModelSpec::new(Family::TwoLegged, 1, 1).is_err());
        assert!(ModelSpec::new(Family::TwoLegged, 2, 0).is_err());
    }

    #[test]
    fn builtin_examples() {
        let v = load_builtin(Family::TwoLegged, 1).unwrap();
        assert_eq!(v.coeffs(), &[rat(0), q("2/3"), q("-4/3"), q("2/3")]);
        let v = load_builtin(Family::TwoLegged, 2).unwrap();
        let expect: Vec<_> = ["0", "0", "0", "-14", "700/9", "-1540/9", "560/3", "-910/9", "196/9"]
            .iter()
            .map(|s| q(s))
            .collect();
        assert_eq!(v.coeffs(), &expect[..]);
        let v = load_builtin(Family::Regular, 2).unwrap();
        assert_eq!(v.coeffs(), &[rat(0), q("-13/3"), rat(18), rat(-23), q("28/3")]);
        assert_eq!(v.deriv_order(), 1);
        assert_eq!(v.base_power(), 3);
    }

    #[test]
    fn missing_builtins() {
        assert_eq!(
            load_builtin(Family::Regular, 1),
            Err(Error::NoBuiltinData { family: Family::Regular, genus: 1 })
        );
        assert!(load_builtin(Family::TwoLegged, 8).is_err());
        assert!(load_builtin(Family::TwoLegged, 0).is_err());
    }

    #[test]
    fn builtin_shape_invariants() {
        for family in Family::ALL {
            for g in builtin_genera(family) {
                let v = load_builtin(family, g).unwrap();
                let s = v.spec();
                assert_eq!(Some(v.len()), s.band_len);
                let expected_len = match family {
                    Family::TwoLegged => 5 * g - 1,
                    Family::Regular => 5 * g - 5,
                };
                assert_eq!(v.len(), expected_len as usize);
                assert_eq!(v.leading_zeros() as i64, s.j_zero - s.j_init);
                assert!(v.coeffs().last().unwrap().is_positive());
                assert_eq!(v.natural_coeffs().len(), s.natural_len(v.deriv_order()));
            }
        }
    }

    #[test]
    fn natural_and_band_layouts_agree() {
        let band = load_builtin(Family::TwoLegged, 2).unwrap();
        let natural = band.natural_coeffs();
        assert_eq!(natural.len(), 6);
        assert_eq!(natural[0], rat(-14));
        let rebuilt = LaurentVector::from_natural(*band.spec(), 0, natural).unwrap();
        assert_eq!(rebuilt, band);
    }

    #[test]
    fn rejects_bad_windows() {
        let spec = ModelSpec::four_valent(Family::TwoLegged, 1).unwrap();
        assert_eq!(
            LaurentVector::from_natural(spec, 0, vec![rat(1); 4]),
            Err(Error::TooManyCoefficients { len: 4, max: 3 })
        );
        assert_eq!(LaurentVector::from_natural(spec, 0, vec![]), Err(Error::EmptyVector));
        assert!(LaurentVector::from_parts(spec, 0, 1, vec![rat(1)]).is_err());
        let e1 = ModelSpec::four_valent(Family::Regular, 1).unwrap();
        assert!(LaurentVector::from_natural(e1, 1, vec![rat(1)]).is_err());
    }

    #[test]
    fn general_nu_keeps_natural_layout() {
        let spec = ModelSpec::new(Family::TwoLegged, 3, 1).unwrap();
        let v = LaurentVector::from_natural(spec, 0, vec![rat(1), rat(2)]).unwrap();
        assert_eq!(v.base_power(), 2);
        assert_eq!(v.len(), 3);
        assert_eq!(v.sum(), rat(3));
    }

    #[test]
    fn family_round_trips_through_text() {
        for family in Family::ALL {
            assert_eq!(family.tag().parse::<Family>().unwrap(), family);
        }
        assert!("x".parse::<Family>().is_err());
    }
}
