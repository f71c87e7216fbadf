//! Choosing a counting route for a `(family, ν, g, j)` request.

use std::fmt;

use clap::ValueEnum;
use mapcount_core::coefficients::load_builtin;
use mapcount_core::four_valent::count_contraction;
use mapcount_core::hypergeometric::{count_e1, count_e_hg, count_z_hg};
use mapcount_core::recurrence::{count_recurrence, invert_step};
use mapcount_core::series::{count_series, planar_two_legged_count};
use mapcount_core::{BigInt, Family, LaurentVector};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Method {
    Auto,
    Recurrence,
    Fourvalent,
    Hypergeom,
    Series,
}

impl Method {
    /// The concrete routes, in report order.
    pub const CONCRETE: [Method; 4] = [
        Method::Recurrence,
        Method::Fourvalent,
        Method::Hypergeom,
        Method::Series,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Recurrence => "recurrence",
            Method::Fourvalent => "fourvalent",
            Method::Hypergeom => "hypergeom",
            Method::Series => "series",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountRequest {
    pub family: Family,
    pub nu: u32,
    pub genus: u32,
    pub vertices: u32,
}

/// The initial vector for a request: the imported one if given, else the
/// embedded ν = 2 data.
pub fn initial_vector(req: &CountRequest, imported: Option<&LaurentVector>) -> Result<LaurentVector> {
    if let Some(v) = imported {
        let s = v.spec();
        if (s.family, s.nu, s.genus) != (req.family, req.nu, req.genus) {
            return Err(CliError::Usage(format!(
                "coefficient file describes {} nu={} genus {}, but {} nu={} genus {} was requested",
                s.family, s.nu, s.genus, req.family, req.nu, req.genus
            )));
        }
        return Ok(v.clone());
    }
    if req.nu != 2 {
        return Err(CliError::Usage(format!(
            "no embedded coefficients for nu = {}; import a vector with --coeffs FILE",
            req.nu
        )));
    }
    load_builtin(req.family, req.genus).map_err(|e| {
        CliError::Usage(format!("{e}; import a vector with --coeffs FILE"))
    })
}

/// Steps a vector back to derivative order 0.
pub fn order_zero(v: &LaurentVector) -> mapcount_core::Result<LaurentVector> {
    let mut v = v.clone();
    while v.deriv_order() > 0 {
        v = invert_step(&v)?;
    }
    Ok(v)
}

/// Count from an initial vector by one concrete method.
pub fn count_from_vector(v: &LaurentVector, method: Method, j: u32) -> Result<BigInt> {
    let n = match method {
        Method::Recurrence => count_recurrence(v, j)?,
        Method::Fourvalent => count_contraction(v, j)?,
        Method::Series => count_series(v, j)?,
        Method::Hypergeom => {
            let base = order_zero(v)?;
            match v.spec().family {
                Family::TwoLegged => count_z_hg(&base, j)?,
                Family::Regular => count_e_hg(&base, j)?,
            }
        }
        Method::Auto => count_from_vector(v, auto_method(v), j)?,
    };
    Ok(n)
}

fn auto_method(v: &LaurentVector) -> Method {
    if v.spec().nu == 2 && v.spec().fast_path_valid() {
        Method::Fourvalent
    } else {
        Method::Hypergeom
    }
}

/// Full `count` dispatch, including the genera without initial vectors.
pub fn count(req: &CountRequest, method: Method, imported: Option<&LaurentVector>) -> Result<BigInt> {
    if req.nu < 2 {
        return Err(CliError::Usage(format!("nu must be at least 2, got {}", req.nu)));
    }
    match (req.family, req.genus) {
        (Family::Regular, 0) => Err(CliError::Usage(
            "planar regular maps are not covered; use the census for small cases".into(),
        )),
        (Family::TwoLegged, 0) => match method {
            Method::Auto | Method::Series => Ok(planar_two_legged_count(req.nu, req.vertices)),
            other => Err(CliError::Usage(format!(
                "planar two-legged maps are counted from the string equation alone; \
                 method {other} needs an initial vector (use auto or series)"
            ))),
        },
        (Family::Regular, 1) => match method {
            Method::Auto | Method::Hypergeom => Ok(count_e1(req.nu, req.vertices)?),
            other => Err(CliError::Usage(format!(
                "regular genus-1 maps have no initial vector for method {other}; they are \
                 counted by the separate 3F2 formula (use auto or hypergeom)"
            ))),
        },
        _ => {
            let v = initial_vector(req, imported)?;
            count_from_vector(&v, method, req.vertices)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(family: Family, genus: u32, vertices: u32) -> CountRequest {
        CountRequest {
            family,
            nu: 2,
            genus,
            vertices,
        }
    }

    #[test]
    fn examples() {
        let one = count(&req(Family::Regular, 1, 1), Method::Auto, None).unwrap();
        assert_eq!(one, BigInt::from(1));
        for m in Method::CONCRETE {
            assert_eq!(count(&req(Family::TwoLegged, 1, 2), m, None).unwrap(), BigInt::from(192));
            assert_eq!(count(&req(Family::TwoLegged, 2, 3), m, None).unwrap(), BigInt::from(0));
        }
        assert_eq!(count(&req(Family::TwoLegged, 0, 1), Method::Auto, None).unwrap(), BigInt::from(12));
    }

    #[test]
    fn out_of_domain_requests_are_usage_errors() {
        let err = count(&req(Family::Regular, 1, 2), Method::Fourvalent, None).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("3F2"));
        let err = count(&req(Family::TwoLegged, 8, 2), Method::Auto, None).unwrap_err();
        assert!(err.to_string().contains("--coeffs"));
        let mut six = req(Family::TwoLegged, 1, 2);
        six.nu = 3;
        assert!(count(&six, Method::Recurrence, None).is_err());
    }

    #[test]
    fn imported_vector_must_match_request() {
        let v = load_builtin(Family::TwoLegged, 2).unwrap();
        assert!(count(&req(Family::TwoLegged, 3, 2), Method::Auto, Some(&v)).is_err());
        assert_eq!(
            count(&req(Family::TwoLegged, 2, 4), Method::Recurrence, Some(&v)).unwrap(),
            count(&req(Family::TwoLegged, 2, 4), Method::Recurrence, None).unwrap()
        );
    }
}
