//! Evolution of coefficient vectors in the derivative order.
//!
//! Differentiating `z₀^(dν+1)·Σ u_p (ν − (ν−1)z₀)^(−p)` once along the string
//! equation and dividing by `c_ν·z₀^((d+1)ν+1)` gives a vector whose entry at
//! power `p` is
//!
//! ```text
//! w_p = ν(p−2)·u_{p−2} − (p−2−ν·d)·u_{p−1}
//! ```
//!
//! which is the sub-diagonal matrix [`m_entry`] written in absolute powers.
//! The map depends only on `ν`, `d` and the window, never on the genus.
//!
//! The regular family at order 0 is stored as the plain expansion of `e_g`.
//! Its first derivative is `w_p = c_ν(ν−1)(p−2)·u_{p−2}`, which shifts every
//! power by two and brings the vector into the general form.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::coefficients::LaurentVector;
use crate::exact::{int_to_rat, rat, to_integer};
use crate::{Error, Result};

/// The rolling index `δ^(n) = n(ν−1) − β + 2` of a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepIndex {
    pub n: i64,
    pub delta: i64,
}

impl StepIndex {
    pub fn new(n: i64, nu: u32, beta: i64) -> Self {
        StepIndex {
            n,
            delta: n * (i64::from(nu) - 1) - beta + 2,
        }
    }
}

/// Entry `(k, i)` of the step matrix `M^(n)` (1-based, natural layout).
pub fn m_entry(n: i64, nu: u32, beta: i64, k: i64, i: i64) -> i64 {
    let nu = i64::from(nu);
    if i == k {
        n * (nu - 1) - (beta + k + nu - 3)
    } else if i == k - 1 {
        nu * (beta + k + n - 3)
    } else {
        0
    }
}

fn step_entry(v: &LaurentVector, p: i64) -> BigRational {
    let spec = v.spec();
    let nu = i64::from(spec.nu);
    if spec.is_plain_order(v.deriv_order()) {
        let k = int_to_rat(spec.c_nu() * (nu - 1) * (p - 2));
        return k * v.coeff_at(p - 2);
    }
    let d = i64::from(v.deriv_order());
    rat(nu * (p - 2)) * v.coeff_at(p - 2) - rat(p - 2 - nu * d) * v.coeff_at(p - 1)
}

/// The full successor of `v` before windowing: `(first power, entries)`.
///
/// In band layout the result has one more entry than the band; the first one
/// sits at the rolling index and is always zero.
pub fn successor_entries(v: &LaurentVector) -> (i64, Vec<BigRational>) {
    let lo = v.base_power() + if v.spec().is_plain_order(v.deriv_order()) { 2 } else { 1 };
    let hi = v.base_power() + v.len() as i64 + 1;
    (lo, (lo..=hi).map(|p| step_entry(v, p)).collect())
}

/// One derivative step: order `d` to order `d+1`.
pub fn advance(v: &LaurentVector) -> LaurentVector {
    let spec = *v.spec();
    let next = v.deriv_order() + 1;
    let (base, len) = spec.canonical_window(next);
    let coeffs = (0..len as i64).map(|i| step_entry(v, base + i)).collect();
    debug_assert!(step_entry(v, base - 1).is_zero());
    LaurentVector::from_canonical(spec, next, base, coeffs)
}

/// Applies [`advance`] until the vector reaches order `j`.
pub fn evolve(v: &LaurentVector, j: u32) -> Result<LaurentVector> {
    if j < v.deriv_order() {
        return Err(Error::OutOfDomain {
            j,
            reason: format!("vector already at derivative order {}", v.deriv_order()),
        });
    }
    let mut cur = v.clone();
    while cur.deriv_order() < j {
        cur = advance(&cur);
    }
    Ok(cur)
}

/// `c_ν^(j−j_G) · Σ entries` after evolving to order `j`, as a rational.
pub fn count_recurrence_exact(v: &LaurentVector, j: u32) -> Result<BigRational> {
    let spec = v.spec();
    if i64::from(j) < spec.j_init {
        return Err(Error::OutOfDomain {
            j,
            reason: format!("the {} family needs at least {} vertices", spec.family, spec.j_init),
        });
    }
    let evolved = evolve(v, j)?;
    let scale = num_traits::pow(spec.c_nu(), (i64::from(j) - spec.j_init) as usize);
    Ok(evolved.sum() * int_to_rat(scale))
}

/// Map count with `j` vertices from an initial vector, by recurrence.
///
/// A non-integer result means the coefficient data is corrupted.
pub fn count_recurrence(v: &LaurentVector, j: u32) -> Result<BigInt> {
    to_integer(count_recurrence_exact(v, j)?)
}

/// Undoes one [`advance`]: order `d` back to order `d−1`.
///
/// The bidiagonal system is solved from the highest power downwards with
/// pivots `ν(p−2)`. Whatever the solution puts below the natural window of
/// order `d−1` must vanish; otherwise `v` is not the image of any vector and
/// the step fails with [`Error::InconsistentVector`].
pub fn invert_step(v: &LaurentVector) -> Result<LaurentVector> {
    let spec = *v.spec();
    let d = v.deriv_order();
    if d == 0 || (i64::from(d) - 1 < spec.j_init && !spec.is_plain_order(d - 1)) {
        return Err(Error::OutOfDomain {
            j: d,
            reason: "no earlier derivative order to step back to".to_string(),
        });
    }
    let prev = d - 1;
    let nu = i64::from(spec.nu);
    let b = v.base_power();
    let top = b + v.len() as i64 - 1;

    // Preimage entries at powers b-2 ..= top-2.
    let mut u: Vec<BigRational> = Vec::with_capacity(v.len());
    u.resize(v.len(), BigRational::zero());
    let plain = spec.is_plain_order(prev);
    for p in (b..=top).rev() {
        let w = v.coeff_at(p);
        let idx = (p - 2 - (b - 2)) as usize;
        let (pivot, rhs) = if plain {
            (int_to_rat(spec.c_nu() * (nu - 1) * (p - 2)), w)
        } else {
            let above = u.get(idx + 1).cloned().unwrap_or_else(BigRational::zero);
            let d = i64::from(prev);
            (rat(nu * (p - 2)), w + rat(p - 2 - nu * d) * above)
        };
        if pivot.is_zero() {
            if rhs.is_zero() {
                continue;
            }
            return Err(Error::NonInvertibleStep { power: p });
        }
        u[idx] = rhs / pivot;
    }

    let natural_lo = spec.natural_base(prev);
    let natural_hi = natural_lo + spec.natural_len(prev) as i64 - 1;
    for (i, c) in u.iter().enumerate() {
        let p = b - 2 + i as i64;
        if !c.is_zero() && (p < natural_lo || p > natural_hi) {
            return Err(Error::InconsistentVector { power: p });
        }
    }
    if let Some(s) = spec.band_len.filter(|_| spec.uses_band(prev)) {
        let (lo, _) = spec.canonical_window(prev);
        if u.iter().enumerate().any(|(i, c)| {
            let p = b - 2 + i as i64;
            !c.is_zero() && (p < lo || p >= lo + s as i64)
        }) {
            return Err(Error::InconsistentVector { power: lo });
        }
    }
    LaurentVector::from_parts(spec, prev, b - 2, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{builtin_genera, load_builtin, Family, ModelSpec};
    use crate::exact::{factorial, int_pow, parse_rational};
    use num_traits::One;
    use proptest::prelude::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn matrix_entries() {
        assert_eq!(m_entry(1, 2, 2, 1, 1), -1);
        assert_eq!(m_entry(1, 2, 2, 2, 1), 4);
        assert_eq!(m_entry(1, 2, 2, 3, 1), 0);
        assert_eq!(m_entry(1, 2, 2, 1, 2), 0);
    }

    #[test]
    fn step_index_is_increasing() {
        for nu in 2..6 {
            let mut last = StepIndex::new(1, nu, 4).delta;
            for n in 2..20 {
                let next = StepIndex::new(n, nu, 4).delta;
                assert!(next > last);
                if nu == 2 {
                    assert_eq!(next, last + 1);
                }
                last = next;
            }
        }
    }

    #[test]
    fn advance_matches_step_matrices() {
        // Natural layout for ν = 3, where no band is applied.
        let spec = ModelSpec::new(Family::TwoLegged, 3, 2).unwrap();
        let coeffs: Vec<_> = (0..6).map(|i| rat(i * i - 3)).collect();
        let mut v = LaurentVector::from_natural(spec, 0, coeffs).unwrap();
        for n in 1..5i64 {
            let next = advance(&v);
            let old = v.coeffs();
            for k in 1..=next.len() as i64 {
                let mut expect = BigRational::zero();
                for i in 1..=old.len() as i64 {
                    expect += rat(m_entry(n, 3, spec.beta, k, i)) * &old[(i - 1) as usize];
                }
                assert_eq!(next.coeffs()[(k - 1) as usize], expect, "n={n} k={k}");
            }
            v = next;
        }
    }

    #[test]
    fn genus_one_two_legged_examples() {
        let v = load_builtin(Family::TwoLegged, 1).unwrap();
        let one = advance(&v);
        assert!((one.sum() * rat(12)).is_zero());
        let two = advance(&one);
        assert_eq!(two.sum() * rat(144), rat(192));
        let z = LaurentVector::zero(*v.spec(), 0).unwrap();
        assert!(advance(&z).is_zero());
    }

    #[test]
    fn count_examples() {
        let z1 = load_builtin(Family::TwoLegged, 1).unwrap();
        let z2 = load_builtin(Family::TwoLegged, 2).unwrap();
        let e2 = load_builtin(Family::Regular, 2).unwrap();
        assert_eq!(count_recurrence(&z1, 3).unwrap(), BigInt::from(62208));
        assert_eq!(count_recurrence(&z2, 3).unwrap(), BigInt::zero());
        assert_eq!(count_recurrence(&e2, 1).unwrap(), BigInt::zero());
        assert!(count_recurrence(&e2, 0).is_err());
    }

    #[test]
    fn corrupted_data_is_detected() {
        let v = load_builtin(Family::TwoLegged, 2).unwrap();
        let bump = LaurentVector::from_parts(*v.spec(), 0, 8, [q("1/1000003")].into()).unwrap();
        let bad = v.add_scaled(&BigRational::one(), &bump).unwrap();
        assert!(matches!(count_recurrence(&bad, 5), Err(Error::NonIntegerCount { .. })));
    }

    #[test]
    fn invert_is_left_inverse_on_builtins() {
        for family in Family::ALL {
            for g in builtin_genera(family) {
                let mut v = load_builtin(family, g).unwrap();
                for _ in 0..6 {
                    let next = advance(&v);
                    assert_eq!(invert_step(&next).unwrap(), v, "{family}{g}");
                    v = next;
                }
            }
        }
    }

    #[test]
    fn regular_order_zero_leading_coefficient() {
        let b0 = invert_step(&load_builtin(Family::Regular, 2).unwrap()).unwrap();
        assert_eq!(b0.deriv_order(), 0);
        assert_eq!(b0.coeffs().last().unwrap(), &q("7/45"));
        assert_eq!(advance(&b0), load_builtin(Family::Regular, 2).unwrap());
        assert!(invert_step(&b0).is_err());
    }

    #[test]
    fn inconsistent_vectors_are_rejected() {
        let v = advance(&load_builtin(Family::TwoLegged, 2).unwrap());
        let bump =
            LaurentVector::from_parts(*v.spec(), 1, 5, [rat(1)].into()).unwrap();
        let bad = v.add_scaled(&BigRational::one(), &bump).unwrap();
        assert!(matches!(invert_step(&bad), Err(Error::InconsistentVector { .. })));

        let spec = ModelSpec::new(Family::TwoLegged, 3, 1).unwrap();
        let w = advance(&LaurentVector::from_natural(spec, 0, [rat(1), rat(2), rat(5)].into()).unwrap());
        let bump = LaurentVector::from_natural(spec, 1, [rat(1)].into()).unwrap();
        let bad = w.add_scaled(&BigRational::one(), &bump).unwrap();
        assert!(matches!(invert_step(&bad), Err(Error::InconsistentVector { .. })));
    }

    #[test]
    fn band_support_is_preserved() {
        for family in Family::ALL {
            for g in builtin_genera(family) {
                let mut v = load_builtin(family, g).unwrap();
                let s = v.spec().band_len.unwrap();
                for _ in 0..20 {
                    let (lo, full) = successor_entries(&v);
                    assert_eq!(full.len(), s + 1);
                    // The slot at the rolling index is the one the band drops.
                    assert!(full[0].is_zero(), "{family}{g} at power {lo}");
                    v = advance(&v);
                    assert_eq!(v.len(), s);
                    assert_eq!(&full[1..], v.coeffs());
                }
            }
        }
    }

    #[test]
    fn two_legged_counts_are_divisible() {
        for g in builtin_genera(Family::TwoLegged) {
            let v = load_builtin(Family::TwoLegged, g).unwrap();
            for j in 1..=12u32 {
                let n = count_recurrence(&v, j).unwrap();
                let m = factorial(u64::from(j)) * int_pow(4, u64::from(j));
                assert!(crate::exact::divides(&m, &n), "g={g} j={j}");
            }
        }
    }

    fn small_rationals(len: usize) -> impl Strategy<Value = Vec<BigRational>> {
        proptest::collection::vec((-50i64..50, 1i64..12), len)
            .prop_map(|v| v.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect())
    }

    proptest! {
        #[test]
        fn advance_is_linear(a in small_rationals(6), b in small_rationals(6), k in -5i64..5) {
            let spec = ModelSpec::new(Family::TwoLegged, 3, 2).unwrap();
            let va = LaurentVector::from_natural(spec, 0, a).unwrap();
            let vb = LaurentVector::from_natural(spec, 0, b).unwrap();
            let k = rat(k);
            let lhs = advance(&va.add_scaled(&k, &vb).unwrap());
            let rhs = advance(&va).add_scaled(&k, &advance(&vb)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn invert_undoes_advance_for_general_nu(
            nu in 2u32..6, g in 1u32..4, regular in any::<bool>(), steps in 1u32..5,
            seed in small_rationals(12),
        ) {
            let family = if regular { Family::Regular } else { Family::TwoLegged };
            prop_assume!(!(regular && g == 1));
            let spec = ModelSpec::new(family, nu, g).unwrap();
            let d = spec.j_init as u32;
            let n = spec.natural_len(d);
            let v = LaurentVector::from_natural(spec, d, seed[..n.min(12)].to_vec()).unwrap();
            let mut cur = v.clone();
            for _ in 0..steps { cur = advance(&cur); }
            for _ in 0..steps { cur = invert_step(&cur).unwrap(); }
            prop_assert_eq!(cur, v);
        }
    }
}
