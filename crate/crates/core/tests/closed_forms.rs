use mapcount_core::coefficients::builtin_genera;
use mapcount_core::four_valent::{derive_closed_form, tables};
use mapcount_core::exact::int_pow;
use mapcount_core::{load_builtin, BigRational, Family};

#[test]
fn derived_forms_reproduce_the_tables() {
    for family in Family::ALL {
        for g in builtin_genera(family) {
            let derived = derive_closed_form(&load_builtin(family, g).unwrap()).unwrap();
            for j in 1..=30 {
                let table = tables::table_count(family, g, j).unwrap();
                assert_eq!(BigRational::from_integer(derived.count(j).unwrap()), table, "{family}{g} j={j}");
            }
        }
    }
}

#[test]
fn derived_polynomials_match_coefficientwise() {
    for family in Family::ALL {
        for g in builtin_genera(family) {
            let derived = derive_closed_form(&load_builtin(family, g).unwrap()).unwrap();
            let row = tables::row(family, g).unwrap();
            let prefactor = row.prefactor();
            let shift = BigRational::new(1.into(), int_pow(4, row.j_init() as u64));
            assert_eq!(derived.poly_a, &prefactor * &row.poly_a(), "{family}{g} A");
            assert_eq!(derived.poly_b, (&prefactor * &row.poly_b()).scale(&shift), "{family}{g} B");
        }
    }
}

#[test]
fn derived_forms_vanish_where_euler_forbids() {
    for family in Family::ALL {
        for g in builtin_genera(family) {
            let derived = derive_closed_form(&load_builtin(family, g).unwrap()).unwrap();
            assert!(derived.has_forbidden_roots(), "{family}{g}");
        }
    }
}
