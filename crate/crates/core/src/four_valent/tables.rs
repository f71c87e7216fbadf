//! Reference closed forms for the 4-valent counts, kept as literal data.
//!
//! Each row reads
//!
//! ```text
//! 12^(j−j_G) · Π_{k=lo..=hi} (j−k) · ( A(j)·(2j)!/j! + B(j)·4^(j−j_G)·j! )
//! ```
//!
//! with `A` and `B` given by descending coefficient lists. These rows are used
//! only as golden values; the derived forms in the parent module never read
//! them. The regular genus-1 count has no polynomial form and is evaluated
//! here by a direct ₃F₂ summation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coefficients::Family;
use crate::exact::{binomial, factorial, int_pow, int_to_rat, parse_rational, range_product, rat};
use crate::poly::Poly;

/// One literal table row.
#[derive(Debug, Clone, Copy)]
pub struct TableRow {
    pub family: Family,
    pub genus: u32,
    /// Roots `lo..=hi` of the product prefactor.
    pub roots: (i64, i64),
    /// Coefficients of the `(2j)!/j!` polynomial, highest degree first.
    pub a: &'static [&'static str],
    /// Coefficients of the `4^j·j!` polynomial, highest degree first.
    pub b: &'static [&'static str],
}

pub const TWO_LEGGED: [TableRow; 7] = [
    TableRow { family: Family::TwoLegged, genus: 1, roots: (0, 0), a: &["-1/6"], b: &["1/12"] },
    TableRow {
        family: Family::TwoLegged,
        genus: 2,
        roots: (0, 2),
        a: &["14/1080", "21/1080"],
        b: &["-7/384"],
    },
    TableRow {
        family: Family::TwoLegged,
        genus: 3,
        roots: (0, 4),
        a: &["-484/136080", "-279/136080"],
        b: &["245/497664", "12041/4976640"],
    },
    TableRow {
        family: Family::TwoLegged,
        genus: 4,
        roots: (0, 6),
        a: &["37079/750578400", "6067121/10508097600", "127/604800"],
        b: &["-7805/47775744", "-1699447/6688604160"],
    },
    TableRow {
        family: Family::TwoLegged,
        genus: 5,
        roots: (0, 8),
        a: &["-491951/25519665600", "-1849339/25519665600", "-73/3421440"],
        b: &["38213/27518828544", "1702225/55037657088", "482999/20384317440"],
    },
    TableRow {
        family: Family::TwoLegged,
        genus: 6,
        roots: (0, 10),
        a: &[
            "5004682489/45165980162160000",
            "389578665043/92213876164410000",
            "69512878587263/8852532111783360000",
            "1414477/653837184000",
        ],
        b: &[
            "-54362497/87179648827392",
            "-381046393/87179648827392",
            "-43567716553/20341918059724800",
        ],
    },
    TableRow {
        family: Family::TwoLegged,
        genus: 7,
        roots: (0, 12),
        a: &[
            "-953637649/16937242560810000",
            "-335779266491/491807339543520000",
            "-20962080883129/26557596335350080000",
            "-8191/37362124800",
        ],
        b: &[
            "6334396069/2448004539073167360",
            "2801562779/18133366956097536",
            "5032281513503/9792018156292669440",
            "46115735865131/228480423646828953600",
        ],
    },
];

pub const REGULAR: [TableRow; 6] = [
    TableRow { family: Family::Regular, genus: 2, roots: (1, 1), a: &["7/90", "1/40"], b: &["-13/48"] },
    TableRow {
        family: Family::Regular,
        genus: 3,
        roots: (1, 3),
        a: &["-337/22680", "-1/1008"],
        b: &["245/20736", "781/41472"],
    },
    TableRow {
        family: Family::Regular,
        genus: 4,
        roots: (1, 5),
        a: &["37079/125096400", "86356/54729675", "1/28800"],
        b: &["-5845/1990656", "-23297/39813120"],
    },
    TableRow {
        family: Family::Regular,
        genus: 5,
        roots: (1, 7),
        a: &["-211033/2319969600", "-8139013/71455063680", "-1/887040"],
        b: &["38213/1146617856", "915313/2293235712", "-1940327/53508833280"],
    },
    TableRow {
        family: Family::Regular,
        genus: 6,
        roots: (1, 9),
        a: &[
            "5004682489/7527663360360000",
            "7523688218141/491807339543520000",
            "20903746897/3944978659440000",
            "691/19813248000",
        ],
        b: &[
            "-44274265/3632485367808",
            "-135152437/3632485367808",
            "522404797/77052719923200",
        ],
    },
    TableRow {
        family: Family::Regular,
        genus: 7,
        roots: (1, 11),
        a: &[
            "-25511722279/90331960324320000",
            "-2675917530049/1475422018630560000",
            "-5035943441/69980491002240000",
            "-1/958003200",
        ],
        b: &[
            "6334396069/102000189128048640",
            "27364604401/11333354347560960",
            "988175350991/408000756512194560",
            "-358193577649/732309050150092800",
        ],
    },
];

fn descending(coeffs: &[&str]) -> Poly {
    Poly::from_ascending(
        coeffs
            .iter()
            .rev()
            .map(|c| parse_rational(c).expect("table literal"))
            .collect(),
    )
}

impl TableRow {
    pub fn j_init(&self) -> i64 {
        match self.family {
            Family::TwoLegged => 0,
            Family::Regular => 1,
        }
    }

    pub fn poly_a(&self) -> Poly {
        descending(self.a)
    }

    pub fn poly_b(&self) -> Poly {
        descending(self.b)
    }

    pub fn prefactor(&self) -> Poly {
        Poly::from_roots(self.roots.0..=self.roots.1)
    }

    /// Evaluates the row at `j ≥ j_G` as an exact rational.
    pub fn eval(&self, j: u32) -> BigRational {
        let jj = i64::from(j);
        let jg = self.j_init();
        assert!(jj >= jg, "table rows start at j = {jg}");
        let odd = int_to_rat(range_product(jj + 1, 2 * jj));
        let even = int_to_rat(int_pow(4, (jj - jg) as u64) * factorial(u64::from(j)));
        int_to_rat(int_pow(12, (jj - jg) as u64))
            * self.prefactor().eval_int(jj)
            * (self.poly_a().eval_int(jj) * odd + self.poly_b().eval_int(jj) * even)
    }
}

pub fn row(family: Family, genus: u32) -> Option<&'static TableRow> {
    let rows: &[TableRow] = match family {
        Family::TwoLegged => &TWO_LEGGED,
        Family::Regular => &REGULAR,
    };
    rows.iter().find(|r| r.genus == genus)
}

/// The tabulated count, or `None` if the table has no row for `(family, genus)`.
pub fn table_count(family: Family, genus: u32, j: u32) -> Option<BigRational> {
    if family == Family::Regular && genus == 1 {
        return (j >= 1).then(|| int_to_rat(regular_genus_one(j)));
    }
    row(family, genus).filter(|r| i64::from(j) >= r.j_init()).map(|r| r.eval(j))
}

/// `j!·12^(j−1)·(C(2j−1,j−1)·₃F₂(1,1,1−j;2,j+1;−1) − C(2j−1,j−2)·₃F₂(1,1,2−j;2,j+2;−1))`.
///
/// The sums are written out term by term; both terminate because `1−j` and
/// `2−j` are non-positive whenever their binomial prefactor is nonzero.
pub fn regular_genus_one(j: u32) -> BigInt {
    assert!(j >= 1, "regular genus-1 counts start at one vertex");
    let j = i64::from(j);
    // ₃F₂(1,1,1−j+t; 2,j+1+t; −1) for t = 0, 1.
    let series = |t: i64| -> BigRational {
        let top = j - 1 - t; // last index with a nonzero term
        let mut total = BigRational::zero();
        let mut term = BigRational::one();
        for m in 0..=top {
            total += &term;
            // ratio of consecutive terms: (1+m)(1+m)(1−j+t+m) / ((2+m)(j+1+t+m)(m+1)) · (−1)
            term = term * rat((1 + m) * (1 - j + t + m)) / rat((2 + m) * (j + 1 + t + m)) * rat(-1);
        }
        total
    };
    let mut bracket = int_to_rat(binomial(2 * j - 1, j - 1)) * series(0);
    let second = binomial(2 * j - 1, j - 2);
    if !second.is_zero() {
        bracket -= int_to_rat(second) * series(1);
    }
    let value = bracket * int_to_rat(factorial(j as u64) * int_pow(12, (j - 1) as u64));
    assert!(value.is_integer(), "genus-1 regular count is not an integer");
    value.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_small_values() {
        assert_eq!(table_count(Family::TwoLegged, 1, 2), Some(rat(192)));
        assert_eq!(table_count(Family::TwoLegged, 1, 3), Some(rat(62208)));
        assert_eq!(table_count(Family::TwoLegged, 2, 3), Some(rat(0)));
        assert_eq!(table_count(Family::Regular, 2, 1), Some(rat(0)));
        assert_eq!(regular_genus_one(1), BigInt::from(1));
        assert_eq!(regular_genus_one(2), BigInt::from(60));
        assert!(table_count(Family::Regular, 8, 3).is_none());
    }

    #[test]
    fn rows_are_integers() {
        for r in TWO_LEGGED.iter().chain(&REGULAR) {
            for j in 1..=20 {
                assert!(r.eval(j).is_integer(), "{}{} j={j}", r.family, r.genus);
            }
        }
    }
}
