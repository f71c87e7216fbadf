//! Grid computations behind `table`, `conjecture`, `census` and
//! `asymptotics`. Work is spread over a rayon pool; results are always
//! returned in grid order.

use mapcount_core::asymptotics::ratio_table;
use mapcount_core::four_valent::conjecture_check;
use mapcount_core::matching::{census_branch, check_limit, DartSystem, MatchingCensus};
use mapcount_core::{Family, ModelSpec};
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{count, CountRequest, Method};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub family: String,
    pub genus: u32,
    pub j: u32,
    /// Decimal digits; counts outgrow every fixed-width integer.
    pub count: String,
}

pub fn table_rows(family: Family, nu: u32, genus_max: u32, vertices_max: u32) -> Result<Vec<CountRow>> {
    let grid: Vec<(u32, u32)> = (1..=genus_max)
        .flat_map(|g| (1..=vertices_max).map(move |j| (g, j)))
        .collect();
    grid.par_iter()
        .map(|&(genus, j)| {
            let req = CountRequest {
                family,
                nu,
                genus,
                vertices: j,
            };
            let n = count(&req, Method::Auto, None)?;
            Ok(CountRow {
                family: family.tag().to_string(),
                genus,
                j,
                count: n.to_string(),
            })
        })
        .collect()
}

pub fn table_csv(rows: &[CountRow]) -> String {
    let mut out = String::from("family,genus,j,count\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.family, r.genus, r.j, r.count));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub checked: usize,
    /// Failing `(g, ℓ, j)` tuples.
    pub failures: Vec<(u32, u32, u32)>,
}

impl ConjectureReport {
    pub fn summary(&self) -> String {
        format!("{} tuples checked, {} failures", self.checked, self.failures.len())
    }
}

/// Checks the identity on `0 ≤ ℓ ≤ lmax`, `1 ≤ g ≤ gmax`, `1 ≤ j ≤ jmax`.
pub fn conjecture_sweep(lmax: u32, gmax: u32, jmax: u32) -> ConjectureReport {
    let grid: Vec<(u32, u32, u32)> = (1..=gmax)
        .flat_map(|g| (0..=lmax).flat_map(move |l| (1..=jmax).map(move |j| (g, l, j))))
        .collect();
    let failures = grid
        .par_iter()
        .filter(|&&(g, l, j)| !conjecture_check(g, l, j))
        .copied()
        .collect();
    ConjectureReport {
        checked: grid.len(),
        failures,
    }
}

/// Exhaustive census with one task per partner of dart 0.
pub fn parallel_census(system: &DartSystem, limit: usize) -> Result<MatchingCensus> {
    check_limit(system, limit)?;
    Ok((1..system.dart_count())
        .into_par_iter()
        .map(|partner| census_branch(system, partner))
        .reduce(MatchingCensus::default, |mut a, b| {
            a.merge(&b);
            a
        }))
}

pub fn census_report(system: &DartSystem, c: &MatchingCensus) -> String {
    let mut out = format!(
        "{} darts, {} matchings\n",
        system.dart_count(),
        system.matching_count()
    );
    for (g, n) in &c.by_genus {
        out.push_str(&format!("genus {g}: {n}\n"));
    }
    out.push_str(&format!("disconnected: {}\n", c.disconnected));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioCsvRow {
    pub family: String,
    pub genus: u32,
    pub j: u32,
    pub ratio: String,
}

pub fn asymptotic_rows(family: Family, genus: u32, j_list: &[u32]) -> Result<Vec<RatioCsvRow>> {
    let spec = ModelSpec::four_valent(family, genus)?;
    Ok(ratio_table(&spec, j_list)?
        .into_iter()
        .map(|r| RatioCsvRow {
            family: r.family.tag().to_string(),
            genus: r.genus,
            j: r.j,
            ratio: r.ratio.to_significant(12),
        })
        .collect())
}

pub fn asymptotic_csv(rows: &[RatioCsvRow]) -> String {
    let mut out = String::from("family,genus,j,ratio\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.family, r.genus, r.j, r.ratio));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use mapcount_core::matching::{census_system, DEFAULT_DART_LIMIT};

    #[test]
    fn small_table() {
        let rows = table_rows(Family::TwoLegged, 2, 1, 3).unwrap();
        assert_eq!(table_csv(&rows), "family,genus,j,count\nz,1,1,0\nz,1,2,192\nz,1,3,62208\n");
    }

    #[test]
    fn conjecture_grid_size() {
        assert_eq!(conjecture_sweep(0, 1, 1).summary(), "1 tuples checked, 0 failures");
        assert_eq!(conjecture_sweep(2, 2, 3).checked, 18);
    }

    #[test]
    fn parallel_census_matches_serial() {
        let sys = DartSystem::new(2, 3, Family::TwoLegged).unwrap();
        assert_eq!(
            parallel_census(&sys, DEFAULT_DART_LIMIT).unwrap(),
            census_system(&sys, DEFAULT_DART_LIMIT).unwrap()
        );
        let big = DartSystem::new(2, 5, Family::Regular).unwrap();
        assert!(parallel_census(&big, DEFAULT_DART_LIMIT).is_err());
    }

    #[test]
    fn ratio_csv() {
        let rows = asymptotic_rows(Family::TwoLegged, 1, &[32]).unwrap();
        let csv = asymptotic_csv(&rows);
        assert!(csv.starts_with("family,genus,j,ratio\nz,1,32,0.8013064925"), "{csv}");
    }
}
