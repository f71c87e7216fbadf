//! Cross-checks every counting route against the others, the reference
//! tables and, for small systems, the brute-force census.

use std::collections::BTreeMap;

use mapcount_core::exact::format_rational;
use mapcount_core::four_valent::tables;
use mapcount_core::hypergeometric::count_e1;
use mapcount_core::matching::DartSystem;
use mapcount_core::{BigInt, Family, LaurentVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{count, count_from_vector, CountRequest, Method};
use crate::error::Result;
use crate::sweep::parallel_census;

/// Values one tuple got from each source, keyed by source name. Failures are
/// kept as `error: …` so they show up as disagreements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TupleResult {
    pub family: String,
    pub genus: u32,
    pub j: u32,
    pub values: BTreeMap<String, String>,
    pub agree: bool,
}

impl TupleResult {
    fn new(family: Family, genus: u32, j: u32, values: BTreeMap<String, String>) -> Self {
        let agree = !values.values().any(|v| v.starts_with("error"))
            && values.values().collect::<std::collections::BTreeSet<_>>().len() <= 1;
        TupleResult {
            family: family.tag().to_string(),
            genus,
            j,
            values,
            agree,
        }
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{} g={} j={}: {}", self.family, self.genus, self.j, parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusResult {
    pub family: String,
    pub j: u32,
    pub darts: usize,
    pub skipped: bool,
    /// Per genus: census count and analytic count.
    pub genera: BTreeMap<u32, (u64, String)>,
    pub agree: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub tuples: Vec<TupleResult>,
    pub census: Vec<CensusResult>,
}

impl VerifyReport {
    pub fn all_agree(&self) -> bool {
        self.tuples.iter().all(|t| t.agree) && self.census.iter().all(|c| c.agree)
    }

    pub fn first_mismatch(&self) -> Option<String> {
        if let Some(t) = self.tuples.iter().find(|t| !t.agree) {
            return Some(t.describe());
        }
        self.census.iter().find(|c| !c.agree).map(|c| {
            let bad: Vec<String> = c
                .genera
                .iter()
                .filter(|(_, (n, a))| n.to_string() != *a)
                .map(|(g, (n, a))| format!("g={g} census={n} analytic={a}"))
                .collect();
            format!("census {} j={}: {}", c.family, c.j, bad.join(" "))
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        // One line per (family, genus) block of consecutive tuples.
        let mut i = 0;
        while i < self.tuples.len() {
            let first = &self.tuples[i];
            let mut k = i;
            while k + 1 < self.tuples.len()
                && self.tuples[k + 1].family == first.family
                && self.tuples[k + 1].genus == first.genus
            {
                k += 1;
            }
            let block = &self.tuples[i..=k];
            let sources: Vec<&str> = first.values.keys().map(String::as_str).collect();
            let bad = block.iter().filter(|t| !t.agree).count();
            let status = if bad == 0 {
                "agree".to_string()
            } else {
                format!("{bad} MISMATCHES")
            };
            out.push_str(&format!(
                "{} g={} j={}..{}: {} ({})\n",
                first.family,
                first.genus,
                first.j,
                self.tuples[k].j,
                status,
                sources.join(", ")
            ));
            for t in block.iter().filter(|t| !t.agree) {
                out.push_str(&format!("  {}\n", t.describe()));
            }
            i = k + 1;
        }
        for c in &self.census {
            if c.skipped {
                out.push_str(&format!(
                    "census {} j={}: skipped ({} darts over the limit)\n",
                    c.family, c.j, c.darts
                ));
            } else {
                let genera: Vec<String> = c.genera.iter().map(|(g, (n, _))| format!("g{g}={n}")).collect();
                let status = if c.agree { "agree" } else { "MISMATCH" };
                out.push_str(&format!(
                    "census {} j={}: {} ({})\n",
                    c.family,
                    c.j,
                    status,
                    genera.join(" ")
                ));
            }
        }
        let census_runs = self.census.iter().filter(|c| !c.skipped).count();
        let verdict = if self.all_agree() { "all agree" } else { "MISMATCH" };
        out.push_str(&format!(
            "{} tuples, {} census runs: {}\n",
            self.tuples.len(),
            census_runs,
            verdict
        ));
        out
    }
}

fn render(value: Result<BigInt>) -> String {
    match value {
        Ok(n) => n.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn table_value(family: Family, genus: u32, j: u32) -> Option<String> {
    tables::table_count(family, genus, j).map(|q| format_rational(&q))
}

/// Every source for one tuple of the vector `v`.
fn vector_sources(v: &LaurentVector, j: u32) -> BTreeMap<String, String> {
    let spec = v.spec();
    let mut values = BTreeMap::new();
    for m in Method::CONCRETE {
        if m == Method::Fourvalent && !(spec.nu == 2 && spec.fast_path_valid()) {
            continue;
        }
        values.insert(m.to_string(), render(count_from_vector(v, m, j)));
    }
    if spec.nu == 2 {
        if let Some(t) = table_value(spec.family, spec.genus, j) {
            values.insert("table".to_string(), t);
        }
    }
    values
}

/// Verifies the embedded ν = 2 data for `g ≤ gmax`, `1 ≤ j ≤ jmax`.
pub fn verify_builtin(gmax: u32, jmax: u32, census_limit: Option<usize>) -> Result<VerifyReport> {
    let mut grid = Vec::new();
    for family in Family::ALL {
        for g in 1..=gmax.min(7) {
            for j in 1..=jmax {
                grid.push((family, g, j));
            }
        }
    }
    let tuples = grid
        .par_iter()
        .map(|&(family, g, j)| {
            let values = if family == Family::Regular && g == 1 {
                let mut values = BTreeMap::new();
                values.insert(Method::Hypergeom.to_string(), render(count_e1(2, j).map_err(Into::into)));
                values.insert("table".to_string(), tables::regular_genus_one(j).to_string());
                values
            } else {
                match mapcount_core::load_builtin(family, g) {
                    Ok(v) => vector_sources(&v, j),
                    Err(e) => BTreeMap::from([("load".to_string(), format!("error: {e}"))]),
                }
            };
            TupleResult::new(family, g, j, values)
        })
        .collect();
    let census = match census_limit {
        Some(limit) => census_checks(gmax, jmax, limit)?,
        None => Vec::new(),
    };
    Ok(VerifyReport { tuples, census })
}

/// Verifies an imported vector for `1 ≤ j ≤ jmax`.
pub fn verify_vector(v: &LaurentVector, jmax: u32) -> VerifyReport {
    let spec = v.spec();
    let tuples = (1..=jmax)
        .into_par_iter()
        .map(|j| TupleResult::new(spec.family, spec.genus, j, vector_sources(v, j)))
        .collect();
    VerifyReport {
        tuples,
        census: Vec::new(),
    }
}

fn census_checks(gmax: u32, jmax: u32, limit: usize) -> Result<Vec<CensusResult>> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for j in 1..=jmax {
            let system = DartSystem::new(2, j, family)?;
            let darts = system.dart_count();
            if darts > limit {
                out.push(CensusResult {
                    family: family.tag().to_string(),
                    j,
                    darts,
                    skipped: true,
                    genera: BTreeMap::new(),
                    agree: true,
                });
                continue;
            }
            let c = parallel_census(&system, limit)?;
            let lowest = if family == Family::TwoLegged { 0 } else { 1 };
            let mut genera = BTreeMap::new();
            for g in lowest..=gmax.min(7) {
                let req = CountRequest {
                    family,
                    nu: 2,
                    genus: g,
                    vertices: j,
                };
                genera.insert(g, (c.connected(g), render(count(&req, Method::Auto, None))));
            }
            let agree = genera.values().all(|(n, a)| n.to_string() == *a);
            out.push(CensusResult {
                family: family.tag().to_string(),
                j,
                darts,
                skipped: false,
                genera,
                agree,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mapcount_core::matching::DEFAULT_DART_LIMIT;
    use mapcount_core::{BigRational, ModelSpec};

    #[test]
    fn small_grid_agrees() {
        let report = verify_builtin(2, 4, Some(DEFAULT_DART_LIMIT)).unwrap();
        assert!(report.all_agree(), "{}", report.to_text());
        assert_eq!(report.tuples.len(), 16);
        assert!(report.census.iter().any(|c| c.skipped));
        assert!(report.to_text().ends_with("all agree\n"));
    }

    #[test]
    fn corrupted_vector_is_reported() {
        let v = mapcount_core::load_builtin(Family::TwoLegged, 2).unwrap();
        let mut coeffs = v.natural_coeffs();
        coeffs[4] += BigRational::from_integer(1.into());
        let spec = ModelSpec::four_valent(Family::TwoLegged, 2).unwrap();
        let bad = LaurentVector::from_natural(spec, 0, coeffs).unwrap();
        let report = verify_vector(&bad, 5);
        assert!(!report.all_agree());
        assert!(report.first_mismatch().unwrap().starts_with("z g=2 j="));
    }

    #[test]
    fn general_nu_vector_skips_the_fast_path() {
        let spec = ModelSpec::new(Family::TwoLegged, 3, 1).unwrap();
        let v = LaurentVector::zero(spec, 0).unwrap();
        let report = verify_vector(&v, 3);
        assert!(report.all_agree());
        assert!(!report.tuples[0].values.contains_key("fourvalent"));
    }
}
