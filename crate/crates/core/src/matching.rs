//! Exhaustive dart-matching census.
//!
//! Darts are numbered `0..n`. Vertex `v` owns darts `2νv .. 2νv+2ν` in
//! counter-clockwise order, and for the two-legged family the last two darts
//! are the legs, each alone at its own 1-valent vertex. The rotation `σ`
//! sends a dart to the next one around its vertex. A perfect matching `α`
//! glues darts into edges; faces are the cycles of `σ∘α`, and
//!
//! ```text
//! g = (2·components − V + E − F) / 2.
//! ```
//!
//! Matchings are enumerated canonically: the smallest unmatched dart is
//! paired with each larger unmatched dart in turn, so each involution is
//! produced exactly once. [`census_branch`] fixes the partner of dart 0, which
//! lets callers split the work.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::coefficients::Family;
use crate::exact::odd_double_factorial;
use crate::{Error, Result};

/// Largest system enumerated unless the caller raises the limit.
pub const DEFAULT_DART_LIMIT: usize = 16;
/// Largest system enumerated at all (19!! ≈ 6.5×10⁸ matchings).
pub const HARD_DART_CAP: usize = 20;

const UNMATCHED: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DartSystem {
    pub nu: u32,
    pub j: u32,
    pub family: Family,
    rotation: Vec<usize>,
    vertex_of: Vec<usize>,
    vertex_count: usize,
}

impl DartSystem {
    pub fn new(nu: u32, j: u32, family: Family) -> Result<Self> {
        if nu < 1 {
            return Err(Error::InvalidModel("nu must be positive".to_string()));
        }
        if family == Family::Regular && j == 0 {
            return Err(Error::OutOfDomain {
                j,
                reason: "a regular map needs at least one vertex".to_string(),
            });
        }
        let deg = 2 * nu as usize;
        let core = deg * j as usize;
        let legs = if family == Family::TwoLegged { 2 } else { 0 };
        let n = core + legs;
        let mut rotation = Vec::with_capacity(n);
        let mut vertex_of = Vec::with_capacity(n);
        for d in 0..core {
            let v = d / deg;
            rotation.push(v * deg + (d + 1) % deg);
            vertex_of.push(v);
        }
        for leg in 0..legs {
            rotation.push(core + leg);
            vertex_of.push(j as usize + leg);
        }
        Ok(DartSystem {
            nu,
            j,
            family,
            rotation,
            vertex_of,
            vertex_count: j as usize + legs,
        })
    }

    /// The same system with dart `d` renamed to `perm[d]`.
    ///
    /// Counts must not depend on the labeling, which makes this a cheap
    /// consistency check.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let n = self.dart_count();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&d| d >= n || core::mem::replace(&mut seen[d], true)) {
            return Err(Error::InvalidModel("dart relabeling is not a permutation".to_string()));
        }
        let mut rotation = vec![0; n];
        let mut vertex_of = vec![0; n];
        for d in 0..n {
            rotation[perm[d]] = perm[self.rotation[d]];
            vertex_of[perm[d]] = self.vertex_of[d];
        }
        Ok(DartSystem {
            rotation,
            vertex_of,
            ..self.clone()
        })
    }

    pub fn dart_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn rotation(&self) -> &[usize] {
        &self.rotation
    }

    /// Number of perfect matchings, `(n−1)!!`.
    pub fn matching_count(&self) -> BigInt {
        odd_double_factorial(self.dart_count() as u64 / 2)
    }

    fn genus_unchecked(&self, alpha: &[usize], scratch: &mut Scratch) -> (u32, bool) {
        let n = self.dart_count();
        // Faces: cycles of σ∘α.
        scratch.visited.iter_mut().for_each(|x| *x = false);
        let mut faces = 0i64;
        for start in 0..n {
            if scratch.visited[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            while !scratch.visited[d] {
                scratch.visited[d] = true;
                d = self.rotation[alpha[d]];
            }
        }
        // Components: union-find over vertices joined by edges.
        for (i, p) in scratch.parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut components = self.vertex_count as i64;
        for d in 0..n {
            let e = alpha[d];
            if e < d {
                continue;
            }
            let a = find(&mut scratch.parent, self.vertex_of[d]);
            let b = find(&mut scratch.parent, self.vertex_of[e]);
            if a != b {
                scratch.parent[a] = b;
                components -= 1;
            }
        }
        let edges = n as i64 / 2;
        let twice = 2 * components - self.vertex_count as i64 + edges - faces;
        debug_assert!(twice >= 0 && twice % 2 == 0, "Euler characteristic parity");
        ((twice / 2) as u32, components == 1)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

struct Scratch {
    visited: Vec<bool>,
    parent: Vec<usize>,
}

impl Scratch {
    fn new(system: &DartSystem) -> Self {
        Scratch {
            visited: vec![false; system.dart_count()],
            parent: vec![0; system.vertex_count],
        }
    }
}

/// Genus and connectivity of the map obtained by gluing with `alpha`.
///
/// For a disconnected gluing the genus is the total over components.
pub fn genus_of(system: &DartSystem, alpha: &[usize]) -> Result<(u32, bool)> {
    let n = system.dart_count();
    if alpha.len() != n {
        return Err(Error::InvalidMatching(format!(
            "matching has {} entries for {n} darts",
            alpha.len()
        )));
    }
    for (d, &e) in alpha.iter().enumerate() {
        if e >= n || e == d || alpha[e] != d {
            return Err(Error::InvalidMatching(format!(
                "dart {d} is not paired consistently"
            )));
        }
    }
    Ok(system.genus_unchecked(alpha, &mut Scratch::new(system)))
}

/// Per-genus tallies of connected gluings, plus the disconnected ones.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchingCensus {
    pub by_genus: BTreeMap<u32, u64>,
    pub disconnected: u64,
    pub total: u64,
}

impl MatchingCensus {
    pub fn merge(&mut self, other: &MatchingCensus) {
        for (g, c) in &other.by_genus {
            *self.by_genus.entry(*g).or_insert(0) += c;
        }
        self.disconnected += other.disconnected;
        self.total += other.total;
    }

    pub fn connected(&self, genus: u32) -> u64 {
        self.by_genus.get(&genus).copied().unwrap_or(0)
    }

    fn record(&mut self, genus: u32, connected: bool) {
        self.total += 1;
        if connected {
            *self.by_genus.entry(genus).or_insert(0) += 1;
        } else {
            self.disconnected += 1;
        }
    }
}

/// Checks `system` against a dart limit (clamped to [`HARD_DART_CAP`]).
pub fn check_limit(system: &DartSystem, limit: usize) -> Result<()> {
    let limit = limit.min(HARD_DART_CAP);
    if system.dart_count() > limit {
        return Err(Error::CensusTooLarge {
            darts: system.dart_count(),
            limit,
            matchings: system.matching_count().to_string(),
        });
    }
    Ok(())
}

/// Enumerates the gluings of `system` in which dart 0 is paired with `partner`.
pub fn census_branch(system: &DartSystem, partner: usize) -> MatchingCensus {
    let n = system.dart_count();
    let mut out = MatchingCensus::default();
    if n == 0 || partner == 0 || partner >= n {
        return out;
    }
    let mut alpha = vec![UNMATCHED; n];
    alpha[0] = partner;
    alpha[partner] = 0;
    let mut scratch = Scratch::new(system);
    enumerate(system, &mut alpha, 1, &mut scratch, &mut out);
    out
}

fn enumerate(
    system: &DartSystem,
    alpha: &mut [usize],
    from: usize,
    scratch: &mut Scratch,
    out: &mut MatchingCensus,
) {
    let n = alpha.len();
    let Some(first) = (from..n).find(|&d| alpha[d] == UNMATCHED) else {
        let (g, connected) = system.genus_unchecked(alpha, scratch);
        out.record(g, connected);
        return;
    };
    for other in first + 1..n {
        if alpha[other] != UNMATCHED {
            continue;
        }
        alpha[first] = other;
        alpha[other] = first;
        enumerate(system, alpha, first + 1, scratch, out);
        alpha[first] = UNMATCHED;
        alpha[other] = UNMATCHED;
    }
}

/// Full census of `system`, sequentially.
pub fn census_system(system: &DartSystem, limit: usize) -> Result<MatchingCensus> {
    check_limit(system, limit)?;
    let mut out = MatchingCensus::default();
    for partner in 1..system.dart_count() {
        out.merge(&census_branch(system, partner));
    }
    Ok(out)
}

/// Census of all gluings for `j` vertices of degree `2ν`.
pub fn census(nu: u32, j: u32, family: Family, limit: usize) -> Result<MatchingCensus> {
    census_system(&DartSystem::new(nu, j, family)?, limit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_gluings() {
        let sys = DartSystem::new(2, 1, Family::Regular).unwrap();
        // 0-based versions of (1,3)(2,4) and (1,2)(3,4).
        assert_eq!(genus_of(&sys, &[2, 3, 0, 1]).unwrap(), (1, true));
        assert_eq!(genus_of(&sys, &[1, 0, 3, 2]).unwrap(), (0, true));
        assert!(genus_of(&sys, &[0, 1, 2, 3]).is_err());
        assert!(genus_of(&sys, &[1, 2, 3, 0]).is_err());
        let legs = DartSystem::new(2, 0, Family::TwoLegged).unwrap();
        assert_eq!(genus_of(&legs, &[1, 0]).unwrap(), (0, true));
    }

    #[test]
    fn small_censuses() {
        let c = census(2, 1, Family::Regular, DEFAULT_DART_LIMIT).unwrap();
        assert_eq!(c.by_genus, BTreeMap::from([(0, 2), (1, 1)]));
        assert_eq!((c.disconnected, c.total), (0, 3));
        let c = census(2, 1, Family::TwoLegged, DEFAULT_DART_LIMIT).unwrap();
        assert_eq!(c.by_genus, BTreeMap::from([(0, 12)]));
        assert_eq!((c.disconnected, c.total), (3, 15));
        let c = census(2, 2, Family::Regular, DEFAULT_DART_LIMIT).unwrap();
        assert_eq!(c.connected(1), 60);
        assert_eq!(c.total, 105);
    }

    #[test]
    fn totals_are_conserved() {
        for (nu, j, family) in [(2, 2, Family::TwoLegged), (3, 1, Family::Regular), (3, 1, Family::TwoLegged), (2, 3, Family::Regular)] {
            let sys = DartSystem::new(nu, j, family).unwrap();
            let c = census_system(&sys, DEFAULT_DART_LIMIT).unwrap();
            let connected: u64 = c.by_genus.values().sum();
            assert_eq!(connected + c.disconnected, c.total);
            assert_eq!(BigInt::from(c.total), sys.matching_count());
        }
    }

    #[test]
    fn relabeling_does_not_change_the_census() {
        let sys = DartSystem::new(2, 3, Family::TwoLegged).unwrap();
        let base = census_system(&sys, DEFAULT_DART_LIMIT).unwrap();
        // Shuffle the first twelve darts without respecting the vertex blocks.
        let shuffles: [[usize; 12]; 2] = [
            [7, 2, 11, 0, 5, 9, 1, 10, 3, 6, 4, 8],
            [2, 1, 0, 3, 4, 9, 6, 7, 8, 5, 11, 10],
        ];
        for shuffle in shuffles {
            let perm: Vec<usize> = (0..sys.dart_count())
                .map(|d| if d < 12 { shuffle[d] } else { d })
                .collect();
            let other = sys.relabeled(&perm).unwrap();
            assert_ne!(other.rotation(), sys.rotation());
            assert_eq!(census_system(&other, DEFAULT_DART_LIMIT).unwrap(), base);
        }
        assert!(sys.relabeled(&[0; 14]).is_err());
    }

    #[test]
    fn limits_are_enforced() {
        let err = census(2, 5, Family::Regular, DEFAULT_DART_LIMIT).unwrap_err();
        assert!(matches!(err, Error::CensusTooLarge { darts: 20, limit: 16, .. }));
        let err = census(2, 6, Family::Regular, 100).unwrap_err();
        assert!(matches!(err, Error::CensusTooLarge { limit: HARD_DART_CAP, .. }));
        assert!(census(2, 0, Family::Regular, DEFAULT_DART_LIMIT).is_err());
    }
}
