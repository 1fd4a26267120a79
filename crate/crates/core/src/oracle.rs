//! Brute-force ground truth on the explicit benzenoid graph: perfect
//! matchings, proper sextets and Clar covers enumerated straight from their
//! definitions.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bijection::KekuleAssignment;
use crate::error::{Error, Result};
use crate::order_poly::{zz_polynomial, ZzPolynomial};
use crate::strip::{build_graph, BenzenoidGraph, Hexagon, StripSpec};

pub const DEFAULT_MAX_VERTICES: usize = 60;

/// Perfect matching as a sorted list of edge ids.
pub type Matching = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExplicitClarCover {
    /// Hexagon ids of the aromatic rings, ascending.
    pub aromatic: Vec<usize>,
    /// Matching of the vertices outside the aromatic rings.
    pub matching: Matching,
}

impl ExplicitClarCover {
    pub fn order(&self) -> usize {
        self.aromatic.len()
    }
}

/// Which alternating pattern of a hexagon counts as a proper sextet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SextetOrientation {
    /// Right vertical bond plus the two left slanted bonds.
    Proper,
    /// Left vertical bond plus the two right slanted bonds.
    Mirrored,
}

impl SextetOrientation {
    pub fn pattern(self, h: &Hexagon) -> [usize; 3] {
        match self {
            SextetOrientation::Proper => [h.top_left(), h.right(), h.bottom_left()],
            SextetOrientation::Mirrored => [h.top_right(), h.left(), h.bottom_right()],
        }
    }
}

fn check_guard(g: &BenzenoidGraph, max_vertices: usize) -> Result<()> {
    if g.vertex_count() > max_vertices {
        return Err(Error::GuardExceeded {
            what: "vertices",
            limit: max_vertices,
            actual: g.vertex_count(),
        });
    }
    Ok(())
}

/// All perfect matchings, branching on the lowest uncovered vertex.
pub fn enumerate_perfect_matchings(g: &BenzenoidGraph, max_vertices: usize) -> Result<Vec<Matching>> {
    check_guard(g, max_vertices)?;
    Ok(matchings_avoiding(g, &vec![false; g.vertex_count()]))
}

/// Perfect matchings of `g` with the `blocked` vertices deleted.
fn matchings_avoiding(g: &BenzenoidGraph, blocked: &[bool]) -> Vec<Matching> {
    let mut covered = blocked.to_vec();
    let mut current = Vec::new();
    let mut out = Vec::new();
    grow(g, &mut covered, &mut current, &mut out);
    out
}

fn grow(g: &BenzenoidGraph, covered: &mut [bool], current: &mut Vec<usize>, out: &mut Vec<Matching>) {
    let Some(v) = covered.iter().position(|&c| !c) else {
        let mut m = current.clone();
        m.sort_unstable();
        out.push(m);
        return;
    };
    covered[v] = true;
    for &(u, e) in &g.adjacency[v] {
        if covered[u] {
            continue;
        }
        covered[u] = true;
        current.push(e);
        grow(g, covered, current, out);
        current.pop();
        covered[u] = false;
    }
    covered[v] = false;
}

/// Hexagon ids whose three bonds in `matching` form the sextet pattern.
pub fn proper_sextets(g: &BenzenoidGraph, matching: &[usize], orientation: SextetOrientation) -> Vec<usize> {
    let mut in_matching = vec![false; g.edge_count()];
    for &e in matching {
        in_matching[e] = true;
    }
    g.hexagons
        .iter()
        .enumerate()
        .filter(|(_, h)| orientation.pattern(h).iter().all(|&e| in_matching[e]))
        .map(|(i, _)| i)
        .collect()
}

pub fn count_proper_sextets(g: &BenzenoidGraph, matching: &[usize], orientation: SextetOrientation) -> usize {
    proper_sextets(g, matching, orientation).len()
}

/// Every Clar cover: each vertex-disjoint set of hexagons, completed by each
/// perfect matching of the remaining vertices. Sorted.
pub fn enumerate_clar_covers(g: &BenzenoidGraph, max_vertices: usize) -> Result<Vec<ExplicitClarCover>> {
    check_guard(g, max_vertices)?;
    let mut out = Vec::new();
    let mut blocked = vec![false; g.vertex_count()];
    let mut chosen = Vec::new();
    independent_sets(g, 0, &mut blocked, &mut chosen, &mut out);
    out.sort();
    Ok(out)
}

fn independent_sets(
    g: &BenzenoidGraph,
    next: usize,
    blocked: &mut [bool],
    chosen: &mut Vec<usize>,
    out: &mut Vec<ExplicitClarCover>,
) {
    if next == g.hexagons.len() {
        for matching in matchings_avoiding(g, blocked) {
            out.push(ExplicitClarCover { aromatic: chosen.clone(), matching });
        }
        return;
    }
    independent_sets(g, next + 1, blocked, chosen, out);
    let ring = g.hexagons[next].vertices;
    if ring.iter().all(|&v| !blocked[v]) {
        for &v in &ring {
            blocked[v] = true;
        }
        chosen.push(next);
        independent_sets(g, next + 1, blocked, chosen, out);
        chosen.pop();
        for &v in &ring {
            blocked[v] = false;
        }
    }
}

/// `Σ c_k x^k` from the orders of explicit covers.
pub fn zz_from_covers(covers: &[ExplicitClarCover]) -> ZzPolynomial {
    let mut hist = Vec::new();
    for c in covers {
        if hist.len() <= c.order() {
            hist.resize(c.order() + 1, BigUint::from(0u32));
        }
        hist[c.order()] += 1u32;
    }
    ZzPolynomial::new(crate::polynomial::Polynomial::new(hist))
}

/// `a(B, k)`: number of matchings with exactly `k` sextets.
pub fn sextet_histogram(
    g: &BenzenoidGraph,
    matchings: &[Matching],
    orientation: SextetOrientation,
) -> Vec<BigUint> {
    let mut hist: Vec<BigUint> = Vec::new();
    for m in matchings {
        let k = count_proper_sextets(g, m, orientation);
        if hist.len() <= k {
            hist.resize(k + 1, BigUint::from(0u32));
        }
        hist[k] += 1u32;
    }
    hist
}

/// `Σ a(B, k) (1 + x)^k`.
pub fn zz_from_matchings(
    g: &BenzenoidGraph,
    matchings: &[Matching],
    orientation: SextetOrientation,
) -> ZzPolynomial {
    ZzPolynomial::from_sextet_histogram(&sextet_histogram(g, matchings, orientation))
}

/// Reads the double vertical bonds of each interface from left to right.
pub fn extract_ki(g: &BenzenoidGraph, matching: &[usize]) -> KekuleAssignment {
    let mut in_matching = vec![false; g.edge_count()];
    for &e in matching {
        in_matching[e] = true;
    }
    let positions = g
        .interfaces
        .iter()
        .map(|bonds| {
            bonds
                .iter()
                .enumerate()
                .filter(|(_, &e)| in_matching[e])
                .map(|(p, _)| p + 1)
                .collect()
        })
        .collect();
    KekuleAssignment { positions }
}

/// The three ZZ computations for one strip.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub strip: StripSpec,
    pub poset: ZzPolynomial,
    pub covers: ZzPolynomial,
    pub matchings: ZzPolynomial,
    pub matching_count: usize,
    pub cover_count: usize,
}

impl OracleReport {
    pub fn agree(&self) -> bool {
        self.poset == self.covers && self.covers == self.matchings
    }

    /// Coefficients where the three computations disagree, as
    /// `k -> (poset, covers, matchings)`.
    pub fn diff(&self) -> BTreeMap<usize, (BigUint, BigUint, BigUint)> {
        let top = [&self.poset, &self.covers, &self.matchings]
            .iter()
            .map(|z| z.coeffs.coeffs().len())
            .max()
            .unwrap_or(0);
        (0..top)
            .filter_map(|k| {
                let row = (self.poset.coeff(k), self.covers.coeff(k), self.matchings.coeff(k));
                (row.0 != row.1 || row.1 != row.2).then_some((k, row))
            })
            .collect()
    }
}

pub fn run_oracle(spec: &StripSpec, max_vertices: usize) -> Result<OracleReport> {
    let g = build_graph(spec)?;
    let matchings = enumerate_perfect_matchings(&g, max_vertices)?;
    let covers = enumerate_clar_covers(&g, max_vertices)?;
    Ok(OracleReport {
        strip: spec.clone(),
        poset: zz_polynomial(spec)?,
        covers: zz_from_covers(&covers),
        matchings: zz_from_matchings(&g, &matchings, SextetOrientation::Proper),
        matching_count: matchings.len(),
        cover_count: covers.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strip::parse_strip;

    fn graph(text: &str) -> BenzenoidGraph {
        build_graph(&parse_strip(text).unwrap()).unwrap()
    }

    fn hist(v: &[BigUint]) -> Vec<u64> {
        v.iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn matching_counts() {
        assert_eq!(enumerate_perfect_matchings(&graph("WN 1"), 60).unwrap().len(), 2);
        assert_eq!(enumerate_perfect_matchings(&graph("WRN 2"), 60).unwrap().len(), 6);
        assert_eq!(enumerate_perfect_matchings(&graph("WNNWWN 4"), 60).unwrap().len(), 0);
        // linear acene with n rings has n + 1 structures
        assert_eq!(enumerate_perfect_matchings(&graph("WN 4"), 60).unwrap().len(), 5);
    }

    #[test]
    fn benzene() {
        let g = graph("WN 1");
        let ms = enumerate_perfect_matchings(&g, 60).unwrap();
        assert_eq!(hist(&sextet_histogram(&g, &ms, SextetOrientation::Proper)), vec![1, 1]);
        assert_eq!(zz_from_matchings(&g, &ms, SextetOrientation::Proper).to_string(), "x + 2");
        assert_eq!(enumerate_clar_covers(&g, 60).unwrap().len(), 3);
    }

    #[test]
    fn parallelogram() {
        let g = graph("WRN 2");
        let ms = enumerate_perfect_matchings(&g, 60).unwrap();
        assert_eq!(hist(&sextet_histogram(&g, &ms, SextetOrientation::Proper)), vec![1, 4, 1]);
        let covers = enumerate_clar_covers(&g, 60).unwrap();
        assert_eq!(covers.len(), 13);
        assert_eq!(zz_from_covers(&covers).to_string(), "x^2 + 6x + 6");
        let mut ks: Vec<_> = ms.iter().map(|m| extract_ki(&g, m)).collect();
        ks.sort();
        ks.dedup();
        assert_eq!(ks.len(), 6);
    }

    #[test]
    fn non_kekulean_has_no_covers() {
        assert!(enumerate_clar_covers(&graph("WNNWWN 4"), 60).unwrap().is_empty());
    }

    #[test]
    fn guard() {
        let g = graph("WRRRRN 6");
        assert!(matches!(
            enumerate_perfect_matchings(&g, 60),
            Err(Error::GuardExceeded { what: "vertices", .. })
        ));
    }

    #[test]
    fn reports_agree_on_flake() {
        let r = run_oracle(&parse_strip("WWRNN 3").unwrap(), 60).unwrap();
        assert!(r.agree(), "{r:?}");
        assert!(r.diff().is_empty());
    }
}
