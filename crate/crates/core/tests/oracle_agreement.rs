use std::collections::HashMap;

use zz_core::bijection::KekuleBijection;
use zz_core::catalog::catalog_strips;
use zz_core::oracle::{
    enumerate_clar_covers, enumerate_perfect_matchings, extract_ki, proper_sextets, ExplicitClarCover,
    SextetOrientation, DEFAULT_MAX_VERTICES,
};
use zz_core::poset::Dib;
use zz_core::strip::build_graph;

/// The generated Clar covers, turned into explicit subgraphs, are exactly the
/// covers found by brute force.
#[test]
fn generated_clar_covers_match_brute_force() {
    for spec in catalog_strips(3, 3, false) {
        let g = build_graph(&spec).unwrap();
        let bij = KekuleBijection::new(&spec).unwrap();
        let matchings = enumerate_perfect_matchings(&g, DEFAULT_MAX_VERTICES).unwrap();
        let by_ki: HashMap<_, _> = matchings.iter().map(|m| (extract_ki(&g, m), m.clone())).collect();
        let hex_id: HashMap<(usize, usize), usize> =
            g.hexagons.iter().enumerate().map(|(i, h)| ((h.tier, h.index), i)).collect();

        let mut generated: Vec<ExplicitClarCover> = bij
            .generate_clar_covers()
            .iter()
            .map(|r| {
                let mut aromatic: Vec<usize> =
                    r.aromatic_hexagons().iter().map(|site| hex_id[site]).collect();
                aromatic.sort_unstable();
                let ring_edges: Vec<usize> = aromatic
                    .iter()
                    .flat_map(|&h| SextetOrientation::Proper.pattern(&g.hexagons[h]))
                    .collect();
                let matching = by_ki[&r.base]
                    .iter()
                    .copied()
                    .filter(|e| !ring_edges.contains(e))
                    .collect();
                ExplicitClarCover { aromatic, matching }
            })
            .collect();
        generated.sort();
        assert_eq!(generated, enumerate_clar_covers(&g, DEFAULT_MAX_VERTICES).unwrap(), "{spec}");
    }
}

/// Per structure, the proper sextets are exactly the hexagons left of the
/// DIBs in `A_K`. The mirrored pattern fails this on some structure, so this
/// check does detect an orientation mix-up even though the ZZ totals cannot.
#[test]
fn proper_sextets_sit_left_of_a_k() {
    let mut mirrored_mismatches = 0;
    for spec in catalog_strips(4, 3, false) {
        let g = build_graph(&spec).unwrap();
        let bij = KekuleBijection::new(&spec).unwrap();
        for m in enumerate_perfect_matchings(&g, DEFAULT_MAX_VERTICES).unwrap() {
            let ka = extract_ki(&g, &m);
            let om = bij.map_from_kekule(&ka).unwrap();
            let mut expected: Vec<(usize, usize)> =
                om.members.iter().map(|&d: &Dib| (d.k, ka.pos(d) - 1)).collect();
            expected.sort_unstable();
            let sites = |o| {
                let mut v: Vec<(usize, usize)> = proper_sextets(&g, &m, o)
                    .into_iter()
                    .map(|h| (g.hexagons[h].tier, g.hexagons[h].index))
                    .collect();
                v.sort_unstable();
                v
            };
            assert_eq!(sites(SextetOrientation::Proper), expected, "{spec}");
            if sites(SextetOrientation::Mirrored) != expected {
                mirrored_mismatches += 1;
            }
        }
    }
    assert!(mirrored_mismatches > 0);
}
