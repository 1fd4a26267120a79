use proptest::prelude::*;

use zz_core::order_poly::{extended_poly_extension_formula, extended_poly_subposet_sum};
use zz_core::poset::natural_labeling;
use zz_core::{Dib, DibPoset, NaturalLabeling};

fn random_poset(p: usize, edges: &[(usize, usize)]) -> DibPoset {
    // orienting every pair from lower to higher index keeps the relation acyclic
    let relations: Vec<_> = edges
        .iter()
        .filter(|(a, b)| a < b && *b < p)
        .copied()
        .collect();
    DibPoset::from_relations((1..=p).map(|k| Dib::new(k, 1)).collect(), &relations).unwrap()
}

proptest! {
    #[test]
    fn extension_formula_is_labeling_invariant(
        p in 0usize..7,
        edges in prop::collection::vec((0usize..7, 0usize..7), 0..12),
        shuffle in prop::collection::vec(any::<u32>(), 7),
        n in 1usize..6,
    ) {
        let poset = random_poset(p, &edges);
        let reference = extended_poly_subposet_sum(&poset, n, 20).unwrap();
        prop_assert_eq!(&extended_poly_extension_formula(&poset, &natural_labeling(&poset), n), &reference);

        // removal order driven by the random keys
        let mut pending: Vec<usize> = (0..p).map(|b| poset.predecessors(b).count()).collect();
        let mut done = vec![false; p];
        let mut order = Vec::new();
        while order.len() < p {
            let e = (0..p)
                .filter(|&i| !done[i] && pending[i] == 0)
                .max_by_key(|&i| shuffle[i])
                .unwrap();
            done[e] = true;
            for s in poset.successors(e) {
                pending[s] -= 1;
            }
            order.push(e);
        }
        let labeling = NaturalLabeling::from_order(&poset, &order).unwrap();
        prop_assert_eq!(&extended_poly_extension_formula(&poset, &labeling, n), &reference);
    }
}
