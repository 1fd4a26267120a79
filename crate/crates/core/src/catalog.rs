//! Enumeration of regular strip shape sequences.

use crate::strip::{Shape, StripSpec};

/// Shape sequences with `1..=max_tiers` tiers that start with `W`, end with
/// `N` and whose last interface has order 1. Interface orders do not depend
/// on `n`, so this is a property of the sequence alone.
pub fn shape_sequences(max_tiers: usize) -> Vec<Vec<Shape>> {
    let mut out = Vec::new();
    for m in 1..=max_tiers {
        let mut interior = vec![Shape::W; m - 1];
        loop {
            let order: i64 = 1 + interior.iter().map(|s| s.size_delta()).sum::<i64>();
            if order == 1 {
                let mut seq = vec![Shape::W];
                seq.extend_from_slice(&interior);
                seq.push(Shape::N);
                out.push(seq);
            }
            if !advance(&mut interior) {
                break;
            }
        }
    }
    out
}

fn advance(digits: &mut [Shape]) -> bool {
    for d in digits.iter_mut().rev() {
        let i = Shape::ALL.iter().position(|s| s == d).unwrap();
        if i + 1 < Shape::ALL.len() {
            *d = Shape::ALL[i + 1];
            return true;
        }
        *d = Shape::ALL[0];
    }
    false
}

/// Every interface order is non-negative.
pub fn is_kekulean_sequence(shapes: &[Shape]) -> bool {
    let mut order = 1i64;
    for s in &shapes[1..shapes.len() - 1] {
        order += s.size_delta();
        if order < 0 {
            return false;
        }
    }
    true
}

/// Left-right mirror image: `L <-> R`.
pub fn mirror_lr(shapes: &[Shape]) -> Vec<Shape> {
    shapes.iter().map(|s| s.mirrored()).collect()
}

/// Top-bottom mirror image: reversed, with `W <-> N` and `L <-> R`.
pub fn mirror_tb(shapes: &[Shape]) -> Vec<Shape> {
    shapes.iter().rev().map(|s| s.flipped()).collect()
}

/// Least member of the symmetry orbit, comparing letters as `W < N < R < L`.
pub fn canonical(shapes: &[Shape]) -> Vec<Shape> {
    let a = shapes.to_vec();
    let b = mirror_lr(&a);
    let c = mirror_tb(&a);
    let d = mirror_tb(&b);
    [a, b, c, d]
        .into_iter()
        .min_by_key(|s| {
            s.iter()
                .map(|x| Shape::ALL.iter().position(|y| y == x).unwrap())
                .collect::<Vec<_>>()
        })
        .unwrap()
}

/// Kekuléan shape sequences with at most `max_tiers` tiers, one per
/// symmetry class when `dedup` is set.
pub fn catalog_sequences(max_tiers: usize, dedup: bool) -> Vec<Vec<Shape>> {
    let mut out: Vec<Vec<Shape>> = shape_sequences(max_tiers)
        .into_iter()
        .filter(|s| is_kekulean_sequence(s))
        .filter(|s| !dedup || canonical(s) == *s)
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Valid Kekuléan strips with `m <= max_tiers` and `1 <= n <= max_n`.
pub fn catalog_strips(max_tiers: usize, max_n: usize, dedup: bool) -> Vec<StripSpec> {
    let mut out = Vec::new();
    for shapes in catalog_sequences(max_tiers, dedup) {
        for n in 1..=max_n {
            if let Ok(spec) = StripSpec::new(shapes.clone(), n) {
                if spec.validate().is_valid() {
                    out.push(spec);
                }
            }
        }
    }
    out
}

/// Valid strips with some negative interface order.
pub fn non_kekulean_strips(max_tiers: usize, max_n: usize) -> Vec<StripSpec> {
    let mut out = Vec::new();
    for shapes in shape_sequences(max_tiers) {
        if is_kekulean_sequence(&shapes) {
            continue;
        }
        for n in 1..=max_n {
            if let Ok(spec) = StripSpec::new(shapes.clone(), n) {
                if spec.validate().is_valid() {
                    out.push(spec);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strip::parse_shapes;

    #[test]
    fn small_tier_counts() {
        assert_eq!(shape_sequences(1), vec![parse_shapes("WN").unwrap()]);
        let two: Vec<String> = shape_sequences(2)
            .iter()
            .filter(|s| s.len() == 3)
            .map(|s| s.iter().map(|x| x.as_char()).collect())
            .collect();
        assert_eq!(two, vec!["WRN", "WLN"]);
    }

    #[test]
    fn dedup_merges_mirror_images() {
        let seqs = catalog_sequences(2, true);
        assert_eq!(seqs.len(), 2);
        assert!(seqs.contains(&parse_shapes("WRN").unwrap()));
        assert_eq!(catalog_sequences(2, false).len(), 3);
    }

    #[test]
    fn first_non_kekulean_sequences_have_five_tiers() {
        assert!(non_kekulean_strips(4, 4).is_empty());
        let bad = non_kekulean_strips(5, 4);
        assert!(bad.iter().any(|s| s.letters() == "WNNWWN"));
    }

    #[test]
    fn canonical_is_orbit_invariant() {
        for s in shape_sequences(5) {
            let c = canonical(&s);
            assert_eq!(canonical(&mirror_lr(&s)), c);
            assert_eq!(canonical(&mirror_tb(&s)), c);
        }
    }
}
