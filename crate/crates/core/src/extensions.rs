//! Linear extensions of a naturally labeled poset and their descent and
//! fixed-label statistics.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{DibPoset, NaturalLabeling};

/// A linear extension written as its label sequence `w_1 .. w_p`.
pub type Word = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearExtensionRecord {
    pub word: Word,
    /// 1-based descent positions `i` with `w_i > w_{i+1}`.
    pub descents: Vec<usize>,
    /// Fixed labels, in order of appearance in the word.
    pub fixed: Vec<usize>,
    pub des: usize,
    pub fix: usize,
}

impl fmt::Display for LinearExtensionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(
            f,
            "{} des={} fix={} descents={{{}}} fixed={{{}}}",
            word_string(&self.word),
            self.des,
            self.fix,
            join(&self.descents),
            join(&self.fixed)
        )
    }
}

/// Compact rendering: `135246` for labels below 10, comma separated otherwise.
pub fn word_string(w: &[usize]) -> String {
    if w.iter().all(|&l| l < 10) {
        w.iter().map(|l| l.to_string()).collect()
    } else {
        w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// All linear extensions, in lexicographic order of their words. The empty
/// poset has exactly one (empty) extension.
pub fn linear_extensions(poset: &DibPoset, labeling: &NaturalLabeling) -> Vec<Word> {
    let mut out = Vec::new();
    for_each_extension(poset, labeling, |w| out.push(w.to_vec()));
    out
}

/// Visits every linear extension in lexicographic order without collecting.
pub fn for_each_extension<F: FnMut(&[usize])>(
    poset: &DibPoset,
    labeling: &NaturalLabeling,
    mut visit: F,
) {
    let p = poset.len();
    let mut pending: Vec<usize> = (0..p).map(|b| poset.predecessors(b).count()).collect();
    let successors: Vec<Vec<usize>> = (0..p).map(|a| poset.successors(a).collect()).collect();
    let mut used = vec![false; p];
    let mut word = Vec::with_capacity(p);
    extend(labeling, &successors, &mut pending, &mut used, &mut word, &mut visit);
}

fn extend<F: FnMut(&[usize])>(
    labeling: &NaturalLabeling,
    successors: &[Vec<usize>],
    pending: &mut [usize],
    used: &mut [bool],
    word: &mut Word,
    visit: &mut F,
) {
    let p = used.len();
    if word.len() == p {
        visit(word);
        return;
    }
    // ascending labels give lexicographic output
    for label in 1..=p {
        let e = labeling.element(label);
        if used[e] || pending[e] != 0 {
            continue;
        }
        used[e] = true;
        for &s in &successors[e] {
            pending[s] -= 1;
        }
        word.push(label);
        extend(labeling, successors, pending, used, word, visit);
        word.pop();
        for &s in &successors[e] {
            pending[s] += 1;
        }
        used[e] = false;
    }
}

/// Descent positions (1-based) and their count.
pub fn descent_stats(w: &[usize]) -> (Vec<usize>, usize) {
    let descents: Vec<usize> = w
        .windows(2)
        .enumerate()
        .filter(|(_, pair)| pair[0] > pair[1])
        .map(|(i, _)| i + 1)
        .collect();
    let des = descents.len();
    (descents, des)
}

/// Checks that `w` is a permutation of `1..=p` respecting the poset order.
pub fn check_extension(w: &[usize], poset: &DibPoset, labeling: &NaturalLabeling) -> Result<()> {
    let p = poset.len();
    if w.len() != p {
        return Err(Error::NotLinearExtension(format!("length {} != {p}", w.len())));
    }
    let mut position = vec![usize::MAX; p];
    for (i, &label) in w.iter().enumerate() {
        if label == 0 || label > p || position[labeling.element(label)] != usize::MAX {
            return Err(Error::NotLinearExtension(format!("label {label} invalid or repeated")));
        }
        position[labeling.element(label)] = i;
    }
    for &(a, b) in poset.covers() {
        if position[a] > position[b] {
            return Err(Error::NotLinearExtension(format!(
                "label {} appears after label {}",
                labeling.label(a),
                labeling.label(b)
            )));
        }
    }
    Ok(())
}

/// Fixed labels of `w`. A label `w_i` is fixed when position `i - 1` or `i`
/// is a descent, or when some larger label precedes it later than every
/// label that the poset forces before it. An empty set of forced
/// predecessors counts as position 0.
pub fn fixed_labels(
    w: &[usize],
    poset: &DibPoset,
    labeling: &NaturalLabeling,
) -> Result<(Vec<usize>, usize)> {
    check_extension(w, poset, labeling)?;
    let p = w.len();
    let mut fixed = Vec::new();
    for i in 0..p {
        let adjacent_descent =
            (i > 0 && w[i - 1] > w[i]) || (i + 1 < p && w[i] > w[i + 1]);
        let target = labeling.element(w[i]);
        // 1-based positions
        let last_larger = (0..i).filter(|&l| w[l] > w[i]).map(|l| l + 1).max();
        let last_forced = (0..p)
            .filter(|&j| poset.less(labeling.element(w[j]), target))
            .map(|j| j + 1)
            .max()
            .unwrap_or(0);
        let late_inversion = matches!(last_larger, Some(l) if l > last_forced);
        if adjacent_descent || late_inversion {
            fixed.push(w[i]);
        }
    }
    let fix = fixed.len();
    Ok((fixed, fix))
}

pub fn extension_record(
    w: &[usize],
    poset: &DibPoset,
    labeling: &NaturalLabeling,
) -> Result<LinearExtensionRecord> {
    let (descents, des) = descent_stats(w);
    let (fixed, fix) = fixed_labels(w, poset, labeling)?;
    Ok(LinearExtensionRecord { word: w.to_vec(), descents, fixed, des, fix })
}

/// Records for every linear extension, in lexicographic order.
pub fn extension_records(poset: &DibPoset, labeling: &NaturalLabeling) -> Vec<LinearExtensionRecord> {
    linear_extensions(poset, labeling)
        .iter()
        .map(|w| extension_record(w, poset, labeling).expect("enumerated words are extensions"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{build_poset, natural_labeling, Dib};
    use crate::strip::parse_strip;

    fn flake() -> DibPoset {
        build_poset(&parse_strip("WWRNN 3").unwrap()).unwrap()
    }

    /// Labeling in which `135246` is an extension of the flake poset.
    fn flake_alt_labeling(p: &DibPoset) -> NaturalLabeling {
        let d = Dib::new;
        let by_label = [d(2, 1), d(1, 1), d(3, 1), d(2, 2), d(4, 1), d(3, 2)];
        let order: Vec<usize> = by_label.iter().map(|&x| p.index_of(x).unwrap()).collect();
        NaturalLabeling::from_order(p, &order).unwrap()
    }

    fn words(v: &[&str]) -> Vec<Word> {
        v.iter()
            .map(|s| s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect())
            .collect()
    }

    #[test]
    fn small_extension_sets() {
        let chain = DibPoset::chain(2);
        assert_eq!(linear_extensions(&chain, &natural_labeling(&chain)), words(&["12"]));
        let anti = DibPoset::antichain(2);
        assert_eq!(linear_extensions(&anti, &natural_labeling(&anti)), words(&["12", "21"]));
        let empty = DibPoset::empty();
        assert_eq!(linear_extensions(&empty, &natural_labeling(&empty)), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn flake_has_five_extensions() {
        let p = flake();
        let exts = linear_extensions(&p, &flake_alt_labeling(&p));
        assert_eq!(exts, words(&["123456", "123546", "132456", "132546", "135246"]));
        let canonical = linear_extensions(&p, &natural_labeling(&p));
        assert_eq!(canonical.len(), 5);
    }

    #[test]
    fn descents() {
        assert_eq!(descent_stats(&[1, 2, 3, 5, 4, 6]), (vec![4], 1));
        assert_eq!(descent_stats(&[1, 2]), (vec![], 0));
        assert_eq!(descent_stats(&[1, 3, 2, 5, 4, 6]), (vec![2, 4], 2));
        assert_eq!(descent_stats(&[]), (vec![], 0));
    }

    #[test]
    fn fixed_labels_on_examples() {
        let chain = DibPoset::chain(2);
        assert_eq!(fixed_labels(&[1, 2], &chain, &natural_labeling(&chain)).unwrap(), (vec![], 0));

        let p = flake();
        let lab = flake_alt_labeling(&p);
        let (fixed, fix) = fixed_labels(&[1, 3, 5, 2, 4, 6], &p, &lab).unwrap();
        assert_eq!(fix, 2);
        assert_eq!(fixed, vec![5, 2]);
    }

    #[test]
    fn flake_statistics() {
        let p = flake();
        for lab in [natural_labeling(&p), flake_alt_labeling(&p)] {
            let recs = extension_records(&p, &lab);
            let mut des: Vec<_> = recs.iter().map(|r| r.des).collect();
            let mut fix: Vec<_> = recs.iter().map(|r| r.fix).collect();
            des.sort();
            fix.sort();
            assert_eq!(des, vec![0, 1, 1, 1, 2]);
            assert_eq!(fix, vec![0, 2, 2, 2, 4]);
        }
    }

    #[test]
    fn rejects_non_extensions() {
        let chain = DibPoset::chain(2);
        let lab = natural_labeling(&chain);
        assert!(fixed_labels(&[2, 1], &chain, &lab).is_err());
        assert!(fixed_labels(&[1], &chain, &lab).is_err());
        assert!(fixed_labels(&[1, 1], &chain, &lab).is_err());
    }

    #[test]
    fn extension_counts_of_chains_and_antichains() {
        let factorial = |p: usize| (1..=p).product::<usize>();
        for p in 0..=6 {
            let c = DibPoset::chain(p);
            assert_eq!(linear_extensions(&c, &natural_labeling(&c)).len(), 1);
            let a = DibPoset::antichain(p);
            assert_eq!(linear_extensions(&a, &natural_labeling(&a)).len(), factorial(p));
        }
    }

    #[test]
    fn record_display() {
        let p = flake();
        let lab = flake_alt_labeling(&p);
        let r = extension_record(&[1, 3, 5, 2, 4, 6], &p, &lab).unwrap();
        assert_eq!(r.to_string(), "135246 des=1 fix=2 descents={3} fixed={5,2}");
    }
}
