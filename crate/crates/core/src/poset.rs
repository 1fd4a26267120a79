//! The poset of double interface bonds (DIBs) of a regular strip.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::strip::{fragments, interface_profile, require_kekulean, StripSpec};

/// Abstract double interface bond `s_{k,j}`: the `j`-th double bond from the
/// left in interface `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dib {
    pub k: usize,
    pub j: usize,
}

impl Dib {
    pub fn new(k: usize, j: usize) -> Self {
        Dib { k, j }
    }
}

impl fmt::Display for Dib {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{},{}", self.k, self.j)
    }
}

/// A finite strict partial order on DIBs, stored as its Hasse diagram plus
/// the transitive closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DibPoset {
    elements: Vec<Dib>,
    covers: Vec<(usize, usize)>,
    // less[a][b] <=> a < b
    less: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct PosetDump {
    elements: Vec<Dib>,
    covers: Vec<(usize, usize)>,
}

impl DibPoset {
    /// Builds a poset from a generating relation. The relation is closed
    /// transitively and reduced to its Hasse diagram; it must be acyclic.
    pub fn from_relations(elements: Vec<Dib>, relations: &[(usize, usize)]) -> Result<Self> {
        let p = elements.len();
        let mut less = vec![vec![false; p]; p];
        for &(a, b) in relations {
            if a >= p || b >= p {
                return Err(Error::Malformed(format!("relation ({a}, {b}) out of range")));
            }
            less[a][b] = true;
        }
        for mid in 0..p {
            for a in 0..p {
                if less[a][mid] {
                    for b in 0..p {
                        if less[mid][b] {
                            less[a][b] = true;
                        }
                    }
                }
            }
        }
        if (0..p).any(|a| less[a][a]) {
            return Err(Error::Malformed("relation contains a cycle".into()));
        }
        let covers = hasse(&less);
        Ok(DibPoset { elements, covers, less })
    }

    pub fn empty() -> Self {
        DibPoset { elements: Vec::new(), covers: Vec::new(), less: Vec::new() }
    }

    /// `p`-element chain.
    pub fn chain(p: usize) -> Self {
        let relations: Vec<_> = (1..p).map(|i| (i - 1, i)).collect();
        Self::from_relations(synthetic(p), &relations).expect("chain is acyclic")
    }

    /// `p`-element antichain.
    pub fn antichain(p: usize) -> Self {
        Self::from_relations(synthetic(p), &[]).expect("antichain is acyclic")
    }

    /// Zigzag fence `a1 < a2 > a3 < a4 ...` on `p` elements.
    pub fn fence(p: usize) -> Self {
        let relations: Vec<_> = (1..p)
            .map(|i| if i % 2 == 1 { (i - 1, i) } else { (i, i - 1) })
            .collect();
        Self::from_relations(synthetic(p), &relations).expect("fence is acyclic")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Dib] {
        &self.elements
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn index_of(&self, dib: Dib) -> Option<usize> {
        self.elements.iter().position(|&d| d == dib)
    }

    /// Strict order `a < b` on element indices.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn predecessors(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&a| self.less[a][b])
    }

    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&b| self.less[a][b])
    }

    /// Induced subposet on the elements selected by `mask` (bit `i` selects
    /// element `i`), with the inherited order.
    pub fn induced(&self, mask: u64) -> DibPoset {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| mask >> i & 1 == 1).collect();
        self.induced_by(&keep)
    }

    pub fn induced_by(&self, keep: &[usize]) -> DibPoset {
        let elements = keep.iter().map(|&i| self.elements[i]).collect();
        let less: Vec<Vec<bool>> = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| self.less[a][b]).collect())
            .collect();
        let covers = hasse(&less);
        DibPoset { elements, covers, less }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PosetDump {
            elements: self.elements.clone(),
            covers: self.covers.clone(),
        })
        .expect("poset serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dump: PosetDump =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_relations(dump.elements, &dump.covers)
    }

    /// Hasse diagram in Graphviz DOT format, edges drawn upwards.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dib_poset {\n  rankdir=BT;\n");
        for (i, d) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"s{},{}\"];", d.k, d.j);
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

fn synthetic(p: usize) -> Vec<Dib> {
    (1..=p).map(|k| Dib::new(k, 1)).collect()
}

fn hasse(less: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let p = less.len();
    let mut covers = Vec::new();
    for a in 0..p {
        for b in 0..p {
            if less[a][b] && !(0..p).any(|c| less[a][c] && less[c][b]) {
                covers.push((a, b));
            }
        }
    }
    covers
}

/// Builds the DIB poset of a valid Kekuléan strip. Elements are ordered by
/// `(k, j)`.
pub fn build_poset(spec: &StripSpec) -> Result<DibPoset> {
    require_kekulean(spec)?;
    let profile = interface_profile(spec);
    let m = spec.tiers();
    let mut elements = Vec::new();
    let mut index = vec![Vec::new(); m + 1];
    for k in 1..=m {
        for j in 1..=profile.order(k) as usize {
            index[k].push(elements.len());
            elements.push(Dib::new(k, j));
        }
    }
    let lookup = |k: usize, j: usize| index[k].get(j.wrapping_sub(1)).copied();

    // Within every interior fragment the DIBs form one alternating chain
    // first_1 < other_1 < first_2 < other_2 < ...
    let mut relations = Vec::new();
    for frag in fragments(spec).iter().filter(|f| f.upper >= 1 && f.lower <= m) {
        let first = frag.first_bond_interface;
        let other = frag.other_interface();
        for j in 1..=profile.order(first).max(0) as usize {
            let Some(a) = lookup(first, j) else { continue };
            if let Some(b) = lookup(other, j) {
                relations.push((a, b));
            }
            if let Some(b) = j.checked_sub(1).and_then(|jj| lookup(other, jj)) {
                relations.push((b, a));
            }
        }
    }
    DibPoset::from_relations(elements, &relations)
}

/// Order-preserving bijection from poset elements to labels `1..=p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalLabeling {
    labels: Vec<usize>,
    elements_by_label: Vec<usize>,
}

impl NaturalLabeling {
    /// Builds a labeling from `labels[i]` = label of element `i`, checking
    /// that it is a bijection onto `1..=p` and order-preserving.
    pub fn new(poset: &DibPoset, labels: Vec<usize>) -> Result<Self> {
        let p = poset.len();
        if labels.len() != p {
            return Err(Error::NotNatural(format!("expected {p} labels, got {}", labels.len())));
        }
        let mut elements_by_label = vec![usize::MAX; p];
        for (i, &l) in labels.iter().enumerate() {
            if l == 0 || l > p || elements_by_label[l - 1] != usize::MAX {
                return Err(Error::NotNatural(format!("label {l} is out of range or repeated")));
            }
            elements_by_label[l - 1] = i;
        }
        for &(a, b) in poset.covers() {
            if labels[a] >= labels[b] {
                return Err(Error::NotNatural(format!(
                    "{} < {} but label {} >= {}",
                    poset.elements()[a],
                    poset.elements()[b],
                    labels[a],
                    labels[b]
                )));
            }
        }
        Ok(NaturalLabeling { labels, elements_by_label })
    }

    /// Labels elements in the given removal order (which must be a linear
    /// extension).
    pub fn from_order(poset: &DibPoset, order: &[usize]) -> Result<Self> {
        let mut labels = vec![0; poset.len()];
        for (pos, &e) in order.iter().enumerate() {
            if e >= labels.len() {
                return Err(Error::NotNatural(format!("element {e} out of range")));
            }
            labels[e] = pos + 1;
        }
        Self::new(poset, labels)
    }

    pub fn label(&self, element: usize) -> usize {
        self.labels[element]
    }

    pub fn element(&self, label: usize) -> usize {
        self.elements_by_label[label - 1]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Canonical labeling: repeatedly remove the minimal element with the
/// smallest `(j, k)`.
pub fn natural_labeling(poset: &DibPoset) -> NaturalLabeling {
    let p = poset.len();
    let mut pending: Vec<usize> = (0..p).map(|b| poset.predecessors(b).count()).collect();
    let mut removed = vec![false; p];
    let mut order = Vec::with_capacity(p);
    for _ in 0..p {
        let next = (0..p)
            .filter(|&i| !removed[i] && pending[i] == 0)
            .min_by_key(|&i| {
                let d = poset.elements()[i];
                (d.j, d.k, i)
            })
            .expect("a finite poset always has a minimal element");
        removed[next] = true;
        for s in poset.successors(next) {
            pending[s] -= 1;
        }
        order.push(next);
    }
    NaturalLabeling::from_order(poset, &order).expect("removal order is a linear extension")
}

/// All `2^p` induced subposets in ascending bitmask order.
pub fn induced_subposets(poset: &DibPoset) -> impl Iterator<Item = (u64, DibPoset)> + '_ {
    assert!(poset.len() < 64, "subset enumeration needs p < 64");
    (0..1u64 << poset.len()).map(move |mask| (mask, poset.induced(mask)))
}
