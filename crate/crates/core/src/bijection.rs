//! Correspondence between Kekulé structures of a strip and pairs `(A, μ)` of
//! an induced subposet `A` of the DIB poset with a strictly order-preserving
//! map `μ: A -> [n]`.
//!
//! A Kekulé structure is represented by the positions of its double
//! interface bonds only; these determine the rest of the matching.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extensions::Word;
use crate::poset::{build_poset, natural_labeling, Dib, DibPoset};
use crate::strip::{fragments, interface_profile, require_kekulean, FragmentInfo, InterfaceProfile, StripSpec};

/// Induced subposet `A` (listed in `(k, j)` order) with values `μ` aligned to it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderMap {
    #[serde(rename = "A")]
    pub members: Vec<Dib>,
    pub mu: Vec<usize>,
}

impl OrderMap {
    pub fn empty() -> Self {
        OrderMap { members: Vec::new(), mu: Vec::new() }
    }

    pub fn new(mut pairs: Vec<(Dib, usize)>) -> Self {
        pairs.sort();
        let (members, mu) = pairs.into_iter().unzip();
        OrderMap { members, mu }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn value(&self, dib: Dib) -> Option<usize> {
        self.members.iter().position(|&d| d == dib).map(|i| self.mu[i])
    }
}

/// Positions of the double interface bonds: `positions[k - 1][j - 1]` is
/// `pos(s_{k,j})`, i.e. the double bond is `e_{k, pos}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KekuleAssignment {
    pub positions: Vec<Vec<usize>>,
}

impl KekuleAssignment {
    pub fn pos(&self, dib: Dib) -> usize {
        self.positions[dib.k - 1][dib.j - 1]
    }

    /// The set `K_I` as `(k, pos)` pairs, ordered by interface then position.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        self.positions
            .iter()
            .enumerate()
            .flat_map(|(i, ps)| ps.iter().map(move |&p| (i + 1, p)))
            .collect()
    }
}

/// A Kekulé structure together with a choice of which of its proper sextets
/// are promoted to aromatic rings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClarCoverRecord {
    pub map: OrderMap,
    pub base: KekuleAssignment,
    pub aromatic: Vec<Dib>,
}

impl ClarCoverRecord {
    pub fn order(&self) -> usize {
        self.aromatic.len()
    }

    /// Aromatic rings as `(tier, hexagon index)`; the ring of a DIB is the
    /// hexagon directly to its left.
    pub fn aromatic_hexagons(&self) -> Vec<(usize, usize)> {
        self.aromatic
            .iter()
            .map(|&d| (d.k, self.base.pos(d) - 1))
            .collect()
    }
}

/// Bijection machinery for one Kekuléan strip.
#[derive(Debug, Clone)]
pub struct KekuleBijection {
    spec: StripSpec,
    profile: InterfaceProfile,
    poset: DibPoset,
    fragments: Vec<FragmentInfo>,
}

impl KekuleBijection {
    pub fn new(spec: &StripSpec) -> Result<Self> {
        require_kekulean(spec)?;
        Ok(KekuleBijection {
            spec: spec.clone(),
            profile: interface_profile(spec),
            poset: build_poset(spec)?,
            fragments: fragments(spec),
        })
    }

    pub fn spec(&self) -> &StripSpec {
        &self.spec
    }

    pub fn poset(&self) -> &DibPoset {
        &self.poset
    }

    fn index(&self, dib: Dib) -> Result<usize> {
        self.poset
            .index_of(dib)
            .ok_or_else(|| Error::Malformed(format!("{dib} is not an element of the poset")))
    }

    fn check_map(&self, om: &OrderMap) -> Result<Vec<Option<usize>>> {
        if om.members.len() != om.mu.len() {
            return Err(Error::Malformed("A and mu differ in length".into()));
        }
        let mut values = vec![None; self.poset.len()];
        for (&d, &v) in om.members.iter().zip(&om.mu) {
            let i = self.index(d)?;
            if values[i].is_some() {
                return Err(Error::Malformed(format!("{d} listed twice")));
            }
            if v < 1 || v > self.spec.n {
                return Err(Error::NotStrictlyOrderPreserving(format!(
                    "mu({d}) = {v} is outside [1, {}]",
                    self.spec.n
                )));
            }
            values[i] = Some(v);
        }
        for a in 0..self.poset.len() {
            for b in self.poset.successors(a) {
                if let (Some(va), Some(vb)) = (values[a], values[b]) {
                    if va >= vb {
                        return Err(Error::NotStrictlyOrderPreserving(format!(
                            "{} < {} but mu values are {va} and {vb}",
                            self.poset.elements()[a],
                            self.poset.elements()[b]
                        )));
                    }
                }
            }
        }
        Ok(values)
    }

    /// The unique Kekulé structure whose proper-sextet DIBs are `A` and whose
    /// positions are `μ(s) + j` on `A` and `max(μ over A-predecessors ∪ {0}) + j`
    /// elsewhere.
    pub fn kekule_from_map(&self, om: &OrderMap) -> Result<KekuleAssignment> {
        let values = self.check_map(om)?;
        let mut positions: Vec<Vec<usize>> = (1..=self.spec.tiers())
            .map(|k| vec![0; self.profile.order(k) as usize])
            .collect();
        for (i, d) in self.poset.elements().iter().enumerate() {
            let shift = values[i].unwrap_or_else(|| {
                self.poset
                    .predecessors(i)
                    .filter_map(|a| values[a])
                    .max()
                    .unwrap_or(0)
            });
            positions[d.k - 1][d.j - 1] = shift + d.j;
        }
        Ok(KekuleAssignment { positions })
    }

    /// Checks that `ka` has the right number of double bonds per interface,
    /// in range and increasing, and that within every fragment they alternate
    /// between the two interfaces, starting and ending where the fragment's
    /// interface bonds start and end.
    pub fn check_assignment(&self, ka: &KekuleAssignment) -> Result<()> {
        let m = self.spec.tiers();
        if ka.positions.len() != m {
            return Err(Error::NotKekule(format!("expected {m} interfaces")));
        }
        for k in 1..=m {
            let ps = &ka.positions[k - 1];
            let (size, order) = (self.profile.size(k) as usize, self.profile.order(k) as usize);
            if ps.len() != order {
                return Err(Error::NotKekule(format!(
                    "interface {k} has {} double bonds, expected {order}",
                    ps.len()
                )));
            }
            if ps.windows(2).any(|w| w[0] >= w[1]) || ps.iter().any(|&p| p < 1 || p > size) {
                return Err(Error::NotKekule(format!("interface {k} positions {ps:?} invalid")));
            }
        }
        for frag in self.fragments.iter().filter(|f| f.upper >= 1 && f.lower <= m) {
            let (first, other) = (frag.first_bond_interface, frag.other_interface());
            // bonds of a fragment interleave: e_{first,1}, e_{other,1}, e_{first,2}, ...
            let mut doubles: Vec<(usize, usize)> = ka.positions[first - 1]
                .iter()
                .map(|&p| (2 * p - 1, first))
                .chain(ka.positions[other - 1].iter().map(|&p| (2 * p, other)))
                .collect();
            doubles.sort_unstable();
            let last_bond = if frag.shape.last_bond_in_lower() { frag.lower } else { frag.upper };
            let alternates = doubles
                .iter()
                .enumerate()
                .all(|(i, &(_, iface))| iface == if i % 2 == 0 { first } else { other });
            let ends_right = doubles.last().is_none_or(|&(_, iface)| iface == last_bond);
            if !alternates || !ends_right {
                return Err(Error::NotKekule(format!(
                    "double interface bonds of fragment {} do not alternate",
                    frag.index
                )));
            }
        }
        Ok(())
    }

    /// `μ_K(s_{k,j}) = pos(s_{k,j}) - j` on every DIB, in poset element order.
    pub fn shifts(&self, ka: &KekuleAssignment) -> Result<Vec<usize>> {
        self.check_assignment(ka)?;
        Ok(self.poset.elements().iter().map(|&d| ka.pos(d) - d.j).collect())
    }

    /// Recovers `(A_K, μ_K|A_K)`: a DIB belongs to `A_K` exactly when its
    /// shift exceeds every shift below it (and zero).
    pub fn map_from_kekule(&self, ka: &KekuleAssignment) -> Result<OrderMap> {
        let mu = self.shifts(ka)?;
        let pairs = (0..self.poset.len())
            .filter(|&i| {
                let floor = self.poset.predecessors(i).map(|a| mu[a]).max().unwrap_or(0);
                mu[i] > floor
            })
            .map(|i| (self.poset.elements()[i], mu[i]))
            .collect();
        Ok(OrderMap::new(pairs))
    }

    /// Visits every Kekulé structure once: subsets `A` in ascending bitmask
    /// order, then maps `μ` in lexicographic order of their values.
    pub fn for_each_kekule<F: FnMut(&OrderMap, &KekuleAssignment)>(&self, mut visit: F) {
        let p = self.poset.len();
        assert!(p < 64, "subset enumeration needs p < 64");
        for mask in 0..1u64 << p {
            let members: Vec<usize> = (0..p).filter(|&i| mask >> i & 1 == 1).collect();
            let mut values = vec![0usize; members.len()];
            self.assign(&members, 0, &mut values, &mut visit);
        }
    }

    fn assign<F: FnMut(&OrderMap, &KekuleAssignment)>(
        &self,
        members: &[usize],
        at: usize,
        values: &mut Vec<usize>,
        visit: &mut F,
    ) {
        if at == members.len() {
            let om = OrderMap {
                members: members.iter().map(|&i| self.poset.elements()[i]).collect(),
                mu: values.clone(),
            };
            let ka = self.kekule_from_map(&om).expect("enumerated maps are strictly order-preserving");
            visit(&om, &ka);
            return;
        }
        let e = members[at];
        for v in 1..=self.spec.n {
            let ok = (0..at).all(|b| {
                let (other, w) = (members[b], values[b]);
                !(self.poset.less(other, e) && w >= v) && !(self.poset.less(e, other) && v >= w)
            });
            if ok {
                values[at] = v;
                self.assign(members, at + 1, values, visit);
            }
        }
    }

    pub fn enumerate_kekule(&self) -> Vec<(OrderMap, KekuleAssignment)> {
        let mut out = Vec::new();
        self.for_each_kekule(|om, ka| out.push((om.clone(), ka.clone())));
        out
    }

    /// Every Clar cover: each Kekulé structure with each subset of its
    /// proper sextets turned aromatic.
    pub fn for_each_clar_cover<F: FnMut(&ClarCoverRecord)>(&self, mut visit: F) {
        self.for_each_kekule(|om, ka| {
            let a = om.len();
            for sel in 0..1u64 << a {
                let aromatic = (0..a)
                    .filter(|&i| sel >> i & 1 == 1)
                    .map(|i| om.members[i])
                    .collect();
                visit(&ClarCoverRecord { map: om.clone(), base: ka.clone(), aromatic });
            }
        });
    }

    pub fn generate_clar_covers(&self) -> Vec<ClarCoverRecord> {
        let mut out = Vec::new();
        self.for_each_clar_cover(|r| out.push(r.clone()));
        out
    }

    /// The linear extension of the induced subposet `A` that `μ` belongs to
    /// in the descent decomposition of `Ω°_A`: elements sorted by value, ties
    /// broken by decreasing label of the canonical labeling of `A`. Returns
    /// the subset bitmask of `A` and the word.
    pub fn attributed_extension(&self, om: &OrderMap) -> Result<(u64, Word)> {
        self.check_map(om)?;
        let mut mask = 0u64;
        let mut indices = Vec::with_capacity(om.len());
        for &d in &om.members {
            let i = self.index(d)?;
            mask |= 1 << i;
            indices.push(i);
        }
        // members are in (k, j) order, which is the element order of the
        // induced subposet
        let sub = self.poset.induced(mask);
        let labeling = natural_labeling(&sub);
        let mut order: Vec<usize> = (0..om.len()).collect();
        order.sort_by_key(|&i| (om.mu[i], std::cmp::Reverse(labeling.label(i))));
        Ok((mask, order.into_iter().map(|i| labeling.label(i)).collect()))
    }
}

pub fn kekule_from_map(spec: &StripSpec, om: &OrderMap) -> Result<KekuleAssignment> {
    KekuleBijection::new(spec)?.kekule_from_map(om)
}

pub fn map_from_kekule(spec: &StripSpec, ka: &KekuleAssignment) -> Result<OrderMap> {
    KekuleBijection::new(spec)?.map_from_kekule(ka)
}

pub fn enumerate_kekule(spec: &StripSpec) -> Result<Vec<(OrderMap, KekuleAssignment)>> {
    Ok(KekuleBijection::new(spec)?.enumerate_kekule())
}

pub fn generate_clar_covers(spec: &StripSpec) -> Result<Vec<ClarCoverRecord>> {
    Ok(KekuleBijection::new(spec)?.generate_clar_covers())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strip::parse_strip;

    fn bij(text: &str) -> KekuleBijection {
        KekuleBijection::new(&parse_strip(text).unwrap()).unwrap()
    }

    fn ka(positions: &[&[usize]]) -> KekuleAssignment {
        KekuleAssignment { positions: positions.iter().map(|p| p.to_vec()).collect() }
    }

    const S11: Dib = Dib { k: 1, j: 1 };
    const S21: Dib = Dib { k: 2, j: 1 };

    #[test]
    fn construct_from_maps() {
        let b = bij("WRN 2");
        assert_eq!(b.kekule_from_map(&OrderMap::empty()).unwrap(), ka(&[&[1], &[1]]));
        let om = OrderMap::new(vec![(S11, 1), (S21, 2)]);
        assert_eq!(b.kekule_from_map(&om).unwrap(), ka(&[&[2], &[3]]));
        let om = OrderMap::new(vec![(S21, 1)]);
        assert_eq!(b.kekule_from_map(&om).unwrap(), ka(&[&[1], &[2]]));
    }

    #[test]
    fn rejects_non_strict_maps() {
        let b = bij("WRN 2");
        let om = OrderMap::new(vec![(S11, 2), (S21, 2)]);
        assert!(matches!(b.kekule_from_map(&om), Err(Error::NotStrictlyOrderPreserving(_))));
        let om = OrderMap::new(vec![(S11, 3)]);
        assert!(b.kekule_from_map(&om).is_err());
    }

    #[test]
    fn deconstruct_examples() {
        let b = bij("WRN 2");
        assert_eq!(b.map_from_kekule(&ka(&[&[1], &[1]])).unwrap(), OrderMap::empty());
        assert_eq!(b.shifts(&ka(&[&[2], &[2]])).unwrap(), vec![1, 1]);
        assert_eq!(b.map_from_kekule(&ka(&[&[2], &[2]])).unwrap(), OrderMap::new(vec![(S11, 1)]));
    }

    #[test]
    fn rejects_non_alternating_assignments() {
        let b = bij("WRN 2");
        // e_{2,1} lies left of e_{1,2}: the lower double bond comes first
        assert!(matches!(b.map_from_kekule(&ka(&[&[2], &[1]])), Err(Error::NotKekule(_))));
        assert!(b.map_from_kekule(&ka(&[&[4], &[1]])).is_err());
        assert!(b.map_from_kekule(&ka(&[&[1, 2], &[1]])).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(bij("WRN 2").enumerate_kekule().len(), 6);
        assert_eq!(bij("WN 3").enumerate_kekule().len(), 4);
    }

    #[test]
    fn clar_covers_of_parallelogram() {
        let covers = bij("WRN 2").generate_clar_covers();
        let mut hist = [0usize; 3];
        for c in &covers {
            hist[c.order()] += 1;
        }
        assert_eq!(covers.len(), 13);
        assert_eq!(hist, [6, 6, 1]);
        assert_eq!(bij("WN 1").generate_clar_covers().len(), 3);
    }

    #[test]
    fn round_trips() {
        for text in ["WRN 3", "WWRNN 2", "WNWN 2", "WLWNRN 2"] {
            let b = bij(text);
            for (om, k) in b.enumerate_kekule() {
                assert_eq!(b.map_from_kekule(&k).unwrap(), om, "{text}");
            }
        }
    }

    #[test]
    fn attribution_is_a_linear_extension() {
        let b = bij("WWRNN 3");
        b.for_each_kekule(|om, _| {
            let (mask, w) = b.attributed_extension(om).unwrap();
            let sub = b.poset().induced(mask);
            crate::extensions::check_extension(&w, &sub, &natural_labeling(&sub)).unwrap();
        });
    }

    #[test]
    fn json_line_fields() {
        let b = bij("WRN 2");
        let om = OrderMap::new(vec![(S11, 1), (S21, 2)]);
        let text = serde_json::to_string(&om).unwrap();
        assert_eq!(text, r#"{"A":[{"k":1,"j":1},{"k":2,"j":1}],"mu":[1,2]}"#);
        assert_eq!(b.kekule_from_map(&om).unwrap().bonds(), vec![(1, 2), (2, 3)]);
    }
}
