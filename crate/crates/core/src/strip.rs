//! Geometry of regular m-tier benzenoid strips.
//!
//! A strip is described by the shapes of its `m + 1` fragments together with
//! the length `n` of its top and bottom tiers. Interface `k` (for `k` in
//! `1..=m`) is the set of vertical bonds of tier `k`; fragment `k` is the
//! zigzag slab between interfaces `k - 1` and `k`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shape of a fragment, classified by which interface holds its leftmost and
/// rightmost interface bonds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shape {
    /// Both extreme bonds in the lower interface.
    W,
    /// Both extreme bonds in the upper interface.
    N,
    /// First bond upper, last bond lower.
    R,
    /// First bond lower, last bond upper.
    L,
}

impl Shape {
    pub const ALL: [Shape; 4] = [Shape::W, Shape::N, Shape::R, Shape::L];

    pub fn from_char(c: char) -> Result<Shape> {
        match c.to_ascii_uppercase() {
            'W' => Ok(Shape::W),
            'N' => Ok(Shape::N),
            'R' => Ok(Shape::R),
            'L' => Ok(Shape::L),
            _ => Err(Error::UnknownShape(c)),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Shape::W => 'W',
            Shape::N => 'N',
            Shape::R => 'R',
            Shape::L => 'L',
        }
    }

    /// Change in interface size from the upper to the lower interface.
    pub fn size_delta(self) -> i64 {
        match self {
            Shape::W => 1,
            Shape::N => -1,
            Shape::R | Shape::L => 0,
        }
    }

    /// Shift of the lower tier's left edge relative to the upper tier, in
    /// half-hexagon units.
    pub fn offset_delta(self) -> i64 {
        match self {
            Shape::W | Shape::L => -1,
            Shape::N | Shape::R => 1,
        }
    }

    /// Whether the leftmost interface bond of the fragment lies in its lower
    /// interface.
    pub fn first_bond_in_lower(self) -> bool {
        matches!(self, Shape::W | Shape::L)
    }

    /// Whether the rightmost interface bond of the fragment lies in its lower
    /// interface.
    pub fn last_bond_in_lower(self) -> bool {
        matches!(self, Shape::W | Shape::R)
    }

    fn from_extremes(first_lower: bool, last_lower: bool) -> Shape {
        match (first_lower, last_lower) {
            (true, true) => Shape::W,
            (false, false) => Shape::N,
            (false, true) => Shape::R,
            (true, false) => Shape::L,
        }
    }

    /// Left-right mirror image.
    pub fn mirrored(self) -> Shape {
        match self {
            Shape::R => Shape::L,
            Shape::L => Shape::R,
            s => s,
        }
    }

    /// Shape after turning the strip upside down.
    pub fn flipped(self) -> Shape {
        match self {
            Shape::W => Shape::N,
            Shape::N => Shape::W,
            Shape::R => Shape::L,
            Shape::L => Shape::R,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Shape sequence plus strip length; fully determines the strip.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StripSpec {
    pub shapes: Vec<Shape>,
    pub n: usize,
}

impl StripSpec {
    pub fn new(shapes: Vec<Shape>, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidLength(n as i64));
        }
        if shapes.len() < 2 {
            return Err(Error::Malformed(format!(
                "a strip needs at least two fragment shapes, got {}",
                shapes.len()
            )));
        }
        Ok(StripSpec { shapes, n })
    }

    /// The parallelogram `M(tiers, n)`: shapes `W R ... R N`.
    pub fn parallelogram(tiers: usize, n: usize) -> Result<Self> {
        if tiers < 1 {
            return Err(Error::Malformed("parallelogram needs at least one tier".into()));
        }
        let mut shapes = vec![Shape::W];
        shapes.extend(std::iter::repeat_n(Shape::R, tiers - 1));
        shapes.push(Shape::N);
        StripSpec::new(shapes, n)
    }

    pub fn from_letters(letters: &str, n: usize) -> Result<Self> {
        let shapes = parse_shapes(letters)?;
        StripSpec::new(shapes, n)
    }

    /// Number of tiers (and of non-empty interfaces).
    pub fn tiers(&self) -> usize {
        self.shapes.len() - 1
    }

    pub fn letters(&self) -> String {
        self.shapes.iter().map(|s| s.as_char()).collect()
    }

    pub fn with_length(&self, n: usize) -> Result<Self> {
        StripSpec::new(self.shapes.clone(), n)
    }

    pub fn profile(&self) -> InterfaceProfile {
        interface_profile(self)
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("strip spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: StripSpec =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        StripSpec::new(spec.shapes, spec.n)
    }
}

impl fmt::Display for StripSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.letters(), self.n)
    }
}

impl FromStr for StripSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_strip(s)
    }
}

pub fn parse_shapes(letters: &str) -> Result<Vec<Shape>> {
    if letters.is_empty() {
        return Err(Error::Malformed("empty shape sequence".into()));
    }
    letters.chars().map(Shape::from_char).collect()
}

fn parse_int(token: &str, what: &str) -> Result<i64> {
    token
        .parse::<i64>()
        .map_err(|_| Error::Malformed(format!("expected integer {what}, got {token:?}")))
}

fn positive(value: i64) -> Result<usize> {
    if value < 1 {
        Err(Error::InvalidLength(value))
    } else {
        Ok(value as usize)
    }
}

/// Parses `M <tiers> <n>` or `<shape-letters> <n>`.
pub fn parse_strip(text: &str) -> Result<StripSpec> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    match tokens.as_slice() {
        ["M" | "m", tiers, n] => {
            let tiers = parse_int(tiers, "tier count")?;
            if tiers < 1 {
                return Err(Error::Malformed(format!("tier count must be positive, got {tiers}")));
            }
            let n = positive(parse_int(n, "length")?)?;
            StripSpec::parallelogram(tiers as usize, n)
        }
        [letters, n] => {
            let shapes = parse_shapes(letters)?;
            let n = positive(parse_int(n, "length")?)?;
            StripSpec::new(shapes, n)
        }
        _ => Err(Error::Malformed(format!(
            "expected `M <tiers> <n>` or `<shapes> <n>`, got {text:?}"
        ))),
    }
}

/// Interface sizes and orders, indexed by `k - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterfaceProfile {
    pub n: usize,
    pub sizes: Vec<i64>,
    pub orders: Vec<i64>,
}

impl InterfaceProfile {
    pub fn size(&self, k: usize) -> i64 {
        self.sizes[k - 1]
    }

    pub fn order(&self, k: usize) -> i64 {
        self.orders[k - 1]
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    /// First interface (1-based) with negative order, if any.
    pub fn first_negative(&self) -> Option<(usize, i64)> {
        self.orders
            .iter()
            .enumerate()
            .find(|(_, &o)| o < 0)
            .map(|(i, &o)| (i + 1, o))
    }
}

pub fn interface_profile(spec: &StripSpec) -> InterfaceProfile {
    let n = spec.n as i64;
    let m = spec.tiers();
    let mut sizes = Vec::with_capacity(m);
    let mut size = n + 1;
    sizes.push(size);
    for shape in &spec.shapes[1..m] {
        size += shape.size_delta();
        sizes.push(size);
    }
    let orders = sizes.iter().map(|s| s - n).collect();
    InterfaceProfile { n: spec.n, sizes, orders }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub first_is_w: bool,
    pub last_is_n: bool,
    pub last_order_is_one: bool,
    pub tiers_nonempty: bool,
    pub is_kekulean: bool,
    pub first_negative: Option<(usize, i64)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.first_is_w && self.last_is_n && self.last_order_is_one && self.tiers_nonempty
    }

    /// Error describing why a strip cannot carry a poset, if any.
    pub fn kekulean_error(&self) -> Option<Error> {
        self.first_negative
            .map(|(interface, order)| Error::NonKekulean { interface, order })
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut problems = Vec::new();
        if !self.first_is_w {
            problems.push("first fragment is not W");
        }
        if !self.last_is_n {
            problems.push("last fragment is not N");
        }
        if !self.last_order_is_one {
            problems.push("top and bottom tiers differ in length");
        }
        if !self.tiers_nonempty {
            problems.push("some tier has no hexagon");
        }
        if problems.is_empty() {
            write!(f, "valid")
        } else {
            write!(f, "{}", problems.join("; "))
        }
    }
}

pub fn validate(spec: &StripSpec) -> ValidationReport {
    let profile = interface_profile(spec);
    let first_negative = profile.first_negative();
    ValidationReport {
        first_is_w: spec.shapes.first() == Some(&Shape::W),
        last_is_n: spec.shapes.last() == Some(&Shape::N),
        last_order_is_one: profile.orders.last() == Some(&1),
        tiers_nonempty: profile.sizes.iter().all(|&s| s >= 2),
        is_kekulean: first_negative.is_none(),
        first_negative,
    }
}

pub(crate) fn require_valid(spec: &StripSpec) -> Result<ValidationReport> {
    let report = validate(spec);
    if report.is_valid() {
        Ok(report)
    } else {
        Err(Error::InvalidStrip(report))
    }
}

pub(crate) fn require_kekulean(spec: &StripSpec) -> Result<()> {
    let report = require_valid(spec)?;
    match report.kekulean_error() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentInfo {
    /// 1-based fragment index.
    pub index: usize,
    pub shape: Shape,
    pub upper: usize,
    pub lower: usize,
    /// Interface containing the fragment's leftmost interface bond.
    pub first_bond_interface: usize,
}

impl FragmentInfo {
    /// Interface not containing the leftmost bond.
    pub fn other_interface(&self) -> usize {
        if self.first_bond_interface == self.lower {
            self.upper
        } else {
            self.lower
        }
    }
}

pub fn fragments(spec: &StripSpec) -> Vec<FragmentInfo> {
    spec.shapes
        .iter()
        .enumerate()
        .map(|(i, &shape)| {
            let index = i + 1;
            let (upper, lower) = (index - 1, index);
            FragmentInfo {
                index,
                shape,
                upper,
                lower,
                first_bond_interface: if shape.first_bond_in_lower() { lower } else { upper },
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    /// Vertical bond `e_{k,p}`, `p` counted from the left starting at 1.
    Interface { k: usize, p: usize },
    /// Slanted bond between partition lines.
    Spine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn other(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }
}

/// A lattice hexagon. Edge ids are listed clockwise from the top apex:
/// top-right, right, bottom-right, bottom-left, left, top-left.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hexagon {
    pub tier: usize,
    /// 1-based position within the tier, from the left.
    pub index: usize,
    pub vertices: [usize; 6],
    pub edges: [usize; 6],
}

impl Hexagon {
    pub fn top_right(&self) -> usize {
        self.edges[0]
    }
    pub fn right(&self) -> usize {
        self.edges[1]
    }
    pub fn bottom_right(&self) -> usize {
        self.edges[2]
    }
    pub fn bottom_left(&self) -> usize {
        self.edges[3]
    }
    pub fn left(&self) -> usize {
        self.edges[4]
    }
    pub fn top_left(&self) -> usize {
        self.edges[5]
    }
}

/// Explicit benzenoid graph. Vertices are lattice points `(x, y)` with `y`
/// growing downwards; vertical bonds of tier `k` span `y = 2k .. 2k + 1`.
/// Vertex ids follow `(y, x)` order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenzenoidGraph {
    pub coords: Vec<(i64, i64)>,
    pub edges: Vec<Edge>,
    pub hexagons: Vec<Hexagon>,
    pub adjacency: Vec<Vec<(usize, usize)>>,
    /// `interfaces[k - 1][p - 1]` is the edge id of `e_{k,p}`.
    pub interfaces: Vec<Vec<usize>>,
}

impl BenzenoidGraph {
    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn tiers(&self) -> usize {
        self.interfaces.len()
    }

    pub fn hexagons_in_tier(&self, k: usize) -> usize {
        self.hexagons.iter().filter(|h| h.tier == k).count()
    }

    fn interface_x_range(&self, k: usize) -> (i64, i64) {
        let xs = self.interfaces[k - 1]
            .iter()
            .map(|&e| self.coords[self.edges[e].u].0);
        let (mut lo, mut hi) = (i64::MAX, i64::MIN);
        for x in xs {
            lo = lo.min(x);
            hi = hi.max(x);
        }
        (lo, hi)
    }

    /// Re-derives fragment shapes from the positions of the interface bonds.
    pub fn shapes(&self) -> Vec<Shape> {
        let m = self.tiers();
        let mut shapes = vec![Shape::W];
        for kappa in 2..=m {
            let (ulo, uhi) = self.interface_x_range(kappa - 1);
            let (llo, lhi) = self.interface_x_range(kappa);
            shapes.push(Shape::from_extremes(llo < ulo, lhi > uhi));
        }
        shapes.push(Shape::N);
        shapes
    }
}

#[derive(Default)]
struct GraphBuilder {
    vertex_ids: BTreeMap<(i64, i64), usize>,
    edges: BTreeMap<((i64, i64), (i64, i64)), EdgeKind>,
}

impl GraphBuilder {
    fn edge(&mut self, a: (i64, i64), b: (i64, i64), kind: EdgeKind) {
        let key = if (a.1, a.0) <= (b.1, b.0) { (a, b) } else { (b, a) };
        self.edges.insert(key, kind);
        self.vertex_ids.insert((a.1, a.0), 0);
        self.vertex_ids.insert((b.1, b.0), 0);
    }
}

pub fn build_graph(spec: &StripSpec) -> Result<BenzenoidGraph> {
    require_valid(spec)?;
    let profile = interface_profile(spec);
    let m = spec.tiers();

    let mut offsets = vec![0i64; m];
    for k in 1..m {
        offsets[k] = offsets[k - 1] + spec.shapes[k].offset_delta();
    }

    let mut builder = GraphBuilder::default();
    // (tier, index, left column)
    let mut hex_sites = Vec::new();
    for k in 1..=m {
        let x0 = offsets[k - 1];
        let bonds = profile.size(k) as usize;
        let (top, bottom) = (2 * k as i64, 2 * k as i64 + 1);
        for p in 0..bonds {
            let x = x0 + 2 * p as i64;
            builder.edge((x, top), (x, bottom), EdgeKind::Interface { k, p: p + 1 });
        }
        for h in 0..bonds - 1 {
            let x = x0 + 2 * h as i64;
            builder.edge((x, top), (x + 1, top - 1), EdgeKind::Spine);
            builder.edge((x + 1, top - 1), (x + 2, top), EdgeKind::Spine);
            builder.edge((x, bottom), (x + 1, bottom + 1), EdgeKind::Spine);
            builder.edge((x + 1, bottom + 1), (x + 2, bottom), EdgeKind::Spine);
            hex_sites.push((k, h + 1, x));
        }
    }

    let mut coords = Vec::with_capacity(builder.vertex_ids.len());
    for (i, (key, id)) in builder.vertex_ids.iter_mut().enumerate() {
        *id = i;
        coords.push((key.1, key.0));
    }
    let vid = |p: (i64, i64)| builder.vertex_ids[&(p.1, p.0)];

    let mut edges = Vec::with_capacity(builder.edges.len());
    let mut edge_ids = BTreeMap::new();
    let mut adjacency = vec![Vec::new(); coords.len()];
    let mut interfaces = vec![Vec::new(); m];
    for (&(a, b), &kind) in &builder.edges {
        let (u, v) = (vid(a), vid(b));
        let id = edges.len();
        edges.push(Edge { u, v, kind });
        edge_ids.insert((u.min(v), u.max(v)), id);
        adjacency[u].push((v, id));
        adjacency[v].push((u, id));
        if let EdgeKind::Interface { k, p } = kind {
            interfaces[k - 1].push((p, id));
        }
    }
    let interfaces: Vec<Vec<usize>> = interfaces
        .into_iter()
        .map(|mut bonds| {
            bonds.sort_unstable();
            bonds.into_iter().map(|(_, id)| id).collect()
        })
        .collect();

    let hexagons = hex_sites
        .into_iter()
        .map(|(tier, index, x)| {
            let (top, bottom) = (2 * tier as i64, 2 * tier as i64 + 1);
            let ring = [
                (x + 1, top - 1),
                (x + 2, top),
                (x + 2, bottom),
                (x + 1, bottom + 1),
                (x, bottom),
                (x, top),
            ];
            let vertices = ring.map(vid);
            let mut hex_edges = [0usize; 6];
            for i in 0..6 {
                let (u, v) = (vertices[i], vertices[(i + 1) % 6]);
                hex_edges[i] = edge_ids[&(u.min(v), u.max(v))];
            }
            Hexagon { tier, index, vertices, edges: hex_edges }
        })
        .collect();

    Ok(BenzenoidGraph { coords, edges, hexagons, adjacency, interfaces })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(text: &str) -> StripSpec {
        parse_strip(text).unwrap()
    }

    #[test]
    fn parses_named_parallelogram() {
        let s = spec("M 2 2");
        assert_eq!(s.shapes, vec![Shape::W, Shape::R, Shape::N]);
        assert_eq!(s.n, 2);
        assert_eq!(spec("M 1 4").shapes, vec![Shape::W, Shape::N]);
    }

    #[test]
    fn parses_shape_sequences() {
        let s = spec("WWRNN 3");
        assert_eq!(s.letters(), "WWRNN");
        assert_eq!(s.n, 3);
        let s = spec("WN 5");
        assert_eq!(s.shapes, vec![Shape::W, Shape::N]);
        assert_eq!(s.tiers(), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_strip("WXN 3"), Err(Error::UnknownShape('X'))));
        assert!(matches!(parse_strip("WRN 0"), Err(Error::InvalidLength(0))));
        assert!(matches!(parse_strip("WRN -2"), Err(Error::InvalidLength(-2))));
        assert!(matches!(parse_strip("WRN"), Err(Error::Malformed(_))));
        assert!(matches!(parse_strip("WRN two"), Err(Error::Malformed(_))));
        assert!(matches!(parse_strip("M 0 3"), Err(Error::Malformed(_))));
        assert!(matches!(parse_strip("W 3"), Err(Error::Malformed(_))));
    }

    #[test]
    fn profiles() {
        assert_eq!(spec("WWRNN 3").profile().orders, vec![1, 2, 2, 1]);
        assert_eq!(spec("WRN 2").profile().orders, vec![1, 1]);
        let p = spec("WNNWWN 4").profile();
        assert_eq!(p.orders, vec![1, 0, -1, 0, 1]);
        assert_eq!(p.sizes, vec![5, 4, 3, 4, 5]);
        assert_eq!(p.first_negative(), Some((3, -1)));
    }

    #[test]
    fn validation() {
        let r = spec("WRN 2").validate();
        assert!(r.is_valid() && r.is_kekulean);
        let r = spec("WNNWWN 4").validate();
        assert!(r.is_valid());
        assert!(!r.is_kekulean);
        let r = spec("RWN 2").validate();
        assert!(!r.first_is_w);
        assert!(!r.is_valid());
        let r = spec("WWN 2").validate();
        assert!(!r.last_order_is_one);
        // n = 1 with an order-0 interface leaves an empty tier
        let r = spec("WNWN 1").validate();
        assert!(!r.tiers_nonempty);
    }

    #[test]
    fn benzene_graph() {
        let g = build_graph(&spec("WN 1")).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.interfaces, vec![vec![g.hexagons[0].left(), g.hexagons[0].right()]]);
    }

    #[test]
    fn parallelogram_graph() {
        let g = build_graph(&spec("WRN 2")).unwrap();
        assert_eq!(g.hexagons_in_tier(1), 2);
        assert_eq!(g.hexagons_in_tier(2), 2);
        assert_eq!(g.vertex_count(), 16);
        assert_eq!(g.vertex_count() % 2, 0);
        assert!((0..g.vertex_count()).all(|v| (2..=3).contains(&g.degree(v))));
        // lower tier is shifted to the right
        let first = |k: usize| g.coords[g.edges[g.interfaces[k - 1][0]].u].0;
        assert!(first(2) > first(1));
    }

    #[test]
    fn flake_graph() {
        let g = build_graph(&spec("WWRNN 3")).unwrap();
        let counts: Vec<usize> = (1..=4).map(|k| g.hexagons_in_tier(k)).collect();
        assert_eq!(counts, vec![3, 4, 4, 3]);
        for (k, bonds) in g.interfaces.iter().enumerate() {
            assert_eq!(bonds.len() as i64, spec("WWRNN 3").profile().size(k + 1));
        }
    }

    #[test]
    fn hexagon_interface_bonds_are_consecutive() {
        let g = build_graph(&spec("WLWNRN 3")).unwrap();
        for h in &g.hexagons {
            let bonds = &g.interfaces[h.tier - 1];
            assert_eq!(bonds[h.index - 1], h.left());
            assert_eq!(bonds[h.index], h.right());
        }
    }

    #[test]
    fn invalid_strips_have_no_graph() {
        assert!(matches!(build_graph(&spec("RWN 2")), Err(Error::InvalidStrip(_))));
    }

    #[test]
    fn shapes_round_trip_through_graph() {
        for text in ["WRN 2", "WLN 3", "WWRNN 3", "WNNWWN 4", "WWLNRN 2", "WN 4"] {
            let s = spec(text);
            assert_eq!(build_graph(&s).unwrap().shapes(), s.shapes, "{text}");
        }
    }

    #[test]
    fn json_echo() {
        let s = spec("WWRNN 3");
        assert_eq!(s.to_json(), r#"{"shapes":["W","W","R","N","N"],"n":3}"#);
        assert_eq!(StripSpec::from_json(&s.to_json()).unwrap(), s);
    }
}
