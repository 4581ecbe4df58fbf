//! Two-mode (bipartite) network model and its file formats.
//!
//! Nodes live in two disjoint sets (modes); every link crosses between them.
//! Internally nodes get dense 0-based indices with the whole first mode ahead
//! of the second; original labels are preserved for output. Duplicate links
//! between the same pair are merged by summing weights, so after construction
//! each unordered pair appears at most once.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

/// One of the two node sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    One,
    Two,
}

impl Mode {
    /// The opposite mode.
    pub fn other(self) -> Mode {
        match self {
            Mode::One => Mode::Two,
            Mode::Two => Mode::One,
        }
    }
}

/// Dense 0-based node index; mode-1 nodes occupy `0..n1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub usize);

/// Orientation of a link relative to its (mode-1, mode-2) endpoint pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinkKind {
    /// Undirected edge; counts as an arc in both directions.
    #[serde(rename = "edge")]
    Undirected,
    /// Arc from the mode-1 endpoint to the mode-2 endpoint.
    #[serde(rename = "arc12")]
    FromFirst,
    /// Arc from the mode-2 endpoint to the mode-1 endpoint.
    #[serde(rename = "arc21")]
    FromSecond,
}

impl LinkKind {
    fn merged_with(self, other: LinkKind) -> LinkKind {
        if self == other {
            self
        } else {
            // Opposite arcs, or an arc plus an edge, cover both directions.
            LinkKind::Undirected
        }
    }

    fn points_to_first(self) -> bool {
        matches!(self, LinkKind::Undirected | LinkKind::FromSecond)
    }

    fn points_to_second(self) -> bool {
        matches!(self, LinkKind::Undirected | LinkKind::FromFirst)
    }
}

/// A merged link between a mode-1 node `u` and a mode-2 node `v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Link<S> {
    pub u: NodeId,
    pub v: NodeId,
    pub weight: S,
    pub kind: LinkKind,
}

/// Adjacency entry as seen from one endpoint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Neighbor<S> {
    pub id: NodeId,
    pub weight: S,
    /// Link carries an arc toward the node owning this entry (edges do both).
    pub incoming: bool,
    /// Link carries an arc away from the node owning this entry.
    pub outgoing: bool,
}

#[derive(Debug, Error)]
pub enum NetworkError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: expected `*vertices n n1` two-mode header")]
    MalformedHeader { line: usize },
    #[error("line {line}: unsupported section `{name}`")]
    UnsupportedSection { line: usize, name: String },
    #[error("line {line}: cannot parse `{token}`")]
    ParseToken { line: usize, token: String },
    #[error("line {line}: vertex index {index} out of range 1..={n}")]
    IndexOutOfRange { line: usize, index: usize, n: usize },
    #[error("line {line}: link {a}-{b} stays inside one mode")]
    SameModeLink { line: usize, a: usize, b: usize },
    #[error("line {line}: link weight {value} must be positive and finite")]
    InvalidWeight { line: usize, value: f64 },
    #[error("label `{label}` appears in both modes")]
    ModeConflict { label: String },
    #[error("declared {declared} mode-{mode} nodes but the stream names {found}")]
    DeclaredCountTooSmall {
        mode: u8,
        declared: usize,
        found: usize,
    },
    #[error("node measurement vector has {got} entries, expected {expected}")]
    MeasurementLength { got: usize, expected: usize },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Membership mask over a network's nodes with per-mode member counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeSubset {
    member: Vec<bool>,
    n1: usize,
    size1: usize,
    size2: usize,
}

impl NodeSubset {
    /// Subset containing every node of `net`.
    pub fn full<S: Scalar>(net: &BipartiteNetwork<S>) -> Self {
        NodeSubset {
            member: vec![true; net.n()],
            n1: net.n1(),
            size1: net.n1(),
            size2: net.n2(),
        }
    }

    /// Subset containing no node of `net`.
    pub fn empty<S: Scalar>(net: &BipartiteNetwork<S>) -> Self {
        NodeSubset {
            member: vec![false; net.n()],
            n1: net.n1(),
            size1: 0,
            size2: 0,
        }
    }

    /// Subset built from explicit node indices.
    pub fn from_indices<S, I>(net: &BipartiteNetwork<S>, ids: I) -> Self
    where
        S: Scalar,
        I: IntoIterator<Item = NodeId>,
    {
        let mut s = NodeSubset::empty(net);
        for v in ids {
            s.insert(v);
        }
        s
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.member[v.0]
    }

    pub fn insert(&mut self, v: NodeId) {
        if !self.member[v.0] {
            self.member[v.0] = true;
            if v.0 < self.n1 {
                self.size1 += 1;
            } else {
                self.size2 += 1;
            }
        }
    }

    pub fn remove(&mut self, v: NodeId) {
        if self.member[v.0] {
            self.member[v.0] = false;
            if v.0 < self.n1 {
                self.size1 -= 1;
            } else {
                self.size2 -= 1;
            }
        }
    }

    /// Member count in one mode.
    pub fn size(&self, mode: Mode) -> usize {
        match mode {
            Mode::One => self.size1,
            Mode::Two => self.size2,
        }
    }

    pub fn len(&self) -> usize {
        self.size1 + self.size2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.member
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| NodeId(i))
    }

    /// True if `self` is contained in `other` node-wise.
    pub fn is_subset_of(&self, other: &NodeSubset) -> bool {
        self.member
            .iter()
            .zip(&other.member)
            .all(|(&a, &b)| !a || b)
    }
}

/// A two-mode network with positive link weights and optional per-node
/// measurements.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteNetwork<S> {
    n1: usize,
    n2: usize,
    labels: Vec<String>,
    links: Vec<Link<S>>,
    adj: Vec<Vec<Neighbor<S>>>,
    measurement: Option<Vec<S>>,
    // Construction-time caches used by property evaluation.
    wdeg: Vec<S>,
    max_nbr_deg: Vec<usize>,
    has_arcs: bool,
}

impl<S: Scalar> BipartiteNetwork<S> {
    /// Builds a network from raw links given as `(a, b, weight, kind)` where
    /// `a`, `b` are node indices in either order and `kind` is oriented from
    /// `a` to `b`. Labels default to 1-based index strings when `None`.
    pub fn new(
        n1: usize,
        n2: usize,
        labels: Option<Vec<String>>,
        raw: Vec<(usize, usize, S, LinkKind)>,
        measurement: Option<Vec<S>>,
    ) -> Result<Self, NetworkError> {
        let n = n1 + n2;
        let labels = match labels {
            Some(l) => {
                assert_eq!(l.len(), n, "label count must match node count");
                l
            }
            None => (1..=n).map(|i| i.to_string()).collect(),
        };
        if let Some(t) = &measurement {
            if t.len() != n {
                return Err(NetworkError::MeasurementLength {
                    got: t.len(),
                    expected: n,
                });
            }
        }

        let mut merged: BTreeMap<(usize, usize), (S, LinkKind)> = BTreeMap::new();
        for (line, (a, b, w, kind)) in raw.into_iter().enumerate() {
            let line = line + 1;
            for &x in &[a, b] {
                if x >= n {
                    return Err(NetworkError::IndexOutOfRange {
                        line,
                        index: x + 1,
                        n,
                    });
                }
            }
            if (a < n1) == (b < n1) {
                return Err(NetworkError::SameModeLink {
                    line,
                    a: a + 1,
                    b: b + 1,
                });
            }
            if !w.is_finite() || w <= S::zero() {
                return Err(NetworkError::InvalidWeight {
                    line,
                    value: w.to_f64().unwrap_or(f64::NAN),
                });
            }
            // Normalize so the key is (mode-1 index, mode-2 index).
            let (u, v, kind) = if a < n1 {
                (a, b, kind)
            } else {
                let flipped = match kind {
                    LinkKind::Undirected => LinkKind::Undirected,
                    LinkKind::FromFirst => LinkKind::FromSecond,
                    LinkKind::FromSecond => LinkKind::FromFirst,
                };
                (b, a, flipped)
            };
            merged
                .entry((u, v))
                .and_modify(|(ew, ek)| {
                    *ew = *ew + w;
                    *ek = ek.merged_with(kind);
                })
                .or_insert((w, kind));
        }

        let links: Vec<Link<S>> = merged
            .into_iter()
            .map(|((u, v), (weight, kind))| Link {
                u: NodeId(u),
                v: NodeId(v),
                weight,
                kind,
            })
            .collect();

        let mut adj: Vec<Vec<Neighbor<S>>> = vec![Vec::new(); n];
        let mut has_arcs = false;
        for l in &links {
            if l.kind != LinkKind::Undirected {
                has_arcs = true;
            }
            adj[l.u.0].push(Neighbor {
                id: l.v,
                weight: l.weight,
                incoming: l.kind.points_to_first(),
                outgoing: l.kind.points_to_second(),
            });
            adj[l.v.0].push(Neighbor {
                id: l.u,
                weight: l.weight,
                incoming: l.kind.points_to_second(),
                outgoing: l.kind.points_to_first(),
            });
        }
        for list in &mut adj {
            list.sort_by_key(|nb| nb.id);
        }

        let wdeg = adj
            .iter()
            .map(|list| list.iter().map(|nb| nb.weight).sum())
            .collect();
        let max_nbr_deg = adj
            .iter()
            .map(|list| list.iter().map(|nb| adj[nb.id.0].len()).max().unwrap_or(0))
            .collect();

        Ok(BipartiteNetwork {
            n1,
            n2,
            labels,
            links,
            adj,
            measurement,
            wdeg,
            max_nbr_deg,
            has_arcs,
        })
    }

    /// Convenience constructor for undirected links.
    pub fn from_links(
        n1: usize,
        n2: usize,
        labels: Option<Vec<String>>,
        links: Vec<(usize, usize, S)>,
    ) -> Result<Self, NetworkError> {
        let raw = links
            .into_iter()
            .map(|(a, b, w)| (a, b, w, LinkKind::Undirected))
            .collect();
        BipartiteNetwork::new(n1, n2, labels, raw, None)
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Total node count.
    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    /// Merged link count.
    pub fn m(&self) -> usize {
        self.links.len()
    }

    pub fn mode_of(&self, v: NodeId) -> Mode {
        if v.0 < self.n1 {
            Mode::One
        } else {
            Mode::Two
        }
    }

    /// Node indices of one mode.
    pub fn mode_nodes(&self, mode: Mode) -> impl Iterator<Item = NodeId> {
        let range = match mode {
            Mode::One => 0..self.n1,
            Mode::Two => self.n1..self.n1 + self.n2,
        };
        range.map(NodeId)
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.n()).map(NodeId)
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn links(&self) -> &[Link<S>] {
        &self.links
    }

    pub fn neighbors(&self, v: NodeId) -> &[Neighbor<S>] {
        &self.adj[v.0]
    }

    /// Global degree (merged links incident to `v`).
    pub fn deg(&self, v: NodeId) -> usize {
        self.adj[v.0].len()
    }

    /// Global weighted degree.
    pub fn wdeg(&self, v: NodeId) -> S {
        self.wdeg[v.0]
    }

    /// Largest global degree among `v`'s neighbors (0 when isolated).
    pub fn max_neighbor_deg(&self, v: NodeId) -> usize {
        self.max_nbr_deg[v.0]
    }

    /// Largest degree in the network.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// True when the input carried any directed link.
    pub fn has_directed_info(&self) -> bool {
        self.has_arcs
    }

    /// Adjacency entry for the pair `(v, u)` if linked.
    pub fn neighbor_entry(&self, v: NodeId, u: NodeId) -> Option<&Neighbor<S>> {
        let list = &self.adj[v.0];
        list.binary_search_by_key(&u, |nb| nb.id)
            .ok()
            .map(|i| &list[i])
    }

    pub fn are_adjacent(&self, a: NodeId, b: NodeId) -> bool {
        self.neighbor_entry(a, b).is_some()
    }

    /// Per-node measurement; defaults to the global degree when none was
    /// supplied.
    pub fn measurement_of(&self, v: NodeId) -> S {
        match &self.measurement {
            Some(t) => t[v.0],
            None => S::from_count(self.deg(v)),
        }
    }

    /// Replaces the per-node measurement vector.
    pub fn set_measurement(&mut self, t: Option<Vec<S>>) -> Result<(), NetworkError> {
        if let Some(t) = &t {
            if t.len() != self.n() {
                return Err(NetworkError::MeasurementLength {
                    got: t.len(),
                    expected: self.n(),
                });
            }
        }
        self.measurement = t;
        Ok(())
    }

    /// Number of `v`'s neighbors inside `c`.
    pub fn induced_degree(&self, v: NodeId, c: &NodeSubset) -> usize {
        self.adj[v.0].iter().filter(|nb| c.contains(nb.id)).count()
    }

    /// Sum of link weights from `v` into `c`.
    pub fn induced_wdegree(&self, v: NodeId, c: &NodeSubset) -> S {
        self.adj[v.0]
            .iter()
            .filter(|nb| c.contains(nb.id))
            .map(|nb| nb.weight)
            .sum()
    }

    /// The same network with the two modes swapped: mode-2 nodes become the
    /// leading block. Applying it twice restores the original.
    pub fn mirror(&self) -> Self {
        let map = |v: NodeId| -> usize {
            if v.0 < self.n1 {
                self.n2 + v.0
            } else {
                v.0 - self.n1
            }
        };
        let labels = self
            .mode_nodes(Mode::Two)
            .chain(self.mode_nodes(Mode::One))
            .map(|v| self.labels[v.0].clone())
            .collect();
        let raw = self
            .links
            .iter()
            .map(|l| {
                let kind = match l.kind {
                    LinkKind::Undirected => LinkKind::Undirected,
                    // The arc keeps its endpoints; only their roles swap.
                    LinkKind::FromFirst => LinkKind::FromSecond,
                    LinkKind::FromSecond => LinkKind::FromFirst,
                };
                (map(l.v), map(l.u), l.weight, kind)
            })
            .collect();
        let measurement = self.measurement.as_ref().map(|t| {
            self.mode_nodes(Mode::Two)
                .chain(self.mode_nodes(Mode::One))
                .map(|v| t[v.0])
                .collect()
        });
        BipartiteNetwork::new(self.n2, self.n1, Some(labels), raw, measurement)
            .expect("mirror of a valid network is valid")
    }

    /// Maps a node index of this network to the corresponding index in
    /// `self.mirror()`.
    pub fn mirror_index(&self, v: NodeId) -> NodeId {
        if v.0 < self.n1 {
            NodeId(self.n2 + v.0)
        } else {
            NodeId(v.0 - self.n1)
        }
    }

    /// Reads a two-mode Pajek file: `*vertices n n1`, optional vertex label
    /// lines, then `*edges` (undirected) and/or `*arcs` (directed) sections.
    /// Lines starting with `%` are comments.
    pub fn load_pajek<R: Read>(reader: R) -> Result<Self, NetworkError> {
        enum Section {
            Edges,
            Arcs,
        }
        let mut header: Option<(usize, usize)> = None;
        let mut labels: Vec<Option<String>> = Vec::new();
        let mut raw: Vec<(usize, usize, S, LinkKind)> = Vec::new();
        let mut raw_lines: Vec<usize> = Vec::new();
        let mut section: Option<Section> = None;

        for (idx, line) in BufReader::new(reader).lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('%') {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix('*') {
                let mut parts = rest.split_ascii_whitespace();
                let name = parts.next().unwrap_or("").to_ascii_lowercase();
                match name.as_str() {
                    "vertices" => {
                        let n = parse_usize(parts.next(), line_no)?;
                        let n1 = parse_usize(parts.next(), line_no).map_err(|_| {
                            NetworkError::MalformedHeader { line: line_no }
                        })?;
                        if n1 > n {
                            return Err(NetworkError::MalformedHeader { line: line_no });
                        }
                        labels = vec![None; n];
                        header = Some((n, n1));
                        section = None;
                    }
                    "edges" => section = Some(Section::Edges),
                    "arcs" => section = Some(Section::Arcs),
                    other => {
                        return Err(NetworkError::UnsupportedSection {
                            line: line_no,
                            name: format!("*{other}"),
                        })
                    }
                }
                continue;
            }
            let Some((n, _)) = header else {
                return Err(NetworkError::MalformedHeader { line: line_no });
            };
            match section {
                None => {
                    // Vertex line: `index "label"` (label optional, extra
                    // fields such as coordinates ignored).
                    let mut parts = trimmed.splitn(2, char::is_whitespace);
                    let index = parse_usize(parts.next(), line_no)?;
                    if index == 0 || index > n {
                        return Err(NetworkError::IndexOutOfRange {
                            line: line_no,
                            index,
                            n,
                        });
                    }
                    let label = parts.next().map(parse_label);
                    labels[index - 1] = label;
                }
                Some(ref s) => {
                    let mut parts = trimmed.split_ascii_whitespace();
                    let a = parse_usize(parts.next(), line_no)?;
                    let b = parse_usize(parts.next(), line_no)?;
                    for &x in &[a, b] {
                        if x == 0 || x > n {
                            return Err(NetworkError::IndexOutOfRange {
                                line: line_no,
                                index: x,
                                n,
                            });
                        }
                    }
                    let w = match parts.next() {
                        Some(tok) => parse_weight::<S>(tok, line_no)?,
                        None => S::one(),
                    };
                    let kind = match s {
                        Section::Edges => LinkKind::Undirected,
                        Section::Arcs => LinkKind::FromFirst,
                    };
                    raw.push((a - 1, b - 1, w, kind));
                    raw_lines.push(line_no);
                }
            }
        }

        let Some((n, n1)) = header else {
            return Err(NetworkError::MalformedHeader { line: 0 });
        };
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.unwrap_or_else(|| (i + 1).to_string()))
            .collect();
        BipartiteNetwork::new(n1, n - n1, Some(labels), raw, None)
            .map_err(|e| relocate_line(e, &raw_lines))
    }

    /// Writes the network back out in two-mode Pajek form.
    pub fn save_pajek<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "*vertices {} {}", self.n(), self.n1)?;
        for (i, label) in self.labels.iter().enumerate() {
            writeln!(w, "{} \"{}\"", i + 1, label)?;
        }
        let edges: Vec<&Link<S>> = self
            .links
            .iter()
            .filter(|l| l.kind == LinkKind::Undirected)
            .collect();
        let arcs: Vec<&Link<S>> = self
            .links
            .iter()
            .filter(|l| l.kind != LinkKind::Undirected)
            .collect();
        if !edges.is_empty() {
            writeln!(w, "*edges")?;
            for l in edges {
                writeln!(w, "{} {} {}", l.u.0 + 1, l.v.0 + 1, l.weight)?;
            }
        }
        if !arcs.is_empty() {
            writeln!(w, "*arcs")?;
            for l in arcs {
                let (from, to) = match l.kind {
                    LinkKind::FromFirst => (l.u, l.v),
                    LinkKind::FromSecond => (l.v, l.u),
                    LinkKind::Undirected => unreachable!(),
                };
                writeln!(w, "{} {} {}", from.0 + 1, to.0 + 1, l.weight)?;
            }
        }
        Ok(())
    }

    /// Reads a label edge list: `u_label <TAB> v_label [<TAB> weight]`, one
    /// link per line, first column mode 1 and second column mode 2. Declared
    /// per-mode counts pad the network with isolated nodes; the same label on
    /// both sides is an error.
    pub fn load_edgelist<R: Read>(
        reader: R,
        declared_n1: Option<usize>,
        declared_n2: Option<usize>,
    ) -> Result<Self, NetworkError> {
        let mut idx1: BTreeMap<String, usize> = BTreeMap::new();
        let mut idx2: BTreeMap<String, usize> = BTreeMap::new();
        let mut order1: Vec<String> = Vec::new();
        let mut order2: Vec<String> = Vec::new();
        let mut parsed: Vec<(usize, usize, S, usize)> = Vec::new();

        for (idx, line) in BufReader::new(reader).lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
                continue;
            }
            let cols: Vec<&str> = if trimmed.contains('\t') {
                trimmed.split('\t').map(str::trim).collect()
            } else {
                trimmed.split_ascii_whitespace().collect()
            };
            if cols.len() < 2 || cols.len() > 3 {
                return Err(NetworkError::ParseToken {
                    line: line_no,
                    token: trimmed.to_string(),
                });
            }
            let (ul, vl) = (cols[0].to_string(), cols[1].to_string());
            let w = match cols.get(2) {
                Some(tok) => parse_weight::<S>(tok, line_no)?,
                None => S::one(),
            };
            let i = *idx1.entry(ul.clone()).or_insert_with(|| {
                order1.push(ul);
                order1.len() - 1
            });
            let j = *idx2.entry(vl.clone()).or_insert_with(|| {
                order2.push(vl);
                order2.len() - 1
            });
            parsed.push((i, j, w, line_no));
        }

        for l in order1.iter() {
            if idx2.contains_key(l) {
                return Err(NetworkError::ModeConflict { label: l.clone() });
            }
        }

        let n1 = match declared_n1 {
            Some(d) if d < order1.len() => {
                return Err(NetworkError::DeclaredCountTooSmall {
                    mode: 1,
                    declared: d,
                    found: order1.len(),
                })
            }
            Some(d) => d,
            None => order1.len(),
        };
        let n2 = match declared_n2 {
            Some(d) if d < order2.len() => {
                return Err(NetworkError::DeclaredCountTooSmall {
                    mode: 2,
                    declared: d,
                    found: order2.len(),
                })
            }
            Some(d) => d,
            None => order2.len(),
        };
        let mut labels = order1;
        labels.extend((labels.len()..n1).map(|i| (i + 1).to_string()));
        labels.extend(order2);
        labels.extend((labels.len()..n1 + n2).map(|i| (i + 1).to_string()));

        let raw_lines: Vec<usize> = parsed.iter().map(|&(_, _, _, ln)| ln).collect();
        let raw = parsed
            .into_iter()
            .map(|(i, j, w, _)| (i, n1 + j, w, LinkKind::Undirected))
            .collect();
        BipartiteNetwork::new(n1, n2, Some(labels), raw, None)
            .map_err(|e| relocate_line(e, &raw_lines))
    }

    /// Serializes to the JSON schema used by the CLI: node indices are
    /// 0-based with mode-1 first, matching the `labels` array.
    pub fn to_json_string(&self) -> Result<String, NetworkError>
    where
        S: Serialize,
    {
        let links = self
            .links
            .iter()
            .map(|l| JsonLink {
                u: l.u.0,
                v: l.v.0,
                w: l.weight,
                kind: l.kind,
            })
            .collect();
        let doc = JsonNetwork {
            n1: self.n1,
            n2: self.n2,
            labels: self.labels.clone(),
            links,
            t: self.measurement.clone(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    /// Parses the JSON schema produced by [`BipartiteNetwork::to_json_string`].
    pub fn from_json_str(text: &str) -> Result<Self, NetworkError>
    where
        S: for<'de> Deserialize<'de>,
    {
        let doc: JsonNetwork<S> = serde_json::from_str(text)?;
        if doc.labels.len() != doc.n1 + doc.n2 {
            return Err(NetworkError::MalformedHeader { line: 0 });
        }
        let raw = doc
            .links
            .into_iter()
            .map(|l| (l.u, l.v, l.w, l.kind))
            .collect();
        BipartiteNetwork::new(doc.n1, doc.n2, Some(doc.labels), raw, doc.t)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonNetwork<S> {
    n1: usize,
    n2: usize,
    labels: Vec<String>,
    links: Vec<JsonLink<S>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<Vec<S>>,
}

#[derive(Serialize, Deserialize)]
struct JsonLink<S> {
    u: usize,
    v: usize,
    w: S,
    #[serde(default = "default_kind")]
    kind: LinkKind,
}

fn default_kind() -> LinkKind {
    LinkKind::Undirected
}

fn parse_label(raw: &str) -> String {
    let raw = raw.trim();
    if let Some(stripped) = raw.strip_prefix('"') {
        match stripped.find('"') {
            Some(end) => stripped[..end].to_string(),
            None => stripped.to_string(),
        }
    } else {
        raw.split_ascii_whitespace()
            .next()
            .unwrap_or("")
            .to_string()
    }
}

fn parse_usize(tok: Option<&str>, line: usize) -> Result<usize, NetworkError> {
    let tok = tok.ok_or(NetworkError::MalformedHeader { line })?;
    tok.parse().map_err(|_| NetworkError::ParseToken {
        line,
        token: tok.to_string(),
    })
}

fn parse_weight<S: Scalar>(tok: &str, line: usize) -> Result<S, NetworkError> {
    let value: f64 = tok.parse().map_err(|_| NetworkError::ParseToken {
        line,
        token: tok.to_string(),
    })?;
    if !value.is_finite() || value <= 0.0 {
        return Err(NetworkError::InvalidWeight { line, value });
    }
    S::from_f64(value).ok_or(NetworkError::InvalidWeight { line, value })
}

// Constructor errors report the ordinal of the offending raw link; map it
// back to the source line it came from.
fn relocate_line(e: NetworkError, raw_lines: &[usize]) -> NetworkError {
    let fix = |line: usize| raw_lines.get(line - 1).copied().unwrap_or(line);
    match e {
        NetworkError::IndexOutOfRange { line, index, n } => NetworkError::IndexOutOfRange {
            line: fix(line),
            index,
            n,
        },
        NetworkError::SameModeLink { line, a, b } => NetworkError::SameModeLink {
            line: fix(line),
            a,
            b,
        },
        NetworkError::InvalidWeight { line, value } => NetworkError::InvalidWeight {
            line: fix(line),
            value,
        },
        other => other,
    }
}
