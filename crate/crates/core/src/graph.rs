//! Defining graphs and their domination data.
//!
//! Vertices are addressed by their index in the declared vertex list. All
//! derived data (links, domination, class partitions, the block ordering) is
//! computed once at construction; a [`SimplicialGraph`] is immutable.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported vertex count (vertex sets are 64-bit masks).
pub const MAX_VERTICES: usize = 64;

/// Default cap for brute-force graph automorphism enumeration.
pub const DEFAULT_AUTOMORPHISM_BOUND: usize = 8;

/// A set of vertex indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn full(n: usize) -> Self {
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Least member by index.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Neighborhood {
    Link,
    Star,
}

/// Whether a domination class spans an edgeless or a complete subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassKind {
    Free,
    Abelian,
}

/// Domination relation and the derived block ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationData {
    /// `dominated_by[u]` is the set of `v` with `u <= v`.
    pub dominated_by: Vec<VertexSet>,
    /// Domination classes listed in block order.
    pub classes: Vec<VertexSet>,
    /// Adjacent domination classes, ordered by least vertex in block order.
    pub adj_classes: Vec<VertexSet>,
    pub class_kind: Vec<ClassKind>,
    /// Block index of every vertex.
    pub class_of: Vec<usize>,
    /// Vertices in block order.
    pub vertex_order: Vec<usize>,
    /// Inverse of `vertex_order`.
    pub position: Vec<usize>,
}

impl DominationData {
    pub fn dominates(&self, u: usize, v: usize) -> bool {
        self.dominated_by[u].contains(v)
    }

    /// Block sizes in block order.
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len()).collect()
    }

    /// Half-open range of positions occupied by block `k`.
    pub fn class_range(&self, k: usize) -> std::ops::Range<usize> {
        let start: usize = self.classes[..k].iter().map(|c| c.len()).sum();
        start..start + self.classes[k].len()
    }

    /// Block `j` dominated by block `i` (as classes).
    pub fn class_dominates(&self, j: usize, i: usize) -> bool {
        let u = self.classes[j].first().expect("nonempty class");
        let w = self.classes[i].first().expect("nonempty class");
        self.dominates(u, w)
    }
}

/// A finite simplicial graph with its derived domination data.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
    dom: DominationData,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "1"
        && !name
            .chars()
            .any(|c| c.is_whitespace() || "^(),;:".contains(c))
}

impl SimplicialGraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        if names.len() > MAX_VERTICES {
            return Err(Error::SizeLimit {
                size: names.len(),
                limit: MAX_VERTICES,
            });
        }
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::InvalidGraph(format!("invalid vertex name `{name}`")));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{name}`")));
            }
        }
        let n = names.len();
        let mut adj = vec![VertexSet::EMPTY; n];
        let mut edge_list = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let u = *index
                .get(a)
                .ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
            let v = *index
                .get(b)
                .ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at `{a}`")));
            }
            if adj[u].contains(v) {
                return Err(Error::InvalidGraph(format!("duplicate edge {a}-{b}")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
            edge_list.push((u.min(v), u.max(v)));
        }
        edge_list.sort_unstable();
        let dom = compute_domination(&names, &adj);
        Ok(SimplicialGraph {
            names,
            index,
            adj,
            edges: edge_list,
            dom,
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
        Self::from_json(&raw)
    }

    pub fn from_json(raw: &GraphJson) -> Result<Self> {
        let edges: Vec<(&str, &str)> = raw
            .edges
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        let vertices: Vec<&str> = raw.vertices.iter().map(String::as_str).collect();
        Self::new(&vertices, &edges)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.names.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| [self.names[u].clone(), self.names[v].clone()])
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn vertex_set(&self, names: &[&str]) -> Result<VertexSet> {
        names.iter().map(|n| self.vertex(n)).collect()
    }

    pub fn set_names(&self, s: VertexSet) -> Vec<String> {
        let mut out: Vec<String> = s.iter().map(|v| self.names[v].clone()).collect();
        out.sort();
        out
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Generators `u` and `v` commute in the Artin group.
    pub fn commute(&self, u: usize, v: usize) -> bool {
        u == v || self.adj[u].contains(v)
    }

    pub fn link(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn star(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v];
        s.insert(v);
        s
    }

    pub fn neighborhood(&self, v: usize, kind: Neighborhood) -> VertexSet {
        match kind {
            Neighborhood::Link => self.link(v),
            Neighborhood::Star => self.star(v),
        }
    }

    pub fn domination(&self) -> &DominationData {
        &self.dom
    }

    /// `u <= v`: the link of `u` lies in the star of `v`.
    pub fn dominates(&self, u: usize, v: usize) -> bool {
        self.dom.dominates(u, v)
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.difference(self.star(v)).is_empty())
    }

    /// Some adjacent pair `u != v` with `u <= v`, i.e. an adjacent transvection exists.
    pub fn has_adjacent_domination(&self) -> bool {
        self.adjacent_dominations().next().is_some()
    }

    /// All ordered pairs `(u, v)`, adjacent, with `u <= v`.
    pub fn adjacent_dominations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| self.dominates(u, v))
                .map(move |v| (u, v))
        })
    }

    /// Connected components of the subgraph induced on `s`, in the graph or its complement.
    fn components(&self, s: VertexSet, complement: bool) -> Vec<VertexSet> {
        let mut rest = s;
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while let Some(v) = frontier.first() {
                frontier.remove(v);
                let nbrs = if complement {
                    s.difference(self.star(v))
                } else {
                    s.intersection(self.adj[v])
                };
                let fresh = nbrs.difference(comp);
                comp = comp.union(fresh);
                frontier = frontier.union(fresh);
            }
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    /// Components of the subgraph induced on `V \ st(v)`.
    pub fn components_excluding_star(&self, v: usize) -> Vec<VertexSet> {
        self.components(self.vertices().difference(self.star(v)), false)
    }

    /// Partition of `s` into connected components of the complement graph.
    pub fn complement_components(&self, s: VertexSet) -> Vec<VertexSet> {
        self.components(s, true)
    }

    pub fn induced_components(&self, s: VertexSet) -> Vec<VertexSet> {
        self.components(s, false)
    }

    pub fn gamma_v_partition(&self, v: usize) -> GammaPartition {
        let gamma: VertexSet = (0..self.len())
            .filter(|&u| self.dominates(v, u) && !self.adjacent(u, v))
            .collect();
        let xv: VertexSet = gamma.iter().filter(|&u| self.dominates(u, v)).collect();
        // X_v vertices are isolated inside Gamma^v, so the remaining
        // components are the free factors of <Gamma^v>
        let factors = self.components(gamma.difference(xv), false);
        GammaPartition { gamma, xv, factors }
    }

    /// Every vertex permutation preserving the edge set. `perm[v]` is the image of `v`.
    pub fn graph_automorphisms(&self, bound: usize) -> Result<Vec<Vec<usize>>> {
        let n = self.len();
        if n > bound {
            return Err(Error::SizeLimit {
                size: n,
                limit: bound,
            });
        }
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; n];
        let mut used = VertexSet::EMPTY;
        self.extend_automorphism(0, &mut perm, &mut used, &mut out);
        Ok(out)
    }

    fn extend_automorphism(
        &self,
        v: usize,
        perm: &mut Vec<usize>,
        used: &mut VertexSet,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = self.len();
        if v == n {
            out.push(perm.clone());
            return;
        }
        for image in 0..n {
            if used.contains(image) || self.adj[image].len() != self.adj[v].len() {
                continue;
            }
            let consistent = (0..v).all(|u| self.adjacent(u, v) == self.adjacent(perm[u], image));
            if !consistent {
                continue;
            }
            perm[v] = image;
            used.insert(image);
            self.extend_automorphism(v + 1, perm, used, out);
            used.remove(image);
        }
        perm[v] = usize::MAX;
    }

    pub fn is_graph_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.len();
        if perm.len() != n {
            return false;
        }
        let image: VertexSet = perm.iter().copied().filter(|&p| p < n).collect();
        image.len() == n
            && self
                .edges
                .iter()
                .all(|&(u, v)| self.adjacent(perm[u], perm[v]))
    }
}

impl fmt::Debug for SimplicialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|&(u, v)| format!("{}-{}", self.names[u], self.names[v]))
            .collect();
        f.debug_struct("SimplicialGraph")
            .field("vertices", &self.names)
            .field("edges", &edges)
            .finish()
    }
}

/// The set of non-adjacent dominators of a vertex, split as used by the
/// stabiliser length descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaPartition {
    pub gamma: VertexSet,
    pub xv: VertexSet,
    pub factors: Vec<VertexSet>,
}

fn compute_domination(names: &[String], adj: &[VertexSet]) -> DominationData {
    let n = names.len();
    let star = |v: usize| {
        let mut s = adj[v];
        s.insert(v);
        s
    };
    let dominated_by: Vec<VertexSet> = (0..n)
        .map(|u| (0..n).filter(|&v| adj[u].is_subset(star(v))).collect())
        .collect();

    // ~-classes, each listed once
    let mut class_sets: Vec<VertexSet> = Vec::new();
    let mut seen = VertexSet::EMPTY;
    for u in 0..n {
        if seen.contains(u) {
            continue;
        }
        let cls: VertexSet = (0..n)
            .filter(|&v| dominated_by[u].contains(v) && dominated_by[v].contains(u))
            .collect();
        seen = seen.union(cls);
        class_sets.push(cls);
    }
    let least_name = |c: VertexSet| c.iter().map(|v| names[v].as_str()).min().unwrap_or("");

    // topological order of the class poset, ties by least vertex name
    let m = class_sets.len();
    let below = |a: usize, b: usize| {
        // class a strictly below class b
        let u = class_sets[a].first().unwrap();
        let w = class_sets[b].first().unwrap();
        a != b && dominated_by[u].contains(w)
    };
    let mut placed = vec![false; m];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let next = (0..m)
            .filter(|&b| !placed[b] && (0..m).all(|a| placed[a] || !below(a, b)))
            .min_by(|&a, &b| least_name(class_sets[a]).cmp(least_name(class_sets[b])))
            .expect("domination is a partial order on classes");
        placed[next] = true;
        order.push(next);
    }
    let classes: Vec<VertexSet> = order.iter().map(|&k| class_sets[k]).collect();

    let mut class_of = vec![0; n];
    let mut vertex_order = Vec::with_capacity(n);
    for (k, cls) in classes.iter().enumerate() {
        let mut members: Vec<usize> = cls.iter().collect();
        members.sort_by(|&a, &b| names[a].cmp(&names[b]));
        for &v in &members {
            class_of[v] = k;
        }
        vertex_order.extend(members);
    }
    let mut position = vec![0; n];
    for (p, &v) in vertex_order.iter().enumerate() {
        position[v] = p;
    }

    let class_kind = classes
        .iter()
        .map(|&c| {
            if c.iter().all(|v| adj[v].is_disjoint(c)) {
                ClassKind::Free
            } else {
                ClassKind::Abelian
            }
        })
        .collect();

    let mut adj_classes = Vec::new();
    let mut seen = VertexSet::EMPTY;
    for &u in &vertex_order {
        if seen.contains(u) {
            continue;
        }
        let cls: VertexSet = (0..n)
            .filter(|&v| v == u || (class_of[v] == class_of[u] && adj[u].contains(v)))
            .collect();
        seen = seen.union(cls);
        adj_classes.push(cls);
    }

    DominationData {
        dominated_by,
        classes,
        adj_classes,
        class_kind,
        class_of,
        vertex_order,
        position,
    }
}

/// Reference graphs used throughout the tests and the CLI.
pub mod fixtures {
    use super::SimplicialGraph;

    /// Path a - b - c.
    pub fn path() -> SimplicialGraph {
        SimplicialGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    /// Edgeless graph on x, y, z (free group of rank 3).
    pub fn edgeless() -> SimplicialGraph {
        SimplicialGraph::new::<&str>(&["x", "y", "z"], &[]).unwrap()
    }

    /// Triangle on p, q, r (free abelian of rank 3).
    pub fn triangle() -> SimplicialGraph {
        SimplicialGraph::new(&["p", "q", "r"], &[("p", "q"), ("q", "r"), ("p", "r")]).unwrap()
    }

    /// 4-cycle a - b - c - d - a.
    pub fn square() -> SimplicialGraph {
        SimplicialGraph::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
        .unwrap()
    }

    /// 4-cycle with the diagonal a - c.
    pub fn square_diagonal() -> SimplicialGraph {
        SimplicialGraph::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")],
        )
        .unwrap()
    }

    /// The fixture set with display names.
    pub fn all() -> Vec<(&'static str, SimplicialGraph)> {
        vec![
            ("path", path()),
            ("edgeless", edgeless()),
            ("triangle", triangle()),
            ("square", square()),
            ("square-diagonal", square_diagonal()),
        ]
    }

    pub fn by_name(name: &str) -> Option<SimplicialGraph> {
        all().into_iter().find(|(n, _)| *n == name).map(|(_, g)| g)
    }
}
