//! Finite simplicial graphs with a fixed vertex order.
//!
//! Vertices are addressed by their position in the order given at
//! construction. Every enumeration in the crate (components, witnesses,
//! matrix rows) follows that order, so all outputs are deterministic.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Index of a vertex in the graph's fixed order.
pub type Vertex = usize;

/// A finite simplicial graph: no loops, no multiple edges.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<FixedBitSet>,
    index: HashMap<String, Vertex>,
}

impl Graph {
    /// Builds a graph from vertex names (in order) and edges between indices.
    pub fn new<S, I>(names: I, edges: &[(Vertex, Vertex)]) -> Result<Self>
    where
        S: Into<String>,
        I: IntoIterator<Item = S>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let n = names.len();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::UnknownVertex(format!("#{u}")));
            }
            if v >= n {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
            if u == v {
                return Err(Error::SelfLoop(names[u].clone()));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { names, adj, index })
    }

    /// Builds a graph from names, with edges given by name.
    pub fn from_names(names: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let lookup = |s: &str| {
            names
                .iter()
                .position(|x| *x == s)
                .ok_or_else(|| Error::UnknownVertex(s.to_string()))
        };
        let edges = edges
            .iter()
            .map(|&(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Graph::new(names.iter().copied(), &edges)
    }

    /// Vertices named `v1, …, vn` with the given edges.
    pub fn numbered(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        Graph::new((1..=n).map(|i| format!("v{i}")), edges)
    }

    /// The labeled graph on `v1..vn` whose edge set is selected by `mask`,
    /// bit `k` standing for the `k`-th pair in lexicographic order.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let mut edges = Vec::new();
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> bit & 1 == 1 {
                    edges.push((u, v));
                }
                bit += 1;
            }
        }
        Graph::numbered(n, &edges).expect("mask graphs are simple")
    }

    /// All `2^(n(n-1)/2)` labeled graphs on `n` vertices.
    pub fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
        let pairs = n * n.saturating_sub(1) / 2;
        assert!(pairs < 64, "too many labeled graphs on {n} vertices");
        (0..1u64 << pairs).map(move |mask| Graph::from_edge_mask(n, mask))
    }

    pub fn discrete(n: usize) -> Self {
        Graph::numbered(n, &[]).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::numbered(n, &edges).unwrap()
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::numbered(n, &edges).unwrap()
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    /// Looks a vertex up by name.
    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{v}")))
        }
    }

    #[inline]
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones(..)
    }

    /// `lk(v)` as a bit set.
    pub fn link_set(&self, v: Vertex) -> &FixedBitSet {
        &self.adj[v]
    }

    /// `st(v) = lk(v) ∪ {v}` as a bit set.
    pub fn star_set(&self, v: Vertex) -> FixedBitSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    /// Link and star of `v`, both in vertex order.
    pub fn neighborhoods(&self, v: Vertex) -> Result<(Vec<Vertex>, Vec<Vertex>)> {
        self.check_vertex(v)?;
        Ok((
            self.adj[v].ones().collect(),
            self.star_set(v).ones().collect(),
        ))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.order()).flat_map(move |u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.count_ones(..)).sum::<usize>() / 2
    }

    /// Connected components of the full subgraph spanned by `set`, each
    /// sorted, ordered by least vertex.
    pub fn components_within(&self, set: &FixedBitSet) -> Vec<Vec<Vertex>> {
        let mut seen = FixedBitSet::with_capacity(self.order());
        let mut out = Vec::new();
        for start in set.ones() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = vec![start];
            seen.insert(start);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for y in self.adj[x].ones() {
                    if set.contains(y) && !seen.contains(y) {
                        seen.insert(y);
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Components of `Γ − st(v)`, ordered by least vertex.
    pub fn components_minus_star(&self, v: Vertex) -> Result<Vec<Vec<Vertex>>> {
        self.check_vertex(v)?;
        let mut rest = self.star_set(v);
        rest.toggle_range(..);
        Ok(self.components_within(&rest))
    }

    pub fn is_connected(&self) -> bool {
        let mut all = FixedBitSet::with_capacity(self.order());
        all.insert_range(..);
        self.components_within(&all).len() <= 1
    }

    /// Breadth-first distances from a set of sources (`None` if unreachable).
    pub fn distances_from(&self, sources: &[Vertex]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for y in self.adj[x].ones() {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Formats a vertex set as `{a,b,c}`.
    pub fn format_set(&self, set: &[Vertex]) -> String {
        let names: Vec<&str> = set.iter().map(|&v| self.name(v)).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .map(|(u, v)| format!("{}-{}", self.names[u], self.names[v]))
            .collect();
        f.debug_struct("Graph")
            .field("vertices", &self.names)
            .field("edges", &edges)
            .finish()
    }
}
