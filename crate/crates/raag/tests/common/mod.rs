//! Fixture graphs and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use raag::{Graph, Letter};

pub fn named(names: &[&str], edges: &[(&str, &str)]) -> Graph {
    Graph::from_names(names, edges).unwrap()
}

/// `{w} ⊔ K3 ⊔ K3`.
pub fn example() -> Graph {
    named(
        &["w", "a1", "a2", "a3", "b1", "b2", "b3"],
        &[("a1", "a2"), ("a1", "a3"), ("a2", "a3"), ("b1", "b2"), ("b1", "b3"), ("b2", "b3")],
    )
}

/// `{w} ⊔ K3`.
pub fn w_k3() -> Graph {
    named(&["w", "a1", "a2", "a3"], &[("a1", "a2"), ("a1", "a3"), ("a2", "a3")])
}

/// `{w} ⊔ K4 ⊔ K3`.
pub fn w_k4_k3() -> Graph {
    named(
        &["w", "a1", "a2", "a3", "a4", "b1", "b2", "b3"],
        &[
            ("a1", "a2"),
            ("a1", "a3"),
            ("a1", "a4"),
            ("a2", "a3"),
            ("a2", "a4"),
            ("a3", "a4"),
            ("b1", "b2"),
            ("b1", "b3"),
            ("b2", "b3"),
        ],
    )
}

/// `{w} ⊔ K2 ⊔ K2`.
pub fn w_k2_k2() -> Graph {
    named(&["w", "a1", "a2", "b1", "b2"], &[("a1", "a2"), ("b1", "b2")])
}

/// Three isolated vertices joined to an apex.
pub fn d3_apex() -> Graph {
    named(&["x", "y", "z", "p"], &[("x", "p"), ("y", "p"), ("z", "p")])
}

pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::numbered(leaves + 1, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::numbered(n, &edges).unwrap()
}

/// Fixture graphs on at most six vertices.
pub fn small_fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("D2", Graph::discrete(2)),
        ("D3", Graph::discrete(3)),
        ("D4", Graph::discrete(4)),
        ("D3+apex", d3_apex()),
        ("K3", Graph::complete(3)),
        ("K4", Graph::complete(4)),
        ("P3", Graph::path(3)),
        ("P5", Graph::path(5)),
        ("K1,3", star(3)),
        ("C4", cycle(4)),
        ("{w}+K3", w_k3()),
        ("{w}+K2+K2", w_k2_k2()),
    ]
}

/// Decodes a Prüfer sequence over `0..n` (with `n = seq.len() + 2`).
pub fn prufer_tree(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::numbered(n, &edges).unwrap()
}

/// All labeled trees on `n ≥ 2` vertices.
pub fn labeled_trees(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n >= 2);
    let len = n - 2;
    let total = n.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut seq = vec![0; len];
        for x in seq.iter_mut() {
            *x = code % n;
            code /= n;
        }
        prufer_tree(&seq)
    })
}

/// Adjacency bitmasks.
pub fn masks(g: &Graph) -> Vec<u32> {
    (0..g.order())
        .map(|v| (0..g.order()).filter(|&u| g.adjacent(u, v)).fold(0, |m, u| m | 1 << u))
        .collect()
}

/// `lk(v) ⊆ st(w)`, from bitmasks.
pub fn dominated(adj: &[u32], v: usize, w: usize) -> bool {
    adj[v] & !(adj[w] | 1 << w) == 0
}

/// (B2) straight from the definition: every `v ≤ w` with `v ≠ w` has a
/// `u ∉ {v, w}` with `v ≤ u ≤ w`.
pub fn b2_oracle(g: &Graph) -> bool {
    let adj = masks(g);
    let n = g.order();
    (0..n).all(|v| {
        (0..n).all(|w| {
            v == w
                || !dominated(&adj, v, w)
                || (0..n).any(|u| u != v && u != w && dominated(&adj, v, u) && dominated(&adj, u, w))
        })
    })
}

/// Components of the complement graph.
pub fn complement_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            for y in 0..n {
                if !seen[y] && y != x && !g.adjacent(x, y) {
                    seen[y] = true;
                    comp.push(y);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// The join shape of `g`: `Some((free ranks, abelian rank))` when `g` is
/// the join of discrete graphs of size at least three and a complete graph
/// of size other than two, `None` otherwise.
pub fn product_shape(g: &Graph) -> Option<(Vec<usize>, usize)> {
    let mut free = Vec::new();
    let mut abelian = 0;
    for comp in complement_components(g) {
        if comp.len() == 1 {
            abelian += 1;
            continue;
        }
        let discrete = comp.iter().all(|&x| comp.iter().all(|&y| x == y || !g.adjacent(x, y)));
        if !discrete || comp.len() < 3 {
            return None;
        }
        free.push(comp.len());
    }
    if abelian == 2 {
        return None;
    }
    free.sort_unstable();
    Some((free, abelian))
}

/// Canonical keys for words over a graph, computed only from elementary
/// rewriting moves: a word is shortened by deleting `x x⁻¹` after any
/// sequence of commutation swaps until no deletion is possible, and the key
/// is the least word in the resulting swap class.
pub struct WordKeys<'g> {
    g: &'g Graph,
    memo: HashMap<Vec<Letter>, Vec<Letter>>,
    /// Set when two deletion paths reached different keys.
    pub inconsistent: bool,
}

impl<'g> WordKeys<'g> {
    pub fn new(g: &'g Graph) -> Self {
        WordKeys {
            g,
            memo: HashMap::new(),
            inconsistent: false,
        }
    }

    fn swap_class(&self, w: &[Letter]) -> Vec<Vec<Letter>> {
        let mut class = vec![w.to_vec()];
        let mut seen: std::collections::HashSet<Vec<Letter>> = class.iter().cloned().collect();
        let mut i = 0;
        while i < class.len() {
            let cur = class[i].clone();
            for j in 0..cur.len().saturating_sub(1) {
                let (a, b) = (cur[j].vertex(), cur[j + 1].vertex());
                if a != b && self.g.adjacent(a, b) {
                    let mut next = cur.clone();
                    next.swap(j, j + 1);
                    if seen.insert(next.clone()) {
                        class.push(next);
                    }
                }
            }
            i += 1;
        }
        class
    }

    pub fn key(&mut self, w: &[Letter]) -> Vec<Letter> {
        if let Some(k) = self.memo.get(w) {
            return k.clone();
        }
        let class = self.swap_class(w);
        let mut key: Option<Vec<Letter>> = None;
        for word in &class {
            for j in 0..word.len().saturating_sub(1) {
                if word[j + 1] == word[j].inverse() {
                    let mut shorter = word.clone();
                    shorter.drain(j..j + 2);
                    let k = self.key(&shorter);
                    match &key {
                        Some(prev) if *prev != k => self.inconsistent = true,
                        Some(_) => {}
                        None => key = Some(k),
                    }
                }
            }
        }
        let key = key.unwrap_or_else(|| class.iter().min().unwrap().clone());
        for word in class {
            self.memo.insert(word, key.clone());
        }
        key
    }
}

/// All words of length at most `len` over the letters of an `n`-vertex graph.
pub fn all_words(n: usize, len: usize) -> Vec<Vec<Letter>> {
    let letters: Vec<Letter> = (0..2 * n as u32).map(Letter).collect();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for &x in &letters {
                let mut y: Vec<Letter> = w.clone();
                y.push(x);
                next.push(y);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
