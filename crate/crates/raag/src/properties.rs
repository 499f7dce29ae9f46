//! Decidable graph properties: (B1), (B2), (B), (NL), the product
//! decomposition of `A_Γ` under (B), indicability witnesses and the tree
//! criterion.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::domination::{compute_domination, DominanceData};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Outcome of [`check_properties`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub b1: bool,
    pub b2: bool,
    pub b: bool,
    pub nl: bool,
    /// First non-adjacent, non-equivalent pair, when (B1) fails.
    pub b1_failure_witness: Option<(Vertex, Vertex)>,
    /// First strict domination `v ≤ w` without an intermediate vertex.
    pub b2_failure_witness: Option<(Vertex, Vertex)>,
    pub nl_witness: Option<(Vertex, Vertex, Vertex)>,
}

/// `A_Γ ≅ F_{n_1} × … × F_{n_k} × Z^a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub free_ranks: Vec<usize>,
    pub abelian_rank: usize,
}

pub fn check_properties(g: &Graph) -> PropertyReport {
    check_properties_with(g, &compute_domination(g))
}

/// [`check_properties`] reusing an already computed domination relation.
pub fn check_properties_with(g: &Graph, d: &DominanceData) -> PropertyReport {
    let n = g.order();
    let b1_failure_witness = (0..n)
        .flat_map(|v| (v + 1..n).map(move |w| (v, w)))
        .find(|&(v, w)| !g.adjacent(v, w) && !d.equivalent(v, w));
    let b2_failure_witness = b2_failure(d);
    let nl_witness = poison_witness(g);
    PropertyReport {
        b1: b1_failure_witness.is_none(),
        b2: b2_failure_witness.is_none(),
        b: b1_failure_witness.is_none() && b2_failure_witness.is_none(),
        nl: nl_witness.is_some(),
        b1_failure_witness,
        b2_failure_witness,
        nl_witness,
    }
}

fn b2_failure(d: &DominanceData) -> Option<(Vertex, Vertex)> {
    let n = d.order();
    for v in 0..n {
        for w in d.dominators(v).ones().filter(|&w| w != v) {
            let intermediate = d
                .dominators(v)
                .ones()
                .any(|u| u != v && u != w && d.leq(u, w));
            if !intermediate {
                return Some((v, w));
            }
        }
    }
    None
}

/// The product decomposition of `A_Γ` for a graph with property (B).
pub fn decompose(g: &Graph) -> Result<Decomposition> {
    let d = compute_domination(g);
    let report = check_properties_with(g, &d);
    if let Some((v, w)) = report.b1_failure_witness {
        return Err(Error::PropertyB(format!(
            "(B1) fails: {} and {} are non-adjacent but not equivalent",
            g.name(v),
            g.name(w)
        )));
    }
    if let Some((v, w)) = report.b2_failure_witness {
        return Err(Error::PropertyB(format!(
            "(B2) fails: no vertex strictly between {} ≤ {}",
            g.name(v),
            g.name(w)
        )));
    }
    let mut free_ranks = Vec::new();
    let mut abelian_rank = 0;
    for class in d.classes() {
        let pairs = || {
            class
                .iter()
                .enumerate()
                .flat_map(|(i, &a)| class[i + 1..].iter().map(move |&b| (a, b)))
        };
        if pairs().all(|(a, b)| g.adjacent(a, b)) {
            if abelian_rank != 0 {
                return Err(Error::PropertyB("two complete classes".into()));
            }
            abelian_rank = class.len();
        } else if pairs().all(|(a, b)| !g.adjacent(a, b)) {
            free_ranks.push(class.len());
        } else {
            return Err(Error::PropertyB(format!(
                "class {} is neither complete nor discrete",
                g.format_set(class)
            )));
        }
    }
    Ok(Decomposition {
        free_ranks,
        abelian_rank,
    })
}

/// A vertex `w` dominating no other vertex with `Γ − st(w)` disconnected,
/// together with the first two components of `Γ − st(w)`.
pub fn find_indicability_witness(g: &Graph) -> Option<(Vertex, Vec<Vertex>, Vec<Vertex>)> {
    let d = compute_domination(g);
    find_indicability_witness_with(g, &d)
}

pub fn find_indicability_witness_with(
    g: &Graph,
    d: &DominanceData,
) -> Option<(Vertex, Vec<Vertex>, Vec<Vertex>)> {
    (0..g.order()).find_map(|w| {
        if (0..g.order()).any(|v| v != w && d.leq(v, w)) {
            return None;
        }
        let mut comps = g.components_minus_star(w).ok()?;
        if comps.len() < 2 {
            return None;
        }
        let z = comps.swap_remove(1);
        let y = comps.swap_remove(0);
        Some((w, y, z))
    })
}

/// For a tree: the first vertex at distance at least 3 from every leaf.
pub fn check_tree_criterion(g: &Graph) -> Result<Option<Vertex>> {
    let n = g.order();
    if n == 0 {
        return Err(Error::NotATree("empty graph".into()));
    }
    if g.edge_count() != n - 1 || !g.is_connected() {
        return Err(Error::NotATree(format!(
            "{} vertices, {} edges, connected: {}",
            n,
            g.edge_count(),
            g.is_connected()
        )));
    }
    let leaves: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) == 1).collect();
    let dist = g.distances_from(&leaves);
    Ok((0..n).find(|&v| dist[v].map_or(true, |d| d >= 3)))
}

/// The lexicographically least triple `(v1, v2, v3)` of pairwise non-adjacent
/// vertices with `v1 < v2`, `v3 ≤ v1` and `v3 ≤ v2`.
pub fn poison_witness(g: &Graph) -> Option<(Vertex, Vertex, Vertex)> {
    let n = g.order();
    // below[x] = { v3 : x ∈ D(v3) }, where D(v3) is the set of vertices
    // dominating v3 and not adjacent to it.
    let mut below = vec![FixedBitSet::with_capacity(n); n];
    let mut any = false;
    for v3 in 0..n {
        let dom = dominating_non_neighbors(g, v3);
        if has_non_adjacent_pair(g, &dom) {
            any = true;
        }
        for x in dom.ones() {
            below[x].insert(v3);
        }
    }
    if !any {
        return None;
    }
    for v1 in 0..n {
        for v2 in v1 + 1..n {
            if g.adjacent(v1, v2) {
                continue;
            }
            let mut common = below[v1].clone();
            common.intersect_with(&below[v2]);
            if let Some(v3) = common.ones().next() {
                return Some((v1, v2, v3));
            }
        }
    }
    unreachable!("a non-adjacent dominating pair exists")
}

/// Whether `g` has property (NL); cheaper than [`poison_witness`].
pub fn has_nl(g: &Graph) -> bool {
    (0..g.order()).any(|v3| has_non_adjacent_pair(g, &dominating_non_neighbors(g, v3)))
}

/// `{x ∉ st(v) : lk(v) ⊆ st(x)}`.
fn dominating_non_neighbors(g: &Graph, v: Vertex) -> FixedBitSet {
    let n = g.order();
    let mut d = FixedBitSet::with_capacity(n);
    d.insert_range(..);
    for y in g.link_set(v).ones() {
        d.intersect_with(&g.star_set(y));
    }
    d.difference_with(&g.star_set(v));
    d
}

fn has_non_adjacent_pair(g: &Graph, set: &FixedBitSet) -> bool {
    set.ones().any(|x| {
        let mut rest = set.clone();
        rest.difference_with(&g.star_set(x));
        !rest.is_clear()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Graph {
        Graph::from_names(
            &["w", "a1", "a2", "a3", "b1", "b2", "b3"],
            &[("a1", "a2"), ("a1", "a3"), ("a2", "a3"), ("b1", "b2"), ("b1", "b3"), ("b2", "b3")],
        )
        .unwrap()
    }

    #[test]
    fn three_isolated_vertices() {
        let r = check_properties(&Graph::discrete(3));
        assert!(r.b1 && r.b2 && r.b && r.nl);
        assert_eq!(r.nl_witness, Some((0, 1, 2)));
    }

    #[test]
    fn single_edge_fails_b2() {
        let r = check_properties(&Graph::complete(2));
        assert!(r.b1 && !r.b2 && !r.b && !r.nl);
        assert_eq!(r.b2_failure_witness, Some((0, 1)));
        assert!(decompose(&Graph::complete(2)).is_err());
    }

    #[test]
    fn example_has_b2_but_not_b1() {
        let r = check_properties(&example());
        assert!(!r.b1 && r.b2);
        // The isolated vertex is dominated by everything, so (NL) holds.
        assert_eq!(r.nl_witness, Some((1, 4, 0)));
    }

    #[test]
    fn decompositions() {
        let d = decompose(&Graph::complete(5)).unwrap();
        assert_eq!((d.free_ranks, d.abelian_rank), (vec![], 5));
        let d = decompose(&Graph::discrete(5)).unwrap();
        assert_eq!((d.free_ranks, d.abelian_rank), (vec![5], 0));
        // K3 joined to a discrete 3-set.
        let mut edges = vec![(0, 1), (0, 2), (1, 2)];
        edges.extend((0..3).flat_map(|a| (3..6).map(move |b| (a, b))));
        let d = decompose(&Graph::numbered(6, &edges).unwrap()).unwrap();
        assert_eq!((d.free_ranks, d.abelian_rank), (vec![3], 3));
        let d = decompose(&Graph::discrete(1)).unwrap();
        assert_eq!((d.free_ranks, d.abelian_rank), (vec![], 1));
    }

    #[test]
    fn indicability_witnesses() {
        let (w, y, z) = find_indicability_witness(&example()).unwrap();
        assert_eq!((w, y, z), (0, vec![1, 2, 3], vec![4, 5, 6]));
        let (w, y, z) = find_indicability_witness(&Graph::path(7)).unwrap();
        assert_eq!((w, y, z), (3, vec![0, 1], vec![5, 6]));
        assert!(find_indicability_witness(&Graph::complete(4)).is_none());
    }

    #[test]
    fn tree_criterion() {
        assert_eq!(check_tree_criterion(&Graph::path(7)).unwrap(), Some(3));
        assert_eq!(check_tree_criterion(&Graph::path(5)).unwrap(), None);
        let star = Graph::numbered(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(check_tree_criterion(&star).unwrap(), None);
        assert!(matches!(check_tree_criterion(&Graph::complete(3)), Err(Error::NotATree(_))));
        assert!(matches!(check_tree_criterion(&Graph::discrete(2)), Err(Error::NotATree(_))));
    }

    #[test]
    fn poison_witnesses() {
        let star = Graph::from_names(
            &["c", "l1", "l2", "l3"],
            &[("c", "l1"), ("c", "l2"), ("c", "l3")],
        )
        .unwrap();
        assert_eq!(poison_witness(&star), Some((1, 2, 3)));
        assert!(poison_witness(&Graph::complete(4)).is_none());
        assert!(!has_nl(&Graph::complete(4)));
        assert!(has_nl(&star));
    }
}
