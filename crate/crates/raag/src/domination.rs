//! The domination preorder `v ≤ w ⟺ lk(v) ⊆ st(w)`, its equivalence
//! classes and the class digraph Λ.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use fixedbitset::FixedBitSet;

use crate::graph::{Graph, Vertex};

/// The domination relation of a graph together with its condensation.
///
/// Classes are stored in *ascending* order: whenever there is an arrow from
/// class `j` to class `i` we have `j <= i`. Ties in the topological order are
/// broken by the least member vertex, so the order is fully determined by the
/// graph's vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceData {
    /// `up[v]` is the set of `w` with `v ≤ w`.
    up: Vec<FixedBitSet>,
    classes: Vec<Vec<Vertex>>,
    class_of: Vec<usize>,
    /// `arrows[j]` is the set of classes `i` with an arrow `j → i`.
    arrows: Vec<FixedBitSet>,
}

/// Computes the domination relation of `g`.
pub fn compute_domination(g: &Graph) -> DominanceData {
    let n = g.order();
    let stars: Vec<FixedBitSet> = (0..n).map(|v| g.star_set(v)).collect();
    let up: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut row = FixedBitSet::with_capacity(n);
            for w in 0..n {
                if g.link_set(v).is_subset(&stars[w]) {
                    row.insert(w);
                }
            }
            row
        })
        .collect();

    // Equivalence classes, labelled by first appearance.
    let mut raw_class = vec![usize::MAX; n];
    let mut raw: Vec<Vec<Vertex>> = Vec::new();
    for v in 0..n {
        if raw_class[v] != usize::MAX {
            continue;
        }
        let id = raw.len();
        let members: Vec<Vertex> = (v..n)
            .filter(|&w| up[v].contains(w) && up[w].contains(v))
            .collect();
        for &w in &members {
            raw_class[w] = id;
        }
        raw.push(members);
    }

    // Kahn's algorithm on the condensation; the heap pops the class with the
    // least member, and raw ids are already ordered by least member.
    let k = raw.len();
    let mut succ = vec![FixedBitSet::with_capacity(k); k];
    for (j, members) in raw.iter().enumerate() {
        let v = members[0];
        for w in up[v].ones() {
            succ[j].insert(raw_class[w]);
        }
    }
    let mut indegree = vec![0usize; k];
    for (j, s) in succ.iter().enumerate() {
        for i in s.ones().filter(|&i| i != j) {
            indegree[i] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..k).filter(|&j| indegree[j] == 0).map(Reverse).collect();
    let mut position = vec![0usize; k];
    let mut order = Vec::with_capacity(k);
    while let Some(Reverse(j)) = heap.pop() {
        position[j] = order.len();
        order.push(j);
        for i in succ[j].ones().filter(|&i| i != j) {
            indegree[i] -= 1;
            if indegree[i] == 0 {
                heap.push(Reverse(i));
            }
        }
    }
    debug_assert_eq!(order.len(), k, "domination is a preorder");

    let classes: Vec<Vec<Vertex>> = order.iter().map(|&j| raw[j].clone()).collect();
    let class_of: Vec<usize> = raw_class.iter().map(|&j| position[j]).collect();
    let arrows: Vec<FixedBitSet> = order
        .iter()
        .map(|&j| {
            let mut row = FixedBitSet::with_capacity(k);
            for i in succ[j].ones() {
                row.insert(position[i]);
            }
            row
        })
        .collect();

    DominanceData {
        up,
        classes,
        class_of,
        arrows,
    }
}

impl DominanceData {
    pub fn order(&self) -> usize {
        self.up.len()
    }

    /// `v ≤ w`.
    #[inline]
    pub fn leq(&self, v: Vertex, w: Vertex) -> bool {
        self.up[v].contains(w)
    }

    /// `v ∼ w`.
    #[inline]
    pub fn equivalent(&self, v: Vertex, w: Vertex) -> bool {
        self.class_of[v] == self.class_of[w]
    }

    /// All `w` with `v ≤ w`.
    pub fn dominators(&self, v: Vertex) -> &FixedBitSet {
        &self.up[v]
    }

    /// Classes in ascending order.
    pub fn classes(&self) -> &[Vec<Vertex>] {
        &self.classes
    }

    /// Position of the class of `v` in the ascending order.
    pub fn class_of(&self, v: Vertex) -> usize {
        self.class_of[v]
    }

    pub fn class_size(&self, v: Vertex) -> usize {
        self.classes[self.class_of[v]].len()
    }

    /// Whether Λ has an arrow from class `j` to class `i`.
    pub fn arrow(&self, j: usize, i: usize) -> bool {
        self.arrows[j].contains(i)
    }

    /// All arrows `(j, i)` of Λ, loops included, in lexicographic order.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        self.arrows
            .iter()
            .enumerate()
            .flat_map(|(j, row)| row.ones().map(move |i| (j, i)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_is_one_class() {
        let d = compute_domination(&Graph::complete(3));
        assert!((0..3).all(|v| (0..3).all(|w| d.leq(v, w))));
        assert_eq!(d.classes(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn path_of_length_two() {
        let g = Graph::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let d = compute_domination(&g);
        assert!(d.leq(0, 1) && d.leq(2, 1));
        assert!(d.equivalent(0, 2));
        assert!(!d.leq(1, 0));
        assert_eq!(d.classes(), &[vec![0, 2], vec![1]]);
        assert_eq!(d.arrows(), vec![(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn isolated_vertices_are_equivalent() {
        let d = compute_domination(&Graph::discrete(2));
        assert!(d.equivalent(0, 1));
        assert_eq!(d.classes().len(), 1);
    }

    #[test]
    fn ascending_order_respects_arrows_and_ties() {
        // v1 is isolated and dominated by everyone; the K3 comes later.
        let g = Graph::numbered(4, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        let d = compute_domination(&g);
        assert_eq!(d.classes(), &[vec![0], vec![1, 2, 3]]);
        assert!(d.arrow(0, 1) && !d.arrow(1, 0));
        for (j, i) in d.arrows() {
            assert!(j <= i);
        }
    }

    #[test]
    fn empty_graph() {
        let d = compute_domination(&Graph::discrete(0));
        assert!(d.classes().is_empty());
    }
}
