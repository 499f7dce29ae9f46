//! Exact checks of three families of identities between automorphisms:
//! the crossed lantern relation, the factorization of a τ-map into partial
//! conjugations and transvections, and commutators of transvection powers.
//!
//! Every identity is evaluated twice — reading written products as function
//! composition and reading them left to right — and the result records which
//! readings hold. An identity that fails under both readings is reported as
//! [`Error::Inconsistency`].

use serde::{Deserialize, Serialize};

use crate::auto::{
    evaluate, partial_conjugation_unchecked, tau, transvection_unchecked, Auto, Convention, Factor,
};
use crate::domination::compute_domination;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::word::Letter;

/// Which readings of a written product make an identity hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub functional: bool,
    pub sequential: bool,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.functional || self.sequential
    }

    /// The reading under which the identity holds, preferring function
    /// composition.
    pub fn convention(&self) -> Option<Convention> {
        if self.functional {
            Some(Convention::Functional)
        } else if self.sequential {
            Some(Convention::Sequential)
        } else {
            None
        }
    }
}

fn compare(g: &Graph, lhs: &[Factor<'_>], rhs: &[Factor<'_>], what: impl FnOnce() -> String) -> Result<IdentityCheck> {
    let [functional, sequential] = Convention::BOTH.map(|c| evaluate(g, lhs, c) == evaluate(g, rhs, c));
    let check = IdentityCheck {
        functional,
        sequential,
    };
    if check.holds() {
        Ok(check)
    } else {
        Err(Error::Inconsistency(format!("{} fails under both readings", what())))
    }
}

fn repeat<'a>(f: Factor<'a>, k: usize) -> impl Iterator<Item = Factor<'a>> {
    std::iter::repeat(f).take(k)
}

/// `[a, b] = a⁻¹ b⁻¹ a b` for factor lists.
fn commutator<'a>(a: &[Factor<'a>], b: &[Factor<'a>]) -> Vec<Factor<'a>> {
    let inv = |xs: &[Factor<'a>]| -> Vec<Factor<'a>> {
        xs.iter()
            .rev()
            .map(|f| Factor {
                auto: f.auto,
                inverse: !f.inverse,
            })
            .collect()
    };
    [inv(a), inv(b), a.to_vec(), b.to_vec()].concat()
}

fn conjugation_exists(g: &Graph, v: Vertex, y: Vertex) -> bool {
    // {y} is a component of Γ − st(v).
    y != v && !g.adjacent(v, y) && g.link_set(y).is_subset(&g.star_set(v))
}

/// Pairs `(v, w)` for which the crossed lantern identity is stated:
/// distinct, non-adjacent and equivalent.
pub fn crossed_lantern_pairs(g: &Graph) -> Vec<(Vertex, Vertex)> {
    let d = compute_domination(g);
    let n = g.order();
    (0..n)
        .flat_map(|v| (0..n).map(move |w| (v, w)))
        .filter(|&(v, w)| v != w && !g.adjacent(v, w) && d.equivalent(v, w))
        .collect()
}

/// `c₁^m = [t^m, c₂⁻¹]` with `c₁ = c_{w,{v}}`, `t = t_{v w⁻¹}`, `c₂ = c_{v,{w}}`.
pub fn check_crossed_lantern(g: &Graph, v: Vertex, w: Vertex, m: u32) -> Result<IdentityCheck> {
    g.check_vertex(v)?;
    g.check_vertex(w)?;
    if v == w || g.adjacent(v, w) {
        return Err(Error::Hypothesis(format!(
            "{} and {} must be distinct and non-adjacent",
            g.name(v),
            g.name(w)
        )));
    }
    if !compute_domination(g).equivalent(v, w) {
        return Err(Error::Hypothesis(format!("{} ≁ {}", g.name(v), g.name(w))));
    }
    let c1 = partial_conjugation_unchecked(g, w, &[v]);
    let c2 = partial_conjugation_unchecked(g, v, &[w]);
    let t = transvection_unchecked(g, v, Letter::neg(w));
    let m = m as usize;
    let lhs: Vec<Factor<'_>> = repeat(Factor::new(&c1), m).collect();
    let tm: Vec<Factor<'_>> = repeat(Factor::new(&t), m).collect();
    let rhs = commutator(&tm, &[Factor::inv(&c2)]);
    compare(g, &lhs, &rhs, || {
        format!("crossed lantern for ({}, {}), m = {m}", g.name(v), g.name(w))
    })
}

/// Triples `(u, v, w)` with `lk(v) ⊆ st(u) ∩ st(w)`, `u, w ≠ v` and `u`
/// not adjacent to `v` (so `c_{u,{v}}` and `t_{vw}` exist).
pub fn tau_triples(g: &Graph) -> Vec<(Vertex, Vertex, Vertex)> {
    let d = compute_domination(g);
    let n = g.order();
    let mut out = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || g.adjacent(u, v) || !d.leq(v, u) {
                continue;
            }
            for w in (0..n).filter(|&w| w != v && d.leq(v, w)) {
                out.push((u, v, w));
            }
        }
    }
    out
}

/// Triples `(u, v, w)` with `lk(v) ⊆ st(u) ∩ st(w)`, `w ≠ v` and `u ∈ lk(v)`.
pub fn tau_adjacent_triples(g: &Graph) -> Vec<(Vertex, Vertex, Vertex)> {
    let d = compute_domination(g);
    let n = g.order();
    let mut out = Vec::new();
    for u in 0..n {
        for v in (0..n).filter(|&v| g.adjacent(u, v) && d.leq(v, u)) {
            for w in (0..n).filter(|&w| w != v && d.leq(v, w)) {
                out.push((u, v, w));
            }
        }
    }
    out
}

/// `τ_{u,v,w} = c⁻¹ t_{vw}⁻¹ c t_{vw}` with `c = c_{u,{v}}`.
pub fn check_tau_identity(g: &Graph, u: Vertex, v: Vertex, w: Vertex) -> Result<IdentityCheck> {
    let lhs_auto = tau(g, u, v, w)?;
    if g.adjacent(u, v) {
        return Err(Error::Hypothesis(format!(
            "{} ∈ lk({}); τ is then the identity",
            g.name(u),
            g.name(v)
        )));
    }
    debug_assert!(conjugation_exists(g, u, v));
    let c = partial_conjugation_unchecked(g, u, &[v]);
    let t = transvection_unchecked(g, v, Letter::pos(w));
    let rhs = [Factor::inv(&c), Factor::inv(&t), Factor::new(&c), Factor::new(&t)];
    compare(g, &[Factor::new(&lhs_auto)], &rhs, || {
        format!("τ identity for ({}, {}, {})", g.name(u), g.name(v), g.name(w))
    })
}

/// Whether `τ_{u,v,w}` is the identity; expected whenever `u ∈ lk(v)`.
pub fn tau_is_identity(g: &Graph, u: Vertex, v: Vertex, w: Vertex) -> Result<bool> {
    Ok(tau(g, u, v, w)?.is_identity())
}

/// Triples `(v, u, w)` with `v ≤ u ≤ w` and `u ∉ {v, w}`, `v ≠ w`.
pub fn m_transvection_triples(g: &Graph) -> Vec<(Vertex, Vertex, Vertex)> {
    let d = compute_domination(g);
    let n = g.order();
    let mut out = Vec::new();
    for v in 0..n {
        for u in (0..n).filter(|&u| u != v && d.leq(v, u)) {
            for w in (0..n).filter(|&w| w != v && w != u && d.leq(u, w)) {
                out.push((v, u, w));
            }
        }
    }
    out
}

/// `[t_{vu}^m, t_{uw}^m] = t_{vw}^{−m²}` when `u ∈ lk(v)`, and
/// `[t_{vu}^m, t_{uw}^m] = c^{−m} (c t_{vw}^{−m})^m` with `c = c_{u,{v}}`
/// otherwise.
pub fn check_m_transvection(g: &Graph, v: Vertex, u: Vertex, w: Vertex, m: u32) -> Result<IdentityCheck> {
    for x in [v, u, w] {
        g.check_vertex(x)?;
    }
    let d = compute_domination(g);
    if u == v || u == w || v == w || !d.leq(v, u) || !d.leq(u, w) {
        return Err(Error::Hypothesis(format!(
            "need {} ≤ {} ≤ {} with three distinct vertices",
            g.name(v),
            g.name(u),
            g.name(w)
        )));
    }
    if m == 0 {
        return Err(Error::Parameter("m must be at least 1".into()));
    }
    let m = m as usize;
    let t_vu = transvection_unchecked(g, v, Letter::pos(u));
    let t_uw = transvection_unchecked(g, u, Letter::pos(w));
    let t_vw = transvection_unchecked(g, v, Letter::pos(w));
    let a: Vec<Factor<'_>> = repeat(Factor::new(&t_vu), m).collect();
    let b: Vec<Factor<'_>> = repeat(Factor::new(&t_uw), m).collect();
    let lhs = commutator(&a, &b);
    let label = || format!("m-transvection for ({}, {}, {}), m = {m}", g.name(v), g.name(u), g.name(w));
    if g.adjacent(u, v) {
        let rhs: Vec<Factor<'_>> = repeat(Factor::inv(&t_vw), m * m).collect();
        compare(g, &lhs, &rhs, label)
    } else {
        let c: Auto = partial_conjugation_unchecked(g, u, &[v]);
        let mut rhs: Vec<Factor<'_>> = repeat(Factor::inv(&c), m).collect();
        for _ in 0..m {
            rhs.push(Factor::new(&c));
            rhs.extend(repeat(Factor::inv(&t_vw), m));
        }
        compare(g, &lhs, &rhs, label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossed_lantern_small_cases() {
        let d2 = Graph::discrete(2);
        assert!(check_crossed_lantern(&d2, 0, 1, 1).unwrap().holds());
        assert!(check_crossed_lantern(&d2, 0, 1, 0).unwrap().holds());
        let d3 = Graph::discrete(3);
        for (v, w) in crossed_lantern_pairs(&d3) {
            assert!(check_crossed_lantern(&d3, v, w, 3).unwrap().functional);
        }
        assert!(check_crossed_lantern(&Graph::complete(2), 0, 1, 1).is_err());
    }

    #[test]
    fn tau_identity_small_cases() {
        let d3 = Graph::discrete(3);
        assert!(check_tau_identity(&d3, 0, 1, 2).unwrap().holds());
        let d4 = Graph::discrete(4);
        for (u, v, w) in tau_triples(&d4) {
            assert!(check_tau_identity(&d4, u, v, w).unwrap().functional);
        }
        let k3 = Graph::complete(3);
        for (u, v, w) in tau_adjacent_triples(&k3) {
            assert!(tau_is_identity(&k3, u, v, w).unwrap());
        }
    }

    #[test]
    fn m_transvection_small_cases() {
        // a – b – c: a ≤ c ≤ b with a, c non-adjacent.
        let p = Graph::path(3);
        let triples = m_transvection_triples(&p);
        assert_eq!(triples, vec![(0, 2, 1), (2, 0, 1)]);
        for m in 1..=3 {
            for &(v, u, w) in &triples {
                assert!(check_m_transvection(&p, v, u, w, m).unwrap().functional);
            }
        }
        let k3 = Graph::complete(3);
        assert!(check_m_transvection(&k3, 0, 1, 2, 2).unwrap().functional);
        let d3 = Graph::discrete(3);
        assert!(check_m_transvection(&d3, 0, 1, 2, 2).unwrap().holds());
    }
}
