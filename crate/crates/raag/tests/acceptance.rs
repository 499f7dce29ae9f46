//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p raag --test acceptance`. The process exits
//! nonzero if a criterion fails other than those listed in
//! [`KNOWN_FAILURES`], which still print their FAIL line.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use raag::auto::Convention;
use raag::character::build_surjection_with;
use raag::hgroup::{random_product, reassemble, HGenerators};
use raag::identities::{
    check_crossed_lantern, check_m_transvection, check_tau_identity, crossed_lantern_pairs, m_transvection_triples,
    tau_adjacent_triples, tau_is_identity, tau_triples,
};
use raag::properties::check_properties_with;
use raag::word::{brute_force_equal, normal_form};
use raag::*;

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Property (B) agrees with the join shape on all graphs with six vertices.
fn criterion_1() -> Outcome {
    let mut with_b = 0;
    for (i, g) in Graph::all_labeled(6).enumerate() {
        let d = compute_domination(&g);
        let b = check_properties_with(&g, &d).b;
        let shape = product_shape(&g);
        ensure(b == shape.is_some(), || format!("graph #{i}: (B) = {b}, join shape = {shape:?}"))?;
        if let Some((free, abelian)) = shape {
            with_b += 1;
            let dec = decompose(&g).map_err(|e| format!("graph #{i}: {e}"))?;
            let mut ranks = dec.free_ranks.clone();
            ranks.sort_unstable();
            ensure(ranks == free && dec.abelian_rank == abelian, || {
                format!("graph #{i}: decomposition {dec:?}, expected {free:?} × Z^{abelian}")
            })?;
        } else {
            ensure(decompose(&g).is_err(), || format!("graph #{i}: decomposed without (B)"))?;
        }
    }
    Ok(format!("32768 graphs, {with_b} with (B)"))
}

/// (B1) forces `Γ − st(v)` to be edgeless whenever `st(v) ≠ Γ`.
fn criterion_2() -> Outcome {
    let mut checked = 0usize;
    for n in 0..=7 {
        for g in Graph::all_labeled(n) {
            let d = compute_domination(&g);
            let b1 = (0..n).all(|v| (v + 1..n).all(|w| g.adjacent(v, w) || d.equivalent(v, w)));
            if !b1 {
                continue;
            }
            checked += 1;
            for v in 0..n {
                if g.degree(v) + 1 == n {
                    continue;
                }
                let comps = g.components_minus_star(v).map_err(|e| e.to_string())?;
                ensure(comps.iter().all(|c| c.len() == 1), || {
                    format!("{g:?}: Γ − st({}) has an edge", g.name(v))
                })?;
            }
        }
    }
    Ok(format!("{checked} graphs with (B1) on ≤ 7 vertices"))
}

fn holds(check: raag::Result<IdentityCheck>, what: impl FnOnce() -> String) -> Result<(), String> {
    match check {
        Ok(c) if c.functional => Ok(()),
        Ok(c) => Err(format!("{} holds only as {:?}", what(), c.convention())),
        Err(e) => Err(format!("{}: {e}", what())),
    }
}

/// Crossed lantern identities.
fn criterion_3() -> Outcome {
    let fixtures = [
        ("D2", Graph::discrete(2)),
        ("D3", Graph::discrete(3)),
        ("D4", Graph::discrete(4)),
        ("D3+apex", d3_apex()),
    ];
    let mut count = 0;
    for (name, g) in &fixtures {
        let pairs = crossed_lantern_pairs(g);
        ensure(!pairs.is_empty(), || format!("{name}: no admissible pairs"))?;
        for (v, w) in pairs {
            for m in 0..=3 {
                holds(check_crossed_lantern(g, v, w, m), || format!("{name} ({v}, {w}) m = {m}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} identities"))
}

/// τ factorization, and τ trivial for adjacent `u`.
fn criterion_4() -> Outcome {
    let (mut count, mut trivial) = (0, 0);
    for (name, g) in small_fixtures() {
        for (u, v, w) in tau_triples(&g) {
            holds(check_tau_identity(&g, u, v, w), || format!("{name} ({u}, {v}, {w})"))?;
            count += 1;
        }
        for (u, v, w) in tau_adjacent_triples(&g) {
            ensure(tau_is_identity(&g, u, v, w).unwrap_or(false), || {
                format!("{name}: τ({u}, {v}, {w}) is not the identity")
            })?;
            trivial += 1;
        }
    }
    ensure(count > 0 && trivial > 0, || "no triples".into())?;
    Ok(format!("{count} factorizations, {trivial} trivial τ-maps"))
}

/// Commutators of transvection powers.
fn criterion_5() -> Outcome {
    let fixtures = [
        ("path", Graph::path(3)),
        ("D3", Graph::discrete(3)),
        ("D4", Graph::discrete(4)),
        ("K3", Graph::complete(3)),
    ];
    let (mut adjacent, mut other) = (0, 0);
    for (name, g) in &fixtures {
        for (v, u, w) in m_transvection_triples(g) {
            for m in 1..=3 {
                holds(check_m_transvection(g, v, u, w, m), || format!("{name} ({v}, {u}, {w}) m = {m}"))?;
                if g.adjacent(u, v) {
                    adjacent += 1;
                } else {
                    other += 1;
                }
            }
        }
    }
    ensure(adjacent > 0 && other > 0, || "both cases must occur".into())?;
    Ok(format!("{adjacent} adjacent, {other} non-adjacent identities"))
}

/// The surjection onto Z, certified on every relation instance.
fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    for (name, g) in [("{w}+K3+K3", example()), ("P7", Graph::path(7))] {
        let (w, y, z) = find_indicability_witness(&g).ok_or_else(|| format!("{name}: no witness"))?;
        let s = build_surjection_with(&g, w, &y, &z, &DayOptions::r0()).map_err(|e| format!("{name}: {e}"))?;
        let ch = &s.character;
        let cert = ch.certificate.as_ref().unwrap();
        ensure(cert.coverage == Coverage::Exhaustive && cert.all_zero, || {
            format!("{name}: certificate {:?}", cert.coverage)
        })?;
        ensure(cert.convention == Convention::Functional, || format!("{name}: convention"))?;
        let c_wz = WhiteheadMove {
            m: Letter::pos(w),
            a: LetterSet::both_signs(&z).with(Letter::pos(w)),
        }
        .display(&g);
        ensure(ch.value(&s.witness) == Some(1), || format!("{name}: π(c_wY) ≠ 1"))?;
        ensure(ch.value(&c_wz) == Some(-1), || format!("{name}: π(c_wZ) ≠ −1"))?;
        ensure(check_inner_kernel(&g, ch), || format!("{name}: nonzero on an inner automorphism"))?;
        parts.push(format!("{name}: {} instances", cert.total()));
    }
    Ok(parts.join(", "))
}

/// The corrected tree statement: the hypotheses hold iff some vertex `w`
/// has every *other* leaf at distance at least 3 and `Γ − st(w)` is
/// disconnected; for a leaf `w` the latter means its neighbor has degree at
/// least 3.
fn corrected_tree_predicate(g: &Graph) -> bool {
    let n = g.order();
    (0..n).any(|w| {
        let dist = g.distances_from(&[w]);
        let far = (0..n).all(|v| v == w || g.degree(v) != 1 || dist[v].map_or(true, |d| d >= 3));
        let split = if g.degree(w) == 1 {
            let x = (0..n).find(|&x| g.adjacent(w, x)).unwrap();
            g.degree(x) >= 3
        } else {
            g.degree(w) >= 2 && n > 1
        };
        far && split
    })
}

/// Tree criterion against the indicability hypotheses.
///
/// The distance-3 criterion misses trees in which a leaf `w` is the minimal
/// vertex: its own distance to itself is 0, yet no other vertex is
/// dominated by it. The smallest example is the spider with legs 1, 2, 2
/// on six vertices. The criterion is kept as stated and this criterion
/// reports the disagreements; the corrected predicate is verified on the
/// same trees.
fn criterion_7() -> Outcome {
    let mut total = 0;
    let mut disagreements = 0;
    let mut single_vertex = false;
    let mut first: Option<String> = None;
    for n in 1..=8 {
        let trees: Box<dyn Iterator<Item = Graph>> =
            if n == 1 { Box::new(std::iter::once(Graph::discrete(1))) } else { Box::new(labeled_trees(n)) };
        for g in trees {
            let tree = check_tree_criterion(&g).map_err(|e| e.to_string())?.is_some();
            let witness = find_indicability_witness(&g);
            let hyp = witness.is_some();
            ensure(corrected_tree_predicate(&g) == hyp, || format!("{g:?}: corrected predicate disagrees"))?;
            if tree != hyp {
                disagreements += 1;
                match witness {
                    Some((w, y, z)) if first.is_none() => {
                        first = Some(format!(
                            "{g:?} has witness {} with components {} and {}, but every vertex is within distance 2 of a leaf",
                            g.name(w),
                            g.format_set(&y),
                            g.format_set(&z)
                        ))
                    }
                    None => single_vertex |= n == 1,
                    _ => {}
                }
            }
            total += 1;
        }
    }
    if disagreements == 0 {
        Ok(format!("{total} labeled trees on ≤ 8 vertices"))
    } else {
        Err(format!(
            "{disagreements} of {total} labeled trees disagree{} (corrected predicate agrees on all); first: {}",
            if single_vertex { ", including the one-vertex tree" } else { "" },
            first.unwrap_or_default()
        ))
    }
}

/// Property (T) decision, perfectness witnesses, block closure.
fn criterion_8() -> Outcome {
    let mut graphs = 0;
    for n in 0..=6 {
        for g in Graph::all_labeled(n) {
            let d = decide_property_t(&g);
            ensure(d.has_t == b2_oracle(&g), || format!("{g:?}: has_t = {}", d.has_t))?;
            if let Some(ch) = &d.character {
                ensure(ch.certificate.as_ref().is_some_and(|c| c.all_zero), || {
                    format!("{g:?}: character certificate")
                })?;
            }
            graphs += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut witnesses = 0;
    for (name, g) in [("{w}+K3+K3", example()), ("K4", Graph::complete(4))] {
        let h = h_generators(&g);
        for &(s, t) in h.gens() {
            let w = perfectness_witness(&h, s, t).ok_or_else(|| format!("{name}: no witness for T({s},{t})"))?;
            ensure(w.inverse_first, || format!("{name}: T({s},{t}) ≠ [T_sl, T_lt]"))?;
            witnesses += 1;
        }
        for _ in 0..1000 {
            let m = random_product(&h, 20, &mut rng);
            ensure(verify_block_structure(&h, &m).unwrap(), || format!("{name}: product leaves the block shape"))?;
        }
    }
    Ok(format!("{graphs} graphs, {witnesses} witnesses, 2000 products"))
}

/// Clearing congruence matrices.
fn criterion_9() -> Outcome {
    let shapes = [
        h_generators(&example()),
        h_generators(&w_k4_k3()),
        HGenerators::from_digraph(&[1, 3, 2], &[(0, 1), (1, 2), (0, 2)]).unwrap(),
        HGenerators::from_digraph(&[2, 1, 3], &[(0, 2), (1, 2)]).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..100 {
        let h = &shapes[trial % shapes.len()];
        let level: i64 = if trial % 2 == 0 { 2 } else { 3 };
        let n = h.dim();
        let mut m = IntMatrix::identity(n);
        for s in 0..n {
            for t in 0..n {
                if h.block_of(s) != h.block_of(t) && h.admissible(s, t) {
                    m.set(s, t, level * rng.gen_range(-4..=4));
                }
            }
        }
        let factors = congruence_clear_offdiagonal(h, &m, level).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(
            factors.iter().all(|f| f.power % level == 0 && h.admissible(f.s, f.t)),
            || format!("trial {trial}: factor outside the congruence subgroup"),
        )?;
        ensure(reassemble(n, &factors) == m, || format!("trial {trial}: factors do not multiply back"))?;
        let cleared = factors.iter().fold(m.clone(), |acc, f| &f.matrix(n) * &acc);
        ensure(cleared.is_identity(), || format!("trial {trial}: not cleared"))?;
    }
    Ok("100 matrices at levels 2 and 3".into())
}

/// The random graph experiment.
fn criterion_10() -> Outcome {
    let cfg = ExperimentConfig::new(500, 0.0, 2000, raag::random::DEFAULT_SEED).unwrap();
    let r = run_experiment(&cfg).map_err(|e| e.to_string())?;
    ensure(r.isolated_without_nl == 0, || "a graph with three isolated vertices lacks (NL)".into())?;
    ensure(r.tv_distance <= 0.08, || format!("TV distance {:.4} > 0.08", r.tv_distance))?;
    ensure(r.empirical_nl_frequency > r.nl_lower_bound, || {
        format!("(NL) frequency {:.4} ≤ {:.4}", r.empirical_nl_frequency, r.nl_lower_bound)
    })?;
    Ok(format!(
        "N = {}, TV = {:.4}, (NL) frequency = {:.4} > {:.4}",
        r.edges, r.tv_distance, r.empirical_nl_frequency, r.nl_lower_bound
    ))
}

/// Normal forms against rewriting-move search.
fn criterion_11() -> Outcome {
    let mut words_checked = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut spot = 0;
    for n in 0..=4 {
        let words = all_words(n, 6);
        for g in Graph::all_labeled(n) {
            let mut keys = WordKeys::new(&g);
            let mut nf_of_key: std::collections::HashMap<Vec<Letter>, Word> = std::collections::HashMap::new();
            let mut key_of_nf: std::collections::HashMap<Word, Vec<Letter>> = std::collections::HashMap::new();
            for w in &words {
                let key = keys.key(w);
                let nf = normal_form(&g, &Word(w.clone())).map_err(|e| e.to_string())?;
                let a = nf_of_key.entry(key.clone()).or_insert_with(|| nf.clone());
                ensure(*a == nf, || format!("{g:?}: {w:?} equal by moves but normal forms differ"))?;
                let b = key_of_nf.entry(nf).or_insert_with(|| key.clone());
                ensure(*b == key, || format!("{g:?}: {w:?} equal normal forms but different by moves"))?;
            }
            ensure(!keys.inconsistent, || format!("{g:?}: reduction is not confluent"))?;
            words_checked += words.len();
            // Spot checks against the bidirectional move search, which also
            // inserts cancelling pairs.
            if n >= 2 {
                let short = words.partition_point(|w| w.len() <= 3);
                for i in 0..20 {
                    let a = words[rng.gen_range(0..short)].clone();
                    let b = if i % 2 == 0 {
                        words[rng.gen_range(0..short)].clone()
                    } else {
                        // A cancelling pair inserted somewhere: equal by one move.
                        let x = Letter(rng.gen_range(0..2 * n as u32));
                        let at = rng.gen_range(0..=a.len());
                        let mut b = a.clone();
                        b.splice(at..at, [x, x.inverse()]);
                        b
                    };
                    let (wa, wb) = (Word(a.clone()), Word(b.clone()));
                    let same = normal_form(&g, &wa).unwrap() == normal_form(&g, &wb).unwrap();
                    let bf = brute_force_equal(&g, &wa, &wb, 6).map_err(|e| e.to_string())?;
                    ensure(same == bf, || format!("{g:?}: {a:?} vs {b:?}"))?;
                    spot += 1;
                }
            }
        }
    }
    Ok(format!("{words_checked} words, {spot} pair searches"))
}

/// Criteria whose statement is false as written; see the doc comment on the
/// criterion function for the analysis.
const KNOWN_FAILURES: [u32; 1] = [7];

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 11] = [
        (1, "property (B) ⟺ product decomposition", Duration::from_secs(30), criterion_1),
        (2, "(B1) ⟹ Γ − st(v) edgeless", Duration::from_secs(120), criterion_2),
        (3, "crossed lantern", Duration::from_secs(5), criterion_3),
        (4, "τ factorization", Duration::from_secs(60), criterion_4),
        (5, "transvection commutators", Duration::from_secs(60), criterion_5),
        (6, "surjection onto Z with certificate", Duration::from_secs(60), criterion_6),
        (7, "tree criterion", Duration::from_secs(60), criterion_7),
        (8, "property (T) decision", Duration::from_secs(120), criterion_8),
        (9, "congruence clearing", Duration::from_secs(60), criterion_9),
        (10, "random graph experiment", Duration::from_secs(120), criterion_10),
        (11, "normal form oracle", Duration::from_secs(300), criterion_11),
    ];
    let mut failed = Vec::new();
    for (id, title, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {title}: {detail} [{elapsed:.2?}]"),
            Err(why) => {
                failed.push(id);
                println!("criterion {id:>2} FAIL  {title}: {why} [{elapsed:.2?}]");
            }
        }
    }
    let unexpected: Vec<u32> = failed.iter().copied().filter(|id| !KNOWN_FAILURES.contains(id)).collect();
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}; of these, documented: {KNOWN_FAILURES:?}");
    }
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
