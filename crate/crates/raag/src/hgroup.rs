//! The transvection group `H_Λ ≤ SL(n, Z)` attached to a class digraph.
//!
//! Indices are partitioned into blocks `V_1, …, V_k` (in ascending order) and
//! `H_Λ` is generated by the matrices `T_st = I + E_st` with `s ∈ V_i`,
//! `t ∈ V_j`, `s ≠ t` and an arrow `V_j → V_i`. For a graph the blocks are the
//! domination classes and `T_st` is the image of the transvection `t ↦ t·s`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::character::{Certificate, CertificateEntry, CharacterDomain, ZCharacter};
use crate::auto::Convention;
use crate::domination::compute_domination;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::matrix::IntMatrix;
use crate::properties::check_properties;
use crate::relations::Coverage;

/// Generators of `H_Λ` and the block data they come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HGenerators {
    n: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    /// `arrows[j]` holds the blocks `i` with an arrow `V_j → V_i`.
    arrows: Vec<FixedBitSet>,
    gens: Vec<(usize, usize)>,
    labels: Vec<String>,
}

/// The generators of the image of `SAut⁰(A_Γ)` in `SL(n, Z)`.
pub fn h_generators(g: &Graph) -> HGenerators {
    let d = compute_domination(g);
    let blocks = d.classes().to_vec();
    let k = blocks.len();
    let mut arrows = vec![FixedBitSet::with_capacity(k); k];
    for (j, i) in d.arrows() {
        arrows[j].insert(i);
    }
    let block_of = (0..g.order()).map(|v| d.class_of(v)).collect();
    HGenerators::assemble(g.order(), blocks, block_of, arrows, g.names().to_vec())
}

impl HGenerators {
    /// `H_Λ` for blocks of the given sizes (indices assigned consecutively)
    /// and the given arrows `(j, i)`, meaning `V_j → V_i`. Loops are added;
    /// arrows must point forward and be transitive.
    pub fn from_digraph(sizes: &[usize], arrows: &[(usize, usize)]) -> Result<Self> {
        let k = sizes.len();
        if sizes.contains(&0) {
            return Err(Error::Parameter("blocks must be nonempty".into()));
        }
        let mut rel = vec![FixedBitSet::with_capacity(k); k];
        for (j, row) in rel.iter_mut().enumerate() {
            row.insert(j);
        }
        for &(j, i) in arrows {
            if j >= k || i >= k {
                return Err(Error::Parameter(format!("arrow ({j}, {i}) names a missing block")));
            }
            if j > i {
                return Err(Error::Parameter(format!("arrow V{} → V{} points backwards", j + 1, i + 1)));
            }
            rel[j].insert(i);
        }
        for j in 0..k {
            for i in rel[j].ones().collect::<Vec<_>>() {
                if !rel[i].is_subset(&rel[j]) {
                    return Err(Error::Parameter(format!(
                        "arrows are not transitive at V{} → V{}",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        let mut blocks = Vec::with_capacity(k);
        let mut block_of = Vec::new();
        for (b, &size) in sizes.iter().enumerate() {
            let start = block_of.len();
            blocks.push((start..start + size).collect());
            block_of.extend(std::iter::repeat(b).take(size));
        }
        let n = block_of.len();
        let labels = (1..=n).map(|i| i.to_string()).collect();
        Ok(HGenerators::assemble(n, blocks, block_of, rel, labels))
    }

    fn assemble(
        n: usize,
        blocks: Vec<Vec<usize>>,
        block_of: Vec<usize>,
        arrows: Vec<FixedBitSet>,
        labels: Vec<String>,
    ) -> Self {
        let mut gens = Vec::new();
        for s in 0..n {
            for t in 0..n {
                if s != t && arrows[block_of[t]].contains(block_of[s]) {
                    gens.push((s, t));
                }
            }
        }
        HGenerators {
            n,
            blocks,
            block_of,
            arrows,
            gens,
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, s: usize) -> usize {
        self.block_of[s]
    }

    /// Whether `V_j → V_i`.
    pub fn arrow(&self, j: usize, i: usize) -> bool {
        self.arrows[j].contains(i)
    }

    /// Generators `(s, t)` in lexicographic order.
    pub fn gens(&self) -> &[(usize, usize)] {
        &self.gens
    }

    pub fn is_generator(&self, s: usize, t: usize) -> bool {
        s != t && s < self.n && t < self.n && self.admissible(s, t)
    }

    /// Whether an entry at `(s, t)` is allowed by the arrows.
    pub fn admissible(&self, s: usize, t: usize) -> bool {
        self.arrow(self.block_of[t], self.block_of[s])
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    /// `T(s,t)` with index labels.
    pub fn gen_name(&self, s: usize, t: usize) -> String {
        format!("T({},{})", self.labels[s], self.labels[t])
    }

    pub fn gen_names(&self) -> Vec<String> {
        self.gens.iter().map(|&(s, t)| self.gen_name(s, t)).collect()
    }

    pub fn matrix(&self, s: usize, t: usize) -> IntMatrix {
        IntMatrix::elementary(self.n, s, t, 1)
    }

    fn check_dim(&self, m: &IntMatrix) -> Result<()> {
        if m.dim() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: m.dim(),
            });
        }
        Ok(())
    }

    /// Product of `T_{g}^{±1}` over a word of `(generator index, inverse)`.
    pub fn word_matrix(&self, word: &[(usize, bool)]) -> IntMatrix {
        let mut m = IntMatrix::identity(self.n);
        for &(i, inv) in word {
            let (s, t) = self.gens[i];
            // Right multiplication by I ± E_st adds ± column s to column t.
            m.add_col_multiple(s, t, if inv { -1 } else { 1 });
        }
        m
    }
}

/// Whether every nonzero entry of `m` lies in an admissible block.
pub fn verify_block_structure(h: &HGenerators, m: &IntMatrix) -> Result<bool> {
    h.check_dim(m)?;
    Ok((0..h.n).all(|s| (0..h.n).all(|t| m.get(s, t) == 0 || h.admissible(s, t))))
}

/// Result of [`perfectness_witness`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectnessWitness {
    pub l: usize,
    /// `T_sl⁻¹ T_lt⁻¹ T_sl T_lt = T_st`.
    pub inverse_first: bool,
    /// `T_sl T_lt T_sl⁻¹ T_lt⁻¹ = T_st`.
    pub inverse_last: bool,
}

/// The first `l ∉ {s, t}` with `T_st = [T_sl, T_lt]`, both generators.
pub fn perfectness_witness(h: &HGenerators, s: usize, t: usize) -> Option<PerfectnessWitness> {
    if !h.is_generator(s, t) {
        return None;
    }
    let target = h.matrix(s, t);
    (0..h.n).filter(|&l| l != s && l != t).find_map(|l| {
        if !h.is_generator(s, l) || !h.is_generator(l, t) {
            return None;
        }
        let a = h.matrix(s, l);
        let b = h.matrix(l, t);
        let ai = IntMatrix::elementary(h.n, s, l, -1);
        let bi = IntMatrix::elementary(h.n, l, t, -1);
        let inverse_first = &(&(&ai * &bi) * &a) * &b == target;
        let inverse_last = &(&(&a * &b) * &ai) * &bi == target;
        (inverse_first || inverse_last).then_some(PerfectnessWitness {
            l,
            inverse_first,
            inverse_last,
        })
    })
}

/// Outcome of [`decide_property_t`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TDecision {
    pub has_t: bool,
    pub b2_witness_pair: Option<(Vertex, Vertex)>,
    pub witness_class_sizes: Option<(usize, usize)>,
    pub character: Option<ZCharacter>,
    pub diagnostic: String,
}

/// Decides property (T) for the image group via the (B2) criterion. When
/// (B2) fails at `v ≤ w` with singleton classes, the character sending
/// `T(w,v)` to `1` and every other generator to `0` is attached.
pub fn decide_property_t(g: &Graph) -> TDecision {
    let report = check_properties(g);
    let Some((v, w)) = report.b2_failure_witness else {
        return TDecision {
            has_t: true,
            b2_witness_pair: None,
            witness_class_sizes: None,
            character: None,
            diagnostic: "(B2) holds".into(),
        };
    };
    let d = compute_domination(g);
    let sizes = (d.class_size(v), d.class_size(w));
    if d.equivalent(v, w) {
        return TDecision {
            has_t: false,
            b2_witness_pair: Some((v, w)),
            witness_class_sizes: Some(sizes),
            character: None,
            diagnostic: "two-element-class witness".into(),
        };
    }
    let h = h_generators(g);
    let names = h.gen_names();
    let mut values = vec![0; names.len()];
    let k = h.gens().iter().position(|&p| p == (w, v)).expect("v ≤ w gives a generator");
    values[k] = 1;
    let mut character = ZCharacter {
        domain: CharacterDomain::HTransvections,
        names,
        values,
        certificate: None,
    };
    character.certificate = Some(known_relator_certificate(&h, &character));
    TDecision {
        has_t: false,
        b2_witness_pair: Some((v, w)),
        witness_class_sizes: Some(sizes),
        character: Some(character),
        diagnostic: "singleton-class witness".into(),
    }
}

/// A word in the generators of `H_Λ`: `(generator index, inverse)`.
pub type HWord = Vec<(usize, bool)>;

fn word_sum(word: &[(usize, bool)], values: &[i64]) -> i64 {
    word.iter().map(|&(i, inv)| if inv { -values[i] } else { values[i] }).sum()
}

fn invert(word: &[(usize, bool)]) -> HWord {
    word.iter().rev().map(|&(i, inv)| (i, !inv)).collect()
}

fn free_reduce(word: HWord) -> HWord {
    let mut out: HWord = Vec::with_capacity(word.len());
    for x in word {
        if out.last().is_some_and(|&(i, inv)| i == x.0 && inv != x.1) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Identity words from the standard families: Steinberg commutators,
/// commuting pairs and, inside each `2 × 2` block, the braid and order-four
/// relations of `SL(2, Z)`. Each word is checked to multiply to `I`.
pub fn known_relators(h: &HGenerators) -> Vec<(String, HWord)> {
    let index: HashMap<(usize, usize), usize> = h.gens().iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut out = Vec::new();
    let gens = h.gens();
    for (a, &(s, l)) in gens.iter().enumerate() {
        for (b, &(l2, t)) in gens.iter().enumerate() {
            if l2 == l && t != s {
                if let Some(&c) = index.get(&(s, t)) {
                    out.push(("steinberg".to_string(), vec![(a, true), (b, true), (a, false), (b, false), (c, true)]));
                }
            }
            if a < b {
                let word = vec![(a, true), (b, true), (a, false), (b, false)];
                if h.word_matrix(&word).is_identity() {
                    out.push(("commuting".to_string(), word));
                }
            }
        }
    }
    for (a, &(s, t)) in gens.iter().enumerate() {
        if s < t {
            if let Some(&b) = index.get(&(t, s)) {
                let (x, y) = ((a, false), (b, false));
                let (xi, yi) = ((a, true), (b, true));
                out.push(("braid".to_string(), vec![x, yi, x, y, xi, y]));
                let w = [x, yi, x];
                out.push(("order four".to_string(), w.iter().copied().cycle().take(12).collect()));
            }
        }
    }
    out.retain(|(_, w)| h.word_matrix(w).is_identity());
    out
}

fn known_relator_certificate(h: &HGenerators, ch: &ZCharacter) -> Certificate {
    let mut counts: Vec<(String, usize)> = Vec::new();
    let mut examples: Vec<CertificateEntry> = Vec::new();
    let mut all_zero = true;
    let names = h.gen_names();
    for (family, word) in known_relators(h) {
        let sum = word_sum(&word, &ch.values);
        all_zero &= sum == 0;
        match counts.iter_mut().find(|(f, _)| *f == family) {
            Some((_, c)) => *c += 1,
            None => counts.push((family.clone(), 1)),
        }
        if sum != 0 || !examples.iter().any(|e| e.relation == family) {
            examples.push(CertificateEntry {
                relation: family,
                instance: display_word(&names, &word),
                sum,
            });
        }
    }
    Certificate {
        coverage: Coverage::Exhaustive,
        convention: Convention::Functional,
        counts,
        examples,
        all_zero,
    }
}

fn display_word(names: &[String], word: &[(usize, bool)]) -> String {
    word.iter()
        .map(|&(i, inv)| {
            if inv {
                format!("{}^-1", names[i])
            } else {
                names[i].clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// A word multiplying to the identity on which a character is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub word: Vec<(usize, bool)>,
    pub display: String,
    pub sum: i64,
    pub source: String,
}

/// Largest number of words stored for the exhaustive short-word search.
const SHORT_WORD_LIMIT: usize = 60_000;
/// Number of random words drawn per search.
const RANDOM_WORDS: usize = 20_000;

/// Searches for an identity word in the generators of `h` on which `ch` has
/// nonzero exponent sum. Combines the known relator families, all pairs of
/// short reduced words with equal matrices, and collisions among seeded
/// random words of length at most `budget`. Returns the least
/// counterexample by (length, word). `None` is not a proof.
pub fn falsify_character(h: &HGenerators, ch: &ZCharacter, budget: usize, seed: u64) -> Option<Counterexample> {
    let values = &ch.values;
    if values.len() != h.gens().len() || h.gens().is_empty() {
        return None;
    }
    let names = h.gen_names();
    let mut best: Option<(HWord, &'static str)> = None;
    let mut offer = |word: HWord, source: &'static str| {
        let word = free_reduce(word);
        if word.is_empty() || word_sum(&word, values) == 0 {
            return;
        }
        let better = best
            .as_ref()
            .map_or(true, |(b, _)| (word.len(), &word) < (b.len(), b));
        if better {
            best = Some((word, source));
        }
    };

    for (_, word) in known_relators(h) {
        offer(word, "known relator");
    }

    // Reduced words of bounded length, grouped by matrix.
    let letters = 2 * h.gens().len();
    let mut half = 0;
    let mut count = 1usize;
    let mut layer = letters;
    while half < budget / 2 && count + layer <= SHORT_WORD_LIMIT {
        count += layer;
        half += 1;
        layer = layer.saturating_mul(letters - 1);
    }
    let mut by_matrix: HashMap<IntMatrix, Vec<HWord>> = HashMap::new();
    let mut frontier: Vec<HWord> = vec![Vec::new()];
    by_matrix.entry(IntMatrix::identity(h.dim())).or_default().push(Vec::new());
    for _ in 0..half {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..h.gens().len() {
                for inv in [false, true] {
                    if w.last() == Some(&(i, !inv)) {
                        continue;
                    }
                    let mut x = w.clone();
                    x.push((i, inv));
                    by_matrix.entry(h.word_matrix(&x)).or_default().push(x.clone());
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    let mut classes: Vec<&Vec<HWord>> = by_matrix.values().filter(|ws| ws.len() > 1).collect();
    classes.sort();
    for ws in classes {
        let mut sorted: Vec<&HWord> = ws.iter().collect();
        sorted.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let first = sorted[0];
        let s0 = word_sum(first, values);
        if let Some(other) = sorted.iter().find(|w| word_sum(w, values) != s0) {
            offer([first.clone(), invert(other)].concat(), "short words");
        }
    }

    // Seeded random words; equal matrices give identity words.
    if budget > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen: HashMap<IntMatrix, HWord> = HashMap::new();
        let gen_ids: Vec<usize> = (0..h.gens().len()).collect();
        for _ in 0..RANDOM_WORDS {
            let len = rng.gen_range(1..=budget);
            let mut w: HWord = Vec::with_capacity(len);
            while w.len() < len {
                let i = *gen_ids.choose(&mut rng).expect("nonempty");
                let inv = rng.gen_bool(0.5);
                if w.last() == Some(&(i, !inv)) {
                    continue;
                }
                w.push((i, inv));
            }
            let m = h.word_matrix(&w);
            if m.is_identity() {
                offer(w, "random words");
                continue;
            }
            match seen.get(&m) {
                Some(prev) if word_sum(prev, values) != word_sum(&w, values) => {
                    offer([prev.clone(), invert(&w)].concat(), "random words");
                }
                Some(_) => {}
                None => {
                    seen.insert(m, w);
                }
            }
        }
    }

    best.map(|(word, source)| {
        debug_assert!(h.word_matrix(&word).is_identity());
        Counterexample {
            display: display_word(&names, &word),
            sum: word_sum(&word, values),
            word,
            source: source.to_string(),
        }
    })
}

/// One left multiplication by `T_st^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementaryFactor {
    pub s: usize,
    pub t: usize,
    pub power: i64,
}

impl ElementaryFactor {
    pub fn matrix(&self, n: usize) -> IntMatrix {
        IntMatrix::elementary(n, self.s, self.t, self.power)
    }
}

/// Elementary factors `F_1, …, F_r`, all admissible powers of level
/// multiples, with `F_r ⋯ F_1 · m = I`. Rows are cleared in ascending block
/// order, so each row operation only ever subtracts an already cleared row.
pub fn congruence_clear_offdiagonal(h: &HGenerators, m: &IntMatrix, level: i64) -> Result<Vec<ElementaryFactor>> {
    h.check_dim(m)?;
    if level <= 0 {
        return Err(Error::Parameter(format!("level must be positive, got {level}")));
    }
    for s in 0..h.n {
        for t in 0..h.n {
            let x = m.get(s, t);
            if h.block_of[s] == h.block_of[t] {
                if x != i64::from(s == t) {
                    return Err(Error::Matrix(format!(
                        "diagonal block {} is not the identity",
                        h.block_of[s] + 1
                    )));
                }
            } else if x != 0 {
                if !h.admissible(s, t) {
                    return Err(Error::Matrix(format!(
                        "entry ({}, {}) lies in a block without an arrow",
                        h.labels[s], h.labels[t]
                    )));
                }
                if x % level != 0 {
                    return Err(Error::Matrix(format!(
                        "entry ({}, {}) = {x} is not divisible by {level}",
                        h.labels[s], h.labels[t]
                    )));
                }
            }
        }
    }
    let mut work = m.clone();
    let mut out = Vec::new();
    for block in &h.blocks {
        for &s in block {
            for t in 0..h.n {
                let x = work.get(s, t);
                if h.block_of[t] != h.block_of[s] && x != 0 {
                    work.add_row_multiple(s, t, -x);
                    out.push(ElementaryFactor { s, t, power: -x });
                }
            }
        }
    }
    debug_assert!(work.is_identity());
    Ok(out)
}

/// `F_1⁻¹ ⋯ F_r⁻¹`, which recovers the matrix the factors were computed from.
pub fn reassemble(n: usize, factors: &[ElementaryFactor]) -> IntMatrix {
    factors.iter().fold(IntMatrix::identity(n), |acc, f| {
        &acc * &IntMatrix::elementary(n, f.s, f.t, -f.power)
    })
}

/// Shape data for the normal subgroups `N₁`, `N₂` and the base cases of
/// the inductive argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub block_sizes: Vec<usize>,
    /// Generators with column in `V_1`.
    pub n1_generators: Vec<(usize, usize)>,
    /// Generators with row in `V_k`.
    pub n2_generators: Vec<(usize, usize)>,
    /// The generator spanning `N₁ ∩ N₂` when `n₁ = n_k = 1` and `V_1 → V_k`.
    pub corner: Option<(usize, usize)>,
    /// Every arrow starts at `V_1` and `n₁ > 2`.
    pub case_i: bool,
    /// Every arrow ends at `V_k` and `n_k > 2`.
    pub case_ii: bool,
    /// `Σ n_j` over the other endpoints of arrows at `V_1` (case i) or `V_k`
    /// (case ii).
    pub m: Option<usize>,
}

/// [`StructureReport`] for `h`. Loops on singleton blocks carry no
/// generator and are ignored when matching the base cases.
pub fn structure_report(h: &HGenerators) -> StructureReport {
    let k = h.blocks.len();
    let sizes: Vec<usize> = h.blocks.iter().map(Vec::len).collect();
    if k == 0 {
        return StructureReport {
            block_sizes: sizes,
            n1_generators: Vec::new(),
            n2_generators: Vec::new(),
            corner: None,
            case_i: false,
            case_ii: false,
            m: None,
        };
    }
    let last = k - 1;
    let n1_generators: Vec<_> = h.gens.iter().copied().filter(|&(_, t)| h.block_of[t] == 0).collect();
    let n2_generators: Vec<_> = h.gens.iter().copied().filter(|&(s, _)| h.block_of[s] == last).collect();
    let corner = (k > 1 && sizes[0] == 1 && sizes[last] == 1 && h.arrow(0, last))
        .then(|| (h.blocks[last][0], h.blocks[0][0]));
    let effective: Vec<(usize, usize)> = (0..k)
        .flat_map(|j| h.arrows[j].ones().map(move |i| (j, i)))
        .filter(|&(j, i)| j != i || sizes[j] > 1)
        .collect();
    let case_i = sizes[0] > 2 && effective.iter().all(|&(j, _)| j == 0);
    let case_ii = sizes[last] > 2 && effective.iter().all(|&(_, i)| i == last);
    let sum_over = |blocks: &mut dyn Iterator<Item = usize>| blocks.map(|b| sizes[b]).sum::<usize>();
    let m = if case_ii {
        Some(sum_over(&mut (0..last).filter(|&j| h.arrow(j, last))))
    } else if case_i {
        Some(sum_over(&mut (1..k).filter(|&i| h.arrow(0, i))))
    } else {
        None
    };
    StructureReport {
        block_sizes: sizes,
        n1_generators,
        n2_generators,
        corner,
        case_i,
        case_ii,
        m,
    }
}

/// A random product of `len` generators and inverses.
pub fn random_product(h: &HGenerators, len: usize, rng: &mut impl Rng) -> IntMatrix {
    if h.gens().is_empty() {
        return IntMatrix::identity(h.dim());
    }
    let word: HWord = (0..len)
        .map(|_| (rng.gen_range(0..h.gens().len()), rng.gen_bool(0.5)))
        .collect();
    h.word_matrix(&word)
}
