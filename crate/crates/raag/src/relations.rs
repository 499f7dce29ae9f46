//! Day's defining relations among Whitehead automorphisms, instantiated over
//! a concrete graph and verified exactly.
//!
//! Every instance is written as a product of named generators from a
//! [`GeneratorTable`] and is checked by evaluating both sides as
//! automorphisms. Products are read functionally (`αβ = α ∘ β`), which is the
//! reading under which all relations hold; an instance failing the check is
//! reported as [`Error::Inconsistency`] rather than dropped.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use arrayvec::ArrayVec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::auto::{
    enumerate_whitehead_moves, sigma_perm, type1_pool, type1_pool_generators, Auto, Convention, LetterSet,
    SignedPerm, Type1Pool, WhiteheadMove, DEFAULT_ENUMERATION_BOUND,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::word::{Letter, Word};

/// Default vertex bound for exhaustive relation enumeration.
pub const DEFAULT_RELATION_BOUND: usize = 7;

/// Largest squared pool size for which R7 lists the full multiplication table.
pub const FULL_TABLE_LIMIT: usize = 100_000;

/// Vertex bound for move enumeration when relations are sampled.
const SAMPLED_MOVE_BOUND: usize = 10;

/// The relation families; R8 is redundant and omitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelationType {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R9,
    R10,
}

impl RelationType {
    pub const ALL: [RelationType; 9] = [
        RelationType::R1,
        RelationType::R2,
        RelationType::R3,
        RelationType::R4,
        RelationType::R5,
        RelationType::R6,
        RelationType::R7,
        RelationType::R9,
        RelationType::R10,
    ];
}

impl fmt::Display for RelationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A generator of the table, possibly inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub gen: u32,
    pub inverse: bool,
}

impl Factor {
    pub fn new(gen: u32) -> Self {
        Factor { gen, inverse: false }
    }

    pub fn inv(gen: u32) -> Self {
        Factor { gen, inverse: true }
    }
}

/// `lhs = rhs` as a relation between words in the table's generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub relation: RelationType,
    pub lhs: ArrayVec<Factor, 3>,
    pub rhs: ArrayVec<Factor, 2>,
    /// Which hypothesis pattern of the relation was matched.
    pub side_condition: &'static str,
}

impl RelationInstance {
    /// Exponent sum of `lhs · rhs⁻¹` under generator values.
    pub fn sum(&self, values: &[i64]) -> i64 {
        let term = |f: &Factor| {
            let v = values[f.gen as usize];
            if f.inverse {
                -v
            } else {
                v
            }
        };
        self.lhs.iter().map(term).sum::<i64>() - self.rhs.iter().map(term).sum::<i64>()
    }

    pub fn display(&self, table: &GeneratorTable) -> String {
        let side = |fs: &[Factor]| {
            fs.iter()
                .map(|f| {
                    let name = table.name(f.gen);
                    if f.inverse {
                        format!("{name}^-1")
                    } else {
                        name.to_string()
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("{}: {} = {}", self.relation, side(&self.lhs), side(&self.rhs))
    }
}

/// One generator of `Aut⁰`-style presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator<'a> {
    Move(WhiteheadMove),
    Type1(&'a SignedPerm),
}

/// Type (2) Whitehead automorphisms followed by type (1) automorphisms (the
/// chosen pool together with all inversions), each with a name and its
/// automorphism.
pub struct GeneratorTable {
    n: usize,
    pool: Type1Pool,
    moves: Vec<WhiteheadMove>,
    type1: Vec<SignedPerm>,
    pool_len: usize,
    autos: Vec<Auto>,
    names: Vec<String>,
    move_index: HashMap<WhiteheadMove, u32>,
    type1_index: HashMap<SignedPerm, u32>,
    name_index: HashMap<String, u32>,
}

impl fmt::Debug for GeneratorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorTable")
            .field("moves", &self.moves.len())
            .field("type1", &self.type1.len())
            .field("pool", &self.pool)
            .finish()
    }
}

impl GeneratorTable {
    /// Builds the table, enumerating Whitehead moves up to `move_bound`
    /// vertices.
    pub fn new(g: &Graph, pool: Type1Pool, move_bound: usize) -> Result<Self> {
        let n = g.order();
        let moves = enumerate_whitehead_moves(g, move_bound)?;
        let mut type1 = type1_pool(g, pool)?;
        let pool_len = type1.len();
        for v in 0..n {
            let inv = SignedPerm::inversion(n, v);
            if !type1.contains(&inv) {
                type1.push(inv);
            }
        }
        let mut autos = Vec::with_capacity(moves.len() + type1.len());
        let mut names = Vec::with_capacity(autos.capacity());
        for mv in &moves {
            autos.push(mv.to_auto_unchecked(g));
            names.push(mv.display(g));
        }
        for p in &type1 {
            autos.push(p.to_auto());
            names.push(p.display(g));
        }
        let move_index = moves.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        let offset = moves.len() as u32;
        let type1_index = type1
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), offset + i as u32))
            .collect();
        let name_index = names.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        Ok(GeneratorTable {
            n,
            pool,
            moves,
            type1,
            pool_len,
            autos,
            names,
            move_index,
            type1_index,
            name_index,
        })
    }

    pub fn len(&self) -> usize {
        self.autos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.autos.is_empty()
    }

    pub fn pool(&self) -> Type1Pool {
        self.pool
    }

    pub fn moves(&self) -> &[WhiteheadMove] {
        &self.moves
    }

    /// The pool elements (identity first), without the extra inversions.
    pub fn pool_elements(&self) -> &[SignedPerm] {
        &self.type1[..self.pool_len]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, gen: u32) -> &str {
        &self.names[gen as usize]
    }

    pub fn auto(&self, gen: u32) -> &Auto {
        &self.autos[gen as usize]
    }

    pub fn generator(&self, gen: u32) -> Generator<'_> {
        let i = gen as usize;
        if i < self.moves.len() {
            Generator::Move(self.moves[i])
        } else {
            Generator::Type1(&self.type1[i - self.moves.len()])
        }
    }

    pub fn move_id(&self, mv: WhiteheadMove) -> Option<u32> {
        self.move_index.get(&mv).copied()
    }

    pub fn type1_id(&self, p: &SignedPerm) -> Option<u32> {
        self.type1_index.get(p).copied()
    }

    /// Whether `p` belongs to the pool (not merely to the extra inversions).
    pub fn in_pool(&self, p: &SignedPerm) -> bool {
        self.type1_id(p)
            .is_some_and(|id| (id as usize - self.moves.len()) < self.pool_len)
    }

    pub fn id_by_name(&self, name: &str) -> Option<u32> {
        self.name_index.get(name).copied()
    }

    /// Images of the generators under a product read with `convention`.
    pub fn evaluate(&self, g: &Graph, factors: &[Factor], convention: Convention) -> Vec<Word> {
        let mut cur: Vec<Word> = (0..self.n).map(Word::generator).collect();
        let mut step = |f: &Factor| {
            let a = &self.autos[f.gen as usize];
            for w in cur.iter_mut() {
                *w = if f.inverse { a.apply_inverse(g, w) } else { a.apply(g, w) };
            }
        };
        match convention {
            // x ↦ f₁(f₂(⋯ f_k(x))): apply the rightmost factor first.
            Convention::Functional => factors.iter().rev().for_each(&mut step),
            Convention::Sequential => factors.iter().for_each(&mut step),
        }
        cur
    }

    /// Whether both sides of `inst` agree under `convention`.
    pub fn holds(&self, g: &Graph, inst: &RelationInstance, convention: Convention) -> bool {
        self.evaluate(g, &inst.lhs, convention) == self.evaluate(g, &inst.rhs, convention)
    }
}

/// Whether relations are enumerated exhaustively or sampled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Coverage {
    Exhaustive,
    /// `per_type` random candidate tuples per relation family.
    Sampled { seed: u64, per_type: usize },
}

/// Options for [`enumerate_day_instances`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DayOptions {
    pub types: Vec<RelationType>,
    pub pool: Type1Pool,
    /// Largest vertex count enumerated exhaustively.
    pub max_enum: usize,
    /// Seed and sample count used above `max_enum`.
    pub seed: u64,
    pub samples_per_type: usize,
}

impl Default for DayOptions {
    fn default() -> Self {
        DayOptions {
            types: RelationType::ALL.to_vec(),
            pool: Type1Pool::Sym0,
            max_enum: DEFAULT_RELATION_BOUND,
            seed: 7,
            samples_per_type: 20_000,
        }
    }
}

impl DayOptions {
    /// Only relations whose type (1) factors lie in `Sym⁰`.
    pub fn r0() -> Self {
        DayOptions::default()
    }

    pub fn with_pool(mut self, pool: Type1Pool) -> Self {
        self.pool = pool;
        self
    }

    pub fn with_types(mut self, types: &[RelationType]) -> Self {
        self.types = types.to_vec();
        self
    }

    fn coverage(&self, g: &Graph) -> Coverage {
        if g.order() <= self.max_enum {
            Coverage::Exhaustive
        } else {
            Coverage::Sampled {
                seed: self.seed,
                per_type: self.samples_per_type,
            }
        }
    }
}

/// Counts of verified instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DaySummary {
    pub coverage: Coverage,
    pub convention: Convention,
    pub counts: BTreeMap<RelationType, usize>,
}

impl DaySummary {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

/// Candidate tuples: all of them, or a seeded random sample.
struct Tuples {
    coverage: Coverage,
    rng: ChaCha8Rng,
}

impl Tuples {
    fn pairs(&mut self, a: usize, b: usize, mut f: impl FnMut(usize, usize) -> Result<()>) -> Result<()> {
        if a == 0 || b == 0 {
            return Ok(());
        }
        match self.coverage {
            Coverage::Exhaustive => {
                for i in 0..a {
                    for j in 0..b {
                        f(i, j)?;
                    }
                }
            }
            Coverage::Sampled { per_type, .. } => {
                for _ in 0..per_type {
                    let i = self.rng.gen_range(0..a);
                    let j = self.rng.gen_range(0..b);
                    f(i, j)?;
                }
            }
        }
        Ok(())
    }
}

/// Streams every verified instance of the requested relation families to
/// `visit`, returning per-family counts.
pub fn for_each_day_instance(
    g: &Graph,
    table: &GeneratorTable,
    opts: &DayOptions,
    mut visit: impl FnMut(&RelationInstance) -> Result<()>,
) -> Result<DaySummary> {
    let coverage = opts.coverage(g);
    let mut tuples = Tuples {
        coverage,
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
    };
    let mut counts = BTreeMap::new();
    let mut types = opts.types.clone();
    types.sort_unstable();
    types.dedup();
    for ty in types {
        let mut count = 0usize;
        let mut emit = |inst: RelationInstance| -> Result<()> {
            if !table.holds(g, &inst, Convention::Functional) {
                let note = if table.holds(g, &inst, Convention::Sequential) {
                    " (it holds only when products are read left to right)"
                } else {
                    ""
                };
                return Err(Error::Inconsistency(format!("{}{note}", inst.display(table))));
            }
            count += 1;
            visit(&inst)
        };
        enumerate_type(g, table, ty, &mut tuples, &mut emit)?;
        counts.insert(ty, count);
    }
    Ok(DaySummary {
        coverage,
        convention: Convention::Functional,
        counts,
    })
}

/// Builds the generator table for `opts` and collects all verified instances.
pub fn enumerate_day_instances(
    g: &Graph,
    opts: &DayOptions,
) -> Result<(GeneratorTable, Vec<RelationInstance>, DaySummary)> {
    let table = day_table(g, opts)?;
    let mut out = Vec::new();
    let summary = for_each_day_instance(g, &table, opts, |inst| {
        out.push(inst.clone());
        Ok(())
    })?;
    Ok((table, out, summary))
}

/// The generator table appropriate for `opts` on `g`.
pub fn day_table(g: &Graph, opts: &DayOptions) -> Result<GeneratorTable> {
    let bound = match opts.coverage(g) {
        Coverage::Exhaustive => opts.max_enum.max(DEFAULT_ENUMERATION_BOUND),
        Coverage::Sampled { .. } => SAMPLED_MOVE_BOUND,
    };
    GeneratorTable::new(g, opts.pool, bound)
}

fn inst(relation: RelationType, lhs: &[Factor], rhs: &[Factor], side_condition: &'static str) -> RelationInstance {
    RelationInstance {
        relation,
        lhs: lhs.iter().copied().collect(),
        rhs: rhs.iter().copied().collect(),
        side_condition,
    }
}

#[inline]
fn pm(x: Letter) -> LetterSet {
    LetterSet::EMPTY.with(x).with(x.inverse())
}

fn enumerate_type(
    g: &Graph,
    table: &GeneratorTable,
    ty: RelationType,
    tuples: &mut Tuples,
    emit: &mut dyn FnMut(RelationInstance) -> Result<()>,
) -> Result<()> {
    use RelationType::*;
    let moves = table.moves();
    let id = |mv: WhiteheadMove| table.move_id(mv);
    let adjacent = |x: Letter, y: Letter| g.adjacent(x.vertex(), y.vertex());
    let n = g.order();
    match ty {
        R1 => {
            for (i, &mv) in moves.iter().enumerate() {
                let j = id(mv.r1_inverse()).ok_or_else(|| missing(g, mv.r1_inverse()))?;
                emit(inst(R1, &[Factor::inv(i as u32)], &[Factor::new(j)], "inverse"))?;
            }
        }
        R2 => {
            tuples.pairs(moves.len(), moves.len(), |i, j| {
                let (a, b) = (moves[i], moves[j]);
                if a.m != b.m || a.a.intersection(b.a) != LetterSet::EMPTY.with(a.m) {
                    return Ok(());
                }
                let u = WhiteheadMove {
                    m: a.m,
                    a: a.a.union(b.a),
                };
                let k = id(u).ok_or_else(|| missing(g, u))?;
                emit(inst(R2, &[Factor::new(i as u32), Factor::new(j as u32)], &[Factor::new(k)], "A ∩ B = {v}"))
            })?;
        }
        R3 | R4 => {
            // (B, w) is moves[i], (A, v) is moves[j].
            tuples.pairs(moves.len(), moves.len(), |i, j| {
                let (bm, am) = (moves[i], moves[j]);
                let (b, w, a, v) = (bm.a, bm.m, am.a, am.m);
                if !b.intersection(pm(v)).is_empty() {
                    return Ok(());
                }
                let disjoint = a.intersection(b).is_empty();
                let side = if disjoint {
                    "A ∩ B = ∅"
                } else if adjacent(w, v) {
                    "w ∈ lk(v)"
                } else {
                    return Ok(());
                };
                let conj = [Factor::new(i as u32), Factor::new(j as u32), Factor::inv(i as u32)];
                if ty == R3 {
                    if a.intersection(pm(w)).is_empty() {
                        emit(inst(R3, &conj, &[Factor::new(j as u32)], side))?;
                    }
                } else if !a.contains(w) && a.contains(w.inverse()) {
                    let other = WhiteheadMove {
                        m: v,
                        a: b.without(w).with(v),
                    };
                    // The relation only concerns moves that are automorphisms.
                    if let Some(k) = id(other) {
                        emit(inst(R4, &conj, &[Factor::new(j as u32), Factor::new(k)], side))?;
                    }
                }
                Ok(())
            })?;
        }
        R5 => {
            let sigma_of = |v: Letter, w: Letter| table.type1_id(&sigma_perm(n, v, w));
            for (j, &am) in moves.iter().enumerate() {
                let (a, v) = (am.a, am.m);
                for w in a.iter() {
                    if w.vertex() == v.vertex() || a.contains(w.inverse()) {
                        continue;
                    }
                    let p = sigma_perm(n, v, w);
                    if !table.in_pool(&p) || !is_equivalent(g, v, w) {
                        continue;
                    }
                    let first = WhiteheadMove {
                        m: w,
                        a: a.without(v).with(v.inverse()),
                    };
                    let second = WhiteheadMove {
                        m: v,
                        a: a.without(w).with(w.inverse()),
                    };
                    let (Some(f), Some(s), Some(sig)) = (id(first), id(second), sigma_of(v, w)) else {
                        continue;
                    };
                    emit(inst(
                        R5,
                        &[Factor::new(f), Factor::new(j as u32)],
                        &[Factor::new(s), Factor::new(sig)],
                        "w ∈ A, w ≠ v, w ∼ v",
                    ))?;
                }
            }
        }
        R6 => {
            let pool = table.pool_elements();
            tuples.pairs(pool.len(), moves.len(), |p, j| {
                let sigma = &pool[p];
                if sigma.is_identity() {
                    return Ok(());
                }
                let s = table.type1_id(sigma).expect("pool element in table");
                let image = moves[j].permuted(sigma);
                let k = id(image).ok_or_else(|| missing(g, image))?;
                emit(inst(
                    R6,
                    &[Factor::new(s), Factor::new(j as u32), Factor::inv(s)],
                    &[Factor::new(k)],
                    "σ in pool",
                ))
            })?;
        }
        R7 => {
            let pool = table.pool_elements();
            let full = pool.len().saturating_mul(pool.len()) <= FULL_TABLE_LIMIT;
            let gens: Vec<SignedPerm> = if full {
                pool.to_vec()
            } else {
                type1_pool_generators(g, table.pool())?
            };
            let side = if full { "multiplication table" } else { "Cayley table" };
            tuples.pairs(gens.len(), pool.len(), |i, j| {
                let (x, y) = (&gens[i], &pool[j]);
                // Functional reading: x y means "y, then x".
                let prod = y.then(x);
                let (Some(a), Some(b)) = (table.type1_id(x), table.type1_id(y)) else {
                    return Err(Error::Inconsistency("pool generator missing from table".into()));
                };
                let c = table
                    .type1_id(&prod)
                    .filter(|_| table.in_pool(&prod))
                    .ok_or_else(|| Error::Inconsistency("type (1) pool is not closed".into()))?;
                emit(inst(R7, &[Factor::new(a), Factor::new(b)], &[Factor::new(c)], side))
            })?;
        }
        R9 | R10 => {
            let inner: Vec<Option<u32>> = (0..2 * n as u32).map(|c| id(WhiteheadMove::inner(n, Letter(c)))).collect();
            tuples.pairs(moves.len(), 2 * n, |j, c| {
                let (a, v) = (moves[j].a, moves[j].m);
                let w = Letter(c as u32);
                let Some(iw) = inner[c] else {
                    return Err(missing(g, WhiteheadMove::inner(n, w)));
                };
                let conj = [Factor::new(j as u32), Factor::new(iw), Factor::inv(j as u32)];
                if ty == R9 {
                    if a.intersection(pm(w)).is_empty() {
                        emit(inst(R9, &conj, &[Factor::new(iw)], "{w,w⁻¹} ∩ A = ∅"))?;
                    }
                } else if a.contains(w) && !a.contains(w.inverse()) && w != v {
                    let iv = inner[v.0 as usize].ok_or_else(|| missing(g, WhiteheadMove::inner(n, v)))?;
                    emit(inst(R10, &conj, &[Factor::new(iv), Factor::new(iw)], "w ∈ A, w⁻¹ ∉ A, w ≠ v"))?;
                }
                Ok(())
            })?;
        }
    }
    Ok(())
}

fn is_equivalent(g: &Graph, v: Letter, w: Letter) -> bool {
    let (a, b) = (v.vertex(), w.vertex());
    let la = g.link_set(a);
    let lb = g.link_set(b);
    la.is_subset(&g.star_set(b)) && lb.is_subset(&g.star_set(a))
}

fn missing(g: &Graph, mv: WhiteheadMove) -> Error {
    Error::Inconsistency(format!("{} is not a valid Whitehead automorphism", mv.display(g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(g: &Graph, ty: RelationType, pool: Type1Pool) -> usize {
        let opts = DayOptions::r0().with_types(&[ty]).with_pool(pool);
        let (_, list, summary) = enumerate_day_instances(g, &opts).unwrap();
        assert_eq!(summary.counts[&ty], list.len());
        list.len()
    }

    #[test]
    fn r1_contains_transvection_inverse() {
        let g = Graph::from_names(&["v", "w"], &[]).unwrap();
        let opts = DayOptions::r0().with_types(&[RelationType::R1]);
        let (table, list, _) = enumerate_day_instances(&g, &opts).unwrap();
        let shown: Vec<String> = list.iter().map(|i| i.display(&table)).collect();
        assert!(shown.contains(&"R1: ({v,w},w)^-1 = ({v,w^-1},w^-1)".to_string()), "{shown:?}");
    }

    #[test]
    fn r3_on_k3_is_nonempty() {
        let k3 = Graph::complete(3);
        let opts = DayOptions::r0().with_types(&[RelationType::R3]);
        let (_, list, _) = enumerate_day_instances(&k3, &opts).unwrap();
        assert!(list.iter().any(|i| i.side_condition == "w ∈ lk(v)"));
    }

    #[test]
    fn r5_needs_equivalent_letters() {
        let g = Graph::from_names(
            &["w", "a1", "a2", "a3", "b1", "b2", "b3"],
            &[("a1", "a2"), ("a1", "a3"), ("a2", "a3"), ("b1", "b2"), ("b1", "b3"), ("b2", "b3")],
        )
        .unwrap();
        assert_eq!(count(&g, RelationType::R5, Type1Pool::Sym0), 0);
        let opts = DayOptions::r0()
            .with_types(&[RelationType::R5])
            .with_pool(Type1Pool::Sym0WithInversions);
        let small = Graph::from_names(&["w", "a1", "a2", "a3"], &[("a1", "a2"), ("a1", "a3"), ("a2", "a3")]).unwrap();
        let (table, list, _) = enumerate_day_instances(&small, &opts).unwrap();
        assert!(!list.is_empty());
        for i in &list {
            let Generator::Move(mv) = table.generator(i.lhs[1].gen) else {
                panic!()
            };
            assert_ne!(mv.m.vertex(), 0, "w has no equivalent partner");
        }
    }

    #[test]
    fn all_families_hold_on_small_graphs() {
        let graphs = [
            Graph::discrete(2),
            Graph::discrete(3),
            Graph::complete(3),
            Graph::path(3),
            Graph::path(4),
            Graph::numbered(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(),
        ];
        for g in &graphs {
            for pool in [Type1Pool::Sym0, Type1Pool::Sym0WithInversions, Type1Pool::Full] {
                let opts = DayOptions::r0().with_pool(pool);
                let (_, _, summary) = enumerate_day_instances(g, &opts).unwrap();
                assert!(summary.counts[&RelationType::R1] > 0);
            }
        }
    }

    #[test]
    fn sampled_mode_is_marked() {
        let g = Graph::discrete(3);
        let mut opts = DayOptions::r0().with_types(&[RelationType::R3]);
        opts.max_enum = 2;
        opts.samples_per_type = 500;
        let (_, _, summary) = enumerate_day_instances(&g, &opts).unwrap();
        assert!(matches!(summary.coverage, Coverage::Sampled { .. }));
    }
}
