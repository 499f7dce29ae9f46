//! Automorphisms of `A_Γ` as generator-to-word maps.
//!
//! An [`Auto`] stores the image of every vertex generator together with the
//! images under its inverse, so inverting is free and composition only
//! substitutes words. Images are kept in normal form, which makes equality of
//! automorphisms plain equality of image lists.
//!
//! # Composition
//!
//! [`compose`]`(a, b)` is *a then b*: `x ↦ b(a(x))`. Consequently
//! `abelianize(compose(a, b)) = abelianize(b) · abelianize(a)`.
//!
//! Products written in formulas such as `c⁻¹ t⁻¹ c t` are evaluated with an
//! explicit [`Convention`]: [`Convention::Functional`] reads `αβ` as the
//! function composition `α ∘ β` (apply `β` first), [`Convention::Sequential`]
//! reads it left to right.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::domination::{compute_domination, DominanceData};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::matrix::IntMatrix;
use crate::word::{normal_form_unchecked, Letter, Word};

/// Largest vertex count for which Whitehead letter sets fit in a `u128`.
pub const MAX_WHITEHEAD_VERTICES: usize = 64;

/// Default bound on the vertex count for exponential enumerations.
pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

/// Advisory description of how an automorphism was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutoKind {
    Identity,
    Inversion(Vertex),
    /// `v ↦ v·w` (or `v ↦ v·w⁻¹`).
    Transvection { v: Vertex, w: Letter },
    PartialConjugation { v: Vertex, component: Vec<Vertex> },
    Tau { u: Vertex, v: Vertex, w: Vertex },
    /// `v ↦ w⁻¹`, `w ↦ v`.
    Sigma { v: Letter, w: Letter },
    Whitehead1(SignedPerm),
    Whitehead2(WhiteheadMove),
    Graphic(Vec<Vertex>),
    Composite,
}

/// An automorphism of `A_Γ`.
///
/// Equality compares images only; the [`AutoKind`] is metadata.
#[derive(Clone)]
pub struct Auto {
    images: Vec<Word>,
    inverse_images: Vec<Word>,
    kind: AutoKind,
}

impl PartialEq for Auto {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for Auto {}

impl fmt::Debug for Auto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Auto")
            .field("kind", &self.kind)
            .field("images", &self.images)
            .finish()
    }
}

impl Auto {
    pub fn identity(n: usize) -> Self {
        let images: Vec<Word> = (0..n).map(Word::generator).collect();
        Auto {
            inverse_images: images.clone(),
            images,
            kind: AutoKind::Identity,
        }
    }

    /// Builds an automorphism from the images of the generators and of its
    /// inverse, checking that both are endomorphisms and mutually inverse.
    pub fn from_images(
        g: &Graph,
        images: Vec<Word>,
        inverse_images: Vec<Word>,
        kind: AutoKind,
    ) -> Result<Self> {
        let n = g.order();
        for imgs in [&images, &inverse_images] {
            if imgs.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: imgs.len(),
                });
            }
            for w in imgs.iter() {
                w.check(g)?;
            }
        }
        let auto = Auto {
            images: images.iter().map(|w| nf(g, w.letters())).collect(),
            inverse_images: inverse_images.iter().map(|w| nf(g, w.letters())).collect(),
            kind,
        };
        if let Some(msg) = relator_violation(g, &auto.images) {
            return Err(Error::NotAutomorphism(msg));
        }
        if let Some(msg) = relator_violation(g, &auto.inverse_images) {
            return Err(Error::NotAutomorphism(format!("inverse candidate: {msg}")));
        }
        let there_and_back = compose(g, &auto, &auto.inverse());
        let back_and_there = compose(g, &auto.inverse(), &auto);
        if !there_and_back.is_identity() || !back_and_there.is_identity() {
            return Err(Error::NotAutomorphism("inverse candidate does not invert".into()));
        }
        Ok(auto)
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, v: Vertex) -> &Word {
        &self.images[v]
    }

    pub fn inverse_images(&self) -> &[Word] {
        &self.inverse_images
    }

    pub fn kind(&self) -> &AutoKind {
        &self.kind
    }

    pub fn with_kind(mut self, kind: AutoKind) -> Self {
        self.kind = kind;
        self
    }

    /// The inverse automorphism; free, as both directions are stored.
    pub fn inverse(&self) -> Auto {
        Auto {
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
            kind: AutoKind::Composite,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(v, w)| w.letters() == [Letter::pos(v)])
    }

    /// Image of an arbitrary word, in normal form.
    pub fn apply(&self, g: &Graph, w: &Word) -> Word {
        apply_letters(g, &self.images, w.letters())
    }

    /// Image of a word under the inverse automorphism.
    pub fn apply_inverse(&self, g: &Graph, w: &Word) -> Word {
        apply_letters(g, &self.inverse_images, w.letters())
    }

    /// Renders the images as `v ↦ word` lines, omitting fixed generators.
    pub fn display(&self, g: &Graph) -> String {
        let moved: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .filter(|(v, w)| w.letters() != [Letter::pos(*v)])
            .map(|(v, w)| format!("{} -> {}", g.name(v), w.display(g)))
            .collect();
        if moved.is_empty() {
            "id".into()
        } else {
            moved.join("; ")
        }
    }
}

#[inline]
fn nf(g: &Graph, letters: &[Letter]) -> Word {
    normal_form_unchecked(g, letters.iter().copied())
}

fn apply_letters(g: &Graph, images: &[Word], letters: &[Letter]) -> Word {
    let mut buf = Vec::with_capacity(letters.len() * 3);
    for &x in letters {
        let img = &images[x.vertex()];
        if x.is_inverse() {
            buf.extend(img.letters().iter().rev().map(|y| y.inverse()));
        } else {
            buf.extend_from_slice(img.letters());
        }
    }
    normal_form_unchecked(g, buf)
}

/// The first defining relator `[x, y]` not killed by the given images.
pub(crate) fn relator_violation(g: &Graph, images: &[Word]) -> Option<String> {
    for (x, y) in g.edges() {
        let (a, b) = (&images[x], &images[y]);
        let letters = a
            .inverse()
            .0
            .into_iter()
            .chain(b.inverse().0)
            .chain(a.letters().iter().copied())
            .chain(b.letters().iter().copied());
        if !normal_form_unchecked(g, letters).is_empty() {
            return Some(format!(
                "relator [{},{}] maps to [{}, {}] which is nontrivial",
                g.name(x),
                g.name(y),
                a.display(g),
                b.display(g)
            ));
        }
    }
    None
}

/// `a` then `b`: the automorphism `x ↦ b(a(x))`.
pub fn compose(g: &Graph, a: &Auto, b: &Auto) -> Auto {
    let images = a
        .images
        .iter()
        .map(|w| apply_letters(g, &b.images, w.letters()))
        .collect();
    let inverse_images = b
        .inverse_images
        .iter()
        .map(|w| apply_letters(g, &a.inverse_images, w.letters()))
        .collect();
    Auto {
        images,
        inverse_images,
        kind: AutoKind::Composite,
    }
}

/// The composite `a then b`, the inverse of `a`, and whether `a` is the identity.
pub fn auto_ops(g: &Graph, a: &Auto, b: &Auto) -> (Auto, Auto, bool) {
    (compose(g, a, b), a.inverse(), a.is_identity())
}

/// How a written product `f₁ f₂ ⋯ f_k` of automorphisms is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// `f₁ ∘ f₂ ∘ ⋯ ∘ f_k`: the rightmost factor acts first.
    Functional,
    /// The leftmost factor acts first.
    Sequential,
}

impl Convention {
    pub const BOTH: [Convention; 2] = [Convention::Functional, Convention::Sequential];
}

/// One factor of a written product: an automorphism or its inverse.
#[derive(Clone, Copy, Debug)]
pub struct Factor<'a> {
    pub auto: &'a Auto,
    pub inverse: bool,
}

impl<'a> Factor<'a> {
    pub fn new(auto: &'a Auto) -> Self {
        Factor { auto, inverse: false }
    }

    pub fn inv(auto: &'a Auto) -> Self {
        Factor { auto, inverse: true }
    }
}

/// Evaluates a written product under the given convention.
pub fn evaluate(g: &Graph, factors: &[Factor<'_>], convention: Convention) -> Auto {
    let n = g.order();
    let mut acc = Auto::identity(n);
    let step = |acc: &Auto, f: &Factor<'_>| {
        if f.inverse {
            compose(g, acc, &f.auto.inverse())
        } else {
            compose(g, acc, f.auto)
        }
    };
    match convention {
        Convention::Functional => {
            for f in factors.iter().rev() {
                acc = step(&acc, f);
            }
        }
        Convention::Sequential => {
            for f in factors {
                acc = step(&acc, f);
            }
        }
    }
    acc.kind = AutoKind::Composite;
    acc
}

/// Repeats each factor list `k` times (inverting if `k < 0`).
pub fn power_factors<'a>(auto: &'a Auto, k: i64) -> Vec<Factor<'a>> {
    let f = Factor {
        auto,
        inverse: k < 0,
    };
    vec![f; k.unsigned_abs() as usize]
}

/// Integer matrix of the induced action on `H₁(A_Γ) = Zⁿ`, acting on column
/// vectors: column `v` is the exponent vector of the image of `v`.
pub fn abelianize(g: &Graph, a: &Auto) -> IntMatrix {
    let n = g.order();
    let mut m = IntMatrix::zero(n);
    for (v, img) in a.images.iter().enumerate() {
        for (u, e) in img.exponent_sums(n).into_iter().enumerate() {
            m.set(u, v, e);
        }
    }
    m
}

// ---------------------------------------------------------------------------
// Laurence–Servatius generators
// ---------------------------------------------------------------------------

/// Text-level description of a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// `inv v`
    Inversion(String),
    /// `trans v w` or `trans v w^-1`
    Transvection { v: String, w: String, inverse: bool },
    /// `pconj v {a,b}`
    PartialConjugation { v: String, component: Vec<String> },
    /// `tau u v w`
    Tau { u: String, v: String, w: String },
    /// `sigma v w`
    Sigma { v: String, w: String },
    /// `wh {v,w^-1} w`
    Whitehead { set: Vec<String>, multiplier: String },
}

fn parse_braced(s: &str) -> Result<(Vec<String>, &str)> {
    let s = s.trim_start();
    let rest = s
        .strip_prefix('{')
        .ok_or_else(|| Error::Parse(format!("expected `{{` in `{s}`")))?;
    let end = rest
        .find('}')
        .ok_or_else(|| Error::Parse(format!("missing `}}` in `{s}`")))?;
    let items = rest[..end]
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(String::from)
        .collect();
    Ok((items, &rest[end + 1..]))
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
        let args: Vec<&str> = rest.split_whitespace().collect();
        let want = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(Error::Parse(format!("`{head}` takes {k} arguments: `{s}`")))
            }
        };
        match head {
            "inv" => {
                want(1)?;
                Ok(GeneratorSpec::Inversion(args[0].into()))
            }
            "trans" => {
                want(2)?;
                let (w, inverse) = match args[1].strip_suffix("^-1") {
                    Some(w) => (w, true),
                    None => (args[1], false),
                };
                Ok(GeneratorSpec::Transvection {
                    v: args[0].into(),
                    w: w.into(),
                    inverse,
                })
            }
            "tau" => {
                want(3)?;
                Ok(GeneratorSpec::Tau {
                    u: args[0].into(),
                    v: args[1].into(),
                    w: args[2].into(),
                })
            }
            "sigma" => {
                want(2)?;
                Ok(GeneratorSpec::Sigma {
                    v: args[0].into(),
                    w: args[1].into(),
                })
            }
            "pconj" => {
                let rest = rest.trim_start();
                let (v, braced) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| Error::Parse(format!("`pconj v {{...}}` expected: `{s}`")))?;
                let (component, tail) = parse_braced(braced)?;
                if !tail.trim().is_empty() {
                    return Err(Error::Parse(format!("trailing input in `{s}`")));
                }
                Ok(GeneratorSpec::PartialConjugation {
                    v: v.into(),
                    component,
                })
            }
            "wh" => {
                let (set, tail) = parse_braced(rest)?;
                let multiplier = tail.trim();
                if multiplier.is_empty() || multiplier.contains(char::is_whitespace) {
                    return Err(Error::Parse(format!("`wh {{...}} m` expected: `{s}`")));
                }
                Ok(GeneratorSpec::Whitehead {
                    set,
                    multiplier: multiplier.into(),
                })
            }
            _ => Err(Error::Parse(format!("unknown generator `{head}`"))),
        }
    }
}

fn require_domination(g: &Graph, d: &DominanceData, v: Vertex, w: Vertex) -> Result<()> {
    if d.leq(v, w) {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!(
            "lk({}) ⊄ st({}), so {} ≰ {}",
            g.name(v),
            g.name(w),
            g.name(v),
            g.name(w)
        )))
    }
}

/// The inversion `ι_v`.
pub fn inversion(g: &Graph, v: Vertex) -> Result<Auto> {
    g.check_vertex(v)?;
    let mut images: Vec<Word> = (0..g.order()).map(Word::generator).collect();
    images[v] = Word::letter(Letter::neg(v));
    Ok(Auto {
        inverse_images: images.clone(),
        images,
        kind: AutoKind::Inversion(v),
    })
}

/// The transvection `v ↦ v·w` (`w` may be an inverse letter); needs `v ≤ w`.
pub fn transvection(g: &Graph, v: Vertex, w: Letter) -> Result<Auto> {
    g.check_vertex(v)?;
    g.check_vertex(w.vertex())?;
    if v == w.vertex() {
        return Err(Error::Hypothesis(format!(
            "transvection needs two distinct vertices, got {} twice",
            g.name(v)
        )));
    }
    require_domination(g, &compute_domination(g), v, w.vertex())?;
    Ok(transvection_unchecked(g, v, w))
}

pub(crate) fn transvection_unchecked(g: &Graph, v: Vertex, w: Letter) -> Auto {
    let mut images: Vec<Word> = (0..g.order()).map(Word::generator).collect();
    let mut inverse_images = images.clone();
    images[v] = Word(vec![Letter::pos(v), w]);
    inverse_images[v] = Word(vec![Letter::pos(v), w.inverse()]);
    Auto {
        images,
        inverse_images,
        kind: AutoKind::Transvection { v, w },
    }
}

/// The partial conjugation `c_{v,Y}`: `y ↦ v⁻¹ y v` for `y ∈ Y`.
pub fn partial_conjugation(g: &Graph, v: Vertex, component: &[Vertex]) -> Result<Auto> {
    let comps = g.components_minus_star(v)?;
    let mut y = component.to_vec();
    y.sort_unstable();
    y.dedup();
    if !comps.contains(&y) {
        return Err(Error::Hypothesis(format!(
            "{} is not a connected component of Γ − st({})",
            g.format_set(&y),
            g.name(v)
        )));
    }
    Ok(partial_conjugation_unchecked(g, v, &y))
}

pub(crate) fn partial_conjugation_unchecked(g: &Graph, v: Vertex, y: &[Vertex]) -> Auto {
    let mut images: Vec<Word> = (0..g.order()).map(Word::generator).collect();
    let mut inverse_images = images.clone();
    for &x in y {
        images[x] = Word(vec![Letter::neg(v), Letter::pos(x), Letter::pos(v)]);
        inverse_images[x] = Word(vec![Letter::pos(v), Letter::pos(x), Letter::neg(v)]);
    }
    Auto {
        images,
        inverse_images,
        kind: AutoKind::PartialConjugation {
            v,
            component: y.to_vec(),
        },
    }
}

/// The τ-map `v ↦ v·[u, w]`; needs `lk(v) ⊆ st(u) ∩ st(w)` and `u, w ≠ v`.
pub fn tau(g: &Graph, u: Vertex, v: Vertex, w: Vertex) -> Result<Auto> {
    for x in [u, v, w] {
        g.check_vertex(x)?;
    }
    if u == v || w == v {
        return Err(Error::Hypothesis(format!(
            "τ-map needs u, w different from v = {}",
            g.name(v)
        )));
    }
    let d = compute_domination(g);
    require_domination(g, &d, v, u)?;
    require_domination(g, &d, v, w)?;
    let c = Word(vec![Letter::neg(u), Letter::neg(w), Letter::pos(u), Letter::pos(w)]);
    let mut images: Vec<Word> = (0..g.order()).map(Word::generator).collect();
    let mut inverse_images = images.clone();
    images[v] = nf(g, &[&[Letter::pos(v)], c.letters()].concat());
    inverse_images[v] = nf(g, &[&[Letter::pos(v)], c.inverse().letters()].concat());
    Auto::from_images(g, images, inverse_images, AutoKind::Tau { u, v, w })
}

/// The type (1) automorphism `σ_{v,w}`: `v ↦ w⁻¹`, `w ↦ v`; needs `v ∼ w`.
pub fn sigma(g: &Graph, v: Letter, w: Letter) -> Result<Auto> {
    g.check_vertex(v.vertex())?;
    g.check_vertex(w.vertex())?;
    if v.vertex() == w.vertex() {
        return Err(Error::Hypothesis("σ needs two distinct vertices".into()));
    }
    let d = compute_domination(g);
    if !d.equivalent(v.vertex(), w.vertex()) {
        return Err(Error::Hypothesis(format!(
            "{} ≁ {}",
            g.name(v.vertex()),
            g.name(w.vertex())
        )));
    }
    Ok(sigma_perm(g.order(), v, w).to_auto())
}

/// `σ_{v,w}` as a signed permutation: `v ↦ w⁻¹`, `w ↦ v` on letters.
pub(crate) fn sigma_perm(n: usize, v: Letter, w: Letter) -> SignedPerm {
    let mut p = SignedPerm::identity(n);
    // Letter images: v ↦ w⁻¹ and w ↦ v; generator images follow.
    p.set_letter(v, w.inverse());
    p.set_letter(w, v);
    p
}

/// Builds the generator described by `spec`.
pub fn make_generator(g: &Graph, spec: &GeneratorSpec) -> Result<Auto> {
    match spec {
        GeneratorSpec::Inversion(v) => inversion(g, g.vertex(v)?),
        GeneratorSpec::Transvection { v, w, inverse } => {
            transvection(g, g.vertex(v)?, Letter::new(g.vertex(w)?, *inverse))
        }
        GeneratorSpec::PartialConjugation { v, component } => {
            let y = component
                .iter()
                .map(|x| g.vertex(x))
                .collect::<Result<Vec<_>>>()?;
            partial_conjugation(g, g.vertex(v)?, &y)
        }
        GeneratorSpec::Tau { u, v, w } => tau(g, g.vertex(u)?, g.vertex(v)?, g.vertex(w)?),
        GeneratorSpec::Sigma { v, w } => sigma(g, Letter::parse(g, v)?, Letter::parse(g, w)?),
        GeneratorSpec::Whitehead { set, multiplier } => {
            let letters = set
                .iter()
                .map(|x| Letter::parse(g, x))
                .collect::<Result<Vec<_>>>()?;
            make_whitehead(g, &letters, Letter::parse(g, multiplier)?)
        }
    }
}

// ---------------------------------------------------------------------------
// Type (2) Whitehead automorphisms
// ---------------------------------------------------------------------------

/// A set of letters, one bit per letter code.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LetterSet(pub u128);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        letters.into_iter().fold(LetterSet(0), |s, x| s.with(x))
    }

    /// `L = V ∪ V⁻¹` for `n` vertices.
    pub fn all(n: usize) -> Self {
        if n >= 64 {
            LetterSet(u128::MAX)
        } else {
            LetterSet((1u128 << (2 * n)) - 1)
        }
    }

    /// `Y ∪ Y⁻¹`.
    pub fn both_signs(vertices: &[Vertex]) -> Self {
        LetterSet::from_letters(vertices.iter().flat_map(|&v| [Letter::pos(v), Letter::neg(v)]))
    }

    #[inline]
    pub fn contains(self, x: Letter) -> bool {
        self.0 >> x.0 & 1 == 1
    }

    #[inline]
    pub fn with(self, x: Letter) -> Self {
        LetterSet(self.0 | 1 << x.0)
    }

    #[inline]
    pub fn without(self, x: Letter) -> Self {
        LetterSet(self.0 & !(1 << x.0))
    }

    pub fn union(self, o: Self) -> Self {
        LetterSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        LetterSet(self.0 & o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Letter> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                Some(Letter(i))
            }
        })
    }

    pub fn display(self, g: &Graph) -> String {
        let parts: Vec<String> = self.iter().map(|x| x.display(g)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|x| x.0)).finish()
    }
}

/// The Whitehead pair `(A, m)`: `m ∈ A`, `m⁻¹ ∉ A`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WhiteheadMove {
    pub m: Letter,
    pub a: LetterSet,
}

impl WhiteheadMove {
    pub fn new(a: LetterSet, m: Letter) -> Result<Self> {
        if !a.contains(m) || a.contains(m.inverse()) {
            return Err(Error::NotAutomorphism(
                "the multiplier must lie in A and its inverse must not".into(),
            ));
        }
        Ok(WhiteheadMove { m, a })
    }

    /// `({m}, m)`, the identity.
    pub fn is_trivial(self) -> bool {
        self.a == LetterSet::EMPTY.with(self.m)
    }

    /// The inner automorphism `(L − m⁻¹, m)`.
    pub fn inner(n: usize, m: Letter) -> Self {
        WhiteheadMove {
            m,
            a: LetterSet::all(n).without(m.inverse()),
        }
    }

    /// `(A − m ∪ m⁻¹, m⁻¹)`.
    pub fn r1_inverse(self) -> Self {
        WhiteheadMove {
            m: self.m.inverse(),
            a: self.a.without(self.m).with(self.m.inverse()),
        }
    }

    /// Image of the generator `x` according to the four-case table.
    pub fn image(self, x: Vertex) -> Word {
        let (m, a) = (self.m, self.a);
        let gx = Letter::pos(x);
        if x == m.vertex() {
            return Word::letter(gx);
        }
        match (a.contains(gx), a.contains(gx.inverse())) {
            (false, false) => Word(vec![gx]),
            (true, false) => Word(vec![gx, m]),
            (false, true) => Word(vec![m.inverse(), gx]),
            (true, true) => Word(vec![m.inverse(), gx, m]),
        }
    }

    /// Images of all generators, without any validity check.
    pub fn raw_images(self, n: usize) -> Vec<Word> {
        (0..n).map(|x| self.image(x)).collect()
    }

    /// Action on letters of the type (1) automorphism `σ`: `(σ(A), σ(m))`.
    pub fn permuted(self, sigma: &SignedPerm) -> Self {
        WhiteheadMove {
            m: sigma.letter(self.m),
            a: LetterSet::from_letters(self.a.iter().map(|x| sigma.letter(x))),
        }
    }

    pub fn display(self, g: &Graph) -> String {
        format!("({},{})", self.a.display(g), self.m.display(g))
    }

    /// The automorphism, without validity checks.
    pub(crate) fn to_auto_unchecked(self, g: &Graph) -> Auto {
        let n = g.order();
        let images = self.raw_images(n).iter().map(|w| nf(g, w.letters())).collect();
        let inverse_images = self
            .r1_inverse()
            .raw_images(n)
            .iter()
            .map(|w| nf(g, w.letters()))
            .collect();
        Auto {
            images,
            inverse_images,
            kind: AutoKind::Whitehead2(self),
        }
    }
}

/// Why `(A, m)` fails to be an automorphism, if it does.
pub fn whitehead_violation(g: &Graph, mv: WhiteheadMove) -> Option<String> {
    let n = g.order();
    let images = mv.raw_images(n);
    if let Some(msg) = relator_violation(g, &images) {
        return Some(msg);
    }
    let inv = mv.r1_inverse().raw_images(n);
    if let Some(msg) = relator_violation(g, &inv) {
        return Some(format!("inverse {}: {msg}", mv.r1_inverse().display(g)));
    }
    let auto = mv.to_auto_unchecked(g);
    if !compose(g, &auto, &auto.inverse()).is_identity() || !compose(g, &auto.inverse(), &auto).is_identity() {
        return Some(format!(
            "{} is not inverted by {}",
            mv.display(g),
            mv.r1_inverse().display(g)
        ));
    }
    None
}

fn check_whitehead_size(g: &Graph) -> Result<()> {
    if g.order() > MAX_WHITEHEAD_VERTICES {
        return Err(Error::BoundExceeded {
            what: "vertex count for Whitehead moves",
            size: g.order(),
            limit: MAX_WHITEHEAD_VERTICES,
        });
    }
    Ok(())
}

/// The type (2) Whitehead automorphism `(A, m)`, if it is one.
pub fn make_whitehead(g: &Graph, a: &[Letter], m: Letter) -> Result<Auto> {
    check_whitehead_size(g)?;
    for x in a.iter().chain([&m]) {
        g.check_vertex(x.vertex())?;
    }
    let mv = WhiteheadMove::new(LetterSet::from_letters(a.iter().copied()), m)?;
    match whitehead_violation(g, mv) {
        None => Ok(mv.to_auto_unchecked(g)),
        Some(msg) => Err(Error::NotAutomorphism(msg)),
    }
}

/// All valid Whitehead pairs `(A, m)`, trivial ones included, sorted by
/// multiplier and then by `A`.
pub fn enumerate_whitehead_moves(g: &Graph, bound: usize) -> Result<Vec<WhiteheadMove>> {
    check_whitehead_size(g)?;
    if g.order() > bound {
        return Err(Error::BoundExceeded {
            what: "vertex count for Whitehead enumeration",
            size: g.order(),
            limit: bound,
        });
    }
    let d = compute_domination(g);
    let mut out = Vec::new();
    for code in 0..2 * g.order() as u32 {
        let m = Letter(code);
        let a = m.vertex();
        // Each block contributes exactly one of its alternatives to A.
        let mut blocks: Vec<Vec<LetterSet>> = Vec::new();
        let single_options = |u: Vertex, both: bool| {
            let mut opts = vec![LetterSet::EMPTY];
            if both {
                opts.push(LetterSet::both_signs(&[u]));
            }
            if d.leq(u, a) {
                opts.push(LetterSet::EMPTY.with(Letter::pos(u)));
                opts.push(LetterSet::EMPTY.with(Letter::neg(u)));
            }
            opts
        };
        for u in g.link_set(a).ones() {
            blocks.push(single_options(u, true));
        }
        for comp in g.components_minus_star(a)? {
            if comp.len() == 1 {
                blocks.push(single_options(comp[0], true));
            } else {
                blocks.push(vec![LetterSet::EMPTY, LetterSet::both_signs(&comp)]);
            }
        }
        let mut candidates = vec![LetterSet::EMPTY.with(m)];
        for block in &blocks {
            let mut next = Vec::with_capacity(candidates.len() * block.len());
            for &c in &candidates {
                for &opt in block {
                    next.push(c.union(opt));
                }
            }
            candidates = next;
        }
        candidates.sort_unstable();
        for a_set in candidates {
            let mv = WhiteheadMove { m, a: a_set };
            if whitehead_violation(g, mv).is_none() {
                out.push(mv);
            }
        }
    }
    Ok(out)
}

/// All type (2) Whitehead automorphisms of `A_Γ` (vertex bound 8).
pub fn enumerate_whitehead(g: &Graph) -> Result<Vec<Auto>> {
    Ok(enumerate_whitehead_moves(g, DEFAULT_ENUMERATION_BOUND)?
        .into_iter()
        .map(|mv| mv.to_auto_unchecked(g))
        .collect())
}

/// Every valid `(A, m)` found by scanning all subsets of `L`; exponential,
/// intended as a cross-check on tiny graphs.
pub fn exhaustive_whitehead_moves(g: &Graph) -> Result<Vec<WhiteheadMove>> {
    let n = g.order();
    if n > 5 {
        return Err(Error::BoundExceeded {
            what: "vertex count for exhaustive Whitehead scan",
            size: n,
            limit: 5,
        });
    }
    let mut out = Vec::new();
    for code in 0..2 * n as u32 {
        let m = Letter(code);
        for bits in 0..1u128 << (2 * n) {
            let a = LetterSet(bits);
            if !a.contains(m) || a.contains(m.inverse()) {
                continue;
            }
            let mv = WhiteheadMove { m, a };
            if whitehead_violation(g, mv).is_none() {
                out.push(mv);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Type (1) Whitehead automorphisms
// ---------------------------------------------------------------------------

/// A signed permutation of the generators: generator `v` maps to the letter
/// `images[v]`. These are exactly the type (1) Whitehead automorphisms that
/// respect the graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignedPerm(pub Vec<Letter>);

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm((0..n).map(Letter::pos).collect())
    }

    pub fn graphic(perm: &[Vertex]) -> Self {
        SignedPerm(perm.iter().map(|&v| Letter::pos(v)).collect())
    }

    pub fn inversion(n: usize, v: Vertex) -> Self {
        let mut p = SignedPerm::identity(n);
        p.0[v] = Letter::neg(v);
        p
    }

    /// Image of a letter.
    #[inline]
    pub fn letter(&self, x: Letter) -> Letter {
        let y = self.0[x.vertex()];
        if x.is_inverse() {
            y.inverse()
        } else {
            y
        }
    }

    /// Sets the image of letter `x` to `y` (and `x⁻¹` to `y⁻¹`).
    pub fn set_letter(&mut self, x: Letter, y: Letter) {
        self.0[x.vertex()] = if x.is_inverse() { y.inverse() } else { y };
    }

    /// `self` then `other`.
    pub fn then(&self, other: &SignedPerm) -> SignedPerm {
        SignedPerm(self.0.iter().map(|&x| other.letter(x)).collect())
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut inv = self.0.clone();
        for (v, &y) in self.0.iter().enumerate() {
            inv[y.vertex()] = Letter::new(v, y.is_inverse());
        }
        SignedPerm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(v, &x)| x == Letter::pos(v))
    }

    pub fn is_unsigned(&self) -> bool {
        self.0.iter().all(|x| !x.is_inverse())
    }

    pub fn to_auto(&self) -> Auto {
        Auto {
            images: self.0.iter().map(|&x| Word::letter(x)).collect(),
            inverse_images: self.inverse().0.iter().map(|&x| Word::letter(x)).collect(),
            kind: AutoKind::Whitehead1(self.clone()),
        }
    }

    /// `id`, `inv(v)` for a single inversion, otherwise the moved letters.
    pub fn display(&self, g: &Graph) -> String {
        if self.is_identity() {
            return "id".into();
        }
        let moved: Vec<Vertex> = (0..self.0.len()).filter(|&v| self.0[v] != Letter::pos(v)).collect();
        if let [v] = moved[..] {
            if self.0[v] == Letter::neg(v) {
                return format!("inv({})", g.name(v));
            }
        }
        let parts: Vec<String> = moved
            .iter()
            .map(|&v| format!("{}>{}", g.name(v), self.0[v].display(g)))
            .collect();
        format!("perm[{}]", parts.join(","))
    }
}

/// All vertex permutations preserving adjacency (and, if `d` is given, every
/// ∼-class), found by backtracking; sorted lexicographically.
pub fn graph_automorphisms(g: &Graph, d: Option<&DominanceData>, bound: usize) -> Result<Vec<Vec<Vertex>>> {
    let n = g.order();
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "vertex count for automorphism search",
            size: n,
            limit: bound,
        });
    }
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        g: &Graph,
        d: Option<&DominanceData>,
        v: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = g.order();
        if v == n {
            out.push(perm.clone());
            return;
        }
        for x in 0..n {
            if used[x] || g.degree(x) != g.degree(v) {
                continue;
            }
            if let Some(d) = d {
                if d.class_of(x) != d.class_of(v) {
                    continue;
                }
            }
            if (0..v).any(|u| g.adjacent(u, v) != g.adjacent(perm[u], x)) {
                continue;
            }
            perm[v] = x;
            used[x] = true;
            go(g, d, v + 1, perm, used, out);
            used[x] = false;
        }
    }
    go(g, d, 0, &mut perm, &mut used, &mut out);
    Ok(out)
}

/// `Sym⁰`: graphic automorphisms preserving every ∼-class (bound 8).
pub fn sym0(g: &Graph) -> Result<Vec<Auto>> {
    let d = compute_domination(g);
    Ok(graph_automorphisms(g, Some(&d), DEFAULT_ENUMERATION_BOUND)?
        .into_iter()
        .map(|p| {
            let a = SignedPerm::graphic(&p).to_auto();
            a.with_kind(AutoKind::Graphic(p))
        })
        .collect())
}

/// Which type (1) automorphisms may appear in relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Type1Pool {
    /// Class-preserving graphic automorphisms only.
    Sym0,
    /// The group generated by `Sym⁰` and all inversions.
    Sym0WithInversions,
    /// All signed graph automorphisms.
    Full,
}

/// Largest type (1) pool that will be materialized.
pub const MAX_POOL: usize = 1 << 18;

/// The elements of a type (1) pool, identity first.
pub fn type1_pool(g: &Graph, pool: Type1Pool) -> Result<Vec<SignedPerm>> {
    let n = g.order();
    let d = compute_domination(g);
    let perms = match pool {
        Type1Pool::Sym0 | Type1Pool::Sym0WithInversions => {
            graph_automorphisms(g, Some(&d), DEFAULT_ENUMERATION_BOUND)?
        }
        Type1Pool::Full => graph_automorphisms(g, None, DEFAULT_ENUMERATION_BOUND)?,
    };
    let signs: u64 = if pool == Type1Pool::Sym0 { 1 } else { 1 << n };
    let size = perms.len().saturating_mul(signs as usize);
    if size > MAX_POOL {
        return Err(Error::BoundExceeded {
            what: "type (1) pool",
            size,
            limit: MAX_POOL,
        });
    }
    let mut out = Vec::with_capacity(size);
    for p in &perms {
        for mask in 0..signs {
            out.push(SignedPerm(
                p.iter()
                    .enumerate()
                    .map(|(v, &x)| Letter::new(x, mask >> v & 1 == 1))
                    .collect(),
            ));
        }
    }
    out.sort();
    Ok(out)
}

/// Generators of a type (1) pool: nontrivial graph automorphisms of the
/// relevant kind plus, for signed pools, all inversions.
pub fn type1_pool_generators(g: &Graph, pool: Type1Pool) -> Result<Vec<SignedPerm>> {
    let n = g.order();
    let d = compute_domination(g);
    let perms = match pool {
        Type1Pool::Full => graph_automorphisms(g, None, DEFAULT_ENUMERATION_BOUND)?,
        _ => graph_automorphisms(g, Some(&d), DEFAULT_ENUMERATION_BOUND)?,
    };
    let mut out: Vec<SignedPerm> = perms
        .iter()
        .map(|p| SignedPerm::graphic(p))
        .filter(|p| !p.is_identity())
        .collect();
    if pool != Type1Pool::Sym0 {
        out.extend((0..n).map(|v| SignedPerm::inversion(n, v)));
    }
    Ok(out)
}
