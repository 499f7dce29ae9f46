//! Words in the right-angled Artin group `A_Γ` and their normal form.
//!
//! A [`Letter`] is a vertex generator or its inverse, encoded as
//! `2 * vertex + (1 if inverse)`; comparing codes therefore orders letters by
//! vertex with `v⁻¹` immediately after `v`.
//!
//! The normal form of a word is computed in two passes:
//!
//! 1. *Reduction*: letters are pushed onto a stack one at a time; a new letter
//!    cancels the rightmost copy of its inverse provided every letter in
//!    between commutes with it.
//! 2. *Linearization*: among all rearrangements of the reduced word by
//!    commutation swaps, the lexicographically least is chosen by repeatedly
//!    extracting the least letter that commutes with everything before it.
//!
//! Two words represent the same element exactly when their normal forms are
//! identical.

use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A generator `v` or its inverse `v⁻¹`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(pub u32);

impl Letter {
    #[inline]
    pub fn new(v: Vertex, inverse: bool) -> Self {
        Letter((v as u32) << 1 | inverse as u32)
    }

    #[inline]
    pub fn pos(v: Vertex) -> Self {
        Letter::new(v, false)
    }

    #[inline]
    pub fn neg(v: Vertex) -> Self {
        Letter::new(v, true)
    }

    #[inline]
    pub fn vertex(self) -> Vertex {
        (self.0 >> 1) as Vertex
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn display(self, g: &Graph) -> String {
        if self.is_inverse() {
            format!("{}^-1", g.name(self.vertex()))
        } else {
            g.name(self.vertex()).to_string()
        }
    }

    /// Parses `v` or `v^-1`.
    pub fn parse(g: &Graph, token: &str) -> Result<Self> {
        let token = token.trim();
        let (name, inverse) = match token
            .strip_suffix("^-1")
            .or_else(|| token.strip_suffix("⁻¹"))
        {
            Some(name) => (name, true),
            None => (token, false),
        };
        Ok(Letter::new(g.vertex(name)?, inverse))
    }
}

/// Whether two letters commute in `A_Γ` as distinct generators.
#[inline]
pub(crate) fn commute(g: &Graph, x: Letter, y: Letter) -> bool {
    g.adjacent(x.vertex(), y.vertex())
}

/// A word in the generators of `A_Γ`; not necessarily reduced.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(x: Letter) -> Self {
        Word(vec![x])
    }

    pub fn generator(v: Vertex) -> Self {
        Word(vec![Letter::pos(v)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Formal inverse (reverse and invert every letter); no reduction.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|x| x.inverse()).collect())
    }

    /// Exponent sum of each vertex, indexed by vertex.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut sums = vec![0; n];
        for x in &self.0 {
            sums[x.vertex()] += x.sign();
        }
        sums
    }

    /// Parses whitespace-separated tokens `v` and `v^-1`; `1` or an empty
    /// string is the empty word.
    pub fn parse(g: &Graph, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::empty());
        }
        text.split_whitespace()
            .map(|t| Letter::parse(g, t))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Renders the word with vertex names; the empty word is `1`.
    pub fn display(&self, g: &Graph) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self.0.iter().map(|x| x.display(g)).collect();
        parts.join(" ")
    }

    pub(crate) fn check(&self, g: &Graph) -> Result<()> {
        match self.0.iter().find(|x| x.vertex() >= g.order()) {
            Some(x) => Err(Error::UnknownVertex(format!("#{}", x.vertex()))),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|x| {
                if x.is_inverse() {
                    format!("{}'", x.vertex())
                } else {
                    x.vertex().to_string()
                }
            })
            .collect();
        write!(f, "Word[{}]", parts.join(" "))
    }
}

/// Pushes `x` onto a reduced word, cancelling where possible.
#[inline]
fn push_reduced(g: &Graph, stack: &mut Vec<Letter>, x: Letter) {
    let inv = x.inverse();
    for j in (0..stack.len()).rev() {
        let y = stack[j];
        if y == inv {
            stack.remove(j);
            return;
        }
        if !commute(g, x, y) {
            break;
        }
    }
    stack.push(x);
}

/// Lexicographically least rearrangement by commutation swaps.
fn linearize(g: &Graph, mut rest: Vec<Letter>) -> Vec<Letter> {
    let mut out = Vec::with_capacity(rest.len());
    let mut seen = FixedBitSet::with_capacity(g.order());
    while !rest.is_empty() {
        seen.clear();
        let mut best: Option<usize> = None;
        for (i, &x) in rest.iter().enumerate() {
            let v = x.vertex();
            let free = !seen.contains(v) && seen.is_subset(g.link_set(v));
            if free && best.map_or(true, |b| x < rest[b]) {
                best = Some(i);
            }
            seen.insert(v);
            // Once every vertex is blocked nothing later can be free.
            if i > 0 && best.is_some() && seen.count_ones(..) == g.order() {
                break;
            }
        }
        let i = best.expect("the first letter is always free");
        out.push(rest.remove(i));
    }
    out
}

pub(crate) fn normal_form_unchecked(g: &Graph, letters: impl IntoIterator<Item = Letter>) -> Word {
    let mut stack = Vec::new();
    for x in letters {
        push_reduced(g, &mut stack, x);
    }
    Word(linearize(g, stack))
}

/// Canonical representative of `w` in `A_Γ`.
pub fn normal_form(g: &Graph, w: &Word) -> Result<Word> {
    w.check(g)?;
    Ok(normal_form_unchecked(g, w.0.iter().copied()))
}

/// Whether two words represent the same element.
pub fn words_equal(g: &Graph, a: &Word, b: &Word) -> Result<bool> {
    Ok(normal_form(g, a)? == normal_form(g, b)?)
}

/// Normal form of `a·b`.
pub fn product(g: &Graph, a: &Word, b: &Word) -> Result<Word> {
    a.check(g)?;
    b.check(g)?;
    Ok(normal_form_unchecked(g, a.0.iter().chain(&b.0).copied()))
}

/// The product `a·b` and the inverse `a⁻¹`, both in normal form.
pub fn group_ops(g: &Graph, a: &Word, b: &Word) -> Result<(Word, Word)> {
    let prod = product(g, a, b)?;
    let inv = normal_form(g, &a.inverse())?;
    Ok((prod, inv))
}

/// `[a, b] = a⁻¹ b⁻¹ a b`, in normal form.
pub fn commutator(g: &Graph, a: &Word, b: &Word) -> Result<Word> {
    a.check(g)?;
    b.check(g)?;
    let letters = a
        .inverse()
        .0
        .into_iter()
        .chain(b.inverse().0)
        .chain(a.0.iter().copied())
        .chain(b.0.iter().copied());
    Ok(normal_form_unchecked(g, letters))
}

/// `w^k` in normal form; negative `k` gives powers of the inverse.
pub fn power(g: &Graph, w: &Word, k: i64) -> Result<Word> {
    w.check(g)?;
    let base = if k < 0 { w.inverse() } else { w.clone() };
    let letters = (0..k.unsigned_abs()).flat_map(|_| base.0.iter().copied());
    Ok(normal_form_unchecked(g, letters))
}

/// Default state budget for [`brute_force_equal`].
pub const BRUTE_FORCE_BUDGET: usize = 2_000_000;

/// Decides whether `a` and `b` are connected by at most `radius` elementary
/// moves: deleting or inserting a cancelling pair `x x⁻¹`, or swapping two
/// adjacent letters whose vertices are adjacent in Γ.
///
/// This is an independent check of [`normal_form`] on short words; it never
/// consults the normal form. The search is bidirectional and fails with
/// [`Error::BudgetExceeded`] once more than `budget` states were visited.
pub fn brute_force_equal_with_budget(
    g: &Graph,
    a: &Word,
    b: &Word,
    radius: usize,
    budget: usize,
) -> Result<bool> {
    a.check(g)?;
    b.check(g)?;
    if a == b {
        return Ok(true);
    }
    let alphabet: Vec<Letter> = (0..2 * g.order() as u32).map(Letter).collect();
    let mut visited = 0usize;
    let ball_a = ball(g, &alphabet, a, radius.div_ceil(2), &mut visited, budget)?;
    let ball_b = ball(g, &alphabet, b, radius / 2, &mut visited, budget)?;
    let (small, large) = if ball_a.len() <= ball_b.len() {
        (&ball_a, &ball_b)
    } else {
        (&ball_b, &ball_a)
    };
    Ok(small.iter().any(|w| large.contains(w)))
}

/// [`brute_force_equal_with_budget`] with the default budget.
pub fn brute_force_equal(g: &Graph, a: &Word, b: &Word, radius: usize) -> Result<bool> {
    brute_force_equal_with_budget(g, a, b, radius, BRUTE_FORCE_BUDGET)
}

fn ball(
    g: &Graph,
    alphabet: &[Letter],
    start: &Word,
    radius: usize,
    visited: &mut usize,
    budget: usize,
) -> Result<HashSet<Vec<Letter>>> {
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    seen.insert(start.0.clone());
    let mut frontier = vec![start.0.clone()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            let mut visit = |cand: Vec<Letter>| -> Result<()> {
                if !seen.contains(&cand) {
                    *visited += 1;
                    if *visited > budget {
                        return Err(Error::BudgetExceeded(budget));
                    }
                    seen.insert(cand.clone());
                    next.push(cand);
                }
                Ok(())
            };
            for i in 0..w.len().saturating_sub(1) {
                let (x, y) = (w[i], w[i + 1]);
                if x == y.inverse() {
                    let mut c = w.clone();
                    c.drain(i..i + 2);
                    visit(c)?;
                } else if commute(g, x, y) {
                    let mut c = w.clone();
                    c.swap(i, i + 1);
                    visit(c)?;
                }
            }
            for i in 0..=w.len() {
                for &x in alphabet {
                    let mut c = Vec::with_capacity(w.len() + 2);
                    c.extend_from_slice(&w[..i]);
                    c.push(x);
                    c.push(x.inverse());
                    c.extend_from_slice(&w[i..]);
                    visit(c)?;
                }
            }
        }
        frontier = next;
    }
    Ok(seen)
}
