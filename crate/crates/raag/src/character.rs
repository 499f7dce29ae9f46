//! Integer characters on generating sets, with certificates over explicit
//! relation lists.
//!
//! For a vertex `w` that dominates no other vertex and a component `Y` of
//! `Γ − st(w)`, the character `π_Y` takes the value `1` on every Whitehead
//! automorphism `(A, w)` with `Y ∪ Y⁻¹ ⊆ A`, `−1` on every `(A, w⁻¹)` with
//! `Y ∪ Y⁻¹ ⊆ A`, and `0` on all other generators. For two distinct
//! components the difference `π_Y − π_Z` kills every relation in the
//! presentation and vanishes on inner automorphisms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::auto::{Convention, LetterSet, WhiteheadMove};
use crate::domination::compute_domination;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::relations::{day_table, for_each_day_instance, Coverage, DayOptions, Generator, GeneratorTable, RelationType};
use crate::word::Letter;

/// Which generating set a character is defined on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CharacterDomain {
    /// Type (2) Whitehead automorphisms, type (1) pool elements and inversions.
    WhiteheadGenerators,
    /// Admissible transvection matrices `T_st`.
    HTransvections,
}

/// One checked relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub relation: String,
    pub instance: String,
    pub sum: i64,
}

/// Evidence that a character kills a list of relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub coverage: Coverage,
    pub convention: Convention,
    /// Number of checked instances per relation family, in family order.
    pub counts: Vec<(String, usize)>,
    /// The first checked instance of each family, for inspection.
    pub examples: Vec<CertificateEntry>,
    pub all_zero: bool,
}

impl Certificate {
    pub fn total(&self) -> usize {
        self.counts.iter().map(|(_, c)| c).sum()
    }
}

/// An integer-valued function on a named generating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZCharacter {
    pub domain: CharacterDomain,
    pub names: Vec<String>,
    pub values: Vec<i64>,
    pub certificate: Option<Certificate>,
}

impl ZCharacter {
    pub fn zero(domain: CharacterDomain, names: Vec<String>) -> Self {
        let values = vec![0; names.len()];
        ZCharacter {
            domain,
            names,
            values,
            certificate: None,
        }
    }

    pub fn value(&self, name: &str) -> Option<i64> {
        self.names.iter().position(|n| n == name).map(|i| self.values[i])
    }

    /// Generators with nonzero value, in table order.
    pub fn support(&self) -> Vec<(&str, i64)> {
        self.names
            .iter()
            .zip(&self.values)
            .filter(|(_, &v)| v != 0)
            .map(|(n, &v)| (n.as_str(), v))
            .collect()
    }

    /// Pointwise difference; both characters must share a generating set.
    pub fn difference(&self, other: &ZCharacter) -> Result<ZCharacter> {
        if self.names != other.names || self.domain != other.domain {
            return Err(Error::Parameter("characters live on different generating sets".into()));
        }
        Ok(ZCharacter {
            domain: self.domain,
            names: self.names.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
            certificate: None,
        })
    }
}

/// `π_Y` together with the generator table it is defined on.
pub struct PiCharacter {
    pub table: GeneratorTable,
    pub character: ZCharacter,
}

fn check_minimal(g: &Graph, w: Vertex) -> Result<()> {
    g.check_vertex(w)?;
    let d = compute_domination(g);
    if let Some(v) = (0..g.order()).find(|&v| v != w && d.leq(v, w)) {
        return Err(Error::Hypothesis(format!(
            "{} ≤ {}, so {} is not minimal",
            g.name(v),
            g.name(w),
            g.name(w)
        )));
    }
    Ok(())
}

fn check_component(g: &Graph, w: Vertex, y: &[Vertex]) -> Result<Vec<Vertex>> {
    let mut y = y.to_vec();
    y.sort_unstable();
    y.dedup();
    if !g.components_minus_star(w)?.contains(&y) {
        return Err(Error::Hypothesis(format!(
            "{} is not a connected component of Γ − st({})",
            g.format_set(&y),
            g.name(w)
        )));
    }
    Ok(y)
}

/// Values of `π_Y` on the generators of `table`.
pub fn pi_values(table: &GeneratorTable, w: Vertex, y: &[Vertex]) -> Vec<i64> {
    let ys = LetterSet::both_signs(y);
    (0..table.len() as u32)
        .map(|i| match table.generator(i) {
            Generator::Move(mv) if ys.is_subset(mv.a) => {
                if mv.m == Letter::pos(w) {
                    1
                } else if mv.m == Letter::neg(w) {
                    -1
                } else {
                    0
                }
            }
            _ => 0,
        })
        .collect()
}

/// `π_Y` on the Whitehead generators of the relation table chosen by `opts`.
pub fn build_pi_with(g: &Graph, w: Vertex, y: &[Vertex], opts: &DayOptions) -> Result<PiCharacter> {
    check_minimal(g, w)?;
    let y = check_component(g, w, y)?;
    let table = day_table(g, opts)?;
    let character = ZCharacter {
        domain: CharacterDomain::WhiteheadGenerators,
        names: table.names().to_vec(),
        values: pi_values(&table, w, &y),
        certificate: None,
    };
    Ok(PiCharacter { table, character })
}

/// `π_Y` on the Whitehead generators, with the type (1) pool `Sym0`.
pub fn build_pi(g: &Graph, w: Vertex, y: &[Vertex]) -> Result<ZCharacter> {
    Ok(build_pi_with(g, w, y, &DayOptions::r0())?.character)
}

/// Checks `values` against every relation instance of `opts`; the first
/// instance with nonzero sum is returned as an error.
pub fn certify(g: &Graph, table: &GeneratorTable, values: &[i64], opts: &DayOptions) -> Result<Certificate> {
    let mut examples: BTreeMap<RelationType, CertificateEntry> = BTreeMap::new();
    let summary = for_each_day_instance(g, table, opts, |inst| {
        let sum = inst.sum(values);
        if sum != 0 {
            return Err(Error::CharacterRelation(format!("{} has sum {sum}", inst.display(table))));
        }
        examples.entry(inst.relation).or_insert_with(|| CertificateEntry {
            relation: inst.relation.to_string(),
            instance: inst.display(table),
            sum,
        });
        Ok(())
    })?;
    Ok(Certificate {
        coverage: summary.coverage,
        convention: summary.convention,
        counts: summary.counts.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        examples: examples.into_values().collect(),
        all_zero: true,
    })
}

/// The surjection `π = π_Y − π_Z` with its certificate.
pub struct Surjection {
    pub table: GeneratorTable,
    pub character: ZCharacter,
    /// A generator with value `1`: the partial conjugation `c_{w,Y}`.
    pub witness: String,
}

/// `π_Y − π_Z`, certified on every relation instance selected by `opts`.
pub fn build_surjection_with(
    g: &Graph,
    w: Vertex,
    y: &[Vertex],
    z: &[Vertex],
    opts: &DayOptions,
) -> Result<Surjection> {
    check_minimal(g, w)?;
    let y = check_component(g, w, y)?;
    let z = check_component(g, w, z)?;
    if y == z {
        return Err(Error::Hypothesis("Y and Z must be different components".into()));
    }
    let table = day_table(g, opts)?;
    let values: Vec<i64> = pi_values(&table, w, &y)
        .into_iter()
        .zip(pi_values(&table, w, &z))
        .map(|(a, b)| a - b)
        .collect();
    let certificate = certify(g, &table, &values, opts)?;
    let c_wy = WhiteheadMove {
        m: Letter::pos(w),
        a: LetterSet::both_signs(&y).with(Letter::pos(w)),
    };
    let id = table
        .move_id(c_wy)
        .ok_or_else(|| Error::Inconsistency(format!("{} missing from table", c_wy.display(g))))?;
    let witness = table.name(id).to_string();
    debug_assert_eq!(values[id as usize], 1);
    Ok(Surjection {
        character: ZCharacter {
            domain: CharacterDomain::WhiteheadGenerators,
            names: table.names().to_vec(),
            values,
            certificate: Some(certificate),
        },
        table,
        witness,
    })
}

/// [`build_surjection_with`] over the relations with type (1) factors in `Sym0`.
pub fn build_surjection(g: &Graph, w: Vertex, y: &[Vertex], z: &[Vertex]) -> Result<ZCharacter> {
    Ok(build_surjection_with(g, w, y, z, &DayOptions::r0())?.character)
}

/// Whether `ch` vanishes on the inner automorphisms `(L − u⁻¹, u)` and
/// `(L − u, u⁻¹)` for every vertex `u`.
pub fn check_inner_kernel(g: &Graph, ch: &ZCharacter) -> bool {
    let n = g.order();
    (0..n).all(|u| {
        [Letter::pos(u), Letter::neg(u)].into_iter().all(|m| {
            let name = WhiteheadMove::inner(n, m).display(g);
            ch.value(&name).unwrap_or(0) == 0
        })
    })
}
