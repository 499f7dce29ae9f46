//! Right-angled Artin groups, their automorphisms and the matrix groups
//! they induce.

pub mod auto;
pub mod character;
pub mod domination;
pub mod error;
pub mod graph;
pub mod hgroup;
pub mod identities;
pub mod matrix;
pub mod properties;
pub mod random;
pub mod relations;
pub mod word;

pub use auto::{
    abelianize, compose, evaluate, make_generator, make_whitehead, Auto, AutoKind, Convention, GeneratorSpec,
    LetterSet, SignedPerm, Type1Pool, WhiteheadMove,
};
pub use character::{build_pi, build_surjection, check_inner_kernel, Certificate, ZCharacter};
pub use hgroup::{
    congruence_clear_offdiagonal, decide_property_t, falsify_character, h_generators, perfectness_witness,
    structure_report, verify_block_structure, HGenerators, TDecision,
};
pub use identities::{check_crossed_lantern, check_m_transvection, check_tau_identity, IdentityCheck};
pub use matrix::IntMatrix;
pub use random::{isolated_distribution, nl_frequency, run_experiment, sample_gnn, ExperimentConfig, ExperimentResult};
pub use relations::{enumerate_day_instances, Coverage, DayOptions, RelationInstance, RelationType};
pub use domination::{compute_domination, DominanceData};
pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use properties::{
    check_properties, check_tree_criterion, decompose, find_indicability_witness, poison_witness,
    Decomposition, PropertyReport,
};
pub use word::{Letter, Word};
