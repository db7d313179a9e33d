//! Logarithmic decomposition of entropy: a signed measure on the lattice of
//! outcome subsets, the algebra of its upper-sets, and tools for classifying
//! the sign of co-information structurally.

pub mod atom;
pub mod content;
pub mod error;
pub mod expr;
pub mod gates;
pub mod ideal;
pub mod measure;
pub mod parity;
pub mod partition;
pub mod space;
pub mod survey;

pub use atom::{complex_size, enumerate_complex, restrict, Atom, AtomSet};
pub use content::{
    coinformation_content, coinformation_numeric, content, content_bruteforce, count_expressions,
    enumerate_expression_regions, extract_atom, gacs_korner, ideal_to_variables, is_representable,
    mutual_information,
};
pub use error::{Error, Result};
pub use expr::{ParseError, SetExpression};
pub use gates::{
    build_gate, canonical_gates, canonicalize, census, classify_gate, format_table, named_gate,
    orbit, GateClassification, GateSystem, Verdict,
};
pub use ideal::{
    enumerate_ideal, ideal_difference, ideal_from_generators, ideal_intersection, ideal_union,
    DegreeProfile, Ideal, ProfileKind,
};
pub use measure::{
    entropy, finite_difference_derivative, merge_loss, mu_atom, mu_set, mu_weights, MuTable,
};
pub use parity::{
    classify_parity, expand_ideal, single_generator_sign, witness_distributions, Certificate,
    ParityClass, Witness, Witnesses, DEFAULT_BUDGET, DEFAULT_EPSILON_SCHEDULE,
};
pub use partition::{common_coarsening, common_refinement, set_partitions, Partition};
pub use space::{Distribution, OutcomeSpace, MAX_OUTCOMES};
pub use survey::{dirichlet_sample, sign_survey, sign_survey_with, Extreme, SignSurvey};
