//! Coherent conditional probability over finite families of conditional
//! events.
//!
//! The crate decides whether a partial assessment `P(E_i | H_i) = p_i` can
//! be extended to a full conditional probability, using the layered linear
//! systems over the atoms generated by the events. On top of that it
//! computes the exact interval of coherent values for a new conditional
//! event, and treats `P(E | H) = 1` as a default rule `H => E` to decide
//! consistency and entailment of default knowledge bases.
//!
//! All arithmetic in decision paths is exact ([`Rational`]).

pub mod coherence;
pub mod defaults;
mod error;
pub mod extension;
pub mod kbfile;
pub mod logic;
pub mod ratlp;
mod rational;

pub use coherence::{
    check_coherence, conditional_zero_layer, zero_layer, AgreeingClass, ConditionalAssessment,
    Entry, Layer, Rank, Verdict, ZeroLayerMap,
};
pub use defaults::{
    check_rule_schema, consistent_boolean, consistent_coherence, entails, BooleanConsistency,
    DefaultKb, DefaultRule, Entailment, RuleSchema, SchemaInstance, SchemaKind, SchemaReport,
};
pub use error::Error;
pub use extension::{coherent_interval, is_coherent_value, CoherentInterval};
pub use kbfile::{parse_kb, KbError, KbOptions, KnowledgeBase, Query};
pub use logic::{
    parse_formula, AtomTable, ConditionalEvent, Formula, ParseError, Universe, Vocabulary, World,
};
pub use rational::{format_rational, parse_rational, Rational};

pub type Result<T, E = Error> = std::result::Result<T, E>;
