//! Fixtures shared by the benchmarks: the knowledge bases of the corpus
//! and a family of chained defaults of growing length.

use ccp_core::{parse_kb, DefaultKb, DefaultRule, KbOptions, KnowledgeBase, Rational, Universe, Vocabulary};

pub const TWEETY: &str = include_str!("../../../corpus/tweety.kb");
pub const EXAMPLE6: &str = include_str!("../../../corpus/example6.kb");
pub const MONOTONICITY: &str = include_str!("../../../corpus/monotonicity.kb");

pub fn load(text: &str) -> KnowledgeBase {
    let options = KbOptions {
        alpha: Some(Rational::new(1, 3)),
        ..KbOptions::default()
    };
    parse_kb(text, &options).expect("corpus files parse")
}

/// `p0 => p1, p1 => p2, …` together with the exceptions `p0 => ~p_{n}`,
/// over `n + 1` free propositions.
pub fn chain(n: usize) -> DefaultKb {
    let names: Vec<String> = (0..=n).map(|i| format!("p{i}")).collect();
    let universe = Universe::new(Vocabulary::from_names(&names).expect("valid names"));
    let p = ccp_core::Formula::prop;
    let mut rules: Vec<DefaultRule> = (0..n).map(|i| DefaultRule::new(p(i), p(i + 1))).collect();
    rules.push(DefaultRule::new(p(0), p(n).not()));
    DefaultKb::with_rules(universe, rules)
}
