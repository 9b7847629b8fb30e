//! Shared fixtures and independent oracles for the integration suites.
#![allow(dead_code)]

use std::collections::HashMap;

use ccp_core::ratlp::{solve, LinearProgram, Outcome, Relation};
use ccp_core::{
    parse_kb, ConditionalAssessment, ConditionalEvent, Formula, KbOptions, KnowledgeBase, Rational,
    Universe, Vocabulary,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn corpus(name: &str) -> String {
    let path = format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn load(name: &str, alpha: Option<Rational>) -> KnowledgeBase {
    parse_kb(&corpus(name), &KbOptions { alpha, ..KbOptions::default() }).unwrap()
}

pub fn free_universe(names: &[&str]) -> Universe {
    Universe::new(Vocabulary::from_names(names).unwrap())
}

pub fn ce(universe: &Universe, text: &str) -> ConditionalEvent {
    universe.vocab().parse_conditional(text).unwrap()
}

pub fn f(universe: &Universe, text: &str) -> Formula {
    universe.parse(text).unwrap()
}

pub const GRID: [(i64, i64); 5] = [(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)];

/// Coherence by exhaustive search over resolution orders.
///
/// Works on raw worlds rather than atoms. For every ordered partition
/// `G_0, G_1, …` of the entries it asks, layer by layer, for a distribution
/// over the worlds under the still unresolved conditioning events that
/// satisfies their constraints, gives every `H_i` with `i ∈ G_α` mass at
/// least `t > 0`, and gives every later `H_i` zero mass. The induced
/// supports form the nested chain of the characterization.
pub fn oracle_coherent(a: &ConditionalAssessment) -> bool {
    let worlds = a.universe().worlds().unwrap();
    let n = a.len();
    assert!(n < 16);
    let h: Vec<Vec<bool>> = a
        .entries()
        .iter()
        .map(|e| worlds.iter().map(|&w| e.event.conditioning.eval(w)).collect())
        .collect();
    let eh: Vec<Vec<bool>> = a
        .entries()
        .iter()
        .map(|e| worlds.iter().map(|&w| e.event.joint().eval(w)).collect())
        .collect();
    let values: Vec<Rational> = a.entries().iter().map(|e| e.value.clone()).collect();
    let mut memo = HashMap::new();
    search((1u32 << n) - 1, &h, &eh, &values, &mut memo)
}

fn search(
    unresolved: u32,
    h: &[Vec<bool>],
    eh: &[Vec<bool>],
    values: &[Rational],
    memo: &mut HashMap<u32, bool>,
) -> bool {
    if unresolved == 0 {
        return true;
    }
    if let Some(&known) = memo.get(&unresolved) {
        return known;
    }
    let mut found = false;
    // Nonempty submasks of `unresolved`.
    let mut group = unresolved;
    while group != 0 {
        if layer_exists(unresolved, group, h, eh, values) && search(unresolved & !group, h, eh, values, memo) {
            found = true;
            break;
        }
        group = (group - 1) & unresolved;
    }
    memo.insert(unresolved, found);
    found
}

fn layer_exists(unresolved: u32, group: u32, h: &[Vec<bool>], eh: &[Vec<bool>], values: &[Rational]) -> bool {
    let members = |mask: u32| (0..h.len()).filter(move |&i| mask >> i & 1 == 1);
    let vars: Vec<usize> = (0..h[0].len()).filter(|&w| members(unresolved).any(|i| h[i][w])).collect();
    let n = vars.len() + 1; // last variable is the positivity margin t
    let zero = || vec![Rational::zero(); n];
    let mut lp = LinearProgram::new(n);
    for i in members(unresolved) {
        let mut row = zero();
        for (j, &w) in vars.iter().enumerate() {
            if eh[i][w] {
                row[j] = Rational::one() - &values[i];
            } else if h[i][w] {
                row[j] = -values[i].clone();
            }
        }
        lp.add_constraint(row, Relation::Eq, Rational::zero());
    }
    let mut norm = vec![Rational::one(); n];
    norm[n - 1] = Rational::zero();
    lp.add_constraint(norm, Relation::Eq, Rational::one());
    for i in members(unresolved) {
        let mut row = zero();
        for (j, &w) in vars.iter().enumerate() {
            if h[i][w] {
                row[j] = Rational::one();
            }
        }
        if group >> i & 1 == 1 {
            row[n - 1] = -Rational::one();
            lp.add_constraint(row, Relation::Ge, Rational::zero());
        } else {
            lp.add_constraint(row, Relation::Eq, Rational::zero());
        }
    }
    let mut objective = zero();
    objective[n - 1] = Rational::one();
    lp.maximize(objective);
    matches!(solve(&lp), Outcome::Optimal { value, .. } if value.is_positive())
}

/// Bisection for the boundary between an incoherent `outside` value and a
/// coherent `inside` value, to within `2^-bits`, probing the brute-force
/// oracle on the augmented assessment.
pub fn bisect_boundary(
    a: &ConditionalAssessment,
    target: &ConditionalEvent,
    mut outside: Rational,
    mut inside: Rational,
    bits: u32,
) -> Rational {
    let tolerance = r(1, 1i64 << bits);
    while (&inside - &outside).abs() > tolerance {
        let mid = (&inside + &outside) / Rational::from(2);
        if oracle_coherent(&a.with(target.clone(), mid.clone()).unwrap()) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    inside
}

/// Conditional events over `a, b, c` used by the exhaustive sweeps. They mix
/// sure, nested, overlapping and disjoint conditioning events.
pub const EVENT_POOL: [&str; 7] = [
    "a | true",
    "b | a",
    "c | a & b",
    "~a | b",
    "a | a v b",
    "b & c | ~a",
    "a | c",
];

/// The formula whose models among the `2^vars` assignments of the first
/// `vars` propositions are the bits of `mask`, in disjunctive normal form.
pub fn truth_table_formula(vars: usize, mask: u32) -> Formula {
    let minterm = |w: u32| {
        (0..vars)
            .map(|i| if w >> i & 1 == 1 { Formula::prop(i) } else { Formula::prop(i).not() })
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    };
    (0..1u32 << vars)
        .filter(|&w| mask >> w & 1 == 1)
        .map(minterm)
        .reduce(Formula::or)
        .unwrap_or(Formula::False)
}

/// Antecedents and consequents of the default rules in the consistency sweep.
pub const ANTECEDENT_POOL: [&str; 7] = ["true", "a", "b", "a & b", "a v b", "~a", "c"];
pub const CONSEQUENT_POOL: [&str; 8] = ["a", "b", "c", "~a", "~b", "~c", "a & b", "a v c"];

/// An assessment over `a, b, c` drawn as truth tables: each entry is
/// `(conditioning mask, consequent mask, grid value)`, impossible
/// conditioning events skipped.
pub fn table_assessment(u: &Universe, spec: &[(u8, u8, usize)]) -> ConditionalAssessment {
    let mut a = ConditionalAssessment::new(u.clone());
    for &(h, e, v) in spec {
        if h == 0 {
            continue;
        }
        let event = ConditionalEvent::new(truth_table_formula(3, e.into()), truth_table_formula(3, h.into()));
        let (n, d) = GRID[v % GRID.len()];
        a.push(event, r(n, d)).unwrap();
    }
    a
}

pub fn entry_spec(max_entries: usize) -> impl Strategy<Value = Vec<(u8, u8, usize)>> {
    proptest::collection::vec((1u8.., any::<u8>(), 0..GRID.len()), 1..=max_entries)
}
