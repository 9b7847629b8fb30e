//! Worked examples with known answers.

mod common;

use ccp_core::{
    check_coherence, check_rule_schema, coherent_interval, conditional_zero_layer, consistent_boolean,
    consistent_coherence, entails, is_coherent_value, zero_layer, BooleanConsistency, CoherentInterval,
    ConditionalAssessment, DefaultKb, DefaultRule, Error, Formula, Rank, Rational, RuleSchema, SchemaInstance,
    Verdict,
};
use common::*;
use num_traits::{One, Zero};

fn interval(lo: Rational, hi: Rational) -> CoherentInterval {
    CoherentInterval::new(lo, hi)
}

fn point(p: Rational) -> CoherentInterval {
    CoherentInterval::new(p.clone(), p)
}

fn rule(kb: &DefaultKb, text: &str) -> DefaultRule {
    DefaultRule::parse(text, kb.universe.vocab()).unwrap()
}

#[test]
fn tweety_is_coherent_in_one_layer() {
    let kb = load("tweety.kb", None);
    let verdict = check_coherence(&kb.assessment).unwrap();
    let class = verdict.agreeing_class().expect("coherent");
    assert_eq!(class.layers().len(), 1);
    assert_eq!(class.resolution(), &[0, 0, 0]);
    assert!(class.reproduces(&kb.assessment).unwrap());
}

#[test]
fn tweety_flying_is_unconstrained() {
    let kb = load("tweety.kb", None);
    let u = &kb.universe;
    let target = ce(u, "fly | tweety");
    assert_eq!(
        coherent_interval(&kb.assessment, &target).unwrap(),
        interval(Rational::zero(), Rational::one())
    );
    assert!(is_coherent_value(&kb.assessment, &target, &r(1, 2)).unwrap());
    for query in ["tweety => fly", "tweety => ~fly"] {
        assert!(!entails(&kb.defaults, &rule(&kb.defaults, query)).unwrap().entailed);
    }
}

#[test]
fn single_default_has_one_layer() {
    let kb = load("remark2.kb", None);
    let u = &kb.universe;
    let verdict = check_coherence(&kb.assessment).unwrap();
    let class = verdict.agreeing_class().unwrap();
    assert_eq!(class.layers().len(), 1);
    let falsified = class.atoms().set_of(&f(u, "~e & h")).unwrap();
    assert!(class.layers()[0].mass(&falsified).is_zero());

    assert_eq!(zero_layer(class, &f(u, "~e & h")).unwrap(), Rank::Finite(1));
    assert_eq!(zero_layer(class, &f(u, "e & h")).unwrap(), zero_layer(class, &f(u, "h")).unwrap());
    assert_eq!(conditional_zero_layer(class, &ce(u, "~e | h")).unwrap(), Rank::Finite(1));
    assert_eq!(conditional_zero_layer(class, &ce(u, "e | h")).unwrap(), Rank::Finite(0));
    assert_eq!(conditional_zero_layer(class, &ce(u, "h | h")).unwrap(), Rank::Finite(0));
}

#[test]
fn sure_and_impossible_events_rank_at_the_extremes() {
    let kb = load("remark2.kb", None);
    let verdict = check_coherence(&kb.assessment).unwrap();
    let class = verdict.agreeing_class().unwrap();
    assert_eq!(zero_layer(class, &Formula::True).unwrap(), Rank::Finite(0));
    assert_eq!(zero_layer(class, &Formula::False).unwrap(), Rank::Infinite);
    assert_eq!(Rank::Infinite.to_string(), "inf");
    let u = &kb.universe;
    assert_eq!(conditional_zero_layer(class, &ce(u, "false | h")).unwrap(), Rank::Infinite);
}

#[test]
fn events_outside_the_algebra_are_reported() {
    let u = free_universe(&["a", "b"]);
    let mut a = ConditionalAssessment::new(u.clone());
    a.push(ce(&u, "a | true"), r(1, 2)).unwrap();
    let verdict = check_coherence(&a).unwrap();
    let class = verdict.agreeing_class().unwrap();
    assert!(matches!(zero_layer(class, &f(&u, "b")), Err(Error::NotInAlgebra(_))));
}

#[test]
fn contradictory_certainties_are_incoherent_at_layer_zero() {
    let u = free_universe(&["a", "h"]);
    let mut a = ConditionalAssessment::new(u.clone());
    a.push(ce(&u, "a | h"), Rational::one()).unwrap();
    a.push(ce(&u, "~a | h"), Rational::one()).unwrap();
    assert!(matches!(check_coherence(&a).unwrap(), Verdict::Incoherent { layer: 0 }));
}

#[test]
fn two_hypotheses_atom_probabilities() {
    let kb = load("example6.kb", Some(r(1, 3)));
    let u = &kb.universe;
    let verdict = check_coherence(&kb.assessment).unwrap();
    let class = verdict.agreeing_class().unwrap();
    let p0 = &class.layers()[0];
    let mass = |text: &str| p0.mass(&class.atoms().set_of(&f(u, text)).unwrap());
    assert_eq!(mass("h1 & h2"), Rational::zero());
    assert_eq!(mass("h1 & ~h2"), Rational::zero());
    assert_eq!(mass("~h1 & ~h2"), r(1, 3));
    assert_eq!(mass("~h1 & h2"), r(2, 3));
    // h1 has no mass under P_0, so its default resolves one layer later.
    assert_eq!(class.layers().len(), 2);
    assert_eq!(class.resolution(), &[1, 0, 0]);
    assert!(class.is_nested());
}

#[test]
fn two_hypotheses_pin_the_query() {
    let kb = load("example6.kb", Some(r(1, 3)));
    let u = &kb.universe;
    let a = &kb.assessment;
    assert_eq!(coherent_interval(a, &ce(u, "E | H")).unwrap(), point(r(2, 3)));
    assert_eq!(coherent_interval(a, &ce(u, "~E | H")).unwrap(), point(r(1, 3)));
    assert!(!is_coherent_value(a, &ce(u, "E | H"), &Rational::one()).unwrap());
    let e = entails(&kb.defaults, &rule(&kb.defaults, "H => E")).unwrap();
    assert!(!e.entailed);
    assert_eq!(e.interval, point(r(2, 3)));
}

#[test]
fn two_hypotheses_defaults_are_consistent() {
    let kb = load("example6.kb", Some(r(1, 3)));
    let pure = DefaultKb::with_rules(kb.universe.clone(), kb.defaults.rules.clone());
    assert_eq!(consistent_boolean(&pure).unwrap(), BooleanConsistency::Consistent);
    assert!(consistent_coherence(&pure).unwrap().is_coherent());
    assert!(consistent_coherence(&kb.defaults).unwrap().is_coherent());
    assert!(matches!(consistent_boolean(&kb.defaults), Err(Error::Precondition(_))));
}

#[test]
fn adams_extension_is_incoherent() {
    let kb = load("adams.kb", None);
    assert!(!check_coherence(&kb.assessment).unwrap().is_coherent());

    // Without the two extra certainties the proper assessment is fine.
    let u = &kb.universe;
    let mut proper = ConditionalAssessment::new(u.clone());
    for entry in &kb.assessment.entries()[..2] {
        proper.push(entry.event.clone(), entry.value.clone()).unwrap();
    }
    assert!(check_coherence(&proper).unwrap().is_coherent());
}

#[test]
fn forced_targets() {
    let u = free_universe(&["a", "b"]);
    let mut a = ConditionalAssessment::new(u.clone());
    a.push(ce(&u, "a | true"), r(1, 2)).unwrap();
    assert_eq!(coherent_interval(&a, &ce(&u, "~b & b | a")).unwrap(), point(Rational::zero()));
    assert_eq!(coherent_interval(&a, &ce(&u, "a v b | a")).unwrap(), point(Rational::one()));
    let hh = ce(&u, "b | b");
    assert!(is_coherent_value(&a, &hh, &Rational::one()).unwrap());
    assert!(!is_coherent_value(&a, &hh, &r(1, 2)).unwrap());
    assert_eq!(coherent_interval(&a, &ce(&u, "a | true")).unwrap(), point(r(1, 2)));
}

#[test]
fn interval_needs_a_coherent_base() {
    let kb = load("adams.kb", None);
    let target = ce(&kb.universe, "h1 | true");
    assert!(matches!(coherent_interval(&kb.assessment, &target), Err(Error::IncoherentBase)));
}

#[test]
fn tweety_defaults_pass_the_boolean_criterion() {
    let kb = load("tweety.kb", None);
    assert_eq!(consistent_boolean(&kb.defaults).unwrap(), BooleanConsistency::Consistent);
    assert!(consistent_coherence(&kb.defaults).unwrap().is_coherent());
}

#[test]
fn opposite_defaults_violate_the_boolean_criterion() {
    let u = free_universe(&["e", "h", "x"]);
    let mut kb = DefaultKb::new(u);
    kb.rules.push(rule(&kb, "x => e"));
    kb.rules.push(rule(&kb, "true => x"));
    kb.rules.push(rule(&kb, "h => e"));
    kb.rules.push(rule(&kb, "h => ~e"));
    assert_eq!(consistent_boolean(&kb).unwrap(), BooleanConsistency::Violated(vec![2, 3]));
    assert!(!consistent_coherence(&kb).unwrap().is_coherent());
}

#[test]
fn entailment_refuses_inconsistent_bases() {
    let u = free_universe(&["e", "h"]);
    let mut kb = DefaultKb::new(u);
    kb.rules.push(rule(&kb, "h => e"));
    kb.rules.push(rule(&kb, "h => ~e"));
    let query = rule(&kb, "h => e");
    assert!(matches!(entails(&kb, &query), Err(Error::InconsistentKb)));
}

#[test]
fn reflexivity_holds_in_every_corpus_base() {
    for name in ["tweety.kb", "contraposition.kb", "monotonicity.kb", "remark2.kb"] {
        let kb = load(name, None);
        for prop in kb.universe.vocab().names() {
            let e = entails(&kb.defaults, &rule(&kb.defaults, &format!("{prop} => {prop}"))).unwrap();
            assert!(e.entailed, "{name}: {prop} => {prop}");
        }
    }
}

fn instance(kb: &DefaultKb, a: &str, b: &str, c: &str) -> SchemaInstance {
    let u = &kb.universe;
    SchemaInstance {
        a: f(u, a),
        b: f(u, b),
        c: f(u, c),
    }
}

#[test]
fn cut_on_free_propositions() {
    let kb = DefaultKb::new(free_universe(&["a", "b", "c"]));
    let report = check_rule_schema(&kb, RuleSchema::Cut, &instance(&kb, "a", "b", "c")).unwrap();
    assert_eq!(report.premises.len(), 2);
    assert_eq!(report.premises_consistent, Some(true));
    assert_eq!(report.conclusion_entailed, Some(true));
    assert_eq!(report.holds(), Some(true));
}

#[test]
fn contraposition_fails() {
    let kb = load("contraposition.kb", None);
    assert!(check_coherence(&kb.assessment).unwrap().is_coherent());
    let base = DefaultKb::new(kb.universe.clone());
    let report = check_rule_schema(&base, RuleSchema::Contraposition, &instance(&base, "a", "b", "true")).unwrap();
    assert_eq!(report.premises_consistent, Some(true));
    assert_eq!(report.conclusion_entailed, Some(false));
    assert_eq!(report.holds(), Some(false));
    assert!(report.conclusion_interval.unwrap().contains(&r(1, 4)));
}

#[test]
fn monotonicity_fails_for_tweety() {
    let kb = load("monotonicity.kb", None);
    assert!(check_coherence(&kb.assessment).unwrap().is_coherent());
    let u = &kb.universe;
    assert_eq!(coherent_interval(&kb.assessment, &ce(u, "fly | penguin")).unwrap(), point(Rational::zero()));

    let tweety = load("tweety.kb", None);
    let report = check_rule_schema(
        &tweety.defaults,
        RuleSchema::Monotonicity,
        &instance(&tweety.defaults, "penguin", "bird", "fly"),
    )
    .unwrap();
    assert!(report.applicable);
    assert_eq!(report.premises_consistent, Some(true));
    assert_eq!(report.conclusion_entailed, Some(false));
    assert_eq!(report.conclusion_interval, Some(point(Rational::zero())));
}

#[test]
fn side_conditions_gate_the_schema() {
    let kb = DefaultKb::new(free_universe(&["a", "b", "c"]));
    let report =
        check_rule_schema(&kb, RuleSchema::LeftLogicalEquivalence, &instance(&kb, "a", "b", "c")).unwrap();
    assert!(!report.applicable);
    assert_eq!(report.holds(), None);
    let report = check_rule_schema(&kb, RuleSchema::RightWeakening, &instance(&kb, "a & b", "a", "c")).unwrap();
    assert!(report.applicable);
    assert_eq!(report.holds(), Some(true));
}

#[test]
fn schema_names_round_trip() {
    for schema in RuleSchema::ALL {
        assert_eq!(schema.name().parse::<RuleSchema>().unwrap(), schema);
        assert_eq!(schema.to_string(), schema.name());
    }
    assert_eq!("CautiousMonotonicity".parse::<RuleSchema>().unwrap(), RuleSchema::CautiousMonotonicity);
    assert!("modus-ponens".parse::<RuleSchema>().is_err());
}
