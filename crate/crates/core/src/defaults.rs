//! Default rules `H => E`, read as `P(E | H) = 1` inside a coherent
//! assessment.
//!
//! Consistency of a set of rules is decided either through coherence of the
//! all-ones assessment or through the purely Boolean subset criterion: for
//! every nonempty subset `S`, `⋁_S (E ∧ H) ⊄ ⋁_S (E^c ∧ H)`. Entailment of
//! `H => E` means that 1 is the only coherent value of `P(E | H)`.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use num_traits::{One, Zero};

use crate::coherence::{check_coherence, ConditionalAssessment, Entry, Verdict};
use crate::extension::{coherent_interval, CoherentInterval};
use crate::logic::{ConditionalEvent, Formula, ParseError, Universe, Vocabulary};
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DefaultRule {
    pub antecedent: Formula,
    pub consequent: Formula,
}

impl DefaultRule {
    pub fn new(antecedent: Formula, consequent: Formula) -> Self {
        Self {
            antecedent,
            consequent,
        }
    }

    pub fn event(&self) -> ConditionalEvent {
        ConditionalEvent::new(self.consequent.clone(), self.antecedent.clone())
    }

    /// Parses `H => E`.
    pub fn parse(text: &str, vocab: &Vocabulary) -> Result<Self, ParseError> {
        let arrows: Vec<usize> = text.match_indices("=>").map(|(i, _)| i).collect();
        match arrows.as_slice() {
            [arrow] => {
                let antecedent = vocab.parse(&text[..*arrow])?;
                let consequent = vocab.parse(&text[arrow + 2..]).map_err(|e| e.shifted(arrow + 2))?;
                Ok(Self::new(antecedent, consequent))
            }
            [] => Err(ParseError::syntax(text.len(), "expected `H => E`")),
            [_, second, ..] => Err(ParseError::syntax(*second, "more than one `=>`")),
        }
    }

    pub fn display(&self, vocab: &Vocabulary) -> String {
        format!("{} => {}", self.antecedent.display(vocab), self.consequent.display(vocab))
    }
}

/// A set `Δ` of default rules, possibly inside a larger assessment with
/// `extra` entries of arbitrary value.
#[derive(Clone, Debug)]
pub struct DefaultKb {
    pub universe: Universe,
    pub rules: Vec<DefaultRule>,
    pub extra: Vec<Entry>,
}

impl DefaultKb {
    pub fn new(universe: Universe) -> Self {
        Self {
            universe,
            rules: Vec::new(),
            extra: Vec::new(),
        }
    }

    pub fn with_rules(universe: Universe, rules: Vec<DefaultRule>) -> Self {
        Self {
            universe,
            rules,
            extra: Vec::new(),
        }
    }

    /// Rules at value 1 followed by the extra entries.
    pub fn assessment(&self) -> Result<ConditionalAssessment> {
        let mut a = ConditionalAssessment::new(self.universe.clone());
        for rule in &self.rules {
            a.push(rule.event(), Rational::one())?;
        }
        for entry in &self.extra {
            a.push(entry.event.clone(), entry.value.clone())?;
        }
        Ok(a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BooleanConsistency {
    Consistent,
    /// Indices (into `rules`) of a subset violating the criterion, minimal
    /// under removal of single rules.
    Violated(Vec<usize>),
}

impl BooleanConsistency {
    pub fn is_consistent(&self) -> bool {
        matches!(self, BooleanConsistency::Consistent)
    }
}

const MAX_SUBSET_RULES: usize = 24;

struct RuleSets {
    verified: Vec<FixedBitSet>,
    falsified: Vec<FixedBitSet>,
    len: usize,
}

impl RuleSets {
    fn new(kb: &DefaultKb) -> Result<Self> {
        let events: Vec<Formula> = kb
            .rules
            .iter()
            .flat_map(|r| {
                [
                    r.consequent.clone().and(r.antecedent.clone()),
                    r.consequent.negated().and(r.antecedent.clone()),
                ]
            })
            .collect();
        let atoms = kb.universe.atoms(&events)?;
        Ok(Self {
            verified: (0..kb.rules.len()).map(|k| atoms.event_set(2 * k)).collect(),
            falsified: (0..kb.rules.len()).map(|k| atoms.event_set(2 * k + 1)).collect(),
            len: atoms.len(),
        })
    }

    fn violates(&self, subset: &[usize]) -> bool {
        let mut verified = FixedBitSet::with_capacity(self.len);
        let mut falsified = FixedBitSet::with_capacity(self.len);
        for &k in subset {
            verified.union_with(&self.verified[k]);
            falsified.union_with(&self.falsified[k]);
        }
        verified.is_subset(&falsified)
    }
}

/// Boolean consistency criterion over every nonempty subset of rules.
/// Only defined for pure default bases (no extra entries).
pub fn consistent_boolean(kb: &DefaultKb) -> Result<BooleanConsistency> {
    if !kb.extra.is_empty() {
        return Err(Error::Precondition(
            "the Boolean criterion only covers pure default bases".into(),
        ));
    }
    let n = kb.rules.len();
    if n > MAX_SUBSET_RULES {
        return Err(Error::Precondition(format!(
            "{n} rules exceed the subset enumeration bound of {MAX_SUBSET_RULES}"
        )));
    }
    let sets = RuleSets::new(kb)?;
    for mask in 1u32..(1u32 << n) {
        let subset: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
        if sets.violates(&subset) {
            return Ok(BooleanConsistency::Violated(minimize_violation(&sets, subset)));
        }
    }
    Ok(BooleanConsistency::Consistent)
}

fn minimize_violation(sets: &RuleSets, mut subset: Vec<usize>) -> Vec<usize> {
    let mut k = 0;
    while k < subset.len() {
        let mut smaller = subset.clone();
        smaller.remove(k);
        if !smaller.is_empty() && sets.violates(&smaller) {
            subset = smaller;
        } else {
            k += 1;
        }
    }
    subset
}

/// Consistency as coherence of the rules at 1 together with the extra
/// entries.
pub fn consistent_coherence(kb: &DefaultKb) -> Result<Verdict> {
    check_coherence(&kb.assessment()?)
}

/// The layered witness from the Boolean criterion: at each step give
/// uniform mass to the atoms verifying some remaining rule while
/// falsifying none, then drop the rules whose antecedent got mass.
///
/// Returns one distribution per layer over the atoms of `atoms`, or `None`
/// when some step finds no such atom. Atoms are those generated by
/// `E_1, H_1, …, E_n, H_n`, matching [`check_coherence`] on
/// [`DefaultKb::assessment`].
pub fn boolean_witness_layers(kb: &DefaultKb) -> Result<Option<Vec<Vec<Rational>>>> {
    let a = kb.assessment()?;
    let atoms = kb.universe.atoms(&a.events())?;
    let n = kb.rules.len();
    let mut h = Vec::with_capacity(n);
    let mut eh = Vec::with_capacity(n);
    for k in 0..n {
        let antecedent = atoms.event_set(2 * k + 1);
        let mut joint = atoms.event_set(2 * k);
        joint.intersect_with(&antecedent);
        h.push(antecedent);
        eh.push(joint);
    }
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut layers = Vec::new();
    while !remaining.is_empty() {
        let mut good = atoms.empty_set();
        let mut bad = atoms.empty_set();
        for &k in &remaining {
            good.union_with(&eh[k]);
            let mut falsified = h[k].clone();
            falsified.difference_with(&eh[k]);
            bad.union_with(&falsified);
        }
        good.difference_with(&bad);
        let count = good.count_ones(..);
        if count == 0 {
            return Ok(None);
        }
        let weight = Rational::from_integer(count).recip();
        let mut layer = vec![Rational::zero(); atoms.len()];
        for r in good.ones() {
            layer[r] = weight.clone();
        }
        remaining.retain(|&k| h[k].is_disjoint(&good));
        layers.push(layer);
    }
    Ok(Some(layers))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entailment {
    pub entailed: bool,
    pub interval: CoherentInterval,
}

/// Whether `kb` entails `rule`, i.e. 1 is the only coherent value of the
/// rule's conditional event. Refuses inconsistent bases.
pub fn entails(kb: &DefaultKb, rule: &DefaultRule) -> Result<Entailment> {
    let assessment = kb.assessment()?;
    if !check_coherence(&assessment)?.is_coherent() {
        return Err(Error::InconsistentKb);
    }
    let interval = coherent_interval(&assessment, &rule.event())?;
    Ok(Entailment {
        entailed: interval.is_certainly_one(),
        interval,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleSchema {
    Reflexivity,
    LeftLogicalEquivalence,
    RightWeakening,
    Cut,
    CautiousMonotonicity,
    Equivalence,
    And,
    Or,
    Monotonicity,
    Transitivity,
    Contraposition,
    NegationRationality,
    DisjunctiveRationality,
    RationalMonotonicity,
}

/// How a schema is expected to behave.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemaKind {
    /// The conclusion is entailed whenever the premises are consistent.
    Sound,
    /// Entailment can fail; instances serve as counterexample probes.
    Unsound,
    /// Premises are non-memberships; the conclusion is a non-entailment.
    Rationality,
}

impl RuleSchema {
    pub const ALL: [RuleSchema; 14] = [
        RuleSchema::Reflexivity,
        RuleSchema::LeftLogicalEquivalence,
        RuleSchema::RightWeakening,
        RuleSchema::Cut,
        RuleSchema::CautiousMonotonicity,
        RuleSchema::Equivalence,
        RuleSchema::And,
        RuleSchema::Or,
        RuleSchema::Monotonicity,
        RuleSchema::Transitivity,
        RuleSchema::Contraposition,
        RuleSchema::NegationRationality,
        RuleSchema::DisjunctiveRationality,
        RuleSchema::RationalMonotonicity,
    ];

    pub const SOUND: [RuleSchema; 8] = [
        RuleSchema::Reflexivity,
        RuleSchema::LeftLogicalEquivalence,
        RuleSchema::RightWeakening,
        RuleSchema::Cut,
        RuleSchema::CautiousMonotonicity,
        RuleSchema::Equivalence,
        RuleSchema::And,
        RuleSchema::Or,
    ];

    pub fn kind(self) -> SchemaKind {
        use RuleSchema::*;
        match self {
            Monotonicity | Transitivity | Contraposition => SchemaKind::Unsound,
            NegationRationality | DisjunctiveRationality | RationalMonotonicity => SchemaKind::Rationality,
            _ => SchemaKind::Sound,
        }
    }

    pub fn name(self) -> &'static str {
        use RuleSchema::*;
        match self {
            Reflexivity => "reflexivity",
            LeftLogicalEquivalence => "left-logical-equivalence",
            RightWeakening => "right-weakening",
            Cut => "cut",
            CautiousMonotonicity => "cautious-monotonicity",
            Equivalence => "equivalence",
            And => "and",
            Or => "or",
            Monotonicity => "monotonicity",
            Transitivity => "transitivity",
            Contraposition => "contraposition",
            NegationRationality => "negation-rationality",
            DisjunctiveRationality => "disjunctive-rationality",
            RationalMonotonicity => "rational-monotonicity",
        }
    }
}

impl fmt::Display for RuleSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleSchema {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        RuleSchema::ALL
            .into_iter()
            .find(|schema| schema.name() == key || schema.name().replace('-', "") == key)
            .ok_or_else(|| format!("unknown rule schema `{s}`"))
    }
}

/// Formulas substituted for the schema letters `A`, `B`, `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaInstance {
    pub a: Formula,
    pub b: Formula,
    pub c: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaReport {
    pub schema: RuleSchema,
    /// False when a side condition (`A = B`, `A ⊆ B`) fails or some
    /// antecedent is impossible; nothing else is evaluated then.
    pub applicable: bool,
    pub note: Option<String>,
    /// Premise rules added to the base (sound and unsound schemas).
    pub premises: Vec<DefaultRule>,
    pub premises_consistent: Option<bool>,
    /// For rationality schemas: rules required to be outside `Δ`, read as
    /// "the coherent interval of the rule's event has `hi < 1`".
    pub non_members: Vec<(DefaultRule, CoherentInterval)>,
    pub conclusion: DefaultRule,
    pub conclusion_interval: Option<CoherentInterval>,
    pub conclusion_entailed: Option<bool>,
}

impl SchemaReport {
    /// Whether the instance conforms to the schema: for sound and unsound
    /// schemas, consistent premises entail the conclusion; for rationality
    /// schemas, satisfied premises leave the conclusion unentailed. `None`
    /// when the instance does not apply.
    pub fn holds(&self) -> Option<bool> {
        if !self.applicable {
            return None;
        }
        match self.schema.kind() {
            SchemaKind::Sound | SchemaKind::Unsound => match self.premises_consistent {
                Some(true) => self.conclusion_entailed,
                _ => None,
            },
            SchemaKind::Rationality => {
                let premises_hold = self.non_members.iter().all(|(_, i)| i.hi < Rational::one());
                if premises_hold {
                    self.conclusion_entailed.map(|e| !e)
                } else {
                    None
                }
            }
        }
    }
}

/// Instantiates `schema` with `instance` on top of the background base
/// `kb` and evaluates its conclusion.
pub fn check_rule_schema(kb: &DefaultKb, schema: RuleSchema, instance: &SchemaInstance) -> Result<SchemaReport> {
    use RuleSchema::*;
    let (a, b, c) = (&instance.a, &instance.b, &instance.c);
    let rule = |h: &Formula, e: &Formula| DefaultRule::new(h.clone(), e.clone());
    let and = |x: &Formula, y: &Formula| x.clone().and(y.clone());
    let u = &kb.universe;

    let side_condition = match schema {
        LeftLogicalEquivalence => Some((u.equivalent(a, b)?, "A = B")),
        RightWeakening | Monotonicity => Some((u.implies(a, b)?, "A ⊆ B")),
        _ => None,
    };
    let (premises, non_members, conclusion) = match schema {
        Reflexivity => (vec![], vec![], rule(a, a)),
        LeftLogicalEquivalence => (vec![rule(a, c)], vec![], rule(b, c)),
        RightWeakening => (vec![rule(c, a)], vec![], rule(c, b)),
        Cut => (vec![rule(&and(a, b), c), rule(a, b)], vec![], rule(a, c)),
        CautiousMonotonicity => (vec![rule(a, b), rule(a, c)], vec![], rule(&and(a, b), c)),
        Equivalence => (vec![rule(a, b), rule(b, a), rule(a, c)], vec![], rule(b, c)),
        And => (vec![rule(a, b), rule(a, c)], vec![], rule(a, &and(b, c))),
        Or => (vec![rule(a, c), rule(b, c)], vec![], rule(&a.clone().or(b.clone()), c)),
        Monotonicity => (vec![rule(b, c)], vec![], rule(a, c)),
        Transitivity => (vec![rule(a, b), rule(b, c)], vec![], rule(a, c)),
        Contraposition => (vec![rule(a, b)], vec![], rule(&b.negated(), &a.negated())),
        NegationRationality => (
            vec![],
            vec![rule(&and(a, c), b), rule(&and(a, &c.negated()), b)],
            rule(a, b),
        ),
        DisjunctiveRationality => (vec![], vec![rule(a, c), rule(b, c)], rule(&a.clone().or(b.clone()), c)),
        RationalMonotonicity => (vec![], vec![rule(&and(a, b), c), rule(a, &b.negated())], rule(a, c)),
    };

    let mut report = SchemaReport {
        schema,
        applicable: true,
        note: None,
        premises: premises.clone(),
        premises_consistent: None,
        non_members: Vec::new(),
        conclusion: conclusion.clone(),
        conclusion_interval: None,
        conclusion_entailed: None,
    };
    if let Some((false, condition)) = side_condition {
        report.applicable = false;
        report.note = Some(format!("side condition {condition} fails"));
        return Ok(report);
    }
    for r in premises.iter().chain(&non_members).chain(std::iter::once(&conclusion)) {
        if !u.is_possible(&r.antecedent)? {
            report.applicable = false;
            report.note = Some(format!("antecedent `{}` is impossible", r.antecedent.display(u.vocab())));
            return Ok(report);
        }
    }

    let mut extended = kb.clone();
    extended.rules.extend(premises);
    let assessment = extended.assessment()?;
    let consistent = check_coherence(&assessment)?.is_coherent();
    report.premises_consistent = Some(consistent);
    if !consistent {
        report.note = Some("premises are inconsistent with the base".into());
        return Ok(report);
    }
    for r in non_members {
        let interval = coherent_interval(&assessment, &r.event())?;
        report.non_members.push((r, interval));
    }
    if schema.kind() == SchemaKind::Rationality {
        report.note = Some("a rule outside the base is read as: its coherent interval has hi < 1".into());
    }
    let interval = coherent_interval(&assessment, &conclusion.event())?;
    report.conclusion_entailed = Some(interval.is_certainly_one());
    report.conclusion_interval = Some(interval);
    Ok(report)
}
