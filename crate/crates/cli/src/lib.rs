//! The `ccp` command-line tool.

pub mod args;
pub mod report;

use std::path::Path;

use ccp_core::{
    check_coherence, check_rule_schema, coherent_interval, conditional_zero_layer, consistent_boolean,
    consistent_coherence, entails, format_rational, parse_kb, parse_rational, BooleanConsistency, ConditionalEvent,
    DefaultKb, DefaultRule, Error, Formula, KbOptions, KnowledgeBase, ParseError, Query, RuleSchema, SchemaInstance,
    SchemaKind, SchemaReport, Universe, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use args::{Cli, Command, Format, GlobalArgs, RulesArgs};
use report::*;

pub const EXIT_POSITIVE: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

/// An input problem: unreadable or malformed file or argument, exceeded
/// bound, or a query the base cannot answer.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

pub struct Output {
    pub text: String,
    pub code: u8,
}

pub fn run(cli: &Cli) -> Result<Output, InputError> {
    let g = &cli.global;
    match &cli.command {
        Command::Check { kb } => emit(&check(&load(kb, g)?)?, g.format),
        Command::Extend { kb, event } => emit(&extend(&load(kb, g)?, event.as_deref())?, g.format),
        Command::Entails { kb, rule } => emit(&entailment(&load(kb, g)?, rule.as_deref())?, g.format),
        Command::Defaults { kb } => emit(&defaults(&load(kb, g)?)?, g.format),
        Command::Rules(args) => {
            let kb = load(&args.kb, g)?;
            let schema: RuleSchema = args.schema.parse().map_err(InputError)?;
            match args.random {
                Some(count) => emit(&random_rules(&kb, schema, count, g.seed)?, g.format),
                None => emit(&rules(&kb, schema, args)?, g.format),
            }
        }
        Command::Atoms { kb } => emit(&atoms(&load(kb, g)?)?, g.format),
    }
}

fn emit<R: Report>(report: &R, format: Format) -> Result<Output, InputError> {
    let text = match format {
        Format::Human => report.human(),
        Format::Json => to_json(report),
    };
    let code = if report.positive() { EXIT_POSITIVE } else { EXIT_NEGATIVE };
    Ok(Output { text, code })
}

fn load(path: &Path, g: &GlobalArgs) -> Result<KnowledgeBase, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let alpha = match &g.alpha {
        Some(value) => {
            Some(parse_rational(value).ok_or_else(|| InputError(format!("--alpha: `{value}` is not a rational")))?)
        }
        None => None,
    };
    let options = KbOptions {
        max_props: g.max_props,
        alpha,
    };
    parse_kb(&text, &options).map_err(|e| InputError(format!("{}:{e}", path.display())))
}

fn argument_error(what: &str, text: &str, e: ParseError) -> InputError {
    InputError(format!("{what} `{text}`: {e}"))
}

fn atom_rows(universe: &Universe, table: &ccp_core::AtomTable) -> Vec<AtomRow> {
    table
        .atoms()
        .iter()
        .enumerate()
        .map(|(index, atom)| AtomRow {
            index,
            signature: table.signature_string(index),
            witnesses: atom.witnesses.iter().map(|w| w.describe(universe.vocab())).collect(),
        })
        .collect()
}

fn event_names(universe: &Universe, events: &[Formula]) -> Vec<String> {
    events.iter().map(|e| e.display(universe.vocab()).to_string()).collect()
}

pub fn check(kb: &KnowledgeBase) -> Result<CheckReport, InputError> {
    let u = &kb.universe;
    let a = &kb.assessment;
    let verdict = check_coherence(a)?;
    let events = a.events();
    let table = u.atoms(&events)?;
    let mut entries: Vec<EntryRow> = a
        .entries()
        .iter()
        .map(|e| EntryRow {
            event: e.event.display(u.vocab()),
            value: format_rational(&e.value),
            layer: None,
            ord: None,
            ord_negated: None,
        })
        .collect();
    let mut report = CheckReport {
        coherent: verdict.is_coherent(),
        failed_layer: None,
        events: event_names(u, &events),
        entries: Vec::new(),
        atoms: atom_rows(u, &table),
        layers: Vec::new(),
        atom_ranks: Vec::new(),
    };
    match verdict {
        Verdict::Incoherent { layer } => report.failed_layer = Some(layer),
        Verdict::Coherent(class) => {
            for ((row, entry), &layer) in entries.iter_mut().zip(a.entries()).zip(class.resolution()) {
                let negated = ConditionalEvent::new(entry.event.consequent.negated(), entry.event.conditioning.clone());
                row.layer = Some(layer);
                row.ord = Some(conditional_zero_layer(&class, &entry.event)?.into());
                row.ord_negated = Some(conditional_zero_layer(&class, &negated)?.into());
            }
            report.layers = class
                .layers()
                .iter()
                .enumerate()
                .map(|(index, layer)| LayerRow {
                    index,
                    support: layer.support.clone(),
                    probabilities: layer.probabilities.iter().map(format_rational).collect(),
                })
                .collect();
            report.atom_ranks = class.zero_layers().atom_ranks.into_iter().map(RankOut::from).collect();
        }
    }
    report.entries = entries;
    Ok(report)
}

fn query_events(kb: &KnowledgeBase) -> Vec<ConditionalEvent> {
    kb.queries
        .iter()
        .map(|q| match q {
            Query::Conditional(event) => event.clone(),
            Query::Rule(rule) => rule.event(),
        })
        .collect()
}

fn require_queries<T>(items: Vec<T>, what: &str) -> Result<Vec<T>, InputError> {
    if items.is_empty() {
        Err(InputError(format!("no {what} given and the file has no query lines")))
    } else {
        Ok(items)
    }
}

pub fn extend(kb: &KnowledgeBase, event: Option<&str>) -> Result<ExtendReport, InputError> {
    let u = &kb.universe;
    let targets = match event {
        Some(text) => vec![u.vocab().parse_conditional(text).map_err(|e| argument_error("event", text, e))?],
        None => require_queries(query_events(kb), "event")?,
    };
    let mut results = Vec::new();
    for target in targets {
        let interval = coherent_interval(&kb.assessment, &target)?;
        results.push(IntervalRow {
            event: target.display(u.vocab()),
            lo: format_rational(&interval.lo),
            hi: format_rational(&interval.hi),
        });
    }
    Ok(ExtendReport {
        results,
        from_argument: event.is_some(),
    })
}

pub fn entailment(kb: &KnowledgeBase, rule: Option<&str>) -> Result<EntailsReport, InputError> {
    let u = &kb.universe;
    let rules = match rule {
        Some(text) => vec![DefaultRule::parse(text, u.vocab()).map_err(|e| argument_error("rule", text, e))?],
        None => {
            let events = query_events(kb);
            require_queries(events.into_iter().map(|e| DefaultRule::new(e.conditioning, e.consequent)).collect(), "rule")?
        }
    };
    let mut results = Vec::new();
    for rule in rules {
        let e = entails(&kb.defaults, &rule)?;
        results.push(EntailmentRow {
            rule: rule.display(u.vocab()),
            entailed: e.entailed,
            lo: format_rational(&e.interval.lo),
            hi: format_rational(&e.interval.hi),
        });
    }
    Ok(EntailsReport {
        results,
        from_argument: rule.is_some(),
    })
}

pub fn defaults(kb: &KnowledgeBase) -> Result<DefaultsReport, InputError> {
    let d = &kb.defaults;
    let v = kb.universe.vocab();
    let boolean_criterion = if d.extra.is_empty() {
        match consistent_boolean(d)? {
            BooleanConsistency::Consistent => BooleanCriterion {
                applicable: true,
                consistent: Some(true),
                violating: Vec::new(),
            },
            BooleanConsistency::Violated(subset) => BooleanCriterion {
                applicable: true,
                consistent: Some(false),
                violating: subset,
            },
        }
    } else {
        BooleanCriterion {
            applicable: false,
            consistent: None,
            violating: Vec::new(),
        }
    };
    let verdict = consistent_coherence(d)?;
    if let Some(boolean) = boolean_criterion.consistent {
        if boolean != verdict.is_coherent() {
            return Err(InputError(
                "internal error: the Boolean criterion and the coherence check disagree".into(),
            ));
        }
    }
    Ok(DefaultsReport {
        consistent: verdict.is_coherent(),
        rules: d.rules.iter().map(|r| r.display(v)).collect(),
        extra: d
            .extra
            .iter()
            .map(|e| format!("P({}) = {}", e.event.display(v), format_rational(&e.value)))
            .collect(),
        boolean_criterion,
        coherence_layers: verdict.agreeing_class().map(|c| c.layers().len()),
        failed_layer: match verdict {
            Verdict::Incoherent { layer } => Some(layer),
            Verdict::Coherent(_) => None,
        },
    })
}

fn kind_name(kind: SchemaKind) -> &'static str {
    match kind {
        SchemaKind::Sound => "sound",
        SchemaKind::Unsound => "can fail",
        SchemaKind::Rationality => "rationality property",
    }
}

/// Letters the schema mentions; the others default to `true`.
fn letters(schema: RuleSchema) -> &'static [char] {
    match schema {
        RuleSchema::Reflexivity => &['a'],
        RuleSchema::Contraposition => &['a', 'b'],
        _ => &['a', 'b', 'c'],
    }
}

fn schema_row(kb: &DefaultKb, instance: &SchemaInstance, report: SchemaReport) -> SchemaRow {
    let v = kb.universe.vocab();
    let holds = report.holds();
    SchemaRow {
        schema: report.schema.name().to_string(),
        kind: kind_name(report.schema.kind()).to_string(),
        a: instance.a.display(v).to_string(),
        b: instance.b.display(v).to_string(),
        c: instance.c.display(v).to_string(),
        applicable: report.applicable,
        note: report.note,
        premises: report.premises.iter().map(|r| r.display(v)).collect(),
        premises_consistent: report.premises_consistent,
        non_members: report
            .non_members
            .iter()
            .map(|(rule, interval)| NonMemberRow {
                rule: rule.display(v),
                lo: format_rational(&interval.lo),
                hi: format_rational(&interval.hi),
                below_one: interval.hi < ccp_core::Rational::from(1),
            })
            .collect(),
        conclusion: report.conclusion.display(v),
        conclusion_interval: report
            .conclusion_interval
            .map(|i| [format_rational(&i.lo), format_rational(&i.hi)]),
        conclusion_entailed: report.conclusion_entailed,
        holds,
    }
}

pub fn rules(kb: &KnowledgeBase, schema: RuleSchema, args: &RulesArgs) -> Result<RulesReport, InputError> {
    let u = &kb.universe;
    let needed = letters(schema);
    let formula = |letter: char, value: &Option<String>| -> Result<Formula, InputError> {
        match value {
            Some(text) => u.parse(text).map_err(|e| argument_error(&format!("--{letter}"), text, e)),
            None if needed.contains(&letter) => Err(InputError(format!("{} needs --{letter}", schema.name()))),
            None => Ok(Formula::True),
        }
    };
    let instance = SchemaInstance {
        a: formula('a', &args.a)?,
        b: formula('b', &args.b)?,
        c: formula('c', &args.c)?,
    };
    let report = check_rule_schema(&kb.defaults, schema, &instance)?;
    Ok(RulesReport {
        instance: schema_row(&kb.defaults, &instance, report),
    })
}

/// A literal, a conjunction or disjunction of two literals, or `true`.
fn random_formula(rng: &mut ChaCha8Rng, props: usize) -> Formula {
    let literal = |rng: &mut ChaCha8Rng| {
        let p = Formula::prop(rng.random_range(0..props));
        if rng.random_bool(0.5) {
            p.not()
        } else {
            p
        }
    };
    match rng.random_range(0..8) {
        0 => Formula::True,
        1..=4 => literal(rng),
        5 | 6 => {
            let x = literal(rng);
            x.and(literal(rng))
        }
        _ => {
            let x = literal(rng);
            x.or(literal(rng))
        }
    }
}

pub fn random_rules(
    kb: &KnowledgeBase,
    schema: RuleSchema,
    count: usize,
    seed: u64,
) -> Result<RandomRulesReport, InputError> {
    let props = kb.universe.vocab().len();
    if props == 0 {
        return Err(InputError("random instances need at least one proposition".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = RandomRulesReport {
        schema: schema.name().to_string(),
        kind: kind_name(schema.kind()).to_string(),
        seed,
        instances: count,
        applicable: 0,
        held: 0,
        failed: Vec::new(),
    };
    for _ in 0..count {
        let instance = SchemaInstance {
            a: random_formula(&mut rng, props),
            b: random_formula(&mut rng, props),
            c: random_formula(&mut rng, props),
        };
        let report = check_rule_schema(&kb.defaults, schema, &instance)?;
        match report.holds() {
            Some(true) => {
                summary.applicable += 1;
                summary.held += 1;
            }
            Some(false) => {
                summary.applicable += 1;
                summary.failed.push(schema_row(&kb.defaults, &instance, report));
            }
            None => {}
        }
    }
    Ok(summary)
}

pub fn atoms(kb: &KnowledgeBase) -> Result<AtomsReport, InputError> {
    let u = &kb.universe;
    let events = kb.assessment.events();
    let table = u.atoms(&events)?;
    Ok(AtomsReport {
        events: event_names(u, &events),
        atoms: atom_rows(u, &table),
    })
}
