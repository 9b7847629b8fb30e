//! Knowledge-base text format.
//!
//! ```text
//! # comment
//! prop penguin bird tweety fly
//! axiom penguin -> bird
//! assess "~fly | penguin" = 1
//! assess "e3 | true" = alpha
//! default "tweety => penguin"
//! query "fly | tweety"
//! ```
//!
//! Propositions must be declared before use. Values are `n`, `n/d`, exact
//! decimals, or `alpha` (bound from [`KbOptions::alpha`]). `assess` lines
//! with value 1 and `default` lines form the default rules; other `assess`
//! lines are the extra entries of the base.

use std::fmt;

use num_traits::One;

use crate::coherence::{ConditionalAssessment, Entry};
use crate::defaults::{DefaultKb, DefaultRule};
use crate::logic::{ConditionalEvent, ParseError, Universe, Vocabulary, DEFAULT_MAX_PROPS};
use crate::rational::{format_rational, in_unit_interval};
use crate::{parse_rational, Error, Rational};

#[derive(Clone, Debug)]
pub struct KbOptions {
    pub max_props: usize,
    pub alpha: Option<Rational>,
}

impl Default for KbOptions {
    fn default() -> Self {
        Self {
            max_props: DEFAULT_MAX_PROPS,
            alpha: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct KbError {
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters of the line.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for KbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Conditional(ConditionalEvent),
    Rule(DefaultRule),
}

#[derive(Clone, Debug)]
pub struct KnowledgeBase {
    pub universe: Universe,
    pub assessment: ConditionalAssessment,
    pub defaults: DefaultKb,
    pub queries: Vec<Query>,
}

struct Pending {
    line: usize,
    column: usize,
    event: ConditionalEvent,
    value: Rational,
    is_rule: bool,
}

pub fn parse_kb(text: &str, options: &KbOptions) -> Result<KnowledgeBase, KbError> {
    let mut vocab = Vocabulary::new();
    let mut axioms = Vec::new();
    let mut pending: Vec<Pending> = Vec::new();
    let mut queries = Vec::new();
    let mut last_prop_line = 0;

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let err = |byte: usize, message: String| KbError {
            line: line_no,
            column: raw[..byte.min(raw.len())].chars().count() + 1,
            message,
        };
        let line = strip_comment(raw);
        let start = line.len() - line.trim_start().len();
        let line = line.trim_end();
        if line.trim().is_empty() {
            continue;
        }
        let keyword_end = line[start..].find(char::is_whitespace).map_or(line.len(), |i| start + i);
        let keyword = &line[start..keyword_end];
        let rest_start = keyword_end;
        match keyword {
            "prop" => {
                let mut pos = rest_start;
                let mut any = false;
                for word in line[rest_start..].split_whitespace() {
                    let at = line[pos..].find(word).map_or(pos, |i| pos + i);
                    vocab.declare(word).map_err(|_| err(at, format!("invalid proposition name `{word}`")))?;
                    pos = at + word.len();
                    any = true;
                }
                if !any {
                    return Err(err(keyword_end, "expected proposition names".into()));
                }
                last_prop_line = line_no;
            }
            "axiom" => {
                let body = &line[rest_start..];
                let formula = vocab.parse(body).map_err(|e| formula_error(&err, rest_start, e))?;
                axioms.push(formula);
            }
            "assess" | "default" | "query" => {
                let (open, close) = quoted(line, rest_start).ok_or_else(|| err(rest_start, "expected a quoted event".into()))?;
                let inner = &line[open + 1..close];
                let tail = line[close + 1..].trim();
                let tail_at = close + 1 + (line[close + 1..].len() - line[close + 1..].trim_start().len());
                match keyword {
                    "assess" => {
                        let event = vocab
                            .parse_conditional(inner)
                            .map_err(|e| formula_error(&err, open + 1, e))?;
                        let Some(value_text) = tail.strip_prefix('=') else {
                            return Err(err(tail_at, "expected `= <value>`".into()));
                        };
                        let value_at = tail_at + 1 + (value_text.len() - value_text.trim_start().len());
                        let value_text = value_text.trim();
                        let value = if value_text == "alpha" {
                            options
                                .alpha
                                .clone()
                                .ok_or_else(|| err(value_at, "`alpha` used but no value was supplied".into()))?
                        } else {
                            parse_rational(value_text)
                                .ok_or_else(|| err(value_at, format!("invalid value `{value_text}`")))?
                        };
                        if !in_unit_interval(&value) {
                            return Err(err(value_at, format!("value {} outside [0, 1]", format_rational(&value))));
                        }
                        pending.push(Pending {
                            line: line_no,
                            column: raw[..open + 1].chars().count() + 1,
                            is_rule: value.is_one(),
                            event,
                            value,
                        });
                    }
                    "default" => {
                        expect_end(tail, tail_at, &err)?;
                        let rule = DefaultRule::parse(inner, &vocab).map_err(|e| formula_error(&err, open + 1, e))?;
                        pending.push(Pending {
                            line: line_no,
                            column: raw[..open + 1].chars().count() + 1,
                            event: rule.event(),
                            value: Rational::one(),
                            is_rule: true,
                        });
                    }
                    _ => {
                        expect_end(tail, tail_at, &err)?;
                        let query = if inner.contains("=>") {
                            Query::Rule(DefaultRule::parse(inner, &vocab).map_err(|e| formula_error(&err, open + 1, e))?)
                        } else {
                            Query::Conditional(
                                vocab
                                    .parse_conditional(inner)
                                    .map_err(|e| formula_error(&err, open + 1, e))?,
                            )
                        };
                        queries.push(query);
                    }
                }
            }
            other => return Err(err(start, format!("unknown statement `{other}`"))),
        }
    }

    let mut universe = Universe::with_axioms(vocab, axioms);
    universe.set_max_props(options.max_props);
    let worlds = universe.worlds().map_err(|e| KbError {
        line: last_prop_line.max(1),
        column: 1,
        message: e.to_string(),
    })?;
    if worlds.is_empty() {
        return Err(KbError {
            line: 1,
            column: 1,
            message: "the axioms are contradictory".into(),
        });
    }

    let world_set = |f: &crate::Formula| -> Vec<bool> { worlds.iter().map(|&w| f.eval(w)).collect() };
    let mut assessment = ConditionalAssessment::new(universe.clone());
    let mut defaults = DefaultKb::new(universe.clone());
    let mut seen: Vec<(Vec<bool>, Vec<bool>, Rational, usize)> = Vec::new();
    for p in pending {
        let at = |message: String| KbError {
            line: p.line,
            column: p.column,
            message,
        };
        let h = world_set(&p.event.conditioning);
        if !h.iter().any(|&b| b) {
            return Err(at(format!(
                "impossible conditioning event `{}`",
                p.event.conditioning.display(universe.vocab())
            )));
        }
        let eh = world_set(&p.event.joint());
        if let Some((.., value, line)) = seen.iter().find(|(sh, seh, ..)| *sh == h && *seh == eh) {
            if *value != p.value {
                return Err(at(format!(
                    "conflicting value {} for an event assessed at {} on line {line}",
                    format_rational(&p.value),
                    format_rational(value)
                )));
            }
        }
        seen.push((h, eh, p.value.clone(), p.line));
        assessment.push(p.event.clone(), p.value.clone()).map_err(|e: Error| at(e.to_string()))?;
        if p.is_rule {
            defaults.rules.push(DefaultRule::new(p.event.conditioning, p.event.consequent));
        } else {
            defaults.extra.push(Entry {
                event: p.event,
                value: p.value,
            });
        }
    }

    Ok(KnowledgeBase {
        universe,
        assessment,
        defaults,
        queries,
    })
}

fn formula_error(err: &impl Fn(usize, String) -> KbError, base: usize, e: ParseError) -> KbError {
    err(base + e.offset, e.kind.to_string())
}

fn expect_end(tail: &str, at: usize, err: &impl Fn(usize, String) -> KbError) -> Result<(), KbError> {
    if tail.is_empty() {
        Ok(())
    } else {
        Err(err(at, format!("unexpected `{tail}`")))
    }
}

/// Byte positions of the first quoted span at or after `from`.
fn quoted(line: &str, from: usize) -> Option<(usize, usize)> {
    let open = from + line[from..].find('"')?;
    if !line[from..open].trim().is_empty() {
        return None;
    }
    let close = open + 1 + line[open + 1..].find('"')?;
    Some((open, close))
}

fn strip_comment(line: &str) -> &str {
    let mut in_quotes = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_quotes = !in_quotes,
            '#' if !in_quotes => return &line[..i],
            _ => {}
        }
    }
    line
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Formula;

    fn parse(text: &str) -> Result<KnowledgeBase, KbError> {
        parse_kb(text, &KbOptions::default())
    }

    #[test]
    fn assess_line_becomes_entry_and_rule() {
        let kb = parse("prop penguin bird\nassess \"bird | penguin\" = 1\n").unwrap();
        let entry = &kb.assessment.entries()[0];
        assert_eq!(entry.event.consequent, Formula::prop(1));
        assert_eq!(entry.event.conditioning, Formula::prop(0));
        assert_eq!(entry.value, Rational::one());
        assert_eq!(kb.defaults.rules.len(), 1);
        assert!(kb.defaults.extra.is_empty());
    }

    #[test]
    fn sure_conditioning_and_fractions() {
        let kb = parse("prop e3\nassess \"e3 | true\" = 1/3 # trailing\n").unwrap();
        let entry = &kb.assessment.entries()[0];
        assert_eq!(entry.event.conditioning, Formula::True);
        assert_eq!(entry.value, Rational::new(1, 3));
        assert_eq!(kb.defaults.extra.len(), 1);
    }

    #[test]
    fn impossible_conditioning_is_rejected() {
        let err = parse("prop x\nassess \"x | false\" = 1\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("impossible"), "{err}");
    }

    #[test]
    fn impossible_under_axioms_is_rejected() {
        let err = parse("prop a b\naxiom a -> b\nassess \"b | a & ~b\" = 1\n").unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn conflicting_duplicates_are_rejected() {
        let text = "prop a b\nassess \"a | b\" = 1/2\nassess \"a & b | b\" = 1/3\n";
        let err = parse(text).unwrap_err();
        assert_eq!(err.line, 3);
        // Same value is fine.
        parse("prop a b\nassess \"a | b\" = 1/2\nassess \"a & b | b\" = 0.5\n").unwrap();
    }

    #[test]
    fn diagnostics_carry_columns() {
        let err = parse("prop a\nassess \"a | zz\" = 1\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 13));
        let err = parse("prop a\naxiom a &\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 10));
        let err = parse("prop a\nfrobnicate a\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 1));
        let err = parse("prop a\nassess \"a | a\" = 3/2\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 18));
    }

    #[test]
    fn alpha_requires_a_binding() {
        let text = "prop e\nassess \"e | true\" = alpha\n";
        assert!(parse(text).is_err());
        let kb = parse_kb(
            text,
            &KbOptions {
                alpha: Some(Rational::new(1, 4)),
                ..KbOptions::default()
            },
        )
        .unwrap();
        assert_eq!(kb.assessment.entries()[0].value, Rational::new(1, 4));
    }

    #[test]
    fn defaults_and_queries() {
        let kb = parse("prop t f\ndefault \"t => ~f\"\nquery \"f | t\"\nquery \"t => f\"\n").unwrap();
        assert_eq!(kb.defaults.rules[0], DefaultRule::new(Formula::prop(0), Formula::prop(1).not()));
        assert!(matches!(kb.queries[0], Query::Conditional(_)));
        assert!(matches!(kb.queries[1], Query::Rule(_)));
    }

    #[test]
    fn props_must_be_declared_first() {
        let err = parse("axiom a\nprop a\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("unregistered"));
    }

    #[test]
    fn proposition_bound() {
        let err = parse_kb(
            "prop a b c\n",
            &KbOptions {
                max_props: 2,
                alpha: None,
            },
        )
        .unwrap_err();
        assert!(err.message.contains("exceed"));
    }
}
