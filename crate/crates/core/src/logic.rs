//! Propositional formulas, world enumeration and the atoms generated by a
//! list of events.
//!
//! Formula syntax: identifiers `[A-Za-z_][A-Za-z0-9_]*`, constants `true`
//! and `false`, `~` (not), `&` (and), `v` (or), `->` (implies) and
//! parentheses. Binding is `~` > `&` > `v` > `->`; `&` and `v` associate to
//! the left, `->` to the right. `v`, `true` and `false` are reserved and
//! cannot name propositions. The bar `|` only appears in conditional events
//! `E | H`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::Error;

/// Default bound on the number of propositions (2^16 worlds).
pub const DEFAULT_MAX_PROPS: usize = 16;
/// Worlds are packed into a `u64`, and enumeration beyond this is hopeless
/// anyway.
pub const HARD_MAX_PROPS: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Prop(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn prop(index: usize) -> Self {
        Formula::Prop(index)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    /// Complement `F^c`.
    pub fn negated(&self) -> Self {
        self.clone().not()
    }

    pub fn eval(&self, world: World) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Prop(i) => world.get(*i),
            Formula::Not(f) => !f.eval(world),
            Formula::And(a, b) => a.eval(world) && b.eval(world),
            Formula::Or(a, b) => a.eval(world) || b.eval(world),
            Formula::Implies(a, b) => !a.eval(world) || b.eval(world),
        }
    }

    /// Largest proposition index mentioned, if any.
    pub fn max_prop(&self) -> Option<usize> {
        match self {
            Formula::True | Formula::False => None,
            Formula::Prop(i) => Some(*i),
            Formula::Not(f) => f.max_prop(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.max_prop().max(b.max_prop())
            }
        }
    }

    pub fn display<'a>(&'a self, vocab: &'a Vocabulary) -> FormulaDisplay<'a> {
        FormulaDisplay {
            formula: self,
            vocab,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            _ => 4,
        }
    }
}

pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    vocab: &'a Vocabulary,
}

impl FormulaDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, formula: &Formula, min_prec: u8) -> fmt::Result {
        let parens = formula.precedence() < min_prec;
        if parens {
            f.write_str("(")?;
        }
        match formula {
            Formula::True => f.write_str("true")?,
            Formula::False => f.write_str("false")?,
            Formula::Prop(i) => match self.vocab.name(*i) {
                Some(name) => f.write_str(name)?,
                None => write!(f, "p{i}")?,
            },
            Formula::Not(inner) => {
                f.write_str("~")?;
                self.write(f, inner, 4)?;
            }
            Formula::And(a, b) => {
                self.write(f, a, 3)?;
                f.write_str(" & ")?;
                self.write(f, b, 4)?;
            }
            Formula::Or(a, b) => {
                self.write(f, a, 2)?;
                f.write_str(" v ")?;
                self.write(f, b, 3)?;
            }
            Formula::Implies(a, b) => {
                self.write(f, a, 2)?;
                f.write_str(" -> ")?;
                self.write(f, b, 1)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula, 1)
    }
}

/// Truth assignment to the registered propositions, bit `i` holding
/// proposition `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct World(pub u64);

impl World {
    pub fn get(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    /// Conjunction of literals, e.g. `a & ~b`.
    pub fn describe(self, vocab: &Vocabulary) -> String {
        if vocab.is_empty() {
            return "true".to_string();
        }
        (0..vocab.len())
            .map(|i| {
                let name = vocab.name(i).unwrap_or_default();
                if self.get(i) {
                    name.to_string()
                } else {
                    format!("~{name}")
                }
            })
            .collect::<Vec<_>>()
            .join(" & ")
    }
}

/// Registered proposition names, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vocabulary {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Result<Self, ParseError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut vocab = Self::new();
        for name in names {
            vocab.declare(name.as_ref())?;
        }
        Ok(vocab)
    }

    /// Registers `name` (idempotent) and returns its index.
    pub fn declare(&mut self, name: &str) -> Result<usize, ParseError> {
        if !is_identifier(name) || is_reserved(name) {
            return Err(ParseError::syntax(0, format!("`{name}` is not a valid proposition name")));
        }
        if let Some(&i) = self.index.get(name) {
            return Ok(i);
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        Ok(i)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, index: usize) -> Option<&str> {
        self.names.get(index).map(String::as_str)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn parse(&self, text: &str) -> Result<Formula, ParseError> {
        parse_formula(text, self)
    }

    /// Parses `text`, registering any new proposition names on the way.
    pub fn parse_declaring(&mut self, text: &str) -> Result<Formula, ParseError> {
        let mut resolve = |name: &str| self.declare(name).ok();
        Parser::new(text, &mut resolve)?.parse_all()
    }

    pub fn parse_conditional(&self, text: &str) -> Result<ConditionalEvent, ParseError> {
        let bars: Vec<usize> = text.match_indices('|').map(|(i, _)| i).collect();
        match bars.as_slice() {
            [bar] => {
                let consequent = self.parse(&text[..*bar])?;
                let conditioning = self
                    .parse(&text[bar + 1..])
                    .map_err(|e| e.shifted(bar + 1))?;
                Ok(ConditionalEvent {
                    consequent,
                    conditioning,
                })
            }
            [] => Err(ParseError::syntax(text.len(), "expected `E | H`")),
            [_, second, ..] => Err(ParseError::syntax(*second, "more than one `|`")),
        }
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_reserved(name: &str) -> bool {
    matches!(name, "v" | "true" | "false")
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at offset {offset}")]
pub struct ParseError {
    /// Byte offset into the parsed text.
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unregistered proposition `{0}`")]
    UnknownProposition(String),
}

impl ParseError {
    pub fn syntax(offset: usize, message: impl Into<String>) -> Self {
        Self {
            offset,
            kind: ParseErrorKind::Syntax(message.into()),
        }
    }

    pub fn shifted(mut self, by: usize) -> Self {
        self.offset += by;
        self
    }
}

/// Parses a formula whose propositions must all be registered in `vocab`.
pub fn parse_formula(text: &str, vocab: &Vocabulary) -> Result<Formula, ParseError> {
    let mut resolve = |name: &str| vocab.index_of(name);
    Parser::new(text, &mut resolve)?.parse_all()
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
    Eof,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let token = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'~' => Token::Not,
            b'&' => Token::And,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Implies
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                match &text[start..=i] {
                    "v" => Token::Or,
                    "true" => Token::True,
                    "false" => Token::False,
                    ident => Token::Ident(ident.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::syntax(start, format!("unexpected `{ch}`")));
            }
        };
        i += 1;
        tokens.push((start, token));
    }
    tokens.push((text.len(), Token::Eof));
    Ok(tokens)
}

struct Parser<'r> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    resolve: &'r mut dyn FnMut(&str) -> Option<usize>,
}

impl<'r> Parser<'r> {
    fn new(text: &str, resolve: &'r mut dyn FnMut(&str) -> Option<usize>) -> Result<Self, ParseError> {
        Ok(Self {
            tokens: tokenize(text)?,
            pos: 0,
            resolve,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let token = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        token
    }

    fn parse_all(mut self) -> Result<Formula, ParseError> {
        let formula = self.implication()?;
        match self.peek() {
            Token::Eof => Ok(formula),
            Token::RParen => Err(ParseError::syntax(self.offset(), "unbalanced `)`")),
            _ => Err(ParseError::syntax(self.offset(), "expected an operator")),
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Token::Implies {
            self.bump();
            let rhs = self.implication()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Token::Or {
            self.bump();
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Token::And {
            self.bump();
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let offset = self.offset();
        match self.bump() {
            Token::Not => Ok(self.unary()?.not()),
            Token::True => Ok(Formula::True),
            Token::False => Ok(Formula::False),
            Token::Ident(name) => match (self.resolve)(&name) {
                Some(i) => Ok(Formula::Prop(i)),
                None => Err(ParseError {
                    offset,
                    kind: ParseErrorKind::UnknownProposition(name),
                }),
            },
            Token::LParen => {
                let inner = self.implication()?;
                if *self.peek() != Token::RParen {
                    return Err(ParseError::syntax(self.offset(), "expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            Token::Eof => Err(ParseError::syntax(offset, "unexpected end of input")),
            other => Err(ParseError::syntax(offset, format!("unexpected {other:?}"))),
        }
    }
}

/// A conditional event `E | H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConditionalEvent {
    pub consequent: Formula,
    pub conditioning: Formula,
}

impl ConditionalEvent {
    pub fn new(consequent: Formula, conditioning: Formula) -> Self {
        Self {
            consequent,
            conditioning,
        }
    }

    /// `E & H`.
    pub fn joint(&self) -> Formula {
        self.consequent.clone().and(self.conditioning.clone())
    }

    pub fn display(&self, vocab: &Vocabulary) -> String {
        format!(
            "{} | {}",
            self.consequent.display(vocab),
            self.conditioning.display(vocab)
        )
    }
}

/// Propositions plus the axioms (certain logical relations) that every
/// world must satisfy.
#[derive(Clone, Debug)]
pub struct Universe {
    vocab: Vocabulary,
    axioms: Vec<Formula>,
    max_props: usize,
    worlds: OnceLock<Arc<[World]>>,
}

impl Universe {
    pub fn new(vocab: Vocabulary) -> Self {
        Self {
            vocab,
            axioms: Vec::new(),
            max_props: DEFAULT_MAX_PROPS,
            worlds: OnceLock::new(),
        }
    }

    pub fn with_axioms(vocab: Vocabulary, axioms: Vec<Formula>) -> Self {
        let mut universe = Self::new(vocab);
        universe.axioms = axioms;
        universe
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn axioms(&self) -> &[Formula] {
        &self.axioms
    }

    pub fn max_props(&self) -> usize {
        self.max_props
    }

    pub fn set_max_props(&mut self, max_props: usize) {
        self.max_props = max_props;
        self.worlds = OnceLock::new();
    }

    pub fn add_axiom(&mut self, axiom: Formula) {
        self.axioms.push(axiom);
        self.worlds = OnceLock::new();
    }

    pub fn declare(&mut self, name: &str) -> Result<usize, ParseError> {
        let before = self.vocab.len();
        let index = self.vocab.declare(name)?;
        if self.vocab.len() != before {
            self.worlds = OnceLock::new();
        }
        Ok(index)
    }

    pub fn parse(&self, text: &str) -> Result<Formula, ParseError> {
        self.vocab.parse(text)
    }

    /// All worlds satisfying every axiom, in increasing bit order.
    pub fn worlds(&self) -> Result<Arc<[World]>, Error> {
        if let Some(worlds) = self.worlds.get() {
            return Ok(worlds.clone());
        }
        let count = self.vocab.len();
        let max = self.max_props.min(HARD_MAX_PROPS);
        if count > max {
            return Err(Error::TooManyPropositions { count, max });
        }
        let worlds: Arc<[World]> = (0..1u64 << count)
            .map(World)
            .filter(|&w| self.axioms.iter().all(|a| a.eval(w)))
            .collect();
        Ok(self.worlds.get_or_init(|| worlds).clone())
    }

    pub fn is_possible(&self, formula: &Formula) -> Result<bool, Error> {
        Ok(self.worlds()?.iter().any(|&w| formula.eval(w)))
    }

    /// `a ⊆ b` relative to the axioms.
    pub fn implies(&self, a: &Formula, b: &Formula) -> Result<bool, Error> {
        Ok(self.worlds()?.iter().all(|&w| !a.eval(w) || b.eval(w)))
    }

    pub fn equivalent(&self, a: &Formula, b: &Formula) -> Result<bool, Error> {
        Ok(self.worlds()?.iter().all(|&w| a.eval(w) == b.eval(w)))
    }

    /// Groups the admissible worlds by their truth values on `events`.
    pub fn atoms(&self, events: &[Formula]) -> Result<AtomTable, Error> {
        // Key is the negated signature so that all-true sorts first.
        let mut classes: BTreeMap<Vec<bool>, Vec<World>> = BTreeMap::new();
        for &world in self.worlds()?.iter() {
            let key = events.iter().map(|e| !e.eval(world)).collect();
            classes.entry(key).or_default().push(world);
        }
        let atoms = classes
            .into_iter()
            .map(|(key, witnesses)| Atom {
                signature: key.into_iter().map(|b| !b).collect(),
                witnesses,
            })
            .collect();
        Ok(AtomTable {
            events: events.to_vec(),
            atoms,
        })
    }
}

/// A class of worlds agreeing on every event of the generating list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub signature: Vec<bool>,
    pub witnesses: Vec<World>,
}

/// The atoms `A_r` of the algebra generated by a list of events.
#[derive(Clone, Debug)]
pub struct AtomTable {
    events: Vec<Formula>,
    atoms: Vec<Atom>,
}

impl AtomTable {
    pub fn events(&self) -> &[Formula] {
        &self.events
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.atoms.len())
    }

    /// Atoms lying under generating event `index`.
    pub fn event_set(&self, index: usize) -> FixedBitSet {
        let mut set = self.empty_set();
        for (r, atom) in self.atoms.iter().enumerate() {
            if atom.signature[index] {
                set.insert(r);
            }
        }
        set
    }

    /// Atoms making up `formula`, or `None` when some atom is split by it
    /// (the formula is outside the generated algebra).
    pub fn set_of(&self, formula: &Formula) -> Option<FixedBitSet> {
        let mut set = self.empty_set();
        for (r, atom) in self.atoms.iter().enumerate() {
            let first = formula.eval(atom.witnesses[0]);
            if atom.witnesses[1..].iter().any(|&w| formula.eval(w) != first) {
                return None;
            }
            if first {
                set.insert(r);
            }
        }
        Some(set)
    }

    pub fn witness_count(&self) -> usize {
        self.atoms.iter().map(|a| a.witnesses.len()).sum()
    }

    /// Signature rendered as a string of `T`/`F`.
    pub fn signature_string(&self, atom: usize) -> String {
        self.atoms[atom]
            .signature
            .iter()
            .map(|&b| if b { 'T' } else { 'F' })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vocab(names: &[&str]) -> Vocabulary {
        Vocabulary::from_names(names).unwrap()
    }

    #[test]
    fn negation_binds_tighter_than_conjunction() {
        let v = vocab(&["fly", "penguin"]);
        let f = v.parse("~fly & penguin").unwrap();
        assert_eq!(f, Formula::prop(0).not().and(Formula::prop(1)));
    }

    #[test]
    fn implication_is_right_associative() {
        let v = vocab(&["a", "b", "c"]);
        let f = v.parse("a -> b -> c").unwrap();
        assert_eq!(f, Formula::prop(0).implies(Formula::prop(1).implies(Formula::prop(2))));
    }

    #[test]
    fn conjunction_and_disjunction_are_left_associative() {
        let v = vocab(&["a", "b", "c"]);
        let (a, b, c) = (Formula::prop(0), Formula::prop(1), Formula::prop(2));
        assert_eq!(v.parse("a & b & c").unwrap(), a.clone().and(b.clone()).and(c.clone()));
        assert_eq!(v.parse("a v b v c").unwrap(), a.clone().or(b.clone()).or(c.clone()));
        assert_eq!(v.parse("a v b & c").unwrap(), a.clone().or(b.clone().and(c.clone())));
        assert_eq!(v.parse("a v b -> c").unwrap(), a.or(b).implies(c));
    }

    #[test]
    fn unbalanced_paren_reports_offset() {
        let err = vocab(&[]).parse("(").unwrap_err();
        assert_eq!(err.offset, 1);
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn unknown_proposition_is_rejected() {
        let err = vocab(&["a"]).parse("a & zz").unwrap_err();
        assert_eq!(err.offset, 4);
        assert_eq!(err.kind, ParseErrorKind::UnknownProposition("zz".into()));
    }

    #[test]
    fn stray_bar_and_trailing_tokens() {
        let v = vocab(&["a", "b"]);
        assert_eq!(v.parse("a | b").unwrap_err().offset, 2);
        assert_eq!(v.parse("a b").unwrap_err().offset, 2);
        assert_eq!(v.parse("a)").unwrap_err().offset, 1);
        assert_eq!(v.parse("").unwrap_err().offset, 0);
    }

    #[test]
    fn reserved_words_cannot_be_declared() {
        let mut v = Vocabulary::new();
        assert!(v.declare("v").is_err());
        assert!(v.declare("true").is_err());
        assert!(v.declare("1x").is_err());
        assert_eq!(v.declare("vee").unwrap(), 0);
    }

    #[test]
    fn conditional_event_split() {
        let v = vocab(&["e", "h"]);
        let ce = v.parse_conditional("e | h").unwrap();
        assert_eq!(ce.consequent, Formula::prop(0));
        assert_eq!(ce.conditioning, Formula::prop(1));
        assert_eq!(v.parse_conditional("e | q").unwrap_err().offset, 4);
        assert!(v.parse_conditional("e | h | e").is_err());
        assert!(v.parse_conditional("e & h").is_err());
    }

    #[test]
    fn printing_keeps_needed_parentheses() {
        let v = vocab(&["a", "b", "c"]);
        for text in ["a & (b v c)", "(a -> b) -> c", "a -> b -> c", "~(a & b)", "a & (b & c)", "~~a", "a v (b v c)"] {
            let f = v.parse(text).unwrap();
            assert_eq!(f.display(&v).to_string(), text);
        }
    }

    #[test]
    fn independent_events_give_four_atoms() {
        let u = Universe::new(vocab(&["h1", "h2"]));
        let t = u.atoms(&[Formula::prop(0), Formula::prop(1)]).unwrap();
        let sigs: Vec<_> = (0..t.len()).map(|r| t.signature_string(r)).collect();
        assert_eq!(sigs, ["TT", "TF", "FT", "FF"]);
    }

    #[test]
    fn duplicate_event_adds_nothing() {
        let u = Universe::new(vocab(&["a", "b"]));
        let t = u.atoms(&[Formula::prop(0), Formula::prop(0)]).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.witness_count(), 4);
    }

    #[test]
    fn axioms_remove_impossible_signatures() {
        // tweety -> penguin -> bird
        let v = vocab(&["penguin", "bird", "tweety", "fly"]);
        let axioms = vec![v.parse("penguin -> bird").unwrap(), v.parse("tweety -> penguin").unwrap()];
        let u = Universe::with_axioms(v.clone(), axioms);
        let events: Vec<_> = (0..4).map(Formula::prop).collect();
        let t = u.atoms(&events).unwrap();
        // Brute force: count assignments over 4 bits satisfying both implications.
        let expected = (0..16u64)
            .filter(|w| {
                let bit = |i: u64| w >> i & 1 == 1;
                (!bit(0) || bit(1)) && (!bit(2) || bit(0))
            })
            .count();
        assert_eq!(t.len(), expected);
        assert!(t.atoms().iter().all(|a| !(a.signature[0] && !a.signature[1])));
        assert!(t.atoms().iter().all(|a| !(a.signature[2] && !a.signature[0])));
    }

    #[test]
    fn implication_relative_to_axioms() {
        let v = vocab(&["penguin", "bird", "tweety", "fly"]);
        let axioms = vec![v.parse("penguin -> bird").unwrap(), v.parse("tweety -> penguin").unwrap()];
        let u = Universe::with_axioms(v.clone(), axioms);
        let p = |s: &str| v.parse(s).unwrap();
        assert!(u.implies(&p("penguin & bird"), &p("penguin")).unwrap());
        assert!(u.implies(&p("tweety"), &p("bird")).unwrap());
        assert!(!u.implies(&p("penguin"), &p("~fly")).unwrap());
        assert!(Universe::new(vocab(&["a", "b"])).implies(&Formula::prop(0), &Formula::prop(0).or(Formula::prop(1))).unwrap());
    }

    #[test]
    fn bound_is_enforced() {
        let names: Vec<String> = (0..5).map(|i| format!("p{i}")).collect();
        let mut u = Universe::new(Vocabulary::from_names(&names).unwrap());
        u.set_max_props(4);
        assert!(matches!(u.worlds(), Err(Error::TooManyPropositions { count: 5, max: 4 })));
        u.set_max_props(5);
        assert_eq!(u.worlds().unwrap().len(), 32);
    }

    #[test]
    fn set_of_detects_split_atoms() {
        let u = Universe::new(vocab(&["a", "b"]));
        let t = u.atoms(&[Formula::prop(0)]).unwrap();
        assert!(t.set_of(&Formula::prop(1)).is_none());
        assert_eq!(t.set_of(&Formula::prop(0).not()).unwrap().count_ones(..), 1);
        assert_eq!(t.set_of(&Formula::True).unwrap().count_ones(..), 2);
        assert_eq!(t.set_of(&Formula::False).unwrap().count_ones(..), 0);
    }
}
