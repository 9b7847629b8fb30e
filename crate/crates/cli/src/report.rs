//! Report documents. Each serializes to the versioned JSON output and
//! renders as plain text.

use std::fmt::Write as _;

use serde::Serialize;

pub const FORMAT_VERSION: u32 = 1;

pub trait Report: Serialize {
    const COMMAND: &'static str;

    fn human(&self) -> String;

    /// Decides the exit status: 0 when positive, 1 otherwise.
    fn positive(&self) -> bool;
}

#[derive(Serialize)]
struct Envelope<'a, R> {
    version: u32,
    command: &'static str,
    #[serde(flatten)]
    report: &'a R,
}

pub fn to_json<R: Report>(report: &R) -> String {
    let envelope = Envelope {
        version: FORMAT_VERSION,
        command: R::COMMAND,
        report,
    };
    let mut text = serde_json::to_string_pretty(&envelope).expect("reports serialize");
    text.push('\n');
    text
}

/// A zero-layer: a number, or the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum RankOut {
    Finite(usize),
    Infinite(&'static str),
}

impl From<ccp_core::Rank> for RankOut {
    fn from(rank: ccp_core::Rank) -> Self {
        match rank {
            ccp_core::Rank::Finite(n) => RankOut::Finite(n),
            ccp_core::Rank::Infinite => RankOut::Infinite("inf"),
        }
    }
}

impl std::fmt::Display for RankOut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RankOut::Finite(n) => write!(f, "{n}"),
            RankOut::Infinite(s) => f.write_str(s),
        }
    }
}

/// Left-aligned columns separated by two spaces.
fn table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c + 1 == row.len() {
                line.push_str(cell);
            } else {
                let _ = write!(line, "{cell:<width$}  ", width = widths[c]);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn or_dash<T: ToString>(value: &Option<T>) -> String {
    value.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn yes_no(value: bool) -> &'static str {
    if value {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
pub struct AtomRow {
    pub index: usize,
    /// `T`/`F` per generating event, in the order of `events`.
    pub signature: String,
    pub witnesses: Vec<String>,
}

impl AtomRow {
    fn witness_summary(&self) -> String {
        match self.witnesses.len() {
            0 | 1 => self.witnesses.concat(),
            n => format!("{} (+{} more)", self.witnesses[0], n - 1),
        }
    }
}

#[derive(Serialize)]
pub struct EntryRow {
    pub event: String,
    pub value: String,
    /// Layer at which the conditioning event first gets positive mass.
    pub layer: Option<usize>,
    pub ord: Option<RankOut>,
    pub ord_negated: Option<RankOut>,
}

#[derive(Serialize)]
pub struct LayerRow {
    pub index: usize,
    pub support: Vec<usize>,
    /// Probability of every atom, as `n/d`.
    pub probabilities: Vec<String>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub coherent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_layer: Option<usize>,
    pub events: Vec<String>,
    pub entries: Vec<EntryRow>,
    pub atoms: Vec<AtomRow>,
    pub layers: Vec<LayerRow>,
    pub atom_ranks: Vec<RankOut>,
}

fn event_legend(events: &[String]) -> String {
    let names: Vec<String> = events
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let letter = if i % 2 == 0 { 'E' } else { 'H' };
            format!("{letter}{} = {e}", i / 2 + 1)
        })
        .collect();
    format!("signature order: {}\n", names.join(", "))
}

impl Report for CheckReport {
    const COMMAND: &'static str = "check";

    fn human(&self) -> String {
        let mut out = String::new();
        if self.coherent {
            let _ = writeln!(out, "COHERENT; layers: {}", self.layers.len());
        } else {
            let _ = writeln!(out, "INCOHERENT; no solution at layer {}", or_dash(&self.failed_layer));
        }
        out.push('\n');
        let mut rows = vec![vec![
            "entry".to_string(),
            "value".into(),
            "layer".into(),
            "ord(E|H)".into(),
            "ord(~E|H)".into(),
        ]];
        for e in &self.entries {
            rows.push(vec![
                format!("P({})", e.event),
                e.value.clone(),
                or_dash(&e.layer),
                or_dash(&e.ord),
                or_dash(&e.ord_negated),
            ]);
        }
        out.push_str(&table(&rows));
        out.push('\n');
        out.push_str(&event_legend(&self.events));
        let mut header = vec!["atom".to_string(), "signature".into()];
        header.extend(self.layers.iter().map(|l| format!("P_{}", l.index)));
        if self.coherent {
            header.push("ord".into());
        }
        header.push("witnesses".into());
        let mut rows = vec![header];
        for atom in &self.atoms {
            let mut row = vec![format!("A{}", atom.index), atom.signature.clone()];
            row.extend(self.layers.iter().map(|l| {
                if l.support.contains(&atom.index) {
                    l.probabilities[atom.index].clone()
                } else {
                    ".".to_string()
                }
            }));
            if self.coherent {
                row.push(self.atom_ranks[atom.index].to_string());
            }
            row.push(atom.witness_summary());
            rows.push(row);
        }
        out.push_str(&table(&rows));
        out
    }

    fn positive(&self) -> bool {
        self.coherent
    }
}

#[derive(Serialize)]
pub struct IntervalRow {
    pub event: String,
    pub lo: String,
    pub hi: String,
}

impl IntervalRow {
    fn interval(&self) -> String {
        format!("[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Serialize)]
pub struct ExtendReport {
    pub results: Vec<IntervalRow>,
    #[serde(skip)]
    pub from_argument: bool,
}

impl Report for ExtendReport {
    const COMMAND: &'static str = "extend";

    fn human(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            if self.from_argument {
                let _ = writeln!(out, "{}", r.interval());
            } else {
                let _ = writeln!(out, "{}: {}", r.event, r.interval());
            }
        }
        out
    }

    fn positive(&self) -> bool {
        true
    }
}

#[derive(Serialize)]
pub struct EntailmentRow {
    pub rule: String,
    pub entailed: bool,
    pub lo: String,
    pub hi: String,
}

#[derive(Serialize)]
pub struct EntailsReport {
    pub results: Vec<EntailmentRow>,
    #[serde(skip)]
    pub from_argument: bool,
}

impl Report for EntailsReport {
    const COMMAND: &'static str = "entails";

    fn human(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let verdict = if r.entailed { "YES" } else { "NO" };
            if !self.from_argument {
                let _ = write!(out, "{}: ", r.rule);
            }
            let _ = writeln!(out, "{verdict}; interval [{}, {}]", r.lo, r.hi);
        }
        out
    }

    fn positive(&self) -> bool {
        self.results.iter().all(|r| r.entailed)
    }
}

#[derive(Serialize)]
pub struct BooleanCriterion {
    /// False when the base has entries below certainty.
    pub applicable: bool,
    pub consistent: Option<bool>,
    /// Indices into `rules` of a minimal violating subset.
    pub violating: Vec<usize>,
}

#[derive(Serialize)]
pub struct DefaultsReport {
    pub consistent: bool,
    pub rules: Vec<String>,
    pub extra: Vec<String>,
    pub boolean_criterion: BooleanCriterion,
    pub coherence_layers: Option<usize>,
    pub failed_layer: Option<usize>,
}

impl Report for DefaultsReport {
    const COMMAND: &'static str = "defaults";

    fn human(&self) -> String {
        let mut out = String::new();
        out.push_str(if self.consistent { "CONSISTENT\n" } else { "INCONSISTENT\n" });
        let b = &self.boolean_criterion;
        match b.consistent {
            _ if !b.applicable => {
                let _ = writeln!(
                    out,
                    "boolean criterion: not applicable with {} assessment(s) below certainty",
                    self.extra.len()
                );
            }
            Some(true) => {
                let _ = writeln!(out, "boolean criterion: all subsets of the {} rule(s) pass", self.rules.len());
            }
            _ => {
                let names: Vec<&str> = b.violating.iter().map(|&i| self.rules[i].as_str()).collect();
                let _ = writeln!(out, "boolean criterion: violated by {{{}}}", names.join(", "));
            }
        }
        match (self.coherence_layers, self.failed_layer) {
            (Some(layers), _) => {
                let _ = writeln!(out, "coherence: coherent, layers: {layers}");
            }
            (None, layer) => {
                let _ = writeln!(out, "coherence: no solution at layer {}", or_dash(&layer));
            }
        }
        out
    }

    fn positive(&self) -> bool {
        self.consistent
    }
}

#[derive(Serialize)]
pub struct NonMemberRow {
    pub rule: String,
    pub lo: String,
    pub hi: String,
    pub below_one: bool,
}

#[derive(Serialize)]
pub struct SchemaRow {
    pub schema: String,
    pub kind: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub applicable: bool,
    pub note: Option<String>,
    pub premises: Vec<String>,
    pub premises_consistent: Option<bool>,
    pub non_members: Vec<NonMemberRow>,
    pub conclusion: String,
    pub conclusion_interval: Option<[String; 2]>,
    pub conclusion_entailed: Option<bool>,
    pub holds: Option<bool>,
}

impl SchemaRow {
    fn verdict(&self) -> &'static str {
        match self.holds {
            Some(true) => "HOLDS",
            Some(false) => "FAILS",
            None => "NOT APPLICABLE",
        }
    }
}

#[derive(Serialize)]
pub struct RulesReport {
    pub instance: SchemaRow,
}

impl Report for RulesReport {
    const COMMAND: &'static str = "rules";

    fn human(&self) -> String {
        let s = &self.instance;
        let mut out = String::new();
        let _ = writeln!(out, "schema: {} ({})", s.schema, s.kind);
        let _ = writeln!(out, "instance: A = {}, B = {}, C = {}", s.a, s.b, s.c);
        if !s.premises.is_empty() {
            let _ = writeln!(out, "premises: {}", s.premises.join(", "));
        }
        if let Some(consistent) = s.premises_consistent {
            let _ = writeln!(out, "premises consistent with the base: {}", yes_no(consistent));
        }
        for m in &s.non_members {
            let _ = writeln!(
                out,
                "outside the base: {} has interval [{}, {}], hi < 1: {}",
                m.rule,
                m.lo,
                m.hi,
                yes_no(m.below_one)
            );
        }
        let _ = writeln!(out, "conclusion: {}", s.conclusion);
        if let Some([lo, hi]) = &s.conclusion_interval {
            let _ = writeln!(out, "conclusion interval: [{lo}, {hi}]");
        }
        if let Some(entailed) = s.conclusion_entailed {
            let _ = writeln!(out, "conclusion entailed: {}", yes_no(entailed));
        }
        if let Some(note) = &s.note {
            let _ = writeln!(out, "note: {note}");
        }
        let _ = writeln!(out, "{}", s.verdict());
        out
    }

    fn positive(&self) -> bool {
        self.instance.holds == Some(true)
    }
}

#[derive(Serialize)]
pub struct RandomRulesReport {
    pub schema: String,
    pub kind: String,
    pub seed: u64,
    pub instances: usize,
    pub applicable: usize,
    pub held: usize,
    pub failed: Vec<SchemaRow>,
}

impl Report for RandomRulesReport {
    const COMMAND: &'static str = "rules";

    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "schema: {} ({}); {} random instances, seed {}",
            self.schema, self.kind, self.instances, self.seed
        );
        let _ = writeln!(
            out,
            "applicable: {}, held: {}, failed: {}",
            self.applicable,
            self.held,
            self.failed.len()
        );
        for s in &self.failed {
            let _ = writeln!(out, "failed: A = {}, B = {}, C = {}", s.a, s.b, s.c);
        }
        out.push_str(if self.failed.is_empty() { "HOLDS\n" } else { "FAILS\n" });
        out
    }

    fn positive(&self) -> bool {
        self.failed.is_empty()
    }
}

#[derive(Serialize)]
pub struct AtomsReport {
    pub events: Vec<String>,
    pub atoms: Vec<AtomRow>,
}

impl Report for AtomsReport {
    const COMMAND: &'static str = "atoms";

    fn human(&self) -> String {
        let mut out = format!("{} atoms\n", self.atoms.len());
        out.push_str(&event_legend(&self.events));
        let mut rows = vec![vec!["atom".to_string(), "signature".into(), "witnesses".into()]];
        for atom in &self.atoms {
            rows.push(vec![format!("A{}", atom.index), atom.signature.clone(), atom.witness_summary()]);
        }
        out.push_str(&table(&rows));
        out
    }

    fn positive(&self) -> bool {
        true
    }
}
