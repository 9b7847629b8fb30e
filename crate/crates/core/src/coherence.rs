//! Coherence of conditional assessments through the layered systems over
//! the generated atoms, and the zero-layers induced by an agreeing class.
//!
//! At layer `α` the unknowns are the masses `x_r ≥ 0` of the atoms lying
//! under some still unresolved conditioning event; each unresolved entry
//! contributes `Σ_{A_r ⊆ E_i H_i} x_r = p_i Σ_{A_r ⊆ H_i} x_r` and the masses
//! sum to one. Entries whose conditioning event receives positive mass are
//! resolved by that layer; the rest move on to the next one.

use std::fmt;

use fixedbitset::FixedBitSet;
use num_traits::{One, Zero};

use crate::logic::{AtomTable, ConditionalEvent, Formula, Universe, Vocabulary};
use crate::ratlp::{feasible_point_with_max_support, LinearProgram, Relation};
use crate::rational::{format_rational, in_unit_interval};
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub event: ConditionalEvent,
    pub value: Rational,
}

/// A finite assessment `P(E_i | H_i) = p_i` together with the universe
/// (propositions and axioms) it lives in.
#[derive(Clone, Debug)]
pub struct ConditionalAssessment {
    universe: Universe,
    entries: Vec<Entry>,
}

impl ConditionalAssessment {
    pub fn new(universe: Universe) -> Self {
        Self {
            universe,
            entries: Vec::new(),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds `P(event) = value`, rejecting values outside `[0, 1]` and
    /// impossible conditioning events.
    pub fn push(&mut self, event: ConditionalEvent, value: Rational) -> Result<()> {
        if !in_unit_interval(&value) {
            return Err(Error::ValueOutOfRange(format_rational(&value)));
        }
        if !self.universe.is_possible(&event.conditioning)? {
            return Err(Error::ImpossibleConditioning(
                event.conditioning.display(self.universe.vocab()).to_string(),
            ));
        }
        self.entries.push(Entry { event, value });
        Ok(())
    }

    pub fn with(&self, event: ConditionalEvent, value: Rational) -> Result<Self> {
        let mut extended = self.clone();
        extended.push(event, value)?;
        Ok(extended)
    }

    /// `E_1, H_1, …, E_n, H_n`.
    pub fn events(&self) -> Vec<Formula> {
        self.entries
            .iter()
            .flat_map(|e| [e.event.consequent.clone(), e.event.conditioning.clone()])
            .collect()
    }
}

/// Atom table plus the atom sets `H_i` and `E_i ∧ H_i` of every entry.
pub(crate) struct Structure {
    pub atoms: AtomTable,
    pub conditioning: Vec<FixedBitSet>,
    pub joint: Vec<FixedBitSet>,
    pub values: Vec<Rational>,
}

impl Structure {
    /// `extra` events are appended after the entry events, so they are
    /// unions of atoms too.
    pub fn new(a: &ConditionalAssessment, extra: &[Formula]) -> Result<Self> {
        let mut events = a.events();
        events.extend_from_slice(extra);
        let atoms = a.universe.atoms(&events)?;
        let mut conditioning = Vec::with_capacity(a.len());
        let mut joint = Vec::with_capacity(a.len());
        for i in 0..a.len() {
            let e = atoms.event_set(2 * i);
            let h = atoms.event_set(2 * i + 1);
            let mut eh = e;
            eh.intersect_with(&h);
            conditioning.push(h);
            joint.push(eh);
        }
        Ok(Self {
            atoms,
            conditioning,
            joint,
            values: a.entries.iter().map(|e| e.value.clone()).collect(),
        })
    }

    /// Atoms under the union of the given entries' conditioning events.
    pub fn union_of_conditioning(&self, entries: &[usize]) -> FixedBitSet {
        let mut set = self.atoms.empty_set();
        for &i in entries {
            set.union_with(&self.conditioning[i]);
        }
        set
    }

    /// The homogeneous constraints of `entries` over the atoms `vars`.
    pub fn homogeneous_program(&self, vars: &[usize], entries: &[usize]) -> LinearProgram {
        let mut lp = LinearProgram::new(vars.len());
        for &i in entries {
            let p = &self.values[i];
            let one_minus_p = Rational::one() - p;
            let coeffs: Vec<Rational> = vars
                .iter()
                .map(|&r| {
                    if self.joint[i].contains(r) {
                        one_minus_p.clone()
                    } else if self.conditioning[i].contains(r) {
                        -p
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            if coeffs.iter().any(|c| !c.is_zero()) {
                lp.add_constraint(coeffs, Relation::Eq, Rational::zero());
            }
        }
        lp
    }

    /// Runs one layer over `vars` with normalization on all of them. Returns
    /// the layer distribution over every atom, or `None` if the system is
    /// infeasible.
    pub fn solve_layer(&self, vars: &[usize], entries: &[usize]) -> Option<Vec<Rational>> {
        let mut lp = self.homogeneous_program(vars, entries);
        lp.add_constraint(vec![Rational::one(); vars.len()], Relation::Eq, Rational::one());
        let groups: Vec<Vec<usize>> = (0..vars.len()).map(|j| vec![j]).collect();
        let support = feasible_point_with_max_support(&lp, &groups).ok()?;
        let mut probabilities = vec![Rational::zero(); self.atoms.len()];
        for (&r, x) in vars.iter().zip(support.point) {
            probabilities[r] = x;
        }
        Some(probabilities)
    }
}

pub(crate) fn mass(probabilities: &[Rational], set: &FixedBitSet) -> Rational {
    set.ones().map(|r| &probabilities[r]).sum()
}

/// One probability `P_α` of an agreeing class.
#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    /// `A_α`: atoms under the conditioning events still unresolved when
    /// this layer was built.
    pub support: Vec<usize>,
    /// Mass of every atom of the table (zero outside `support`).
    pub probabilities: Vec<Rational>,
}

impl Layer {
    pub fn mass(&self, set: &FixedBitSet) -> Rational {
        mass(&self.probabilities, set)
    }
}

/// The support-maximizing class `{P_0, …, P_k}` agreeing with a coherent
/// assessment.
#[derive(Clone, Debug)]
pub struct AgreeingClass {
    vocab: Vocabulary,
    atoms: AtomTable,
    layers: Vec<Layer>,
    resolution: Vec<usize>,
}

impl AgreeingClass {
    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn atoms(&self) -> &AtomTable {
        &self.atoms
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// For each entry, the layer whose probability gives its conditioning
    /// event positive mass first.
    pub fn resolution(&self) -> &[usize] {
        &self.resolution
    }

    fn set_of(&self, formula: &Formula) -> Result<FixedBitSet> {
        self.atoms
            .set_of(formula)
            .ok_or_else(|| Error::NotInAlgebra(formula.display(&self.vocab).to_string()))
    }

    pub fn zero_layers(&self) -> ZeroLayerMap {
        let k_plus_one = self.layers.len();
        let atom_ranks = (0..self.atoms.len())
            .map(|r| {
                let first = self.layers.iter().position(|l| l.probabilities[r].is_positive());
                Rank::Finite(first.unwrap_or(k_plus_one))
            })
            .collect();
        ZeroLayerMap { atom_ranks, k_plus_one }
    }

    /// The value the class assigns to `E | H` through the first layer
    /// giving `H` positive mass, or `None` when no layer does.
    pub fn conditional_probability(&self, event: &ConditionalEvent) -> Result<Option<Rational>> {
        let h = self.set_of(&event.conditioning)?;
        let eh = self.set_of(&event.joint())?;
        Ok(self.layers.iter().find_map(|layer| {
            let denominator = layer.mass(&h);
            denominator.is_positive().then(|| layer.mass(&eh) / denominator)
        }))
    }

    /// Re-evaluates every assessed value through the class; exact equality
    /// is required, and the entry must be resolved at its recorded layer.
    pub fn reproduces(&self, assessment: &ConditionalAssessment) -> Result<bool> {
        for (i, entry) in assessment.entries().iter().enumerate() {
            let h = self.set_of(&entry.event.conditioning)?;
            let eh = self.set_of(&entry.event.joint())?;
            let Some(&alpha) = self.resolution.get(i) else {
                return Ok(false);
            };
            if self.layers[..alpha].iter().any(|l| l.mass(&h).is_positive()) {
                return Ok(false);
            }
            let layer = &self.layers[alpha];
            let denominator = layer.mass(&h);
            if !denominator.is_positive() || layer.mass(&eh) / denominator != entry.value {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Supports strictly shrink, each layer sums to one over its support,
    /// and atoms of later supports carry no mass in earlier layers.
    pub fn is_nested(&self) -> bool {
        for (alpha, layer) in self.layers.iter().enumerate() {
            let total: Rational = layer.support.iter().map(|&r| &layer.probabilities[r]).sum();
            if !total.is_one() {
                return false;
            }
            let outside_support = (0..self.atoms.len())
                .filter(|r| !layer.support.contains(r))
                .any(|r| !layer.probabilities[r].is_zero());
            if outside_support {
                return false;
            }
            if let Some(next) = self.layers.get(alpha + 1) {
                let strict_subset =
                    next.support.len() < layer.support.len() && next.support.iter().all(|r| layer.support.contains(r));
                let zero_before = next.support.iter().all(|&r| {
                    self.layers[..=alpha].iter().all(|l| l.probabilities[r].is_zero())
                });
                if !strict_subset || !zero_before {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Coherent(AgreeingClass),
    /// The system of this layer has no solution.
    Incoherent { layer: usize },
}

impl Verdict {
    pub fn is_coherent(&self) -> bool {
        matches!(self, Verdict::Coherent(_))
    }

    pub fn agreeing_class(&self) -> Option<&AgreeingClass> {
        match self {
            Verdict::Coherent(class) => Some(class),
            Verdict::Incoherent { .. } => None,
        }
    }
}

/// Decides coherence of `assessment`, returning the support-maximizing
/// agreeing class when it is coherent.
pub fn check_coherence(assessment: &ConditionalAssessment) -> Result<Verdict> {
    let st = Structure::new(assessment, &[])?;
    let mut unresolved: Vec<usize> = (0..assessment.len()).collect();
    let mut resolution = vec![0; assessment.len()];
    let mut layers = Vec::new();
    while !unresolved.is_empty() {
        let alpha = layers.len();
        let vars: Vec<usize> = st.union_of_conditioning(&unresolved).ones().collect();
        let Some(probabilities) = st.solve_layer(&vars, &unresolved) else {
            return Ok(Verdict::Incoherent { layer: alpha });
        };
        let before = unresolved.len();
        unresolved.retain(|&i| {
            let resolved = mass(&probabilities, &st.conditioning[i]).is_positive();
            if resolved {
                resolution[i] = alpha;
            }
            !resolved
        });
        // Normalization puts mass on some atom, and every variable atom lies
        // under an unresolved conditioning event.
        if unresolved.len() == before {
            return Err(Error::Internal(format!("layer {alpha} resolved no entry")));
        }
        layers.push(Layer {
            support: vars,
            probabilities,
        });
    }
    Ok(Verdict::Coherent(AgreeingClass {
        vocab: assessment.universe().vocab().clone(),
        atoms: st.atoms,
        layers,
        resolution,
    }))
}

/// A zero-layer: a layer index, or `+∞` for the impossible event.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rank {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(n) => write!(f, "{n}"),
            Rank::Infinite => f.write_str("inf"),
        }
    }
}

/// Zero-layers of the atoms under a fixed agreeing class; events get the
/// minimum over their atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroLayerMap {
    pub atom_ranks: Vec<Rank>,
    /// Rank of an atom no layer gives positive mass.
    pub k_plus_one: usize,
}

impl ZeroLayerMap {
    pub fn of_set(&self, set: &FixedBitSet) -> Rank {
        set.ones().map(|r| self.atom_ranks[r]).min().unwrap_or(Rank::Infinite)
    }

    /// `ord(E ∧ H) − ord(H)` given the atom sets of `E ∧ H` and `H`.
    pub fn conditional(&self, joint: &FixedBitSet, conditioning: &FixedBitSet) -> Rank {
        match (self.of_set(joint), self.of_set(conditioning)) {
            (Rank::Finite(eh), Rank::Finite(h)) => Rank::Finite(eh - h),
            _ => Rank::Infinite,
        }
    }
}

/// `ord(event)` relative to `class`.
pub fn zero_layer(class: &AgreeingClass, event: &Formula) -> Result<Rank> {
    let set = class.set_of(event)?;
    Ok(class.zero_layers().of_set(&set))
}

/// `ord(E | H) = ord(E ∧ H) − ord(H)`, `+∞` when `E ∧ H` is impossible.
pub fn conditional_zero_layer(class: &AgreeingClass, event: &ConditionalEvent) -> Result<Rank> {
    let h = class.set_of(&event.conditioning)?;
    if h.is_clear() {
        return Err(Error::ImpossibleConditioning(
            event.conditioning.display(&class.vocab).to_string(),
        ));
    }
    let eh = class.set_of(&event.joint())?;
    Ok(class.zero_layers().conditional(&eh, &h))
}
