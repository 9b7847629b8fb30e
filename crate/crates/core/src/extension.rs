//! Coherent values for one new conditional event.
//!
//! Adding `P(E | H) = p` to a coherent assessment, the layer at which `H`
//! first receives positive mass is the only place `p` enters: before it,
//! every layer must give `H` zero mass, and that chain of layers does not
//! depend on `p`. At a candidate layer the reachable values of `p` form the
//! range of `Σ_{E∧H} x / Σ_H x` over the layer's homogeneous constraints,
//! which after fixing `Σ_H x = 1` is a pair of exact linear programs. The
//! coherent set is the union of these ranges along the chain; endpoints
//! and interior probes are then certified by the coherence checker.

use fixedbitset::FixedBitSet;
use num_traits::{One, Zero};

use crate::coherence::{check_coherence, mass, ConditionalAssessment, Structure};
use crate::logic::ConditionalEvent;
use crate::ratlp::{solve, Outcome, Relation};
use crate::rational::in_unit_interval;
use crate::{format_rational, Error, Rational, Result};

/// Closed interval `[lo, hi] ⊆ [0, 1]` of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl CoherentInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, p: &Rational) -> bool {
        self.lo <= *p && *p <= self.hi
    }

    /// `[1, 1]`: the value 1 is forced.
    pub fn is_certainly_one(&self) -> bool {
        self.lo.is_one()
    }
}

impl std::fmt::Display for CoherentInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
    }
}

/// Whether `P(target) = p` keeps `assessment` coherent.
pub fn is_coherent_value(assessment: &ConditionalAssessment, target: &ConditionalEvent, p: &Rational) -> Result<bool> {
    let extended = assessment.with(target.clone(), p.clone())?;
    Ok(check_coherence(&extended)?.is_coherent())
}

/// The exact set of coherent values for `target` given a coherent
/// `assessment`.
pub fn coherent_interval(assessment: &ConditionalAssessment, target: &ConditionalEvent) -> Result<CoherentInterval> {
    let universe = assessment.universe();
    if !universe.is_possible(&target.conditioning)? {
        return Err(Error::ImpossibleConditioning(
            target.conditioning.display(universe.vocab()).to_string(),
        ));
    }
    if !check_coherence(assessment)?.is_coherent() {
        return Err(Error::IncoherentBase);
    }

    let st = Structure::new(assessment, &[target.consequent.clone(), target.conditioning.clone()])?;
    let n = assessment.len();
    let h = st.atoms.event_set(2 * n + 1);
    let mut eh = st.atoms.event_set(2 * n);
    eh.intersect_with(&h);

    let mut ranges = Vec::new();
    let mut unresolved: Vec<usize> = (0..n).collect();
    loop {
        let mut vars_set = st.union_of_conditioning(&unresolved);
        vars_set.union_with(&h);
        let vars: Vec<usize> = vars_set.ones().collect();
        if let Some(range) = ratio_range(&st, &vars, &unresolved, &h, &eh) {
            ranges.push(range);
        }

        // Continue with H kept at zero mass.
        let mut rest = st.union_of_conditioning(&unresolved);
        rest.difference_with(&h);
        let rest: Vec<usize> = rest.ones().collect();
        if unresolved.is_empty() || rest.is_empty() {
            break;
        }
        let Some(probabilities) = st.solve_layer(&rest, &unresolved) else {
            break;
        };
        let before = unresolved.len();
        unresolved.retain(|&i| mass(&probabilities, &st.conditioning[i]).is_zero());
        if unresolved.len() == before {
            return Err(Error::Internal("zero-mass layer resolved no entry".into()));
        }
    }

    ranges.sort_by(|a, b| a.0.cmp(&b.0));
    let mut iter = ranges.into_iter();
    let Some((lo, mut hi)) = iter.next() else {
        return Err(Error::Internal("no layer admits the target".into()));
    };
    for (next_lo, next_hi) in iter {
        if next_lo > hi {
            return Err(Error::Internal("coherent values do not form an interval".into()));
        }
        hi = hi.max(next_hi);
    }
    let interval = CoherentInterval::new(lo, hi);
    certify(assessment, target, &interval)?;
    Ok(interval)
}

/// Range of `Σ_{E∧H} x` subject to the homogeneous constraints, `Σ_H x = 1`
/// and `x ≥ 0`, or `None` if `H` cannot receive mass at this layer.
fn ratio_range(
    st: &Structure,
    vars: &[usize],
    entries: &[usize],
    conditioning: &FixedBitSet,
    joint: &FixedBitSet,
) -> Option<(Rational, Rational)> {
    let indicator = |set: &FixedBitSet| -> Vec<Rational> {
        vars.iter()
            .map(|&r| if set.contains(r) { Rational::one() } else { Rational::zero() })
            .collect()
    };
    let mut lp = st.homogeneous_program(vars, entries);
    lp.add_constraint(indicator(conditioning), Relation::Eq, Rational::one());
    let objective = indicator(joint);
    let mut bounds = [Rational::zero(), Rational::zero()];
    for (k, maximize) in [false, true].into_iter().enumerate() {
        let mut probe = lp.clone();
        if maximize {
            probe.maximize(objective.clone());
        } else {
            probe.minimize(objective.clone());
        }
        match solve(&probe) {
            Outcome::Optimal { value, .. } => bounds[k] = value,
            // Bounded by Σ_H x = 1, so only infeasibility is possible here.
            _ => return None,
        }
    }
    let [lo, hi] = bounds;
    Some((lo, hi))
}

fn certify(assessment: &ConditionalAssessment, target: &ConditionalEvent, interval: &CoherentInterval) -> Result<()> {
    if !in_unit_interval(&interval.lo) || !in_unit_interval(&interval.hi) {
        return Err(Error::Internal(format!("interval {interval} leaves [0, 1]")));
    }
    let width = &interval.hi - &interval.lo;
    let third = &width / Rational::from(3);
    let probes = [
        interval.lo.clone(),
        &interval.lo + &third,
        &interval.hi - &third,
        interval.hi.clone(),
    ];
    for (k, p) in probes.iter().enumerate() {
        if k > 0 && *p == probes[k - 1] {
            continue;
        }
        if !is_coherent_value(assessment, target, p)? {
            return Err(Error::Internal(format!(
                "value {} of interval {interval} failed certification",
                format_rational(p)
            )));
        }
    }
    Ok(())
}
