//! Exact rational linear programming.
//!
//! Dense two-phase tableau simplex with Bland's least-index rule, so that
//! the heavily degenerate systems produced by zero-probability atoms always
//! terminate. All variables are implicitly nonnegative.

use num_traits::{One, Zero};

use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Objective {
    pub direction: Direction,
    pub coeffs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    num_vars: usize,
    constraints: Vec<Constraint>,
    objective: Option<Objective>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Infeasible,
    Unbounded,
    /// For a program without objective, `value` is zero and `point` is any
    /// feasible point.
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
}

impl Outcome {
    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            Outcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            Outcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            constraints: Vec::new(),
            objective: None,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> Option<&Objective> {
        self.objective.as_ref()
    }

    /// # Panics
    ///
    /// If `coeffs.len()` differs from the number of variables.
    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn set_objective(&mut self, direction: Direction, coeffs: Vec<Rational>) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars, "objective width");
        self.objective = Some(Objective { direction, coeffs });
        self
    }

    pub fn maximize(&mut self, coeffs: Vec<Rational>) -> &mut Self {
        self.set_objective(Direction::Maximize, coeffs)
    }

    pub fn minimize(&mut self, coeffs: Vec<Rational>) -> &mut Self {
        self.set_objective(Direction::Minimize, coeffs)
    }

    /// Exact check of every constraint and nonnegativity.
    pub fn is_satisfied_by(&self, point: &[Rational]) -> bool {
        point.len() == self.num_vars
            && point.iter().all(|x| !x.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs = dot(&c.coeffs, point);
                match c.relation {
                    Relation::Eq => lhs == c.rhs,
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                }
            })
    }

    pub fn solve(&self) -> Outcome {
        solve(self)
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

struct Tableau {
    /// Rows of `B^-1 A | B^-1 b`.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, row: usize) -> &Rational {
        &self.rows[row][self.cols]
    }

    fn pivot(&mut self, p: usize, q: usize, cost_row: &mut [Rational]) {
        let inv = self.rows[p][q].recip();
        let nonzero: Vec<usize> = (0..=self.cols).filter(|&j| !self.rows[p][j].is_zero()).collect();
        for &j in &nonzero {
            self.rows[p][j] *= &inv;
        }
        let pivot_row = std::mem::take(&mut self.rows[p]);
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r == p || row[q].is_zero() {
                continue;
            }
            let factor = row[q].clone();
            for &j in &nonzero {
                row[j] -= &factor * &pivot_row[j];
            }
        }
        if !cost_row[q].is_zero() {
            let factor = cost_row[q].clone();
            for &j in &nonzero {
                cost_row[j] -= &factor * &pivot_row[j];
            }
        }
        self.rows[p] = pivot_row;
        self.basis[p] = q;
    }

    /// Reduced-cost row for minimizing `cost` (last entry is minus the
    /// objective value).
    fn cost_row(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut row: Vec<Rational> = cost.to_vec();
        row.push(Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (j, entry) in self.rows[i].iter().enumerate() {
                if !entry.is_zero() {
                    row[j] -= &cost[b] * entry;
                }
            }
        }
        row
    }

    /// Minimizes `cost` over the columns flagged in `allowed`. Returns
    /// `false` if unbounded.
    fn minimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        let mut reduced = self.cost_row(cost);
        loop {
            let entering = (0..self.cols).find(|&j| allowed[j] && reduced[j].is_negative());
            let Some(q) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][q];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leaving {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio || (ratio == *best_ratio && self.basis[i] < self.basis[*best])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            let Some((p, _)) = leaving else {
                return false;
            };
            self.pivot(p, q, &mut reduced);
        }
    }

    fn value_of(&self, col: usize) -> Rational {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map(|i| self.rhs(i).clone())
            .unwrap_or_else(Rational::zero)
    }
}

/// Solves `lp` exactly.
pub fn solve(lp: &LinearProgram) -> Outcome {
    let n = lp.num_vars;
    let m = lp.constraints.len();
    let slacks = lp.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    let mut normalized: Vec<(Vec<Rational>, Relation, Rational)> = Vec::with_capacity(m);
    for c in &lp.constraints {
        if c.rhs.is_negative() {
            let relation = match c.relation {
                Relation::Eq => Relation::Eq,
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
            };
            normalized.push((c.coeffs.iter().map(|x| -x).collect(), relation, -&c.rhs));
        } else {
            normalized.push((c.coeffs.clone(), c.relation, c.rhs.clone()));
        }
    }
    let artificials = normalized.iter().filter(|c| c.1 != Relation::Le).count();
    let cols = n + slacks + artificials;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let (mut next_slack, mut next_art) = (n, n + slacks);
    for (coeffs, relation, rhs) in normalized {
        let mut row = coeffs;
        row.resize(cols + 1, Rational::zero());
        row[cols] = rhs;
        match relation {
            Relation::Le => {
                row[next_slack] = Rational::one();
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
                row[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
        }
        rows.push(row);
    }
    let mut tableau = Tableau { rows, basis, cols };
    let is_artificial = |j: usize| j >= n + slacks;

    if artificials > 0 {
        let cost: Vec<Rational> = (0..cols)
            .map(|j| if is_artificial(j) { Rational::one() } else { Rational::zero() })
            .collect();
        let allowed = vec![true; cols];
        tableau.minimize(&cost, &allowed);
        let infeasibility: Rational = (0..tableau.rows.len())
            .filter(|&i| is_artificial(tableau.basis[i]))
            .map(|i| tableau.rhs(i).clone())
            .sum();
        if infeasibility.is_positive() {
            return Outcome::Infeasible;
        }
        // Artificials left in the basis sit at zero: pivot them out or drop
        // the (redundant) row.
        let mut scratch = vec![Rational::zero(); cols + 1];
        let mut i = 0;
        while i < tableau.rows.len() {
            if is_artificial(tableau.basis[i]) {
                match (0..n + slacks).find(|&j| !tableau.rows[i][j].is_zero()) {
                    Some(q) => tableau.pivot(i, q, &mut scratch),
                    None => {
                        tableau.rows.remove(i);
                        tableau.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let allowed: Vec<bool> = (0..cols).map(|j| !is_artificial(j)).collect();
    let value = match &lp.objective {
        None => Rational::zero(),
        Some(objective) => {
            let mut cost = vec![Rational::zero(); cols];
            for (j, c) in objective.coeffs.iter().enumerate() {
                cost[j] = match objective.direction {
                    Direction::Minimize => c.clone(),
                    Direction::Maximize => -c,
                };
            }
            if !tableau.minimize(&cost, &allowed) {
                return Outcome::Unbounded;
            }
            let point: Vec<Rational> = (0..n).map(|j| tableau.value_of(j)).collect();
            dot(&objective.coeffs, &point)
        }
    };
    let point = (0..n).map(|j| tableau.value_of(j)).collect();
    Outcome::Optimal { value, point }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaxSupport {
    pub point: Vec<Rational>,
    /// Indices of the groups carrying positive mass at `point`; these are
    /// exactly the groups that can be positive at some feasible point.
    pub positive_groups: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("linear program is infeasible")]
pub struct Infeasible;

/// Finds a feasible point giving positive total mass to every group of
/// variables that admits positive mass anywhere on the feasible region.
///
/// Each group is maximized on its own (skipping groups already positive at
/// a collected point), and the collected optima are averaged with equal
/// weights, which stays feasible by convexity.
pub fn feasible_point_with_max_support(lp: &LinearProgram, groups: &[Vec<usize>]) -> Result<MaxSupport, Infeasible> {
    let base = match solve(&LinearProgram {
        objective: None,
        ..lp.clone()
    }) {
        Outcome::Optimal { point, .. } => point,
        _ => return Err(Infeasible),
    };
    let mass = |point: &[Rational], group: &[usize]| group.iter().any(|&j| point[j].is_positive());
    let mut collected = vec![base];
    let mut positive_groups = Vec::new();
    for (g, group) in groups.iter().enumerate() {
        if collected.iter().any(|p| mass(p, group)) {
            positive_groups.push(g);
            continue;
        }
        let mut indicator = vec![Rational::zero(); lp.num_vars];
        for &j in group {
            indicator[j] = Rational::one();
        }
        let mut probe = lp.clone();
        probe.maximize(indicator.clone());
        let outcome = match solve(&probe) {
            Outcome::Unbounded => {
                probe.add_constraint(indicator, Relation::Le, Rational::one());
                solve(&probe)
            }
            other => other,
        };
        if let Outcome::Optimal { value, point } = outcome {
            if value.is_positive() {
                positive_groups.push(g);
                collected.push(point);
            }
        }
    }
    let weight = Rational::from_integer(collected.len()).recip();
    let point = (0..lp.num_vars)
        .map(|j| collected.iter().map(|p| &p[j]).sum::<Rational>() * &weight)
        .collect();
    Ok(MaxSupport { point, positive_groups })
}
