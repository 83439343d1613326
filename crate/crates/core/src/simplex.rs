//! Exact two-phase simplex with Bland's anticycling rule.
//!
//! The solver works on a dense tableau. Problems in this crate are tiny
//! (tens of columns at most) and exactness matters far more than speed.

use std::fmt;

use log::{debug, trace};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn flipped(self) -> Self {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Eq => Relation::Eq,
            Relation::Ge => Relation::Le,
        }
    }

    pub fn holds<S: Scalar>(self, lhs: &S, rhs: &S) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

/// A single linear constraint `coeffs · x (rel) rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint<S> {
    pub coeffs: Vec<S>,
    pub relation: Relation,
    pub rhs: S,
}

impl<S: Scalar> Constraint<S> {
    pub fn new(coeffs: Vec<S>, relation: Relation, rhs: S) -> Self {
        Self {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn is_satisfied_by(&self, point: &[S]) -> bool {
        let lhs = self
            .coeffs
            .iter()
            .zip(point)
            .fold(S::zero(), |acc, (a, x)| acc + a.clone() * x.clone());
        self.relation.holds(&lhs, &self.rhs)
    }
}

/// Minimize `objective · x` subject to linear constraints.
///
/// Variables are nonnegative unless marked free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram<S> {
    objective: Vec<S>,
    constraints: Vec<Constraint<S>>,
    nonneg: Vec<bool>,
}

impl<S: Scalar> LinearProgram<S> {
    /// A program over `objective.len()` nonnegative variables.
    pub fn minimize(objective: Vec<S>) -> Self {
        let n = objective.len();
        Self {
            objective,
            constraints: Vec::new(),
            nonneg: vec![true; n],
        }
    }

    /// A pure feasibility program over `vars` nonnegative variables.
    pub fn feasibility(vars: usize) -> Self {
        Self::minimize(vec![S::zero(); vars])
    }

    pub fn var_count(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[S] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint<S>] {
        &self.constraints
    }

    pub fn is_nonneg(&self, var: usize) -> bool {
        self.nonneg[var]
    }

    /// Marks a variable as free (unrestricted in sign).
    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.nonneg[var] = false;
        self
    }

    pub fn add(&mut self, constraint: Constraint<S>) -> Result<&mut Self> {
        if constraint.coeffs.len() != self.var_count() {
            return Err(Error::Dimension {
                expected: self.var_count(),
                found: constraint.coeffs.len(),
            });
        }
        self.constraints.push(constraint);
        Ok(self)
    }

    pub fn with(mut self, coeffs: Vec<S>, relation: Relation, rhs: S) -> Result<Self> {
        self.add(Constraint::new(coeffs, relation, rhs))?;
        Ok(self)
    }

    /// True when `point` meets every sign restriction and constraint exactly.
    pub fn is_feasible_point(&self, point: &[S]) -> bool {
        point.len() == self.var_count()
            && point
                .iter()
                .zip(&self.nonneg)
                .all(|(x, &nn)| !nn || !x.is_negative())
            && self.constraints.iter().all(|c| c.is_satisfied_by(point))
    }

    pub fn evaluate(&self, point: &[S]) -> S {
        self.objective
            .iter()
            .zip(point)
            .fold(S::zero(), |acc, (c, x)| acc + c.clone() * x.clone())
    }

    pub fn solve(&self) -> LpResult<S> {
        Tableau::build(self).run(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult<S> {
    /// `point` is a vertex of the feasible region attaining `value`.
    Optimal {
        value: S,
        point: Vec<S>,
    },
    Infeasible,
    Unbounded,
}

impl<S> LpResult<S> {
    pub fn status(&self) -> LpStatus {
        match self {
            LpResult::Optimal { .. } => LpStatus::Optimal,
            LpResult::Infeasible => LpStatus::Infeasible,
            LpResult::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn value(&self) -> Option<&S> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[S]> {
        match self {
            LpResult::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn into_optimal(self) -> Option<(S, Vec<S>)> {
        match self {
            LpResult::Optimal { value, point } => Some((value, point)),
            _ => None,
        }
    }
}

/// Solves `lp`.
pub fn lp_solve<S: Scalar>(lp: &LinearProgram<S>) -> LpResult<S> {
    lp.solve()
}

/// Phase-one feasibility check over nonnegative variables.
///
/// Returns a feasible vertex when one exists.
pub fn lp_feasible<S: Scalar>(
    vars: usize,
    constraints: &[Constraint<S>],
) -> Result<Option<Vec<S>>> {
    let mut lp = LinearProgram::feasibility(vars);
    for c in constraints {
        lp.add(c.clone())?;
    }
    Ok(lp.solve().into_optimal().map(|(_, point)| point))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColumnKind {
    /// Positive part of an original variable.
    Plus(usize),
    /// Negative part of a free original variable.
    Minus(usize),
    Slack,
    Artificial,
}

struct Tableau<S> {
    /// `rows[i]` holds the constraint coefficients followed by the rhs.
    rows: Vec<Vec<S>>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
    /// Reduced costs followed by minus the current objective value.
    cost: Vec<S>,
    pivots: usize,
}

impl<S: Scalar> Tableau<S> {
    fn build(lp: &LinearProgram<S>) -> Self {
        let mut kinds: Vec<ColumnKind> = Vec::new();
        let mut var_cols = Vec::with_capacity(lp.var_count());
        for (v, &nn) in lp.nonneg.iter().enumerate() {
            let plus = kinds.len();
            kinds.push(ColumnKind::Plus(v));
            let minus = if nn {
                None
            } else {
                kinds.push(ColumnKind::Minus(v));
                Some(plus + 1)
            };
            var_cols.push((plus, minus));
        }

        // Normalize every row to a nonnegative rhs.
        let normalized: Vec<(Vec<S>, Relation, S)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    (
                        c.coeffs.iter().map(|a| -a.clone()).collect(),
                        c.relation.flipped(),
                        -c.rhs.clone(),
                    )
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();

        let slack_start = kinds.len();
        let mut slack_of_row = vec![None; normalized.len()];
        for (i, (_, rel, _)) in normalized.iter().enumerate() {
            if *rel != Relation::Eq {
                slack_of_row[i] = Some(kinds.len());
                kinds.push(ColumnKind::Slack);
            }
        }
        debug_assert!(kinds[slack_start..].iter().all(|k| *k == ColumnKind::Slack));
        let mut art_of_row = vec![None; normalized.len()];
        for (i, (_, rel, _)) in normalized.iter().enumerate() {
            if *rel != Relation::Le {
                art_of_row[i] = Some(kinds.len());
                kinds.push(ColumnKind::Artificial);
            }
        }

        let width = kinds.len();
        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        for (i, (coeffs, rel, rhs)) in normalized.into_iter().enumerate() {
            let mut row = vec![S::zero(); width + 1];
            for (v, a) in coeffs.into_iter().enumerate() {
                let (plus, minus) = var_cols[v];
                if let Some(minus) = minus {
                    row[minus] = -a.clone();
                }
                row[plus] = a;
            }
            if let Some(s) = slack_of_row[i] {
                row[s] = if rel == Relation::Le {
                    S::one()
                } else {
                    -S::one()
                };
            }
            match art_of_row[i] {
                Some(a) => {
                    row[a] = S::one();
                    basis.push(a);
                }
                None => basis.push(slack_of_row[i].expect("<= row has a slack")),
            }
            row[width] = rhs;
            rows.push(row);
        }

        Self {
            rows,
            basis,
            kinds,
            cost: vec![S::zero(); width + 1],
            pivots: 0,
        }
    }

    fn width(&self) -> usize {
        self.kinds.len()
    }

    /// Installs reduced costs for the column costs `costs`.
    fn price(&mut self, costs: &[S]) {
        let width = self.width();
        let mut cost = costs.to_vec();
        cost.push(S::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=width {
                if !row[j].is_zero() {
                    cost[j] = cost[j].clone() - cb.clone() * row[j].clone();
                }
            }
        }
        self.cost = cost;
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let width = self.width();
        let p = self.rows[r][col].clone();
        if !p.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.clone() / p.clone();
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in 0..=width {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].clone() - f.clone() * pivot_row[j].clone();
                }
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for (c, p) in self.cost.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *c = c.clone() - f.clone() * p.clone();
                }
            }
        }
        self.basis[r] = col;
        self.pivots += 1;
        trace!("pivot #{} row {r} col {col}\n{}", self.pivots, self);
    }

    /// Runs Bland's rule until optimal. Returns false if unbounded.
    fn iterate(&mut self, allowed: impl Fn(ColumnKind) -> bool) -> bool {
        let width = self.width();
        loop {
            let entering =
                (0..width).find(|&j| allowed(self.kinds[j]) && self.cost[j].is_negative());
            let Some(col) = entering else {
                return true;
            };
            let mut leave: Option<(usize, S)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = row[width].clone() / row[col].clone();
                let better = match &leave {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }

    fn run(mut self, lp: &LinearProgram<S>) -> LpResult<S> {
        let width = self.width();
        debug!(
            "simplex: {} rows, {} columns ({} variables)",
            self.rows.len(),
            width,
            lp.var_count()
        );

        if self.kinds.contains(&ColumnKind::Artificial) {
            let phase_one: Vec<S> = self
                .kinds
                .iter()
                .map(|k| match k {
                    ColumnKind::Artificial => S::one(),
                    _ => S::zero(),
                })
                .collect();
            self.price(&phase_one);
            trace!("phase one start\n{}", self);
            let bounded = self.iterate(|_| true);
            debug_assert!(bounded, "phase one objective is bounded below by zero");
            if !self.cost[width].is_zero() {
                debug!("simplex: infeasible after {} pivots", self.pivots);
                return LpResult::Infeasible;
            }
            self.expel_artificials();
        }

        let mut costs = vec![S::zero(); width];
        for (j, kind) in self.kinds.iter().enumerate() {
            match *kind {
                ColumnKind::Plus(v) => costs[j] = lp.objective[v].clone(),
                ColumnKind::Minus(v) => costs[j] = -lp.objective[v].clone(),
                _ => {}
            }
        }
        self.price(&costs);
        trace!("phase two start\n{}", self);
        if !self.iterate(|k| k != ColumnKind::Artificial) {
            debug!("simplex: unbounded after {} pivots", self.pivots);
            return LpResult::Unbounded;
        }

        let mut point = vec![S::zero(); lp.var_count()];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            match self.kinds[b] {
                ColumnKind::Plus(v) => point[v] = point[v].clone() + row[width].clone(),
                ColumnKind::Minus(v) => point[v] = point[v].clone() - row[width].clone(),
                _ => {}
            }
        }
        let value = lp.evaluate(&point);
        debug_assert_eq!(value, -self.cost[width].clone());
        debug!("simplex: optimal {} after {} pivots", value, self.pivots);
        LpResult::Optimal { value, point }
    }

    /// Pivots zero-level artificials out of the basis, dropping redundant rows.
    fn expel_artificials(&mut self) {
        let width = self.width();
        let mut r = 0;
        while r < self.rows.len() {
            if self.kinds[self.basis[r]] != ColumnKind::Artificial {
                r += 1;
                continue;
            }
            let col = (0..width)
                .find(|&j| self.kinds[j] != ColumnKind::Artificial && !self.rows[r][j].is_zero());
            match col {
                Some(col) => {
                    self.pivot(r, col);
                    r += 1;
                }
                None => {
                    trace!("dropping redundant row {r}");
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }
    }
}

impl<S: Scalar> fmt::Display for Tableau<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (row, b) in self.rows.iter().zip(&self.basis) {
            write!(f, "  x{b:<3}|")?;
            for x in row {
                write!(f, " {x:>6}")?;
            }
            writeln!(f)?;
        }
        write!(f, "  cost|")?;
        for x in &self.cost {
            write!(f, " {x:>6}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_make;
    use crate::Rational;

    fn q(p: i64, d: i64) -> Rational {
        rat_make(p, d).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn example_region_one_minimum() {
        // Region where the x-coordinate form dominates, I = (x^3, x^2 y, y^2), J = (x^3 y^7).
        let col1 = vec![q(1, 1), q(2, 3), q(0, 1)];
        let col2 = vec![q(0, 1), q(1, 7), q(2, 7)];
        let diff: Vec<Rational> = col1.iter().zip(&col2).map(|(a, b)| a - b).collect();
        let lp = LinearProgram::minimize(col1.clone())
            .with(ints(&[1, 1, 1]), Relation::Eq, q(1, 1))
            .unwrap()
            .with(diff, Relation::Ge, q(0, 1))
            .unwrap();
        let (value, point) = lp.solve().into_optimal().unwrap();
        assert_eq!(value, q(2, 9));
        assert_eq!(point, vec![q(2, 9), q(0, 1), q(7, 9)]);
        assert!(lp.is_feasible_point(&point));
    }

    #[test]
    fn trivial_equality() {
        let lp = LinearProgram::minimize(ints(&[1]))
            .with(ints(&[1]), Relation::Eq, q(1, 1))
            .unwrap();
        assert_eq!(
            lp.solve(),
            LpResult::Optimal {
                value: q(1, 1),
                point: ints(&[1])
            }
        );
    }

    #[test]
    fn unbounded_direction() {
        let lp = LinearProgram::minimize(ints(&[-1]))
            .with(ints(&[1]), Relation::Ge, q(0, 1))
            .unwrap();
        assert_eq!(lp.solve().status(), LpStatus::Unbounded);
    }

    #[test]
    fn feasibility_examples() {
        let cons = vec![
            Constraint::new(ints(&[1, 1]), Relation::Eq, q(1, 1)),
            Constraint::new(ints(&[3, 0]), Relation::Le, q(0, 1)),
        ];
        assert_eq!(lp_feasible(2, &cons).unwrap(), Some(ints(&[0, 1])));

        let cons = vec![
            Constraint::new(ints(&[1]), Relation::Eq, q(1, 1)),
            Constraint::new(ints(&[1]), Relation::Le, q(0, 1)),
        ];
        assert_eq!(lp_feasible(1, &cons).unwrap(), None);
    }

    #[test]
    fn degenerate_programs() {
        let empty: LinearProgram<Rational> = LinearProgram::minimize(vec![]);
        assert_eq!(
            empty.solve(),
            LpResult::Optimal {
                value: q(0, 1),
                point: vec![]
            }
        );
        let bad = LinearProgram::<Rational>::minimize(vec![])
            .with(vec![], Relation::Ge, q(1, 1))
            .unwrap();
        assert_eq!(bad.solve(), LpResult::Infeasible);
        let no_rows = LinearProgram::minimize(ints(&[2, 0]));
        assert_eq!(no_rows.solve().value(), Some(&q(0, 1)));
    }

    #[test]
    fn free_variables_and_negative_rhs() {
        // min x - y, x free, y >= 0, x >= -3 (as -x <= 3), y <= 2
        let mut lp = LinearProgram::minimize(ints(&[1, -1]));
        lp.set_free(0);
        let lp = lp
            .with(ints(&[-1, 0]), Relation::Le, q(3, 1))
            .unwrap()
            .with(ints(&[0, 1]), Relation::Le, q(2, 1))
            .unwrap();
        let (value, point) = lp.solve().into_optimal().unwrap();
        assert_eq!(value, q(-5, 1));
        assert_eq!(point, ints(&[-3, 2]));
    }

    #[test]
    fn redundant_equalities() {
        let lp = LinearProgram::minimize(ints(&[1, 2]))
            .with(ints(&[1, 1]), Relation::Eq, q(1, 1))
            .unwrap()
            .with(ints(&[2, 2]), Relation::Eq, q(2, 1))
            .unwrap();
        assert_eq!(lp.solve().value(), Some(&q(1, 1)));
    }

    #[test]
    fn dimension_checked() {
        let mut lp = LinearProgram::minimize(ints(&[1, 2]));
        assert!(lp
            .add(Constraint::new(ints(&[1]), Relation::Le, q(1, 1)))
            .is_err());
    }

    #[test]
    fn cycling_prone_instance_terminates() {
        // Beale's classic cycling example; Bland's rule must terminate.
        let lp = LinearProgram::minimize(vec![q(-3, 4), q(150, 1), q(-1, 50), q(6, 1)])
            .with(
                vec![q(1, 4), q(-60, 1), q(-1, 25), q(9, 1)],
                Relation::Le,
                q(0, 1),
            )
            .unwrap()
            .with(
                vec![q(1, 2), q(-90, 1), q(-1, 50), q(3, 1)],
                Relation::Le,
                q(0, 1),
            )
            .unwrap()
            .with(ints(&[0, 0, 1, 0]), Relation::Le, q(1, 1))
            .unwrap();
        let (value, point) = lp.solve().into_optimal().unwrap();
        assert_eq!(value, q(-1, 20));
        assert!(lp.is_feasible_point(&point));
    }
}
