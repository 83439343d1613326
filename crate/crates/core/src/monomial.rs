//! Monomials, monomial ideals and exact containment of their powers.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::simplex::{Constraint, LinearProgram, LpResult, Relation};
use crate::Rational;

/// Exponent vector of a monomial `x_1^{a_1} ... x_r^{a_r}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u64>);

impl Monomial {
    pub fn new(exponents: Vec<u64>) -> Self {
        Monomial(exponents)
    }

    pub fn one(var_count: usize) -> Self {
        Monomial(vec![0; var_count])
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn var_count(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.var_count(), other.var_count());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u64) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub(crate) fn check_dim(&self, var_count: usize) -> Result<()> {
        if self.var_count() != var_count {
            return Err(Error::Dimension {
                expected: var_count,
                found: self.var_count(),
            });
        }
        Ok(())
    }
}

impl From<Vec<u64>> for Monomial {
    fn from(v: Vec<u64>) -> Self {
        Monomial(v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A monomial ideal given by its minimal generators, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    var_count: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes `gens` into canonical form.
    pub fn new(gens: Vec<Monomial>) -> Result<Self> {
        ideal_minimalize(gens)
    }

    pub fn principal(m: Monomial) -> Self {
        MonomialIdeal {
            var_count: m.var_count(),
            generators: vec![m],
        }
    }

    /// The whole ring, generated by the constant monomial.
    pub fn unit(var_count: usize) -> Self {
        Self::principal(Monomial::one(var_count))
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }

    pub fn is_principal(&self) -> bool {
        self.generators.len() == 1
    }

    pub fn contains(&self, a: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(a))
    }

    pub fn power(&self, n: u64) -> MonomialIdeal {
        ideal_power(self, n)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check_same_dim(self, other)?;
        let prods = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a.mul(b)))
            .collect();
        ideal_minimalize(prods)
    }

    pub(crate) fn check_dim(&self, var_count: usize) -> Result<()> {
        if self.var_count != var_count {
            return Err(Error::Dimension {
                expected: var_count,
                found: self.var_count,
            });
        }
        Ok(())
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

fn check_same_dim(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<()> {
    b.check_dim(a.var_count)
}

/// Nonnegative multipliers `y` with `sum y_i = n` and `sum y_i b_i <= a`.
///
/// `y` is indexed like the ideal's (canonically sorted) generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub y: Vec<u64>,
}

impl MembershipCertificate {
    pub fn total(&self) -> u64 {
        self.y.iter().sum()
    }

    /// The product `prod b_i^{y_i}` witnessed by this certificate.
    pub fn product(&self, ideal: &MonomialIdeal) -> Monomial {
        let mut exps = vec![0u64; ideal.var_count()];
        for (g, &k) in ideal.generators().iter().zip(&self.y) {
            for (e, b) in exps.iter_mut().zip(g.exponents()) {
                *e += b * k;
            }
        }
        Monomial::new(exps)
    }

    pub fn verifies(&self, a: &Monomial, ideal: &MonomialIdeal, n: u64) -> bool {
        self.y.len() == ideal.generators().len()
            && self.total() == n
            && self.product(ideal).divides(a)
    }
}

/// Reduces a generator list to the minimal, lexicographically sorted set.
pub fn ideal_minimalize(gens: Vec<Monomial>) -> Result<MonomialIdeal> {
    let var_count = gens.first().ok_or(Error::EmptyIdeal)?.var_count();
    for g in &gens {
        g.check_dim(var_count)?;
    }
    let mut by_degree: Vec<Monomial> = gens
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    by_degree.sort_by_key(Monomial::degree);
    let mut kept: Vec<Monomial> = Vec::new();
    for g in by_degree {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    Ok(MonomialIdeal {
        var_count,
        generators: kept,
    })
}

/// Minimal generators of `ideal^n`; `ideal^0` is the unit ideal.
pub fn ideal_power(ideal: &MonomialIdeal, n: u64) -> MonomialIdeal {
    let mut acc = MonomialIdeal::unit(ideal.var_count);
    for _ in 0..n {
        acc = acc.product(ideal).expect("same dimension");
    }
    acc
}

/// Decides `a ∈ I^n`, returning a certificate when it holds.
pub fn monomial_in_power(
    a: &Monomial,
    ideal: &MonomialIdeal,
    n: u64,
) -> Result<Option<MembershipCertificate>> {
    a.check_dim(ideal.var_count)?;
    let t = ideal.generators.len();
    if n == 0 {
        return Ok(Some(MembershipCertificate { y: vec![0; t] }));
    }
    if !relaxation_feasible(a, ideal, n) {
        return Ok(None);
    }
    let gens: Vec<&[u64]> = ideal.generators.iter().map(|g| g.exponents()).collect();
    let r = ideal.var_count;
    // suffix_min[i][j] = min over generators i.. of exponent j
    let mut suffix_min = vec![vec![u64::MAX; r]; t + 1];
    for i in (0..t).rev() {
        for j in 0..r {
            suffix_min[i][j] = suffix_min[i + 1][j].min(gens[i][j]);
        }
    }
    let mut search = Search {
        gens: &gens,
        suffix_min: &suffix_min,
        y: vec![0; t],
    };
    let mut budget = a.exponents().to_vec();
    if search.place(0, n, &mut budget) {
        let cert = MembershipCertificate { y: search.y };
        debug_assert!(cert.verifies(a, ideal, n));
        Ok(Some(cert))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    gens: &'a [&'a [u64]],
    suffix_min: &'a [Vec<u64>],
    y: Vec<u64>,
}

impl Search<'_> {
    /// Places `left` more factors among generators `i..` within `budget`.
    fn place(&mut self, i: usize, left: u64, budget: &mut [u64]) -> bool {
        let t = self.gens.len();
        if left == 0 {
            return true;
        }
        if i == t {
            return false;
        }
        let floor = &self.suffix_min[i];
        if budget
            .iter()
            .zip(floor)
            .any(|(&b, &f)| f.saturating_mul(left) > b)
        {
            return false;
        }
        match t - i {
            1 => {
                self.y[i] = left;
                true
            }
            2 => match two_way_split(self.gens[i], self.gens[i + 1], left, budget) {
                Some(k) => {
                    self.y[i] = k;
                    self.y[i + 1] = left - k;
                    true
                }
                None => false,
            },
            _ => {
                let g = self.gens[i];
                let cap = g
                    .iter()
                    .zip(budget.iter())
                    .filter(|(&e, _)| e > 0)
                    .map(|(&e, &b)| b / e)
                    .min()
                    .unwrap_or(left)
                    .min(left);
                for k in (0..=cap).rev() {
                    for (b, &e) in budget.iter_mut().zip(g) {
                        *b -= e * k;
                    }
                    let ok = self.place(i + 1, left - k, budget);
                    for (b, &e) in budget.iter_mut().zip(g) {
                        *b += e * k;
                    }
                    if ok {
                        self.y[i] = k;
                        return true;
                    }
                }
                self.y[i] = 0;
                false
            }
        }
    }
}

/// Largest `k <= total` with `k*p + (total-k)*q <= budget`, if any.
fn two_way_split(p: &[u64], q: &[u64], total: u64, budget: &[u64]) -> Option<u64> {
    // Each coordinate gives k*(p_j - q_j) <= budget_j - total*q_j.
    let (mut lo, mut hi) = (0i128, total as i128);
    for ((&pj, &qj), &bj) in p.iter().zip(q).zip(budget) {
        let slope = pj as i128 - qj as i128;
        let room = bj as i128 - total as i128 * qj as i128;
        match slope.cmp(&0) {
            std::cmp::Ordering::Equal => {
                if room < 0 {
                    return None;
                }
            }
            std::cmp::Ordering::Greater => hi = hi.min(room.div_euclid(slope)),
            std::cmp::Ordering::Less => {
                // k >= room / slope with slope < 0, i.e. k >= ceil(-room / -slope)
                let need = (-room + (-slope) - 1).div_euclid(-slope);
                lo = lo.max(need);
            }
        }
    }
    (lo <= hi).then_some(hi as u64)
}

/// LP relaxation of the membership system: lambda >= 0, sum = n, sum lambda_i b_i <= a.
fn relaxation_feasible(a: &Monomial, ideal: &MonomialIdeal, n: u64) -> bool {
    let t = ideal.generators.len();
    let mut cons = Vec::with_capacity(ideal.var_count + 1);
    cons.push(Constraint::new(
        vec![Rational::from_i64(1); t],
        Relation::Eq,
        Rational::from_u64(n),
    ));
    for j in 0..ideal.var_count {
        cons.push(Constraint::new(
            ideal
                .generators
                .iter()
                .map(|g| Rational::from_u64(g.exponents()[j]))
                .collect(),
            Relation::Le,
            Rational::from_u64(a.exponents()[j]),
        ));
    }
    crate::simplex::lp_feasible(t, &cons)
        .expect("rows sized to generator count")
        .is_some()
}

/// Upper bound on `max{n : a ∈ I^n}` from the LP relaxation, `None` when unbounded.
pub(crate) fn relaxation_bound(a: &Monomial, ideal: &MonomialIdeal) -> Option<u64> {
    let t = ideal.generators.len();
    let mut lp = LinearProgram::minimize(vec![Rational::from_i64(-1); t]);
    for j in 0..ideal.var_count {
        lp.add(Constraint::new(
            ideal
                .generators
                .iter()
                .map(|g| Rational::from_u64(g.exponents()[j]))
                .collect(),
            Relation::Le,
            Rational::from_u64(a.exponents()[j]),
        ))
        .expect("rows sized to generator count");
    }
    match lp.solve() {
        LpResult::Optimal { value, .. } => (-value).floor_big().to_u64(),
        _ => None,
    }
}

/// Largest `n` with `a ∈ I^n`; `None` when `I` is the unit ideal.
pub fn max_power_containing(a: &Monomial, ideal: &MonomialIdeal) -> Result<Option<u64>> {
    a.check_dim(ideal.var_count)?;
    if ideal.is_unit() {
        return Ok(None);
    }
    let Some(upper) = relaxation_bound(a, ideal) else {
        return Ok(None);
    };
    for n in (0..=upper).rev() {
        if monomial_in_power(a, ideal, n)?.is_some() {
            return Ok(Some(n));
        }
    }
    unreachable!("every monomial lies in I^0")
}

/// Minimal generators of `J^m`.
pub(crate) fn power_generators(j: &MonomialIdeal, m: u64) -> Vec<Monomial> {
    if j.is_principal() {
        return vec![j.generators[0].pow(m)];
    }
    ideal_power(j, m).generators
}

/// Decides `J^m ⊆ I^n`.
pub fn ideal_contains_power(j: &MonomialIdeal, m: u64, i: &MonomialIdeal, n: u64) -> Result<bool> {
    check_same_dim(i, j)?;
    for g in power_generators(j, m) {
        if monomial_in_power(&g, i, n)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides `J ⊆ √I` for monomial ideals.
pub fn radical_contains(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<bool> {
    check_same_dim(i, j)?;
    Ok(j.generators.iter().all(|c| {
        i.generators
            .iter()
            .any(|b| b.support().all(|v| c.exponents()[v] > 0))
    }))
}
