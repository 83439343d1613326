//! Samuel's functions and their asymptotic limits for monomial ideals.
//!
//! For ideals `I`, `J` with `J ⊆ √I`:
//!
//! * `v(m)` is the largest `n` with `J^m ⊆ I^n`,
//! * `w(n)` is the smallest `m` with `J^m ⊆ I^n`,
//! * `l = lim v(m)/m` (a supremum) and `L = lim w(n)/n` (an infimum), with `l·L = 1`.
//!
//! For a principal `J = (x^c)` the infimum `L` is the minimum over the
//! probability simplex of `max_j (sum_i b_ij z_i) / c_j`, solved as one
//! linear program per coordinate region where the `j`-th form dominates.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::monomial::{
    ideal_contains_power, max_power_containing, power_generators, radical_contains, Monomial,
    MonomialIdeal,
};
use crate::newton::{rees_valuations, vbar};
use crate::scalar::{common_denominator, to_u64, Scalar};
use crate::simplex::{Constraint, LinearProgram, LpResult, Relation};

/// Asymptotic limits of `J^m ⊆ I^n` together with a pair attaining them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitResult<S> {
    /// `L_J(I) = inf { m/n : J^m ⊆ I^n }`.
    pub w_limit: S,
    /// `l_I(J) = sup { n/m : J^m ⊆ I^n } = 1 / L_J(I)`.
    pub v_limit: S,
    /// `J^witness_m ⊆ I^witness_n` with `witness_n / witness_m = l_I(J)`.
    pub witness_m: u64,
    pub witness_n: u64,
    /// Minimizer on the simplex, indexed like the generators of `I`.
    pub optimizer_z: Vec<S>,
    /// Coordinates `k` (0-based) whose region attains the minimum.
    pub active_regions: Vec<usize>,
}

/// Optimum of the linear program restricted to one coordinate region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionOptimum<S> {
    /// Coordinate index `k` (0-based) of the dominating form.
    pub region: usize,
    pub value: S,
    pub point: Vec<S>,
}

fn check_hypothesis(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<()> {
    j.check_dim(i.var_count())?;
    if i.is_unit() {
        return Err(Error::Hypothesis("I is the unit ideal".into()));
    }
    if !radical_contains(i, j)? {
        return Err(Error::Hypothesis(format!(
            "{j} is not contained in the radical of {i}"
        )));
    }
    Ok(())
}

fn max_power(a: &Monomial, i: &MonomialIdeal) -> Result<u64> {
    max_power_containing(a, i)?.ok_or_else(|| Error::Hypothesis("I is the unit ideal".into()))
}

/// `v_I(J, m)`: the largest `n` with `J^m ⊆ I^n`.
pub fn v_of(i: &MonomialIdeal, j: &MonomialIdeal, m: u64) -> Result<u64> {
    check_hypothesis(i, j)?;
    if m == 0 {
        return Ok(0);
    }
    let mut best = u64::MAX;
    for g in power_generators(j, m) {
        best = best.min(max_power(&g, i)?);
    }
    Ok(best)
}

/// `w_J(I, n)`: the smallest `m` with `J^m ⊆ I^n`.
pub fn w_of(i: &MonomialIdeal, j: &MonomialIdeal, n: u64) -> Result<u64> {
    check_hypothesis(i, j)?;
    if n == 0 {
        return Ok(0);
    }
    let lim: LimitResult<crate::Rational> = limit_l_general(i, j)?;
    // m/n >= L for every containment, so the search starts at ceil(n L).
    let start = (lim.w_limit * crate::Rational::from_u64(n))
        .ceil_big()
        .to_u64()
        .expect("fits in u64");
    let mut m = start.max(1);
    loop {
        if ideal_contains_power(j, m, i, n)? {
            return Ok(m);
        }
        m += 1;
    }
}

/// Solves the per-region programs for `J = (x^c)`.
///
/// Regions are the coordinates `k` with `c_k > 0`; coordinates with
/// `c_k = 0` force every generator that uses them to weight zero.
pub fn region_optima<S: Scalar>(i: &MonomialIdeal, c: &Monomial) -> Result<Vec<RegionOptimum<S>>> {
    c.check_dim(i.var_count())?;
    let t = i.generators().len();
    let r = i.var_count();
    let column = |j: usize| -> Vec<S> {
        let cj = S::from_u64(c.exponents()[j]);
        i.generators()
            .iter()
            .map(|g| S::from_u64(g.exponents()[j]) / cj.clone())
            .collect()
    };
    let live: Vec<usize> = (0..r).filter(|&j| c.exponents()[j] > 0).collect();
    let dead: Vec<usize> = (0..r).filter(|&j| c.exponents()[j] == 0).collect();
    let columns: Vec<(usize, Vec<S>)> = live.iter().map(|&j| (j, column(j))).collect();

    let mut out = Vec::new();
    for (k, bk) in &columns {
        let mut lp = LinearProgram::minimize(bk.clone());
        lp.add(Constraint::new(vec![S::one(); t], Relation::Eq, S::one()))?;
        for (j, bj) in &columns {
            if j == k {
                continue;
            }
            let diff = bk
                .iter()
                .zip(bj)
                .map(|(a, b)| a.clone() - b.clone())
                .collect();
            lp.add(Constraint::new(diff, Relation::Ge, S::zero()))?;
        }
        for &j in &dead {
            let row = i
                .generators()
                .iter()
                .map(|g| S::from_u64(g.exponents()[j]))
                .collect();
            lp.add(Constraint::new(row, Relation::Le, S::zero()))?;
        }
        match lp.solve() {
            LpResult::Optimal { value, point } => out.push(RegionOptimum {
                region: *k,
                value,
                point,
            }),
            LpResult::Infeasible => {}
            LpResult::Unbounded => {
                return Err(Error::Inconsistent("region program is unbounded".into()))
            }
        }
    }
    Ok(out)
}

/// `L_J(I)` and `l_I(J)` for a principal `J = (x^c)`.
pub fn limit_l<S: Scalar>(i: &MonomialIdeal, c: &Monomial) -> Result<LimitResult<S>> {
    let j = MonomialIdeal::principal(c.clone());
    check_hypothesis(i, &j)?;
    if c.is_one() {
        return Err(Error::Hypothesis("J is the unit ideal".into()));
    }
    let optima = region_optima::<S>(i, c)?;
    let best = optima
        .iter()
        .map(|o| o.value.clone())
        .min()
        .ok_or_else(|| Error::Hypothesis("no region program is feasible".into()))?;
    if !best.is_positive() {
        return Err(Error::Inconsistent(format!("nonpositive limit {best}")));
    }
    let active: Vec<&RegionOptimum<S>> = optima.iter().filter(|o| o.value == best).collect();
    let z = active[0].point.clone();
    let (m, n) = witness(i, &j, c, &best, &z)?;
    Ok(LimitResult {
        v_limit: S::one() / best.clone(),
        w_limit: best,
        witness_m: m,
        witness_n: n,
        optimizer_z: z,
        active_regions: active.iter().map(|o| o.region).collect(),
    })
}

/// Clears denominators of the optimizer to get an exact containment, then
/// reduces it towards the lowest-terms pair.
fn witness<S: Scalar>(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    c: &Monomial,
    best: &S,
    z: &[S],
) -> Result<(u64, u64)> {
    let scale = common_denominator(z.iter().chain(std::iter::once(best)));
    let n_big = scale.clone();
    let m_big = (S::from_bigint(&scale) * best.clone()).numer_big();
    let y: Vec<u64> = z
        .iter()
        .map(|zi| to_u64(&(zi.clone() * S::from_bigint(&scale))))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Inconsistent("optimizer is not a probability vector".into()))?;
    let (m_full, n_full) = (
        m_big.to_u64().expect("witness fits in u64"),
        n_big.to_u64().expect("witness fits in u64"),
    );
    // y certifies x^(m c) ∈ I^n directly.
    for (col, &cj) in c.exponents().iter().enumerate() {
        let used: u64 = i
            .generators()
            .iter()
            .zip(&y)
            .map(|(g, &k)| g.exponents()[col] * k)
            .sum();
        if used > cj * m_full {
            return Err(Error::Inconsistent(
                "scaled optimizer is not a certificate".into(),
            ));
        }
    }
    // lowest terms: L = m/n
    let m_low = best.numer_big();
    let n_low = best.denom_big();
    let factor = &m_big / &m_low;
    debug_assert_eq!(&factor * &n_low, n_big);
    let factor = factor.to_u64().expect("fits");
    let (m_low, n_low) = (m_low.to_u64().expect("fits"), n_low.to_u64().expect("fits"));
    for d in 1..factor {
        if factor.is_multiple_of(d) && ideal_contains_power(j, d * m_low, i, d * n_low)? {
            return Ok((d * m_low, d * n_low));
        }
    }
    Ok((m_full, n_full))
}

/// Limits for an arbitrary `J`: `L_J(I)` is the largest `L` over its generators.
///
/// The witness pair is the one of the first generator attaining the
/// maximum; it certifies containment of that generator's powers. For
/// non-principal `J` the infimum need not be attained by `J` itself.
pub fn limit_l_general<S: Scalar>(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<LimitResult<S>> {
    check_hypothesis(i, j)?;
    let mut best: Option<LimitResult<S>> = None;
    for g in j.generators() {
        let res = limit_l::<S>(i, g)?;
        if best.as_ref().is_none_or(|b| res.w_limit > b.w_limit) {
            best = Some(res);
        }
    }
    Ok(best.expect("ideals are nonempty"))
}

/// `v_I(J_1..J_k; m_1..m_k)`: the largest `n` with `J_1^{m_1}...J_k^{m_k} ⊆ I^n`.
pub fn v_multi(i: &MonomialIdeal, js: &[MonomialIdeal], ms: &[u64]) -> Result<u64> {
    if js.len() != ms.len() {
        return Err(Error::Dimension {
            expected: js.len(),
            found: ms.len(),
        });
    }
    for j in js {
        check_hypothesis(i, j)?;
    }
    let mut product = MonomialIdeal::unit(i.var_count());
    for (j, &m) in js.iter().zip(ms) {
        if m == 0 {
            continue;
        }
        let power = MonomialIdeal::new(power_generators(j, m))?;
        product = product.product(&power)?;
    }
    let mut best = u64::MAX;
    for g in product.generators() {
        best = best.min(max_power(g, i)?);
    }
    Ok(best)
}

/// `l_I(J)` computed by the linear programs and by the Rees valuations of `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck<S> {
    pub via_linear_program: S,
    pub via_valuations: S,
    pub agree: bool,
}

pub fn cross_check_l<S: Scalar>(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<CrossCheck<S>> {
    let lp = limit_l_general::<S>(i, j)?.v_limit;
    let vs = rees_valuations(i)?;
    let mut via_val: Option<S> = None;
    for c in j.generators() {
        let x = vbar::<S>(&vs, c)?;
        if via_val.as_ref().is_none_or(|b| x < *b) {
            via_val = Some(x);
        }
    }
    let via_val = via_val.expect("ideals are nonempty");
    if lp != via_val {
        log::warn!("cross check failed for I = {i}, J = {j}: {lp} vs {via_val}");
    }
    Ok(CrossCheck {
        agree: lp == via_val,
        via_linear_program: lp,
        via_valuations: via_val,
    })
}
