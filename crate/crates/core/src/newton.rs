//! Rees valuations of monomial ideals and integral closure tests.
//!
//! For a monomial ideal `I` the Rees valuations are the monomial valuations
//! whose weight vectors are the inner normals of the facets of the Newton
//! polyhedron `conv(exponents of I) + R^r_{>=0}` that do not lie in a
//! coordinate hyperplane. Each one is stored as a primitive integer weight
//! vector `w` together with `e = min_b w·b`. The normalized order
//! `vbar_I(a) = min_j (w_j·a)/e_j` then decides integral closure: `a` lies in
//! the closure of `I^n` exactly when `vbar_I(a) >= n`.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::null_space;
use crate::monomial::{Monomial, MonomialIdeal};
use crate::scalar::{common_denominator, Scalar};
use crate::Rational;

/// The monomial valuation `a ↦ w·a`, normalized by `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialValuation {
    weights: Vec<u64>,
    e: u64,
}

impl MonomialValuation {
    /// Accepts a weight vector and normalizing value as given.
    pub fn new(weights: Vec<u64>, e: u64) -> Result<Self> {
        if weights.iter().all(|&w| w == 0) {
            return Err(Error::Domain("valuation weights are all zero".into()));
        }
        if e == 0 {
            return Err(Error::Domain("valuation value e must be positive".into()));
        }
        Ok(Self { weights, e })
    }

    /// The valuation with weights `weights` normalized against `ideal`.
    pub fn for_ideal(weights: Vec<u64>, ideal: &MonomialIdeal) -> Result<Self> {
        ideal.check_dim(weights.len())?;
        let e = ideal
            .generators()
            .iter()
            .map(|g| weighted(&weights, g))
            .min()
            .expect("ideals are nonempty");
        Self::new(weights, e)
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn var_count(&self) -> usize {
        self.weights.len()
    }

    /// `w·a`.
    pub fn value(&self, a: &Monomial) -> Result<u64> {
        a.check_dim(self.var_count())?;
        Ok(weighted(&self.weights, a))
    }

    /// `(w·a)/e`.
    pub fn normalized<S: Scalar>(&self, a: &Monomial) -> Result<S> {
        Ok(S::from_u64(self.value(a)?) / S::from_u64(self.e))
    }
}

fn weighted(w: &[u64], a: &Monomial) -> u64 {
    w.iter().zip(a.exponents()).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValuationSource {
    ComputedFromIdeal,
    UserSupplied,
}

/// A finite family of valuations computing `vbar` for some ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationSet {
    valuations: Vec<MonomialValuation>,
    source: ValuationSource,
}

impl ValuationSet {
    /// Wraps externally supplied valuations.
    ///
    /// When `ideal` is given, every `e` must equal `min_b w·b` over its
    /// generators. Otherwise the data is accepted verbatim.
    pub fn user_supplied(
        valuations: Vec<MonomialValuation>,
        ideal: Option<&MonomialIdeal>,
    ) -> Result<Self> {
        let first = valuations
            .first()
            .ok_or_else(|| Error::Domain("valuation set is empty".into()))?;
        let r = first.var_count();
        let mut seen = BTreeSet::new();
        for v in &valuations {
            if v.var_count() != r {
                return Err(Error::Dimension {
                    expected: r,
                    found: v.var_count(),
                });
            }
            if !seen.insert(v.weights.clone()) {
                return Err(Error::Domain(format!(
                    "duplicate valuation weights {:?}",
                    v.weights
                )));
            }
            if let Some(ideal) = ideal {
                let expected = MonomialValuation::for_ideal(v.weights.clone(), ideal)?;
                if expected.e != v.e {
                    return Err(Error::Hypothesis(format!(
                        "valuation {:?} has e = {} but the ideal gives {}",
                        v.weights, v.e, expected.e
                    )));
                }
            }
        }
        Ok(Self {
            valuations,
            source: ValuationSource::UserSupplied,
        })
    }

    pub fn valuations(&self) -> &[MonomialValuation] {
        &self.valuations
    }

    pub fn source(&self) -> ValuationSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.valuations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valuations.is_empty()
    }

    pub fn var_count(&self) -> usize {
        self.valuations[0].var_count()
    }

    /// Same weights and values, ignoring order and provenance.
    pub fn same_valuations(&self, other: &ValuationSet) -> bool {
        let a: BTreeSet<_> = self.valuations.iter().collect();
        let b: BTreeSet<_> = other.valuations.iter().collect();
        a == b
    }
}

/// Rees valuations of `ideal`, one per non-coordinate facet of its Newton polyhedron.
pub fn rees_valuations(ideal: &MonomialIdeal) -> Result<ValuationSet> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let r = ideal.var_count();
    let points: Vec<Vec<Rational>> = ideal
        .generators()
        .iter()
        .map(|g| {
            g.exponents()
                .iter()
                .map(|&e| Rational::from_u64(e))
                .collect()
        })
        .collect();

    let mut found: BTreeSet<MonomialValuation> = BTreeSet::new();
    // A facet hyperplane w·x = e passes through `r - d` affinely independent
    // generators and is parallel to `d` coordinate directions (w_j = 0).
    for d in 0..r {
        for dirs in (0..r).combinations(d) {
            for pts in (0..points.len()).combinations(r - d) {
                let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(r);
                for &p in &pts {
                    let mut row = points[p].clone();
                    row.push(-Rational::one());
                    rows.push(row);
                }
                for &j in &dirs {
                    let mut row = vec![Rational::zero(); r + 1];
                    row[j] = Rational::one();
                    rows.push(row);
                }
                let ns = null_space(&rows, r + 1);
                if ns.len() != 1 {
                    continue;
                }
                if let Some(v) = supporting_valuation(&ns[0], ideal) {
                    found.insert(v);
                }
            }
        }
    }
    log::debug!("rees_valuations: {} facets for {}", found.len(), ideal);
    Ok(ValuationSet {
        valuations: found.into_iter().collect(),
        source: ValuationSource::ComputedFromIdeal,
    })
}

/// Turns a normal `(w, e)` into a primitive valuation if it supports the
/// polyhedron from below away from the origin.
fn supporting_valuation(normal: &[Rational], ideal: &MonomialIdeal) -> Option<MonomialValuation> {
    let r = normal.len() - 1;
    let mut normal = normal.to_vec();
    if normal[r].is_zero() {
        return None;
    }
    if normal[r].is_negative() {
        normal.iter_mut().for_each(|x| *x = -x.clone());
    }
    if normal[..r].iter().any(Signed::is_negative) {
        return None;
    }
    let denom = common_denominator(&normal[..r]);
    let ints: Vec<BigInt> = normal[..r]
        .iter()
        .map(|x| x.numer_big() * (&denom / x.denom_big()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    let weights: Vec<u64> = ints
        .iter()
        .map(|x| (x / &g).to_u64())
        .collect::<Option<_>>()?;
    let v = MonomialValuation::for_ideal(weights, ideal).ok()?;
    // w·p at the generators that determined the normal; the hyperplane
    // supports the polyhedron iff no generator lies strictly below it.
    let level = normal[r].clone() * Rational::from_bigint(&denom) / Rational::from_bigint(&g);
    (Rational::from_u64(v.e) == level).then_some(v)
}

/// `vbar(a) = min_j (w_j·a)/e_j`.
pub fn vbar<S: Scalar>(vs: &ValuationSet, a: &Monomial) -> Result<S> {
    let mut best: Option<S> = None;
    for v in &vs.valuations {
        let x = v.normalized::<S>(a)?;
        if best.as_ref().is_none_or(|b| x < *b) {
            best = Some(x);
        }
    }
    best.ok_or_else(|| Error::Domain("valuation set is empty".into()))
}

/// Decides whether `a` lies in the integral closure of `I^n`.
pub fn in_integral_closure(vs: &ValuationSet, a: &Monomial, n: u64) -> Result<bool> {
    for v in &vs.valuations {
        if v.value(a)? < n * v.e {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `v(J) = min_c w·c` over the generators of `J`.
pub fn valuation_of_ideal(v: &MonomialValuation, j: &MonomialIdeal) -> Result<u64> {
    j.check_dim(v.var_count())?;
    Ok(j.generators()
        .iter()
        .map(|c| weighted(&v.weights, c))
        .min()
        .expect("ideals are nonempty"))
}
