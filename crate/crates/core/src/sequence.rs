//! The sequence `v(m) = v_I(J, m)`: eventual periodicity of its increments
//! and its deviation from the linear rate `l·m`.
//!
//! Periodicity is detected empirically on a finite window. A reported
//! period means the data is consistent with it up to the last computed
//! term, nothing more.

use crate::error::{Error, Result};
use crate::limits::v_of;
use crate::monomial::MonomialIdeal;
use crate::scalar::Scalar;

/// An eventual period: `v(m + t) - v(m) = increment` for all `m >= onset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Period {
    pub t: usize,
    /// 1-based index of the first `m` where the identity holds.
    pub onset: usize,
    pub increment: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceReport<S> {
    /// `v(1), .., v(M)`.
    pub values: Vec<u64>,
    /// `v(m+1) - v(m)` for `m = 1 .. M-1`.
    pub diffs: Vec<i64>,
    pub period: Option<Period>,
    pub max_deviation: S,
    pub sup_attained: bool,
    pub l: S,
}

/// `[v(1), .., v(M)]`.
pub fn compute_sequence(i: &MonomialIdeal, j: &MonomialIdeal, max_m: u64) -> Result<Vec<u64>> {
    (1..=max_m).map(|m| v_of(i, j, m)).collect()
}

/// Default detection window, `min(10, ceil(M/3))`.
pub fn default_window(len: usize) -> usize {
    len.div_ceil(3).clamp(1, 10)
}

/// Smallest `t <= window` with `v(m+t) - v(m)` constant over the last
/// `2·window` samples, extended backwards to the earliest onset.
///
/// `values[0]` is `v(1)`.
pub fn detect_period(values: &[u64], window: usize) -> Result<Option<Period>> {
    if window == 0 {
        return Err(Error::Domain("window must be positive".into()));
    }
    let len = values.len();
    if len < 2 * window {
        return Err(Error::InsufficientData {
            needed: 2 * window,
            found: len,
        });
    }
    let delta = |m: usize, t: usize| values[m + t] as i64 - values[m] as i64;
    let start = len - 2 * window;
    for t in 1..=window {
        // 0-based m ranges over start ..= len - 1 - t
        let c = delta(start, t);
        if !(start..len - t).all(|m| delta(m, t) == c) {
            continue;
        }
        let mut onset = start;
        while onset > 0 && delta(onset - 1, t) == c {
            onset -= 1;
        }
        return Ok(Some(Period {
            t,
            onset: onset + 1,
            increment: c,
        }));
    }
    Ok(None)
}

/// `max_m (l·m - v(m))`, and whether `v(m) = l·m` somewhere.
///
/// Fails if some `v(m) > l·m`, which is impossible for the true supremum `l`.
pub fn deviation_report<S: Scalar>(values: &[u64], l: &S) -> Result<(S, bool)> {
    if !l.is_positive() {
        return Err(Error::Domain(format!("rate {l} must be positive")));
    }
    let mut max_dev: Option<S> = None;
    let mut attained = false;
    for (idx, &v) in values.iter().enumerate() {
        let m = idx as u64 + 1;
        let dev = l.clone() * S::from_u64(m) - S::from_u64(v);
        if dev.is_negative() {
            return Err(Error::Inconsistent(format!(
                "v({m}) = {v} exceeds l·m = {}",
                l.clone() * S::from_u64(m)
            )));
        }
        attained |= dev.is_zero();
        if max_dev.as_ref().is_none_or(|b| dev > *b) {
            max_dev = Some(dev);
        }
    }
    let max_dev = max_dev.ok_or(Error::InsufficientData {
        needed: 1,
        found: 0,
    })?;
    Ok((max_dev, attained))
}

/// Full analysis of `v(1..M)` against the rate `l`.
pub fn analyze<S: Scalar>(
    values: Vec<u64>,
    l: S,
    window: Option<usize>,
) -> Result<SequenceReport<S>> {
    let diffs = values
        .windows(2)
        .map(|w| w[1] as i64 - w[0] as i64)
        .collect();
    let window = window.unwrap_or_else(|| default_window(values.len()));
    let period = if values.len() >= 2 * window {
        detect_period(&values, window)?
    } else {
        None
    };
    let (max_deviation, sup_attained) = deviation_report(&values, &l)?;
    Ok(SequenceReport {
        values,
        diffs,
        period,
        max_deviation,
        sup_attained,
        l,
    })
}

impl<S: Scalar> SequenceReport<S> {
    /// CSV with columns `m,v,diff,deviation`; `diff` is `v(m+1) - v(m)`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,v,diff,deviation\n");
        for (idx, &v) in self.values.iter().enumerate() {
            let m = idx + 1;
            let diff = self
                .diffs
                .get(idx)
                .map(|d| d.to_string())
                .unwrap_or_default();
            let dev = self.l.clone() * S::from_u64(m as u64) - S::from_u64(v);
            out.push_str(&format!("{m},{v},{diff},{dev}\n"));
        }
        out
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

    #[test]
    fn period_examples() {
        let p = detect_period(&[4, 9, 13, 18, 22, 27, 31, 36], 3)
            .unwrap()
            .unwrap();
        assert_eq!(
            p,
            Period {
                t: 2,
                onset: 1,
                increment: 9
            }
        );
        let p = detect_period(&[1, 2, 3, 4, 5], 2).unwrap().unwrap();
        assert_eq!(
            p,
            Period {
                t: 1,
                onset: 1,
                increment: 1
            }
        );
        assert_eq!(detect_period(&[0, 1, 3, 4, 6, 8, 9], 2).unwrap(), None);
        assert!(matches!(
            detect_period(&[1, 2, 3], 2),
            Err(Error::InsufficientData {
                needed: 4,
                found: 3
            })
        ));
    }

    #[test]
    fn onset_exposes_transient() {
        // diffs 3,1,1,1,1,1: period 1 from m = 2
        let p = detect_period(&[0, 3, 4, 5, 6, 7, 8], 2).unwrap().unwrap();
        assert_eq!(
            p,
            Period {
                t: 1,
                onset: 2,
                increment: 1
            }
        );
    }

    #[test]
    fn deviation_examples() {
        assert_eq!(
            deviation_report(&[4, 9, 13, 18, 22], &q(9, 2)).unwrap(),
            (q(1, 2), true)
        );
        assert_eq!(
            deviation_report(&[1, 2, 3], &q(1, 1)).unwrap(),
            (q(0, 1), true)
        );
        assert_eq!(deviation_report(&[4], &q(9, 2)).unwrap(), (q(1, 2), false));
        assert!(matches!(
            deviation_report(&[5], &q(9, 2)),
            Err(Error::Inconsistent(_))
        ));
        assert!(deviation_report(&[5], &q(0, 1)).is_err());
    }

    #[test]
    fn default_window_rule() {
        assert_eq!(default_window(5), 2);
        assert_eq!(default_window(30), 10);
        assert_eq!(default_window(100), 10);
        assert_eq!(default_window(1), 1);
    }

    #[test]
    fn csv_layout() {
        let report = analyze(vec![4, 9, 13], q(9, 2), Some(1)).unwrap();
        assert_eq!(
            report.to_csv(),
            "m,v,diff,deviation\n1,4,5,1/2\n2,9,4,0\n3,13,,1/2\n"
        );
    }
}
