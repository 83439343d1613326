//! Exact scalars.
//!
//! Every mathematical quantity in this crate is an exact fraction. The
//! [`Scalar`] trait abstracts over the concrete fraction type so the solver
//! and the geometry can run on arbitrary-precision rationals (the default)
//! or on fixed-width rationals for small instances.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact ordered field element.
///
/// Implementors must be exact: no rounding may ever occur. Floating point
/// types are intentionally not implementors.
pub trait Scalar: Clone + Ord + Debug + Display + Num + Signed + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    /// Converts an arbitrary-precision integer. Fixed-width implementors
    /// panic when the value does not fit.
    fn from_bigint(v: &BigInt) -> Self;

    /// Numerator of the canonical form.
    fn numer_big(&self) -> BigInt;

    /// Denominator of the canonical form, always positive.
    fn denom_big(&self) -> BigInt;

    fn from_u64(v: u64) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }

    fn ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidDenominator);
        }
        Ok(Self::from_i64(numer) / Self::from_i64(denom))
    }

    fn is_integer(&self) -> bool {
        self.denom_big().is_one()
    }

    /// Largest integer not exceeding `self`.
    fn floor_big(&self) -> BigInt {
        self.numer_big().div_floor(&self.denom_big())
    }

    /// Smallest integer not below `self`.
    fn ceil_big(&self) -> BigInt {
        self.numer_big().div_ceil(&self.denom_big())
    }
}

/// Integer types usable as the numerator/denominator of a [`Ratio`] scalar.
pub trait RatioInt: Clone + Integer + Signed + Debug + Display + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;
    fn from_big(v: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
}

impl RatioInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_big(v: &BigInt) -> Self {
        v.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

macro_rules! fixed_ratio_int {
    ($($t:ty => $to:ident),*) => {$(
        impl RatioInt for $t {
            fn from_i64(v: i64) -> Self {
                <$t>::try_from(v).expect("scalar overflow")
            }
            fn from_big(v: &BigInt) -> Self {
                v.$to().expect("scalar overflow")
            }
            fn to_big(&self) -> BigInt {
                BigInt::from(*self)
            }
        }
    )*};
}

fixed_ratio_int!(i64 => to_i64, i128 => to_i128);

impl<T: RatioInt> Scalar for Ratio<T> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        Ratio::from_integer(T::from_big(v))
    }
    fn numer_big(&self) -> BigInt {
        self.numer().to_big()
    }
    fn denom_big(&self) -> BigInt {
        self.denom().to_big()
    }
}

/// Builds the canonical fraction `p/q`.
pub fn rat_make<S: Scalar>(p: i64, q: i64) -> Result<S> {
    S::ratio(p, q)
}

/// Builds the canonical fraction `p/q` from arbitrary-precision integers.
pub fn rat_make_big(p: BigInt, q: BigInt) -> Result<Ratio<BigInt>> {
    if q.is_zero() {
        return Err(Error::InvalidDenominator);
    }
    Ok(Ratio::new(p, q))
}

/// Exact total order on scalars.
pub fn rat_cmp<S: Scalar>(a: &S, b: &S) -> std::cmp::Ordering {
    a.cmp(b)
}

/// Exact inner product of two equal-length vectors.
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> Result<S> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone()))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into a canonical fraction.
pub fn parse_rational<S: Scalar>(text: &str) -> Result<S> {
    let text = text.trim();
    let parse_int = |s: &str| -> Result<BigInt> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Domain(format!("not a rational number: {text:?}")))
    };
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (parse_int(p)?, parse_int(q)?),
        None => (parse_int(text)?, BigInt::one()),
    };
    if q.is_zero() {
        return Err(Error::InvalidDenominator);
    }
    Ok(S::from_bigint(&p) / S::from_bigint(&q))
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a, S: Scalar>(values: impl IntoIterator<Item = &'a S>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(&v.denom_big()))
}

/// Converts a nonnegative integral scalar to `u64`.
pub(crate) fn to_u64<S: Scalar>(v: &S) -> Option<u64> {
    if !v.is_integer() || v.is_negative() {
        return None;
    }
    v.numer_big().to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use std::cmp::Ordering;

    fn q(p: i64, d: i64) -> Rational {
        rat_make(p, d).unwrap()
    }

    #[test]
    fn make_reduces_and_normalizes_sign() {
        assert_eq!(q(2, 4).to_string(), "1/2");
        let zero = q(0, 5);
        assert_eq!(zero.numer_big(), BigInt::from(0));
        assert_eq!(zero.denom_big(), BigInt::from(1));
        assert_eq!(zero.to_string(), "0");
        assert_eq!(q(-3, -6), q(1, 2));
        assert_eq!(q(3, -6).to_string(), "-1/2");
        assert_eq!(rat_make::<Rational>(1, 0), Err(Error::InvalidDenominator));
    }

    #[test]
    fn cmp_is_exact() {
        assert_eq!(rat_cmp(&q(2, 9), &q(4, 17)), Ordering::Less);
        assert_eq!(rat_cmp(&q(1, 2), &q(1, 2)), Ordering::Equal);
        assert_eq!(rat_cmp(&q(9, 2), &q(13, 3)), Ordering::Greater);
    }

    #[test]
    fn dot_examples() {
        let a = [q(2, 1), q(3, 1)];
        let b = [q(3, 1), q(7, 1)];
        assert_eq!(dot(&a, &b).unwrap(), q(27, 1));
        let ones = [q(1, 1), q(1, 1), q(1, 1)];
        let zeros = [q(0, 1), q(0, 1), q(0, 1)];
        assert_eq!(dot(&ones, &zeros).unwrap(), q(0, 1));
        let c = [q(1, 7), q(2, 7)];
        let d = [q(6, 17), q(11, 17)];
        assert_eq!(dot(&c, &d).unwrap(), q(4, 17));
        assert!(matches!(
            dot(&a, &ones),
            Err(Error::Dimension {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in ["0", "7", "-7", "2/9", "-13/3"] {
            let v: Rational = parse_rational(text).unwrap();
            assert_eq!(v.to_string(), text);
        }
        assert_eq!(parse_rational::<Rational>("4/6").unwrap(), q(2, 3));
        assert!(parse_rational::<Rational>("1/0").is_err());
        assert!(parse_rational::<Rational>("0.5").is_err());
    }

    #[test]
    fn fixed_width_scalar_agrees_with_big() {
        type Small = Ratio<i64>;
        let a: Small = rat_make(6, 17).unwrap();
        let b: Small = rat_make(-3, 4).unwrap();
        assert_eq!((a + b).to_string(), "-27/68");
        assert_eq!(
            common_denominator([&q(2, 9), &q(7, 9), &q(1, 6)]),
            BigInt::from(18)
        );
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(q(9, 2).floor_big(), BigInt::from(4));
        assert_eq!(q(9, 2).ceil_big(), BigInt::from(5));
        assert_eq!(q(-9, 2).floor_big(), BigInt::from(-5));
        assert_eq!(q(4, 1).ceil_big(), BigInt::from(4));
    }
}
