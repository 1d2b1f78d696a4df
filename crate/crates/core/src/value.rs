//! Scalars for the two tropical semirings used throughout this crate.
//!
//! The max-plus semiring works over `Q ∪ {-inf}` with max as addition and
//! ordinary + as multiplication; min-plus works over `Q ∪ {+inf}` with min
//! and +. Both infinities live in one type so that a single system can mix
//! max-plus rows (matrix A) with min-plus rows (matrix B).
//!
//! The one delicate case is `-inf + +inf`, which neither semiring defines on
//! its own. Here it resolves to the absorbing element of the semiring the
//! operation runs in: `-inf` in a max-plus context, `+inf` in a min-plus
//! context. That convention is exactly what makes a masked matrix entry
//! unable to win a max (or a min) no matter what the state contributes.
//!
//! Arithmetic is exact: finite values are arbitrary-precision rationals,
//! kept in canonical reduced form by `num`.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{Signed, Zero};

/// Exact rational scalar. Always canonical: reduced, positive denominator.
pub type Rational = num::BigRational;

/// Which semiring an additive operation resolves mixed infinities in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Context {
    MaxPlus,
    MinPlus,
}

/// A rational extended with both infinities.
///
/// The derived order puts `NegInf` below every finite value and `PosInf`
/// above, which is the total order both semirings share.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedValue {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtendedValue {
    pub fn integer(n: i64) -> Self {
        ExtendedValue::Finite(Rational::from_integer(BigInt::from(n)))
    }

    /// Finite rational `p/q`. Panics when `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        ExtendedValue::Finite(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedValue::Finite(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            ExtendedValue::Finite(q) => Some(q),
            _ => None,
        }
    }

    /// Tropical addition of the max-plus semiring: the larger operand.
    pub fn tmax(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical addition of the min-plus semiring: the smaller operand.
    pub fn tmin(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical multiplication: ordinary addition, extended to infinities.
    ///
    /// Like infinities add to themselves, a finite value never rescues an
    /// infinity, and the mixed case `-inf + +inf` collapses to the
    /// absorbing element of `ctx`.
    pub fn tadd(&self, other: &Self, ctx: Context) -> Self {
        use ExtendedValue::{Finite, NegInf, PosInf};
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a + b),
            (NegInf, NegInf) => NegInf,
            (PosInf, PosInf) => PosInf,
            (NegInf, Finite(_)) | (Finite(_), NegInf) => NegInf,
            (PosInf, Finite(_)) | (Finite(_), PosInf) => PosInf,
            (NegInf, PosInf) | (PosInf, NegInf) => match ctx {
                Context::MaxPlus => NegInf,
                Context::MinPlus => PosInf,
            },
        }
    }
}

impl From<Rational> for ExtendedValue {
    fn from(q: Rational) -> Self {
        ExtendedValue::Finite(q)
    }
}

impl fmt::Display for ExtendedValue {
    /// Canonical token form: `-inf`, `+inf`, or the rational as `p` / `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::NegInf => f.write_str("-inf"),
            ExtendedValue::PosInf => f.write_str("+inf"),
            ExtendedValue::Finite(q) => write!(f, "{}", q),
        }
    }
}

/// Why a scalar token failed to parse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseValueError {
    token: String,
}

impl ParseValueError {
    pub fn token(&self) -> &str {
        &self.token
    }
}

impl fmt::Display for ParseValueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid scalar token `{}`", self.token)
    }
}

impl std::error::Error for ParseValueError {}

impl FromStr for ExtendedValue {
    type Err = ParseValueError;

    /// Accepts exactly the scalar token grammar: `-inf`, `+inf`, an
    /// optionally signed integer, or `p/q` with a positive denominator.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = || ParseValueError {
            token: s.to_string(),
        };
        match s {
            "-inf" => return Ok(ExtendedValue::NegInf),
            "+inf" => return Ok(ExtendedValue::PosInf),
            _ => {}
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.parse().map_err(|_| fail())?;
            let q: BigInt = q.parse().map_err(|_| fail())?;
            if q.is_zero() || q.is_negative() {
                return Err(fail());
            }
            Ok(ExtendedValue::Finite(Rational::new(p, q)))
        } else {
            let n: BigInt = s.parse().map_err(|_| fail())?;
            Ok(ExtendedValue::Finite(Rational::from_integer(n)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ExtendedValue::{NegInf, PosInf};

    fn fin(n: i64) -> ExtendedValue {
        ExtendedValue::integer(n)
    }

    #[test]
    fn order_puts_neg_inf_below_and_pos_inf_above() {
        assert!(NegInf < fin(-1_000_000));
        assert!(fin(1_000_000) < PosInf);
        assert!(NegInf < PosInf);
        assert!(ExtendedValue::ratio(1, 3) < ExtendedValue::ratio(1, 2));
    }

    #[test]
    fn tmax_and_tmin_select_by_order() {
        assert_eq!(fin(2).tmax(&fin(5)), fin(5));
        assert_eq!(fin(2).tmin(&fin(5)), fin(2));
        assert_eq!(NegInf.tmax(&fin(-7)), fin(-7));
        assert_eq!(PosInf.tmin(&fin(-7)), fin(-7));
    }

    #[test]
    fn neg_inf_is_neutral_for_tmax_and_absorbing_for_maxplus_tadd() {
        for x in [NegInf, fin(-3), fin(0), ExtendedValue::ratio(7, 2), PosInf] {
            assert_eq!(NegInf.tmax(&x), x);
            assert_eq!(x.tmax(&NegInf), x);
        }
        assert_eq!(NegInf.tadd(&fin(9), Context::MaxPlus), NegInf);
        assert_eq!(fin(9).tadd(&NegInf, Context::MaxPlus), NegInf);
    }

    #[test]
    fn pos_inf_is_neutral_for_tmin_and_absorbing_for_minplus_tadd() {
        for x in [NegInf, fin(-3), fin(0), ExtendedValue::ratio(7, 2), PosInf] {
            assert_eq!(PosInf.tmin(&x), x);
            assert_eq!(x.tmin(&PosInf), x);
        }
        assert_eq!(PosInf.tadd(&fin(9), Context::MinPlus), PosInf);
        assert_eq!(fin(9).tadd(&PosInf, Context::MinPlus), PosInf);
    }

    #[test]
    fn mixed_infinities_resolve_by_context() {
        assert_eq!(NegInf.tadd(&PosInf, Context::MaxPlus), NegInf);
        assert_eq!(PosInf.tadd(&NegInf, Context::MaxPlus), NegInf);
        assert_eq!(NegInf.tadd(&PosInf, Context::MinPlus), PosInf);
        assert_eq!(PosInf.tadd(&NegInf, Context::MinPlus), PosInf);
    }

    #[test]
    fn finite_tadd_is_exact_rational_addition() {
        let a = ExtendedValue::ratio(1, 3);
        let b = ExtendedValue::ratio(1, 6);
        assert_eq!(a.tadd(&b, Context::MaxPlus), ExtendedValue::ratio(1, 2));
        // context is irrelevant when both operands are finite
        assert_eq!(a.tadd(&b, Context::MinPlus), ExtendedValue::ratio(1, 2));
    }

    #[test]
    fn display_emits_canonical_tokens() {
        assert_eq!(NegInf.to_string(), "-inf");
        assert_eq!(PosInf.to_string(), "+inf");
        assert_eq!(fin(-12).to_string(), "-12");
        assert_eq!(ExtendedValue::ratio(4, -8).to_string(), "-1/2");
        assert_eq!(ExtendedValue::ratio(6, 3).to_string(), "2");
    }

    #[test]
    fn parse_round_trips_canonical_tokens() {
        for tok in ["-inf", "+inf", "0", "-12", "7/3", "-1/2"] {
            let v: ExtendedValue = tok.parse().unwrap();
            assert_eq!(v.to_string(), tok);
        }
        // non-canonical but accepted inputs reduce on parse
        assert_eq!(
            "2/4".parse::<ExtendedValue>().unwrap(),
            ExtendedValue::ratio(1, 2)
        );
        assert_eq!("+3".parse::<ExtendedValue>().unwrap(), fin(3));
    }

    #[test]
    fn parse_rejects_malformed_tokens() {
        for tok in ["", "inf", "oo", "1/0", "1/-2", "1/2/3", "1.5", "- 1", "--3"] {
            assert!(tok.parse::<ExtendedValue>().is_err(), "accepted {tok:?}");
        }
    }
}
