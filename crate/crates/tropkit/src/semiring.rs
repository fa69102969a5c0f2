//! The max-plus semiring over exact rationals, with -infinity as the
//! additive neutral element.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{precondition, Result};
use crate::rat::{fmt_rat, rat_to_f64, Rat};

/// An element of (Q ∪ {-∞}, max, +).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Trop {
    NegInf,
    Finite(Rat),
}

impl Trop {
    pub fn finite(r: Rat) -> Self {
        Trop::Finite(r)
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, Trop::NegInf)
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            Trop::NegInf => None,
            Trop::Finite(r) => Some(r),
        }
    }

    /// Tropical addition: max.
    pub fn add(&self, other: &Trop) -> Trop {
        match self.cmp(other) {
            Ordering::Less => other.clone(),
            _ => self.clone(),
        }
    }

    /// Tropical multiplication: +. NegInf is absorbing.
    pub fn mul(&self, other: &Trop) -> Trop {
        match (self, other) {
            (Trop::Finite(a), Trop::Finite(b)) => Trop::Finite(a + b),
            _ => Trop::NegInf,
        }
    }
}

impl PartialOrd for Trop {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Trop {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Trop::NegInf, Trop::NegInf) => Ordering::Equal,
            (Trop::NegInf, _) => Ordering::Less,
            (_, Trop::NegInf) => Ordering::Greater,
            (Trop::Finite(a), Trop::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Trop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trop::NegInf => write!(f, "-inf"),
            Trop::Finite(r) => write!(f, "{}", fmt_rat(r)),
        }
    }
}

/// log_t(t^x + t^y) for a quantization base t > 1, in floating point.
///
/// Computed as max + log(1 + t^(min-max)) / log(t), which never overflows
/// and keeps the result within [max, max + log_t 2] up to rounding.
pub fn dequantized_add(x: f64, y: f64, t: f64) -> Result<f64> {
    if !(t > 1.0) || !t.is_finite() {
        return Err(precondition(format!("dequantization base must satisfy t > 1, got {t}")));
    }
    if !x.is_finite() || !y.is_finite() {
        return Err(precondition("dequantized_add expects finite arguments"));
    }
    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
    let lt = t.ln();
    Ok(hi + ((lo - hi) * lt).exp().ln_1p() / lt)
}

/// Same, but with exact rational inputs (converted once to f64).
pub fn dequantized_add_rat(x: &Rat, y: &Rat, t: &Rat) -> Result<f64> {
    dequantized_add(rat_to_f64(x), rat_to_f64(y), rat_to_f64(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn semiring_ops() {
        let a = Trop::finite(rat(3));
        let b = Trop::finite(rat(-1));
        assert_eq!(a.add(&b), a);
        assert_eq!(a.mul(&b), Trop::finite(rat(2)));
        assert_eq!(Trop::NegInf.add(&b), b);
        assert_eq!(Trop::NegInf.mul(&a), Trop::NegInf);
    }

    #[test]
    fn dequant_sandwich() {
        let t = 2.0_f64;
        let v = dequantized_add(3.0, 3.0, t).unwrap();
        // log_2(2^3 + 2^3) = 4 exactly.
        assert!((v - 4.0).abs() < 1e-12);
        let w = dequantized_add(10.0, -50.0, 10.0).unwrap();
        assert!(w >= 10.0 - 1e-12 && w <= 10.0 + 2.0_f64.log10() + 1e-12);
    }

    #[test]
    fn dequant_rejects_bad_base() {
        assert!(dequantized_add(0.0, 0.0, 1.0).is_err());
        assert!(dequantized_add(0.0, 0.0, 0.5).is_err());
    }
}
