//! Integer Laurent polynomials in q^(1/2), keyed by doubled exponent so that
//! half-integer powers stay exact.

use std::collections::BTreeMap;
use std::fmt;

/// Symmetric Laurent polynomials such as quantum integers. `terms[2e] = c`
/// encodes c * q^e, so odd keys are genuine half-integer powers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentQ {
    pub terms: BTreeMap<i64, i64>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        LaurentQ::default()
    }

    pub fn one() -> Self {
        LaurentQ::monomial(0, 1)
    }

    /// c * q^(double/2)
    pub fn monomial(double_exp: i64, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(double_exp, c);
        }
        LaurentQ { terms }
    }

    /// The quantum integer [m] = (q^(m/2) - q^(-m/2)) / (q^(1/2) - q^(-1/2)).
    pub fn quantum_int(m: u32) -> Self {
        let mut terms = BTreeMap::new();
        for k in 0..m as i64 {
            terms.insert(m as i64 - 1 - 2 * k, 1);
        }
        LaurentQ { terms }
    }

    pub fn add(&self, other: &LaurentQ) -> LaurentQ {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let v = terms.entry(*e).or_insert(0);
            *v += c;
            if *v == 0 {
                terms.remove(e);
            }
        }
        LaurentQ { terms }
    }

    pub fn mul(&self, other: &LaurentQ) -> LaurentQ {
        let mut terms: BTreeMap<i64, i64> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let v = terms.entry(e1 + e2).or_insert(0);
                *v += c1 * c2;
            }
        }
        terms.retain(|_, c| *c != 0);
        LaurentQ { terms }
    }

    pub fn scale(&self, k: i64) -> LaurentQ {
        if k == 0 {
            return LaurentQ::zero();
        }
        LaurentQ { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    /// Evaluation at q = 1.
    pub fn at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Evaluation at q = -1. Errors if a genuine half-integer power occurs.
    pub fn at_minus_one(&self) -> Option<i64> {
        let mut total = 0i64;
        for (e, c) in &self.terms {
            if e.rem_euclid(2) != 0 {
                return None;
            }
            total += if (e / 2).rem_euclid(2) == 0 { *c } else { -c };
        }
        Some(total)
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " {} ", if *c < 0 { "-" } else { "+" })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let mag = c.abs();
            let pow = match (*e, e.rem_euclid(2)) {
                (0, _) => String::new(),
                (2, _) => "q".to_string(),
                (e, 0) => format!("q^{}", e / 2),
                (e, _) => format!("q^({e}/2)"),
            };
            if pow.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{pow}")?;
            } else {
                write!(f, "{mag}*{pow}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_integers() {
        assert_eq!(LaurentQ::quantum_int(1), LaurentQ::one());
        let two = LaurentQ::quantum_int(2);
        // [2] = q^(1/2) + q^(-1/2)
        assert_eq!(two.terms, BTreeMap::from([(1, 1), (-1, 1)]));
        // [2]^2 = q + 2 + q^(-1)
        let sq = two.mul(&two);
        assert_eq!(sq.terms, BTreeMap::from([(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(sq.at_one(), 4);
        assert_eq!(sq.at_minus_one(), Some(0));
        assert!(sq.is_symmetric());
    }

    #[test]
    fn display() {
        let two_sq = LaurentQ::quantum_int(2).mul(&LaurentQ::quantum_int(2));
        assert_eq!(two_sq.to_string(), "q^-1 + 2 + q");
        assert_eq!(LaurentQ::quantum_int(2).to_string(), "q^(-1/2) + q^(1/2)");
    }
}
