//! Tropical polynomials in two variables and a small text parser shared by
//! the CLI ("0 + x + y", "3 + 2x + 2y + 3xy + y^2 + x^2", "(-1)x^2", ...).

use std::collections::BTreeMap;

use crate::error::{parse_err, precondition, Result};
use crate::geom::{convex_hull_z, ZPoint};
use crate::poly1::Poly1;
use crate::rat::{parse_rat, Rat};
use crate::semiring::Trop;

/// max over the support of (a_ij + i*x + j*y); coefficients are finite by
/// construction, absent monomials are simply not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly2 {
    pub coeffs: BTreeMap<ZPoint, Rat>,
}

impl Poly2 {
    pub fn new(coeffs: BTreeMap<ZPoint, Rat>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(precondition("polynomial must have at least one monomial"));
        }
        if coeffs.keys().any(|&(i, j)| i < 0 || j < 0) {
            return Err(precondition("monomial exponents must be non-negative"));
        }
        Ok(Poly2 { coeffs })
    }

    pub fn support(&self) -> Vec<ZPoint> {
        self.coeffs.keys().copied().collect()
    }

    /// Newton polygon: convex hull of the support (may be a segment or point).
    pub fn newton_polygon(&self) -> Vec<ZPoint> {
        convex_hull_z(&self.support())
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        self.coeffs
            .iter()
            .map(|((i, j), a)| a + Rat::from_integer((*i).into()) * x + Rat::from_integer((*j).into()) * y)
            .max()
            .expect("non-empty support")
    }
}

/// Parses the shared textual polynomial syntax. Terms are separated by
/// top-level `+`; each term is an optional coefficient (rational or decimal,
/// parenthesized when negative) followed by `x`/`y` powers, e.g. `3xy`,
/// `(-1)*x^2`, `1/2 x y^3`.
pub fn parse_poly2(input: &str) -> Result<Poly2> {
    let mut coeffs: BTreeMap<ZPoint, Rat> = BTreeMap::new();
    for term in split_terms(input)? {
        let ((i, j), c) = parse_term(&term)?;
        // Repeated monomials combine tropically (max).
        coeffs
            .entry((i, j))
            .and_modify(|old| {
                if c > *old {
                    *old = c.clone()
                }
            })
            .or_insert(c);
    }
    Poly2::new(coeffs)
}

/// Univariate polynomials use the same syntax restricted to `x`.
pub fn parse_poly1(input: &str) -> Result<Poly1> {
    let p = parse_poly2(input)?;
    if p.coeffs.keys().any(|&(_, j)| j != 0) {
        return Err(parse_err("univariate polynomial must not mention y"));
    }
    let d = p.coeffs.keys().map(|&(i, _)| i).max().unwrap() as usize;
    let mut coeffs = vec![Trop::NegInf; d + 1];
    for ((i, _), a) in p.coeffs {
        coeffs[i as usize] = Trop::finite(a);
    }
    Poly1::new(coeffs)
}

fn split_terms(input: &str) -> Result<Vec<String>> {
    let mut terms = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in input.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| parse_err("unbalanced parentheses"))?;
                cur.push(ch);
            }
            '+' if depth == 0 => {
                terms.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(parse_err("unbalanced parentheses"));
    }
    terms.push(cur);
    let terms: Vec<String> = terms.into_iter().map(|t| t.trim().to_string()).collect();
    if terms.iter().any(String::is_empty) {
        return Err(parse_err("empty term"));
    }
    Ok(terms)
}

fn parse_term(term: &str) -> Result<(ZPoint, Rat)> {
    let mut rest = term.trim();
    let mut coeff: Option<Rat> = None;
    // Optional parenthesized coefficient.
    if let Some(stripped) = rest.strip_prefix('(') {
        let close = stripped
            .find(')')
            .ok_or_else(|| parse_err("unbalanced parentheses"))?;
        coeff = Some(parse_rat(&stripped[..close])?);
        rest = stripped[close + 1..].trim_start();
    } else {
        // Leading numeric literal (possibly "p/q" or decimal, possibly negative).
        let end = rest
            .char_indices()
            .take_while(|&(k, c)| {
                c.is_ascii_digit() || c == '.' || c == '/' || (c == '-' && k == 0)
            })
            .map(|(k, c)| k + c.len_utf8())
            .last();
        if let Some(end) = end {
            coeff = Some(parse_rat(&rest[..end])?);
            rest = rest[end..].trim_start();
        }
    }
    rest = rest.strip_prefix('*').unwrap_or(rest).trim_start();

    let mut i = 0i64;
    let mut j = 0i64;
    while !rest.is_empty() {
        let var = rest.chars().next().unwrap();
        if var != 'x' && var != 'y' {
            return Err(parse_err(format!("unexpected {var:?} in term {term:?}")));
        }
        rest = &rest[1..];
        let mut exp = 1i64;
        if let Some(stripped) = rest.strip_prefix('^') {
            let end = stripped
                .char_indices()
                .take_while(|&(_, c)| c.is_ascii_digit())
                .map(|(k, c)| k + c.len_utf8())
                .last()
                .ok_or_else(|| parse_err(format!("missing exponent in {term:?}")))?;
            exp = stripped[..end]
                .parse()
                .map_err(|_| parse_err(format!("bad exponent in {term:?}")))?;
            rest = &stripped[end..];
        }
        if var == 'x' {
            i += exp;
        } else {
            j += exp;
        }
        rest = rest.trim_start();
        rest = rest.strip_prefix('*').unwrap_or(rest).trim_start();
    }
    let coeff = coeff.unwrap_or_else(|| Rat::from_integer(0.into()));
    if i == 0 && j == 0 && term.trim().is_empty() {
        return Err(parse_err("empty term"));
    }
    Ok(((i, j), coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_frac};

    #[test]
    fn parse_line() {
        let p = parse_poly2("x + y + 0").unwrap();
        assert_eq!(p.coeffs.len(), 3);
        assert_eq!(p.coeffs[&(1, 0)], rat(0));
        assert_eq!(p.coeffs[&(0, 0)], rat(0));
    }

    #[test]
    fn parse_conic() {
        let p = parse_poly2("3 + 2x + 2y + 3xy + y^2 + x^2").unwrap();
        assert_eq!(p.coeffs[&(1, 1)], rat(3));
        assert_eq!(p.coeffs[&(2, 0)], rat(0));
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn parse_negative_and_fraction() {
        let p = parse_poly2("0 + x + y^2 + (-1)x^2").unwrap();
        assert_eq!(p.coeffs[&(2, 0)], rat(-1));
        let q = parse_poly2("1/2 x y^3 + (3/4)*y").unwrap();
        assert_eq!(q.coeffs[&(1, 3)], rat_frac(1, 2));
        assert_eq!(q.coeffs[&(0, 1)], rat_frac(3, 4));
    }

    #[test]
    fn parse_univariate() {
        let p = parse_poly1("0 + x + (-1)x^2").unwrap();
        assert_eq!(p.degree(), 2);
        assert!(parse_poly1("x + y").is_err());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_poly2("").is_err());
        assert!(parse_poly2("x + + y").is_err());
        assert!(parse_poly2("z^2").is_err());
        assert!(parse_poly2("(1").is_err());
    }

    #[test]
    fn eval_line() {
        let p = parse_poly2("x + y + 0").unwrap();
        assert_eq!(p.eval(&rat(5), &rat(-3)), rat(5));
        assert_eq!(p.eval(&rat(-7), &rat(-3)), rat(0));
    }
}
