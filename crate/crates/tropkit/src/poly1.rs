//! Univariate tropical polynomials: evaluation, roots with multiplicity,
//! and factorization into linear pieces.

use num::Zero;

use crate::error::{precondition, Result};
use crate::rat::Rat;
use crate::semiring::Trop;

/// max_i (a_i + i*x), stored densely by exponent. Coefficient -inf means
/// the monomial is absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly1 {
    /// coeffs[i] is the coefficient of x^i.
    pub coeffs: Vec<Trop>,
}

/// A root together with its order. The order of a finite root is the jump in
/// slope of the piecewise-linear graph at that point; -inf appears as a root
/// whenever the constant term is absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub location: Trop,
    pub order: u32,
}

/// Leading coefficient plus roots in increasing order; represents the
/// tropical product lead * prod (x + r_i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub lead: Rat,
    pub roots: Vec<Root>,
}

impl Poly1 {
    pub fn new(coeffs: Vec<Trop>) -> Result<Self> {
        let mut c = coeffs;
        while c.len() > 1 && c.last().map(Trop::is_neg_inf).unwrap_or(false) {
            c.pop();
        }
        if c.is_empty() || c.iter().all(Trop::is_neg_inf) {
            return Err(precondition("polynomial must have at least one finite coefficient"));
        }
        Ok(Poly1 { coeffs: c })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &Trop) -> Trop {
        let mut best = Trop::NegInf;
        for (i, a) in self.coeffs.iter().enumerate() {
            let mut term = a.clone();
            for _ in 0..i {
                term = term.mul(x);
            }
            best = best.add(&term);
        }
        // x = -inf: only the constant term survives, which the loop handles
        // because mul with -inf absorbs.
        best
    }

    /// Vertices (degree, coefficient) of the concave majorant of the lifted
    /// support, in increasing degree. These determine the function: the graph
    /// of the polynomial is the upper envelope of exactly these monomials.
    fn envelope(&self) -> Vec<(usize, Rat)> {
        let support: Vec<(usize, Rat)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, a)| a.as_finite().map(|r| (i, r.clone())))
            .collect();
        // Monotone chain for the upper (concave) hull over x = degree.
        let mut hull: Vec<(usize, Rat)> = Vec::new();
        for p in support {
            while hull.len() >= 2 {
                let a = &hull[hull.len() - 2];
                let b = &hull[hull.len() - 1];
                // b lies strictly below segment a-p  <=>  drop b.
                let lhs = (&b.1 - &a.1) * Rat::from_integer((p.0 as i64 - a.0 as i64).into());
                let rhs = (&p.1 - &a.1) * Rat::from_integer((b.0 as i64 - a.0 as i64).into());
                if lhs <= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull
    }

    /// Roots in increasing order (with -inf first when present). The orders
    /// sum to the degree.
    pub fn roots(&self) -> Vec<Root> {
        let hull = self.envelope();
        let mut out = Vec::new();
        let lowest = hull[0].0;
        if lowest > 0 {
            out.push(Root { location: Trop::NegInf, order: lowest as u32 });
        }
        for w in hull.windows(2) {
            let (i, ai) = (&w[0].0, &w[0].1);
            let (j, aj) = (&w[1].0, &w[1].1);
            let gap = (*j - *i) as u32;
            let loc = (ai - aj) / Rat::from_integer(((*j - *i) as i64).into());
            out.push(Root { location: Trop::finite(loc), order: gap });
        }
        out
    }

    pub fn factor(&self) -> Factorization {
        let lead = self
            .coeffs
            .last()
            .and_then(|t| t.as_finite())
            .cloned()
            .expect("constructor guarantees finite leading coefficient");
        Factorization { lead, roots: self.roots() }
    }

    /// Equality as functions on Q (coefficientwise equality is strictly finer).
    pub fn eq_as_function(&self, other: &Poly1) -> bool {
        self.envelope() == other.envelope()
    }
}

impl Factorization {
    /// Expands the product back into a polynomial (as a function).
    pub fn expand(&self) -> Poly1 {
        let mut coeffs = vec![Trop::finite(Rat::zero())];
        for root in &self.roots {
            // Multiply by (x + r): conv of coeff vector with [r, 0].
            let n = coeffs.len();
            let mut next = vec![Trop::NegInf; n + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c);
                let shifted = c.mul(&root.location);
                next[i] = next[i].add(&shifted);
            }
            // Repeat per multiplicity.
            for _ in 1..root.order {
                let n2 = next.len();
                let mut again = vec![Trop::NegInf; n2 + 1];
                for (i, c) in next.iter().enumerate() {
                    again[i + 1] = again[i + 1].add(c);
                    let shifted = c.mul(&root.location);
                    again[i] = again[i].add(&shifted);
                }
                next = again;
            }
            coeffs = next;
        }
        let lead = Trop::finite(self.lead.clone());
        let coeffs = coeffs.iter().map(|c| c.mul(&lead)).collect();
        Poly1::new(coeffs).expect("expanded factorization is a valid polynomial")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn p(coeffs: &[Option<i64>]) -> Poly1 {
        Poly1::new(
            coeffs
                .iter()
                .map(|c| match c {
                    Some(v) => Trop::finite(rat(*v)),
                    None => Trop::NegInf,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn linear_root() {
        // 0 + x has the single root 0.
        let roots = p(&[Some(0), Some(0)]).roots();
        assert_eq!(roots, vec![Root { location: Trop::finite(rat(0)), order: 1 }]);
    }

    #[test]
    fn quadratic_two_roots() {
        // 0 + x + (-1)x^2 -> roots 0 and 1.
        let roots = p(&[Some(0), Some(0), Some(-1)]).roots();
        assert_eq!(
            roots,
            vec![
                Root { location: Trop::finite(rat(0)), order: 1 },
                Root { location: Trop::finite(rat(1)), order: 1 },
            ]
        );
    }

    #[test]
    fn double_root_when_middle_low() {
        // 0 + (-5)x + 0x^2: middle coefficient below the hull -> double root at 0.
        let roots = p(&[Some(0), Some(-5), Some(0)]).roots();
        assert_eq!(roots, vec![Root { location: Trop::finite(rat(0)), order: 2 }]);
    }

    #[test]
    fn missing_constant_gives_neg_inf_root() {
        // x + x^2 = x(0 + x): roots -inf (order 1) and 0.
        let roots = p(&[None, Some(0), Some(0)]).roots();
        assert_eq!(roots[0], Root { location: Trop::NegInf, order: 1 });
        assert_eq!(roots[1], Root { location: Trop::finite(rat(0)), order: 1 });
    }

    #[test]
    fn orders_sum_to_degree() {
        let q = p(&[Some(0), Some(3), None, Some(-2), Some(0)]);
        let total: u32 = q.roots().iter().map(|r| r.order).sum();
        assert_eq!(total as usize, q.degree());
    }

    #[test]
    fn factor_expand_is_identity_as_function() {
        let q = p(&[Some(0), Some(0), Some(-1)]);
        let f = q.factor();
        assert_eq!(f.lead, rat(-1));
        assert!(f.expand().eq_as_function(&q));

        // A polynomial whose middle coefficient is not on the hull expands to a
        // different coefficient list but the same function.
        let q = p(&[Some(0), Some(-5), Some(0)]);
        let e = q.factor().expand();
        assert!(e.eq_as_function(&q));
        assert_ne!(e, q);
    }

    #[test]
    fn function_equality_ignores_dominated_coefficients() {
        let a = p(&[Some(0), Some(-5), Some(0)]);
        let b = p(&[Some(0), Some(-7), Some(0)]);
        let c = p(&[Some(0), Some(1), Some(0)]);
        assert!(a.eq_as_function(&b));
        assert!(!a.eq_as_function(&c));
    }
}
