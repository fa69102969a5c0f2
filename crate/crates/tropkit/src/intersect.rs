//! Stable intersection of tropical plane curves and mixed areas of their
//! Newton polygons.
//!
//! Transversality is checked exactly. With perturbation enabled the second
//! curve is translated by the symbolic vector (eps, eps^2) for an
//! infinitesimal eps > 0; coordinates then live in Q[eps] ordered
//! lexicographically, which realizes the stable limit exactly.

use std::collections::BTreeMap;

use num::{Signed, Zero};

use crate::curve::{CurveEdge, PlaneCurve};
use crate::error::{precondition, Result};
use crate::geom::{convex_hull_z, det2, double_area_z, QPoint, ZPoint};
use crate::rat::{primitive_of_rat2, Rat};

/// A polynomial in eps of degree < 5 (enough for exact cross products of
/// degree <= 2 coordinates), compared lexicographically from the constant
/// term: this is the order type of evaluations at sufficiently small eps > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eps(pub [Rat; 5]);

impl Eps {
    pub fn zero() -> Self {
        Eps(std::array::from_fn(|_| Rat::zero()))
    }

    pub fn constant(r: Rat) -> Self {
        let mut e = Eps::zero();
        e.0[0] = r;
        e
    }

    pub fn eps(power: usize) -> Self {
        let mut e = Eps::zero();
        e.0[power] = Rat::from_integer(1.into());
        e
    }

    pub fn add(&self, o: &Eps) -> Eps {
        Eps(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }

    pub fn sub(&self, o: &Eps) -> Eps {
        Eps(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }

    pub fn mul(&self, o: &Eps) -> Eps {
        let mut out = Eps::zero();
        for i in 0..5 {
            if self.0[i].is_zero() {
                continue;
            }
            for j in 0..5 {
                if i + j < 5 {
                    out.0[i + j] += &self.0[i] * &o.0[j];
                } else if !o.0[j].is_zero() {
                    // Degrees above 4 never arise in this module.
                    panic!("eps-degree overflow");
                }
            }
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> Eps {
        Eps(std::array::from_fn(|i| &self.0[i] * r))
    }

    pub fn sign(&self) -> i32 {
        for c in &self.0 {
            if c.is_positive() {
                return 1;
            }
            if c.is_negative() {
                return -1;
            }
        }
        0
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == 0
    }

    /// The limit as eps -> 0.
    pub fn limit(&self) -> Rat {
        self.0[0].clone()
    }
}

type EPoint = (Eps, Eps);

fn ecross(u: &EPoint, v: &EPoint) -> Eps {
    u.0.mul(&v.1).sub(&u.1.mul(&v.0))
}

#[derive(PartialEq, Eq, Clone, Copy)]
enum EdgeKind {
    Segment,
    Ray,
    /// A straight line through a synthetic 2-valent vertex (degenerate
    /// Newton polygon); the parameter is unrestricted.
    Line,
}

/// One edge prepared for intersection: base point, direction vector, and the
/// parameter range.
struct PreparedEdge {
    base: EPoint,
    dir: (Rat, Rat),
    kind: EdgeKind,
    weight: i64,
    prim: (i64, i64),
}

/// Vertices that are not actual corners of the curve: exactly two incident
/// rays, opposite and of equal weight. Their ray pairs behave like full lines.
fn straight_vertices(curve: &PlaneCurve) -> Vec<bool> {
    (0..curve.vertices.len())
        .map(|v| {
            let germs = curve.germs_at(v);
            germs.len() == 2
                && germs[0].0 == germs[1].0
                && germs[0].1 .0 == -germs[1].1 .0
                && germs[0].1 .1 == -germs[1].1 .1
                && curve
                    .edges
                    .iter()
                    .all(|e| !matches!(e, CurveEdge::Bounded { a, b, .. } if *a == v || *b == v))
        })
        .collect()
}

fn prepare(curve: &PlaneCurve, shift: Option<(Eps, Eps)>) -> Vec<PreparedEdge> {
    let (sx, sy) = shift.unwrap_or((Eps::zero(), Eps::zero()));
    let at = |v: usize| -> EPoint {
        let (x, y) = &curve.vertices[v];
        (
            Eps::constant(x.clone()).add(&sx),
            Eps::constant(y.clone()).add(&sy),
        )
    };
    let straight = straight_vertices(curve);
    let mut line_done = vec![false; curve.vertices.len()];
    let mut out = Vec::new();
    for e in &curve.edges {
        match e {
            CurveEdge::Bounded { a, b, weight, .. } => {
                let dx = &curve.vertices[*b].0 - &curve.vertices[*a].0;
                let dy = &curve.vertices[*b].1 - &curve.vertices[*a].1;
                let prim = primitive_of_rat2(&dx, &dy).expect("distinct endpoints");
                out.push(PreparedEdge {
                    base: at(*a),
                    dir: (dx, dy),
                    kind: EdgeKind::Segment,
                    weight: *weight,
                    prim,
                });
            }
            CurveEdge::Ray { v, dir, weight, .. } => {
                let kind = if straight[*v] {
                    if line_done[*v] {
                        continue; // other half already emitted as a line
                    }
                    line_done[*v] = true;
                    EdgeKind::Line
                } else {
                    EdgeKind::Ray
                };
                out.push(PreparedEdge {
                    base: at(*v),
                    dir: (Rat::from_integer(dir.0.into()), Rat::from_integer(dir.1.into())),
                    kind,
                    weight: *weight,
                    prim: *dir,
                });
            }
        }
    }
    out
}

/// A located intersection point with its multiplicity. Under perturbation the
/// coordinates are the eps -> 0 limits.
#[derive(Debug, Clone)]
pub struct IntersectionPoint {
    pub point: QPoint,
    pub multiplicity: i64,
}

#[derive(Debug, Clone)]
pub struct StableIntersection {
    pub total: i64,
    pub points: Vec<IntersectionPoint>,
    pub perturbed: bool,
}

/// Stable intersection number. Without `perturb`, the two curves must
/// intersect transversally (no vertex of one on the other, no overlapping
/// parallel edges); otherwise an error is returned. With `perturb`, the
/// second curve is shifted by the infinitesimal (eps, eps^2).
pub fn stable_intersection(
    c1: &PlaneCurve,
    c2: &PlaneCurve,
    perturb: bool,
) -> Result<StableIntersection> {
    if !perturb {
        check_transverse(c1, c2)?;
    }
    let e1 = prepare(c1, None);
    let shift = if perturb { Some((Eps::eps(1), Eps::eps(2))) } else { None };
    let e2 = prepare(c2, shift);

    let mut by_point: BTreeMap<(String, String), i64> = BTreeMap::new();
    let mut points: Vec<IntersectionPoint> = Vec::new();
    let mut total = 0i64;
    for a in &e1 {
        for b in &e2 {
            let d = &a.dir.0 * &b.dir.1 - &a.dir.1 * &b.dir.0;
            if d.is_zero() {
                continue;
            }
            // a.base + s*a.dir = b.base + t*b.dir
            let rel = (b.base.0.sub(&a.base.0), b.base.1.sub(&a.base.1));
            let bd = (Eps::constant(b.dir.0.clone()), Eps::constant(b.dir.1.clone()));
            let ad = (Eps::constant(a.dir.0.clone()), Eps::constant(a.dir.1.clone()));
            let inv = Rat::from_integer(1.into()) / &d;
            let s = ecross(&rel, &bd).scale(&inv);
            let t = ecross(&rel, &ad).scale(&inv);
            let inside = |p: &Eps, kind: EdgeKind| -> bool {
                match kind {
                    EdgeKind::Line => true,
                    EdgeKind::Ray => p.sign() > 0,
                    EdgeKind::Segment => {
                        p.sign() > 0
                            && p.sub(&Eps::constant(Rat::from_integer(1.into()))).sign() < 0
                    }
                }
            };
            if inside(&s, a.kind) && inside(&t, b.kind) {
                let mult = a.weight * b.weight * det2(a.prim, b.prim).abs();
                total += mult;
                let px = a.base.0.add(&s.mul(&Eps::constant(a.dir.0.clone()))).limit();
                let py = a.base.1.add(&s.mul(&Eps::constant(a.dir.1.clone()))).limit();
                let key = (px.to_string(), py.to_string());
                if let Some(acc) = by_point.get_mut(&key) {
                    *acc += mult;
                } else {
                    by_point.insert(key, mult);
                    points.push(IntersectionPoint { point: (px, py), multiplicity: 0 });
                }
            }
        }
    }
    for p in &mut points {
        let key = (p.point.0.to_string(), p.point.1.to_string());
        p.multiplicity = by_point[&key];
    }
    Ok(StableIntersection { total, points, perturbed: perturb })
}

/// Rejects inputs the unperturbed intersection cannot handle: a vertex of one
/// curve lying on the other curve. (Overlapping parallel edges always put
/// some vertex on the other curve, so this test catches those too.)
fn check_transverse(c1: &PlaneCurve, c2: &PlaneCurve) -> Result<()> {
    for (label, verts, other) in
        [("first", c1, c2), ("second", c2, c1)]
    {
        let straight = straight_vertices(verts);
        for (vi, v) in verts.vertices.iter().enumerate() {
            if straight[vi] {
                continue;
            }
            if point_on_curve(other, v) {
                return Err(precondition(format!(
                    "curves are not transverse: a vertex of the {label} curve lies on the other curve (use perturbation)"
                )));
            }
        }
    }
    Ok(())
}

/// Exact point-on-curve test.
pub fn point_on_curve(curve: &PlaneCurve, p: &QPoint) -> bool {
    for e in &curve.edges {
        match e {
            CurveEdge::Bounded { a, b, .. } => {
                let (ax, ay) = &curve.vertices[*a];
                let (bx, by) = &curve.vertices[*b];
                let cross = (&p.0 - ax) * (by - ay) - (&p.1 - ay) * (bx - ax);
                if cross.is_zero() {
                    let dot = (&p.0 - ax) * (bx - ax) + (&p.1 - ay) * (by - ay);
                    let len2 = (bx - ax) * (bx - ax) + (by - ay) * (by - ay);
                    if !dot.is_negative() && dot <= len2 {
                        return true;
                    }
                }
            }
            CurveEdge::Ray { v, dir, .. } => {
                let (ax, ay) = &curve.vertices[*v];
                let dx = Rat::from_integer(dir.0.into());
                let dy = Rat::from_integer(dir.1.into());
                let cross = (&p.0 - ax) * &dy - (&p.1 - ay) * &dx;
                if cross.is_zero() {
                    let dot = (&p.0 - ax) * &dx + (&p.1 - ay) * &dy;
                    if !dot.is_negative() {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// mixed_area(P, Q) = area(P + Q) - area(P) - area(Q), exact.
/// Degenerate (segment/point) polygons are allowed.
pub fn mixed_area(p: &[ZPoint], q: &[ZPoint]) -> Rat {
    let mut sums = Vec::with_capacity(p.len() * q.len());
    for a in p {
        for b in q {
            sums.push((a.0 + b.0, a.1 + b.1));
        }
    }
    let hull = convex_hull_z(&sums);
    let total = double_area_z(&hull);
    let da = double_area_z(&convex_hull_z(p));
    let db = double_area_z(&convex_hull_z(q));
    Rat::new((total - da - db).into(), 2.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::tropical_curve;
    use crate::poly2::parse_poly2;
    use crate::rat::rat;

    fn curve(s: &str) -> PlaneCurve {
        tropical_curve(&parse_poly2(s).unwrap()).unwrap()
    }

    #[test]
    fn two_lines_meet_once() {
        let a = curve("0 + x + y");
        let b = curve("3 + x + 1y"); // shifted line
        let r = stable_intersection(&a, &b, false).unwrap();
        assert_eq!(r.total, 1);
        assert_eq!(r.points.len(), 1);
    }

    #[test]
    fn identical_lines_need_perturbation() {
        let a = curve("0 + x + y");
        assert!(stable_intersection(&a, &a, false).is_err());
        let r = stable_intersection(&a, &a, true).unwrap();
        assert_eq!(r.total, 1);
    }

    #[test]
    fn line_and_conic() {
        let a = curve("3 + 2x + 2y + 3xy + y^2 + x^2");
        let b = curve("-8 + x + -8y"); // line far from the conic's vertices
        let r = stable_intersection(&a, &b, true).unwrap();
        assert_eq!(r.total, 2);
    }

    #[test]
    fn bernstein_via_mixed_area() {
        let a = curve("0 + x + y");
        let b = curve("3 + 2x + 2y + 3xy + y^2 + x^2");
        let r = stable_intersection(&a, &b, true).unwrap();
        let ma = mixed_area(&a.subdivision.newton, &b.subdivision.newton);
        assert_eq!(Rat::from_integer(r.total.into()), ma);
        assert_eq!(ma, rat(2));
    }

    #[test]
    fn mixed_area_of_unit_triangles() {
        let t = vec![(0, 0), (1, 0), (0, 1)];
        assert_eq!(mixed_area(&t, &t), rat(1));
    }

    #[test]
    fn weights_multiply() {
        // Vertical weight-2 line against a horizontal line.
        let a = curve("0 + x + x^2"); // line x = 0, weight 2
        let b = curve("5 + y"); // horizontal line y = 5
        let r = stable_intersection(&a, &b, false).unwrap();
        assert_eq!(r.total, 2);
    }
}
