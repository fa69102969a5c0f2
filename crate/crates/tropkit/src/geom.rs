//! Exact 2D primitives over the rationals: convex hulls, areas, lattice
//! point enumeration.

use num::{Signed, Zero};

use crate::rat::Rat;

pub type QPoint = (Rat, Rat);
pub type ZPoint = (i64, i64);

pub fn cross_z(o: ZPoint, a: ZPoint, b: ZPoint) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

pub fn det2(u: (i64, i64), v: (i64, i64)) -> i64 {
    u.0 * v.1 - u.1 * v.0
}

/// Convex hull of lattice points, counter-clockwise, hull vertices only.
/// Degenerate inputs return the extreme points (2 for a segment, 1 for a point).
pub fn convex_hull_z(points: &[ZPoint]) -> Vec<ZPoint> {
    let mut pts: Vec<ZPoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<ZPoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross_z(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<ZPoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross_z(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        // Collinear input.
        return vec![*pts.first().unwrap(), *pts.last().unwrap()];
    }
    lower
}

/// Twice the (positive) area of a CCW polygon given by its vertices.
pub fn double_area_z(poly: &[ZPoint]) -> i64 {
    let n = poly.len();
    if n < 3 {
        return 0;
    }
    let mut s = 0i64;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        s += a.0 * b.1 - b.0 * a.1;
    }
    s.abs()
}

/// Is q inside (or on the boundary of) the CCW convex polygon?
pub fn point_in_convex_z(poly: &[ZPoint], q: ZPoint) -> bool {
    match poly.len() {
        0 => false,
        1 => poly[0] == q,
        2 => on_segment_z(poly[0], poly[1], q),
        _ => (0..poly.len()).all(|i| cross_z(poly[i], poly[(i + 1) % poly.len()], q) >= 0),
    }
}

pub fn on_segment_z(a: ZPoint, b: ZPoint, q: ZPoint) -> bool {
    if cross_z(a, b, q) != 0 {
        return false;
    }
    let dot = (q.0 - a.0) * (b.0 - a.0) + (q.1 - a.1) * (b.1 - a.1);
    let len2 = (b.0 - a.0).pow(2) + (b.1 - a.1).pow(2);
    dot >= 0 && dot <= len2
}

/// All lattice points inside or on a convex polygon.
pub fn lattice_points_in(poly: &[ZPoint]) -> Vec<ZPoint> {
    if poly.is_empty() {
        return vec![];
    }
    let xmin = poly.iter().map(|p| p.0).min().unwrap();
    let xmax = poly.iter().map(|p| p.0).max().unwrap();
    let ymin = poly.iter().map(|p| p.1).min().unwrap();
    let ymax = poly.iter().map(|p| p.1).max().unwrap();
    let mut out = Vec::new();
    for x in xmin..=xmax {
        for y in ymin..=ymax {
            if point_in_convex_z(poly, (x, y)) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Number of lattice points strictly inside a convex polygon.
pub fn interior_lattice_count(poly: &[ZPoint]) -> i64 {
    // Pick: A = i + b/2 - 1.
    let a2 = double_area_z(poly);
    let mut b = 0i64;
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        b += num::integer::gcd((q.0 - p.0).abs(), (q.1 - p.1).abs());
    }
    (a2 - b + 2) / 2
}

pub fn qpoint_sub(a: &QPoint, b: &QPoint) -> QPoint {
    (&a.0 - &b.0, &a.1 - &b.1)
}

pub fn qcross(u: &QPoint, v: &QPoint) -> Rat {
    &u.0 * &v.1 - &u.1 * &v.0
}

pub fn q_is_zero(p: &QPoint) -> bool {
    p.0.is_zero() && p.1.is_zero()
}

/// Twice the area of the convex hull of rational points (shoelace on hull).
pub fn double_area_q(points: &[QPoint]) -> Rat {
    let hull = convex_hull_q(points);
    let n = hull.len();
    if n < 3 {
        return Rat::zero();
    }
    let mut s = Rat::zero();
    for i in 0..n {
        let a = &hull[i];
        let b = &hull[(i + 1) % n];
        s += &a.0 * &b.1 - &b.0 * &a.1;
    }
    s.abs()
}

/// Convex hull of rational points, CCW.
pub fn convex_hull_q(points: &[QPoint]) -> Vec<QPoint> {
    let mut pts: Vec<QPoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let crossq = |o: &QPoint, a: &QPoint, b: &QPoint| -> Rat {
        (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
    };
    let mut lower: Vec<QPoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && crossq(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= Rat::zero()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<QPoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && crossq(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= Rat::zero()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return vec![pts.first().unwrap().clone(), pts.last().unwrap().clone()];
    }
    lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn hull_of_triangle_with_inner_points() {
        let pts = vec![(0, 0), (3, 0), (0, 3), (1, 1), (1, 0), (0, 2)];
        let h = convex_hull_z(&pts);
        assert_eq!(h.len(), 3);
        assert_eq!(double_area_z(&h), 9);
    }

    #[test]
    fn degenerate_hulls() {
        assert_eq!(convex_hull_z(&[(1, 1)]), vec![(1, 1)]);
        assert_eq!(convex_hull_z(&[(0, 0), (2, 2), (1, 1)]), vec![(0, 0), (2, 2)]);
    }

    #[test]
    fn lattice_point_counts() {
        let tri = vec![(0, 0), (3, 0), (0, 3)];
        assert_eq!(lattice_points_in(&tri).len(), 10);
        assert_eq!(interior_lattice_count(&tri), 1);
        let unit = vec![(0, 0), (1, 0), (0, 1)];
        assert_eq!(interior_lattice_count(&unit), 0);
    }

    #[test]
    fn rational_hull_area() {
        let pts = vec![
            (rat(0), rat(0)),
            (rat(2), rat(0)),
            (rat(0), rat(2)),
            (rat(1), rat(1)),
        ];
        assert_eq!(double_area_q(&pts), rat(4));
    }
}
