//! Regular (dual) subdivisions of Newton polygons induced by the
//! coefficients of a tropical polynomial.

use std::collections::{BTreeMap, BTreeSet};

use num::Zero;

use crate::error::{precondition, Result};
use crate::geom::{convex_hull_z, cross_z, double_area_z, ZPoint};
use crate::poly2::Poly2;
use crate::rat::{lattice_length, primitive2, Rat};

/// A 2-cell of the subdivision: the convex polygon of support points lying on
/// one facet of the upper hull of the lifted support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell2 {
    /// Hull vertices of the cell, CCW.
    pub polygon: Vec<ZPoint>,
    /// All support points on the facet (includes non-vertex points).
    pub members: Vec<ZPoint>,
    /// Facet plane z = alpha*i + beta*j + gamma.
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
}

/// A 1-cell: an edge shared by two 2-cells, or on the boundary of the
/// Newton polygon (then `cells` has one entry and `outward` is the primitive
/// outward normal of the polygon along it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell1 {
    pub a: ZPoint,
    pub b: ZPoint,
    pub cells: Vec<usize>,
    pub outward: Option<(i64, i64)>,
}

impl Cell1 {
    pub fn lattice_length(&self) -> i64 {
        lattice_length(self.a, self.b)
    }
}

#[derive(Debug, Clone)]
pub struct DualSubdivision {
    /// Newton polygon (hull of the support), CCW; a segment or point when
    /// the support is degenerate.
    pub newton: Vec<ZPoint>,
    pub cells2: Vec<Cell2>,
    pub cells1: Vec<Cell1>,
    /// 0-cells: vertices of the subdivision.
    pub cells0: Vec<ZPoint>,
    /// Dimension of the Newton polygon (0, 1, or 2).
    pub dim: u8,
}

impl Cell2 {
    pub fn double_area(&self) -> i64 {
        double_area_z(&self.polygon)
    }

    pub fn is_triangle(&self) -> bool {
        self.polygon.len() == 3
    }

    pub fn is_parallelogram(&self) -> bool {
        if self.polygon.len() != 4 {
            return false;
        }
        let p = &self.polygon;
        p[1].0 - p[0].0 == p[2].0 - p[3].0 && p[1].1 - p[0].1 == p[2].1 - p[3].1
    }

    /// Position of the tropical curve vertex dual to this cell.
    pub fn dual_vertex(&self) -> (Rat, Rat) {
        (-self.alpha.clone(), -self.beta.clone())
    }
}

/// Computes the subdivision of the Newton polygon induced by projecting the
/// upper faces of conv{(i, j, a_ij)}.
pub fn dual_subdivision(p: &Poly2) -> Result<DualSubdivision> {
    let support = p.support();
    let newton = convex_hull_z(&support);
    match newton.len() {
        1 => Ok(DualSubdivision {
            newton: newton.clone(),
            cells2: vec![],
            cells1: vec![],
            cells0: newton,
            dim: 0,
        }),
        2 => subdivision_dim1(p, newton),
        _ => subdivision_dim2(p, newton),
    }
}

/// Support on a segment: the subdivision is the 1-dimensional upper hull
/// along the segment.
fn subdivision_dim1(p: &Poly2, newton: Vec<ZPoint>) -> Result<DualSubdivision> {
    let base = newton[0];
    let dir = primitive2(newton[1].0 - base.0, newton[1].1 - base.1).unwrap();
    // Parametrize support points as base + s*dir.
    let mut lifted: Vec<(i64, Rat)> = p
        .coeffs
        .iter()
        .map(|(&(i, j), a)| {
            let s = if dir.0 != 0 { (i - base.0) / dir.0 } else { (j - base.1) / dir.1 };
            (s, a.clone())
        })
        .collect();
    lifted.sort_by(|x, y| x.0.cmp(&y.0));
    // Concave majorant over the parameter.
    let mut hull: Vec<(i64, Rat)> = Vec::new();
    for pt in lifted {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            let lhs = (&b.1 - &a.1) * Rat::from_integer((pt.0 - a.0).into());
            let rhs = (&pt.1 - &a.1) * Rat::from_integer((b.0 - a.0).into());
            if lhs <= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let to_point = |s: i64| (base.0 + s * dir.0, base.1 + s * dir.1);
    let cells0: Vec<ZPoint> = hull.iter().map(|&(s, _)| to_point(s)).collect();
    let cells1 = hull
        .windows(2)
        .map(|w| Cell1 { a: to_point(w[0].0), b: to_point(w[1].0), cells: vec![], outward: None })
        .collect();
    Ok(DualSubdivision { newton, cells2: vec![], cells1, cells0, dim: 1 })
}

fn subdivision_dim2(p: &Poly2, newton: Vec<ZPoint>) -> Result<DualSubdivision> {
    let support: Vec<(ZPoint, Rat)> = p.coeffs.iter().map(|(k, v)| (*k, v.clone())).collect();
    let n = support.len();

    // Enumerate upper facets by brute force over non-collinear triples.
    let mut seen: BTreeSet<Vec<ZPoint>> = BTreeSet::new();
    let mut cells2: Vec<Cell2> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let (pi, pj, pk) = (support[i].0, support[j].0, support[k].0);
                let det = cross_z(pi, pj, pk);
                if det == 0 {
                    continue;
                }
                // Solve alpha*i + beta*j + gamma = a for the three points.
                let (ai, aj, ak) = (&support[i].1, &support[j].1, &support[k].1);
                let detq = Rat::from_integer(det.into());
                let d1 = Rat::from_integer((pj.1 - pk.1).into());
                let d2 = Rat::from_integer((pk.1 - pi.1).into());
                let d3 = Rat::from_integer((pi.1 - pj.1).into());
                let alpha = (ai * d1 + aj * d2 + ak * d3) / &detq;
                let e1 = Rat::from_integer((pk.0 - pj.0).into());
                let e2 = Rat::from_integer((pi.0 - pk.0).into());
                let e3 = Rat::from_integer((pj.0 - pi.0).into());
                let beta = (ai * e1 + aj * e2 + ak * e3) / &detq;
                let gamma = ai - &alpha * Rat::from_integer(pi.0.into()) - &beta * Rat::from_integer(pi.1.into());

                let mut members: Vec<ZPoint> = Vec::new();
                let mut is_upper = true;
                for (q, aq) in &support {
                    let plane = &alpha * Rat::from_integer(q.0.into())
                        + &beta * Rat::from_integer(q.1.into())
                        + &gamma;
                    let diff = aq - &plane;
                    if diff.is_zero() {
                        members.push(*q);
                    } else if diff > Rat::zero() {
                        is_upper = false;
                        break;
                    }
                }
                if !is_upper {
                    continue;
                }
                let polygon = convex_hull_z(&members);
                if polygon.len() < 3 {
                    continue;
                }
                if seen.insert(polygon.clone()) {
                    cells2.push(Cell2 { polygon, members, alpha, beta, gamma });
                }
            }
        }
    }
    if cells2.is_empty() {
        return Err(precondition("degenerate subdivision of a 2-dimensional Newton polygon"));
    }

    // Collect 1-cells from the 2-cell boundaries; match shared edges.
    let mut edge_map: BTreeMap<(ZPoint, ZPoint), Vec<usize>> = BTreeMap::new();
    for (ci, cell) in cells2.iter().enumerate() {
        let m = cell.polygon.len();
        for t in 0..m {
            let a = cell.polygon[t];
            let b = cell.polygon[(t + 1) % m];
            let key = if a <= b { (a, b) } else { (b, a) };
            edge_map.entry(key).or_default().push(ci);
        }
    }
    let centroid_x: i64 = newton.iter().map(|p| p.0).sum();
    let centroid_y: i64 = newton.iter().map(|p| p.1).sum();
    let m = newton.len() as i64;
    let mut cells1 = Vec::new();
    for ((a, b), cells) in edge_map {
        if cells.len() > 2 {
            return Err(precondition("inconsistent subdivision: edge shared by three cells"));
        }
        let outward = if cells.len() == 1 {
            // Must lie on the boundary of the Newton polygon.
            let d = (b.0 - a.0, b.1 - a.1);
            // Normal candidates: rotate edge direction.
            let nrm = primitive2(d.1, -d.0).unwrap();
            // Point it away from the polygon centroid (scaled to avoid rationals).
            let side = nrm.0 * (m * a.0 - centroid_x) + nrm.1 * (m * a.1 - centroid_y);
            if side == 0 {
                return Err(precondition("boundary edge of subdivision not on Newton polygon boundary"));
            }
            Some(if side > 0 { nrm } else { (-nrm.0, -nrm.1) })
        } else {
            None
        };
        cells1.push(Cell1 { a, b, cells, outward });
    }

    let mut cells0: BTreeSet<ZPoint> = BTreeSet::new();
    for c in &cells2 {
        cells0.extend(c.polygon.iter().copied());
    }
    Ok(DualSubdivision { newton, cells2, cells1, cells0: cells0.into_iter().collect(), dim: 2 })
}

impl DualSubdivision {
    /// Sum of doubled cell areas must equal the doubled Newton polygon area.
    pub fn covers_newton(&self) -> bool {
        if self.dim != 2 {
            return true;
        }
        let total: i64 = self.cells2.iter().map(Cell2::double_area).sum();
        total == double_area_z(&self.newton)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly2::parse_poly2;

    #[test]
    fn line_subdivision_is_single_triangle() {
        let p = parse_poly2("x + y + 0").unwrap();
        let s = dual_subdivision(&p).unwrap();
        assert_eq!(s.dim, 2);
        assert_eq!(s.cells2.len(), 1);
        assert_eq!(s.cells2[0].double_area(), 1);
        assert_eq!(s.cells1.len(), 3);
        assert!(s.cells1.iter().all(|e| e.cells.len() == 1));
        assert!(s.covers_newton());
        // Dual vertex of max(x, y, 0) sits at the origin.
        let v = s.cells2[0].dual_vertex();
        assert!(v.0.is_zero() && v.1.is_zero());
    }

    #[test]
    fn conic_subdivision_has_four_cells() {
        let p = parse_poly2("3 + 2x + 2y + 3xy + y^2 + x^2").unwrap();
        let s = dual_subdivision(&p).unwrap();
        assert_eq!(s.cells2.len(), 4);
        assert!(s.cells2.iter().all(|c| c.is_triangle() && c.double_area() == 1));
        assert_eq!(s.cells0.len(), 6);
        assert!(s.covers_newton());
        let interior = s.cells1.iter().filter(|e| e.cells.len() == 2).count();
        assert_eq!(interior, 3);
    }

    #[test]
    fn weight_two_edge_from_missing_y() {
        // 0 + x + y^2 + (-1)x^2: the segment (0,0)-(0,2) is a cell edge of
        // lattice length 2.
        let p = parse_poly2("0 + x + y^2 + (-1)x^2").unwrap();
        let s = dual_subdivision(&p).unwrap();
        assert!(s
            .cells1
            .iter()
            .any(|e| (e.a, e.b) == ((0, 0), (0, 2)) && e.lattice_length() == 2));
        assert!(s.covers_newton());
    }

    #[test]
    fn segment_support() {
        // Newton polygon is a segment; strictly concave coefficients put the
        // middle point on the hull, flat ones do not.
        let s = dual_subdivision(&parse_poly2("0 + x + (-1)x^2").unwrap()).unwrap();
        assert_eq!(s.dim, 1);
        assert_eq!(s.cells1.len(), 2);
        assert_eq!(s.cells0, vec![(0, 0), (1, 0), (2, 0)]);

        let flat = dual_subdivision(&parse_poly2("0 + x + x^2").unwrap()).unwrap();
        assert_eq!(flat.cells1.len(), 1);
        assert_eq!(flat.cells1[0].lattice_length(), 2);
    }

    #[test]
    fn single_monomial() {
        let p = parse_poly2("5x^2y").unwrap();
        let s = dual_subdivision(&p).unwrap();
        assert_eq!(s.dim, 0);
        assert_eq!(s.cells0, vec![(2, 1)]);
    }
}
