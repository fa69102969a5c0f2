//! Tropical plane curves: the corner locus of a bivariate tropical
//! polynomial, read off from the dual subdivision.

use std::collections::BTreeMap;

use crate::error::{precondition, Result};
use crate::geom::{interior_lattice_count, lattice_points_in, QPoint, ZPoint};
use crate::laurent::LaurentQ;
use crate::poly2::Poly2;
use crate::rat::{primitive_of_rat2, Rat};
use crate::subdivision::{dual_subdivision, DualSubdivision};

/// An edge of a tropical curve. Bounded edges join two vertices; rays leave a
/// vertex in a primitive integer direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveEdge {
    Bounded { a: usize, b: usize, weight: i64, dual: usize },
    Ray { v: usize, dir: (i64, i64), weight: i64, dual: usize },
}

impl CurveEdge {
    pub fn weight(&self) -> i64 {
        match self {
            CurveEdge::Bounded { weight, .. } | CurveEdge::Ray { weight, .. } => *weight,
        }
    }

    pub fn dual(&self) -> usize {
        match self {
            CurveEdge::Bounded { dual, .. } | CurveEdge::Ray { dual, .. } => *dual,
        }
    }
}

/// A plane tropical curve together with the subdivision it is dual to.
/// Vertices are dual to 2-cells, edges to 1-cells; the `dual` index of an
/// edge points into `subdivision.cells1`.
#[derive(Debug, Clone)]
pub struct PlaneCurve {
    pub vertices: Vec<QPoint>,
    pub edges: Vec<CurveEdge>,
    pub subdivision: DualSubdivision,
    pub degree: i64,
}

/// delta and genus data for a nodal curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodalProfile {
    pub degree: i64,
    /// Lattice points of the degree-d triangle missing from the subdivision
    /// vertices.
    pub missing_points: i64,
    /// Parallelogram cells.
    pub parallelograms: i64,
    pub delta: i64,
    pub genus: i64,
}

/// Multiplicity data of a nodal curve: per-vertex complex/real multiplicities
/// and quantum factors, plus their products.
#[derive(Debug, Clone)]
pub struct Multiplicities {
    pub per_vertex: Vec<VertexMult>,
    pub complex: i64,
    pub real: i64,
    pub quantum: LaurentQ,
}

#[derive(Debug, Clone)]
pub struct VertexMult {
    pub vertex: usize,
    pub complex: i64,
    pub real: i64,
    pub quantum: LaurentQ,
}

/// Builds the curve dual to the subdivision of `p`.
pub fn tropical_curve(p: &Poly2) -> Result<PlaneCurve> {
    let sub = dual_subdivision(p)?;
    let degree = p.degree();
    match sub.dim {
        0 => Err(precondition("a single monomial defines an empty curve")),
        1 => curve_from_segment(p, sub, degree),
        _ => curve_from_2d(sub, degree),
    }
}

/// Degenerate Newton polygon: the curve is a union of parallel lines, one per
/// 1-cell; each is encoded as a 2-valent vertex with two opposite rays.
fn curve_from_segment(p: &Poly2, sub: DualSubdivision, degree: i64) -> Result<PlaneCurve> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (k, c) in sub.cells1.iter().enumerate() {
        let w = c.lattice_length();
        let ca = p.coeffs.get(&c.a).expect("0-cell in support").clone();
        let cb = p.coeffs.get(&c.b).expect("0-cell in support").clone();
        let dv = (c.b.0 - c.a.0, c.b.1 - c.a.1);
        // The monomials at the two cell endpoints tie on the line
        // dv . (x, y) = ca - cb; pick the point closest to the origin.
        let tau = ca - cb;
        let n2 = Rat::from_integer((dv.0 * dv.0 + dv.1 * dv.1).into());
        let vx = &tau * Rat::from_integer(dv.0.into()) / &n2;
        let vy = &tau * Rat::from_integer(dv.1.into()) / &n2;
        let vid = vertices.len();
        vertices.push((vx, vy));
        let g = num::integer::gcd(dv.0.abs(), dv.1.abs()).max(1);
        let prim = (dv.0 / g, dv.1 / g);
        let ortho = (-prim.1, prim.0);
        edges.push(CurveEdge::Ray { v: vid, dir: ortho, weight: w, dual: k });
        edges.push(CurveEdge::Ray { v: vid, dir: (-ortho.0, -ortho.1), weight: w, dual: k });
    }
    Ok(PlaneCurve { vertices, edges, subdivision: sub, degree })
}

fn curve_from_2d(sub: DualSubdivision, degree: i64) -> Result<PlaneCurve> {
    let vertices: Vec<QPoint> = sub.cells2.iter().map(|c| c.dual_vertex()).collect();
    let mut edges = Vec::new();
    for (k, c) in sub.cells1.iter().enumerate() {
        let w = c.lattice_length();
        match c.cells.as_slice() {
            [i, j] => {
                edges.push(CurveEdge::Bounded { a: *i, b: *j, weight: w, dual: k });
            }
            [i] => {
                let dir = c.outward.expect("boundary 1-cell carries outward normal");
                edges.push(CurveEdge::Ray { v: *i, dir, weight: w, dual: k });
            }
            _ => return Err(precondition("1-cell with bad adjacency")),
        }
    }
    Ok(PlaneCurve { vertices, edges, subdivision: sub, degree })
}

impl PlaneCurve {
    /// Outgoing (weight, primitive direction) pairs at a vertex; bounded
    /// edges of zero length between coincident vertices cannot occur because
    /// distinct 2-cells have distinct dual vertices.
    pub fn germs_at(&self, v: usize) -> Vec<(i64, (i64, i64), usize)> {
        let mut out = Vec::new();
        for (ei, e) in self.edges.iter().enumerate() {
            match e {
                CurveEdge::Bounded { a, b, weight, .. } => {
                    if *a == v || *b == v {
                        let (from, to) = if *a == v { (*a, *b) } else { (*b, *a) };
                        let dx = &self.vertices[to].0 - &self.vertices[from].0;
                        let dy = &self.vertices[to].1 - &self.vertices[from].1;
                        let dir = primitive_of_rat2(&dx, &dy).expect("distinct vertices");
                        out.push((*weight, dir, ei));
                    }
                }
                CurveEdge::Ray { v: rv, dir, weight, .. } => {
                    if *rv == v {
                        out.push((*weight, *dir, ei));
                    }
                }
            }
        }
        out
    }

    /// Checks the balancing condition at every vertex.
    pub fn check_balanced(&self) -> bool {
        (0..self.vertices.len()).all(|v| {
            let germs = self.germs_at(v);
            let sx: i64 = germs.iter().map(|(w, d, _)| w * d.0).sum();
            let sy: i64 = germs.iter().map(|(w, d, _)| w * d.1).sum();
            sx == 0 && sy == 0
        })
    }

    /// Non-singular = the dual subdivision is a unimodular triangulation.
    pub fn is_nonsingular(&self) -> bool {
        self.subdivision.dim == 2
            && self
                .subdivision
                .cells2
                .iter()
                .all(|c| c.is_triangle() && c.double_area() == 1)
    }

    /// Nodal = every cell is a triangle or a parallelogram and all unbounded
    /// edges have weight 1.
    pub fn is_nodal(&self) -> bool {
        if self.subdivision.dim != 2 {
            return false;
        }
        let cells_ok = self
            .subdivision
            .cells2
            .iter()
            .all(|c| c.is_triangle() || c.is_parallelogram());
        let rays_ok = self
            .edges
            .iter()
            .all(|e| !matches!(e, CurveEdge::Ray { weight, .. } if *weight != 1));
        cells_ok && rays_ok
    }

    pub fn nodal_profile(&self) -> Result<NodalProfile> {
        if !self.is_nodal() {
            return Err(precondition("curve is not nodal"));
        }
        let d = self.degree;
        let simplex = vec![(0, 0), (d, 0), (0, d)];
        // The Newton polygon must fill the degree-d triangle for the classical
        // degree/genus count.
        for p in &self.subdivision.newton {
            if !(p.0 >= 0 && p.1 >= 0 && p.0 + p.1 <= d) {
                return Err(precondition("Newton polygon exceeds the degree simplex"));
            }
        }
        let all = lattice_points_in(&simplex);
        let missing = all
            .iter()
            .filter(|p| !self.subdivision.cells0.contains(p))
            .count() as i64;
        let parallelograms = self
            .subdivision
            .cells2
            .iter()
            .filter(|c| c.is_parallelogram())
            .count() as i64;
        let delta = missing + parallelograms;
        let genus = (d - 1) * (d - 2) / 2 - delta;
        Ok(NodalProfile { degree: d, missing_points: missing, parallelograms, delta, genus })
    }

    /// Complex/real/quantum multiplicities of a nodal curve (product over
    /// trivalent vertices, i.e. triangle cells).
    pub fn curve_multiplicities(&self) -> Result<Multiplicities> {
        if !self.is_nodal() {
            return Err(precondition("multiplicities are defined for nodal curves"));
        }
        let mut per_vertex = Vec::new();
        let mut complex = 1i64;
        let mut real = 1i64;
        let mut quantum = LaurentQ::one();
        for (vi, cell) in self.subdivision.cells2.iter().enumerate() {
            if !cell.is_triangle() {
                continue;
            }
            let m = cell.double_area();
            let interior = interior_lattice_count(&cell.polygon);
            let mr = if m % 2 == 0 {
                0
            } else if interior % 2 == 0 {
                1
            } else {
                -1
            };
            let g = LaurentQ::quantum_int(m as u32);
            complex *= m;
            real *= mr;
            quantum = quantum.mul(&g);
            per_vertex.push(VertexMult { vertex: vi, complex: m, real: mr, quantum: g });
        }
        Ok(Multiplicities { per_vertex, complex, real, quantum })
    }

    /// First Betti number of the bounded part of the curve.
    pub fn bounded_b1(&self) -> i64 {
        let mut dsu: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(d: &mut Vec<usize>, x: usize) -> usize {
            if d[x] != x {
                let r = find(d, d[x]);
                d[x] = r;
            }
            d[x]
        }
        let mut e = 0i64;
        for edge in &self.edges {
            if let CurveEdge::Bounded { a, b, .. } = edge {
                e += 1;
                let (ra, rb) = (find(&mut dsu, *a), find(&mut dsu, *b));
                if ra != rb {
                    dsu[ra] = rb;
                }
            }
        }
        let comps = (0..self.vertices.len())
            .filter(|&v| find(&mut dsu, v) == v)
            .count() as i64;
        e - self.vertices.len() as i64 + comps
    }

    pub fn bounded_edges(&self) -> Vec<(usize, usize, i64, usize)> {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| match e {
                CurveEdge::Bounded { a, b, weight, .. } => Some((*a, *b, *weight, i)),
                _ => None,
            })
            .collect()
    }

    pub fn rays(&self) -> Vec<(usize, (i64, i64), i64, usize)> {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| match e {
                CurveEdge::Ray { v, dir, weight, .. } => Some((*v, *dir, *weight, i)),
                _ => None,
            })
            .collect()
    }

    /// Multiset of coefficient lookups for duality checks: dual cell of each
    /// edge is orthogonal to the edge direction.
    pub fn duality_holds(&self) -> bool {
        for e in &self.edges {
            let c = &self.subdivision.cells1[e.dual()];
            let dual_dir = (c.b.0 - c.a.0, c.b.1 - c.a.1);
            let edge_dir = match e {
                CurveEdge::Bounded { a, b, .. } => {
                    let dx = &self.vertices[*b].0 - &self.vertices[*a].0;
                    let dy = &self.vertices[*b].1 - &self.vertices[*a].1;
                    primitive_of_rat2(&dx, &dy).unwrap()
                }
                CurveEdge::Ray { dir, .. } => *dir,
            };
            if edge_dir.0 * dual_dir.0 + edge_dir.1 * dual_dir.1 != 0 {
                return false;
            }
            // Weight = lattice length of the dual cell.
            if e.weight() != c.lattice_length() {
                return false;
            }
            // Unbounded <=> boundary cell.
            let is_ray = matches!(e, CurveEdge::Ray { .. });
            if is_ray != (c.cells.len() == 1) && self.subdivision.dim == 2 {
                return false;
            }
        }
        true
    }
}

/// Checks dim F = codim of the dual cell indirectly: the number of connected
/// regions of the complement equals the number of subdivision vertices.
pub fn region_count_matches(curve: &PlaneCurve) -> bool {
    if curve.subdivision.dim != 2 {
        return true;
    }
    let v = curve.vertices.len() as i64;
    let e = curve.edges.len() as i64;
    // Planar Euler count with a point at infinity absorbing all rays.
    let regions = 1 + e - v;
    regions == curve.subdivision.cells0.len() as i64
}

/// Coefficient map utility used by tests.
pub fn coeff_map(pairs: &[((i64, i64), Rat)]) -> BTreeMap<ZPoint, Rat> {
    pairs.iter().cloned().collect()
}
