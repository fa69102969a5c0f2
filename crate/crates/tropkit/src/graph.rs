//! Abstract tropical curves as metric graphs: genus, elementary
//! modifications, tropical morphisms to R^n, and the (co)homology of curves.

use num::Zero;

use crate::error::{precondition, Result};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeLen {
    Finite(Rat),
    Infinite,
}

/// An edge of a metric graph. `b = None` marks an open end: the edge leaves
/// `a` and is cut before reaching a vertex (the open model of a puncture).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub a: usize,
    pub b: Option<usize>,
    pub len: EdgeLen,
}

/// A metric graph; `infinite[v]` marks one-valent vertices at infinite
/// distance (the compactification points of ends).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricGraph {
    pub infinite: Vec<bool>,
    pub edges: Vec<GraphEdge>,
}

impl MetricGraph {
    pub fn new(infinite: Vec<bool>, edges: Vec<GraphEdge>) -> Result<Self> {
        let g = MetricGraph { infinite, edges };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let n = self.infinite.len();
        let mut valence = vec![0usize; n];
        for e in &self.edges {
            let mut ends = vec![e.a];
            if let Some(b) = e.b {
                ends.push(b);
            }
            for &v in &ends {
                if v >= n {
                    return Err(precondition("edge endpoint out of range"));
                }
                valence[v] += 1;
            }
            let touches_infinite = ends.iter().any(|&v| self.infinite[v]);
            match (&e.len, touches_infinite) {
                (EdgeLen::Finite(l), false) => {
                    if l <= &Rat::zero() {
                        return Err(precondition("edge lengths must be positive"));
                    }
                }
                (EdgeLen::Finite(_), true) => {
                    return Err(precondition(
                        "edges reaching an infinite vertex must have infinite length",
                    ))
                }
                (EdgeLen::Infinite, true) => {}
                (EdgeLen::Infinite, false) => {
                    if e.b.is_some() {
                        return Err(precondition(
                            "infinite length requires an infinite endpoint or an open end",
                        ));
                    }
                }
            }
        }
        for (v, &inf) in self.infinite.iter().enumerate() {
            if valence[v] == 0 {
                return Err(precondition(format!("vertex {v} is isolated")));
            }
            if inf && valence[v] != 1 {
                return Err(precondition("infinite vertices must be one-valent"));
            }
        }
        Ok(())
    }

    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.a == v) + usize::from(e.b == Some(v)))
            .sum()
    }

    fn components(&self) -> Vec<usize> {
        let n = self.infinite.len();
        let mut dsu: Vec<usize> = (0..n).collect();
        fn find(d: &mut Vec<usize>, x: usize) -> usize {
            if d[x] != x {
                let r = find(d, d[x]);
                d[x] = r;
            }
            d[x]
        }
        for e in &self.edges {
            if let Some(b) = e.b {
                let (ra, rb) = (find(&mut dsu, e.a), find(&mut dsu, b));
                if ra != rb {
                    dsu[ra] = rb;
                }
            }
        }
        (0..n).map(|v| find(&mut dsu, v)).collect()
    }

    pub fn is_connected(&self) -> bool {
        let roots = self.components();
        roots.windows(2).all(|w| w[0] == w[1]) || roots.is_empty()
    }

    /// First Betti number of each connected component, by component root.
    pub fn component_genera(&self) -> Vec<i64> {
        let roots = self.components();
        let mut distinct: Vec<usize> = roots.clone();
        distinct.sort();
        distinct.dedup();
        distinct
            .iter()
            .map(|&r| {
                let v = roots.iter().filter(|&&x| x == r).count() as i64;
                let e = self
                    .edges
                    .iter()
                    .filter(|e| e.b.is_some() && roots[e.a] == r)
                    .count() as i64;
                e - v + 1
            })
            .collect()
    }

    /// Genus = first Betti number; defined for connected graphs.
    pub fn genus(&self) -> Result<i64> {
        let genera = self.component_genera();
        if genera.len() != 1 {
            return Err(precondition(format!(
                "graph is disconnected; component genera: {genera:?}"
            )));
        }
        Ok(genera[0])
    }
}

/// A point of a metric graph at which a modification can be performed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphPoint {
    Vertex(usize),
    /// Interior point of edge `edge` at distance `at` from its `a` end.
    OnEdge { edge: usize, at: Rat },
}

/// Grafts an infinite leaf at `p`, subdividing an edge when `p` is interior.
pub fn elementary_modification(g: &MetricGraph, p: &GraphPoint) -> Result<MetricGraph> {
    let mut out = g.clone();
    let attach = match p {
        GraphPoint::Vertex(v) => {
            if *v >= g.infinite.len() {
                return Err(precondition("vertex out of range"));
            }
            if g.infinite[*v] {
                return Err(precondition("cannot modify at a one-valent infinite vertex"));
            }
            *v
        }
        GraphPoint::OnEdge { edge, at } => {
            let Some(e) = g.edges.get(*edge).cloned() else {
                return Err(precondition("edge out of range"));
            };
            match &e.len {
                EdgeLen::Finite(l) => {
                    if at <= &Rat::zero() || at >= l {
                        return Err(precondition("subdivision point must be interior"));
                    }
                }
                EdgeLen::Infinite => {
                    if at <= &Rat::zero() {
                        return Err(precondition("subdivision point must be interior"));
                    }
                }
            }
            // Split the edge at the point.
            let mid = out.infinite.len();
            out.infinite.push(false);
            out.edges[*edge] = GraphEdge {
                a: e.a,
                b: Some(mid),
                len: EdgeLen::Finite(at.clone()),
            };
            let rest = match &e.len {
                EdgeLen::Finite(l) => EdgeLen::Finite(l - at),
                EdgeLen::Infinite => EdgeLen::Infinite,
            };
            out.edges.push(GraphEdge { a: mid, b: e.b, len: rest });
            mid
        }
    };
    let leaf = out.infinite.len();
    out.infinite.push(true);
    out.edges.push(GraphEdge { a: attach, b: Some(leaf), len: EdgeLen::Infinite });
    out.validate()?;
    Ok(out)
}

/// A tropical morphism to R^n: integer velocity u(e) per edge, oriented from
/// `a` to `b` (outward from `a` on open edges).
#[derive(Debug, Clone)]
pub struct TropicalMorphism {
    pub graph: MetricGraph,
    pub n: usize,
    pub velocities: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    pub valid: bool,
    /// Vertices at which balancing fails.
    pub unbalanced: Vec<usize>,
    pub degree: i64,
}

/// Checks integrality (structural) and balancing at every finite vertex that
/// is not an end of the parameterized curve; infinite one-valent vertices
/// carried to infinity (nonzero velocity) are the removed vertices, and the
/// degree of the image is read from the velocities of their edges.
pub fn validate_morphism(m: &TropicalMorphism) -> Result<MorphismReport> {
    if m.velocities.len() != m.graph.edges.len() {
        return Err(precondition("one velocity vector per edge required"));
    }
    for u in &m.velocities {
        if u.len() != m.n {
            return Err(precondition("velocity dimension mismatch"));
        }
    }
    let nv = m.graph.infinite.len();
    let mut unbalanced = Vec::new();
    for v in 0..nv {
        if m.graph.infinite[v] {
            continue;
        }
        let mut sum = vec![0i64; m.n];
        for (e, u) in m.graph.edges.iter().zip(&m.velocities) {
            if e.a == v {
                for (s, x) in sum.iter_mut().zip(u) {
                    *s += x;
                }
            }
            if e.b == Some(v) {
                for (s, x) in sum.iter_mut().zip(u) {
                    *s -= x;
                }
            }
        }
        if sum.iter().any(|&x| x != 0) {
            unbalanced.push(v);
        }
    }
    // Degree of the image: ends are edges into infinite vertices with nonzero
    // velocity, plus open edges with nonzero velocity.
    let mut degree = 0i64;
    for (e, u) in m.graph.edges.iter().zip(&m.velocities) {
        if u.iter().all(|&x| x == 0) {
            continue;
        }
        let outgoing: Option<Vec<i64>> = match e.b {
            Some(b) if m.graph.infinite[b] => Some(u.clone()),
            None => Some(u.clone()),
            _ => {
                if m.graph.infinite[e.a] {
                    Some(u.iter().map(|&x| -x).collect())
                } else {
                    None
                }
            }
        };
        if let Some(dir) = outgoing {
            degree += dir.iter().copied().max().unwrap().max(0);
        }
    }
    Ok(MorphismReport { valid: unbalanced.is_empty(), unbalanced, degree })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveCohomology {
    pub h00: usize,
    pub h01: usize,
    pub h10: usize,
    pub h11: usize,
    pub dim_c10: usize,
    pub dim_c11: usize,
}

/// Tropical cohomology of a connected curve. The F^1 stalk at a finite
/// k-valent vertex is (k-1)-dimensional, modeled on k fan directions summing
/// to zero; stalks vanish at one-valent infinite vertices. Open ends count
/// toward the valence of their vertex but carry no closed 1-cell.
pub fn curve_cohomology(g: &MetricGraph) -> Result<CurveCohomology> {
    if !g.is_connected() {
        return Err(precondition("cohomology requires a connected curve"));
    }
    let nv = g.infinite.len();
    // h^{0,*}: ordinary cohomology of the closed carrier.
    let h00 = 1usize;
    let h01 = g.genus()? as usize;

    // Stalk bases: vertex v gets val(v) - 1 coordinates; germ i of an edge at
    // v is modeled by the direction e_i for i < val-1 and -(1,..,1) for the
    // last germ.
    let mut offset = vec![0usize; nv];
    let mut dim_c10 = 0usize;
    for v in 0..nv {
        offset[v] = dim_c10;
        if !g.infinite[v] {
            dim_c10 += g.valence(v).saturating_sub(1);
        }
    }
    // Germ index of each (edge, endpoint) pair within its vertex.
    let mut germ_count = vec![0usize; nv];
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let germ_of = |v: usize, counts: &mut Vec<usize>| -> usize {
        let i = counts[v];
        counts[v] += 1;
        i
    };
    let mut closed_edges = 0usize;
    // Pre-assign germ indices in edge order for deterministic layout.
    let mut germs: Vec<(Option<usize>, Option<usize>)> = Vec::new();
    for e in &g.edges {
        let ga = Some(germ_of(e.a, &mut germ_count));
        let gb = e.b.map(|b| germ_of(b, &mut germ_count));
        germs.push((ga, gb));
    }
    let stalk_column = |v: usize, germ: usize| -> Vec<(usize, Rat)> {
        // Coordinates of the model direction of this germ in the stalk basis.
        if g.infinite[v] {
            return Vec::new();
        }
        let dim = g.valence(v).saturating_sub(1);
        if dim == 0 {
            return Vec::new();
        }
        if germ < dim {
            vec![(offset[v] + germ, Rat::from_integer(1.into()))]
        } else {
            (0..dim)
                .map(|k| (offset[v] + k, Rat::from_integer((-1).into())))
                .collect()
        }
    };
    for (e, (ga, gb)) in g.edges.iter().zip(&germs) {
        let Some(b) = e.b else { continue };
        closed_edges += 1;
        // Restrictions to the edge stalk: the outgoing germs at the two
        // endpoints are opposite tangent directions, so both enter with the
        // same sign after orienting the edge.
        let mut row = vec![Rat::zero(); dim_c10];
        for (idx, coef) in stalk_column(b, gb.unwrap()) {
            row[idx] -= coef;
        }
        for (idx, coef) in stalk_column(e.a, ga.unwrap()) {
            row[idx] -= coef;
        }
        rows.push(row);
    }
    let rank = row_rank(&mut rows);
    Ok(CurveCohomology {
        h00,
        h01,
        h10: dim_c10 - rank,
        h11: closed_edges - rank,
        dim_c10,
        dim_c11: closed_edges,
    })
}

fn row_rank(rows: &mut [Vec<Rat>]) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut r = 0usize;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for k in c..ncols {
                    let v = &rows[i][k] - &f * &rows[r][k];
                    rows[i][k] = v;
                }
            }
        }
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}
