//! Fan tropical curves in R^n and their intersection theory inside the
//! standard fan plane, plus weighted polyhedral fans with exact balancing
//! verification.

use std::collections::BTreeMap;

use crate::error::{precondition, Result};
use crate::lattice;

/// A one-vertex tropical curve: weighted primitive rays from the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanCurve {
    pub n: usize,
    pub rays: Vec<(Vec<i64>, i64)>,
}

impl FanCurve {
    pub fn new(n: usize, rays: Vec<(Vec<i64>, i64)>) -> Result<Self> {
        if n == 0 || rays.is_empty() {
            return Err(precondition("fan curve needs a positive dimension and rays"));
        }
        for (d, w) in &rays {
            if d.len() != n {
                return Err(precondition("ray dimension mismatch"));
            }
            if *w <= 0 {
                return Err(precondition("ray weights must be positive"));
            }
            let g = d.iter().fold(0i64, |g, &x| num::integer::gcd(g, x.abs()));
            if g == 0 {
                return Err(precondition("zero ray direction"));
            }
            if g != 1 {
                return Err(precondition("ray directions must be primitive"));
            }
        }
        let c = FanCurve { n, rays };
        if !c.is_balanced() {
            return Err(precondition("fan curve is not balanced at the origin"));
        }
        Ok(c)
    }

    pub fn is_balanced(&self) -> bool {
        (0..self.n).all(|i| self.rays.iter().map(|(d, w)| w * d[i]).sum::<i64>() == 0)
    }

    pub fn weight_sum(&self) -> i64 {
        self.rays.iter().map(|(_, w)| w).sum()
    }
}

/// The standard fan plane in R^n: rays v_0 = (1,..,1), v_i = -e_i, two-faces
/// spanned by pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FanPlane {
    pub n: usize,
}

impl FanPlane {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(precondition("fan plane needs ambient dimension >= 2"));
        }
        Ok(FanPlane { n })
    }

    pub fn two_face_count(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    /// The standard line: rays v_0..v_n, all weights 1.
    pub fn line(&self) -> FanCurve {
        let mut rays = vec![(vec![1i64; self.n], 1)];
        for i in 0..self.n {
            let mut d = vec![0i64; self.n];
            d[i] = -1;
            rays.push((d, 1));
        }
        FanCurve { n: self.n, rays }
    }
}

/// deg(C) = sum_e w_e * max(0, s_1(e), ..., s_n(e)).
pub fn fan_degree(c: &FanCurve) -> Result<i64> {
    if !c.is_balanced() {
        return Err(precondition("fan curve is not balanced"));
    }
    Ok(c
        .rays
        .iter()
        .map(|(d, w)| w * d.iter().copied().max().unwrap().max(0))
        .sum())
}

/// Barycentric coordinates of a direction in the plane fan: the unique
/// expression x = sum lambda_i v_i with lambda >= 0 and minimal support.
/// Index 0 is v_0; indices 1..=n are the -e_i.
fn plane_coords(n: usize, x: &[i64]) -> Vec<i64> {
    let top = x.iter().copied().max().unwrap().max(0);
    let mut lam = vec![top];
    for &xi in x.iter().take(n) {
        lam.push(top - xi);
    }
    lam
}

/// Per-face (p, q) data of a curve's rays: face keys (i, j) with i < j over
/// generators v_0..v_n; rays lying on a 1-face or at the origin contribute no
/// interior term.
fn face_decomposition(
    p: &FanPlane,
    c: &FanCurve,
) -> Result<BTreeMap<(usize, usize), Vec<(i64, i64, i64)>>> {
    if c.n != p.n {
        return Err(precondition("curve/plane dimension mismatch"));
    }
    if !c.is_balanced() {
        return Err(precondition("fan curve is not balanced"));
    }
    let mut out: BTreeMap<(usize, usize), Vec<(i64, i64, i64)>> = BTreeMap::new();
    for (d, w) in &c.rays {
        let lam = plane_coords(p.n, d);
        let support: Vec<usize> = (0..=p.n).filter(|&i| lam[i] != 0).collect();
        match support.as_slice() {
            [] | [_] => {} // on a 1-face or zero: corner terms vanish
            [i, j] => out.entry((*i, *j)).or_default().push((*w, lam[*i], lam[*j])),
            _ => {
                return Err(precondition(format!(
                    "ray {d:?} does not lie in a 2-face of the plane fan"
                )))
            }
        }
    }
    Ok(out)
}

/// Corner intersection multiplicity in the face spanned by (v_i, v_j),
/// extended bilinearly over all rays of both curves in that face.
pub fn corner_intersection(
    p: &FanPlane,
    c1: &FanCurve,
    c2: &FanCurve,
    face: (usize, usize),
) -> Result<i64> {
    if face.0 >= face.1 || face.1 > p.n {
        return Err(precondition("face indices must satisfy i < j <= n"));
    }
    let d1 = face_decomposition(p, c1)?;
    let d2 = face_decomposition(p, c2)?;
    let empty = Vec::new();
    let r1 = d1.get(&face).unwrap_or(&empty);
    let r2 = d2.get(&face).unwrap_or(&empty);
    let mut total = 0i64;
    for &(w1, p1, q1) in r1 {
        for &(w2, p2, q2) in r2 {
            total += w1 * w2 * (p1 * q2).min(q1 * p2);
        }
    }
    Ok(total)
}

/// (C1.C2)_0 = deg(C1) deg(C2) - sum over two-faces of corner terms.
pub fn local_intersection(p: &FanPlane, c1: &FanCurve, c2: &FanCurve) -> Result<i64> {
    let deg = fan_degree(c1)? * fan_degree(c2)?;
    let d1 = face_decomposition(p, c1)?;
    let d2 = face_decomposition(p, c2)?;
    let mut corner = 0i64;
    for (face, r1) in &d1 {
        if let Some(r2) = d2.get(face) {
            for &(w1, p1, q1) in r1 {
                for &(w2, p2, q2) in r2 {
                    corner += w1 * w2 * (p1 * q2).min(q1 * p2);
                }
            }
        }
    }
    Ok(deg - corner)
}

/// LHS of the adjunction inequality: (C^2)_0 + (n-2) deg(C) - sum w_e + 2.
/// A negative value certifies that C is not approximable by an algebraic
/// curve in a d-transversal plane.
pub fn adjunction_bound(p: &FanPlane, c: &FanCurve) -> Result<i64> {
    let self_int = local_intersection(p, c, c)?;
    Ok(self_int + (p.n as i64 - 2) * fan_degree(c)? - c.weight_sum() + 2)
}

/// Trivalent fan curves in R^3 are approximable in the standard plane exactly
/// when their self-intersection is 0 or -1.
pub fn trivalent_approximable(p: &FanPlane, c: &FanCurve) -> Result<bool> {
    if p.n != 3 || c.n != 3 {
        return Err(precondition("approximability test requires ambient dimension 3"));
    }
    if c.rays.len() > 3 {
        return Err(precondition("approximability test requires at most 3 rays"));
    }
    let s = local_intersection(p, c, c)?;
    Ok(s == 0 || s == -1)
}

/// A weighted rational polyhedral fan, given by its cones' integer generators.
/// Lower-dimensional cones may be listed; weights are carried by the
/// top-dimensional ones.
#[derive(Debug, Clone)]
pub struct PolyhedralFan {
    pub n: usize,
    pub cones: Vec<Cone>,
}

#[derive(Debug, Clone)]
pub struct Cone {
    pub generators: Vec<Vec<i64>>,
    pub weight: i64,
}

impl PolyhedralFan {
    pub fn dim(&self) -> usize {
        self.cones
            .iter()
            .map(|c| lattice::rank_of(&c.generators, self.n))
            .max()
            .unwrap_or(0)
    }

    fn top_cones(&self) -> Vec<&Cone> {
        let d = self.dim();
        self.cones
            .iter()
            .filter(|c| lattice::rank_of(&c.generators, self.n) == d)
            .collect()
    }

    /// Distinct rays appearing as generators of the cones.
    pub fn rays(&self) -> Vec<Vec<i64>> {
        let mut rays: Vec<Vec<i64>> = Vec::new();
        for c in &self.cones {
            for g in &c.generators {
                if !rays.contains(g) {
                    rays.push(g.clone());
                }
            }
        }
        rays.sort();
        rays
    }
}

/// Checks the weighted balancing condition along every codimension-one face
/// of a pure-dimensional fan: for facets F_1..F_k adjacent to a face E, with
/// v_i a representative of the primitive generator of the quotient lattice
/// Lambda_{F_i} / Lambda_E pointing into F_i, the sum of w_i v_i must lie in
/// Lambda_E.
pub fn verify_balancing(fan: &PolyhedralFan) -> Result<bool> {
    let d = fan.dim();
    if d == 0 {
        return Ok(true);
    }
    // Purity: every listed cone must span a sub-space of some top cone.
    let tops = fan.top_cones();
    for c in &fan.cones {
        let ok = tops.iter().any(|t| {
            c.generators
                .iter()
                .all(|g| lattice::in_qspan(&t.generators, g))
        });
        if !ok {
            return Err(precondition("fan is not pure-dimensional"));
        }
    }
    // Codim-1 faces: drop one generator from a top cone; group facets by the
    // saturated lattice they share along the face.
    let mut faces: BTreeMap<Vec<Vec<i64>>, Vec<(usize, Vec<i64>)>> = BTreeMap::new();
    for (ti, t) in tops.iter().enumerate() {
        for drop in 0..t.generators.len() {
            let sub: Vec<Vec<i64>> = t
                .generators
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, g)| g.clone())
                .collect();
            if lattice::rank_of(&sub, fan.n) != d - 1 {
                continue;
            }
            let mut key = lattice::saturation_basis(&sub, fan.n);
            canonicalize_lattice_basis(&mut key);
            faces.entry(key).or_default().push((ti, t.generators[drop].clone()));
        }
    }
    for (face_basis, adjacent) in faces {
        let f = face_basis.len() + 1;
        let mut sum = vec![0i64; fan.n];
        let mut seen_tops: Vec<usize> = Vec::new();
        for (ti, outside) in &adjacent {
            if seen_tops.contains(ti) {
                continue; // a facet meets the face once
            }
            seen_tops.push(*ti);
            // Saturated lattice of the facet and coordinates therein.
            let mut span = face_basis.clone();
            span.push(outside.clone());
            let facet_basis = lattice::saturation_basis(&span, fan.n);
            if facet_basis.len() != f {
                return Err(precondition("degenerate facet lattice"));
            }
            let coords = |x: &[i64]| -> Result<Vec<i64>> {
                let y = lattice::solve_rational(&facet_basis, x)
                    .ok_or_else(|| precondition("vector outside facet span"))?;
                y.iter()
                    .map(|v| {
                        if v.is_integer() {
                            Ok(i64::try_from(&v.to_integer()).expect("small entries"))
                        } else {
                            Err(precondition("saturated basis must give integer coordinates"))
                        }
                    })
                    .collect()
            };
            let e_coords: Vec<Vec<i64>> = face_basis
                .iter()
                .map(|b| coords(b))
                .collect::<Result<_>>()?;
            let mut phi = lattice::primitive_normal_functional(&e_coords, f)
                .ok_or_else(|| precondition("face lattice is degenerate"))?;
            let g_coords = coords(outside)?;
            let side: i64 = phi.iter().zip(&g_coords).map(|(a, b)| a * b).sum();
            if side < 0 {
                for v in phi.iter_mut() {
                    *v = -*v;
                }
            } else if side == 0 {
                return Err(precondition("facet generator lies on its own face"));
            }
            let y = lattice::solve_unimodular(&phi)
                .ok_or_else(|| precondition("normal functional not primitive"))?;
            // v_i = facet_basis * y, a lattice point with phi-value 1.
            let w = tops[*ti].weight;
            for (col, &yi) in facet_basis.iter().zip(&y) {
                for (k, &cv) in col.iter().enumerate() {
                    sum[k] += w * yi * cv;
                }
            }
        }
        // Membership of the weighted sum in the face lattice: rational span
        // suffices since the face basis is saturated and the sum is integer.
        if !sum.iter().all(|&x| x == 0) && !lattice::in_qspan(&face_basis, &sum) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A canonical representative for a saturated lattice basis so that equal
/// lattices hash equally: reduced column echelon over Q, scaled to integers.
fn canonicalize_lattice_basis(basis: &mut Vec<Vec<i64>>) {
    if basis.is_empty() {
        return;
    }
    let n = basis[0].len();
    use num::{BigInt, BigRational, Zero};
    let big = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut cols: Vec<Vec<BigRational>> =
        basis.iter().map(|c| c.iter().map(|&x| big(x)).collect()).collect();
    let mut r = 0usize;
    for row in 0..n {
        let Some(p) = (r..cols.len()).find(|&c| !cols[c][row].is_zero()) else { continue };
        cols.swap(r, p);
        let inv = cols[r][row].clone();
        for v in cols[r].iter_mut() {
            *v = &*v / &inv;
        }
        for c in 0..cols.len() {
            if c != r && !cols[c][row].is_zero() {
                let f = cols[c][row].clone();
                for k in 0..n {
                    let v = &cols[c][k] - &f * &cols[r][k];
                    cols[c][k] = v;
                }
            }
        }
        r += 1;
        if r == cols.len() {
            break;
        }
    }
    let mut out: Vec<Vec<i64>> = cols
        .iter()
        .map(|col| {
            let mut denom = BigInt::from(1);
            for v in col {
                denom = num::integer::lcm(denom, v.denom().clone());
            }
            col.iter()
                .map(|v| {
                    let q = (v * BigRational::from_integer(denom.clone())).to_integer();
                    i64::try_from(&q).expect("small entries")
                })
                .collect()
        })
        .collect();
    out.sort();
    *basis = out;
}

/// The link graph of a two-dimensional fan: one vertex per ray, one edge per
/// 2-cone; rays of degree 2 whose cones span the same plane with equal weight
/// are smoothed away.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkGraph {
    pub vertices: Vec<Vec<i64>>,
    pub edges: Vec<(usize, usize)>,
}

impl LinkGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertices.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Length of a shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        let nv = self.vertices.len();
        let mut adj = vec![Vec::new(); nv];
        for (ei, &(a, b)) in self.edges.iter().enumerate() {
            if a == b {
                return Some(1);
            }
            adj[a].push((b, ei));
            adj[b].push((a, ei));
        }
        let mut best: Option<usize> = None;
        for start in 0..nv {
            // BFS that forbids immediately reusing the arriving edge.
            let mut dist = vec![usize::MAX; nv];
            let mut via = vec![usize::MAX; nv];
            dist[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &(w, ei) in &adj[v] {
                    if ei == via[v] {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        via[w] = ei;
                        queue.push_back(w);
                    } else if dist[w] + 1 >= dist[v] {
                        let cyc = dist[v] + dist[w] + 1;
                        if best.map(|b| cyc < b).unwrap_or(true) {
                            best = Some(cyc);
                        }
                    }
                }
            }
        }
        best
    }
}

pub fn fan_link(fan: &PolyhedralFan) -> Result<LinkGraph> {
    if fan.dim() > 2 {
        return Err(precondition("fan link is defined for fans of dimension <= 2"));
    }
    let rays = fan.rays();
    let index = |g: &Vec<i64>| rays.iter().position(|r| r == g).unwrap();
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    for c in &fan.cones {
        if lattice::rank_of(&c.generators, fan.n) == 2 && c.generators.len() == 2 {
            let (a, b) = (index(&c.generators[0]), index(&c.generators[1]));
            edges.push((a.min(b), a.max(b), c.weight));
        }
    }
    // Smooth degree-2 rays whose two cones are coplanar with equal weights.
    let mut vertices: Vec<Vec<i64>> = rays.clone();
    loop {
        let mut deg = vec![Vec::new(); vertices.len()];
        for (ei, &(a, b, _)) in edges.iter().enumerate() {
            deg[a].push(ei);
            deg[b].push(ei);
        }
        let mut smoothed = None;
        for (v, inc) in deg.iter().enumerate() {
            if inc.len() != 2 {
                continue;
            }
            let (e1, e2) = (inc[0], inc[1]);
            if edges[e1].2 != edges[e2].2 {
                continue;
            }
            let other = |e: usize| if edges[e].0 == v { edges[e].1 } else { edges[e].0 };
            let (a, b) = (other(e1), other(e2));
            if a == v || b == v || a == b {
                continue;
            }
            let span = vec![vertices[a].clone(), vertices[v].clone(), vertices[b].clone()];
            if lattice::rank_of(&span, fan.n) == 2 {
                smoothed = Some((v, a, b, e1, e2, edges[e1].2));
                break;
            }
        }
        let Some((v, a, b, e1, e2, w)) = smoothed else { break };
        let mut keep: Vec<(usize, usize, i64)> = edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e1 && i != e2)
            .map(|(_, e)| *e)
            .collect();
        keep.push((a.min(b), a.max(b), w));
        // Drop vertex v and reindex.
        let mut remap = Vec::with_capacity(vertices.len());
        let mut next = 0usize;
        for i in 0..vertices.len() {
            remap.push(if i == v { usize::MAX } else { next });
            if i != v {
                next += 1;
            }
        }
        vertices.remove(v);
        edges = keep
            .into_iter()
            .map(|(x, y, w)| (remap[x].min(remap[y]), remap[x].max(remap[y]), w))
            .collect();
    }
    Ok(LinkGraph {
        vertices,
        edges: edges.into_iter().map(|(a, b, _)| (a, b)).collect(),
    })
}
