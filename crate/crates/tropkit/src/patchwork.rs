//! Combinatorial patchworking of non-singular plane tropical curves.
//!
//! Each edge of the curve carries two boundary strands (left/right of the
//! oriented edge); at every trivalent vertex the six strand-ends are matched
//! by the planar rotation system into three corner arcs. Untwisted edges glue
//! strands side-preservingly, twisted edges swap sides. Components of the
//! resulting curve in the four quadrants carry sign pairs related across an
//! edge of primitive direction (u, v) by the factor ((-1)^u, (-1)^v).

use std::collections::BTreeSet;

use crate::curve::{CurveEdge, PlaneCurve};
use crate::error::{precondition, Result};
use crate::rat::Rat;

/// Subset of bounded edges of the host curve, by edge index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwistSet(pub BTreeSet<usize>);

impl TwistSet {
    pub fn empty() -> Self {
        TwistSet(BTreeSet::new())
    }
}

/// Signs attached to the vertices of the dual subdivision.
#[derive(Debug, Clone)]
pub struct SignDistribution(pub std::collections::BTreeMap<(i64, i64), i8>);

/// One connected piece of the patchworked curve inside a single quadrant:
/// the corner arcs it traverses, as (vertex, corner index) pairs, plus its
/// quadrant signs.
#[derive(Debug, Clone)]
pub struct Strand {
    pub arcs: Vec<(usize, usize)>,
    pub sign: (i8, i8),
    /// Index of the real component this strand belongs to after the arcs are
    /// closed up across the coordinate axes at infinity.
    pub component: usize,
}

#[derive(Debug, Clone)]
pub struct PatchworkResult {
    pub strands: Vec<Strand>,
    pub component_count: usize,
    pub type_i: bool,
    pub maximal: bool,
    pub orientable_quotient: bool,
    pub euler_char_quotient: i64,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
    fn join(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// CCW angular order of primitive directions.
fn ccw_sort(dirs: &mut Vec<(usize, (i64, i64))>) {
    let half = |d: (i64, i64)| -> u8 {
        // 0: angle in [0, pi), 1: in [pi, 2pi).
        if d.1 > 0 || (d.1 == 0 && d.0 > 0) {
            0
        } else {
            1
        }
    };
    dirs.sort_by(|a, b| {
        half(a.1)
            .cmp(&half(b.1))
            .then_with(|| (b.1 .0 * a.1 .1 - b.1 .1 * a.1 .0).cmp(&0))
    });
}

/// Per-vertex germs in CCW order: (edge index, outgoing primitive direction).
fn rotation_system(curve: &PlaneCurve) -> Vec<Vec<(usize, (i64, i64))>> {
    (0..curve.vertices.len())
        .map(|v| {
            let mut germs: Vec<(usize, (i64, i64))> = curve
                .germs_at(v)
                .into_iter()
                .map(|(_, dir, ei)| (ei, dir))
                .collect();
            ccw_sort(&mut germs);
            germs
        })
        .collect()
}

fn validate_twists(curve: &PlaneCurve, t: &TwistSet) -> Result<()> {
    for &e in &t.0 {
        if !matches!(curve.edges.get(e), Some(CurveEdge::Bounded { .. })) {
            return Err(precondition(format!("twist set member {e} is not a bounded edge")));
        }
    }
    Ok(())
}

fn require_nonsingular(curve: &PlaneCurve) -> Result<()> {
    if !curve.is_nonsingular() {
        return Err(precondition("patchworking requires a non-singular curve"));
    }
    Ok(())
}

/// Cycle basis of the bounded graph: for each non-tree bounded edge, the list
/// of bounded edge indices on the fundamental cycle.
fn cycle_basis(curve: &PlaneCurve) -> Vec<Vec<usize>> {
    let n = curve.vertices.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (a, b, _, ei) in curve.bounded_edges() {
        adj[a].push((b, ei));
        adj[b].push((a, ei));
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut tree_edges = BTreeSet::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &(w, ei) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, ei));
                    tree_edges.insert(ei);
                    stack.push(w);
                }
            }
        }
    }
    let depth_path = |mut v: usize| -> Vec<(usize, usize)> {
        let mut path = Vec::new();
        while let Some((p, ei)) = parent[v] {
            path.push((v, ei));
            v = p;
        }
        path
    };
    let mut cycles = Vec::new();
    for (a, b, _, ei) in curve.bounded_edges() {
        if tree_edges.contains(&ei) {
            continue;
        }
        // Fundamental cycle: chord + symmetric difference of root paths.
        let pa = depth_path(a);
        let pb = depth_path(b);
        let ea: BTreeSet<usize> = pa.iter().map(|x| x.1).collect();
        let eb: BTreeSet<usize> = pb.iter().map(|x| x.1).collect();
        let mut cyc: Vec<usize> = ea.symmetric_difference(&eb).copied().collect();
        cyc.push(ei);
        cycles.push(cyc);
    }
    cycles
}

fn primitive_dir_of_edge(curve: &PlaneCurve, ei: usize) -> (i64, i64) {
    match &curve.edges[ei] {
        CurveEdge::Bounded { a, b, .. } => {
            let dx = &curve.vertices[*b].0 - &curve.vertices[*a].0;
            let dy = &curve.vertices[*b].1 - &curve.vertices[*a].1;
            crate::rat::primitive_of_rat2(&dx, &dy).unwrap()
        }
        CurveEdge::Ray { dir, .. } => *dir,
    }
}

/// Eq-style admissibility: over every basis cycle, the primitive directions
/// of twisted edges sum to zero mod 2.
pub fn is_twist_admissible(curve: &PlaneCurve, t: &TwistSet) -> Result<bool> {
    require_nonsingular(curve)?;
    validate_twists(curve, t)?;
    for cyc in cycle_basis(curve) {
        let mut sx = 0i64;
        let mut sy = 0i64;
        for ei in cyc {
            if t.0.contains(&ei) {
                let d = primitive_dir_of_edge(curve, ei);
                sx += d.0;
                sy += d.1;
            }
        }
        if sx.rem_euclid(2) != 0 || sy.rem_euclid(2) != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every basis cycle carries an even number of twisted edges.
fn type_i_by_parity(curve: &PlaneCurve, t: &TwistSet) -> bool {
    cycle_basis(curve)
        .iter()
        .all(|cyc| cyc.iter().filter(|e| t.0.contains(e)).count() % 2 == 0)
}

/// Orientability of the ribbon surface: 2-color the vertices so that twisted
/// edges flip the color and untwisted edges preserve it.
fn orientable_ribbon(curve: &PlaneCurve, t: &TwistSet) -> bool {
    let n = curve.vertices.len();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (a, b, _, ei) in curve.bounded_edges() {
        let tw = t.0.contains(&ei);
        adj[a].push((b, tw));
        adj[b].push((a, tw));
    }
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let cv = color[v].unwrap();
            for &(w, tw) in &adj[v] {
                let want = cv ^ tw;
                match color[w] {
                    None => {
                        color[w] = Some(want);
                        stack.push(w);
                    }
                    Some(cw) => {
                        if cw != want {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

fn connected_without(curve: &PlaneCurve, removed: &BTreeSet<usize>) -> bool {
    let n = curve.vertices.len();
    if n == 0 {
        return true;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, b, _, ei) in curve.bounded_edges() {
        if !removed.contains(&ei) {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut cnt = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                cnt += 1;
                stack.push(w);
            }
        }
    }
    cnt == n
}

/// Haas' criterion: T is maximal iff it is of type I and every twisted edge is
/// a bridge, or pairs with another twisted edge into a 2-edge cut.
pub fn is_maximal_twist(curve: &PlaneCurve, t: &TwistSet) -> Result<bool> {
    if !is_twist_admissible(curve, t)? {
        return Err(precondition("twist set is not admissible"));
    }
    if !type_i_by_parity(curve, t) {
        return Ok(false);
    }
    let conn = |set: &BTreeSet<usize>| connected_without(curve, set);
    for &e in &t.0 {
        let only_e: BTreeSet<usize> = BTreeSet::from([e]);
        if !conn(&only_e) {
            continue; // bridge
        }
        let mut ok = false;
        for &e2 in &t.0 {
            if e2 == e {
                continue;
            }
            let only_e2 = BTreeSet::from([e2]);
            let both = BTreeSet::from([e, e2]);
            if conn(&only_e2) && !conn(&both) {
                ok = true;
                break;
            }
        }
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

// Strand-end encoding: ((edge * 2 + end) * 2 + side). `end` 0 is the tail of
// the oriented edge (lexicographically smaller endpoint; the vertex for rays),
// `end` 1 the head (infinity for rays). `side` 0 = left of the oriented edge.
fn node(edge: usize, end: usize, side: usize) -> usize {
    (edge * 2 + end) * 2 + side
}

struct StrandModel {
    /// For each edge: (tail vertex, head vertex or None for rays, oriented
    /// primitive direction).
    oriented: Vec<(usize, Option<usize>, (i64, i64))>,
    /// Corner arcs as (vertex, corner, strand-end node a, node b).
    arcs: Vec<(usize, usize, usize, usize)>,
}

fn build_strand_model(curve: &PlaneCurve) -> StrandModel {
    let rot = rotation_system(curve);
    let mut oriented = Vec::with_capacity(curve.edges.len());
    for e in &curve.edges {
        match e {
            CurveEdge::Bounded { a, b, .. } => {
                let (tail, head) = if curve.vertices[*a] <= curve.vertices[*b] {
                    (*a, *b)
                } else {
                    (*b, *a)
                };
                let dx = &curve.vertices[head].0 - &curve.vertices[tail].0;
                let dy = &curve.vertices[head].1 - &curve.vertices[tail].1;
                let dir = crate::rat::primitive_of_rat2(&dx, &dy).unwrap();
                oriented.push((tail, Some(head), dir));
            }
            CurveEdge::Ray { v, dir, .. } => oriented.push((*v, None, *dir)),
        }
    }
    // Germ-side to global-side: at the tail the outgoing direction agrees with
    // the orientation, so germ-left (ccw flank) is the edge's left; at the
    // head they are opposite.
    let strand_end = |ei: usize, vertex: usize, germ_left: bool| -> usize {
        let at_tail = oriented[ei].0 == vertex;
        let end = if at_tail { 0 } else { 1 };
        let side = match (at_tail, germ_left) {
            (true, true) | (false, false) => 0,
            _ => 1,
        };
        node(ei, end, side)
    };
    let mut arcs = Vec::new();
    for (v, germs) in rot.iter().enumerate() {
        let k = germs.len();
        for g in 0..k {
            let (e1, _) = germs[g];
            let (e2, _) = germs[(g + 1) % k];
            // Corner between germ g and the next ccw germ: ccw flank (left) of
            // germ g meets the cw flank (right) of germ g+1.
            let a = strand_end(e1, v, true);
            let b = strand_end(e2, v, false);
            arcs.push((v, g, a, b));
        }
    }
    StrandModel { oriented, arcs }
}

/// Runs the patchworking procedure.
pub fn patchwork(curve: &PlaneCurve, t: &TwistSet) -> Result<PatchworkResult> {
    require_nonsingular(curve)?;
    validate_twists(curve, t)?;
    if !is_twist_admissible(curve, t)? {
        return Err(precondition("twist set is not admissible"));
    }
    let model = build_strand_model(curve);
    let n_nodes = curve.edges.len() * 4;

    // Quadrant strands: vertex arcs + edge-interior gluing.
    let mut dsu = Dsu::new(n_nodes);
    for &(_, _, a, b) in &model.arcs {
        dsu.join(a, b);
    }
    for (ei, e) in curve.edges.iter().enumerate() {
        match e {
            CurveEdge::Bounded { .. } => {
                if t.0.contains(&ei) {
                    dsu.join(node(ei, 0, 0), node(ei, 1, 1));
                    dsu.join(node(ei, 0, 1), node(ei, 1, 0));
                } else {
                    dsu.join(node(ei, 0, 0), node(ei, 1, 0));
                    dsu.join(node(ei, 0, 1), node(ei, 1, 1));
                }
            }
            CurveEdge::Ray { .. } => {
                // A ray's strand keeps its side out to infinity.
                dsu.join(node(ei, 0, 0), node(ei, 1, 0));
                dsu.join(node(ei, 0, 1), node(ei, 1, 1));
            }
        }
    }
    // Strand classes.
    let mut class_of = vec![usize::MAX; n_nodes];
    let mut classes: Vec<usize> = Vec::new();
    for nd in 0..n_nodes {
        let r = dsu.find(nd);
        if class_of[r] == usize::MAX {
            class_of[r] = classes.len();
            classes.push(r);
        }
        class_of[nd] = class_of[r];
    }
    let n_strands = classes.len();

    // Sign propagation: across each edge, the strands on its two sides differ
    // by ((-1)^u, (-1)^v).
    let mut sign: Vec<Option<(i8, i8)>> = vec![None; n_strands];
    let mut adj: Vec<Vec<(usize, (i8, i8))>> = vec![Vec::new(); n_strands];
    for (ei, (_, _, dir)) in model.oriented.iter().enumerate() {
        let s_left = class_of[node(ei, 0, 0)];
        let s_right = class_of[node(ei, 0, 1)];
        let factor = (
            if dir.0.rem_euclid(2) == 0 { 1 } else { -1 },
            if dir.1.rem_euclid(2) == 0 { 1 } else { -1 },
        );
        adj[s_left].push((s_right, factor));
        adj[s_right].push((s_left, factor));
    }
    for root in 0..n_strands {
        if sign[root].is_some() {
            continue;
        }
        sign[root] = Some((1, 1));
        let mut stack = vec![root];
        while let Some(s) = stack.pop() {
            let cur = sign[s].unwrap();
            for &(o, f) in &adj[s] {
                let want = (cur.0 * f.0, cur.1 * f.1);
                match sign[o] {
                    None => {
                        sign[o] = Some(want);
                        stack.push(o);
                    }
                    Some(have) => {
                        if have != want {
                            return Err(precondition(
                                "inconsistent sign propagation: twist set violates admissibility",
                            ));
                        }
                    }
                }
            }
        }
    }

    // Real components: additionally close each ray's two strands at infinity.
    let mut dsu2 = Dsu::new(n_nodes);
    dsu2.0.clone_from(&dsu.0);
    for (ei, e) in curve.edges.iter().enumerate() {
        if matches!(e, CurveEdge::Ray { .. }) {
            dsu2.join(node(ei, 1, 0), node(ei, 1, 1));
        }
    }
    let mut comp_of_root: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    let mut comp_of_strand = vec![0usize; n_strands];
    for s in 0..n_strands {
        let r = dsu2.find(classes[s]);
        let next = comp_of_root.len();
        let c = *comp_of_root.entry(r).or_insert(next);
        comp_of_strand[s] = c;
    }
    let component_count = comp_of_root.len();

    // Collect arcs per strand.
    let mut arcs_per_strand: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_strands];
    for &(v, g, a, _) in &model.arcs {
        arcs_per_strand[class_of[a]].push((v, g));
    }

    // Canonical representative under the four axial flips: minimize the sign
    // vector lexicographically.
    let raw: Vec<(i8, i8)> = (0..n_strands).map(|s| sign[s].unwrap()).collect();
    let mut best: Option<Vec<(i8, i8)>> = None;
    for fx in [1i8, -1i8] {
        for fy in [1i8, -1i8] {
            let cand: Vec<(i8, i8)> = raw.iter().map(|(a, b)| (a * fx, b * fy)).collect();
            if best.as_ref().map(|b| cand < *b).unwrap_or(true) {
                best = Some(cand);
            }
        }
    }
    let final_signs = best.unwrap();

    let strands: Vec<Strand> = (0..n_strands)
        .map(|s| Strand {
            arcs: arcs_per_strand[s].clone(),
            sign: final_signs[s],
            component: comp_of_strand[s],
        })
        .collect();

    let type_i = type_i_by_parity(curve, t);
    let orientable_quotient = orientable_ribbon(curve, t);
    let maximal = is_maximal_twist(curve, t)?;
    let euler_char_quotient = curve.vertices.len() as i64 - curve.edges.len() as i64;

    Ok(PatchworkResult {
        strands,
        component_count,
        type_i,
        maximal,
        orientable_quotient,
        euler_char_quotient,
    })
}

/// Reads twists off a sign distribution on the subdivision vertices.
pub fn twists_from_signs(curve: &PlaneCurve, s: &SignDistribution) -> Result<TwistSet> {
    require_nonsingular(curve)?;
    for p in &curve.subdivision.cells0 {
        if !s.0.contains_key(p) {
            return Err(precondition(format!("missing sign for subdivision vertex {p:?}")));
        }
    }
    let sg = |p: (i64, i64)| -> i64 { s.0[&p] as i64 };
    let mut out = BTreeSet::new();
    for (ei, e) in curve.edges.iter().enumerate() {
        let CurveEdge::Bounded { dual, .. } = e else { continue };
        let cell = &curve.subdivision.cells1[*dual];
        let (p1, p2) = (cell.a, cell.b);
        let mut apexes = Vec::new();
        for &ci in &cell.cells {
            let tri = &curve.subdivision.cells2[ci].polygon;
            let apex = tri
                .iter()
                .copied()
                .find(|&q| q != p1 && q != p2)
                .expect("triangle apex");
            apexes.push(apex);
        }
        let [p3, p4] = apexes.as_slice() else {
            return Err(precondition("bounded edge without two adjacent triangles"));
        };
        let distinct_mod2 =
            (p3.0.rem_euclid(2), p3.1.rem_euclid(2)) != (p4.0.rem_euclid(2), p4.1.rem_euclid(2));
        let twisted = if distinct_mod2 {
            sg(p1) * sg(p2) * sg(*p3) * sg(*p4) > 0
        } else {
            sg(*p3) * sg(*p4) < 0
        };
        if twisted {
            out.insert(ei);
        }
    }
    Ok(TwistSet(out))
}

/// Helper used by tests and the viewer: quadrants visited by a component.
pub fn quadrants_of_component(result: &PatchworkResult, comp: usize) -> Vec<(i8, i8)> {
    let mut q: Vec<(i8, i8)> = result
        .strands
        .iter()
        .filter(|s| s.component == comp && !s.arcs.is_empty())
        .map(|s| s.sign)
        .collect();
    q.sort();
    q.dedup();
    q
}

/// Compares two sign multisets up to the four axial flips.
pub fn signs_equal_up_to_symmetry(a: &[(i8, i8)], b: &[(i8, i8)]) -> bool {
    let norm = |v: &[(i8, i8)], fx: i8, fy: i8| -> Vec<(i8, i8)> {
        let mut out: Vec<(i8, i8)> = v.iter().map(|(x, y)| (x * fx, y * fy)).collect();
        out.sort();
        out
    };
    let target = norm(b, 1, 1);
    [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .iter()
        .any(|&(fx, fy)| norm(a, fx, fy) == target)
}

/// Signed coordinates are exact rationals; expose the host curve's vertex
/// positions for rendering.
pub fn vertex_positions(curve: &PlaneCurve) -> &[(Rat, Rat)] {
    &curve.vertices
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::tropical_curve;
    use crate::poly2::parse_poly2;

    fn curve(src: &str) -> PlaneCurve {
        tropical_curve(&parse_poly2(src).unwrap()).unwrap()
    }

    #[test]
    fn line_real_part() {
        let c = curve("x + y + 0");
        let r = patchwork(&c, &TwistSet::default()).unwrap();
        // Three corner arcs, one per quadrant touched by the real line.
        assert_eq!(r.strands.len(), 3);
        assert_eq!(r.component_count, 1);
        let q = quadrants_of_component(&r, 0);
        assert!(signs_equal_up_to_symmetry(&q, &[(1, 1), (-1, 1), (-1, -1)]));
        assert!(r.type_i);
        assert!(r.maximal);
        assert!(r.orientable_quotient);
        assert_eq!(r.euler_char_quotient, -2);
    }

    #[test]
    fn conic_all_twist_sets_admissible() {
        // The bounded graph of the smooth conic is a tree, so every twist set
        // is admissible and of type I.
        let c = curve("3 + 2x + 2y + 3xy + y^2 + x^2");
        let bounded: Vec<usize> = c.bounded_edges().iter().map(|e| e.3).collect();
        assert_eq!(bounded.len(), 3);
        for mask in 0u32..8 {
            let t = TwistSet(
                bounded
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect(),
            );
            assert!(is_twist_admissible(&c, &t).unwrap());
            let r = patchwork(&c, &t).unwrap();
            assert!(r.type_i);
            assert_eq!(r.type_i, r.orientable_quotient);
            // Every arc ends up in exactly one strand.
            let total: usize = r.strands.iter().map(|s| s.arcs.len()).sum();
            assert_eq!(total, 3 * c.vertices.len());
        }
    }

    #[test]
    fn conic_untwisted_is_one_oval() {
        let c = curve("3 + 2x + 2y + 3xy + y^2 + x^2");
        let r = patchwork(&c, &TwistSet::default()).unwrap();
        assert!(r.maximal);
        assert_eq!(r.euler_char_quotient, 4 - 9);
        assert!(r.component_count >= 1);
    }

    #[test]
    fn cubic_cycle_constrains_twists() {
        let c = curve("0 + 3x + 3y + 5xy + 3x^2 + 3y^2 + 4x^2y + 4xy^2 + 0x^3 + 0y^3");
        assert_eq!(c.bounded_b1(), 1);
        let bounded: Vec<usize> = c.bounded_edges().iter().map(|e| e.3).collect();
        // Twisting a single cycle edge of odd primitive direction breaks the
        // mod-2 balance on the cycle.
        let basis = cycle_basis(&c);
        assert_eq!(basis.len(), 1);
        let bad = basis[0]
            .iter()
            .copied()
            .find(|&e| {
                let d = primitive_dir_of_edge(&c, e);
                d.0.rem_euclid(2) == 1 || d.1.rem_euclid(2) == 1
            })
            .expect("cycle has an edge of odd direction");
        let t = TwistSet(BTreeSet::from([bad]));
        assert!(!is_twist_admissible(&c, &t).unwrap());
        assert!(patchwork(&c, &t).is_err());
        assert!(is_maximal_twist(&c, &t).is_err());
        // Empty twist set: fine, type I, maximal.
        let r = patchwork(&c, &TwistSet::default()).unwrap();
        assert!(r.type_i && r.maximal && r.orientable_quotient);
        // Non-cycle (bridge) twists keep every cycle untouched.
        let off_cycle: Vec<usize> = bounded
            .iter()
            .copied()
            .filter(|e| !basis[0].contains(e))
            .collect();
        assert!(!off_cycle.is_empty());
        let t2 = TwistSet(BTreeSet::from([off_cycle[0]]));
        assert!(is_twist_admissible(&c, &t2).unwrap());
        let r2 = patchwork(&c, &t2).unwrap();
        assert!(r2.type_i);
    }

    #[test]
    fn signs_induce_admissible_twists() {
        let c = curve("3 + 2x + 2y + 3xy + y^2 + x^2");
        let verts = c.subdivision.cells0.clone();
        assert_eq!(verts.len(), 6);
        for mask in 0u32..64 {
            let s = SignDistribution(
                verts
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| (p, if mask >> i & 1 == 1 { -1 } else { 1 }))
                    .collect(),
            );
            let t = twists_from_signs(&c, &s).unwrap();
            assert!(is_twist_admissible(&c, &t).unwrap());
            patchwork(&c, &t).unwrap();
        }
    }

    #[test]
    fn twist_set_validation() {
        let c = curve("x + y + 0");
        // Edge 0 is a ray: rays cannot be twisted.
        let t = TwistSet(BTreeSet::from([0usize]));
        assert!(is_twist_admissible(&c, &t).is_err());
        // Non-singularity is required.
        let sing = curve("0 + x + y^2 + (-1)x^2");
        assert!(patchwork(&sing, &TwistSet::default()).is_err());
    }
}
