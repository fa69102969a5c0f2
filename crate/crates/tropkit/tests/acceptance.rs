//! Acceptance gate: every release criterion, one printed PASS/FAIL line each.
//! Run with `cargo test --test acceptance -- --nocapture` to see the report.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tropkit::curve::{tropical_curve, PlaneCurve};
use tropkit::fan::{
    adjunction_bound, fan_degree, fan_link, local_intersection, trivalent_approximable,
    verify_balancing, FanCurve, FanPlane,
};
use tropkit::floor::count_curves;
use tropkit::geom::{convex_hull_z, interior_lattice_count};
use tropkit::graph::{
    curve_cohomology, elementary_modification, EdgeLen, GraphEdge, GraphPoint, MetricGraph,
};
use tropkit::intersect::{mixed_area, stable_intersection};
use tropkit::laurent::LaurentQ;
use tropkit::matroid::{matroid_fan, Matroid};
use tropkit::patchwork::{
    is_maximal_twist, is_twist_admissible, patchwork, quadrants_of_component,
    signs_equal_up_to_symmetry, twists_from_signs, SignDistribution, TwistSet,
};
use tropkit::poly2::{parse_poly2, Poly2};
use tropkit::rat::{rat, Rat};
use tropkit::semiring::dequantized_add;

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn report(&mut self, name: &str, started: Instant, errors: Vec<String>) {
        let ms = started.elapsed().as_millis();
        if errors.is_empty() {
            println!("PASS {name} ({ms} ms)");
        } else {
            println!("FAIL {name} ({ms} ms): {}", errors.join("; "));
            self.failures.push(format!("{name}: {}", errors.join("; ")));
        }
    }
}

fn curve(src: &str) -> PlaneCurve {
    tropical_curve(&parse_poly2(src).unwrap()).unwrap()
}

fn laur(terms: &[(i64, i64)]) -> LaurentQ {
    terms
        .iter()
        .fold(LaurentQ::zero(), |acc, &(de, c)| acc.add(&LaurentQ::monomial(de, c)))
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut r = 1i64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Criterion 1: refined invariants and their specializations, exact.
fn refined_invariants(gate: &mut Gate) {
    let started = Instant::now();
    let mut errors = Vec::new();
    let table: [(usize, i64, LaurentQ, i64, Option<i64>); 4] = [
        (3, 0, laur(&[(-2, 1), (0, 10), (2, 1)]), 12, Some(8)),
        (4, 2, laur(&[(-2, 3), (0, 21), (2, 3)]), 27, None),
        (4, 1, laur(&[(-4, 3), (-2, 33), (0, 153), (2, 33), (4, 3)]), 225, None),
        (
            4,
            0,
            laur(&[(-6, 1), (-4, 13), (-2, 94), (0, 404), (2, 94), (4, 13), (6, 1)]),
            620,
            Some(240),
        ),
    ];
    for (d, g, want_q, want_c, want_r) in table {
        let t0 = Instant::now();
        let c = count_curves(d, g).unwrap();
        if c.quantum != want_q {
            errors.push(format!("quantum[{d},{g}] = {}", c.quantum));
        }
        if c.complex != want_c {
            errors.push(format!("complex[{d},{g}] = {}", c.complex));
        }
        if let Some(w) = want_r {
            if c.real != w {
                errors.push(format!("real[{d},{g}] = {}", c.real));
            }
        }
        // The real count is always the q = -1 specialization.
        if Some(c.real) != c.quantum.at_minus_one() {
            errors.push(format!("real[{d},{g}] disagrees with q=-1 value"));
        }
        if t0.elapsed().as_secs() >= 1 {
            errors.push(format!("count_curves({d},{g}) took >= 1 s"));
        }
    }
    gate.report("refined-invariants", started, errors);
}

/// Criterion 2: per-diagram marking counts match the reference tables.
fn marking_counts(gate: &mut Gate) {
    let started = Instant::now();
    let mut errors = Vec::new();
    let table: [(usize, i64, &[u64]); 6] = [
        (3, 0, &[1, 3, 5]),
        (3, 1, &[1]),
        (4, 3, &[1]),
        (4, 2, &[1, 2, 3, 5, 7]),
        (4, 1, &[1, 2, 4, 6, 6, 7, 9, 15, 21, 21, 26]),
        (4, 0, &[1, 3, 6, 8, 15, 15, 15, 18, 35, 40, 45, 102]),
    ];
    // Degrees 1 and 2 have a single diagram with a single marking.
    for d in 1..=2 {
        let c = count_curves(d, 0).unwrap();
        if c.per_diagram != vec![(1, 1)] {
            errors.push(format!("degree {d} markings"));
        }
    }
    for (d, g, want) in table {
        let c = count_curves(d, g).unwrap();
        let mut marks: Vec<u64> = c.per_diagram.iter().map(|(nu, _)| *nu as u64).collect();
        marks.sort_unstable();
        if marks != want {
            errors.push(format!("markings[{d},{g}] = {marks:?}"));
        }
    }
    if started.elapsed().as_secs() >= 10 {
        errors.push("marking suite took >= 10 s".into());
    }
    gate.report("marking-counts", started, errors);
}

/// Criterion 3: closed forms for top genera and top coefficients, d in 3..=5.
fn closed_forms(gate: &mut Gate) {
    let started = Instant::now();
    let mut errors = Vec::new();
    for d in 3usize..=5 {
        let di = d as i64;
        let gmax = (di - 1) * (di - 2) / 2;
        let top = count_curves(d, gmax).unwrap();
        if top.quantum != LaurentQ::one() {
            errors.push(format!("G[{d},{gmax}] = {}", top.quantum));
        }
        // (d-1) * ((d-2)/2 q^-1 + 2d-1 + (d-2)/2 q), cleared of halves.
        let side = (di - 1) * (di - 2) / 2;
        let want = laur(&[(-2, side), (0, (di - 1) * (2 * di - 1)), (2, side)]);
        let next = count_curves(d, gmax - 1).unwrap();
        if next.quantum != want {
            errors.push(format!("G[{d},{}] = {}", gmax - 1, next.quantum));
        }
        for g in 0..=gmax {
            let c = count_curves(d, g).unwrap();
            let top_coeff = c.quantum.terms.iter().next_back().map(|(_, &v)| v);
            if top_coeff != Some(binom(gmax, g)) {
                errors.push(format!("top coefficient of G[{d},{g}]"));
            }
        }
    }
    // Spot checks at maximal degree.
    let c5 = count_curves(5, 0).unwrap();
    if c5.complex != 87304 {
        errors.push(format!("N[5,0] = {}", c5.complex));
    }
    if c5.real != 18264 {
        errors.push(format!("W[5] = {}", c5.real));
    }
    gate.report("closed-form-suite", started, errors);
}

/// Criterion 4: intersection theory on the standard fan plane.
fn fan_values(gate: &mut Gate) {
    let started = Instant::now();
    let mut errors = Vec::new();
    let p = FanPlane::new(3).unwrap();
    let l = FanCurve::new(3, vec![(vec![1, 1, 0], 1), (vec![-1, -1, 0], 1)]).unwrap();
    let c = FanCurve::new(
        3,
        vec![(vec![-2, -3, 0], 1), (vec![0, 1, 1], 1), (vec![2, 2, -1], 1)],
    )
    .unwrap();
    let checks: [(&str, i64, i64); 3] = [
        ("(L.L)", local_intersection(&p, &l, &l).unwrap(), -1),
        ("(C.C)", local_intersection(&p, &c, &c).unwrap(), -4),
        ("(C.L)", local_intersection(&p, &c, &l).unwrap(), -1),
    ];
    for (name, got, want) in checks {
        if got != want {
            errors.push(format!("{name} = {got}"));
        }
    }
    if fan_degree(&c).unwrap() != 3 {
        errors.push("deg C".into());
    }
    if adjunction_bound(&p, &c).unwrap() != -2 {
        errors.push("adjunction LHS".into());
    }
    if trivalent_approximable(&p, &c).unwrap() {
        errors.push("C wrongly approximable".into());
    }
    if !trivalent_approximable(&p, &l).unwrap() {
        errors.push("L wrongly non-approximable".into());
    }
    gate.report("fan-intersection-values", started, errors);
}

/// Criterion 5: matroid fans balance; the braid fan's link is Petersen.
fn matroid_fans(gate: &mut Gate) {
    let started = Instant::now();
    let mut errors = Vec::new();
    let braid = matroid_fan(&Matroid::braid()).unwrap();
    if !verify_balancing(&braid).unwrap() {
        errors.push("braid fan unbalanced".into());
    }
    let link = fan_link(&braid).unwrap();
    let degs = link.degrees();
    if degs.len() != 10 || degs.iter().any(|&d| d != 3) {
        errors.push(format!("link degrees {degs:?}"));
    }
    if link.edges.len() != 15 {
        errors.push(format!("link edges {}", link.edges.len()));
    }
    if link.girth() != Some(5) {
        errors.push(format!("link girth {:?}", link.girth()));
    }
    for n in 2..=5 {
        for rank in 2..=n {
            let fan = matroid_fan(&Matroid::uniform(n, rank).unwrap()).unwrap();
            if !verify_balancing(&fan).unwrap() {
                errors.push(format!("uniform({n},{rank}) unbalanced"));
            }
        }
    }
    if started.elapsed().as_secs() >= 5 {
        errors.push("matroid suite took >= 5 s".into());
    }
    gate.report("matroid-fans", started, errors);
}

fn random_poly(rng: &mut StdRng) -> Poly2 {
    loop {
        let mut coeffs = std::collections::BTreeMap::new();
        for i in 0..=4i64 {
            for j in 0..=4i64 {
                if i + j <= 4 && rng.gen_bool(0.45) {
                    let num = rng.gen_range(-40..=40i64);
                    let den = rng.gen_range(1..=7i64);
                    coeffs.insert((i, j), rat(num) / rat(den));
                }
            }
        }
        if coeffs.len() < 3 {
            continue;
        }
        let p = Poly2::new(coeffs).unwrap();
        // Keep polynomials with a two-dimensional Newton polygon.
        if p.newton_polygon().len() >= 3 {
            return p;
        }
    }
}

/// Criterion 6: random plane curves balance, satisfy duality, respect the
/// Bernstein count, and nonsingular ones have b1 = interior lattice points.
fn plane_curve_properties(gate: &mut Gate) {
    let started = Instant::now();
    let mut errors = Vec::new();
    let mut rng = StdRng::seed_from_u64(0x7509);
    let mut curves = Vec::new();
    let mut nonsingular_seen = 0usize;
    for i in 0..200 {
        let p = random_poly(&mut rng);
        let c = match tropical_curve(&p) {
            Ok(c) => c,
            Err(e) => {
                errors.push(format!("curve {i} failed: {e}"));
                continue;
            }
        };
        if !c.check_balanced() {
            errors.push(format!("curve {i} unbalanced"));
        }
        if !c.duality_holds() {
            errors.push(format!("curve {i} fails duality"));
        }
        if c.is_nonsingular() {
            nonsingular_seen += 1;
            let hull = convex_hull_z(&c.subdivision.newton);
            if c.bounded_b1() != interior_lattice_count(&hull) {
                errors.push(format!("curve {i}: b1 != interior points"));
            }
        }
        curves.push(c);
    }
    if nonsingular_seen == 0 {
        errors.push("no nonsingular curve sampled".into());
    }
    // Stable intersections of transverse pairs match the mixed area.
    let mut pairs = 0usize;
    let mut k = 0usize;
    while pairs < 100 && k + 1 < curves.len() * curves.len() {
        let a = &curves[k % curves.len()];
        let b = &curves[(k * 31 + 1) % curves.len()];
        k += 1;
        if std::ptr::eq(a, b) {
            continue;
        }
        match stable_intersection(a, b, false) {
            Ok(s) => {
                pairs += 1;
                let ma = mixed_area(&a.subdivision.newton, &b.subdivision.newton);
                if ma != rat(s.total) {
                    errors.push(format!("pair {k}: total {} != mixed area {ma}", s.total));
                }
            }
            Err(_) => continue, // non-transverse pair; skip
        }
    }
    if pairs < 100 {
        errors.push(format!("only {pairs} transverse pairs found"));
    }
    if started.elapsed().as_secs() >= 30 {
        errors.push("plane-curve suite took >= 30 s".into());
    }
    gate.report("plane-curve-properties", started, errors);
}

/// Independent cycle-parity oracle: type I iff every cycle of the bounded
/// graph carries an even number of twisted edges.
fn type_i_oracle(c: &PlaneCurve, t: &TwistSet) -> bool {
    let nv = c.vertices.len();
    let bounded = c.bounded_edges();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nv]; // (vertex, edge)
    let mut seen = vec![false; nv];
    let mut tree = BTreeSet::new();
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b, _, e) in &bounded {
            let w = if a == v { b } else if b == v { a } else { continue };
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, e));
                tree.insert(e);
                stack.push(w);
            }
        }
    }
    let depth_path = |mut v: usize| -> Vec<(usize, usize)> {
        let mut path = Vec::new();
        while let Some((p, e)) = parent[v] {
            path.push((v, e));
            v = p;
        }
        path
    };
    for &(a, b, _, e) in &bounded {
        if tree.contains(&e) {
            continue;
        }
        // Fundamental cycle of the non-tree edge e: e plus the symmetric
        // difference of the two root paths.
        let mut count = BTreeSet::new();
        count.insert(e);
        let pa: Vec<usize> = depth_path(a).iter().map(|&(_, e)| e).collect();
        let pb: Vec<usize> = depth_path(b).iter().map(|&(_, e)| e).collect();
        let sa: BTreeSet<usize> = pa.into_iter().collect();
        let sb: BTreeSet<usize> = pb.into_iter().collect();
        for &x in sa.symmetric_difference(&sb) {
            count.insert(x);
        }
        if count.intersection(&t.0).count() % 2 != 0 {
            return false;
        }
    }
    true
}

/// Criterion 7: patchworking properties on small curves.
fn patchworking_properties(gate: &mut Gate) {
    let started = Instant::now();
    let mut errors = Vec::new();
    let small = [
        "x + y + 0",
        "3 + 2x + 2y + 3xy + y^2 + x^2",
        "1 + x + y + 3xy",
        "0 + (-1)x + (-4)x^2 + (-1)y + (-3)xy",
    ];
    for src in small {
        let c = curve(src);
        let verts = c.subdivision.cells0.clone();
        if verts.len() > 8 {
            errors.push(format!("{src:?} has more than 8 subdivision vertices"));
            continue;
        }
        for mask in 0u32..1 << verts.len() {
            let s = SignDistribution(
                verts
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| (p, if mask >> i & 1 == 1 { -1 } else { 1 }))
                    .collect(),
            );
            let t = match twists_from_signs(&c, &s) {
                Ok(t) => t,
                Err(e) => {
                    errors.push(format!("{src:?} mask {mask}: {e}"));
                    continue;
                }
            };
            if !is_twist_admissible(&c, &t).unwrap() {
                errors.push(format!("{src:?} mask {mask}: inadmissible twists"));
            }
        }
    }
    let all = [
        "x + y + 0",
        "3 + 2x + 2y + 3xy + y^2 + x^2",
        "1 + x + y + 3xy",
        "0 + (-1)x + (-4)x^2 + (-1)y + (-3)xy",
        "0 + 3x + 3y + 5xy + 3x^2 + 3y^2 + 4x^2y + 4xy^2 + 0x^3 + 0y^3",
    ];
    for src in all {
        let c = curve(src);
        let empty = TwistSet::empty();
        if !is_twist_admissible(&c, &empty).unwrap() {
            errors.push(format!("{src:?}: empty twist set inadmissible"));
        }
        if !is_maximal_twist(&c, &empty).unwrap() {
            errors.push(format!("{src:?}: empty twist set not maximal"));
        }
        // Type-I flag agrees with the independent cycle-parity computation on
        // every admissible twist set.
        let bounded: Vec<usize> = c.bounded_edges().iter().map(|e| e.3).collect();
        if bounded.len() <= 10 {
            for mask in 0u32..1 << bounded.len() {
                let t = TwistSet(
                    bounded
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e)
                        .collect(),
                );
                if !is_twist_admissible(&c, &t).unwrap() {
                    continue;
                }
                let r = patchwork(&c, &t).unwrap();
                if r.type_i != type_i_oracle(&c, &t) {
                    errors.push(format!("{src:?} mask {mask}: type-I mismatch"));
                }
            }
        }
    }
    // The real line: one component through three quadrants, up to symmetry.
    let line = curve("x + y + 0");
    let r = patchwork(&line, &TwistSet::empty()).unwrap();
    if r.strands.len() != 3 || r.component_count != 1 {
        errors.push("line real part is not three arcs in one component".into());
    }
    let q = quadrants_of_component(&r, 0);
    if !signs_equal_up_to_symmetry(&q, &[(1, 1), (-1, 1), (-1, -1)]) {
        errors.push(format!("line quadrants {q:?}"));
    }
    gate.report("patchworking-properties", started, errors);
}

fn fin(a: usize, b: usize, len: i64) -> GraphEdge {
    GraphEdge { a, b: Some(b), len: EdgeLen::Finite(rat(len)) }
}

fn diamond(g: &MetricGraph) -> (usize, usize, usize, usize) {
    let c = curve_cohomology(g).unwrap();
    (c.h00, c.h01, c.h10, c.h11)
}

/// Random compact connected graph of genus `genus`; every finite vertex gets
/// infinite leaves until it is at least trivalent.
fn random_compact_graph(rng: &mut StdRng, genus: usize) -> MetricGraph {
    let nv = rng.gen_range(2..=4usize);
    let mut infinite = vec![false; nv];
    let mut edges = Vec::new();
    for v in 1..nv {
        let u = rng.gen_range(0..v);
        edges.push(fin(u, v, rng.gen_range(1..=5)));
    }
    for _ in 0..genus {
        let u = rng.gen_range(0..nv);
        let mut v = rng.gen_range(0..nv - 1);
        if v >= u {
            v += 1;
        }
        edges.push(fin(u.min(v), u.max(v), rng.gen_range(1..=5)));
    }
    for v in 0..nv {
        let mut val = edges
            .iter()
            .filter(|e| e.a == v || e.b == Some(v))
            .count();
        while val < 3 {
            let leaf = infinite.len();
            infinite.push(true);
            edges.push(GraphEdge { a: v, b: Some(leaf), len: EdgeLen::Infinite });
            val += 1;
        }
    }
    MetricGraph::new(infinite, edges).unwrap()
}

/// Criterion 8: cohomology diamonds and modification invariance.
fn cohomology_properties(gate: &mut Gate) {
    let started = Instant::now();
    let mut errors = Vec::new();
    let inf = EdgeLen::Infinite;
    let line = MetricGraph::new(
        vec![false, true, true],
        vec![
            GraphEdge { a: 0, b: Some(1), len: inf.clone() },
            GraphEdge { a: 0, b: Some(2), len: inf.clone() },
            GraphEdge { a: 0, b: None, len: inf.clone() },
        ],
    )
    .unwrap();
    if diamond(&line) != (1, 0, 0, 0) {
        errors.push(format!("line diamond {:?}", diamond(&line)));
    }
    let punctured = MetricGraph::new(
        vec![false],
        vec![
            GraphEdge { a: 0, b: None, len: inf.clone() },
            GraphEdge { a: 0, b: None, len: inf.clone() },
            GraphEdge { a: 0, b: None, len: inf },
        ],
    )
    .unwrap();
    if diamond(&punctured).2 != 2 {
        errors.push(format!("punctured line h10 = {}", diamond(&punctured).2));
    }
    let mut rng = StdRng::seed_from_u64(0x2b1);
    for i in 0..20 {
        let genus = rng.gen_range(0..=3usize);
        let g = random_compact_graph(&mut rng, genus);
        if g.genus().unwrap() != genus as i64 {
            errors.push(format!("graph {i}: wrong genus"));
            continue;
        }
        let before = diamond(&g);
        if before != (1, genus, genus, 1) {
            errors.push(format!("graph {i}: diamond {before:?} for genus {genus}"));
        }
        // Modification invariance at a vertex and in the middle of an edge.
        let finite_edge = g
            .edges
            .iter()
            .position(|e| matches!(e.len, EdgeLen::Finite(_)));
        let mut points = vec![GraphPoint::Vertex(0)];
        if let Some(e) = finite_edge {
            points.push(GraphPoint::OnEdge { edge: e, at: rat(1) / rat(2) });
        }
        for p in points {
            let m = elementary_modification(&g, &p).unwrap();
            if diamond(&m) != before {
                errors.push(format!("graph {i}: modification changed the diamond"));
            }
        }
    }
    gate.report("cohomology-diamonds", started, errors);
}

/// Criterion 9: dequantized addition stays inside its two-sided bound.
fn dequantization_bound(gate: &mut Gate) {
    let started = Instant::now();
    let mut errors = Vec::new();
    let mut rng = StdRng::seed_from_u64(0xd5);
    let mut worst: f64 = 0.0;
    for _ in 0..100_000 {
        let x: f64 = rng.gen_range(-100.0..100.0);
        let y: f64 = rng.gen_range(-100.0..100.0);
        let t: f64 = rng.gen_range(1.0001..1.0e6);
        let s = dequantized_add(x, y, t).unwrap();
        let lower = x.max(y);
        let upper = lower + 2f64.ln() / t.ln();
        worst = worst.max(lower - s).max(s - upper);
    }
    if worst > 1e-12 {
        errors.push(format!("bound violated by {worst:e}"));
    }
    gate.report("dequantization-bound", started, errors);
}

#[test]
fn acceptance() {
    let mut gate = Gate { failures: Vec::new() };
    refined_invariants(&mut gate);
    marking_counts(&mut gate);
    closed_forms(&mut gate);
    fan_values(&mut gate);
    matroid_fans(&mut gate);
    plane_curve_properties(&mut gate);
    patchworking_properties(&mut gate);
    cohomology_properties(&mut gate);
    dequantization_bound(&mut gate);
    assert!(
        gate.failures.is_empty(),
        "acceptance failures:\n{}",
        gate.failures.join("\n")
    );
}
