//! Floor diagrams: weighted acyclic graphs on linearly ordered floors that
//! enumerate plane curves of given degree and genus, together with their
//! marking counts and complex / real / quantum multiplicities.

use std::collections::HashMap;

use crate::error::{precondition, Result};
use crate::laurent::LaurentQ;

/// A floor diagram of degree `d` (= number of floors) and genus `g`.
///
/// Floors are labelled `0..d` in increasing order; every edge `(u, v, w)` is
/// directed upward (`u < v`) and carries a positive integer weight. Each floor
/// `v` additionally carries `legs[v] = 1 + out(v) - in(v)` downward ends,
/// where `out`/`in` are weighted sums over incident edges; validity requires
/// all leg counts to be non-negative and the graph to be connected with first
/// Betti number `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorDiagram {
    pub degree: usize,
    pub genus: i64,
    pub edges: Vec<(usize, usize, i64)>,
    pub legs: Vec<i64>,
}

fn legs_of(d: usize, edges: &[(usize, usize, i64)]) -> Vec<i64> {
    let mut legs = vec![1i64; d];
    for &(u, v, w) in edges {
        legs[u] += w;
        legs[v] -= w;
    }
    legs
}

fn is_connected(d: usize, edges: &[(usize, usize, i64)]) -> bool {
    if d == 0 {
        return true;
    }
    let mut adj = vec![Vec::new(); d];
    for &(u, v, _) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; d];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut cnt = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                cnt += 1;
                stack.push(y);
            }
        }
    }
    cnt == d
}

impl FloorDiagram {
    pub fn new(degree: usize, edges: Vec<(usize, usize, i64)>) -> Result<Self> {
        if degree == 0 {
            return Err(precondition("degree must be positive"));
        }
        for &(u, v, w) in &edges {
            if u >= v || v >= degree || w <= 0 {
                return Err(precondition("edges must go upward with positive weight"));
            }
        }
        let legs = legs_of(degree, &edges);
        if legs.iter().any(|&l| l < 0) {
            return Err(precondition("divergence condition violated: negative leg count"));
        }
        if !is_connected(degree, &edges) {
            return Err(precondition("floor diagram must be connected"));
        }
        let genus = edges.len() as i64 - degree as i64 + 1;
        let mut edges = edges;
        edges.sort();
        Ok(FloorDiagram { degree, genus, edges, legs })
    }

    pub fn complex_multiplicity(&self) -> i64 {
        self.edges.iter().map(|&(_, _, w)| w * w).product()
    }

    pub fn real_multiplicity(&self) -> i64 {
        if self.edges.iter().any(|&(_, _, w)| w % 2 == 0) {
            0
        } else {
            1
        }
    }

    pub fn quantum_multiplicity(&self) -> LaurentQ {
        let mut q = LaurentQ::one();
        for &(_, _, w) in &self.edges {
            let f = LaurentQ::quantum_int(w as u32);
            q = q.mul(&f).mul(&f);
        }
        q
    }

    /// Canonical form under relabelling of floors: the lexicographically
    /// smallest sorted directed edge list over all floor permutations.
    fn canonical(&self) -> Vec<(usize, usize, i64)> {
        let d = self.degree;
        let mut perm: Vec<usize> = (0..d).collect();
        let mut best: Option<Vec<(usize, usize, i64)>> = None;
        permute(&mut perm, 0, &mut |p| {
            let mut rel: Vec<(usize, usize, i64)> =
                self.edges.iter().map(|&(u, v, w)| (p[u], p[v], w)).collect();
            rel.sort();
            if best.as_ref().map(|b| rel < *b).unwrap_or(true) {
                best = Some(rel);
            }
        });
        best.unwrap_or_default()
    }

    /// Order of the automorphism group: floor relabellings preserving the
    /// directed weighted edge multiset, times permutations of parallel edges
    /// of equal weight, times permutations of the legs at each floor.
    pub fn automorphisms(&self) -> u128 {
        let d = self.degree;
        let mut sorted = self.edges.clone();
        sorted.sort();
        let mut vertex_auts = 0u128;
        let mut perm: Vec<usize> = (0..d).collect();
        permute(&mut perm, 0, &mut |p| {
            let mut rel: Vec<(usize, usize, i64)> =
                self.edges.iter().map(|&(u, v, w)| (p[u], p[v], w)).collect();
            rel.sort();
            if rel == sorted {
                vertex_auts += 1;
            }
        });
        let mut aut = vertex_auts;
        let mut mult: HashMap<(usize, usize, i64), u128> = HashMap::new();
        for &e in &self.edges {
            *mult.entry(e).or_insert(0) += 1;
        }
        for (_, m) in mult {
            aut *= factorial(m);
        }
        for &l in &self.legs {
            aut *= factorial(l as u128);
        }
        aut
    }

    /// Number of markings: linear extensions of the element poset divided by
    /// the (freely acting) automorphism group.
    pub fn markings(&self) -> u128 {
        let lin = self.linear_extensions();
        let aut = self.automorphisms();
        debug_assert_eq!(lin % aut, 0);
        lin / aut
    }

    /// Elements: floors, edges and legs; an edge sits strictly between its
    /// endpoints and a leg strictly below its floor.
    fn linear_extensions(&self) -> u128 {
        let d = self.degree;
        let ne = self.edges.len();
        let total_legs: i64 = self.legs.iter().sum();
        let n = d + ne + total_legs as usize;
        // Predecessor masks. Element ids: floors 0..d, edges d..d+ne, legs after.
        let mut preds: Vec<u64> = vec![0; n];
        let mut leg_base = d + ne;
        for (i, &(u, v, w)) in self.edges.iter().enumerate() {
            let e = d + i;
            preds[e] |= 1 << u;
            preds[v] |= 1 << e;
            let _ = w;
        }
        for (v, &l) in self.legs.iter().enumerate() {
            for k in 0..l as usize {
                preds[v] |= 1 << (leg_base + k);
            }
            leg_base += l as usize;
        }
        count_linear_extensions(n, &preds)
    }
}

fn factorial(n: u128) -> u128 {
    (1..=n).product::<u128>().max(1)
}

fn permute<F: FnMut(&[usize])>(perm: &mut Vec<usize>, k: usize, f: &mut F) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// Downset dynamic program over subsets.
fn count_linear_extensions(n: usize, preds: &[u64]) -> u128 {
    assert!(n <= 24, "poset too large for the subset DP");
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut count: HashMap<u64, u128> = HashMap::new();
    count.insert(0, 1);
    // Process masks in order of popcount by iterating numerically: adding an
    // element always increases the mask, so a plain ascending sweep works.
    let mut keys: Vec<u64> = vec![0];
    let mut seen: std::collections::HashSet<u64> = std::collections::HashSet::new();
    seen.insert(0);
    let mut idx = 0;
    let mut order: Vec<u64> = vec![0];
    while idx < order.len() {
        let mask = order[idx];
        idx += 1;
        for e in 0..n {
            if mask >> e & 1 == 0 && preds[e] & !mask == 0 {
                let next = mask | 1 << e;
                if seen.insert(next) {
                    order.push(next);
                }
            }
        }
    }
    order.sort();
    keys.clear();
    for &mask in &order {
        let c = *count.get(&mask).unwrap_or(&0);
        if c == 0 {
            continue;
        }
        for e in 0..n {
            if mask >> e & 1 == 0 && preds[e] & !mask == 0 {
                *count.entry(mask | 1 << e).or_insert(0) += c;
            }
        }
    }
    *count.get(&full).unwrap_or(&0)
}

/// All floor diagrams of the given degree and genus, up to isomorphism.
pub fn enumerate_floor_diagrams(degree: usize, genus: i64) -> Result<Vec<FloorDiagram>> {
    if degree == 0 {
        return Err(precondition("degree must be positive"));
    }
    let gmax = (degree as i64 - 1) * (degree as i64 - 2) / 2;
    if genus < 0 || genus > gmax {
        return Err(precondition(format!(
            "genus must lie in 0..={gmax} for degree {degree}"
        )));
    }
    let target_edges = degree - 1 + genus as usize;
    let d = degree;
    // Pairs grouped by lower floor so that after finishing block `u` every
    // edge incident to floors <= u is decided.
    let mut out: Vec<FloorDiagram> = Vec::new();
    let mut seen: std::collections::HashSet<Vec<(usize, usize, i64)>> =
        std::collections::HashSet::new();
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    dfs_block(d, 0, target_edges, &mut edges, &mut |edges| {
        if edges.len() != target_edges {
            return;
        }
        let Ok(fd) = FloorDiagram::new(d, edges.to_vec()) else { return };
        if seen.insert(fd.canonical()) {
            out.push(fd);
        }
    });
    Ok(out)
}

/// Chooses the parallel-edge weight multiset for every pair (u, v) with v > u,
/// then recurses into block u + 1. Prunes on the divergence condition for the
/// finished floors and on connectivity across the cut below floor u + 1.
///
/// The total weight crossing the cut between floors {0..=k} and the rest is
/// sum(legs of floors <= k) - (k + 1), hence at most d - (k + 1); this caps
/// both individual edge weights and per-block totals.
fn dfs_block(
    d: usize,
    u: usize,
    remaining: usize,
    edges: &mut Vec<(usize, usize, i64)>,
    emit: &mut impl FnMut(&[(usize, usize, i64)]),
) {
    if u == d {
        emit(edges);
        return;
    }
    // Weight already crossing the cut below floor u + 1 from earlier blocks.
    let crossing_prev: i64 = edges
        .iter()
        .filter(|&&(a, b, _)| a < u && b > u)
        .map(|&(_, _, w)| w)
        .sum();
    let cap = (d as i64 - u as i64 - 1) - crossing_prev;
    if cap < 0 {
        return;
    }
    let pairs: Vec<usize> = (u + 1..d).collect();
    fn choose(
        d: usize,
        u: usize,
        pairs: &[usize],
        pi: usize,
        cap_left: i64,
        budget: usize,
        edges: &mut Vec<(usize, usize, i64)>,
        emit: &mut dyn FnMut(&[(usize, usize, i64)]),
    ) {
        if pi == pairs.len() {
            // Block u finished: check legs of floors <= u and connectivity.
            let legs = legs_of(d, edges);
            if legs[..=u].iter().any(|&l| l < 0) {
                return;
            }
            if u + 1 < d && !prefix_connectable(d, u, edges) {
                return;
            }
            if u + 1 == d && !is_connected(d, edges) {
                return;
            }
            dfs_block(d, u + 1, budget, edges, &mut |e| emit(e));
            return;
        }
        let v = pairs[pi];
        // Weight multisets on the pair (u, v): non-increasing sequences. A
        // single edge into v is further capped by the cut just below v.
        let edge_cap = d as i64 - v as i64;
        fn weights(
            d: usize,
            u: usize,
            v: usize,
            pairs: &[usize],
            pi: usize,
            max_w: i64,
            cap_left: i64,
            budget: usize,
            edges: &mut Vec<(usize, usize, i64)>,
            emit: &mut dyn FnMut(&[(usize, usize, i64)]),
        ) {
            choose(d, u, pairs, pi + 1, cap_left, budget, edges, emit);
            if budget == 0 {
                return;
            }
            for w in 1..=max_w.min(cap_left) {
                edges.push((u, v, w));
                weights(d, u, v, pairs, pi, w, cap_left - w, budget - 1, edges, emit);
                edges.pop();
            }
        }
        weights(d, u, v, pairs, pi, edge_cap, cap_left, budget, edges, emit);
    }
    choose(d, u, &pairs, 0, cap, remaining, edges, emit);
}

/// Every connected component of the induced graph on floors `0..=u` must have
/// an edge crossing into the higher floors, otherwise it can never reconnect.
fn prefix_connectable(d: usize, u: usize, edges: &[(usize, usize, i64)]) -> bool {
    let mut dsu: Vec<usize> = (0..=u).collect();
    fn find(d: &mut Vec<usize>, x: usize) -> usize {
        if d[x] != x {
            let r = find(d, d[x]);
            d[x] = r;
        }
        d[x]
    }
    for &(a, b, _) in edges {
        if a <= u && b <= u {
            let (ra, rb) = (find(&mut dsu, a), find(&mut dsu, b));
            if ra != rb {
                dsu[ra] = rb;
            }
        }
    }
    let mut crossing = vec![false; u + 1];
    for &(a, b, _) in edges {
        if a <= u && b > u {
            let r = find(&mut dsu, a);
            crossing[r] = true;
        }
    }
    let _ = d;
    (0..=u).all(|v| {
        let r = find(&mut dsu, v);
        crossing[r]
    })
}

/// Aggregated curve counts of degree `d` and genus `g`.
#[derive(Debug, Clone)]
pub struct CurveCounts {
    pub degree: usize,
    pub genus: i64,
    pub diagrams: usize,
    /// Per-diagram (markings, complex multiplicity) pairs.
    pub per_diagram: Vec<(u128, i64)>,
    pub complex: i64,
    pub real: i64,
    pub quantum: LaurentQ,
}

pub fn count_curves(degree: usize, genus: i64) -> Result<CurveCounts> {
    use rayon::prelude::*;
    let diagrams = enumerate_floor_diagrams(degree, genus)?;
    // Marking counts and multiplicities are independent per diagram.
    let rows: Vec<(u128, i64, i64, LaurentQ)> = diagrams
        .par_iter()
        .map(|fd| {
            let nu = fd.markings();
            (
                nu,
                fd.complex_multiplicity(),
                fd.real_multiplicity(),
                fd.quantum_multiplicity().scale(nu as i64),
            )
        })
        .collect();
    let mut complex = 0i64;
    let mut real = 0i64;
    let mut quantum = LaurentQ::zero();
    let mut per_diagram = Vec::new();
    for (nu, mc, mr, q) in rows {
        per_diagram.push((nu, mc));
        complex += nu as i64 * mc;
        real += nu as i64 * mr;
        quantum = quantum.add(&q);
    }
    Ok(CurveCounts {
        degree,
        genus,
        diagrams: diagrams.len(),
        per_diagram,
        complex,
        real,
        quantum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_two() {
        let ds = enumerate_floor_diagrams(2, 0).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].edges, vec![(0, 1, 1)]);
        assert_eq!(ds[0].legs, vec![2, 0]);
        assert_eq!(ds[0].markings(), 1);
        assert_eq!(count_curves(2, 0).unwrap().complex, 1);
    }

    #[test]
    fn degree_three_genus_zero() {
        let ds = enumerate_floor_diagrams(3, 0).unwrap();
        assert_eq!(ds.len(), 3);
        let mut marks: Vec<(u128, i64)> = ds
            .iter()
            .map(|fd| (fd.markings(), fd.complex_multiplicity()))
            .collect();
        marks.sort();
        assert_eq!(marks, vec![(1, 4), (3, 1), (5, 1)]);
        let c = count_curves(3, 0).unwrap();
        assert_eq!(c.complex, 12);
        assert_eq!(c.real, 8);
    }

    #[test]
    fn degree_three_genus_one() {
        let c = count_curves(3, 1).unwrap();
        assert_eq!(c.diagrams, 1);
        assert_eq!(c.complex, 1);
        assert_eq!(c.quantum, LaurentQ::one());
    }

    #[test]
    fn degree_four() {
        assert_eq!(count_curves(4, 3).unwrap().complex, 1);
        assert_eq!(count_curves(4, 2).unwrap().complex, 27);
        assert_eq!(count_curves(4, 1).unwrap().complex, 225);
        let c0 = count_curves(4, 0).unwrap();
        assert_eq!(c0.complex, 620);
        assert_eq!(c0.real, 240);
    }

    #[test]
    fn quantum_specializes_to_complex_and_real() {
        for (d, g) in [(3usize, 0i64), (3, 1), (4, 2)] {
            let c = count_curves(d, g).unwrap();
            assert_eq!(c.quantum.at_one(), c.complex);
            assert_eq!(c.quantum.at_minus_one(), Some(c.real));
        }
    }

    #[test]
    fn bad_inputs() {
        assert!(enumerate_floor_diagrams(0, 0).is_err());
        assert!(enumerate_floor_diagrams(3, 2).is_err());
        assert!(FloorDiagram::new(3, vec![(1, 0, 1)]).is_err());
        assert!(FloorDiagram::new(3, vec![(0, 1, 1)]).is_err()); // disconnected
        assert!(FloorDiagram::new(2, vec![(0, 1, 5)]).is_err()); // negative legs
    }
}
