//! Matroids given by their lattice of flats, and their associated balanced
//! fans built from chains of proper flats.

use std::collections::BTreeSet;

use crate::error::{precondition, Result};
use crate::fan::{Cone, PolyhedralFan};

/// A matroid on the ground set {0, .., n}, described by its proper flats
/// (neither empty-closure nor the full set) with ranks.
#[derive(Debug, Clone)]
pub struct Matroid {
    pub n: usize,
    pub rank: usize,
    pub flats: Vec<(BTreeSet<usize>, usize)>,
}

impl Matroid {
    pub fn from_flats(n: usize, rank: usize, flats: Vec<(BTreeSet<usize>, usize)>) -> Result<Self> {
        let m = Matroid { n, rank, flats };
        m.validate()?;
        Ok(m)
    }

    /// The uniform matroid of the given rank on {0, .., n}: every set of size
    /// below the rank is a flat of rank equal to its size.
    pub fn uniform(n: usize, rank: usize) -> Result<Self> {
        if rank == 0 || rank > n + 1 {
            return Err(precondition("uniform matroid rank must lie in 1..=n+1"));
        }
        let ground: Vec<usize> = (0..=n).collect();
        let mut flats = Vec::new();
        for size in 1..rank {
            subsets_of_size(&ground, size, &mut |s| {
                flats.push((s.iter().copied().collect(), size));
            });
        }
        Ok(Matroid { n, rank, flats })
    }

    /// The graphic matroid of the complete graph K4 (the rank-3 braid
    /// matroid): ground set = 6 edges, flats = single edges, triangles and
    /// perfect matchings.
    pub fn braid() -> Matroid {
        // Edge labels: 0=ab 1=ac 2=ad 3=bc 4=bd 5=cd.
        let f = |s: &[usize], r: usize| (s.iter().copied().collect::<BTreeSet<_>>(), r);
        let mut flats: Vec<(BTreeSet<usize>, usize)> =
            (0..6).map(|e| f(&[e], 1)).collect();
        for tri in [[0usize, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]] {
            flats.push(f(&tri, 2));
        }
        for matching in [[0usize, 5], [1, 4], [2, 3]] {
            flats.push(f(&matching, 2));
        }
        Matroid { n: 5, rank: 3, flats }
    }

    fn validate(&self) -> Result<()> {
        let ground: BTreeSet<usize> = (0..=self.n).collect();
        if self.rank == 0 {
            return Err(precondition("matroid rank must be positive"));
        }
        let mut covered: BTreeSet<usize> = BTreeSet::new();
        for (s, r) in &self.flats {
            if s.is_empty() || *s == ground {
                return Err(precondition("flats must be proper and nonempty"));
            }
            if !s.is_subset(&ground) {
                return Err(precondition("flat outside the ground set"));
            }
            if *r == 0 || *r >= self.rank {
                return Err(precondition("proper flat rank must lie in 1..rank"));
            }
            covered.extend(s.iter());
        }
        // Loopless: every element lies in some rank-1 flat (equivalently in
        // some proper flat for rank >= 2).
        if self.rank >= 2 && covered != ground {
            return Err(precondition("matroid has loops: element in no proper flat"));
        }
        // Rank strictly increases along containment.
        for (s1, r1) in &self.flats {
            for (s2, r2) in &self.flats {
                if s1.is_subset(s2) && s1 != s2 && r1 >= r2 {
                    return Err(precondition("flat ranks must increase along containment"));
                }
            }
        }
        // Intersection-closed (together with the implicit empty and full
        // flats).
        for (s1, _) in &self.flats {
            for (s2, _) in &self.flats {
                let i: BTreeSet<usize> = s1.intersection(s2).copied().collect();
                if !i.is_empty()
                    && i != *s1
                    && i != *s2
                    && !self.flats.iter().any(|(s, _)| *s == i)
                {
                    return Err(precondition("flats are not intersection-closed"));
                }
            }
        }
        Ok(())
    }

    fn flats_of_rank(&self, r: usize) -> Vec<&BTreeSet<usize>> {
        self.flats.iter().filter(|(_, fr)| *fr == r).map(|(s, _)| s).collect()
    }
}

fn subsets_of_size(items: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::new(), f);
}

/// v_I = sum of v_i over I, with v_0 = (1,..,1) and v_i = -e_i in R^n.
pub fn flat_vector(n: usize, flat: &BTreeSet<usize>) -> Vec<i64> {
    let mut v = vec![0i64; n];
    for &i in flat {
        if i == 0 {
            for x in v.iter_mut() {
                *x += 1;
            }
        } else {
            v[i - 1] -= 1;
        }
    }
    v
}

/// The fan of a loopless matroid: one cone per chain of proper flats with
/// consecutive ranks starting at 1, spanned by the vectors v_I; all
/// top-dimensional cones carry weight 1.
pub fn matroid_fan(m: &Matroid) -> Result<PolyhedralFan> {
    m.validate()?;
    let mut cones: Vec<Cone> = Vec::new();
    // Chains F_1 < F_2 < ... with rank(F_i) = start + i.
    fn extend(
        m: &Matroid,
        chain: &mut Vec<BTreeSet<usize>>,
        next_rank: usize,
        cones: &mut Vec<Cone>,
    ) {
        if !chain.is_empty() {
            cones.push(Cone {
                generators: chain.iter().map(|f| flat_vector(m.n, f)).collect(),
                weight: 1,
            });
        }
        if next_rank >= m.rank {
            return;
        }
        for cand in m.flats_of_rank(next_rank) {
            if chain.last().map(|l| l.is_subset(cand)).unwrap_or(true) {
                chain.push((*cand).clone());
                extend(m, chain, next_rank + 1, cones);
                chain.pop();
            }
        }
    }
    for start in 1..m.rank {
        for f in m.flats_of_rank(start) {
            let mut chain = vec![f.clone()];
            extend(m, &mut chain, start + 1, &mut cones);
        }
    }
    Ok(PolyhedralFan { n: m.n, cones })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{fan_link, verify_balancing};

    #[test]
    fn uniform_rank_two_is_tropical_line() {
        let m = Matroid::uniform(2, 2).unwrap();
        let fan = matroid_fan(&m).unwrap();
        let mut rays = fan.rays();
        rays.sort();
        assert_eq!(rays, vec![vec![-1, 0], vec![0, -1], vec![1, 1]]);
        assert!(verify_balancing(&fan).unwrap());
    }

    #[test]
    fn uniform_matroids_balance() {
        for n in 2..=5 {
            for rank in 2..=n {
                let m = Matroid::uniform(n, rank).unwrap();
                let fan = matroid_fan(&m).unwrap();
                assert!(
                    verify_balancing(&fan).unwrap(),
                    "uniform({n},{rank}) unbalanced"
                );
            }
        }
    }

    #[test]
    fn uniform_rank_three_link_is_complete() {
        // U_{3,4}: 4 singleton flats and 6 pair flats; smoothing the degree-2
        // pair rays leaves the complete graph K4.
        let m = Matroid::uniform(3, 3).unwrap();
        let fan = matroid_fan(&m).unwrap();
        let link = fan_link(&fan).unwrap();
        assert_eq!(link.vertices.len(), 4);
        assert_eq!(link.edges.len(), 6);
        assert!(link.degrees().iter().all(|&d| d == 3));
        assert_eq!(link.girth(), Some(3));
    }

    #[test]
    fn braid_fan_is_petersen() {
        let m = Matroid::braid();
        let fan = matroid_fan(&m).unwrap();
        let rays = fan.rays();
        assert_eq!(rays.len(), 13);
        let two_cones = fan
            .cones
            .iter()
            .filter(|c| c.generators.len() == 2)
            .count();
        assert_eq!(two_cones, 18);
        assert!(verify_balancing(&fan).unwrap());
        let link = fan_link(&fan).unwrap();
        assert_eq!(link.vertices.len(), 10);
        assert_eq!(link.edges.len(), 15);
        assert!(link.degrees().iter().all(|&d| d == 3));
        assert_eq!(link.girth(), Some(5));
    }

    #[test]
    fn invalid_matroids_rejected() {
        // Rank out of range.
        assert!(Matroid::uniform(3, 0).is_err());
        // Not intersection-closed: two triangles meeting in a pair that is
        // not itself a flat.
        let f = |s: &[usize], r: usize| (s.iter().copied().collect::<BTreeSet<_>>(), r);
        let m = Matroid::from_flats(
            3,
            3,
            vec![f(&[0], 1), f(&[1], 1), f(&[2], 1), f(&[3], 1), f(&[0, 1, 2], 2), f(&[0, 1, 3], 2)],
        );
        assert!(m.is_err());
    }
}
