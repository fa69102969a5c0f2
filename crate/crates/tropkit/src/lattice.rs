//! Exact integer lattice computations: Smith normal form, saturations,
//! rational kernels and membership tests. Sizes are tiny (ambient dimension
//! <= 8), so simple fraction-free algorithms over i128 suffice.

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Mat = Vec<Vec<i128>>;

fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// Smith normal form: returns (u, s, rank) with a = u * s * v for some
/// unimodular v (not returned); u is n x n unimodular, s is n x m diagonal.
///
/// Whenever a row operation R is applied to s (s <- R s), u absorbs its
/// inverse as a column operation (u <- u R^{-1}), keeping a = u * s * v.
pub fn smith(a: &Mat) -> (Mat, Mat, usize) {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut s = a.clone();
    let mut u = identity(n);
    let swap_rows = |s: &mut Mat, u: &mut Mat, i: usize, j: usize| {
        s.swap(i, j);
        for row in u.iter_mut() {
            row.swap(i, j);
        }
    };
    // s: row_i -= q * row_j  =>  u: col_j += q * col_i.
    let sub_row = |s: &mut Mat, u: &mut Mat, i: usize, j: usize, q: i128, m: usize| {
        for c in 0..m {
            s[i][c] -= q * s[j][c];
        }
        for row in u.iter_mut() {
            row[j] += q * row[i];
        }
    };
    let mut t = 0usize;
    while t < n.min(m) {
        // Pivot of smallest nonzero absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..m {
                if s[i][j] != 0
                    && pivot
                        .map(|(pi, pj)| s[i][j].abs() < s[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut s, &mut u, t, pi);
        for row in s.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..n {
                if s[i][t] != 0 {
                    let q = s[i][t].div_euclid(s[t][t]);
                    sub_row(&mut s, &mut u, i, t, q, m);
                    if s[i][t] != 0 {
                        swap_rows(&mut s, &mut u, t, i);
                        clean = false;
                    }
                }
            }
            for j in t + 1..m {
                if s[t][j] != 0 {
                    let q = s[t][j].div_euclid(s[t][t]);
                    for i in 0..n {
                        s[i][j] -= q * s[i][t];
                    }
                    if s[t][j] != 0 {
                        for row in s.iter_mut() {
                            row.swap(t, j);
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        t += 1;
    }
    let rank = (0..n.min(m)).filter(|&i| s[i][i] != 0).count();
    (u, s, rank)
}

/// A basis of the saturation of the column span: span_Q(cols) ∩ Z^n.
/// Returns column vectors.
pub fn saturation_basis(cols: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if cols.is_empty() {
        return Vec::new();
    }
    let a: Mat = (0..n)
        .map(|i| cols.iter().map(|c| c[i] as i128).collect())
        .collect();
    let (u, _s, rank) = smith(&a);
    // a = u * s * v: the column span over Q is spanned by the first `rank`
    // columns of u, which form a basis of a saturated lattice.
    (0..rank)
        .map(|j| (0..n).map(|i| u[i][j] as i64).collect())
        .collect()
}

/// Rational rank of a set of integer column vectors.
pub fn rank_of(cols: &[Vec<i64>], n: usize) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let a: Mat = (0..n)
        .map(|i| cols.iter().map(|c| c[i] as i128).collect())
        .collect();
    smith(&a).2
}

pub fn in_qspan(cols: &[Vec<i64>], x: &[i64]) -> bool {
    let n = x.len();
    let r = rank_of(cols, n);
    let mut ext: Vec<Vec<i64>> = cols.to_vec();
    ext.push(x.to_vec());
    rank_of(&ext, n) == r
}

fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Solves B y = x over Q for a full-column-rank integer matrix B (columns
/// `basis`); returns None if inconsistent.
pub fn solve_rational(basis: &[Vec<i64>], x: &[i64]) -> Option<Vec<BigRational>> {
    let n = x.len();
    let m = basis.len();
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = basis.iter().map(|c| big(c[i])).collect();
            row.push(big(x[i]));
            row
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut r = 0usize;
    for c in 0..m {
        let Some(p) = (r..n).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(r, p);
        let inv = aug[r][c].clone();
        for j in c..=m {
            let v = &aug[r][j] / &inv;
            aug[r][j] = v;
        }
        for i in 0..n {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=m {
                    let v = &aug[i][j] - &f * &aug[r][j];
                    aug[i][j] = v;
                }
            }
        }
        pivot_rows.push((r, c));
        r += 1;
    }
    // Inconsistency: a zero row with nonzero rhs.
    for i in r..n {
        if !aug[i][m].is_zero() {
            return None;
        }
    }
    let mut y = vec![BigRational::zero(); m];
    for &(row, col) in &pivot_rows {
        y[col] = aug[row][m].clone();
    }
    Some(y)
}

/// Primitive integer functional on Z^f vanishing on the given coordinate
/// vectors (which must have rank f - 1); unique up to sign.
pub fn primitive_normal_functional(vecs: &[Vec<i64>], f: usize) -> Option<Vec<i64>> {
    // Kernel of the (vecs x f) matrix acting on functionals: phi . v = 0.
    let rows: Vec<Vec<BigRational>> = vecs
        .iter()
        .map(|v| v.iter().map(|&x| big(x)).collect())
        .collect();
    let mut aug = rows;
    let n = aug.len();
    let mut r = 0usize;
    let mut pivots = Vec::new();
    for c in 0..f {
        let Some(p) = (r..n).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(r, p);
        let inv = aug[r][c].clone();
        for j in c..f {
            let v = &aug[r][j] / &inv;
            aug[r][j] = v;
        }
        for i in 0..n {
            if i != r && !aug[i][c].is_zero() {
                let fct = aug[i][c].clone();
                for j in c..f {
                    let v = &aug[i][j] - &fct * &aug[r][j];
                    aug[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if r + 1 != f {
        return None;
    }
    let free: usize = (0..f).find(|c| !pivots.contains(c))?;
    let mut phi = vec![BigRational::zero(); f];
    phi[free] = BigRational::one();
    for (row, &col) in pivots.iter().enumerate() {
        phi[col] = -aug[row][free].clone();
    }
    // Clear denominators and divide by gcd.
    let mut denom = BigInt::one();
    for v in &phi {
        denom = num::integer::lcm(denom, v.denom().clone());
    }
    let ints: Vec<BigInt> = phi.iter().map(|v| (v * big_i(&denom)).to_integer()).collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = num::integer::gcd(g, v.abs());
    }
    if g.is_zero() {
        return None;
    }
    Some(
        ints.iter()
            .map(|v| {
                let q = v / &g;
                i64::try_from(&q).expect("small lattice entries")
            })
            .collect(),
    )
}

fn big_i(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Integer vector y with phi . y = 1 (phi primitive).
pub fn solve_unimodular(phi: &[i64]) -> Option<Vec<i64>> {
    // Iterated extended gcd.
    let mut y = vec![0i64; phi.len()];
    let mut g: i64 = 0;
    let mut coeffs: Vec<i64> = vec![0; phi.len()];
    for (i, &p) in phi.iter().enumerate() {
        let (ng, a, b) = ext_gcd(g, p);
        for c in coeffs.iter_mut() {
            *c *= a;
        }
        coeffs[i] = b;
        g = ng;
    }
    if g.abs() != 1 {
        return None;
    }
    for (i, c) in coeffs.iter().enumerate() {
        y[i] = c * g.signum();
    }
    Some(y)
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return (a, 1, 0);
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b.abs()) * 1);
    // a = q b + r with r = a - q b, q = div_euclid
    let q = a.div_euclid(b.abs()) * b.signum();
    (g, y, x - q * y)
}
