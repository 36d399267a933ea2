//! Exact integer and rational linear algebra used by the polytope and fan layers.
//!
//! Everything here works on small dense matrices (rank ≤ 4 in practice). Integer
//! routines accumulate in `i128` and panic on overflow rather than wrap.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::Rational;

pub type IntMatrix = Vec<Vec<i64>>;

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// gcd of all entries; zero for the zero vector.
pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

/// Divides out the content. The zero vector is returned unchanged.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = content(v);
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_of_rational(v: &[Rational]) -> Vec<i64> {
    let lcm = v
        .iter()
        .fold(num_bigint::BigInt::from(1), |l, x| l.lcm(x.denom()));
    let ints: Vec<i64> = v
        .iter()
        .map(|x| {
            let scaled = x * Rational::from_integer(lcm.clone());
            i64::try_from(scaled.to_integer()).expect("direction entry exceeds i64")
        })
        .collect();
    primitive(&ints)
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j]).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).expect("determinant exceeds i64")
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    let rows: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    rational_rank(rows)
}

pub fn rational_rank(mut a: Vec<Vec<Rational>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let delta = &factor * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Solves a square system exactly; `None` when singular.
pub fn rational_solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let factor = &a[i][c] / &a[c][c];
                for j in c..n {
                    let delta = &factor * &a[c][j];
                    a[i][j] -= delta;
                }
                let delta = &factor * &b[c];
                b[i] -= delta;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Inverse of a unimodular integer matrix; `None` if `|det| != 1`.
pub fn unimodular_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let n = m.len();
    let d = det(m);
    if d.abs() != 1 {
        return None;
    }
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: IntMatrix = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let cof = det(&minor) * if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[i][j] = cof * d;
        }
    }
    Some(inv)
}

/// Column-style echelon form `A·U = L` with `U` unimodular.
struct ColumnEchelon {
    lower: IntMatrix,
    transform: IntMatrix,
    /// `(row, column)` of each pivot, columns `0..rank` in order.
    pivots: Vec<(usize, usize)>,
}

fn column_echelon(a: &IntMatrix, ncols: usize) -> ColumnEchelon {
    let mut l: Vec<Vec<i64>> = a.clone();
    let mut u = identity(ncols);
    let mut pivots = Vec::new();
    let mut col = 0;
    for row in 0..l.len() {
        if col == ncols {
            break;
        }
        // gcd-reduce the tail of this row into column `col`.
        loop {
            let nonzero: Vec<usize> = (col..ncols).filter(|&j| l[row][j] != 0).collect();
            if nonzero.len() <= 1 {
                if let Some(&j) = nonzero.first() {
                    swap_cols(&mut l, &mut u, col, j);
                }
                break;
            }
            let &j_min = nonzero
                .iter()
                .min_by_key(|&&j| l[row][j].abs())
                .expect("nonempty");
            swap_cols(&mut l, &mut u, col, j_min);
            for j in col + 1..ncols {
                let q = Integer::div_floor(&l[row][j], &l[row][col]);
                if q != 0 {
                    add_col(&mut l, &mut u, j, col, -q);
                }
            }
        }
        if l[row][col] != 0 {
            if l[row][col] < 0 {
                for r in l.iter_mut() {
                    r[col] = -r[col];
                }
                for r in u.iter_mut() {
                    r[col] = -r[col];
                }
            }
            pivots.push((row, col));
            col += 1;
        }
    }
    ColumnEchelon {
        lower: l,
        transform: u,
        pivots,
    }
}

fn swap_cols(l: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for r in l.iter_mut() {
        r.swap(a, b);
    }
    for r in u.iter_mut() {
        r.swap(a, b);
    }
}

/// column[target] += factor · column[source]
fn add_col(l: &mut IntMatrix, u: &mut IntMatrix, target: usize, source: usize, factor: i64) {
    for r in l.iter_mut() {
        r[target] += factor * r[source];
    }
    for r in u.iter_mut() {
        r[target] += factor * r[source];
    }
}

/// Integer solutions of `A x = b`: a particular solution and a basis of the
/// integer kernel, or `None` when no integer solution exists.
pub fn integer_solve(a: &IntMatrix, b: &[i64], ncols: usize) -> Option<(Vec<i64>, IntMatrix)> {
    let ech = column_echelon(a, ncols);
    let rank = ech.pivots.len();
    let mut y = vec![0i64; ncols];
    let mut next_pivot = 0;
    for (row, &rhs) in b.iter().enumerate() {
        let known: i64 = (0..next_pivot).map(|j| ech.lower[row][j] * y[j]).sum();
        let rest = rhs - known;
        if next_pivot < rank && ech.pivots[next_pivot].0 == row {
            let p = ech.lower[row][next_pivot];
            if rest % p != 0 {
                return None;
            }
            y[next_pivot] = rest / p;
            next_pivot += 1;
        } else if rest != 0 {
            return None;
        }
    }
    let x: Vec<i64> = (0..ncols)
        .map(|i| (0..ncols).map(|j| ech.transform[i][j] * y[j]).sum())
        .collect();
    let kernel: IntMatrix = (rank..ncols)
        .map(|j| (0..ncols).map(|i| ech.transform[i][j]).collect())
        .collect();
    Some((x, kernel))
}

/// Among all points of the affine lattice `base + span_Z(kernel)`, the one whose
/// vector of absolute values is lexicographically smallest (ties prefer
/// positive entries).
pub fn lexicographic_min(base: &[i64], kernel: &IntMatrix) -> Vec<i64> {
    lex_min_from(base.to_vec(), kernel.clone(), 0)
}

fn lex_min_from(base: Vec<i64>, kernel: IntMatrix, coord: usize) -> Vec<i64> {
    if coord == base.len() || kernel.is_empty() {
        return base;
    }
    let coeffs: Vec<i64> = kernel.iter().map(|k| k[coord]).collect();
    let g = content(&coeffs);
    if g == 0 {
        return lex_min_from(base, kernel, coord + 1);
    }
    let r = base[coord].mod_floor(&g);
    let mut targets = vec![r];
    if r != 0 {
        let other = r - g;
        match other.abs().cmp(&r) {
            std::cmp::Ordering::Less => targets = vec![other],
            std::cmp::Ordering::Equal => targets.push(other),
            std::cmp::Ordering::Greater => {}
        }
    }
    targets
        .into_iter()
        .map(|target| {
            // coefficients c with Σ c_j kernel_j[coord] = target - base[coord]
            let row = vec![coeffs.clone()];
            let (c0, sub) = integer_solve(&row, &[target - base[coord]], kernel.len())
                .expect("target lies in the residue class");
            let shifted: Vec<i64> = (0..base.len())
                .map(|i| base[i] + (0..kernel.len()).map(|j| c0[j] * kernel[j][i]).sum::<i64>())
                .collect();
            let new_kernel: IntMatrix = sub
                .iter()
                .map(|s| {
                    (0..base.len())
                        .map(|i| (0..kernel.len()).map(|j| s[j] * kernel[j][i]).sum())
                        .collect()
                })
                .collect();
            lex_min_from(shifted, new_kernel, coord + 1)
        })
        .min_by(|a, b| lex_abs_key(a).cmp(&lex_abs_key(b)))
        .expect("at least one target")
}

fn lex_abs_key(v: &[i64]) -> (Vec<i64>, Vec<i64>) {
    (v.iter().map(|x| x.abs()).collect(), v.iter().map(|x| -x).collect())
}

/// gcd of the maximal minors of a `k × n` matrix (k ≤ n); zero when rank < k.
pub fn maximal_minor_gcd(rows: &IntMatrix) -> i64 {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut g = 0;
    for cols in combinations(n, k) {
        let minor: IntMatrix = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect();
        g = gcd(g, det(&minor));
    }
    g.abs()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}
