//! Dense integer matrix helpers: fraction-free determinants, ranks, Hermite and
//! Smith forms, exact rational inverses.
//!
//! Matrices are row-major `Vec<Vec<_>>`. All routines are exact; intermediate
//! values are carried in `i128`.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn transpose(m: &[Vec<i64>]) -> IntMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    (0..cols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

pub fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> IntMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mul_vec(m: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

/// Gram matrix `Bᵀ G B` of the columns of `basis` (given as a list of column vectors).
pub fn congruence(gram: &[Vec<i64>], columns: &[Vec<i64>]) -> IntMatrix {
    let images: Vec<Vec<i64>> = columns.iter().map(|c| mul_vec(gram, c)).collect();
    columns
        .iter()
        .map(|u| {
            images
                .iter()
                .map(|gv| u.iter().zip(gv).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect()
}

fn widen(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    m.iter()
        .map(|row| row.iter().map(|&v| i128::from(v)).collect())
        .collect()
}

/// Leading principal minors `D_1, ..., D_n` by Bareiss elimination without
/// pivoting. Stops early (returning the prefix computed so far, including the
/// offending value) at the first minor that is not strictly positive.
pub fn leading_minors_until_nonpositive(m: &[Vec<i64>]) -> Vec<i128> {
    let n = m.len();
    let mut a = widen(m);
    let mut minors = Vec::with_capacity(n);
    let mut prev = 1i128;
    for k in 0..n {
        let pivot = a[k][k];
        minors.push(pivot);
        if pivot <= 0 {
            return minors;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = pivot;
    }
    minors
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = widen(m);
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
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
    sign * a[n - 1][n - 1]
}

/// Rank over the rationals of the rows of `m`.
pub fn rank(m: &[Vec<i64>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut a = widen(m);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c] == 0 {
                continue;
            }
            let (x, y) = (a[r][c], a[i][c]);
            let g = x.gcd(&y);
            for j in 0..cols {
                a[i][j] = a[i][j] * (x / g) - a[r][j] * (y / g);
            }
            let content = a[i].iter().fold(0i128, |acc, v| acc.gcd(v));
            if content > 1 {
                a[i].iter_mut().for_each(|v| *v /= content);
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Result of a row-style Hermite reduction: `left * input = hermite` with
/// `left` unimodular and `left_inverse` its exact inverse.
#[derive(Debug, Clone)]
pub struct HermiteForm {
    pub hermite: IntMatrix,
    pub left: IntMatrix,
    pub left_inverse: IntMatrix,
    /// Number of nonzero rows (they come first).
    pub rank: usize,
}

struct Tracked {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
}

impl Tracked {
    fn swap(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in &mut self.u_inv {
            row.swap(i, j);
        }
    }

    /// row_i += k * row_j
    fn add(&mut self, i: usize, j: usize, k: i64) {
        if k == 0 {
            return;
        }
        for c in 0..self.a[i].len() {
            self.a[i][c] += k * self.a[j][c];
        }
        for c in 0..self.u[i].len() {
            self.u[i][c] += k * self.u[j][c];
        }
        for row in &mut self.u_inv {
            row[j] -= k * row[i];
        }
    }

    fn negate(&mut self, i: usize) {
        self.a[i].iter_mut().for_each(|v| *v = -*v);
        self.u[i].iter_mut().for_each(|v| *v = -*v);
        for row in &mut self.u_inv {
            row[i] = -row[i];
        }
    }
}

/// Row Hermite normal form: pivots positive, entries above each pivot reduced
/// into `[0, pivot)`, zero rows last.
pub fn hermite_rows(m: &[Vec<i64>]) -> HermiteForm {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut t = Tracked {
        a: m.to_vec(),
        u: identity(rows),
        u_inv: identity(rows),
    };
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let pivot = (r..rows)
                .filter(|&i| t.a[i][c] != 0)
                .min_by_key(|&i| (t.a[i][c].abs(), i));
            let Some(p) = pivot else { break };
            t.swap(r, p);
            let mut clean = true;
            for i in r + 1..rows {
                if t.a[i][c] != 0 {
                    let q = Integer::div_floor(&t.a[i][c], &t.a[r][c]);
                    t.add(i, r, -q);
                    if t.a[i][c] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if t.a[r][c] == 0 {
            continue;
        }
        if t.a[r][c] < 0 {
            t.negate(r);
        }
        for i in 0..r {
            let q = Integer::div_floor(&t.a[i][c], &t.a[r][c]);
            t.add(i, r, -q);
        }
        r += 1;
    }
    HermiteForm {
        hermite: t.a,
        left: t.u,
        left_inverse: t.u_inv,
        rank: r,
    }
}

/// Elementary divisors (nonzero Smith invariants) in nondecreasing order.
pub fn smith_invariants(m: &[Vec<i64>]) -> Vec<i128> {
    let mut a = widen(m);
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut done = true;
        for i in t + 1..rows {
            let q = a[i][t] / a[t][t];
            if q != 0 {
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
            }
            if a[i][t] != 0 {
                done = false;
            }
        }
        for j in t + 1..cols {
            let q = a[t][j] / a[t][t];
            if q != 0 {
                for row in a.iter_mut().skip(t) {
                    row[j] -= q * row[t];
                }
            }
            if a[t][j] != 0 {
                done = false;
            }
        }
        if !done {
            continue;
        }
        // pivot must divide the whole trailing block
        let pivot = a[t][t];
        if let Some(i) =
            (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % pivot != 0))
        {
            for j in t..cols {
                a[t][j] += a[i][j];
            }
            continue;
        }
        out.push(pivot.abs());
        t += 1;
    }
    out.sort_unstable();
    out
}

pub type Rat = Ratio<i128>;

/// Exact inverse of a nonsingular integer matrix.
pub fn inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|&v| Rat::from_integer(i128::from(v)))
                .chain((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }))
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let pivot = a[c][c];
        a[c].iter_mut().for_each(|v| *v /= pivot);
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                for j in 0..2 * n {
                    let delta = f * a[c][j];
                    a[r][j] -= delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Greatest common divisor of all entries (0 for the zero vector).
pub fn content(x: &[i64]) -> i64 {
    x.iter().fold(0i64, |acc, v| acc.gcd(v))
}

/// Coefficients `b` with `Σ x_i b_i = gcd(x)`, folded left to right by pairwise
/// extended gcd.
pub fn bezout(x: &[i64]) -> (i64, Vec<i64>) {
    let mut coeffs = vec![0i64; x.len()];
    let mut g = 0i64;
    for (i, &v) in x.iter().enumerate() {
        if v == 0 {
            continue;
        }
        if g == 0 {
            g = v.abs();
            coeffs[i] = v.signum();
            continue;
        }
        let e = g.extended_gcd(&v);
        // e.gcd = e.x * g + e.y * v
        let (s, t, ng) = if e.gcd < 0 {
            (-e.x, -e.y, -e.gcd)
        } else {
            (e.x, e.y, e.gcd)
        };
        for c in coeffs.iter_mut().take(i) {
            *c *= s;
        }
        coeffs[i] = t;
        g = ng;
    }
    (g, coeffs)
}
