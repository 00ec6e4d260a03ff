//! Exact enumeration of lattice vectors of bounded norm.
//!
//! This is a Fincke–Pohst recursion carried out entirely in integers. Bareiss
//! elimination of the Gram matrix yields, at stage `s`, the Schur complement of
//! the leading `s × s` block scaled by the leading minor `D_s`; for fixed
//! trailing coordinates, that scaled form evaluates `D_s` times the minimum of
//! the norm over the free leading coordinates. Each coordinate is therefore
//! bounded by an integer quadratic inequality, solved with an exact integer
//! square root.
//!
//! Coordinates are chosen in index order (`x_0` first) so that the canonical
//! half of each `±x` pair can be cut at the source: while every coordinate chosen
//! so far is zero, the next one is restricted to be nonnegative.

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::intmat::{self, Rat};
use crate::lattice::{Lattice, LatticeVector};

/// Canonical representatives (first nonzero coordinate positive) of all nonzero
/// vectors within the bound, sorted by `(norm, coordinates)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationResult {
    pub vectors: Vec<LatticeVector>,
    pub norms: Vec<i64>,
}

impl EnumerationResult {
    fn from_pairs(mut pairs: Vec<(i64, LatticeVector)>) -> Self {
        pairs.sort();
        let (norms, vectors) = pairs.into_iter().unzip();
        EnumerationResult { vectors, norms }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticeVector, i64)> {
        self.vectors.iter().zip(self.norms.iter().copied())
    }

    /// Keeps only norms `2k` with `k | det`, the only norms a screener can have.
    pub fn restrict_to_screener_norms(&self, det: i64) -> Self {
        let pairs = self
            .iter()
            .filter(|(_, n)| n % 2 == 0 && det % (n / 2) == 0)
            .map(|(v, n)| (n, v.clone()))
            .collect();
        Self::from_pairs(pairs)
    }
}

/// Precomputed scaled Schur complements for a lattice, coordinates reversed so
/// that the recursion's outermost level is original index 0.
struct Pruner {
    dim: usize,
    /// `stages[s][i][j]` for `i, j >= s` in reversed coordinates.
    stages: Vec<Vec<Vec<i128>>>,
    /// `minors[s] = D_s`, with `D_0 = 1`.
    minors: Vec<i128>,
}

impl Pruner {
    fn new(lattice: &Lattice) -> Self {
        let d = lattice.rank();
        let g = lattice.gram();
        let mut a: Vec<Vec<i128>> = (0..d)
            .map(|i| (0..d).map(|j| i128::from(g[d - 1 - i][d - 1 - j])).collect())
            .collect();
        let mut stages = vec![a.clone()];
        let mut minors = vec![1i128];
        for s in 0..d {
            let pivot = a[s][s];
            let prev = minors[s];
            minors.push(pivot);
            let mut next = a.clone();
            for i in s + 1..d {
                for j in s + 1..d {
                    next[i][j] = (pivot * a[i][j] - a[i][s] * a[s][j]) / prev;
                }
            }
            a = next;
            stages.push(a.clone());
        }
        Pruner {
            dim: d,
            stages,
            minors,
        }
    }

    /// Visits every nonzero canonical vector (in reversed coordinates) of norm
    /// at most `bound`.
    fn run(&self, bound: i64, visit: &mut dyn FnMut(&[i64])) {
        let mut x = vec![0i64; self.dim];
        if self.dim > 0 {
            self.level(self.dim - 1, i128::from(bound), true, &mut x, visit);
        }
    }

    fn level(
        &self,
        s: usize,
        bound: i128,
        all_zero: bool,
        x: &mut [i64],
        visit: &mut dyn FnMut(&[i64]),
    ) {
        let m = &self.stages[s];
        let d = self.dim;
        let a = m[s][s];
        let mut b = 0i128;
        let mut c = 0i128;
        for i in s + 1..d {
            let xi = i128::from(x[i]);
            b += m[s][i] * xi;
            for j in s + 1..d {
                c += m[i][j] * xi * i128::from(x[j]);
            }
        }
        let t = self.minors[s] * bound;
        let disc = b * b - a * (c - t);
        if disc < 0 {
            return;
        }
        let root = Roots::sqrt(&disc);
        let mut lo = Integer::div_floor(&(-b - root - 1), &a);
        let hi = Integer::div_ceil(&(-b + root + 1), &a);
        if all_zero {
            lo = lo.max(0);
        }
        for v in lo..=hi {
            if a * v * v + 2 * b * v + c > t {
                continue;
            }
            x[s] = v as i64;
            let zero_so_far = all_zero && v == 0;
            if s == 0 {
                if !zero_so_far {
                    visit(x);
                }
            } else {
                self.level(s - 1, bound, zero_so_far, x, visit);
            }
        }
        x[s] = 0;
    }
}

/// Calls `visit` once for each canonical nonzero vector with norm at most
/// `bound`, in no particular order.
pub fn for_each_up_to_norm(lattice: &Lattice, bound: i64, mut visit: impl FnMut(&LatticeVector, i64)) {
    if bound < 1 {
        return;
    }
    let d = lattice.rank();
    let pruner = Pruner::new(lattice);
    let mut v = LatticeVector::zero(d);
    pruner.run(bound, &mut |rev| {
        for (i, c) in rev.iter().enumerate() {
            v.0[d - 1 - i] = *c;
        }
        let n = lattice.norm(&v);
        debug_assert!(n <= bound && v.is_canonical());
        visit(&v, n);
    });
}

/// All canonical nonzero vectors `x` with `xᵀ G x <= bound`.
pub fn enumerate_up_to_norm(lattice: &Lattice, bound: i64) -> EnumerationResult {
    let mut pairs = Vec::new();
    for_each_up_to_norm(lattice, bound, |v, n| pairs.push((n, v.clone())));
    EnumerationResult::from_pairs(pairs)
}

/// All canonical vectors of norm exactly `n`.
pub fn enumerate_exact_norm(lattice: &Lattice, n: i64) -> EnumerationResult {
    let mut pairs = Vec::new();
    for_each_up_to_norm(lattice, n, |v, norm| {
        if norm == n {
            pairs.push((norm, v.clone()));
        }
    });
    EnumerationResult::from_pairs(pairs)
}

/// Minimum norm of a nonzero vector of the dual lattice `L°`, exactly.
///
/// For `w ∈ Z^d` the dual vector `G⁻¹w` has norm `wᵀG⁻¹w`. The Schur complement
/// of `G⁻¹` over its trailing indices is the inverse of the matching trailing
/// block `T` of `G`, so every pruning test reduces to the integer form
/// `adj(T)` compared against `det(T)` times the current best value.
pub fn dual_minimum(lattice: &Lattice) -> Rat {
    let d = lattice.rank();
    let g = lattice.gram();
    let mut adj: Vec<Vec<Vec<i128>>> = Vec::with_capacity(d);
    let mut dets: Vec<i128> = Vec::with_capacity(d);
    for s in 0..d {
        let block: Vec<Vec<i64>> = g[s..].iter().map(|r| r[s..].to_vec()).collect();
        let det = intmat::determinant(&block);
        let inv = intmat::inverse(&block).expect("principal blocks of a positive definite form are invertible");
        adj.push(
            inv.iter()
                .map(|row| row.iter().map(|r| (r * det).to_integer()).collect())
                .collect(),
        );
        dets.push(det);
    }
    let mut best = (0..d)
        .map(|i| Rat::new(adj[0][i][i], dets[0]))
        .min()
        .expect("lattice has positive rank");
    let mut w = vec![0i128; d];
    dual_level(&adj, &dets, d - 1, true, &mut w, &mut best);
    best
}

fn dual_level(adj: &[Vec<Vec<i128>>], dets: &[i128], s: usize, all_zero: bool, w: &mut [i128], best: &mut Rat) {
    let d = w.len();
    let m = &adj[s];
    let (num, den) = (*best.numer(), *best.denom());
    let a = den * m[0][0];
    let mut b = 0i128;
    let mut c = 0i128;
    for i in s + 1..d {
        b += m[0][i - s] * w[i];
        for j in s + 1..d {
            c += m[i - s][j - s] * w[i] * w[j];
        }
    }
    let (b0, c0) = (b, c);
    let (b, c) = (den * b, den * c);
    let t = dets[s] * num;
    let disc = b * b - a * (c - t);
    if disc < 0 {
        return;
    }
    let root = Roots::sqrt(&disc);
    let mut lo = Integer::div_floor(&(-b - root - 1), &a);
    let hi = Integer::div_ceil(&(-b + root + 1), &a);
    if all_zero {
        lo = lo.max(0);
    }
    for v in lo..=hi {
        // the bound may have shrunk inside an earlier sibling
        let (num, den) = (*best.numer(), *best.denom());
        let q = m[0][0] * v * v + 2 * b0 * v + c0;
        if den * q > dets[s] * num {
            continue;
        }
        w[s] = v;
        let zero_so_far = all_zero && v == 0;
        if s == 0 {
            if !zero_so_far {
                let value = Rat::new(q, dets[0]);
                if value < *best {
                    *best = value;
                }
            }
        } else {
            dual_level(adj, dets, s - 1, zero_so_far, w, best);
        }
    }
    w[s] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(g: Vec<Vec<i64>>) -> Lattice {
        Lattice::new(g).unwrap()
    }

    fn a2() -> Lattice {
        lat(vec![vec![2, -1], vec![-1, 2]])
    }

    #[test]
    fn rank_one() {
        let r = enumerate_up_to_norm(&lat(vec![vec![2]]), 8);
        assert_eq!(r.vectors, vec![LatticeVector::new([1]), LatticeVector::new([2])]);
        assert_eq!(r.norms, vec![2, 8]);
    }

    #[test]
    fn a2_shells() {
        assert_eq!(enumerate_up_to_norm(&a2(), 2).len(), 3);
        assert_eq!(enumerate_exact_norm(&a2(), 2).len(), 3);
        assert_eq!(enumerate_exact_norm(&a2(), 4).len(), 0);
        // frozen from a box search over [-4, 4]^2: 3 vectors of norm 2, 3 of norm 6
        assert_eq!(enumerate_up_to_norm(&a2(), 6).len(), 6);
        assert_eq!(enumerate_up_to_norm(&a2(), 6).norms, vec![2, 2, 2, 6, 6, 6]);
    }

    #[test]
    fn sorted_and_canonical() {
        let r = enumerate_up_to_norm(&lat(vec![vec![3, 1, 0], vec![1, 4, 2], vec![0, 2, 5]]), 20);
        for w in r.iter().collect::<Vec<_>>().windows(2) {
            assert!((w[0].1, w[0].0) < (w[1].1, w[1].0));
        }
        assert!(r.vectors.iter().all(LatticeVector::is_canonical));
    }

    #[test]
    fn dual_minima() {
        // A2 dual: min norm 2/3; Z: 1; [[2]]: 1/2; E8 is unimodular with min 2
        assert_eq!(dual_minimum(&a2()), Rat::new(2, 3));
        assert_eq!(dual_minimum(&lat(vec![vec![1]])), Rat::new(1, 1));
        assert_eq!(dual_minimum(&lat(vec![vec![2]])), Rat::new(1, 2));
        assert_eq!(dual_minimum(&lat(vec![vec![4, 0], vec![0, 3]])), Rat::new(1, 4));
    }

    #[test]
    fn screener_norm_filter() {
        let r = enumerate_up_to_norm(&a2(), 6).restrict_to_screener_norms(3);
        assert_eq!(r.norms, vec![2, 2, 2, 6, 6, 6]);
        let r = enumerate_up_to_norm(&a2(), 8).restrict_to_screener_norms(3);
        assert!(r.norms.iter().all(|&n| n == 2 || n == 6));
    }
}
