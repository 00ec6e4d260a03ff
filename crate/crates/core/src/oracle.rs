//! Brute-force cross-checks: seeded random lattices, a box search filtered by
//! the screener predicate, and random unimodular basis changes.

use std::time::{Duration, Instant};

use num_integer::Roots;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::intmat::{self, IntMatrix};
use crate::lattice::{Lattice, LatticeVector};
use crate::screeners::{all_screeners, is_screener};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symmetric matrix with diagonal in `1..=max_entry` and off-diagonal entries
/// in `-max_entry..=max_entry`, redrawn until positive definite.
pub fn random_lattice(rng: &mut impl Rng, rank: usize, max_entry: i64) -> Lattice {
    loop {
        let mut g = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            g[i][i] = rng.random_range(1..=max_entry);
            for j in i + 1..rank {
                let v = rng.random_range(-max_entry..=max_entry);
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        if let Ok(l) = Lattice::new(g) {
            return l;
        }
    }
}

/// Random unimodular matrix built from `steps` elementary row operations with
/// multipliers `±1`, plus a random permutation and sign pattern.
pub fn random_unimodular(rng: &mut impl Rng, dim: usize, steps: usize) -> IntMatrix {
    let mut u = intmat::identity(dim);
    if dim > 1 {
        for _ in 0..steps {
            let i = rng.random_range(0..dim);
            let mut j = rng.random_range(0..dim - 1);
            if j >= i {
                j += 1;
            }
            let c = if rng.random_bool(0.5) { 1 } else { -1 };
            for k in 0..dim {
                u[i][k] += c * u[j][k];
            }
        }
    }
    for i in (1..dim).rev() {
        u.swap(i, rng.random_range(0..=i));
    }
    for row in u.iter_mut() {
        if rng.random_bool(0.5) {
            row.iter_mut().for_each(|v| *v = -*v);
        }
    }
    u
}

/// The lattice in the basis given by the rows of `u`.
pub fn change_basis(lattice: &Lattice, u: &[Vec<i64>]) -> Lattice {
    Lattice::new(intmat::congruence(lattice.gram(), u)).expect("a unimodular change keeps the form positive definite")
}

/// Coordinates in the original basis of a vector given in the basis `rows(u)`.
pub fn to_original(u: &[Vec<i64>], y: &LatticeVector) -> LatticeVector {
    LatticeVector::new(intmat::mul_vec(&intmat::transpose(u), &y.0))
}

/// Canonical screeners found by scanning the box `|x_i| ≤ √(2·det·(G⁻¹)_ii)`,
/// which contains every vector of norm at most `2·det`, sorted by
/// `(norm, coordinates)`.
pub fn box_screeners(lattice: &Lattice) -> Vec<LatticeVector> {
    let d = lattice.rank();
    let det = i128::from(lattice.determinant());
    let bound = 2 * lattice.determinant();
    let inv = intmat::inverse(lattice.gram()).expect("positive definite");
    let radius: Vec<i64> = (0..d)
        .map(|i| {
            let adj = (inv[i][i] * det).to_integer();
            Roots::sqrt(&(2 * adj)) as i64
        })
        .collect();
    let mut found = Vec::new();
    let mut x: Vec<i64> = radius.iter().map(|r| -r).collect();
    loop {
        let v = LatticeVector::new(x.clone());
        if !v.is_zero() && v.is_canonical() {
            let n = lattice.norm(&v);
            if n <= bound && is_screener(lattice, &v).unwrap_or(false) {
                found.push((n, v));
            }
        }
        let mut k = 0;
        while k < d && x[k] == radius[k] {
            x[k] = -radius[k];
            k += 1;
        }
        if k == d {
            break;
        }
        x[k] += 1;
    }
    found.sort();
    found.into_iter().map(|(_, v)| v).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCase {
    pub index: usize,
    pub gram: IntMatrix,
    pub oracle_count: usize,
    pub library_count: usize,
    /// Found by the box search only.
    pub missing: Vec<LatticeVector>,
    /// Found by the library only.
    pub extra: Vec<LatticeVector>,
}

impl OracleCase {
    pub fn agrees(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub seed: u64,
    pub max_rank: usize,
    pub max_entry: i64,
    pub cases: Vec<OracleCase>,
    pub discrepancies: usize,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.discrepancies == 0
    }
}

/// Compares `all_screeners` with the box search on `cases` random lattices of
/// rank `1..=max_rank`. Returns the wall time of each case alongside, kept
/// out of the report so that it stays reproducible.
pub fn oracle_check(seed: u64, cases: usize, max_rank: usize, max_entry: i64) -> (OracleCheck, Vec<Duration>) {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(cases);
    let mut times = Vec::with_capacity(cases);
    for index in 0..cases {
        let rank = rng.random_range(1..=max_rank.max(1));
        let lattice = random_lattice(&mut rng, rank, max_entry.max(1));
        let start = Instant::now();
        let oracle = box_screeners(&lattice);
        let library = all_screeners(&lattice).screeners;
        times.push(start.elapsed());
        let missing = oracle.iter().filter(|v| !library.contains(v)).cloned().collect();
        let extra = library.iter().filter(|v| !oracle.contains(v)).cloned().collect();
        out.push(OracleCase {
            index,
            gram: lattice.gram().clone(),
            oracle_count: oracle.len(),
            library_count: library.len(),
            missing,
            extra,
        });
    }
    let discrepancies = out.iter().filter(|c| !c.agrees()).count();
    (
        OracleCheck {
            seed,
            max_rank,
            max_entry,
            cases: out,
            discrepancies,
        },
        times,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_matches_library_on_a2() {
        let a2 = Lattice::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(box_screeners(&a2), all_screeners(&a2).screeners);
    }

    #[test]
    fn unimodular_is_unimodular() {
        let mut r = rng(1);
        for d in 1..6 {
            let u = random_unimodular(&mut r, d, 3 * d);
            assert_eq!(intmat::determinant(&u).abs(), 1);
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let (a, _) = oracle_check(7, 20, 3, 6);
        let (b, _) = oracle_check(7, 20, 3, 6);
        assert_eq!(a, b);
        assert!(a.passed(), "{:?}", a.cases.iter().find(|c| !c.agrees()));
    }
}
