//! Lattices presented by an integer Gram matrix, lattice vectors, rational
//! vectors of `L ⊗ Q`, dual-lattice membership and basis manipulations.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::intmat::{self, IntMatrix};

/// Integer coordinates with respect to the lattice's implicit basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        LatticeVector(coords.into())
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![0; dim])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    /// gcd of the coordinates.
    pub fn content(&self) -> i64 {
        intmat::content(&self.0)
    }

    /// Representative of `{x, -x}` whose first nonzero coordinate is positive.
    pub fn canonical(&self) -> Self {
        match self.0.iter().find(|&&c| c != 0) {
            Some(&c) if c < 0 => -self,
            _ => self.clone(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.0.iter().find(|&&c| c != 0).is_none_or(|&c| c > 0)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

/// Rational coordinates with respect to the lattice basis (not the dual basis),
/// so that `<x, v> = xᵀ G v` for lattice vectors `x`. Entries are kept in lowest
/// terms with positive denominators, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualVector(Vec<Rational64>);

impl DualVector {
    pub fn new(coords: Vec<Rational64>) -> Self {
        DualVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        DualVector(vec![Rational64::zero(); dim])
    }

    pub fn from_lattice(x: &LatticeVector, denominator: i64) -> Self {
        DualVector(
            x.0.iter()
                .map(|&c| Rational64::new(c, denominator))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[Rational64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: Rational64) -> Self {
        DualVector(self.0.iter().map(|c| c * k).collect())
    }
}

pub fn format_rational(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational64> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Rational64::new(n, d))
        }
        None => s.trim().parse().ok().map(Rational64::from_integer),
    }
}

/// Serializes a rational as `"n/d"`, or `"n"` when integral.
pub fn serialize_rational<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_rational(r))
}

impl fmt::Display for DualVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for DualVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DualVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(deserializer)?;
        parts
            .iter()
            .map(|p| {
                parse_rational(p)
                    .ok_or_else(|| serde::de::Error::custom(format!("bad rational {p:?}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(DualVector)
    }
}

/// Elementary divisors of the Gram matrix, i.e. the invariant factors of `L°/L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientInvariants {
    pub divisors: Vec<i64>,
    pub order: i64,
}

/// `L = Za ⊕ L'` with the basis witnessing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalSplit {
    pub line: Lattice,
    pub complement: Lattice,
    /// Columns: `a` followed by the basis of `L'`, in the original coordinates.
    /// The matrix is unimodular.
    pub basis: IntMatrix,
}

/// True iff every leading principal minor is strictly positive.
pub fn is_positive_definite(gram: &[Vec<i64>]) -> Result<bool> {
    check_symmetric(gram)?;
    Ok(intmat::leading_minors_until_nonpositive(gram)
        .last()
        .is_none_or(|&m| m > 0))
}

fn check_symmetric(gram: &[Vec<i64>]) -> Result<()> {
    let n = gram.len();
    for (i, row) in gram.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                row: i,
                len: row.len(),
                expected: n,
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if gram[i][j] != gram[j][i] {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// A positive definite integral lattice given by its Gram matrix. Positive
/// definiteness is verified once, at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    gram: IntMatrix,
    det: i64,
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.gram.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let gram = IntMatrix::deserialize(deserializer)?;
        Lattice::new(gram).map_err(serde::de::Error::custom)
    }
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if gram.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        check_symmetric(&gram)?;
        let minors = intmat::leading_minors_until_nonpositive(&gram);
        if let Some(&last) = minors.last() {
            if last <= 0 {
                return Err(Error::NotPositiveDefinite {
                    index: minors.len(),
                    value: last,
                });
            }
        }
        let det = i64::try_from(*minors.last().unwrap()).map_err(|_| Error::Overflow)?;
        Ok(Lattice { gram, det })
    }

    /// Orthogonal sum of rank-one lattices with the given norms.
    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        let n = entries.len();
        Lattice::new(
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { entries[i] } else { 0 }).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn determinant(&self) -> i64 {
        self.det
    }

    /// Gram matrix multiplied by `p`.
    pub fn scaled(&self, p: i64) -> Result<Lattice> {
        if p < 1 {
            return Err(Error::InvalidScale);
        }
        Lattice::new(
            self.gram
                .iter()
                .map(|row| row.iter().map(|v| v * p).collect())
                .collect(),
        )
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: dim,
            });
        }
        Ok(())
    }

    /// `G x`: the pairings `<basis_j, x>`.
    pub fn apply(&self, x: &LatticeVector) -> Vec<i64> {
        intmat::mul_vec(&self.gram, &x.0)
    }

    pub fn inner(&self, x: &LatticeVector, y: &LatticeVector) -> Result<i64> {
        self.check_dim(x.dim())?;
        self.check_dim(y.dim())?;
        Ok(self.inner_unchecked(x, y))
    }

    pub fn inner_unchecked(&self, x: &LatticeVector, y: &LatticeVector) -> i64 {
        self.apply(y).iter().zip(&x.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self, x: &LatticeVector) -> i64 {
        self.inner_unchecked(x, x)
    }

    /// `<x, x> mod 2`.
    pub fn parity(&self, x: &LatticeVector) -> u8 {
        self.norm(x).rem_euclid(2) as u8
    }

    /// Whether `x / k` lies in the dual lattice.
    pub fn in_dual(&self, x: &LatticeVector, k: i64) -> Result<bool> {
        if k <= 0 {
            return Err(Error::ZeroModulus);
        }
        self.check_dim(x.dim())?;
        Ok(self.apply(x).iter().all(|v| v % k == 0))
    }

    /// `G v` for a rational vector.
    pub fn apply_dual(&self, v: &DualVector) -> Vec<Rational64> {
        self.gram
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&v.0)
                    .map(|(&g, c)| c * g)
                    .fold(Rational64::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn pair(&self, x: &LatticeVector, v: &DualVector) -> Rational64 {
        self.apply_dual(v)
            .iter()
            .zip(&x.0)
            .map(|(w, &c)| w * c)
            .fold(Rational64::zero(), |a, b| a + b)
    }

    pub fn dual_norm(&self, v: &DualVector) -> Rational64 {
        self.apply_dual(v)
            .iter()
            .zip(&v.0)
            .map(|(w, c)| w * c)
            .fold(Rational64::zero(), |a, b| a + b)
    }

    /// Membership in the extended dual: `<α, v> ∈ Z` for even `α` and
    /// `<α, v> ∈ ½Z` for odd `α`, over all of `L`.
    ///
    /// The pairing character `α ↦ 2<α, v> mod 2` must vanish on the even
    /// sublattice, so it is either zero (`v ∈ L°`) or the parity character itself.
    pub fn in_extended_dual(&self, v: &DualVector) -> Result<bool> {
        self.check_dim(v.dim())?;
        let w = self.apply_dual(v);
        if w.iter().all(|c| c.is_integer()) {
            return Ok(true);
        }
        let two = Rational64::from_integer(2);
        Ok(w.iter().enumerate().all(|(j, c)| {
            let doubled = c * two;
            doubled.is_integer() && doubled.to_integer().rem_euclid(2) == self.gram[j][j].rem_euclid(2)
        }))
    }

    /// Whether `x ∈ nL`, i.e. every coordinate is divisible by `n`.
    pub fn in_scaled_lattice(&self, x: &LatticeVector, n: i64) -> Result<bool> {
        if n <= 0 {
            return Err(Error::ZeroModulus);
        }
        self.check_dim(x.dim())?;
        Ok(x.0.iter().all(|c| c % n == 0))
    }

    /// A unimodular matrix whose first column is the primitive vector `x`.
    ///
    /// Built from 2×2 extended-gcd column operations pairing coordinate 0 with
    /// coordinates 1, 2, ... in order.
    pub fn extend_to_basis(&self, x: &LatticeVector) -> Result<IntMatrix> {
        self.check_dim(x.dim())?;
        extend_to_basis(x)
    }

    /// Splits off `Za` orthogonally; requires `<a, L> ⊂ <a, a>Z`.
    pub fn orthogonal_split(&self, a: &LatticeVector) -> Result<OrthogonalSplit> {
        self.check_dim(a.dim())?;
        if a.is_zero() {
            return Err(Error::ZeroVector);
        }
        let norm = self.norm(a);
        let pairings = self.apply(a);
        if let Some((index, &value)) = pairings.iter().enumerate().find(|(_, v)| *v % norm != 0) {
            return Err(Error::NoOrthogonalSplit { index, value, norm });
        }
        let p = extend_to_basis(a)?;
        let columns = intmat::transpose(&p);
        let mut basis = vec![a.clone()];
        for col in columns.iter().skip(1) {
            let v = LatticeVector(col.clone());
            let coeff = self.inner_unchecked(a, &v) / norm;
            basis.push(&v - &a.scale(coeff));
        }
        let complement: Vec<LatticeVector> = basis[1..].to_vec();
        let line = Lattice::new(vec![vec![norm]])?;
        let complement = if complement.is_empty() {
            Lattice {
                gram: Vec::new(),
                det: 1,
            }
        } else {
            self.sublattice(&complement)?
        };
        let cols: Vec<Vec<i64>> = basis.into_iter().map(|v| v.0).collect();
        Ok(OrthogonalSplit {
            line,
            complement,
            basis: intmat::transpose(&cols),
        })
    }

    pub fn quotient_invariants(&self) -> QuotientInvariants {
        let divisors: Vec<i64> = intmat::smith_invariants(&self.gram)
            .into_iter()
            .map(|d| d as i64)
            .collect();
        let order = divisors.iter().product();
        QuotientInvariants { divisors, order }
    }

    /// The lattice spanned by `vs` with Gram matrix `(<v_i, v_j>)`.
    pub fn sublattice(&self, vs: &[LatticeVector]) -> Result<Lattice> {
        if vs.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        for v in vs {
            self.check_dim(v.dim())?;
        }
        let rows: Vec<Vec<i64>> = vs.iter().map(|v| v.0.clone()).collect();
        if intmat::rank(&rows) != vs.len() {
            return Err(Error::LinearlyDependent);
        }
        Lattice::new(intmat::congruence(&self.gram, &rows))
    }

    /// Exact inverse Gram matrix; its columns are the dual basis in lattice
    /// coordinates.
    pub fn inverse_gram(&self) -> Vec<Vec<Rational64>> {
        intmat::inverse(&self.gram)
            .expect("positive definite Gram matrix is invertible")
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|r| Rational64::new(*r.numer() as i64, *r.denom() as i64))
                    .collect()
            })
            .collect()
    }

    /// Solves `G v = b` for the dual-basis combination `Σ b_j α_j°`.
    pub fn dual_combination(&self, b: &[i64]) -> DualVector {
        let inv = self.inverse_gram();
        DualVector(
            inv.iter()
                .map(|row| {
                    row.iter()
                        .zip(b)
                        .map(|(r, &c)| r * c)
                        .fold(Rational64::zero(), |a, x| a + x)
                })
                .collect(),
        )
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .gram
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

pub fn extend_to_basis(x: &LatticeVector) -> Result<IntMatrix> {
    let d = x.dim();
    if d == 0 {
        return Err(Error::EmptyMatrix);
    }
    let g = x.content();
    if g != 1 {
        return Err(Error::NotPrimitive { gcd: g });
    }
    // `m` accumulates R⁻¹ where R reduces x to e_0 by row operations.
    let mut m = intmat::identity(d);
    let mut lead = x.0[0];
    for j in 1..d {
        let xj = x.0[j];
        if xj == 0 {
            continue;
        }
        let (g, st) = intmat::bezout(&[lead, xj]);
        let (s, t) = (st[0], st[1]);
        let (a, b) = (lead / g, xj / g);
        // R_j = [[s, t], [-b, a]] on coordinates (0, j); R_j⁻¹ = [[a, -t], [b, s]].
        for row in m.iter_mut() {
            let (c0, cj) = (row[0], row[j]);
            row[0] = c0 * a + cj * b;
            row[j] = -c0 * t + cj * s;
        }
        lead = g;
    }
    if lead < 0 {
        for row in m.iter_mut() {
            row[0] = -row[0];
        }
        lead = -lead;
    }
    debug_assert_eq!(lead, 1);
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Lattice {
        Lattice::new(vec![vec![2, -1], vec![-1, 2]]).unwrap()
    }

    fn a3() -> Lattice {
        Lattice::new(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]).unwrap()
    }

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c.to_vec())
    }

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn inner_products() {
        assert_eq!(a2().inner(&v(&[1, 0]), &v(&[0, 1])).unwrap(), -1);
        assert_eq!(a2().inner(&v(&[0, 0]), &v(&[5, -3])).unwrap(), 0);
        assert_eq!(a3().inner(&v(&[1, 0, 1]), &v(&[1, 0, 1])).unwrap(), 4);
        assert!(matches!(
            a2().inner(&v(&[1, 0, 0]), &v(&[1, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn parity_grading() {
        let l = Lattice::diagonal(&[4, 3]).unwrap();
        assert_eq!(a2().parity(&v(&[1, 0])), 0);
        assert_eq!(l.parity(&v(&[0, 1])), 1);
        assert_eq!(l.parity(&v(&[1, 1])), 1);
    }

    #[test]
    fn positive_definiteness() {
        assert!(is_positive_definite(&[vec![2, -1], vec![-1, 2]]).unwrap());
        assert!(!is_positive_definite(&[vec![1, 2], vec![2, 1]]).unwrap());
        assert!(is_positive_definite(&[vec![2, -1], vec![-1, 1]]).unwrap());
        assert!(matches!(
            is_positive_definite(&[vec![1, 2], vec![3, 1]]),
            Err(Error::NotSymmetric { .. })
        ));
        assert_eq!(
            Lattice::new(vec![vec![1, 2], vec![2, 1]]).unwrap_err(),
            Error::NotPositiveDefinite { index: 2, value: -3 }
        );
    }

    #[test]
    fn dual_membership() {
        assert!(a2().in_dual(&v(&[2, 1]), 3).unwrap());
        assert!(a2().in_dual(&v(&[7, -4]), 1).unwrap());
        assert!(!a2().in_dual(&v(&[1, 1]), 3).unwrap());
        assert_eq!(a2().in_dual(&v(&[1, 1]), 0), Err(Error::ZeroModulus));
    }

    #[test]
    fn extended_dual_membership() {
        assert!(a2()
            .in_extended_dual(&DualVector::new(vec![q(2, 3), q(1, 3)]))
            .unwrap());
        let z = Lattice::new(vec![vec![1]]).unwrap();
        assert!(z.in_extended_dual(&DualVector::new(vec![q(1, 2)])).unwrap());
        assert!(!a2()
            .in_extended_dual(&DualVector::new(vec![q(1, 2), q(0, 1)]))
            .unwrap());
    }

    #[test]
    fn extended_dual_is_not_a_basiswise_test() {
        // basis vectors odd with odd pairing: e1 + e2 is even, and v pairs to
        // 1/2 with e1 and 1 with e2, so <e1 + e2, v> = 3/2 is not integral.
        let l = Lattice::new(vec![vec![1, 1], vec![1, 3]]).unwrap();
        let target = [q(1, 2), q(1, 1)];
        let inv = l.inverse_gram();
        let v = DualVector::new(
            (0..2)
                .map(|i| inv[i][0] * target[0] + inv[i][1] * target[1])
                .collect(),
        );
        assert_eq!(l.apply_dual(&v), target.to_vec());
        assert!(!l.in_extended_dual(&v).unwrap());
    }

    #[test]
    fn scaled_membership() {
        let l = a2();
        assert!(l.in_scaled_lattice(&v(&[2, -2]), 2).unwrap());
        assert!(!l.in_scaled_lattice(&v(&[1, -1]), 2).unwrap());
        assert!(l.in_scaled_lattice(&v(&[3, 5]), 1).unwrap());
    }

    #[test]
    fn basis_extension() {
        let l3 = a3();
        assert_eq!(l3.extend_to_basis(&v(&[1, 0, 0])).unwrap(), intmat::identity(3));
        let m = a2().extend_to_basis(&v(&[2, 1])).unwrap();
        assert_eq!((m[0][0], m[1][0]), (2, 1));
        assert_eq!(intmat::determinant(&m).abs(), 1);
        assert_eq!(
            a2().extend_to_basis(&v(&[2, 4])),
            Err(Error::NotPrimitive { gcd: 2 })
        );
        let m = a2().extend_to_basis(&v(&[0, -1])).unwrap();
        assert_eq!((m[0][0], m[1][0]), (0, -1));
        assert_eq!(intmat::determinant(&m).abs(), 1);
    }

    #[test]
    fn orthogonal_splits() {
        let l = Lattice::diagonal(&[4, 3]).unwrap();
        let s = l.orthogonal_split(&v(&[1, 0])).unwrap();
        assert_eq!(s.line.gram(), &vec![vec![4]]);
        assert_eq!(s.complement.gram(), &vec![vec![3]]);

        let l = Lattice::new(vec![vec![2, 2], vec![2, 6]]).unwrap();
        let s = l.orthogonal_split(&v(&[1, 0])).unwrap();
        assert_eq!(s.line.gram(), &vec![vec![2]]);
        assert_eq!(s.complement.gram(), &vec![vec![4]]);
        assert_eq!(intmat::determinant(&s.basis).abs(), 1);

        assert!(matches!(
            a2().orthogonal_split(&v(&[1, 0])),
            Err(Error::NoOrthogonalSplit { .. })
        ));
    }

    #[test]
    fn quotient_group() {
        let qi = a2().quotient_invariants();
        assert_eq!(qi.divisors, vec![1, 3]);
        assert_eq!(qi.order, 3);
    }

    #[test]
    fn sublattices() {
        assert_eq!(a2().sublattice(&[v(&[1, 0])]).unwrap().gram(), &vec![vec![2]]);
        assert_eq!(
            a2().sublattice(&[v(&[1, -1]), v(&[1, 2])]).unwrap().gram(),
            &vec![vec![6, -3], vec![-3, 6]]
        );
        // the orthogonal pair sqrt2 Z + sqrt6 Z inside A2
        assert_eq!(
            a2().sublattice(&[v(&[1, 1]), v(&[1, -1])]).unwrap().gram(),
            &vec![vec![2, 0], vec![0, 6]]
        );
        assert_eq!(
            a3().sublattice(&[v(&[1, 0, 1]), v(&[1, 0, -1])]).unwrap().gram(),
            &vec![vec![4, 0], vec![0, 4]]
        );
        assert_eq!(
            a2().sublattice(&[v(&[1, 1]), v(&[2, 2])]),
            Err(Error::LinearlyDependent)
        );
    }

    #[test]
    fn dual_vector_serde() {
        let d = DualVector::new(vec![q(2, 4), q(-3, 1), q(0, 5)]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"["1/2","-3","0"]"#);
        let back: DualVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}
