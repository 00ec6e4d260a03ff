//! Screeners, the full screener set Φ and the sublattices built from it.
//!
//! A screener is an even vector `α ∉ 2L` with `2α/<α,α> ∈ L°`.

use std::collections::HashSet;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use crate::enumerate::{dual_minimum, for_each_up_to_norm};
use crate::error::{Error, Result};
use crate::intmat::{self, Rat};
use crate::lattice::{DualVector, Lattice, LatticeVector};

pub fn is_screener(lattice: &Lattice, x: &LatticeVector) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    if x.dim() != lattice.rank() {
        return Err(Error::DimensionMismatch {
            expected: lattice.rank(),
            found: x.dim(),
        });
    }
    Ok(screener_unchecked(lattice, x, lattice.norm(x)))
}

fn screener_unchecked(lattice: &Lattice, x: &LatticeVector, norm: i64) -> bool {
    norm % 2 == 0
        && x.0.iter().any(|c| c % 2 != 0)
        && lattice.apply(x).iter().all(|v| (2 * v) % norm == 0)
}

/// Largest norm a screener of `lattice` can have.
///
/// A screener of norm `2k` has `k | Det(G)`, and `α/k` is a nonzero vector of
/// `L°`, so `2/k` is at least the dual minimum. Both constraints are exact.
pub fn screener_norm_bound(lattice: &Lattice) -> i64 {
    let det = lattice.determinant();
    let lambda = dual_minimum(lattice);
    let two = Rat::from_integer(2);
    (1..=det)
        .rev()
        .find(|k| det % k == 0 && Rat::from_integer(i128::from(*k)) * lambda <= two)
        .map_or(0, |k| 2 * k)
}

/// Canonical representatives of Φ, one per `±` pair, sorted by `(norm, coordinates)`.
#[derive(Clone, Debug, Serialize)]
pub struct ScreenerSet {
    pub lattice: Lattice,
    pub screeners: Vec<LatticeVector>,
    pub norms: Vec<i64>,
    #[serde(skip)]
    lookup: HashSet<LatticeVector>,
}

impl PartialEq for ScreenerSet {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.screeners == other.screeners
    }
}

impl ScreenerSet {
    fn from_pairs(lattice: Lattice, mut pairs: Vec<(i64, LatticeVector)>) -> Self {
        pairs.sort();
        let (norms, screeners): (Vec<i64>, Vec<LatticeVector>) = pairs.into_iter().unzip();
        let lookup = screeners.iter().cloned().collect();
        ScreenerSet {
            lattice,
            screeners,
            norms,
            lookup,
        }
    }

    /// Number of canonical representatives; `|Φ|` is twice this.
    pub fn len(&self) -> usize {
        self.screeners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.screeners.is_empty()
    }

    /// `|Φ|`, counting both signs.
    pub fn full_count(&self) -> usize {
        2 * self.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticeVector, i64)> {
        self.screeners.iter().zip(self.norms.iter().copied())
    }

    /// Every element of Φ, both signs.
    pub fn expanded(&self) -> Vec<LatticeVector> {
        self.screeners.iter().flat_map(|v| [v.clone(), -v]).collect()
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        !x.is_zero() && self.lookup.contains(&x.canonical())
    }

    /// Screeners whose norm is exactly the smallest norm in Φ.
    pub fn minimal_norm(&self) -> Option<i64> {
        self.norms.first().copied()
    }
}

/// The whole screener set.
///
/// The search radius is [`screener_norm_bound`], never larger than
/// `2·Det(G)`.
pub fn all_screeners(lattice: &Lattice) -> ScreenerSet {
    let bound = screener_norm_bound(lattice);
    screeners_up_to(lattice, bound)
}

/// Screeners of norm at most `bound`.
pub fn screeners_up_to(lattice: &Lattice, bound: i64) -> ScreenerSet {
    let det = lattice.determinant();
    let mut pairs = Vec::new();
    for_each_up_to_norm(lattice, bound, |v, n| {
        if n % 2 == 0 && det % (n / 2) == 0 && screener_unchecked(lattice, v, n) {
            pairs.push((n, v.clone()));
        }
    });
    ScreenerSet::from_pairs(lattice.clone(), pairs)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScreeningSystem {
    pub vectors: Vec<LatticeVector>,
    pub span_gram: Lattice,
}

/// Greedy maximal linearly independent subset in the set's order.
pub fn screening_system(set: &ScreenerSet) -> Result<ScreeningSystem> {
    if set.is_empty() {
        return Err(Error::EmptyScreenerSet);
    }
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut vectors = Vec::new();
    for v in &set.screeners {
        rows.push(v.0.clone());
        if intmat::rank(&rows) == rows.len() {
            vectors.push(v.clone());
            if vectors.len() == set.lattice.rank() {
                break;
            }
        } else {
            rows.pop();
        }
    }
    let span_gram = set.lattice.sublattice(&vectors)?;
    Ok(ScreeningSystem { vectors, span_gram })
}

/// The simple system of Φ with respect to the lexicographic order: positive
/// representatives that are not a sum of two positive ones.
///
/// When Φ spans `ZΦ` like a root system these vectors are a Z-basis of `ZΦ`
/// made of screeners; [`screener_z_basis`] verifies that.
pub fn simple_screeners(set: &ScreenerSet) -> Vec<LatticeVector> {
    let mut composite: HashSet<&LatticeVector> = HashSet::new();
    for (i, u) in set.screeners.iter().enumerate() {
        for v in &set.screeners[i..] {
            let s = u + v;
            if let Some(hit) = set.lookup.get(&s) {
                composite.insert(hit);
            }
        }
    }
    set.screeners
        .iter()
        .filter(|v| !composite.contains(v))
        .cloned()
        .collect()
}

/// A Z-basis of `ZΦ` consisting of screeners, checked against the Hermite basis.
pub fn screener_z_basis(set: &ScreenerSet) -> Result<Vec<LatticeVector>> {
    if set.is_empty() {
        return Err(Error::EmptyScreenerSet);
    }
    let simple = simple_screeners(set);
    let zphi = z_phi(set)?;
    let rows: Vec<Vec<i64>> = simple.iter().map(|v| v.0.clone()).collect();
    if intmat::rank(&rows) != simple.len() || simple.len() != zphi.basis.len() {
        return Err(Error::NotABasis { det: 0 });
    }
    let simple_gram = set.lattice.sublattice(&simple)?;
    if i128::from(simple_gram.determinant()) != i128::from(zphi.gram.determinant()) {
        return Err(Error::NotABasis {
            det: i128::from(simple_gram.determinant()),
        });
    }
    Ok(simple)
}

/// `ZΦ` with a Hermite-reduced basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZPhi {
    pub basis: Vec<LatticeVector>,
    pub gram: Lattice,
    pub rank: usize,
    /// `[L : ZΦ]` when `ZΦ` has full rank.
    pub index: Option<i64>,
}

pub fn z_phi(set: &ScreenerSet) -> Result<ZPhi> {
    if set.is_empty() {
        return Err(Error::EmptyScreenerSet);
    }
    let rows: Vec<Vec<i64>> = set.screeners.iter().map(|v| v.0.clone()).collect();
    let h = intmat::hermite_rows(&rows);
    let basis: Vec<LatticeVector> = h.hermite[..h.rank]
        .iter()
        .map(|r| LatticeVector(r.clone()))
        .collect();
    let gram = set.lattice.sublattice(&basis)?;
    let index = (h.rank == set.lattice.rank())
        .then(|| intmat::determinant(&h.hermite[..h.rank]).abs() as i64);
    Ok(ZPhi {
        basis,
        gram,
        rank: h.rank,
        index,
    })
}

/// `L_Φ = ZΦ ⊕ L_2`, where `L_2` complements the saturation `QZΦ ∩ L`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LPhi {
    pub basis: Vec<LatticeVector>,
    pub gram: Lattice,
    /// `[L : L_Φ]`.
    pub index: i64,
    /// Number of leading basis vectors that span `ZΦ`.
    pub zphi_rank: usize,
}

pub fn l_phi(lattice: &Lattice, set: &ScreenerSet) -> Result<LPhi> {
    let d = lattice.rank();
    if set.is_empty() {
        return Ok(LPhi {
            basis: (0..d).map(|i| LatticeVector::unit(d, i)).collect(),
            gram: lattice.clone(),
            index: 1,
            zphi_rank: 0,
        });
    }
    let zphi = z_phi(set)?;
    let r = zphi.rank;
    // left · Aᵀ = H with H zero below row r, so the columns r.. of left⁻¹ are
    // the coordinates of a basis of a complement to the saturation.
    let at = intmat::transpose(&zphi.basis.iter().map(|v| v.0.clone()).collect::<Vec<_>>());
    let h = intmat::hermite_rows(&at);
    let complement = intmat::transpose(&h.left_inverse);
    let mut basis = zphi.basis.clone();
    basis.extend(complement[r..].iter().map(|c| LatticeVector(c.clone())));
    let gram = lattice.sublattice(&basis)?;
    let rows: Vec<Vec<i64>> = basis.iter().map(|v| v.0.clone()).collect();
    let index = intmat::determinant(&rows).abs() as i64;
    Ok(LPhi {
        basis,
        gram,
        index,
        zphi_rank: r,
    })
}

/// `γ ∈ L°` with `<γ, a> = p − q`, built as `(p − q)·G⁻¹b` for an
/// extended-gcd vector `b` with `a·b = 1`.
pub fn gamma_for_screener(lattice: &Lattice, a: &LatticeVector, p: i64, q: i64) -> Result<DualVector> {
    if !is_screener(lattice, a)? {
        return Err(Error::NotScreener(a.0.clone()));
    }
    let norm = lattice.norm(a);
    if p < 1 || q < 1 || norm != 2 * p * q {
        return Err(Error::NormMismatch { norm, p, q });
    }
    if p == q {
        return Ok(DualVector::zero(a.dim()));
    }
    let (g, b) = intmat::bezout(&a.0);
    if g != 1 {
        return Err(Error::NotPrimitive { gcd: g });
    }
    Ok(lattice
        .dual_combination(&b)
        .scale(Rational64::from_integer(p - q)))
}

/// Conformal weight `r + <v,v>/2 − <γ,v>` of the momentum `v`.
pub fn momentum_weight(lattice: &Lattice, gamma: &DualVector, v: &DualVector, r: i64) -> Rational64 {
    let gv = lattice.apply_dual(v);
    let pair = |u: &DualVector| -> Rational64 {
        u.coords()
            .iter()
            .zip(&gv)
            .fold(Rational64::zero(), |acc, (x, y)| acc + x * y)
    };
    Rational64::from_integer(r) + pair(v) / 2 - pair(gamma)
}

/// `c = d − 12<γ,γ>`.
pub fn central_charge(d: i64, gamma: &DualVector, lattice: &Lattice) -> Rational64 {
    Rational64::from_integer(d) - lattice.dual_norm(gamma) * 12
}

/// Outcome of one structural check on a computed Φ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

impl PropertyCheck {
    fn from(name: &'static str, failure: Option<String>) -> Self {
        PropertyCheck {
            name,
            passed: failure.is_none(),
            detail: failure,
        }
    }
}

/// Runs every structural property of Φ and `L_Φ` and reports each separately.
pub fn check_properties(set: &ScreenerSet) -> Result<Vec<PropertyCheck>> {
    let lattice = &set.lattice;
    let full = set.expanded();
    let norm = |v: &LatticeVector| lattice.norm(v);
    let inner = |u: &LatticeVector, v: &LatticeVector| lattice.inner_unchecked(u, v);
    let mut out = Vec::new();

    out.push(PropertyCheck::from("angle_trichotomy", {
        let mut fail = None;
        'outer: for (i, (a, na)) in set.iter().enumerate() {
            for (b, nb) in set.iter().skip(i + 1) {
                let (small, large) = if na <= nb { (na, nb) } else { (nb, na) };
                let ip = inner(a, b);
                let ok = ip == 0 || 2 * ip.abs() == large;
                if !ok {
                    fail = Some(format!("<{a},{b}> = {ip} with norms {small}, {large}"));
                    break 'outer;
                }
            }
        }
        fail
    }));

    out.push(PropertyCheck::from("no_other_multiples", {
        let det = lattice.determinant();
        set.iter().find_map(|(a, na)| {
            (2..)
                .take_while(|n| n * n * na <= 2 * det)
                .find(|n| screener_unchecked(lattice, &a.scale(*n), n * n * na))
                .map(|n| format!("{n}·{a} is a screener"))
        })
    }));

    out.push(PropertyCheck::from("obtuse_sum_closure", {
        let mut fail = None;
        'outer: for a in &full {
            for b in &full {
                let (na, nb) = (norm(a), norm(b));
                if na <= nb && 2 * inner(a, b) == -nb && !set.contains(&(a + b)) {
                    fail = Some(format!("{a} + {b} is not a screener"));
                    break 'outer;
                }
            }
        }
        fail
    }));

    out.push(PropertyCheck::from("orthogonal_sum_criterion", {
        let mut fail = None;
        'outer: for (i, (a, na)) in set.iter().enumerate() {
            for (b, nb) in set.iter().skip(i + 1) {
                if inner(a, b) != 0 {
                    continue;
                }
                for s in [a + b, a - b] {
                    let predicted = na == nb
                        && lattice.apply(&s).iter().all(|c| c % na == 0)
                        && s.0.iter().any(|c| c % 2 != 0);
                    if predicted != set.contains(&s) {
                        fail = Some(format!("{s}: predicted {predicted}"));
                        break 'outer;
                    }
                }
            }
        }
        fail
    }));

    out.push(PropertyCheck::from("norm_divides_det", {
        let l = set.norms.iter().fold(1i64, |acc, n| acc.lcm(&(n / 2)));
        (lattice.determinant() % l != 0).then(|| format!("lcm {l} does not divide {}", lattice.determinant()))
    }));

    let lp = l_phi(lattice, set)?;
    out.push(PropertyCheck::from("l_phi_chain", {
        let rows: Vec<Vec<i64>> = lp.basis.iter().map(|v| v.0.clone()).collect();
        let inv = intmat::inverse(&rows).ok_or(Error::LinearlyDependent)?;
        let two = Rat::from_integer(2);
        let contains_2l = inv.iter().flatten().all(|x| (x * two).is_integer());
        let det_rel = i128::from(lp.index).pow(2) * i128::from(lattice.determinant())
            == i128::from(lp.gram.determinant());
        match (contains_2l, det_rel) {
            (true, true) => None,
            (false, _) => Some("2L is not contained in L_Φ".to_string()),
            (_, false) => Some(format!(
                "index {} squared times {} differs from {}",
                lp.index,
                lattice.determinant(),
                lp.gram.determinant()
            )),
        }
    }));

    out.push(PropertyCheck::from("l_phi_discriminant_divides", {
        if lp.index == 1 {
            None
        } else {
            let bound = 4i128.pow(lattice.rank() as u32) * i128::from(lattice.determinant());
            let dphi = i128::from(lp.gram.determinant());
            (bound % dphi != 0).then(|| format!("{dphi} does not divide {bound}"))
        }
    }));

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(g: Vec<Vec<i64>>) -> Lattice {
        Lattice::new(g).unwrap()
    }
    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c.to_vec())
    }
    fn a2() -> Lattice {
        lat(vec![vec![2, -1], vec![-1, 2]])
    }
    fn a3() -> Lattice {
        lat(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]])
    }

    #[test]
    fn predicate() {
        assert!(is_screener(&a2(), &v(&[1, -1])).unwrap());
        assert!(!is_screener(&a2(), &v(&[2, -2])).unwrap());
        assert!(is_screener(&a3(), &v(&[1, 0, 1])).unwrap());
        assert!(!is_screener(&lat(vec![vec![4, 0], vec![0, 3]]), &v(&[0, 1])).unwrap());
        assert_eq!(is_screener(&a2(), &v(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn small_sets() {
        let s = all_screeners(&lat(vec![vec![2]]));
        assert_eq!(s.screeners, vec![v(&[1])]);
        let s = all_screeners(&a2());
        assert_eq!(s.full_count(), 12);
        assert_eq!(
            s.screeners,
            vec![v(&[0, 1]), v(&[1, 0]), v(&[1, 1]), v(&[1, -1]), v(&[1, 2]), v(&[2, 1])]
        );
    }

    #[test]
    fn tight_bound_matches_determinant_bound() {
        for g in [
            vec![vec![2, -1], vec![-1, 2]],
            vec![vec![4, 0], vec![0, 3]],
            vec![vec![4, -2], vec![-2, 2]],
            vec![vec![6, 2, 0], vec![2, 4, 1], vec![0, 1, 8]],
        ] {
            let l = lat(g);
            let loose = screeners_up_to(&l, 2 * l.determinant());
            assert_eq!(all_screeners(&l), loose, "{l}");
        }
    }

    #[test]
    fn systems() {
        let sys = screening_system(&all_screeners(&a2())).unwrap();
        assert_eq!(sys.vectors.len(), 2);
        assert!(sys.vectors.iter().all(|x| a2().norm(x) == 2));
        let s = all_screeners(&lat(vec![vec![4, 0], vec![0, 3]]));
        let sys = screening_system(&s).unwrap();
        assert_eq!(sys.vectors, vec![v(&[1, 0])]);
        assert_eq!(sys.span_gram.gram(), &vec![vec![4]]);
        let empty = all_screeners(&lat(vec![vec![3]]));
        assert_eq!(screening_system(&empty), Err(Error::EmptyScreenerSet));
    }

    #[test]
    fn generated_sublattices() {
        let z = z_phi(&all_screeners(&a2())).unwrap();
        assert_eq!(z.index, Some(1));
        let z = z_phi(&all_screeners(&lat(vec![vec![4, 0], vec![0, 3]]))).unwrap();
        assert_eq!(z.gram.gram(), &vec![vec![4]]);
        assert_eq!(z.index, None);
        // ZΦ = √2 Z ⊕ √10 Z for the 2(a) lattice with p = 1, m = 3
        let l = lat(vec![vec![2, -1], vec![-1, 3]]);
        let s = all_screeners(&l);
        assert_eq!(s.screeners, vec![v(&[1, 0]), v(&[1, 2])]);
        let z = z_phi(&s).unwrap();
        assert_eq!(z.gram.determinant(), 20);
        let ortho = l.sublattice(&[v(&[1, 0]), v(&[1, 2])]).unwrap();
        assert_eq!(ortho.gram(), &vec![vec![2, 0], vec![0, 10]]);
    }

    #[test]
    fn l_phi_examples() {
        let lp = l_phi(&a2(), &all_screeners(&a2())).unwrap();
        assert_eq!(lp.index, 1);
        let l = lat(vec![vec![4, 0], vec![0, 3]]);
        let lp = l_phi(&l, &all_screeners(&l)).unwrap();
        assert_eq!(lp.index, 1);
        assert_eq!(lp.gram.gram(), &vec![vec![4, 0], vec![0, 3]]);
        let l = lat(vec![vec![2, -1], vec![-1, 3]]);
        let lp = l_phi(&l, &all_screeners(&l)).unwrap();
        assert_eq!(lp.index, 2);
    }

    #[test]
    fn z_basis_of_screeners() {
        let b = screener_z_basis(&all_screeners(&a3())).unwrap();
        assert_eq!(b.len(), 3);
        assert_eq!(a3().sublattice(&b).unwrap().determinant(), 4);
    }

    #[test]
    fn gamma_construction() {
        let l = lat(vec![vec![4]]);
        let g = gamma_for_screener(&l, &v(&[1]), 2, 1).unwrap();
        assert_eq!(g, DualVector::from_lattice(&v(&[1]), 4));
        assert_eq!(l.dual_norm(&g), Rational64::new(1, 4));
        let w = momentum_weight(&l, &g, &DualVector::from_lattice(&v(&[-1]), 2), 0);
        assert_eq!(w, Rational64::from_integer(1));
        assert_eq!(central_charge(1, &g, &l), Rational64::from_integer(-2));

        let l = lat(vec![vec![12]]);
        let g = gamma_for_screener(&l, &v(&[1]), 3, 2).unwrap();
        assert_eq!(g, DualVector::from_lattice(&v(&[1]), 12));
        assert_eq!(central_charge(1, &g, &l), Rational64::from_integer(0));

        let g = gamma_for_screener(&a2(), &v(&[1, 0]), 1, 1).unwrap();
        assert!(g.is_zero());
        assert_eq!(central_charge(1, &DualVector::zero(1), &l), Rational64::from_integer(1));

        assert!(matches!(
            gamma_for_screener(&l, &v(&[1]), 2, 2),
            Err(Error::NormMismatch { .. })
        ));
        assert!(matches!(
            gamma_for_screener(&a2(), &v(&[2, 2]), 1, 1),
            Err(Error::NotScreener(_))
        ));
    }

    #[test]
    fn properties_hold_on_small_lattices() {
        for l in [a2(), a3(), lat(vec![vec![4, -2], vec![-2, 2]]), lat(vec![vec![2, -1], vec![-1, 3]])] {
            for c in check_properties(&all_screeners(&l)).unwrap() {
                assert!(c.passed, "{l}: {} {:?}", c.name, c.detail);
            }
        }
    }
}
