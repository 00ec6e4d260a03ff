//! Normal forms of rank-2 lattices that have a screener.
//!
//! Type 1 is `diag(2p, m)` with `m ≠ 2p`; type 2 is `[[2p, −p], [−p, m]]` with
//! `m ≥ p`, split into 2a (`m ∉ {p, 2p}`), 2b (`m = p`) and 2c (`m = 2p`).

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{extend_to_basis, Lattice, LatticeVector};
use crate::screeners::{all_screeners, ScreenerSet};

pub const WARN_2B_ODD_P: &str = "W_RANK2_2B_ODD_P";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rank2Kind {
    Type1,
    Type2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subtype {
    A,
    B,
    C,
}

impl fmt::Display for Subtype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Subtype::A => "2a",
            Subtype::B => "2b",
            Subtype::C => "2c",
        };
        f.write_str(s)
    }
}

impl Serialize for Subtype {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank2Form {
    pub kind: Rank2Kind,
    pub p: i64,
    pub m: i64,
    pub subtype: Option<Subtype>,
    /// The normal-form basis in the original coordinates.
    pub basis: [LatticeVector; 2],
}

impl Rank2Form {
    fn new(kind: Rank2Kind, p: i64, m: i64, basis: [LatticeVector; 2]) -> Self {
        let subtype = (kind == Rank2Kind::Type2).then(|| {
            if m == p {
                Subtype::B
            } else if m == 2 * p {
                Subtype::C
            } else {
                Subtype::A
            }
        });
        Rank2Form {
            kind,
            p,
            m,
            subtype,
            basis,
        }
    }

    pub fn gram(&self) -> [[i64; 2]; 2] {
        match self.kind {
            Rank2Kind::Type1 => [[2 * self.p, 0], [0, self.m]],
            Rank2Kind::Type2 => [[2 * self.p, -self.p], [-self.p, self.m]],
        }
    }

    /// Columns are the normal-form basis vectors.
    pub fn basis_change(&self) -> [[i64; 2]; 2] {
        let [a, b] = &self.basis;
        [[a.0[0], b.0[0]], [a.0[1], b.0[1]]]
    }

    /// Normal-form coordinates mapped to original coordinates.
    pub fn to_original(&self, c: &LatticeVector) -> LatticeVector {
        &self.basis[0].scale(c.0[0]) + &self.basis[1].scale(c.0[1])
    }

    /// Whether the odd-`p` 2b case applies, where `α_2` has odd norm and the
    /// eight-element list cannot be right.
    pub fn odd_2b(&self) -> bool {
        self.subtype == Some(Subtype::B) && self.p % 2 != 0
    }
}

/// Normal form following the classification proof, or `None` when the
/// lattice has no screener.
pub fn rank2_normal_form(lattice: &Lattice) -> Result<Option<Rank2Form>> {
    if lattice.rank() != 2 {
        return Err(Error::RankNotTwo(lattice.rank()));
    }
    let set = all_screeners(lattice);
    Ok(match set.screeners.first() {
        None => None,
        Some(a1) => Some(normal_form_from(lattice, a1)?),
    })
}

fn normal_form_from(lattice: &Lattice, alpha: &LatticeVector) -> Result<Rank2Form> {
    let ext = extend_to_basis(alpha)?;
    let mut a1 = alpha.clone();
    let mut a2 = LatticeVector::new(vec![ext[0][1], ext[1][1]]);
    let p = lattice.norm(&a1) / 2;
    let n = -lattice.inner_unchecked(&a1, &a2) / p;
    debug_assert_eq!(lattice.inner_unchecked(&a1, &a2), -n * p);
    if n % 2 == 0 {
        a2 = &a2 + &a1.scale(n / 2);
        let m = lattice.norm(&a2);
        if m != 2 * p {
            return Ok(Rank2Form::new(Rank2Kind::Type1, p, m, [a1, a2]));
        }
        // diag(2p, 2p) is [[4p, −2p], [−2p, 2p]] in the basis α_1 − α_2, α_2
        let b1 = &a1 - &a2;
        return Ok(Rank2Form::new(Rank2Kind::Type2, 2 * p, 2 * p, [b1, a2]));
    }
    a2 = &a2 + &a1.scale((n - 1) / 2);
    let mut p = p;
    let mut m = lattice.norm(&a2);
    while m < p {
        let h1 = &a1 + &a2.scale(2);
        let h2 = -&(&a1 + &a2);
        a1 = h1;
        a2 = h2;
        p = 2 * m - p;
        m = lattice.norm(&a2);
    }
    Ok(Rank2Form::new(Rank2Kind::Type2, p, m, [a1, a2]))
}

/// The classification's screener list in normal-form coordinates, one
/// canonical vector per `±` pair.
pub fn rank2_screener_list(form: &Rank2Form) -> Vec<LatticeVector> {
    let v = |a: i64, b: i64| LatticeVector::new(vec![a, b]);
    match (form.kind, form.subtype) {
        (Rank2Kind::Type1, _) if form.m % 2 != 0 => vec![v(1, 0)],
        (Rank2Kind::Type1, _) => vec![v(1, 0), v(0, 1)],
        (_, Some(Subtype::B)) => vec![v(1, 0), v(1, 2), v(0, 1), v(1, 1)],
        (_, Some(Subtype::C)) => vec![v(1, 0), v(1, 2), v(0, 1), v(1, 1), v(1, -1), v(2, 1)],
        _ => vec![v(1, 0), v(1, 2)],
    }
}

/// Predicted list against the computed Φ for one rank-2 lattice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Rank2Check {
    pub form: Option<Rank2Form>,
    /// Predicted screeners in original coordinates, canonical and sorted.
    pub predicted: Vec<LatticeVector>,
    pub actual: Vec<LatticeVector>,
    pub agrees: bool,
    pub warning: Option<&'static str>,
}

pub fn rank2_check(lattice: &Lattice) -> Result<Rank2Check> {
    let form = rank2_normal_form(lattice)?;
    let set: ScreenerSet = all_screeners(lattice);
    let mut actual = set.screeners.clone();
    actual.sort();
    let mut predicted: Vec<LatticeVector> = match &form {
        None => Vec::new(),
        Some(f) => rank2_screener_list(f)
            .iter()
            .map(|c| f.to_original(c).canonical())
            .collect(),
    };
    predicted.sort();
    let warning = form.as_ref().filter(|f| f.odd_2b()).map(|_| WARN_2B_ODD_P);
    Ok(Rank2Check {
        agrees: predicted == actual,
        form,
        predicted,
        actual,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(g: Vec<Vec<i64>>) -> Lattice {
        Lattice::new(g).unwrap()
    }

    fn form_gram_matches(l: &Lattice, f: &Rank2Form) {
        let g = f.gram();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(l.inner_unchecked(&f.basis[i], &f.basis[j]), g[i][j]);
            }
        }
        let c = f.basis_change();
        assert_eq!((c[0][0] * c[1][1] - c[0][1] * c[1][0]).abs(), 1);
    }

    #[test]
    fn examples() {
        let a2 = lat(vec![vec![2, -1], vec![-1, 2]]);
        let f = rank2_normal_form(&a2).unwrap().unwrap();
        assert_eq!((f.kind, f.p, f.m, f.subtype), (Rank2Kind::Type2, 1, 2, Some(Subtype::C)));
        form_gram_matches(&a2, &f);

        let l = lat(vec![vec![4, 0], vec![0, 3]]);
        let f = rank2_normal_form(&l).unwrap().unwrap();
        assert_eq!((f.kind, f.p, f.m), (Rank2Kind::Type1, 2, 3));
        assert_eq!(f.subtype, None);

        let l = lat(vec![vec![2, 1], vec![1, 3]]);
        let f = rank2_normal_form(&l).unwrap().unwrap();
        assert_eq!((f.kind, f.p, f.m, f.subtype), (Rank2Kind::Type2, 1, 3, Some(Subtype::A)));
        form_gram_matches(&l, &f);
        assert!(rank2_check(&l).unwrap().agrees);
    }

    #[test]
    fn predicted_lists() {
        let e = [LatticeVector::new([1, 0]), LatticeVector::new([0, 1])];
        let f = Rank2Form::new(Rank2Kind::Type1, 2, 3, e.clone());
        assert_eq!(rank2_screener_list(&f), vec![LatticeVector::new([1, 0])]);
        assert_eq!(rank2_screener_list(&Rank2Form::new(Rank2Kind::Type2, 1, 2, e.clone())).len(), 6);
        assert_eq!(rank2_screener_list(&Rank2Form::new(Rank2Kind::Type2, 2, 2, e)).len(), 4);
    }

    #[test]
    fn diag_equal_becomes_2b() {
        // A1 ⊥ A1 at scale 1
        let l = lat(vec![vec![2, 0], vec![0, 2]]);
        let f = rank2_normal_form(&l).unwrap().unwrap();
        assert_eq!((f.kind, f.p, f.m, f.subtype), (Rank2Kind::Type2, 2, 2, Some(Subtype::B)));
        form_gram_matches(&l, &f);
        assert!(rank2_check(&l).unwrap().agrees);
    }

    #[test]
    fn odd_2b_is_flagged() {
        let l = lat(vec![vec![2, -1], vec![-1, 1]]);
        let c = rank2_check(&l).unwrap();
        assert_eq!(c.warning, Some(WARN_2B_ODD_P));
        assert!(!c.agrees);
        assert_eq!(c.actual.len(), 2);
    }

    #[test]
    fn errors_and_empty() {
        assert_eq!(rank2_normal_form(&lat(vec![vec![2]])), Err(Error::RankNotTwo(1)));
        assert_eq!(rank2_normal_form(&lat(vec![vec![3, 1], vec![1, 4]])).unwrap(), None);
    }
}
