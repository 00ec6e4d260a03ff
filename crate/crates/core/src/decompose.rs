//! Orthogonal decomposition of lattices generated by screeners into rescaled
//! simply laced root lattices, and the root systems their screeners form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::enumerate::enumerate_exact_norm;
use crate::error::{Error, Result};
use crate::intmat;
use crate::lattice::{Lattice, LatticeVector};
use crate::screeners::{all_screeners, is_screener, screener_z_basis, z_phi, ScreenerSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(Error::InvalidCatalog {
                family: s.chars().next().unwrap_or('?'),
                rank: 0,
            }),
        }
    }
}

/// A root system name such as `D_4` or `G_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootType {
    pub family: Family,
    pub rank: usize,
}

impl RootType {
    pub const fn new(family: Family, rank: usize) -> Self {
        RootType { family, rank }
    }

    /// Number of roots, or `None` for names that are not root systems.
    pub fn root_count(self) -> Option<usize> {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, n) if n >= 1 => Some(n * (n + 1)),
            (Family::B | Family::C, n) if n >= 2 => Some(2 * n * n),
            (Family::D, n) if n >= 3 => Some(2 * n * (n - 1)),
            (Family::E, 6) => Some(72),
            (Family::E, 7) => Some(126),
            (Family::E, 8) => Some(240),
            (Family::F, 4) => Some(48),
            (Family::G, 2) => Some(12),
            _ => None,
        }
    }

    /// The simply laced type with this rank and root count. `A_3` wins over `D_3`.
    pub fn simply_laced(rank: usize, roots: usize) -> Option<Self> {
        [Family::A, Family::D, Family::E]
            .into_iter()
            .map(|f| RootType::new(f, rank))
            .find(|t| t.root_count() == Some(roots))
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family.letter(), self.rank)
    }
}

impl Serialize for RootType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One summand `√p K` of the decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    #[serde(rename = "type")]
    pub root_type: RootType,
    pub scale: i64,
    /// Simple roots of the component, all of norm `2·scale`.
    pub basis: Vec<LatticeVector>,
    /// Number of vectors of norm `2·scale`, both signs.
    pub roots: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedType {
    #[serde(rename = "type")]
    pub root_type: RootType,
    pub scale: i64,
    pub expected_screener_count: usize,
}

/// A group of components whose screeners form one root system.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtendedGroup {
    pub extended: ExtendedType,
    pub components: Vec<Component>,
    pub actual_screener_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub groups: Vec<ExtendedGroup>,
    pub reduced_basis: Vec<LatticeVector>,
    pub screeners: ScreenerSet,
}

impl Classification {
    pub fn extended_types(&self) -> Vec<&ExtendedType> {
        self.groups.iter().map(|g| &g.extended).collect()
    }

    pub fn components(&self) -> Vec<&Component> {
        self.groups.iter().flat_map(|g| &g.components).collect()
    }
}

fn rows(vs: &[LatticeVector]) -> Vec<Vec<i64>> {
    vs.iter().map(|v| v.0.clone()).collect()
}

/// Replaces `u_l` by `u_l ∓ u_i` while a strictly shorter `u_i` meets it at
/// `±<u_l,u_l>/2`, then sorts by norm.
///
/// Equal-norm pairs are left alone: they make up the simply laced blocks.
pub fn reduce_screener_basis(lattice: &Lattice, basis: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
    let d = lattice.rank();
    if basis.len() != d {
        return Err(Error::NotABasis { det: 0 });
    }
    for u in basis {
        if u.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: u.dim(),
            });
        }
    }
    let det = intmat::determinant(&rows(basis));
    if det.abs() != 1 {
        return Err(Error::NotABasis { det });
    }
    if !lattice.is_even() {
        return Err(Error::NotEven);
    }
    for u in basis {
        if !is_screener(lattice, u)? {
            return Err(Error::NotScreener(u.0.clone()));
        }
    }
    let mut u = basis.to_vec();
    let mut norms: Vec<i64> = u.iter().map(|x| lattice.norm(x)).collect();
    'scan: loop {
        for l in 0..d {
            for i in 0..d {
                if norms[i] >= norms[l] {
                    continue;
                }
                let ip = lattice.inner(&u[i], &u[l])?;
                if ip == 0 {
                    continue;
                }
                if 2 * ip.abs() != norms[l] {
                    return Err(Error::AngleViolation {
                        small: norms[i],
                        large: norms[l],
                        inner: ip,
                    });
                }
                let next = if ip > 0 { &u[l] - &u[i] } else { &u[l] + &u[i] };
                if !is_screener(lattice, &next)? {
                    return Err(Error::NotScreener(next.0));
                }
                norms[l] = lattice.norm(&next);
                u[l] = next;
                continue 'scan;
            }
        }
        break;
    }
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&i| norms[i]);
    Ok(order.into_iter().map(|i| u[i].clone()).collect())
}

/// Splits a reduced basis into indecomposable root lattice components named by
/// rank and root count.
pub fn recognize_components(lattice: &Lattice, reduced: &[LatticeVector]) -> Result<Vec<Component>> {
    let mut blocks: BTreeMap<i64, Vec<LatticeVector>> = BTreeMap::new();
    for u in reduced {
        blocks.entry(lattice.norm(u)).or_default().push(u.clone());
    }
    let mut out = Vec::new();
    for (norm, block) in blocks {
        if norm % 2 != 0 {
            return Err(Error::NotEven);
        }
        let k = lattice.sublattice(&block)?;
        let to_lattice = |c: &LatticeVector| -> LatticeVector {
            let mut x = LatticeVector::zero(lattice.rank());
            for (coef, u) in c.0.iter().zip(&block) {
                x = &x + &u.scale(*coef);
            }
            x
        };
        let reps = enumerate_exact_norm(&k, norm).vectors;
        let mut covered = 0;
        for piece in connected_pieces(&k, &reps) {
            let rank = intmat::rank(&rows(&piece));
            let roots = 2 * piece.len();
            let root_type = RootType::simply_laced(rank, roots).ok_or(Error::Unrecognized { rank, roots })?;
            covered += rank;
            let basis = simple_roots(&piece).iter().map(to_lattice).collect();
            out.push(Component {
                root_type,
                scale: norm / 2,
                basis,
                roots,
            });
        }
        if covered != block.len() {
            return Err(Error::Unrecognized {
                rank: block.len(),
                roots: 2 * reps.len(),
            });
        }
    }
    out.sort_by(|a, b| {
        (a.scale, a.root_type.rank, a.root_type.family, &a.basis).cmp(&(
            b.scale,
            b.root_type.rank,
            b.root_type.family,
            &b.basis,
        ))
    });
    Ok(out)
}

/// Connected components of the "nonzero inner product" graph on `reps`.
fn connected_pieces(k: &Lattice, reps: &[LatticeVector]) -> Vec<Vec<LatticeVector>> {
    let n = reps.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if k.inner_unchecked(&reps[i], &reps[j]) != 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<LatticeVector>> = BTreeMap::new();
    for (i, r) in reps.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(r.clone());
    }
    groups.into_values().collect()
}

/// Positive vectors that are not a sum of two positive ones.
fn simple_roots(positive: &[LatticeVector]) -> Vec<LatticeVector> {
    let set: std::collections::HashSet<&LatticeVector> = positive.iter().collect();
    positive
        .iter()
        .filter(|r| {
            !positive
                .iter()
                .any(|a| a != *r && set.contains(&(&**r - a)))
        })
        .cloned()
        .collect()
}

/// Extended type of a group of simply laced components at one scale.
fn extend(component: &Component) -> RootType {
    let RootType { family, rank } = component.root_type;
    match (family, rank) {
        (Family::A, 2) => RootType::new(Family::G, 2),
        (Family::A, 3) => RootType::new(Family::C, 3),
        (Family::D, 4) => RootType::new(Family::F, 4),
        (Family::D, n) if n > 4 => RootType::new(Family::C, n),
        _ => component.root_type,
    }
}

/// Full pipeline: screeners, a screener Z-basis, reduction, recognition and
/// the extended root systems, checked against the computed Φ.
pub fn identify_extended_type(lattice: &Lattice) -> Result<Classification> {
    if !lattice.is_even() {
        return Err(Error::NotEven);
    }
    let d = lattice.rank();
    let screeners = all_screeners(lattice);
    if screeners.is_empty() {
        return Err(Error::NotGeneratedByScreeners {
            rank: 0,
            dim: d,
            index: 0,
        });
    }
    let zphi = z_phi(&screeners)?;
    if zphi.index != Some(1) {
        return Err(Error::NotGeneratedByScreeners {
            rank: zphi.rank,
            dim: d,
            index: zphi.index.unwrap_or(0),
        });
    }
    let basis = screener_z_basis(&screeners)?;
    let reduced = reduce_screener_basis(lattice, &basis)?;
    let components = recognize_components(lattice, &reduced)?;

    let mut groups: Vec<(RootType, i64, Vec<Component>)> = Vec::new();
    let mut lone_a1: BTreeMap<i64, Vec<Component>> = BTreeMap::new();
    for c in components {
        if c.root_type == RootType::new(Family::A, 1) {
            lone_a1.entry(c.scale).or_default().push(c);
        } else {
            groups.push((extend(&c), c.scale, vec![c]));
        }
    }
    for (scale, cs) in lone_a1 {
        let t = if cs.len() == 1 {
            RootType::new(Family::A, 1)
        } else {
            RootType::new(Family::B, cs.len())
        };
        groups.push((t, scale, cs));
    }
    groups.sort_by_key(|g| (g.1, g.0.rank, g.0.family));

    let mut out = Vec::new();
    let mut total = 0;
    for (i, (t, scale, cs)) in groups.iter().enumerate() {
        let others: Vec<&LatticeVector> = groups
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .flat_map(|(_, g)| g.2.iter().flat_map(|c| &c.basis))
            .collect();
        let actual = 2 * screeners
            .screeners
            .iter()
            .filter(|s| others.iter().all(|o| lattice.inner_unchecked(s, o) == 0))
            .count();
        total += actual;
        let expected = t.root_count().expect("extended types are root systems");
        if expected != actual {
            return Err(Error::ClassificationMismatch(format!(
                "{t} at scale {scale}: expected {expected} screeners, found {actual}"
            )));
        }
        out.push(ExtendedGroup {
            extended: ExtendedType {
                root_type: *t,
                scale: *scale,
                expected_screener_count: expected,
            },
            components: cs.clone(),
            actual_screener_count: actual,
        });
    }
    if total != screeners.full_count() {
        return Err(Error::ClassificationMismatch(format!(
            "{} screeners lie outside every component group",
            screeners.full_count() - total
        )));
    }
    Ok(Classification {
        groups: out,
        reduced_basis: reduced,
        screeners,
    })
}

/// `p` times the standard Gram matrix of `A_n`, `D_n` or `E_n`.
///
/// `D_n` uses the basis with `α_1 ⊥ α_2`, both attached to `α_3`, followed by
/// the chain `α_3, ..., α_n`. `E_n` is the chain `α_1, ..., α_{n-1}` with
/// `α_n` attached to `α_{n-3}`.
pub fn catalog(family: Family, n: usize, p: i64) -> Result<Lattice> {
    let bad = Error::InvalidCatalog {
        family: family.letter(),
        rank: n,
    };
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match family {
        Family::A if n >= 1 => edges.extend((1..n).map(|i| (i - 1, i))),
        Family::D if n >= 2 => {
            if n >= 3 {
                edges.push((0, 2));
                edges.push((1, 2));
            }
            edges.extend((3..n).map(|i| (i - 1, i)));
        }
        Family::E if (6..=8).contains(&n) => {
            edges.extend((1..n - 1).map(|i| (i - 1, i)));
            edges.push((n - 4, n - 1));
        }
        _ => return Err(bad),
    }
    if p < 1 {
        return Err(Error::InvalidScale);
    }
    let mut g = vec![vec![0i64; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2 * p;
    }
    for (i, j) in edges {
        g[i][j] = -p;
        g[j][i] = -p;
    }
    Lattice::new(g)
}

/// Orthogonal sum of lattices (block diagonal Gram matrix).
pub fn orthogonal_sum(parts: &[Lattice]) -> Result<Lattice> {
    let d: usize = parts.iter().map(Lattice::rank).sum();
    let mut g = vec![vec![0i64; d]; d];
    let mut off = 0;
    for part in parts {
        for (i, row) in part.gram().iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                g[off + i][off + j] = *v;
            }
        }
        off += part.rank();
    }
    Lattice::new(g)
}
