//! Lattice data of screening pairs: `(p, p′)` decompositions of a momentum,
//! the Virasoro shift `γ`, conformal weights, and the four pair types.

use num_integer::Roots;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intmat;
use crate::lattice::{serialize_rational, DualVector, Lattice, LatticeVector};
use crate::screeners::{central_charge, momentum_weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PairType {
    I,
    II,
    III,
    #[serde(rename = "IV_a")]
    IVa,
    #[serde(rename = "IV_b")]
    IVb,
}

/// A momentum `v` carried by an `M(1)` vector of degree `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Momentum {
    pub vector: DualVector,
    pub r: i64,
    #[serde(serialize_with = "serialize_rational")]
    pub weight: Rational64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSpec {
    pub alpha: LatticeVector,
    pub p: i64,
    pub p_prime: i64,
    pub pair_type: PairType,
    pub gamma: DualVector,
    #[serde(serialize_with = "serialize_rational")]
    pub c: Rational64,
    pub momenta: [Momentum; 2],
    /// Second momentum is `m·α/2pp′`.
    pub m: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r1: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r2: Option<i64>,
    /// `β` for types II and III, primitive with integer coordinates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<LatticeVector>,
}

/// All `(p, p′)` with `<a,a> = 2pp′` and `a/p, a/p′ ∈ L°`, sorted by `p`.
pub fn pair_decompositions(lattice: &Lattice, a: &LatticeVector) -> Result<Vec<(i64, i64)>> {
    if a.is_zero() {
        return Err(Error::ZeroVector);
    }
    let norm = lattice.inner(a, a)?;
    if norm % 2 != 0 {
        return Err(Error::OddNorm(norm));
    }
    let half = norm / 2;
    let mut out = Vec::new();
    for p in (1..=half).filter(|p| half % p == 0) {
        let q = half / p;
        if lattice.in_dual(a, p)? && lattice.in_dual(a, q)? {
            out.push((p, q));
        }
    }
    Ok(out)
}

fn check_decomposition(lattice: &Lattice, a: &LatticeVector, p: i64, q: i64) -> Result<()> {
    let bad = |reason: &str| Error::InvalidPair {
        p,
        q,
        reason: reason.to_string(),
    };
    if p < 1 || q < 1 {
        return Err(bad("p and p' must be positive"));
    }
    let norm = lattice.inner(a, a)?;
    if norm != 2 * p * q {
        return Err(Error::NormMismatch { norm, p, q });
    }
    if !lattice.in_dual(a, p)? {
        return Err(bad("a/p is not in the dual lattice"));
    }
    Ok(())
}

/// A `γ` in the extended dual with `<a, γ> = target`.
///
/// The first candidate is `(target/g)·G⁻¹b` for extended-gcd coefficients `b`
/// with `a·b = g = gcd(a)`; the second is `target·a/<a,a>`.
pub fn gamma_with_pairing(lattice: &Lattice, a: &LatticeVector, target: Rational64) -> Result<DualVector> {
    if target.is_zero() {
        return Ok(DualVector::zero(a.dim()));
    }
    let (g, b) = intmat::bezout(&a.0);
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    let bezout = lattice.dual_combination(&b).scale(target / g);
    if lattice.in_extended_dual(&bezout)? {
        return Ok(bezout);
    }
    let along = DualVector::from_lattice(a, 1).scale(target / lattice.norm(a));
    if lattice.in_extended_dual(&along)? {
        return Ok(along);
    }
    Err(Error::GammaUnavailable {
        target: crate::lattice::format_rational(&target),
        reason: format!("neither {bezout} nor {along} lies in the extended dual"),
    })
}

fn momentum(lattice: &Lattice, gamma: &DualVector, vector: DualVector, r: i64) -> Momentum {
    let weight = momentum_weight(lattice, gamma, &vector, r);
    Momentum { vector, r, weight }
}

/// Type I pair `(e^{−a/p}, e^{a/p′})` with `<a, γ> = p − p′`.
pub fn make_type_i(lattice: &Lattice, a: &LatticeVector, p: i64, q: i64) -> Result<PairSpec> {
    check_decomposition(lattice, a, p, q)?;
    if !lattice.in_dual(a, q)? {
        return Err(Error::InvalidPair {
            p,
            q,
            reason: "a/p' is not in the dual lattice".into(),
        });
    }
    let gamma = gamma_with_pairing(lattice, a, Rational64::from_integer(p - q))?;
    let c = central_charge(lattice.rank() as i64, &gamma, lattice);
    let momenta = [
        momentum(lattice, &gamma, DualVector::from_lattice(&-a, p), 0),
        momentum(lattice, &gamma, DualVector::from_lattice(a, q), 0),
    ];
    Ok(PairSpec {
        alpha: a.clone(),
        p,
        p_prime: q,
        pair_type: PairType::I,
        gamma,
        c,
        momenta,
        m: 2 * p,
        r: None,
        r1: None,
        r2: None,
        witness: None,
    })
}

/// A yes/no answer with the reasons for a no.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Feasibility {
    pub feasible: bool,
    pub reasons: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<PairSpec>,
}

impl Feasibility {
    fn no(reasons: Vec<String>) -> Self {
        Feasibility {
            feasible: false,
            reasons,
            spec: None,
        }
    }
}

/// An integer `β`, not parallel to `a`, with `<β, w> = 0`.
fn witness(lattice: &Lattice, a: &LatticeVector, w: &DualVector) -> Option<LatticeVector> {
    let d = lattice.rank();
    let gw = lattice.apply_dual(w);
    let lcm = gw.iter().fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
    let u: Vec<i64> = gw.iter().map(|x| (x * lcm).to_integer()).collect();
    let mut candidates = Vec::new();
    for i in 0..d {
        if u[i] == 0 {
            candidates.push(LatticeVector::unit(d, i));
        }
        for j in i + 1..d {
            if u[i] != 0 || u[j] != 0 {
                let mut x = vec![0; d];
                x[i] = u[j];
                x[j] = -u[i];
                candidates.push(LatticeVector::new(x));
            }
        }
    }
    candidates.into_iter().find_map(|c| {
        if c.is_zero() || intmat::rank(&[a.0.clone(), c.0.clone()]) < 2 {
            return None;
        }
        let g = c.content();
        Some(LatticeVector::new(c.0.iter().map(|x| x / g).collect::<Vec<_>>()).canonical())
    })
}

/// Finds `γ` with `<a, γ> = target` and a witness for `<β, shift − 2γ> = 0`,
/// falling back to `γ = shift/2` when the first choice leaves only `β ∥ a`.
fn gamma_and_witness(
    lattice: &Lattice,
    a: &LatticeVector,
    target: Rational64,
    shift: &DualVector,
) -> std::result::Result<(DualVector, LatticeVector), String> {
    let mut tried = Vec::new();
    let fallback = shift.scale(Rational64::new(1, 2));
    let first = gamma_with_pairing(lattice, a, target).map_err(|e| e.to_string());
    for candidate in [first, Ok(fallback)] {
        match candidate {
            Ok(gamma) => {
                if !lattice.in_extended_dual(&gamma).map_err(|e| e.to_string())? {
                    tried.push(format!("{gamma} is not in the extended dual"));
                    continue;
                }
                let w = DualVector::new(
                    shift
                        .coords()
                        .iter()
                        .zip(gamma.coords())
                        .map(|(s, g)| s - g * 2)
                        .collect(),
                );
                match witness(lattice, a, &w) {
                    Some(beta) => return Ok((gamma, beta)),
                    None => tried.push(format!("with gamma = {gamma} every witness is parallel to a")),
                }
            }
            Err(e) => tried.push(e),
        }
    }
    Err(tried.join("; "))
}

/// Type II: `(e^{−a/p}, β(−1)e^{(p−p′)a/pp′})` with `p > p′`, `p ≠ 2p′`.
pub fn type_ii_feasible(lattice: &Lattice, a: &LatticeVector, p: i64, q: i64) -> Result<Feasibility> {
    let mut reasons = Vec::new();
    if lattice.rank() < 2 {
        reasons.push("rank 1 leaves no beta outside the span of a".to_string());
    }
    if p <= q {
        reasons.push(format!("p = {p} is not greater than p' = {q}"));
    }
    if p == 2 * q {
        reasons.push("p = 2p'".to_string());
    }
    if lattice.parity(a) != 0 {
        reasons.push("a has odd norm".to_string());
    }
    if let Err(e) = check_decomposition(lattice, a, p, q) {
        reasons.push(e.to_string());
    } else if p > q && !lattice.in_dual(&a.scale(p - q), p * q)? {
        reasons.push("(p-p')a/pp' is not in the dual lattice".to_string());
    }
    if !reasons.is_empty() {
        return Ok(Feasibility::no(reasons));
    }
    let second = DualVector::from_lattice(a, p * q).scale(Rational64::from_integer(p - q));
    let target = Rational64::from_integer(p - q);
    let (gamma, beta) = match gamma_and_witness(lattice, a, target, &second) {
        Ok(x) => x,
        Err(why) => return Ok(Feasibility::no(vec![why])),
    };
    let c = central_charge(lattice.rank() as i64, &gamma, lattice);
    let momenta = [
        momentum(lattice, &gamma, DualVector::from_lattice(&-a, p), 0),
        momentum(lattice, &gamma, second, 1),
    ];
    Ok(Feasibility {
        feasible: true,
        reasons,
        spec: Some(PairSpec {
            alpha: a.clone(),
            p,
            p_prime: q,
            pair_type: PairType::II,
            gamma,
            c,
            momenta,
            m: 2 * (p - q),
            r: None,
            r1: Some(0),
            r2: Some(1),
            witness: Some(beta),
        }),
    })
}

/// Type III: `(β(−1)e^{−a/p}, e^{(r−p′)a/2pp′})` with `p = (r² − p′²)/4p′`.
pub fn type_iii_feasible(lattice: &Lattice, a: &LatticeVector, q: i64, r: i64) -> Result<Feasibility> {
    let mut reasons = Vec::new();
    if r <= q {
        reasons.push(format!("r = {r} is not greater than p' = {q}"));
    }
    if r == 3 * q {
        reasons.push("r = 3p'".to_string());
    }
    let num = r * r - q * q;
    let p = if q > 0 && num > 0 && num % (4 * q) == 0 {
        Some(num / (4 * q))
    } else {
        reasons.push(format!("(r^2 - p'^2)/4p' = {num}/{} is not a positive integer", 4 * q));
        None
    };
    if lattice.rank() < 2 {
        reasons.push("rank 1 leaves no beta outside the span of a".to_string());
    }
    if lattice.parity(a) != 0 {
        reasons.push("a has odd norm".to_string());
    }
    if let Some(p) = p {
        if let Err(e) = check_decomposition(lattice, a, p, q) {
            reasons.push(e.to_string());
        } else if !lattice.in_dual(&a.scale(r - q), 2 * p * q)? {
            reasons.push("(r-p')a/2pp' is not in the dual lattice".to_string());
        }
    }
    let Some(p) = p.filter(|_| reasons.is_empty()) else {
        return Ok(Feasibility::no(reasons));
    };
    // <β, a/p + 2γ> = 0 is the general condition with shift −a/p
    let shift = DualVector::from_lattice(&-a, p);
    let target = Rational64::from_integer(-q);
    let (gamma, beta) = match gamma_and_witness(lattice, a, target, &shift) {
        Ok(x) => x,
        Err(why) => return Ok(Feasibility::no(vec![why])),
    };
    let c = central_charge(lattice.rank() as i64, &gamma, lattice);
    let second = DualVector::from_lattice(a, 2 * p * q).scale(Rational64::from_integer(r - q));
    let momenta = [
        momentum(lattice, &gamma, DualVector::from_lattice(&-a, p), 1),
        momentum(lattice, &gamma, second, 0),
    ];
    Ok(Feasibility {
        feasible: true,
        reasons,
        spec: Some(PairSpec {
            alpha: a.clone(),
            p,
            p_prime: q,
            pair_type: PairType::III,
            gamma,
            c,
            momenta,
            m: r - q,
            r: Some(r),
            r1: Some(1),
            r2: Some(0),
            witness: Some(beta),
        }),
    })
}

/// Positive integer roots of `m² + 2m(p(r₁−1) + p′) + 4pp′(r₂−1) = 0`, ascending.
pub fn solve_weight_quadratic(p: i64, q: i64, r1: i64, r2: i64) -> Vec<i64> {
    let b = i128::from(p) * i128::from(r1 - 1) + i128::from(q);
    let c = 4 * i128::from(p) * i128::from(q) * i128::from(r2 - 1);
    let disc = b * b - c;
    if disc < 0 {
        return Vec::new();
    }
    let s = Roots::sqrt(&disc);
    if s * s != disc {
        return Vec::new();
    }
    let mut roots: Vec<i64> = [-b - s, -b + s]
        .into_iter()
        .filter(|m| m.is_positive())
        .map(|m| m as i64)
        .collect();
    roots.sort_unstable();
    roots.dedup();
    roots
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `r₁ = 0`, `r₂ ≥ 2`.
    A,
    /// `r₁ ≥ 2`, `r₂ = 0`.
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeIvSolution {
    pub branch: Branch,
    pub r1: i64,
    pub r2: i64,
    /// Square root of the reduced discriminant.
    pub r: i64,
    pub m: Vec<i64>,
}

fn exact_sqrt(x: i128) -> Option<i128> {
    (x >= 0).then(|| Roots::sqrt(&x)).filter(|s| s * s == x)
}

/// Perfect-square solutions of the type IV discriminants up to `max_r`.
///
/// Only solutions with a positive root `m` are kept, since the second
/// momentum must be a positive multiple of `a`.
pub fn type_iv_search(p: i64, q: i64, max_r: i64) -> Vec<TypeIvSolution> {
    let (pp, qq) = (i128::from(p), i128::from(q));
    let mut out = Vec::new();
    for r2 in 2..=max_r {
        let d = (qq - pp).pow(2) + 4 * pp * qq * (1 - i128::from(r2));
        if let Some(r) = exact_sqrt(d) {
            let m = solve_weight_quadratic(p, q, 0, r2);
            if !m.is_empty() {
                out.push(TypeIvSolution {
                    branch: Branch::A,
                    r1: 0,
                    r2,
                    r: r as i64,
                    m,
                });
            }
        }
    }
    for r1 in 2..=max_r {
        let d = ((i128::from(r1) - 1) * pp + qq).pow(2) + 4 * pp * qq;
        if let Some(r) = exact_sqrt(d) {
            let m = solve_weight_quadratic(p, q, r1, 0);
            if !m.is_empty() {
                out.push(TypeIvSolution {
                    branch: Branch::B,
                    r1,
                    r2: 0,
                    r: r as i64,
                    m,
                });
            }
        }
    }
    out
}

/// Type IV pair `(β₁…(−r₁)e^{−a/p}, β₂…(−r₂)e^{ma/2pp′})` for one search
/// solution and one of its roots `m`, with `<γ, a> = p(1 − r₁) − p′`.
pub fn make_type_iv(lattice: &Lattice, a: &LatticeVector, p: i64, q: i64, sol: &TypeIvSolution, m: i64) -> Result<PairSpec> {
    check_decomposition(lattice, a, p, q)?;
    if !sol.m.contains(&m) {
        return Err(Error::InvalidPair {
            p,
            q,
            reason: format!("m = {m} is not a root for r1 = {}, r2 = {}", sol.r1, sol.r2),
        });
    }
    if !lattice.in_dual(&a.scale(m), 2 * p * q)? {
        return Err(Error::InvalidPair {
            p,
            q,
            reason: format!("{m}a/2pp' is not in the dual lattice"),
        });
    }
    let gamma = gamma_with_pairing(lattice, a, Rational64::from_integer(p * (1 - sol.r1) - q))?;
    let c = central_charge(lattice.rank() as i64, &gamma, lattice);
    let momenta = [
        momentum(lattice, &gamma, DualVector::from_lattice(&-a, p), sol.r1),
        momentum(lattice, &gamma, DualVector::from_lattice(a, 2 * p * q).scale(Rational64::from_integer(m)), sol.r2),
    ];
    Ok(PairSpec {
        alpha: a.clone(),
        p,
        p_prime: q,
        pair_type: match sol.branch {
            Branch::A => PairType::IVa,
            Branch::B => PairType::IVb,
        },
        gamma,
        c,
        momenta,
        m,
        r: Some(sol.r),
        r1: Some(sol.r1),
        r2: Some(sol.r2),
        witness: None,
    })
}

/// Every pair type for one momentum, with the odd-norm doubling applied.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairsReport {
    /// The momentum actually analysed; `2a` when `a` has odd norm.
    pub alpha: LatticeVector,
    pub doubled: bool,
    pub decompositions: Vec<DecompositionReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub p: i64,
    pub p_prime: i64,
    pub type_i: std::result::Result<PairSpec, String>,
    pub type_ii: Feasibility,
    /// Present when `4pp′ + p′²` is a perfect square `r²`.
    pub type_iii: Option<Feasibility>,
    pub type_iv: Vec<TypeIvSolution>,
    /// One entry per `(solution, m)` that the lattice admits.
    pub type_iv_specs: Vec<PairSpec>,
    /// Why the remaining `(solution, m)` combinations were dropped.
    pub type_iv_rejected: Vec<String>,
}

pub fn screening_pairs(lattice: &Lattice, a: &LatticeVector, max_r: i64) -> Result<PairsReport> {
    if a.is_zero() {
        return Err(Error::ZeroVector);
    }
    lattice.inner(a, a)?;
    let doubled = lattice.parity(a) == 1;
    let alpha = if doubled { a.scale(2) } else { a.clone() };
    let mut decompositions = Vec::new();
    for (p, q) in pair_decompositions(lattice, &alpha)? {
        let type_i = make_type_i(lattice, &alpha, p, q).map_err(|e| e.to_string());
        let type_ii = type_ii_feasible(lattice, &alpha, p, q)?;
        let disc = 4 * i128::from(p) * i128::from(q) + i128::from(q).pow(2);
        let type_iii = match exact_sqrt(disc) {
            Some(r) => Some(type_iii_feasible(lattice, &alpha, q, r as i64)?),
            None => None,
        };
        let type_iv = type_iv_search(p, q, max_r);
        let mut type_iv_specs = Vec::new();
        let mut type_iv_rejected = Vec::new();
        for sol in &type_iv {
            for &m in &sol.m {
                match make_type_iv(lattice, &alpha, p, q, sol, m) {
                    Ok(spec) => type_iv_specs.push(spec),
                    Err(e) => type_iv_rejected.push(format!("r1 = {}, r2 = {}, m = {m}: {e}", sol.r1, sol.r2)),
                }
            }
        }
        decompositions.push(DecompositionReport {
            p,
            p_prime: q,
            type_i,
            type_ii,
            type_iii,
            type_iv,
            type_iv_specs,
            type_iv_rejected,
        });
    }
    Ok(PairsReport {
        alpha,
        doubled,
        decompositions,
    })
}
