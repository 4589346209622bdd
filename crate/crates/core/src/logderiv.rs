//! Modules of logarithmic derivations `D(A)`.
//!
//! `D(A)` is computed as the intersection of the modules `D(α_H)`, each of
//! which has the explicit basis `{θ_E, v_1^∨, …, v_{ℓ-1}^∨}` built from a
//! basis of `ker α_H`. Freeness is decided from the number of minimal
//! homogeneous generators and certified by Saito's determinant criterion.
//! An independent linear-algebra oracle computes `dim D(A)_p` directly.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{Arrangement, LinearForm};
use crate::exactnum::{CycloNum, FieldRef};
use crate::linalg::SparseEchelon;
use crate::polymod::{intersect_all, minimal_generators, ModVec, Monomial, MultiPoly, PolyError, Submodule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogDerError {
    #[error("zero vector")]
    ZeroVector,
    #[error("expected {expected} derivations, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("derivation {0} is not homogeneous")]
    NonHomogeneous(usize),
    #[error("derivation {index} has {got} components, expected {expected}")]
    WrongRank { index: usize, expected: usize, got: usize },
    #[error("Saito certificate failed for a computed basis")]
    CertificateFailed,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A polynomial vector field `Σ f_i ∂/∂x_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    vec: ModVec,
    pdeg: Option<u32>,
}

impl Derivation {
    pub fn new(vec: ModVec) -> Self {
        let pdeg = vec.pdeg();
        Derivation { vec, pdeg }
    }

    pub fn vec(&self) -> &ModVec {
        &self.vec
    }

    pub fn pdeg(&self) -> Option<u32> {
        self.pdeg
    }

    /// `θ(f) = Σ f_i ∂f/∂x_i`.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let mut acc = MultiPoly::zero(f.nvars());
        for (i, c) in self.vec.comps().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(c * &f.derivative(i));
        }
        acc
    }

    /// Comma-separated coefficients, the line format of basis files.
    pub fn to_line(&self) -> String {
        self.vec
            .comps()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.vec.comps().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.terms().len() == 1 {
                write!(f, "{c}*D{}", i + 1)?;
            } else {
                write!(f, "({c})*D{}", i + 1)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Result of a freeness decision.
#[derive(Clone, Debug)]
pub struct FreenessReport {
    pub free: bool,
    /// Sorted exponents; present iff free.
    pub exponents: Option<Vec<u32>>,
    /// Homogeneous basis sorted by degree; present iff free.
    pub basis: Option<Vec<Derivation>>,
    /// `c` with `det M = c·Q(A)`; present iff free.
    pub saito_constant: Option<CycloNum>,
    pub generator_count: usize,
    pub generator_degrees: Vec<u32>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    free: bool,
    exponents: &'a Option<Vec<u32>>,
    generator_count: usize,
    generator_degrees: &'a [u32],
    saito_constant: Option<String>,
    basis: Option<Vec<Vec<String>>>,
}

impl Serialize for FreenessReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ReportJson {
            free: self.free,
            exponents: &self.exponents,
            generator_count: self.generator_count,
            generator_degrees: &self.generator_degrees,
            saito_constant: self.saito_constant.as_ref().map(ToString::to_string),
            basis: self.basis.as_ref().map(|b| {
                b.iter()
                    .map(|d| d.vec.comps().iter().map(ToString::to_string).collect())
                    .collect()
            }),
        }
        .serialize(s)
    }
}

/// `θ_E = Σ x_i ∂/∂x_i`.
pub fn euler_derivation(field: &FieldRef, l: usize) -> Derivation {
    Derivation::new(ModVec::new(
        (0..l).map(|i| MultiPoly::var(field, l, i)).collect(),
    ))
}

/// `v ↦ v^∨ = Σ v_i ∂/∂x_i`, a constant derivation.
pub fn vee(v: &[CycloNum]) -> Result<Derivation, LogDerError> {
    if v.iter().all(CycloNum::is_zero) {
        return Err(LogDerError::ZeroVector);
    }
    Ok(Derivation::new(ModVec::constant(v, v.len())))
}

/// Basis `{θ_E, v_j^∨ : j ≠ p}` of `D(α)`, where `p` is the pivot of the
/// canonical form and `v_j = e_j − α_j e_p` spans `ker α`.
pub fn dalpha_basis(alpha: &LinearForm) -> Vec<Derivation> {
    let l = alpha.dim();
    let field = alpha.coeffs()[0].field().clone();
    let p = alpha.pivot();
    let mut out = vec![euler_derivation(&field, l)];
    for j in (0..l).filter(|&j| j != p) {
        let mut v = vec![CycloNum::zero(&field); l];
        v[j] = CycloNum::one(&field);
        v[p] = -&alpha.coeffs()[j];
        out.push(vee(&v).expect("e_j component is 1"));
    }
    out
}

/// `det M` for the `ℓ × ℓ` coefficient matrix `M_{ij} = θ_j(x_i)`.
pub fn coefficient_determinant(basis: &[Derivation], nvars: usize, field: &FieldRef) -> MultiPoly {
    let l = basis.len();
    // entries[row][col]
    let entries: Vec<Vec<&MultiPoly>> = (0..l)
        .map(|i| basis.iter().map(|d| d.vec.comp(i)).collect())
        .collect();
    let mut memo: HashMap<u64, MultiPoly> = HashMap::new();
    // Laplace along rows; `cols` is the set of columns still available
    fn rec(
        row: usize,
        cols: u64,
        entries: &[Vec<&MultiPoly>],
        memo: &mut HashMap<u64, MultiPoly>,
        nvars: usize,
        field: &FieldRef,
    ) -> MultiPoly {
        let l = entries.len();
        if row == l {
            return MultiPoly::one(field, nvars);
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = MultiPoly::zero(nvars);
        let mut sign_pos = true;
        for c in 0..l {
            if cols >> c & 1 == 0 {
                continue;
            }
            let e = entries[row][c];
            if !e.is_zero() {
                let minor = rec(row + 1, cols & !(1 << c), entries, memo, nvars, field);
                let t = e * &minor;
                acc = if sign_pos { &acc + &t } else { &acc - &t };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    let all = if l == 64 { u64::MAX } else { (1u64 << l) - 1 };
    rec(0, all, &entries, &mut memo, nvars, field)
}

/// `D(α)` as a submodule of `S^ℓ`.
pub fn dalpha_module(alpha: &LinearForm) -> Submodule {
    let l = alpha.dim();
    Submodule::new(l, l, dalpha_basis(alpha).into_iter().map(|d| d.vec).collect())
        .expect("rank-ℓ vectors")
}

/// Minimal homogeneous generators of `D(A) = ∩_H D(α_H)`, folding the
/// intersection over the hyperplanes in order.
pub fn derivation_module(a: &Arrangement) -> Result<Submodule, LogDerError> {
    let l = a.dim();
    let mods: Vec<Submodule> = a.hyperplanes().iter().map(dalpha_module).collect();
    Ok(intersect_all(a.field(), l, l, &mods)?)
}

// θ(α) vanishes on ker α: substitute the pivot variable and test for zero.
fn divisible_by_form(g: &MultiPoly, alpha: &LinearForm) -> bool {
    if g.is_zero() {
        return true;
    }
    let l = alpha.dim();
    let p = alpha.pivot();
    let field = alpha.coeffs()[p].field();
    let images: Vec<MultiPoly> = (0..l)
        .map(|j| {
            if j == p {
                let mut c: Vec<CycloNum> = alpha.coeffs().iter().map(|x| -x).collect();
                c[p] = CycloNum::zero(field);
                MultiPoly::linear(&c)
            } else {
                MultiPoly::var(field, l, j)
            }
        })
        .collect();
    g.compose(&images, l).is_zero()
}

/// `θ ∈ D(A)`: `α_H | θ(α_H)` for every hyperplane.
pub fn membership_test(theta: &Derivation, a: &Arrangement) -> bool {
    a.hyperplanes().iter().all(|h| {
        let g = theta.apply(&h.to_poly());
        divisible_by_form(&g, h)
    })
}

/// Saito's criterion: `ℓ` derivations in `D(A)` form a basis iff
/// `det M = c·Q(A)` for a nonzero scalar `c`. Returns the verdict and `c`.
pub fn saito_check(
    basis: &[Derivation],
    a: &Arrangement,
) -> Result<(bool, Option<CycloNum>), LogDerError> {
    let l = a.dim();
    if basis.len() != l {
        return Err(LogDerError::WrongCount {
            expected: l,
            got: basis.len(),
        });
    }
    for (i, d) in basis.iter().enumerate() {
        if d.vec.rank() != l {
            return Err(LogDerError::WrongRank {
                index: i,
                expected: l,
                got: d.vec.rank(),
            });
        }
        if !d.vec.is_homogeneous() {
            return Err(LogDerError::NonHomogeneous(i));
        }
    }
    if !basis.iter().all(|d| membership_test(d, a)) {
        return Ok((false, None));
    }
    let det = coefficient_determinant(basis, l, a.field());
    let q = a.defining_polynomial();
    let Some((_, dl)) = det.leading() else {
        return Ok((false, None));
    };
    let (qm, ql) = q.leading().expect("Q(A) is nonzero");
    if det.leading().unwrap().0 != *qm {
        return Ok((false, None));
    }
    let c = dl.try_div(ql).expect("same field");
    if (&det - &q.scale(&c)).is_zero() {
        Ok((true, Some(c)))
    } else {
        Ok((false, None))
    }
}

/// Decides freeness of `A` from the minimal generators of `D(A)`.
///
/// `D(A)` has rank `ℓ` and is reflexive, so it is free exactly when `ℓ`
/// homogeneous elements generate it. A free verdict is always backed by a
/// passing Saito check.
pub fn is_free(a: &Arrangement) -> Result<FreenessReport, LogDerError> {
    let l = a.dim();
    let module = derivation_module(a)?;
    let mins = minimal_generators(&module)?;
    let generator_degrees: Vec<u32> = mins.iter().map(|(_, d)| *d).collect();
    let generator_count = mins.len();
    if generator_count != l {
        return Ok(FreenessReport {
            free: false,
            exponents: None,
            basis: None,
            saito_constant: None,
            generator_count,
            generator_degrees,
        });
    }
    let basis: Vec<Derivation> = mins.into_iter().map(|(v, _)| Derivation::new(v)).collect();
    let (ok, c) = saito_check(&basis, a)?;
    if !ok {
        return Err(LogDerError::CertificateFailed);
    }
    Ok(FreenessReport {
        free: true,
        exponents: Some(generator_degrees.clone()),
        basis: Some(basis),
        saito_constant: c,
        generator_count,
        generator_degrees,
    })
}

/// `dim_K D(A)_p`, by exhaustive linear algebra and without Gröbner bases.
///
/// Unknowns are the coefficients of `θ = Σ_i Σ_m c_{m,i} m D_i` over the
/// monomials `m` of degree `p`. For each hyperplane, `θ(α)` must vanish on
/// `ker α`; parametrizing `ker α` by solving for the pivot variable turns this
/// into linear equations on the `c_{m,i}`.
pub fn degreewise_dim_oracle(a: &Arrangement, p: u32) -> usize {
    let l = a.dim();
    let monos = Monomial::all_of_degree(l, p);
    let unknowns = monos.len() * l;
    let mut ech = SparseEchelon::new();
    for h in a.hyperplanes() {
        let piv = h.pivot();
        let field = a.field();
        let images: Vec<MultiPoly> = (0..l)
            .map(|j| {
                if j == piv {
                    let mut c: Vec<CycloNum> = h.coeffs().iter().map(|x| -x).collect();
                    c[piv] = CycloNum::zero(field);
                    MultiPoly::linear(&c)
                } else {
                    MultiPoly::var(field, l, j)
                }
            })
            .collect();
        let mut rows: HashMap<Monomial, Vec<(usize, CycloNum)>> = HashMap::new();
        for (k, m) in monos.iter().enumerate() {
            let sub = MultiPoly::term(CycloNum::one(field), m.clone()).compose(&images, l);
            for (mu, val) in sub.terms() {
                for (i, ai) in h.coeffs().iter().enumerate() {
                    if ai.is_zero() {
                        continue;
                    }
                    rows.entry(mu.clone()).or_default().push((k * l + i, ai * val));
                }
            }
        }
        let mut keys: Vec<&Monomial> = rows.keys().collect();
        keys.sort_by(|a, b| b.grevlex_cmp(a));
        let keys: Vec<Monomial> = keys.into_iter().cloned().collect();
        for key in keys {
            let mut row = rows.remove(&key).unwrap();
            row.sort_by_key(|(c, _)| *c);
            ech.insert(row);
        }
    }
    unknowns - ech.rank()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Graded dimension of a free module with basis degrees `exponents` in
/// `ℓ` variables: `Σ_i C(p − b_i + ℓ − 1, ℓ − 1)` over `b_i ≤ p`.
pub fn hilbert_prediction(exponents: &[u32], l: usize, p: u32) -> u64 {
    if l == 0 {
        return 0;
    }
    exponents
        .iter()
        .filter(|&&b| b <= p)
        .map(|&b| binomial((p - b) as u64 + l as u64 - 1, l as u64 - 1))
        .sum()
}
