//! Hereditary and inductive freeness.
//!
//! Hereditary freeness restricts to every flat and decides each restriction
//! with [`is_free`]. Inductive freeness is a search over deletions guided by
//! the Addition–Deletion exponent pattern; its result is a chain that can be
//! replayed by [`chain_verify`].

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{
    intersection_lattice, poincare_poly, Arrangement, ArrangementKey, IntPoly, LinearForm, Subspace,
};
use crate::logderiv::{is_free, FreenessReport, LogDerError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreenessError {
    #[error("exponent multisets have sizes {0}, {1}, {2}; expected n, n, n-1")]
    SizeMismatch(usize, usize, usize),
    #[error("chain does not match the arrangement: {0}")]
    ChainMismatch(String),
    #[error("precondition failed: {0} is not free")]
    NotFree(&'static str),
    #[error("deletion freeness disagrees with the exponent criterion")]
    CrossCheckFailed,
    #[error("hyperplane index {0} out of range")]
    BadIndex(usize),
    #[error(transparent)]
    LogDer(#[from] LogDerError),
}

/// `sub ⊆ sup` as multisets; both sorted.
fn is_submultiset(sub: &[u32], sup: &[u32]) -> bool {
    let mut j = 0;
    for x in sub {
        while j < sup.len() && sup[j] < *x {
            j += 1;
        }
        if j == sup.len() || sup[j] != *x {
            return false;
        }
        j += 1;
    }
    true
}

fn sorted(v: &[u32]) -> Vec<u32> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// `sup ∖ sub` as multisets, if `sub ⊆ sup`.
fn multiset_difference(sup: &[u32], sub: &[u32]) -> Option<Vec<u32>> {
    let mut rest = sorted(sup);
    for x in sub {
        let i = rest.iter().position(|y| y == x)?;
        rest.remove(i);
    }
    Some(rest)
}

/// Exponents predicted by the Poincaré polynomial: its linear factors
/// `1 + b t`, padded with zeros to `dim` entries.
pub fn poincare_exponents(pi: &IntPoly, dim: usize) -> Option<Vec<u32>> {
    let bs = pi.factor_linear()?;
    if bs.len() > dim {
        return None;
    }
    let mut out = vec![0u32; dim - bs.len()];
    out.extend(bs.iter().map(|&b| b as u32));
    Some(out)
}

/// Whether `(exp A, exp A∖H, exp A^H)` has the form
/// `({b_1..b_{ℓ-1}, b}, {b_1..b_{ℓ-1}, b−1}, {b_1..b_{ℓ-1}})`.
pub fn addition_deletion_pattern(
    exp_a: &[u32],
    exp_del: &[u32],
    exp_res: &[u32],
) -> Result<bool, FreenessError> {
    if exp_a.len() != exp_del.len() || exp_res.len() + 1 != exp_a.len() {
        return Err(FreenessError::SizeMismatch(exp_a.len(), exp_del.len(), exp_res.len()));
    }
    let Some(b) = multiset_difference(exp_a, exp_res) else {
        return Ok(false);
    };
    let b = b[0];
    if b == 0 {
        return Ok(false);
    }
    let mut expect = exp_res.to_vec();
    expect.push(b - 1);
    Ok(sorted(&expect) == sorted(exp_del))
}

/// True iff `exp A^H` is not a sub-multiset of `exp A`, which blocks the
/// Addition–Deletion route through `H`.
pub fn exponent_obstruction(exp_a: &[u32], exp_res: &[u32]) -> bool {
    !is_submultiset(&sorted(exp_res), &sorted(exp_a))
}

/// Freeness data of one flat `X`, computed on the essentialized restriction.
#[derive(Clone, Debug)]
pub struct NodeReport {
    pub subspace: Subspace,
    pub rank: usize,
    pub restriction_size: usize,
    /// Essential rank at most 2: decided without computing `D(A^X)`.
    pub shortcut: bool,
    pub free: bool,
    /// Exponents of `A^X` in `dim X` coordinates (zeros included).
    pub exponents: Option<Vec<u32>>,
    pub poincare: IntPoly,
    /// `π(A^X, t) = ∏ (1 + b t)` over the positive exponents.
    pub factorization_consistent: bool,
    /// The essentialized restriction and its report, when computed.
    pub essential: Arrangement,
    pub report: Option<FreenessReport>,
}

#[derive(Serialize)]
struct NodeJson<'a> {
    subspace: String,
    rank: usize,
    restriction_size: usize,
    shortcut: bool,
    free: bool,
    exponents: &'a Option<Vec<u32>>,
    poincare: Vec<i64>,
    factorization_consistent: bool,
}

impl Serialize for NodeReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        NodeJson {
            subspace: self.subspace.key(),
            rank: self.rank,
            restriction_size: self.restriction_size,
            shortcut: self.shortcut,
            free: self.free,
            exponents: &self.exponents,
            poincare: self.poincare.coeffs().to_vec(),
            factorization_consistent: self.factorization_consistent,
        }
        .serialize(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HereditaryReport {
    pub hereditarily_free: bool,
    /// One entry per flat, sorted by the subspace key.
    pub nodes: Vec<NodeReport>,
}

fn rank_two_exponents(essential: &Arrangement, dim: usize) -> Vec<u32> {
    let m = essential.len() as u32;
    let mut out = vec![0u32; dim - essential.dim()];
    match essential.dim() {
        0 => {}
        1 => out.push(1),
        _ => out.extend([1, m - 1]),
    }
    out.sort_unstable();
    out
}

fn node_report(a: &Arrangement, x: &Subspace) -> Result<NodeReport, LogDerError> {
    let (res, _) = if x.rank() == 0 {
        (a.clone(), None)
    } else {
        let (r, m) = a.restrict(x).expect("lattice node");
        (r, Some(m))
    };
    let dim = res.dim();
    let (essential, _) = res.essentialize();
    let poincare = poincare_poly(&essential);
    let (shortcut, free, exponents, report) = if essential.dim() <= 2 {
        (true, true, Some(rank_two_exponents(&essential, dim)), None)
    } else {
        let r = is_free(&essential)?;
        let exps = r.exponents.as_ref().map(|e| {
            let mut v = vec![0u32; dim - essential.dim()];
            v.extend(e);
            v.sort_unstable();
            v
        });
        (false, r.free, exps, Some(r))
    };
    let factorization_consistent = match &exponents {
        Some(e) => {
            let pos: Vec<i64> = e.iter().filter(|&&b| b > 0).map(|&b| b as i64).collect();
            IntPoly::from_linear_factors(&pos) == poincare
        }
        None => true,
    };
    Ok(NodeReport {
        subspace: x.clone(),
        rank: x.rank(),
        restriction_size: res.len(),
        shortcut,
        free,
        exponents,
        poincare,
        factorization_consistent,
        essential,
        report,
    })
}

/// Decides freeness of `A^X` for every flat `X ∈ L(A)`.
///
/// With the `parallel` feature the flats are processed on the current rayon
/// pool. Output order does not depend on scheduling.
pub fn is_hereditarily_free(a: &Arrangement) -> Result<HereditaryReport, FreenessError> {
    let lat = intersection_lattice(a);
    let flats: Vec<&Subspace> = lat.nodes().iter().collect();
    #[cfg(feature = "parallel")]
    let results: Vec<Result<NodeReport, LogDerError>> = {
        use rayon::prelude::*;
        flats.par_iter().map(|x| node_report(a, x)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<NodeReport, LogDerError>> =
        flats.iter().map(|x| node_report(a, x)).collect();
    let mut nodes = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    nodes.sort_by_cached_key(|n| (n.rank, n.subspace.key()));
    Ok(HereditaryReport {
        hereditarily_free: nodes.iter().all(|n| n.free),
        nodes,
    })
}

/// Runs `f` on a rayon pool with `jobs` workers (`0` means the default).
#[cfg(feature = "parallel")]
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_jobs<T: Send>(_jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    f()
}

/// A chain `∅ = A_0 ⊂ A_1 ⊂ … ⊂ A_N = A` adding one hyperplane at a time.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductiveChain {
    /// Indices into the arrangement's hyperplane list, in insertion order.
    pub ordering: Vec<usize>,
    /// `exp A_i` for `i = 0..=N`.
    pub step_exponents: Vec<Vec<u32>>,
    /// `exp A_i^{H_i}` for `i = 1..=N`.
    pub restriction_exponents: Vec<Vec<u32>>,
}

impl InductiveChain {
    pub fn final_exponents(&self) -> &[u32] {
        self.step_exponents.last().expect("A_0 is always present")
    }
}

#[derive(Clone)]
struct MemoEntry {
    exponents: Vec<u32>,
    /// The last hyperplane of the chain, with the restriction's exponents.
    last: Option<(LinearForm, Vec<u32>)>,
}

/// Memoized search over deletions, keyed by the canonical hyperplane set.
#[derive(Default)]
pub struct InductiveSearch {
    memo: HashMap<ArrangementKey, Option<MemoEntry>>,
    use_memo: bool,
}

impl InductiveSearch {
    pub fn new() -> Self {
        InductiveSearch {
            memo: HashMap::new(),
            use_memo: true,
        }
    }

    /// Same search without the memo table; exponential, for cross-checks.
    pub fn without_memo() -> Self {
        InductiveSearch {
            memo: HashMap::new(),
            use_memo: false,
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Exponents of `A` if it is inductively free.
    pub fn exponents(&mut self, a: &Arrangement) -> Option<Vec<u32>> {
        self.entry(a).map(|e| e.exponents)
    }

    fn entry(&mut self, a: &Arrangement) -> Option<MemoEntry> {
        let key = a.key();
        if self.use_memo {
            if let Some(hit) = self.memo.get(&key) {
                return hit.clone();
            }
        }
        let result = self.search(a);
        if self.use_memo {
            self.memo.insert(key, result.clone());
        }
        result
    }

    fn search(&mut self, a: &Arrangement) -> Option<MemoEntry> {
        let l = a.dim();
        if a.is_empty() {
            return Some(MemoEntry {
                exponents: vec![0; l],
                last: None,
            });
        }
        // a free arrangement has π(A, t) = ∏ (1 + b_i t)
        let predicted = poincare_exponents(&poincare_poly(a), l)?;
        let mut candidates: Vec<(usize, Arrangement)> = (0..a.len())
            .map(|i| (i, a.restrict_to_hyperplane(i).0))
            .collect();
        candidates.sort_by_key(|(i, r)| (r.len(), *i));
        for (i, res) in candidates {
            let res_pred = match poincare_exponents(&poincare_poly(&res), l - 1) {
                Some(e) => e,
                None => continue,
            };
            if exponent_obstruction(&predicted, &res_pred) {
                continue;
            }
            let Some(res_exp) = self.exponents(&res) else {
                continue;
            };
            let del = a.delete_index(i);
            let Some(del_exp) = self.exponents(&del) else {
                continue;
            };
            let Some(rest) = multiset_difference(&del_exp, &res_exp) else {
                continue;
            };
            let mut exponents = res_exp.clone();
            exponents.push(rest[0] + 1);
            exponents.sort_unstable();
            return Some(MemoEntry {
                exponents,
                last: Some((a.hyperplane(i).clone(), res_exp)),
            });
        }
        None
    }

    /// A verifiable chain for `A`, or `None` when no deletion sequence works.
    pub fn chain(&mut self, a: &Arrangement) -> Option<InductiveChain> {
        let mut ordering = Vec::new();
        let mut step_exponents = Vec::new();
        let mut restriction_exponents = Vec::new();
        let mut cur = a.clone();
        loop {
            let e = self.entry(&cur)?;
            step_exponents.push(e.exponents);
            match e.last {
                None => break,
                Some((h, res)) => {
                    ordering.push(a.index_of(&h).expect("subarrangement of A"));
                    restriction_exponents.push(res);
                    cur = cur.delete(&h).expect("present");
                }
            }
        }
        ordering.reverse();
        step_exponents.reverse();
        restriction_exponents.reverse();
        Some(InductiveChain {
            ordering,
            step_exponents,
            restriction_exponents,
        })
    }
}

/// Depth-first search for an inductive chain. Candidate hyperplanes are tried
/// by increasing restriction size; arrangements whose Poincaré polynomial
/// does not factor, and restrictions blocked by [`exponent_obstruction`],
/// are pruned.
pub fn is_inductively_free(a: &Arrangement) -> Option<InductiveChain> {
    InductiveSearch::new().chain(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Exponent patterns, plus agreement of every claimed exponent multiset
    /// with the Poincaré polynomial.
    Fast,
    /// Additionally recomputes `D(A_i)` and `D(A_i^{H_i})` at every step.
    Audit,
}

fn matches_poincare(a: &Arrangement, exps: &[u32]) -> bool {
    poincare_exponents(&poincare_poly(a), a.dim()).is_some_and(|p| p == sorted(exps))
}

fn free_with(a: &Arrangement, exps: &[u32]) -> Result<bool, FreenessError> {
    let r = is_free(a)?;
    Ok(r.exponents.is_some_and(|e| e == sorted(exps)))
}

/// Replays a chain against `A`.
pub fn chain_verify(
    a: &Arrangement,
    chain: &InductiveChain,
    mode: VerifyMode,
) -> Result<bool, FreenessError> {
    let n = a.len();
    let mut seen = vec![false; n];
    for &i in &chain.ordering {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(FreenessError::ChainMismatch(format!("bad or repeated index {i}")));
        }
    }
    if chain.ordering.len() != n
        || chain.step_exponents.len() != n + 1
        || chain.restriction_exponents.len() != n
    {
        return Err(FreenessError::ChainMismatch("length mismatch".into()));
    }
    let l = a.dim();
    if chain.step_exponents[0] != vec![0; l] {
        return Ok(false);
    }
    for k in 1..=n {
        let exp_a = &chain.step_exponents[k];
        let exp_del = &chain.step_exponents[k - 1];
        let exp_res = &chain.restriction_exponents[k - 1];
        if exp_a.len() != l || exp_res.len() + 1 != l {
            return Ok(false);
        }
        if !addition_deletion_pattern(exp_a, exp_del, exp_res)? {
            return Ok(false);
        }
        let prefix = a.subarrangement(&chain.ordering[..k]);
        let (res, _) = prefix.restrict_to_hyperplane(k - 1);
        if !matches_poincare(&prefix, exp_a) || !matches_poincare(&res, exp_res) {
            return Ok(false);
        }
        if mode == VerifyMode::Audit && !(free_with(&prefix, exp_a)? && free_with(&res, exp_res)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Freeness of `A∖{H}` for free `A` with free `A^H`.
///
/// Decided by computing `D(A∖{H})` directly, and cross-checked against the
/// Addition–Deletion criterion: `A∖{H}` is free iff `exp A^H ⊆ exp A`.
pub fn deletion_free_via_q(a: &Arrangement, h: usize) -> Result<bool, FreenessError> {
    if h >= a.len() {
        return Err(FreenessError::BadIndex(h));
    }
    let ra = is_free(a)?;
    let Some(exp_a) = ra.exponents else {
        return Err(FreenessError::NotFree("A"));
    };
    let (res, _) = a.restrict_to_hyperplane(h);
    let Some(exp_res) = is_free(&res)?.exponents else {
        return Err(FreenessError::NotFree("A^H"));
    };
    let del = is_free(&a.delete_index(h))?;
    if del.free == exponent_obstruction(&exp_a, &exp_res) {
        return Err(FreenessError::CrossCheckFailed);
    }
    Ok(del.free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{braid, monomial};
    use crate::exactnum::CycloField;

    fn boolean(l: usize) -> Arrangement {
        let q = CycloField::rationals();
        let rows: Vec<Vec<i64>> = (0..l)
            .map(|i| (0..l).map(|j| i64::from(i == j)).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        Arrangement::from_int_rows(&q, l, &refs).unwrap()
    }

    fn generic4() -> Arrangement {
        let q = CycloField::rationals();
        Arrangement::from_int_rows(&q, 3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap()
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(addition_deletion_pattern(&[1, 1], &[0, 1], &[1]), Ok(true));
        assert_eq!(addition_deletion_pattern(&[0, 1, 2], &[0, 1, 1], &[0, 1]), Ok(true));
        assert_eq!(addition_deletion_pattern(&[1, 3], &[1, 1], &[1]), Ok(false));
        assert!(addition_deletion_pattern(&[1, 3], &[1], &[1]).is_err());
    }

    #[test]
    fn pattern_matches_braid3_deletion() {
        let a = braid(3).unwrap();
        let del = is_free(&a.delete_index(2)).unwrap().exponents.unwrap();
        let res = is_free(&a.restrict_to_hyperplane(2).0).unwrap().exponents.unwrap();
        assert_eq!(del, vec![0, 1, 1]);
        assert_eq!(addition_deletion_pattern(&[0, 1, 2], &del, &res), Ok(true));
    }

    #[test]
    fn obstruction_examples() {
        assert!(exponent_obstruction(&[1, 3, 5], &[1, 4]));
        assert!(!exponent_obstruction(&[0, 1, 2], &[0, 1]));
        assert!(!exponent_obstruction(&[2, 2, 7], &[7, 2]));
    }

    #[test]
    fn hereditary_examples() {
        let r = is_hereditarily_free(&boolean(3)).unwrap();
        assert!(r.hereditarily_free);
        assert_eq!(r.nodes.len(), 8);
        assert!(r.nodes.iter().all(|n| n.factorization_consistent));

        let r = is_hereditarily_free(&braid(4).unwrap()).unwrap();
        assert!(r.hereditarily_free);
        assert_eq!(r.nodes[0].exponents, Some(vec![0, 1, 2, 3]));
        assert!(!r.nodes[0].shortcut);

        assert!(is_hereditarily_free(&monomial(2, 1, 3).unwrap()).unwrap().hereditarily_free);
        assert!(!is_hereditarily_free(&generic4()).unwrap().hereditarily_free);
    }

    #[test]
    fn inductive_examples() {
        let b = boolean(3);
        let c = is_inductively_free(&b).unwrap();
        assert_eq!(c.final_exponents(), &[1, 1, 1]);
        assert_eq!(chain_verify(&b, &c, VerifyMode::Audit), Ok(true));

        let a = braid(4).unwrap();
        let c = is_inductively_free(&a).unwrap();
        assert_eq!(c.final_exponents(), &[0, 1, 2, 3]);
        assert_eq!(chain_verify(&a, &c, VerifyMode::Audit), Ok(true));

        let q = CycloField::rationals();
        let three = Arrangement::from_int_rows(&q, 2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let c = is_inductively_free(&three).unwrap();
        assert_eq!(c.final_exponents(), &[1, 2]);
        assert_eq!(chain_verify(&three, &c, VerifyMode::Audit), Ok(true));

        assert!(is_inductively_free(&generic4()).is_none());
    }

    #[test]
    fn chain_verify_rejects_tampering() {
        let a = boolean(3);
        let mut c = is_inductively_free(&a).unwrap();
        c.step_exponents.swap(1, 2);
        assert_eq!(chain_verify(&a, &c, VerifyMode::Fast), Ok(false));

        let e = Arrangement::empty(&CycloField::rationals(), 2);
        let empty = InductiveChain {
            ordering: vec![],
            step_exponents: vec![vec![0, 0]],
            restriction_exponents: vec![],
        };
        assert_eq!(chain_verify(&e, &empty, VerifyMode::Audit), Ok(true));
        assert!(chain_verify(&a, &empty, VerifyMode::Fast).is_err());
    }

    #[test]
    fn deletion_examples() {
        assert_eq!(deletion_free_via_q(&boolean(2), 0), Ok(true));
        let b3 = braid(3).unwrap();
        for h in 0..3 {
            assert_eq!(deletion_free_via_q(&b3, h), Ok(true));
        }
        assert_eq!(deletion_free_via_q(&generic4(), 0), Err(FreenessError::NotFree("A")));
    }
}
