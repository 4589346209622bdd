//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use freearr::arrangement::{poincare_poly, Arrangement, IntPoly};
use freearr::catalog::{braid, monomial};
use freearr::exactnum::CycloNum;
use freearr::freeness::{chain_verify, is_hereditarily_free, is_inductively_free, VerifyMode};
use freearr::logderiv::{
    degreewise_dim_oracle, euler_derivation, hilbert_prediction, is_free, membership_test,
    saito_check, Derivation,
};
use freearr::polymod::{ModVec, MultiPoly};
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Exponents of a free module read off its graded dimensions: the number of
/// basis elements in degree `p` is whatever `dim D(A)_p` is not yet explained
/// by lower-degree basis elements.
fn exponents_from_oracle(a: &Arrangement, max_p: u32) -> Vec<u32> {
    let l = a.dim();
    let mut exps = Vec::new();
    for p in 0..=max_p {
        let extra = degreewise_dim_oracle(a, p) as u64 - hilbert_prediction(&exps, l, p);
        exps.extend(std::iter::repeat_n(p, extra as usize));
        if exps.len() >= l {
            break;
        }
    }
    exps
}

fn braids() -> Vec<(String, Arrangement)> {
    (2..=5).map(|n| (format!("braid({n})"), braid(n).unwrap())).collect()
}

fn monomials() -> Vec<(String, Arrangement)> {
    let mut out = Vec::new();
    for r in 1..=4u32 {
        let mut ps = vec![1, r];
        ps.dedup();
        for p in ps {
            for l in [2, 3] {
                out.push((format!("G({r},{p},{l})"), monomial(r, p, l).unwrap()));
            }
        }
    }
    out
}

fn criterion_1() -> Check {
    for (name, a) in braids() {
        let n = a.dim() as u32;
        let expected: Vec<u32> = (0..n).collect();
        let r = is_free(&a).map_err(|e| e.to_string())?;
        ensure(r.exponents.as_ref() == Some(&expected), || {
            format!("{name}: exponents {:?}", r.exponents)
        })?;
        let oracle = exponents_from_oracle(&a, n);
        ensure(oracle == expected, || format!("{name}: oracle reads {oracle:?}"))?;
    }
    Ok("braid(2..5) have exponents {0..n-1}, matched by the degreewise oracle".into())
}

fn criterion_2() -> Check {
    let cases = monomials();
    for (name, a) in &cases {
        let r = is_free(a).map_err(|e| e.to_string())?;
        let exps = r.exponents.ok_or_else(|| format!("{name}: not free"))?;
        let sum: u32 = exps.iter().sum();
        ensure(sum as usize == a.len(), || format!("{name}: sum {sum} vs |A| = {}", a.len()))?;
    }
    Ok(format!("{} monomial arrangements free with sum(exp) = |A|", cases.len()))
}

fn criterion_3() -> Check {
    let all: Vec<_> = braids().into_iter().chain(monomials()).collect();
    for (name, a) in &all {
        let exps = is_free(a).map_err(|e| e.to_string())?.exponents.ok_or(format!("{name}: not free"))?;
        let pos: Vec<i64> = exps.iter().filter(|&&b| b > 0).map(|&b| b as i64).collect();
        let (ess, _) = a.essentialize();
        let pi = poincare_poly(&ess);
        ensure(pi == IntPoly::from_linear_factors(&pos), || format!("{name}: pi = {pi}"))?;
    }
    Ok(format!("pi(ess A, t) = prod(1 + b t) for all {} arrangements", all.len()))
}

fn hereditary_cases() -> Vec<(String, Arrangement)> {
    vec![
        ("braid(4)".into(), braid(4).unwrap()),
        ("braid(5)".into(), braid(5).unwrap()),
        ("G(2,1,3)".into(), monomial(2, 1, 3).unwrap()),
        ("G(3,3,3)".into(), monomial(3, 3, 3).unwrap()),
    ]
}

fn criterion_4() -> Check {
    let mut flats = 0;
    for (name, a) in hereditary_cases() {
        let rep = is_hereditarily_free(&a).map_err(|e| e.to_string())?;
        ensure(rep.hereditarily_free, || format!("{name}: not hereditarily free"))?;
        for n in &rep.nodes {
            ensure(n.factorization_consistent, || {
                format!("{name}: flat {} has exponents {:?} but pi = {}", n.subspace, n.exponents, n.poincare)
            })?;
        }
        flats += rep.nodes.len();
    }
    Ok(format!("4 arrangements hereditarily free, {flats} flats consistent"))
}

fn criterion_5() -> Check {
    for (name, a) in [("braid(4)", braid(4).unwrap()), ("G(2,1,3)", monomial(2, 1, 3).unwrap())] {
        let chain = is_inductively_free(&a).ok_or(format!("{name}: no chain"))?;
        let ok = chain_verify(&a, &chain, VerifyMode::Audit).map_err(|e| e.to_string())?;
        ensure(ok, || format!("{name}: audit replay rejected the chain"))?;
    }
    Ok("chains for braid(4) and G(2,1,3) pass audit replay".into())
}

fn criterion_6() -> Check {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut free = 0;
    for k in 0..20 {
        let f = common::field(if k % 2 == 0 { 1 } else { 3 });
        let m = rng.gen_range(3..=6);
        let a = common::random_arrangement(&mut rng, &f, 3, m);
        ensure(membership_test(&euler_derivation(&f, 3), &a), || format!("#{k}: theta_E not in D(A)"))?;
        let r = is_free(&a).map_err(|e| e.to_string())?;
        if let Some(exps) = &r.exponents {
            free += 1;
            for p in 0..=6 {
                let (o, h) = (degreewise_dim_oracle(&a, p) as u64, hilbert_prediction(exps, 3, p));
                ensure(o == h, || format!("#{k}: degree {p}: oracle {o}, predicted {h}"))?;
            }
        }
    }
    Ok(format!("20 random arrangements ({free} free) agree for p <= 6"))
}

fn nonmember(a: &Arrangement) -> Derivation {
    let f = a.field();
    let l = a.dim();
    // ∂/∂x_i fails on any hyperplane involving x_i
    let i = a.hyperplane(0).pivot();
    let d = Derivation::new(ModVec::unit(f, l, l, i));
    assert!(!membership_test(&d, a));
    d
}

fn saito_round(name: &str, a: &Arrangement, basis: &[Derivation]) -> Result<(), String> {
    let l = a.dim();
    let (ok, _) = saito_check(basis, a).map_err(|e| format!("{name}: {e}"))?;
    ensure(ok, || format!("{name}: emitted basis rejected"))?;

    let theta = euler_derivation(a.field(), l);
    let mut dup = basis.to_vec();
    dup[0] = theta.clone();
    dup[l - 1] = theta;
    let mut times_x = basis.to_vec();
    times_x[l - 1] = Derivation::new(basis[l - 1].vec().mul_poly(&MultiPoly::var(a.field(), l, 0)));
    let mut foreign = basis.to_vec();
    foreign[l - 1] = nonmember(a);
    for (what, bad) in [("theta_E duplicate", dup), ("times x1", times_x), ("non-member", foreign)] {
        let accepted = saito_check(&bad, a).map(|(ok, _)| ok).unwrap_or(false);
        ensure(!accepted, || format!("{name}: accepted corruption `{what}`"))?;
    }
    Ok(())
}

fn criterion_7() -> Check {
    let mut checked = 0;
    for (name, a) in braids().into_iter().chain(monomials()) {
        let r = is_free(&a).map_err(|e| e.to_string())?;
        saito_round(&name, &a, r.basis.as_ref().ok_or(format!("{name}: no basis"))?)?;
        checked += 1;
    }
    for (name, a) in hereditary_cases() {
        let rep = is_hereditarily_free(&a).map_err(|e| e.to_string())?;
        for n in rep.nodes.iter().filter(|n| n.report.is_some()) {
            let basis = n.report.as_ref().and_then(|r| r.basis.as_ref()).ok_or("missing basis")?;
            saito_round(&format!("{name} at {}", n.subspace), &n.essential, basis)?;
            checked += 1;
        }
    }
    Ok(format!("{checked} bases accepted, 3 corruptions of each rejected"))
}

fn criterion_8() -> Check {
    let b3 = braid(3).unwrap();
    for h in 0..b3.len() {
        let n = b3.restrict_to_hyperplane(h).0.len();
        ensure(n == 1, || format!("braid(3)^H has {n} hyperplanes"))?;
    }
    let b4 = braid(4).unwrap();
    let q = b4.field();
    let x = b4.subspace(vec![[1, -1, 0, 0].iter().map(|&c| CycloNum::from_i64(q, c)).collect()]);
    let n = b4.restrict(&x).map_err(|e| e.to_string())?.0.len();
    ensure(n == 3, || format!("braid(4) restricted to x1 = x2 has {n} hyperplanes"))?;
    let mut pairs = 0;
    for (name, a) in braids().into_iter().chain(monomials()) {
        let pi = poincare_poly(&a);
        for h in 0..a.len() {
            let del = poincare_poly(&a.delete_index(h));
            let res = poincare_poly(&a.restrict_to_hyperplane(h).0);
            ensure(pi == del.add(&res.shift()), || format!("{name}, H #{h}: recursion fails"))?;
            pairs += 1;
        }
    }
    Ok(format!("collapse counts 1 and 3; recursion holds for {pairs} (A, H) pairs"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("braid exponents", criterion_1),
        ("monomial family", criterion_2),
        ("Poincare factorization", criterion_3),
        ("hereditary freeness", criterion_4),
        ("inductive freeness", criterion_5),
        ("oracle equivalence", criterion_6),
        ("Saito certification", criterion_7),
        ("restriction collapse", criterion_8),
    ];
    let mut failed = 0;
    let mut out = std::io::stdout();
    for (i, (title, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        writeln!(out, "criterion {} {tag} {title}: {detail} ({secs:.2}s)", i + 1).unwrap();
    }
    writeln!(out, "acceptance: {} passed, {failed} failed", criteria.len() - failed).unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
