use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use freearr::arrangement::{intersection_lattice, Arrangement, IntPoly};
use freearr::catalog::{self, FamilySpec};
use freearr::expr::parse_scalar;
use freearr::freeness::{self, chain_verify, is_hereditarily_free, InductiveSearch, VerifyMode};
use freearr::logderiv::{
    degreewise_dim_oracle, derivation_module, hilbert_prediction, is_free, saito_check, Derivation,
};
use freearr::polymod::minimal_generators;

/// Freeness of hyperplane arrangements over cyclotomic fields.
///
/// Arrangement files have the form `field <n>`, `dim <l>`, then one hyperplane
/// per line as whitespace-separated scalars (`3/2`, `1-2z+z^2`, ...). Lines
/// starting with `#` are comments. The path `-` reads standard input.
///
/// Exit status: 0 on success or a positive verdict, 1 on a negative verdict,
/// 2 on usage or input errors.
#[derive(Parser)]
#[command(name = "freearr", version)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for per-flat computations (0 = all cores).
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    jobs: usize,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Input {
    /// Arrangement file, or `-` for standard input.
    #[arg(value_name = "FILE")]
    file: Option<PathBuf>,

    /// Same as the positional FILE.
    #[arg(long = "input", value_name = "FILE", conflicts_with = "file")]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Braid,
    #[value(name = "coxeterB", alias = "B")]
    CoxeterB,
    #[value(name = "coxeterD", alias = "D")]
    CoxeterD,
    Monomial,
}

#[derive(Subcommand)]
enum Verb {
    /// Print an arrangement of a reflection group family.
    ///
    /// braid needs --n; coxeterB and coxeterD need --l; monomial G(r,p,l)
    /// needs --r, --p and --l.
    Catalog {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        l: Option<usize>,
    },
    /// Intersection lattice: flats by rank with Möbius values.
    Lattice(Input),
    /// Poincaré and characteristic polynomials, and their factorization.
    Charpoly(Input),
    /// Restriction to a flat, printed as an arrangement file.
    ///
    /// The flat is either hyperplane --hyperplane K (1-based) or the
    /// intersection of --forms "a b c; d e f".
    Restrict {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "K", conflicts_with = "forms")]
        hyperplane: Option<usize>,
        #[arg(long, value_name = "ROWS")]
        forms: Option<String>,
    },
    /// Minimal homogeneous generators of the logarithmic derivation module.
    Derivations(Input),
    /// Exponents, when the arrangement is free.
    Exponents(Input),
    /// Decide freeness; a free verdict comes with a Saito-certified basis.
    ///
    /// --certificate writes the basis file (`basis ℓ <l> field <n>`, then one
    /// derivation per line as comma-separated polynomials in x1..xl).
    Free {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        certificate: Option<PathBuf>,
    },
    /// Check a derivation basis file against an arrangement with Saito's criterion.
    Saito {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        basis: PathBuf,
    },
    /// Search for an inductive chain and replay it.
    ///
    /// --certificate writes the chain as JSON: hyperplane indices in insertion
    /// order (0-based) with the exponents of every prefix and restriction.
    Indfree {
        #[command(flatten)]
        input: Input,
        /// Recompute freeness of every prefix and restriction while replaying.
        #[arg(long)]
        audit: bool,
        #[arg(long, value_name = "PATH")]
        certificate: Option<PathBuf>,
    },
    /// Decide freeness of every restriction to a flat.
    ///
    /// --certificate writes the JSON report, keyed by flat.
    Heredfree {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        certificate: Option<PathBuf>,
    },
    /// Graded dimensions of the derivation module by direct linear algebra.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 4, value_name = "D")]
        max_degree: u32,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(String, bool), Failure>;

fn load(input: &Input) -> Result<Arrangement, Failure> {
    let path = input
        .file
        .as_ref()
        .or(input.input.as_ref())
        .ok_or_else(|| Failure("no input arrangement given (use FILE, --input FILE or -)".into()))?;
    let parsed = catalog::parse_arrangement_file(path)?;
    if parsed.duplicates > 0 {
        eprintln!("warning: {} proportional duplicate hyperplane(s) collapsed", parsed.duplicates);
    }
    Ok(parsed.arrangement)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn list(v: &[u32]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn factorization(pi: &IntPoly) -> String {
    match pi.factor_linear() {
        Some(bs) if bs.is_empty() => "1".into(),
        Some(bs) => bs.iter().map(|b| format!("(1 + {b}t)")).collect(),
        None => "does not factor into (1 + b t) with b > 0".into(),
    }
}

fn catalog_verb(family: Family, n: Option<usize>, r: Option<u32>, p: Option<u32>, l: Option<usize>) -> Outcome {
    let need = |name: &str| Failure(format!("--{name} is required for this family"));
    let spec = match family {
        Family::Braid => FamilySpec::Braid { n: n.ok_or_else(|| need("n"))? },
        Family::CoxeterB => FamilySpec::CoxeterB { l: l.ok_or_else(|| need("l"))? },
        Family::CoxeterD => FamilySpec::CoxeterD { l: l.ok_or_else(|| need("l"))? },
        Family::Monomial => FamilySpec::Monomial {
            r: r.ok_or_else(|| need("r"))?,
            p: p.ok_or_else(|| need("p"))?,
            l: l.ok_or_else(|| need("l"))?,
        },
    };
    let a = spec.build()?;
    Ok((format!("# {spec}\n{}", a.to_text()), true))
}

fn lattice_verb(a: &Arrangement, as_json: bool) -> Outcome {
    let lat = intersection_lattice(a);
    let mut order: Vec<usize> = (0..lat.len()).collect();
    order.sort_by_cached_key(|&i| (lat.rank_of(i), lat.node(i).key()));
    if as_json {
        let nodes: Vec<Value> = order
            .iter()
            .map(|&i| {
                json!({
                    "rank": lat.rank_of(i),
                    "subspace": lat.node(i).key(),
                    "mobius": lat.mobius(i),
                    "hyperplanes": lat.atoms(i),
                })
            })
            .collect();
        let whitney: Vec<usize> = (0..=lat.top_rank()).map(|r| lat.nodes_of_rank(r).len()).collect();
        return Ok((pretty(&json!({"nodes": nodes, "flats_per_rank": whitney})), true));
    }
    let mut out = String::new();
    for r in 0..=lat.top_rank() {
        writeln!(out, "rank {r}: {} flat(s)", lat.nodes_of_rank(r).len()).unwrap();
        for &i in order.iter().filter(|&&i| lat.rank_of(i) == r) {
            let atoms: Vec<String> = lat.atoms(i).iter().map(|h| (h + 1).to_string()).collect();
            writeln!(out, "  {}  mu={}  hyperplanes={{{}}}", lat.node(i), lat.mobius(i), atoms.join(",")).unwrap();
        }
    }
    Ok((out, true))
}

fn charpoly_verb(a: &Arrangement, as_json: bool) -> Outcome {
    let lat = intersection_lattice(a);
    let pi = lat.poincare();
    let chi = lat.characteristic();
    if as_json {
        let v = json!({
            "poincare": pi.coeffs(),
            "characteristic": chi.coeffs(),
            "roots": pi.factor_linear(),
        });
        return Ok((pretty(&v), true));
    }
    Ok((
        format!(
            "poincare: {pi}\ncharacteristic: {chi}\nfactorization: {}\n",
            factorization(&pi)
        ),
        true,
    ))
}

fn restrict_verb(a: &Arrangement, hyperplane: Option<usize>, forms: Option<&str>, as_json: bool) -> Outcome {
    let (res, map) = match (hyperplane, forms) {
        (Some(k), _) => {
            if k == 0 || k > a.len() {
                return Err(Failure(format!("--hyperplane must be in 1..={}", a.len())));
            }
            a.restrict_to_hyperplane(k - 1)
        }
        (None, Some(rows)) => {
            let forms = rows
                .split(';')
                .map(|row| {
                    row.split_whitespace()
                        .map(|t| parse_scalar(t, a.field()))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(bad) = forms.iter().find(|f| f.len() != a.dim()) {
                return Err(Failure(format!("form has {} entries, expected {}", bad.len(), a.dim())));
            }
            a.restrict(&a.subspace(forms))?
        }
        (None, None) => return Err(Failure("give --hyperplane K or --forms ROWS".into())),
    };
    if as_json {
        let v = json!({
            "size": res.len(),
            "arrangement": res.to_text(),
            "coordinates": map.describe(),
        });
        return Ok((pretty(&v), true));
    }
    let mut out = String::new();
    for line in map.describe() {
        writeln!(out, "# {line}").unwrap();
    }
    out.push_str(&res.to_text());
    Ok((out, true))
}

fn derivation_json(d: &Derivation) -> Value {
    json!({
        "degree": d.pdeg(),
        "coefficients": d.vec().comps().iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn derivations_verb(a: &Arrangement, as_json: bool) -> Outcome {
    let module = derivation_module(a)?;
    let gens = minimal_generators(&module)?;
    let ders: Vec<Derivation> = gens.into_iter().map(|(v, _)| Derivation::new(v)).collect();
    if as_json {
        let v = json!({
            "generators": ders.iter().map(derivation_json).collect::<Vec<_>>(),
        });
        return Ok((pretty(&v), true));
    }
    let mut out = format!("{} minimal generator(s)\n", ders.len());
    for d in &ders {
        writeln!(out, "  deg {}: {}", d.pdeg().unwrap_or(0), d.to_line()).unwrap();
    }
    Ok((out, true))
}

fn exponents_verb(a: &Arrangement, as_json: bool) -> Outcome {
    let r = is_free(a)?;
    if as_json {
        return Ok((pretty(&json!({"free": r.free, "exponents": r.exponents})), true));
    }
    let text = match &r.exponents {
        Some(e) => format!("exponents: {}\n", list(e)),
        None => format!("not free: {} minimal generators\n", r.generator_count),
    };
    Ok((text, true))
}

fn free_verb(a: &Arrangement, certificate: Option<&Path>, as_json: bool) -> Outcome {
    let r = is_free(a)?;
    if let (Some(path), Some(basis)) = (certificate, &r.basis) {
        write_file(path, &catalog::write_basis_text(a.field(), a.dim(), basis))?;
    }
    if as_json {
        return Ok((pretty(&serde_json::to_value(&r)?), r.free));
    }
    let mut out = String::new();
    if let (Some(e), Some(basis), Some(c)) = (&r.exponents, &r.basis, &r.saito_constant) {
        writeln!(out, "free: yes").unwrap();
        writeln!(out, "exponents: {}", list(e)).unwrap();
        writeln!(out, "saito constant: {c}").unwrap();
        writeln!(out, "basis:").unwrap();
        for d in basis {
            writeln!(out, "  deg {}: {}", d.pdeg().unwrap_or(0), d.to_line()).unwrap();
        }
    } else {
        writeln!(out, "free: no").unwrap();
        writeln!(
            out,
            "minimal generators: {} (degrees {})",
            r.generator_count,
            list(&r.generator_degrees)
        )
        .unwrap();
    }
    Ok((out, r.free))
}

fn saito_verb(a: &Arrangement, basis: &Path, as_json: bool) -> Outcome {
    let (field, ders) = catalog::parse_basis_file(basis)?;
    if field.conductor() != a.field().conductor() {
        return Err(Failure(format!(
            "basis is over field {}, arrangement over field {}",
            field.conductor(),
            a.field().conductor()
        )));
    }
    let (ok, constant, reason) = match saito_check(&ders, a) {
        Ok((ok, c)) => (ok, c, None),
        Err(e) => (false, None, Some(e.to_string())),
    };
    if as_json {
        let v = json!({
            "accepted": ok,
            "saito_constant": constant.as_ref().map(ToString::to_string),
            "reason": reason,
        });
        return Ok((pretty(&v), ok));
    }
    let text = match (constant, reason) {
        (Some(c), _) if ok => format!("accepted: det M = c * Q with c = {c}\n"),
        (_, Some(why)) => format!("rejected: {why}\n"),
        _ => "rejected: not a basis of D(A)\n".to_string(),
    };
    Ok((text, ok))
}

fn indfree_verb(a: &Arrangement, audit: bool, certificate: Option<&Path>, as_json: bool) -> Outcome {
    let mut search = InductiveSearch::new();
    let Some(chain) = search.chain(a) else {
        if as_json {
            return Ok((pretty(&json!({"inductively_free": false})), false));
        }
        return Ok(("inductively free: no\n".into(), false));
    };
    let mode = if audit { VerifyMode::Audit } else { VerifyMode::Fast };
    if !chain_verify(a, &chain, mode)? {
        return Err(Failure("internal error: the chain found does not verify".into()));
    }
    let hyperplanes: Vec<String> = chain
        .ordering
        .iter()
        .map(|&i| a.hyperplane(i).to_row_string())
        .collect();
    let report = json!({
        "inductively_free": true,
        "verified": if audit { "audit" } else { "fast" },
        "chain": serde_json::to_value(&chain)?,
        "hyperplanes": hyperplanes,
    });
    if let Some(path) = certificate {
        write_file(path, &pretty(&report))?;
    }
    if as_json {
        return Ok((pretty(&report), true));
    }
    let mut out = String::new();
    writeln!(out, "inductively free: yes").unwrap();
    writeln!(out, "exponents: {}", list(chain.final_exponents())).unwrap();
    writeln!(out, "chain ({} replay):", if audit { "audit" } else { "fast" }).unwrap();
    for (k, h) in hyperplanes.iter().enumerate() {
        writeln!(
            out,
            "  {:>3}. [{h}]  exp {{{}}}  restriction {{{}}}",
            k + 1,
            list(&chain.step_exponents[k + 1]),
            list(&chain.restriction_exponents[k])
        )
        .unwrap();
    }
    Ok((out, true))
}

fn heredfree_verb(a: &Arrangement, certificate: Option<&Path>, as_json: bool) -> Outcome {
    let report = is_hereditarily_free(a)?;
    let v = serde_json::to_value(&report)?;
    if let Some(path) = certificate {
        write_file(path, &pretty(&v))?;
    }
    let ok = report.hereditarily_free;
    if as_json {
        return Ok((pretty(&v), ok));
    }
    let mut out = format!("hereditarily free: {}\n", if ok { "yes" } else { "no" });
    for n in &report.nodes {
        let exps = n.exponents.as_deref().map_or("not free".to_string(), |e| format!("exp {{{}}}", list(e)));
        let how = if n.shortcut { "  (rank <= 2)" } else { "" };
        writeln!(out, "  rank {} {}  |A^X|={}  {exps}{how}", n.rank, n.subspace, n.restriction_size).unwrap();
    }
    Ok((out, ok))
}

fn oracle_verb(a: &Arrangement, max_degree: u32, as_json: bool) -> Outcome {
    let r = is_free(a)?;
    let mut rows = Vec::new();
    let mut agree = true;
    for p in 0..=max_degree {
        let dim = degreewise_dim_oracle(a, p);
        let predicted = r.exponents.as_ref().map(|e| hilbert_prediction(e, a.dim(), p));
        if predicted.is_some_and(|q| q != dim as u64) {
            agree = false;
        }
        rows.push((p, dim, predicted));
    }
    if as_json {
        let v = json!({
            "free": r.free,
            "exponents": r.exponents,
            "degrees": rows
                .iter()
                .map(|(p, d, q)| json!({"degree": p, "dimension": d, "predicted": q}))
                .collect::<Vec<_>>(),
            "agree": agree,
        });
        return Ok((pretty(&v), agree));
    }
    let mut out = String::from("degree  dim D(A)_p  predicted\n");
    for (p, d, q) in rows {
        let q = q.map_or("-".to_string(), |q| q.to_string());
        writeln!(out, "{p:>6}  {d:>11}  {q:>9}").unwrap();
    }
    if r.free {
        writeln!(out, "{}", if agree { "agrees with the exponents" } else { "DISAGREES" }).unwrap();
    }
    Ok((out, agree))
}

fn run(cli: Cli) -> Outcome {
    let j = cli.json;
    match &cli.verb {
        Verb::Catalog { family, n, r, p, l } => catalog_verb(*family, *n, *r, *p, *l),
        Verb::Lattice(i) => lattice_verb(&load(i)?, j),
        Verb::Charpoly(i) => charpoly_verb(&load(i)?, j),
        Verb::Restrict { input, hyperplane, forms } => {
            restrict_verb(&load(input)?, *hyperplane, forms.as_deref(), j)
        }
        Verb::Derivations(i) => derivations_verb(&load(i)?, j),
        Verb::Exponents(i) => exponents_verb(&load(i)?, j),
        Verb::Free { input, certificate } => free_verb(&load(input)?, certificate.as_deref(), j),
        Verb::Saito { input, basis } => saito_verb(&load(input)?, basis, j),
        Verb::Indfree { input, audit, certificate } => {
            indfree_verb(&load(input)?, *audit, certificate.as_deref(), j)
        }
        Verb::Heredfree { input, certificate } => {
            heredfree_verb(&load(input)?, certificate.as_deref(), j)
        }
        Verb::Oracle { input, max_degree } => oracle_verb(&load(input)?, *max_degree, j),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs;
    match freeness::with_jobs(jobs, || run(cli)) {
        Ok((text, verdict)) => {
            print!("{text}");
            if verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
