//! Reflection arrangements of the infinite families, and the text formats
//! for reading arrangements and derivation bases from files.

use std::fmt;
use std::io::Read;
use std::path::Path;

use thiserror::Error;

use crate::arrangement::{ArrError, Arrangement, LinearForm};
use crate::exactnum::{CycloField, CycloNum, FieldRef};
use crate::expr::{parse_poly, parse_scalar};
use crate::logderiv::Derivation;
use crate::polymod::ModVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("p = {p} does not divide r = {r}")]
    BadDivisor { r: u32, p: u32 },
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
}

fn perr(line: usize, msg: impl Into<String>) -> CatalogError {
    CatalogError::Parse {
        line,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Braid { n: usize },
    CoxeterB { l: usize },
    CoxeterD { l: usize },
    Monomial { r: u32, p: u32, l: usize },
}

impl FamilySpec {
    pub fn build(self) -> Result<Arrangement, CatalogError> {
        match self {
            FamilySpec::Braid { n } => braid(n),
            FamilySpec::CoxeterB { l } => coxeter_b(l),
            FamilySpec::CoxeterD { l } => coxeter_d(l),
            FamilySpec::Monomial { r, p, l } => monomial(r, p, l),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Braid { n } => write!(f, "braid({n})"),
            FamilySpec::CoxeterB { l } => write!(f, "B{l}"),
            FamilySpec::CoxeterD { l } => write!(f, "D{l}"),
            FamilySpec::Monomial { r, p, l } => write!(f, "G({r},{p},{l})"),
        }
    }
}

/// The braid arrangement `x_i − x_j` (`i < j`) in `Q^n`.
pub fn braid(n: usize) -> Result<Arrangement, CatalogError> {
    if n == 0 {
        return Err(CatalogError::BadParameter("braid needs n >= 1".into()));
    }
    Ok(monomial_forms(&CycloField::rationals(), 1, n, false))
}

// ζ_r^k; over Q only r ≤ 2 occurs, where ζ_2 = −1
fn root_of_unity(field: &FieldRef, r: u32, k: u32) -> CycloNum {
    if field.conductor() == r {
        CycloNum::zeta_pow(field, k as i64)
    } else {
        debug_assert!(r <= 2);
        CycloNum::from_i64(field, if k.is_multiple_of(2) { 1 } else { -1 })
    }
}

fn monomial_forms(field: &FieldRef, r: u32, l: usize, coords: bool) -> Arrangement {
    let mut forms = Vec::new();
    if coords {
        for i in 0..l {
            let mut v = vec![CycloNum::zero(field); l];
            v[i] = CycloNum::one(field);
            forms.push(v);
        }
    }
    for i in 0..l {
        for j in i + 1..l {
            for k in 0..r {
                let mut v = vec![CycloNum::zero(field); l];
                v[i] = CycloNum::one(field);
                v[j] = -root_of_unity(field, r, k);
                forms.push(v);
            }
        }
    }
    Arrangement::new(field, l, forms).expect("nonzero forms of length l")
}

/// Arrangement of the monomial group `G(r, p, ℓ)`: `x_i − ζ_r^k x_j` for
/// `i < j` and `0 ≤ k < r`, plus the coordinate hyperplanes when `p < r`.
///
/// The field is `Q(ζ_r)`, or `Q` when `r ≤ 2`. For `1 < p < r` this is the
/// arrangement of `G(r, 1, ℓ)`.
pub fn monomial(r: u32, p: u32, l: usize) -> Result<Arrangement, CatalogError> {
    if r == 0 || p == 0 || l == 0 {
        return Err(CatalogError::BadParameter("monomial needs r, p, l >= 1".into()));
    }
    if !r.is_multiple_of(p) {
        return Err(CatalogError::BadDivisor { r, p });
    }
    let field = if r <= 2 {
        CycloField::rationals()
    } else {
        CycloField::new(r).expect("r >= 1")
    };
    Ok(monomial_forms(&field, r, l, p < r))
}

pub fn coxeter_b(l: usize) -> Result<Arrangement, CatalogError> {
    if l < 2 {
        return Err(CatalogError::BadParameter("B_l needs l >= 2".into()));
    }
    monomial(2, 1, l)
}

pub fn coxeter_d(l: usize) -> Result<Arrangement, CatalogError> {
    if l < 2 {
        return Err(CatalogError::BadParameter("D_l needs l >= 2".into()));
    }
    monomial(2, 2, l)
}

/// Significant lines with their 1-based numbers; `#` starts a comment line.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
) -> Result<(usize, &'a str), CatalogError> {
    let (n, l) = lines
        .next()
        .ok_or_else(|| perr(0, format!("missing `{keyword}` header")))?;
    match l.split_once(char::is_whitespace) {
        Some((k, v)) if k == keyword => Ok((n, v.trim())),
        _ => Err(perr(n, format!("expected `{keyword} <value>`"))),
    }
}

fn parse_field(n: usize, v: &str) -> Result<FieldRef, CatalogError> {
    let c: u32 = v
        .parse()
        .map_err(|_| perr(n, format!("unknown field `{v}`")))?;
    CycloField::new(c).map_err(|e| perr(n, e.to_string()))
}

/// An arrangement read from text, with the number of proportional duplicate
/// lines that were collapsed.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub arrangement: Arrangement,
    pub duplicates: usize,
}

/// Parses the arrangement text format: `field <n>`, `dim <ℓ>`, then one
/// hyperplane per line as `ℓ` whitespace-separated scalars.
pub fn parse_arrangement_text(text: &str) -> Result<Parsed, CatalogError> {
    let mut lines = content_lines(text);
    let (n, v) = parse_header(&mut lines, "field")?;
    let field = parse_field(n, v)?;
    let (n, v) = parse_header(&mut lines, "dim")?;
    let dim: usize = v.parse().map_err(|_| perr(n, format!("bad dimension `{v}`")))?;
    let mut forms = Vec::new();
    for (n, line) in lines {
        let scalars = line
            .split_whitespace()
            .map(|tok| parse_scalar(tok, &field).map_err(|e| perr(n, format!("`{tok}`: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if scalars.len() != dim {
            return Err(perr(n, format!("expected {dim} scalars, got {}", scalars.len())));
        }
        forms.push(LinearForm::new(scalars).map_err(|e| match e {
            ArrError::ZeroForm => perr(n, "zero form"),
            other => perr(n, other.to_string()),
        })?);
    }
    let (arrangement, duplicates) = Arrangement::from_linear_forms(&field, dim, forms);
    Ok(Parsed {
        arrangement,
        duplicates,
    })
}

fn read_source(path: &Path) -> Result<String, CatalogError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CatalogError::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))
    }
}

/// Reads an arrangement file; the path `-` means standard input.
pub fn parse_arrangement_file(path: &Path) -> Result<Parsed, CatalogError> {
    parse_arrangement_text(&read_source(path)?)
}

/// Basis text format: `basis ℓ <ℓ> field <n>`, then one derivation per line
/// as `ℓ` comma-separated polynomials in `x1..xℓ`. `l` is accepted for `ℓ`.
pub fn parse_basis_text(text: &str) -> Result<(FieldRef, Vec<Derivation>), CatalogError> {
    let mut lines = content_lines(text);
    let (n, header) = lines.next().ok_or_else(|| perr(0, "missing `basis` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let (l, field) = match toks.as_slice() {
        ["basis", "ℓ" | "l", l, "field", f] => {
            let l: usize = l.parse().map_err(|_| perr(n, format!("bad dimension `{l}`")))?;
            (l, parse_field(n, f)?)
        }
        _ => return Err(perr(n, "expected `basis ℓ <ℓ> field <n>`")),
    };
    let mut out = Vec::new();
    for (n, line) in lines {
        let comps = line
            .split(',')
            .map(|s| parse_poly(s.trim(), &field, l).map_err(|e| perr(n, e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if comps.len() != l {
            return Err(perr(n, format!("expected {l} components, got {}", comps.len())));
        }
        out.push(Derivation::new(ModVec::new(comps)));
    }
    Ok((field, out))
}

pub fn parse_basis_file(path: &Path) -> Result<(FieldRef, Vec<Derivation>), CatalogError> {
    parse_basis_text(&read_source(path)?)
}

pub fn write_basis_text(field: &FieldRef, l: usize, basis: &[Derivation]) -> String {
    let mut s = format!("basis ℓ {l} field {}\n", field.conductor());
    for d in basis {
        s.push_str(&d.to_line());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(a: &Arrangement) -> Vec<String> {
        a.hyperplanes().iter().map(LinearForm::to_row_string).collect()
    }

    #[test]
    fn braid_forms() {
        assert_eq!(rows(&braid(2).unwrap()), ["1 -1"]);
        assert_eq!(braid(3).unwrap().len(), 3);
        assert_eq!(braid(4).unwrap().len(), 6);
        assert!(braid(0).is_err());
    }

    #[test]
    fn monomial_forms_examples() {
        let b2 = monomial(2, 1, 2).unwrap();
        assert_eq!(rows(&b2), ["1 0", "0 1", "1 -1", "1 1"]);
        let g332 = monomial(3, 3, 2).unwrap();
        assert_eq!(g332.field().conductor(), 3);
        assert_eq!(rows(&g332), ["1 -1", "1 -z", "1 1+z"]);
        assert_eq!(monomial(1, 1, 4).unwrap().key(), braid(4).unwrap().key());
        assert!(matches!(monomial(4, 3, 2), Err(CatalogError::BadDivisor { r: 4, p: 3 })));
    }

    #[test]
    fn family_counts() {
        for r in 1..=4u32 {
            for p in (1..=r).filter(|p| r % p == 0) {
                for l in 1..=4usize {
                    let a = monomial(r, p, l).unwrap();
                    let expect = r as usize * l * (l - 1) / 2 + if p < r { l } else { 0 };
                    assert_eq!(a.len(), expect, "G({r},{p},{l})");
                }
            }
        }
        assert_eq!(coxeter_b(2).unwrap().len(), 4);
        assert_eq!(coxeter_d(3).unwrap().len(), 6);
        assert_eq!(coxeter_b(3).unwrap().len(), 9);
    }

    #[test]
    fn text_round_trip() {
        for a in [braid(4).unwrap(), monomial(3, 1, 3).unwrap(), monomial(4, 4, 2).unwrap()] {
            let back = parse_arrangement_text(&a.to_text()).unwrap();
            assert_eq!(back.arrangement.key(), a.key());
            assert_eq!(back.duplicates, 0);
        }
    }

    #[test]
    fn parse_examples() {
        let p = parse_arrangement_text("# boolean\nfield 1\ndim 2\n1 0\n0 1\n").unwrap();
        assert_eq!(p.arrangement.len(), 2);

        let p = parse_arrangement_text("field 1\ndim 2\n1 0\n2 0\n0 1\n").unwrap();
        assert_eq!(p.arrangement.len(), 2);
        assert_eq!(p.duplicates, 1);

        let e = parse_arrangement_text("field 1\ndim 2\n1 0\n0 0\n").unwrap_err();
        assert_eq!(e, perr(4, "zero form"));
        let e = parse_arrangement_text("field 1\ndim 2\n1 0 3\n").unwrap_err();
        assert!(matches!(e, CatalogError::Parse { line: 3, .. }));
        let e = parse_arrangement_text("field 1\ndim 2\n1 q\n").unwrap_err();
        assert!(matches!(e, CatalogError::Parse { line: 3, .. }));
        let e = parse_arrangement_text("field x\ndim 2\n").unwrap_err();
        assert!(matches!(e, CatalogError::Parse { line: 1, .. }));
        let e = parse_arrangement_text("field 0\ndim 2\n").unwrap_err();
        assert!(matches!(e, CatalogError::Parse { line: 1, .. }));
    }

    #[test]
    fn basis_round_trip() {
        let text = "basis ℓ 2 field 1\nx1, 0\n0, x2\n";
        let (f, b) = parse_basis_text(text).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(write_basis_text(&f, 2, &b), text);
        assert!(parse_basis_text("basis l 2 field 1\nx1, x2\n").is_ok());
        let e = parse_basis_text("basis l 2 field 1\nx1\n").unwrap_err();
        assert!(matches!(e, CatalogError::Parse { line: 2, .. }));
    }
}
