#![allow(dead_code)]

use freearr::arrangement::{Arrangement, LinearForm};
use freearr::exactnum::{CycloField, CycloNum, FieldRef, Rational};
use rand::Rng;

pub fn field(conductor: u32) -> FieldRef {
    CycloField::new(conductor).unwrap()
}

/// `a + b·z` with small integers; `b` is dropped over Q.
pub fn small_scalar(f: &FieldRef, a: i64, b: i64) -> CycloNum {
    let mut c = vec![Rational::from_integer(a.into())];
    if f.degree() > 1 {
        c.push(Rational::from_integer(b.into()));
    }
    CycloNum::from_power_coeffs(f, c)
}

/// `m` distinct hyperplanes in `K^l` with entries `a + b z`, `|a|, |b| ≤ 1`.
pub fn random_arrangement<R: Rng>(rng: &mut R, f: &FieldRef, l: usize, m: usize) -> Arrangement {
    let mut forms: Vec<LinearForm> = Vec::new();
    while forms.len() < m {
        let v: Vec<CycloNum> = (0..l)
            .map(|_| small_scalar(f, rng.gen_range(-1..=1), rng.gen_range(-1..=1)))
            .collect();
        if let Ok(lf) = LinearForm::new(v) {
            if !forms.contains(&lf) {
                forms.push(lf);
            }
        }
    }
    Arrangement::from_linear_forms(f, l, forms).0
}

/// Arrangement from integer-pair entries `(a, b)` meaning `a + b z`.
pub fn from_pairs(f: &FieldRef, l: usize, rows: &[Vec<(i64, i64)>]) -> Arrangement {
    let forms = rows
        .iter()
        .filter_map(|r| LinearForm::new(r.iter().map(|&(a, b)| small_scalar(f, a, b)).collect()).ok())
        .collect();
    Arrangement::from_linear_forms(f, l, forms).0
}
