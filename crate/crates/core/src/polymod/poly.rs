use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Monomial;
use crate::exactnum::{CycloNum, FieldRef};

/// Sparse multivariate polynomial; terms sorted strictly descending in grevlex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(Monomial, CycloNum)>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(c: CycloNum, nvars: usize) -> Self {
        Self::term(c, Monomial::one(nvars))
    }

    pub fn one(field: &FieldRef, nvars: usize) -> Self {
        Self::constant(CycloNum::one(field), nvars)
    }

    pub fn term(c: CycloNum, m: Monomial) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        MultiPoly {
            nvars,
            terms: vec![(m, c)],
        }
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(field: &FieldRef, nvars: usize, i: usize) -> Self {
        Self::term(CycloNum::one(field), Monomial::var(nvars, i))
    }

    /// Linear form `Σ coeffs[i] x_i`.
    pub fn linear(coeffs: &[CycloNum]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone()))
                .collect(),
        )
    }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, CycloNum)>) -> Self {
        let mut acc: HashMap<Monomial, CycloNum> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.grevlex_cmp(&a.0));
        MultiPoly { nvars, terms }
    }

    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<(Monomial, CycloNum)>) -> Self {
        MultiPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, CycloNum)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, CycloNum)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn field(&self) -> Option<&FieldRef> {
        self.terms.first().map(|(_, c)| c.field())
    }

    pub fn leading(&self) -> Option<&(Monomial, CycloNum)> {
        self.terms.first()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// The common total degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms
            .iter()
            .all(|(m, _)| m.degree() == d)
            .then_some(d)
    }

    /// The value as a constant, if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Option<&CycloNum>> {
        match self.terms.as_slice() {
            [] => Some(None),
            [(m, c)] if m.is_one() => Some(Some(c)),
            _ => None,
        }
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &CycloNum, mono: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = match self.field() {
            Some(f) => Self::one(f, self.nvars),
            None if e == 0 => panic!("0^0 without a coefficient field"),
            None => return self.clone(),
        };
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `x_{i+1}`.
    pub fn derivative(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exps()[i] > 0)
            .map(|(m, c)| {
                let e = m.exps()[i];
                let mut exps = m.exps().to_vec();
                exps[i] -= 1;
                let k = CycloNum::from_i64(c.field(), e as i64);
                (Monomial::from_exps(&exps), c * &k)
            })
            .collect();
        // differentiating keeps the grevlex order within a fixed degree but not
        // across degrees, so re-sort
        Self::from_terms(self.nvars, terms)
    }

    /// Substitutes `x_i ↦ images[i]`, producing a polynomial in `new_nvars` variables.
    pub fn compose(&self, images: &[MultiPoly], new_nvars: usize) -> Self {
        assert_eq!(images.len(), self.nvars);
        let mut powers: Vec<Vec<MultiPoly>> = Vec::with_capacity(self.nvars);
        let field = match self.field() {
            Some(f) => f.clone(),
            None => return Self::zero(new_nvars),
        };
        for (i, img) in images.iter().enumerate() {
            let maxe = self.terms.iter().map(|(m, _)| m.exps()[i]).max().unwrap_or(0);
            let mut p = vec![Self::one(&field, new_nvars)];
            for _ in 0..maxe {
                let next = p.last().unwrap() * img;
                p.push(next);
            }
            powers.push(p);
        }
        let mut acc = Self::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone(), new_nvars);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Evaluates at a point.
    pub fn eval(&self, point: &[CycloNum]) -> Option<CycloNum> {
        let field = self.field()?;
        let mut acc = CycloNum::zero(field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e as u32);
                }
            }
            acc = &acc + &t;
        }
        Some(acc)
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.grevlex_cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate_other { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        MultiPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    /// Formats with variable names `x1, x2, …`.
    pub fn to_expr_string(&self) -> String {
        self.to_string()
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.merge(rhs, false)
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.merge(rhs, true)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(&rhs.terms[0].1, &rhs.terms[0].0);
        }
        if self.terms.len() == 1 {
            return rhs.mul_term(&self.terms[0].1, &self.terms[0].0);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        MultiPoly::from_terms(self.nvars, terms)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let cs = c.to_string();
            let compound = c.as_rational().is_none();
            let (neg, body) = if !compound && cs.starts_with('-') {
                (true, cs[1..].to_string())
            } else {
                (false, cs)
            };
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if m.is_one() {
                if compound {
                    out.push_str(&format!("({body})"));
                } else {
                    out.push_str(&body);
                }
            } else if compound {
                out.push_str(&format!("({body})*{m}"));
            } else if body == "1" {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{body}*{m}"));
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
