//! Central hyperplane arrangements: linear forms, intersection lattices,
//! Poincaré polynomials, restriction, localization and deletion.

mod intpoly;
mod lattice;
mod subspace;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::exactnum::{ArithError, CycloNum, FieldRef};
use crate::linalg;
use crate::polymod::MultiPoly;

pub use intpoly::IntPoly;
pub use lattice::{intersection_lattice, poincare_poly, IntersectionLattice};
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrError {
    #[error("zero linear form")]
    ZeroForm,
    #[error("form has {got} coefficients, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("subspace is not an element of the intersection lattice")]
    NotInLattice,
    #[error("hyperplane not in the arrangement")]
    HyperplaneNotFound,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A nonzero linear form, scaled so its first nonzero coefficient is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<CycloNum>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<CycloNum>) -> Result<Self, ArrError> {
        let Some(lead) = coeffs.iter().find(|c| !c.is_zero()) else {
            return Err(ArrError::ZeroForm);
        };
        let inv = lead.inv()?;
        let coeffs = coeffs.iter().map(|c| c.try_mul(&inv)).collect::<Result<_, _>>()?;
        Ok(LinearForm { coeffs })
    }

    pub fn from_ints(field: &FieldRef, v: &[i64]) -> Result<Self, ArrError> {
        Self::new(v.iter().map(|&x| CycloNum::from_i64(field, x)).collect())
    }

    pub fn coeffs(&self) -> &[CycloNum] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Position of the leading 1.
    pub fn pivot(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero form")
    }

    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::linear(&self.coeffs)
    }

    /// `α(v)`.
    pub fn eval(&self, v: &[CycloNum]) -> CycloNum {
        let field = self.coeffs[0].field();
        self.coeffs
            .iter()
            .zip(v)
            .fold(CycloNum::zero(field), |acc, (a, b)| &acc + &(a * b))
    }

    /// Space-separated scalars, as used in the arrangement file format.
    pub fn to_row_string(&self) -> String {
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A central arrangement of pairwise non-proportional hyperplanes in `K^ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    field: FieldRef,
    dim: usize,
    hyperplanes: Vec<LinearForm>,
}

/// Identity of an arrangement as a set of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrangementKey {
    conductor: u32,
    dim: usize,
    forms: Vec<LinearForm>,
}

impl Arrangement {
    /// Canonicalizes the forms and collapses proportional duplicates, keeping
    /// the first occurrence.
    pub fn new(field: &FieldRef, dim: usize, forms: Vec<Vec<CycloNum>>) -> Result<Self, ArrError> {
        Ok(Self::new_counting(field, dim, forms)?.0)
    }

    /// Like [`Arrangement::new`], also returning how many duplicates were dropped.
    pub fn new_counting(
        field: &FieldRef,
        dim: usize,
        forms: Vec<Vec<CycloNum>>,
    ) -> Result<(Self, usize), ArrError> {
        let mut lfs = Vec::with_capacity(forms.len());
        for f in forms {
            if f.len() != dim {
                return Err(ArrError::LengthMismatch {
                    expected: dim,
                    got: f.len(),
                });
            }
            lfs.push(LinearForm::new(f)?);
        }
        Ok(Self::from_linear_forms(field, dim, lfs))
    }

    pub fn from_linear_forms(field: &FieldRef, dim: usize, forms: Vec<LinearForm>) -> (Self, usize) {
        let mut seen = HashSet::new();
        let mut hyperplanes = Vec::with_capacity(forms.len());
        let mut dups = 0;
        for f in forms {
            debug_assert_eq!(f.dim(), dim);
            if seen.insert(f.clone()) {
                hyperplanes.push(f);
            } else {
                dups += 1;
            }
        }
        (
            Arrangement {
                field: field.clone(),
                dim,
                hyperplanes,
            },
            dups,
        )
    }

    pub fn from_int_rows(field: &FieldRef, dim: usize, rows: &[&[i64]]) -> Result<Self, ArrError> {
        let forms = rows
            .iter()
            .map(|r| r.iter().map(|&x| CycloNum::from_i64(field, x)).collect())
            .collect();
        Self::new(field, dim, forms)
    }

    pub fn empty(field: &FieldRef, dim: usize) -> Self {
        Arrangement {
            field: field.clone(),
            dim,
            hyperplanes: Vec::new(),
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[LinearForm] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &LinearForm {
        &self.hyperplanes[i]
    }

    pub fn index_of(&self, h: &LinearForm) -> Option<usize> {
        self.hyperplanes.iter().position(|x| x == h)
    }

    pub fn key(&self) -> ArrangementKey {
        let mut forms = self.hyperplanes.clone();
        forms.sort();
        ArrangementKey {
            conductor: self.field.conductor(),
            dim: self.dim,
            forms,
        }
    }

    /// Rank of the arrangement (codimension of the common intersection).
    pub fn rank(&self) -> usize {
        let rows: Vec<_> = self.hyperplanes.iter().map(|h| h.coeffs.clone()).collect();
        linalg::rank(&rows, self.dim)
    }

    /// `Q(A) = ∏ α_H`.
    pub fn defining_polynomial(&self) -> MultiPoly {
        self.hyperplanes
            .iter()
            .fold(MultiPoly::one(&self.field, self.dim), |acc, h| {
                &acc * &h.to_poly()
            })
    }

    /// The arrangement without `h`.
    pub fn delete(&self, h: &LinearForm) -> Result<Self, ArrError> {
        let i = self.index_of(h).ok_or(ArrError::HyperplaneNotFound)?;
        Ok(self.delete_index(i))
    }

    pub fn delete_index(&self, i: usize) -> Self {
        let mut hyperplanes = self.hyperplanes.clone();
        hyperplanes.remove(i);
        Arrangement {
            field: self.field.clone(),
            dim: self.dim,
            hyperplanes,
        }
    }

    /// The arrangement with `h` appended (no-op if already present).
    pub fn add(&self, h: LinearForm) -> Self {
        let mut forms = self.hyperplanes.clone();
        forms.push(h);
        Self::from_linear_forms(&self.field, self.dim, forms).0
    }

    /// Sub-arrangement on the given indices, in the given order.
    pub fn subarrangement(&self, indices: &[usize]) -> Self {
        Arrangement {
            field: self.field.clone(),
            dim: self.dim,
            hyperplanes: indices.iter().map(|&i| self.hyperplanes[i].clone()).collect(),
        }
    }

    /// `A_X`: the hyperplanes containing `X`.
    pub fn localize(&self, x: &Subspace) -> Result<Self, ArrError> {
        let loc: Vec<LinearForm> = self
            .hyperplanes
            .iter()
            .filter(|h| x.lies_in(h))
            .cloned()
            .collect();
        let span = Subspace::from_forms(self.dim, loc.iter().map(|h| h.coeffs.clone()).collect());
        if &span != x {
            return Err(ArrError::NotInLattice);
        }
        Ok(Arrangement {
            field: self.field.clone(),
            dim: self.dim,
            hyperplanes: loc,
        })
    }

    /// `A^X` in coordinates on `X`, together with the coordinate map.
    ///
    /// The pivot variables of `X`'s echelon form are eliminated; the remaining
    /// variables, in order, are the coordinates of `X`. Forms vanishing on `X`
    /// (those in `A_X`) are dropped and proportional traces collapsed.
    pub fn restrict(&self, x: &Subspace) -> Result<(Self, RestrictionMap), ArrError> {
        self.localize(x)?;
        Ok(self.restrict_unchecked(x))
    }

    pub(crate) fn restrict_unchecked(&self, x: &Subspace) -> (Self, RestrictionMap) {
        let map = RestrictionMap::new(&self.field, x);
        let mut forms = Vec::new();
        for h in &self.hyperplanes {
            let img = map.pull_back(h.coeffs());
            if let Ok(lf) = LinearForm::new(img) {
                forms.push(lf);
            }
        }
        let (arr, _) = Self::from_linear_forms(&self.field, map.coords.len(), forms);
        (arr, map)
    }

    /// Restriction to the `i`-th hyperplane.
    pub fn restrict_to_hyperplane(&self, i: usize) -> (Self, RestrictionMap) {
        let x = Subspace::from_forms(self.dim, vec![self.hyperplanes[i].coeffs.clone()]);
        self.restrict_unchecked(&x)
    }

    /// Quotient by the common intersection `∩ H`. Returns the essential
    /// arrangement and `dim ∩ H`.
    pub fn essentialize(&self) -> (Self, usize) {
        let rows: Vec<_> = self.hyperplanes.iter().map(|h| h.coeffs.clone()).collect();
        let (_, pivots) = linalg::rref(rows, self.dim);
        let r = pivots.len();
        // α = Σ α_{p_k} R_k, so α ↦ (α_{p_k})_k is the induced form on V / ∩H
        let forms = self
            .hyperplanes
            .iter()
            .map(|h| LinearForm {
                coeffs: pivots.iter().map(|&p| h.coeffs[p].clone()).collect(),
            })
            .collect();
        let (arr, _) = Self::from_linear_forms(&self.field, r, forms);
        (arr, self.dim - r)
    }

    /// Text format: `field <n>`, `dim <ℓ>`, then one row of scalars per hyperplane.
    pub fn to_text(&self) -> String {
        let mut s = format!("field {}\ndim {}\n", self.field.conductor(), self.dim);
        for h in &self.hyperplanes {
            s.push_str(&h.to_row_string());
            s.push('\n');
        }
        s
    }

    /// Builds a subspace of `K^ℓ` from defining forms.
    pub fn subspace(&self, forms: Vec<Vec<CycloNum>>) -> Subspace {
        Subspace::from_forms(self.dim, forms)
    }
}

/// Coordinates on a subspace `X`: the non-pivot variables of its echelon
/// form, with each pivot variable expressed through them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionMap {
    ambient_dim: usize,
    /// Ambient variable indices serving as coordinates on `X`.
    pub coords: Vec<usize>,
    /// `(pivot variable, coefficients over coords)`: `x_p = Σ c_k u_k`.
    pub substitution: Vec<(usize, Vec<CycloNum>)>,
}

impl RestrictionMap {
    fn new(field: &FieldRef, x: &Subspace) -> Self {
        let pivots = x.pivots();
        let coords: Vec<usize> = (0..x.ambient_dim()).filter(|c| !pivots.contains(c)).collect();
        let substitution = x
            .rows()
            .iter()
            .zip(&pivots)
            .map(|(row, &p)| {
                let c = coords
                    .iter()
                    .map(|&j| if row[j].is_zero() { CycloNum::zero(field) } else { -&row[j] })
                    .collect();
                (p, c)
            })
            .collect();
        RestrictionMap {
            ambient_dim: x.ambient_dim(),
            coords,
            substitution,
        }
    }

    /// Coefficients, in the coordinates of `X`, of the restriction of `α`.
    pub fn pull_back(&self, alpha: &[CycloNum]) -> Vec<CycloNum> {
        let mut out: Vec<CycloNum> = self.coords.iter().map(|&j| alpha[j].clone()).collect();
        for (p, cs) in &self.substitution {
            let a = &alpha[*p];
            if a.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(cs) {
                *o = &*o + &(a * c);
            }
        }
        out
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Human-readable description, one line per fact.
    pub fn describe(&self) -> Vec<String> {
        let mut lines = vec![format!(
            "coordinates: {}",
            self.coords
                .iter()
                .enumerate()
                .map(|(k, j)| format!("u{} = x{}", k + 1, j + 1))
                .collect::<Vec<_>>()
                .join(", ")
        )];
        for (p, cs) in &self.substitution {
            let field = cs.first().map(|c| c.field().clone());
            let rhs = match field {
                Some(_) => MultiPoly::linear(cs).to_string().replace('x', "u"),
                None => "0".to_string(),
            };
            lines.push(format!("x{} = {}", p + 1, rhs));
        }
        lines
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::CycloField;

    pub(crate) fn braid(n: usize) -> Arrangement {
        let q = CycloField::rationals();
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut r = vec![0i64; n];
                r[i] = 1;
                r[j] = -1;
                rows.push(r);
            }
        }
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        Arrangement::from_int_rows(&q, n, &refs).unwrap()
    }

    #[test]
    fn construction_collapses_proportional_forms() {
        let q = CycloField::rationals();
        let a = Arrangement::from_int_rows(&q, 2, &[&[1, 0], &[2, 0], &[0, 1]]).unwrap();
        assert_eq!(a.len(), 2);
        let e = Arrangement::from_int_rows(&q, 2, &[]).unwrap();
        assert!(e.is_empty());
        let b = Arrangement::from_int_rows(&q, 2, &[&[1, -1]]).unwrap();
        assert_eq!(b.hyperplane(0).to_string(), "x1-x2");
        assert_eq!(
            Arrangement::from_int_rows(&q, 2, &[&[0, 0]]),
            Err(ArrError::ZeroForm)
        );
        assert!(matches!(
            Arrangement::from_int_rows(&q, 2, &[&[1, 0, 0]]),
            Err(ArrError::LengthMismatch { .. })
        ));
        // canonical scaling: first nonzero coefficient is 1
        let c = Arrangement::from_int_rows(&q, 2, &[&[-2, 4]]).unwrap();
        assert_eq!(c.hyperplane(0).to_string(), "x1-2*x2");
    }

    #[test]
    fn defining_polynomials() {
        let q = CycloField::rationals();
        let b = Arrangement::from_int_rows(&q, 2, &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(b.defining_polynomial().to_string(), "x1*x2");
        let q3 = braid(3).defining_polynomial();
        assert_eq!(q3.homogeneous_degree(), Some(3));
        let expected = crate::expr::parse_poly("(x1-x2)*(x1-x3)*(x2-x3)", &q, 3).unwrap();
        assert_eq!(q3, expected);
        assert_eq!(Arrangement::empty(&q, 2).defining_polynomial().to_string(), "1");
    }

    #[test]
    fn localization() {
        let a = braid(3);
        let line = a.subspace(a.hyperplanes().iter().map(|h| h.coeffs().to_vec()).collect());
        assert_eq!(a.localize(&line).unwrap().len(), 3);
        let h = a.subspace(vec![a.hyperplane(0).coeffs().to_vec()]);
        assert_eq!(a.localize(&h).unwrap().hyperplanes(), &a.hyperplanes()[..1]);
        let v = a.subspace(vec![]);
        assert!(a.localize(&v).unwrap().is_empty());
        let q = CycloField::rationals();
        let stray = a.subspace(vec![vec![CycloNum::one(&q), CycloNum::zero(&q), CycloNum::zero(&q)]]);
        assert_eq!(a.localize(&stray), Err(ArrError::NotInLattice));
    }

    #[test]
    fn restriction_collapses_traces() {
        let a = braid(3);
        let h = a.subspace(vec![a.hyperplane(0).coeffs().to_vec()]);
        let (r, map) = a.restrict(&h).unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(r.len(), 1);
        assert_eq!(r.hyperplane(0).to_string(), "x1-x2");
        assert_eq!(map.coords, vec![1, 2]);

        let q = CycloField::rationals();
        let b = Arrangement::from_int_rows(&q, 2, &[&[1, 0], &[0, 1]]).unwrap();
        let (r, _) = b.restrict_to_hyperplane(0);
        assert_eq!((r.dim(), r.len()), (1, 1));

        let v = a.subspace(vec![]);
        let (same, _) = a.restrict(&v).unwrap();
        assert_eq!(same, a);
    }

    #[test]
    fn deletion() {
        let a = braid(3);
        let h = a.hyperplane(0).clone();
        let d = a.delete(&h).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.delete(&h), Err(ArrError::HyperplaneNotFound));
        assert_eq!(d.add(h).key(), a.key());
        let single = a.subarrangement(&[1]);
        assert!(single.delete(a.hyperplane(1)).unwrap().is_empty());
    }

    #[test]
    fn essentialization() {
        let (e, drop) = braid(3).essentialize();
        assert_eq!((e.dim(), drop, e.len()), (2, 1, 3));
        let q = CycloField::rationals();
        let b = Arrangement::from_int_rows(&q, 2, &[&[1, 0], &[0, 1]]).unwrap();
        let (e, drop) = b.essentialize();
        assert_eq!((e, drop), (b.clone(), 0));
        let (e, drop) = Arrangement::empty(&q, 2).essentialize();
        assert_eq!((e.dim(), drop), (0, 2));
    }

    #[test]
    fn text_round_trip() {
        let f = CycloField::new(3).unwrap();
        let z = CycloNum::zeta_pow(&f, 1);
        let one = CycloNum::one(&f);
        let a = Arrangement::new(&f, 2, vec![vec![one.clone(), -&z], vec![one.clone(), -&z.pow(2)]]).unwrap();
        let t = a.to_text();
        assert_eq!(t, "field 3\ndim 2\n1 -z\n1 1+z\n");
    }
}
