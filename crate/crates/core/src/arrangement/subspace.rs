use std::fmt;
use std::hash::{Hash, Hasher};

use super::LinearForm;
use crate::exactnum::CycloNum;
use crate::linalg;

/// A linear subspace `X ⊆ K^ℓ`, stored as the reduced row echelon form of its
/// defining forms. Equal subspaces have identical representations.
#[derive(Clone)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<CycloNum>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_forms(ambient: usize, forms: Vec<Vec<CycloNum>>) -> Self {
        let (rows, pivots) = linalg::rref(forms, ambient);
        Subspace {
            ambient,
            rows,
            pivots,
        }
    }

    /// The whole space `V`.
    pub fn whole(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Codimension `r(X)`.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<CycloNum>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.pivots.clone()
    }

    /// Whether `X ⊆ ker α`, i.e. `α` lies in the row space.
    pub fn lies_in(&self, alpha: &LinearForm) -> bool {
        let mut v = alpha.coeffs().to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        v.iter().all(CycloNum::is_zero)
    }

    /// `X ∩ ker α`.
    pub fn intersect(&self, alpha: &LinearForm) -> Subspace {
        let mut forms = self.rows.clone();
        forms.push(alpha.coeffs().to_vec());
        let (rows, pivots) = linalg::rref(forms, self.ambient);
        Subspace {
            ambient: self.ambient,
            rows,
            pivots,
        }
    }

    /// `self ⊆ other` as subspaces.
    pub fn is_contained_in(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| {
            LinearForm::new(r.clone()).is_ok_and(|lf| self.lies_in(&lf))
        })
    }

    /// Stable textual key, e.g. `[1 0 -1; 0 1 -1]`, or `V` for the whole space.
    pub fn key(&self) -> String {
        if self.rows.is_empty() {
            return "V".to_string();
        }
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rows == other.rows
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.rows.hash(state);
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}
