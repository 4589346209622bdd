use std::fmt;

use super::{MultiPoly, PolyError};
use crate::exactnum::{CycloNum, FieldRef};

/// An element of the free module `S^r`, stored as its `r` coordinate polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModVec {
    comps: Vec<MultiPoly>,
}

impl ModVec {
    pub fn new(comps: Vec<MultiPoly>) -> Self {
        debug_assert!(comps.windows(2).all(|w| w[0].nvars() == w[1].nvars()));
        ModVec { comps }
    }

    pub fn zero(rank: usize, nvars: usize) -> Self {
        ModVec {
            comps: vec![MultiPoly::zero(nvars); rank],
        }
    }

    /// The standard basis vector `e_i`.
    pub fn unit(field: &FieldRef, rank: usize, nvars: usize, i: usize) -> Self {
        let mut v = Self::zero(rank, nvars);
        v.comps[i] = MultiPoly::one(field, nvars);
        v
    }

    /// Constant vector with the given scalar entries.
    pub fn constant(entries: &[CycloNum], nvars: usize) -> Self {
        ModVec {
            comps: entries
                .iter()
                .map(|c| MultiPoly::constant(c.clone(), nvars))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn nvars(&self) -> usize {
        self.comps.first().map_or(0, MultiPoly::nvars)
    }

    pub fn comps(&self) -> &[MultiPoly] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &MultiPoly {
        &self.comps[i]
    }

    pub fn into_comps(self) -> Vec<MultiPoly> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(MultiPoly::is_zero)
    }

    pub fn field(&self) -> Option<&FieldRef> {
        self.comps.iter().find_map(MultiPoly::field)
    }

    /// Polynomial degree: defined iff the vector is nonzero and every nonzero
    /// component is homogeneous of one common degree.
    pub fn pdeg(&self) -> Option<u32> {
        let mut deg = None;
        for c in self.comps.iter().filter(|c| !c.is_zero()) {
            let d = c.homogeneous_degree()?;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.pdeg().is_some()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        Ok(ModVec {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        Ok(ModVec {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.rank() != other.rank() {
            return Err(PolyError::RankMismatch(self.rank(), other.rank()));
        }
        if self.nvars() != other.nvars() {
            return Err(PolyError::RingMismatch(self.nvars(), other.nvars()));
        }
        Ok(())
    }

    pub fn mul_poly(&self, f: &MultiPoly) -> Self {
        ModVec {
            comps: self.comps.iter().map(|c| c * f).collect(),
        }
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        ModVec {
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut comps = self.comps.clone();
        comps.extend(other.comps.iter().cloned());
        ModVec { comps }
    }

    /// Splits into the first `k` components and the rest.
    pub fn split_at(&self, k: usize) -> (Self, Self) {
        let (a, b) = self.comps.split_at(k);
        (ModVec { comps: a.to_vec() }, ModVec { comps: b.to_vec() })
    }

    /// `Σ coeffs[i] · vecs[i]`.
    pub fn combination(coeffs: &[MultiPoly], vecs: &[ModVec], rank: usize, nvars: usize) -> Self {
        let mut acc = ModVec::zero(rank, nvars);
        for (c, v) in coeffs.iter().zip(vecs) {
            if c.is_zero() {
                continue;
            }
            acc = acc.try_add(&v.mul_poly(c)).expect("compatible vectors");
        }
        acc
    }
}

impl fmt::Display for ModVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for ModVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
