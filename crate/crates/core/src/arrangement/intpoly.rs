use std::fmt;

use serde::{Deserialize, Serialize};

/// Univariate integer polynomial in `t`, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![1] }
    }

    /// `∏ (1 + b t)`.
    pub fn from_linear_factors(bs: &[i64]) -> Self {
        bs.iter()
            .fold(Self::one(), |acc, &b| acc.mul(&IntPoly::new(vec![1, b])))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&0) + other.coeffs.get(i).unwrap_or(&0))
                .collect(),
        )
    }

    /// `t · self`.
    pub fn shift(&self) -> IntPoly {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut c = vec![0];
        c.extend_from_slice(&self.coeffs);
        IntPoly::new(c)
    }

    /// Positive integers `b_i` with `self = ∏ (1 + b_i t)`, if they exist.
    ///
    /// Candidates are the divisors of the leading coefficient; each found
    /// root `-1/b` is divided out exactly.
    pub fn factor_linear(&self) -> Option<Vec<i64>> {
        if self.coeffs.first() != Some(&1) {
            return None;
        }
        let mut rest = self.coeffs.clone();
        let mut out = Vec::new();
        while rest.len() > 1 {
            let lead = *rest.last().unwrap();
            if lead <= 0 {
                return None;
            }
            let b = (1..=lead).find(|&b| lead % b == 0 && divides_by_one_plus(&rest, b))?;
            rest = divide_by_one_plus(&rest, b);
            out.push(b);
        }
        out.sort_unstable();
        Some(out)
    }
}

// synthetic division by (1 + b t), coefficients lowest first
fn divide_by_one_plus(p: &[i64], b: i64) -> Vec<i64> {
    let n = p.len();
    let mut q = vec![0i64; n - 1];
    let mut carry = p[0];
    for (i, qi) in q.iter_mut().enumerate() {
        *qi = carry;
        carry = p[i + 1] - b * carry;
    }
    q
}

fn divides_by_one_plus(p: &[i64], b: i64) -> bool {
    let n = p.len();
    let mut carry = p[0];
    for coef in p.iter().take(n).skip(1) {
        carry = coef - b * carry;
    }
    carry == 0
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{a}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
