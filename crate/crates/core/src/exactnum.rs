//! Exact arithmetic over the rationals and cyclotomic fields `Q(ζ_n)`.
//!
//! Elements are stored densely in the power basis `1, ζ, …, ζ^{φ(n)-1}` and
//! kept reduced modulo the cyclotomic polynomial `Φ_n`, so structural equality
//! is field equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("field mismatch: Q(zeta_{0}) vs Q(zeta_{1})")]
    FieldMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor must be positive")]
    ZeroConductor,
}

/// The cyclotomic field `Q(ζ_n)`, described by its minimal polynomial.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    conductor: u32,
    /// Coefficients of `Φ_n`, lowest degree first. Monic.
    min_poly: Vec<BigInt>,
}

pub type FieldRef = Arc<CycloField>;

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_int_div(&num, &phi_d);
        }
    }
    num
}

// Exact division of integer polynomials by a monic divisor.
fn exact_int_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

impl CycloField {
    pub fn new(n: u32) -> Result<FieldRef, ArithError> {
        if n == 0 {
            return Err(ArithError::ZeroConductor);
        }
        Ok(Arc::new(CycloField {
            conductor: n,
            min_poly: cyclotomic_polynomial(n),
        }))
    }

    /// The rational field, `Q(ζ_1)`.
    pub fn rationals() -> FieldRef {
        Self::new(1).expect("conductor 1")
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `φ(n)`, the degree of the field over Q.
    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn is_rational_field(&self) -> bool {
        self.degree() == 1
    }

    fn reduce(&self, mut coeffs: Vec<Rational>) -> Vec<Rational> {
        let phi = self.degree();
        if coeffs.len() < phi {
            coeffs.resize(phi, Rational::zero());
            return coeffs;
        }
        for k in (phi..coeffs.len()).rev() {
            if coeffs[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut coeffs[k], Rational::zero());
            for j in 0..phi {
                let m = &self.min_poly[j];
                if !m.is_zero() {
                    coeffs[k - phi + j] -= &c * Rational::from_integer(m.clone());
                }
            }
        }
        coeffs.truncate(phi);
        coeffs
    }
}

/// An element of a cyclotomic field.
#[derive(Clone)]
pub struct CycloNum {
    field: FieldRef,
    coeffs: Vec<Rational>,
}

impl CycloNum {
    pub fn zero(field: &FieldRef) -> Self {
        CycloNum {
            field: field.clone(),
            coeffs: vec![Rational::zero(); field.degree()],
        }
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_i64(field: &FieldRef, v: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(field: &FieldRef, v: Rational) -> Self {
        let mut c = Self::zero(field);
        c.coeffs[0] = v;
        c
    }

    /// Builds `Σ coeffs[i] ζ^i` for an arbitrary-length coefficient list.
    pub fn from_power_coeffs(field: &FieldRef, coeffs: Vec<Rational>) -> Self {
        CycloNum {
            field: field.clone(),
            coeffs: field.reduce(coeffs),
        }
    }

    /// `ζ_n^k`, with `k` taken modulo `n`.
    pub fn zeta_pow(field: &FieldRef, k: i64) -> Self {
        let n = field.conductor as i64;
        let e = k.rem_euclid(n) as usize;
        let mut c = vec![Rational::zero(); e + 1];
        c[e] = Rational::one();
        Self::from_power_coeffs(field, c)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, when it lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), ArithError> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(ArithError::FieldMismatch(
                self.field.conductor,
                other.field.conductor,
            ))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(CycloNum {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(CycloNum {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        let phi = self.field.degree();
        if phi == 1 {
            return Ok(CycloNum {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut prod = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(CycloNum {
            field: self.field.clone(),
            coeffs: self.field.reduce(prod),
        })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_n`.
    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if self.field.degree() == 1 {
            return Ok(CycloNum {
                field: self.field.clone(),
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        let modulus: Vec<Rational> = self
            .field
            .min_poly
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // Invariant: s_i * a ≡ r_i (mod Φ)
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while r1.len() > 1 {
            let (q, r) = upoly_divrem(&r0, &r1);
            let s2 = upoly_sub(&s0, &upoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant because Φ_n is irreducible.
        let c = r1[0].recip();
        let s: Vec<Rational> = s1.into_iter().map(|x| x * &c).collect();
        Ok(Self::from_power_coeffs(&self.field, s))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn upoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn upoly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn upoly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
    }
    (trim(quot), trim(rem))
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

/// Representation order (conductor, then coefficients). Not a field order;
/// used only to make canonical keys deterministic.
impl Ord for CycloNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .conductor
            .cmp(&other.field.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for CycloNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                self.$f(rhs).expect("cyclotomic arithmetic across fields")
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$f(&rhs).expect("cyclotomic arithmetic across fields")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Formats as a polynomial in `z`, e.g. `1-2*z+z^2`, or `3/4` for rationals.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let zpart = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            if zpart.is_empty() {
                out.push_str(&fmt_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&zpart);
            } else {
                out.push_str(&fmt_rational(&abs));
                out.push('*');
                out.push_str(&zpart);
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in Q(z_{})", self, self.field.conductor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(CycloField::rationals().degree(), 1);
        assert!(CycloField::new(0).is_err());
    }

    #[test]
    fn root_of_unity_identities() {
        let f3 = CycloField::new(3).unwrap();
        let z = CycloNum::zeta_pow(&f3, 1);
        let s = &(&CycloNum::one(&f3) + &z) + &z.pow(2);
        assert!(s.is_zero());

        let f4 = CycloField::new(4).unwrap();
        let i = CycloNum::zeta_pow(&f4, 1);
        assert_eq!(&i * &i, CycloNum::from_i64(&f4, -1));
        assert_eq!(CycloNum::zeta_pow(&f4, 4), CycloNum::one(&f4));
        assert_eq!(CycloNum::zeta_pow(&f4, -1), -&i);

        let f2 = CycloField::new(2).unwrap();
        assert_eq!(CycloNum::zeta_pow(&f2, 1), CycloNum::from_i64(&f2, -1));
    }

    #[test]
    fn rational_arithmetic() {
        let qf = CycloField::rationals();
        let a = CycloNum::from_rational(&qf, q(1, 2));
        let b = CycloNum::from_rational(&qf, q(1, 3));
        assert_eq!(&a + &b, CycloNum::from_rational(&qf, q(5, 6)));
        assert_eq!(
            CycloNum::from_i64(&qf, 2).inv().unwrap(),
            CycloNum::from_rational(&qf, q(1, 2))
        );
    }

    #[test]
    fn inverses() {
        let f4 = CycloField::new(4).unwrap();
        let i = CycloNum::zeta_pow(&f4, 1);
        assert_eq!(i.inv().unwrap(), -&i);

        let f3 = CycloField::new(3).unwrap();
        let z = CycloNum::zeta_pow(&f3, 1);
        let one_plus = &CycloNum::one(&f3) + &z;
        assert_eq!(one_plus.inv().unwrap(), -&z);
        assert!(CycloNum::zero(&f3).inv().is_err());
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let f3 = CycloField::new(3).unwrap();
        let f4 = CycloField::new(4).unwrap();
        let a = CycloNum::one(&f3);
        let b = CycloNum::one(&f4);
        assert_eq!(a.try_add(&b), Err(ArithError::FieldMismatch(3, 4)));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn display() {
        let f = CycloField::new(5).unwrap();
        let v = CycloNum::from_power_coeffs(
            &f,
            vec![q(1, 1), q(-2, 1), q(1, 1), q(3, 2)],
        );
        assert_eq!(v.to_string(), "1-2*z+z^2+3/2*z^3");
        assert_eq!((-CycloNum::zeta_pow(&f, 1)).to_string(), "-z");
        assert_eq!(CycloNum::zero(&f).to_string(), "0");
    }
}
