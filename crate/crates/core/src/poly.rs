//! Dense univariate polynomials, coefficients stored constant term first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring::{int_to_rat, Field, Ring};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;

impl<T: Ring> Poly<T> {
    /// Trailing zero coefficients are dropped, so the zero polynomial has
    /// no coefficients.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn monomial(c: T, d: usize) -> Self {
        let mut v = vec![T::zero(); d + 1];
        v[d] = c;
        Poly::new(v)
    }

    /// `x - a`.
    pub fn linear(a: &T) -> Self {
        Poly::new(vec![a.neg_ref(), T::one()])
    }

    /// `(x - 1)^m`.
    pub fn x_minus_one_pow(m: usize) -> Self {
        let base = Poly::linear(&T::one());
        (0..m).fold(Poly::one(), |acc, _| acc.mul(&base))
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn lead(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).add_ref(&other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub_ref(&other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(Ring::neg_ref).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.mul_ref(k)).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&T::from_i64(i as i64)))
                .collect(),
        )
    }

    /// Division by a monic divisor; valid over any ring.
    pub fn div_rem_monic(&self, d: &Self) -> (Self, Self) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.degree();
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![T::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].sub_ref(&c.mul_ref(dj));
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Exact quotient by a monic divisor, `None` if the remainder is nonzero.
    pub fn exact_div_monic(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_monic(d);
        r.is_zero().then_some(q)
    }

    /// `x^d p(1/x)`: coefficients reversed.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(c)
    }

    /// Multiplicity of 1 as a root, by repeated exact division.
    pub fn multiplicity_of_one(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        let lin = Poly::linear(&T::one());
        let mut p = self.clone();
        let mut m = 0;
        loop {
            // Synthetic division by (x-1) only needs a unit leading term of
            // the divisor, which holds for any ring.
            let (q, r) = p.div_rem_monic(&lin);
            if !r.is_zero() || p.degree() == 0 {
                return m;
            }
            p = q;
            m += 1;
        }
    }
}

impl<T: Field> Poly<T> {
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree();
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let inv = d.lead().inv_ref();
        let mut r = self.coeffs.clone();
        let mut q = vec![T::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].mul_ref(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].sub_ref(&c.mul_ref(dj));
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv_ref();
        self.scale(&inv)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl IntPoly {
    pub fn to_rational(&self) -> RatPoly {
        Poly::new(self.coeffs.iter().map(int_to_rat).collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        Poly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Sign of `p(a / 2^s)`, computed exactly on the scaled integer value.
    pub fn sign_at_dyadic(&self, a: &BigInt, s: u64) -> i32 {
        // 2^{s d} p(a/2^s) = sum c_i a^i 2^{s(d-i)}
        let d = self.degree();
        let mut total = BigInt::zero();
        let mut apow = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            total += (c * &apow) << (s as usize * (d - i));
            apow *= a;
        }
        sign_of(&total)
    }

    /// Sign of `p(q)` for a rational `q`.
    pub fn sign_at(&self, q: &BigRational) -> i32 {
        let d = self.degree();
        let (num, den) = (q.numer(), q.denom());
        let mut total = BigInt::zero();
        let mut npow = BigInt::one();
        let mut dpows = vec![BigInt::one(); d + 1];
        for i in 1..=d {
            dpows[i] = &dpows[i - 1] * den;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            total += c * &npow * &dpows[d - i];
            npow *= num;
        }
        sign_of(&total)
    }

    pub fn is_unit_constant(&self) -> bool {
        self.coeff(0).abs().is_one()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl RatPoly {
    /// Returns the integer polynomial when every coefficient is integral.
    pub fn to_integer(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .all(|c| c.is_integer())
            .then(|| Poly::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
    }

    /// Primitive integer polynomial with the same roots.
    pub fn to_primitive_integer(&self) -> IntPoly {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = Poly::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                .collect(),
        );
        scaled.primitive()
    }
}

fn sign_of(v: &BigInt) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    }
}

impl<T: Ring> fmt::Display for Poly<T> {
    /// Descending powers, e.g. `x^3 - 7x^2 + 5x - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_neg();
            let mag = if neg { c.neg_ref() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mag_s = mag.to_string();
            let coef = if i > 0 && mag.is_one() {
                String::new()
            } else if mag_s.contains('/') && i > 0 {
                format!("({mag_s})")
            } else {
                mag_s
            };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        Poly::from_i64(c)
    }

    #[test]
    fn display_descending() {
        assert_eq!(p(&[-1, 5, -7, 1]).to_string(), "x^3 - 7x^2 + 5x - 1");
        assert_eq!(p(&[0, 1, 1]).to_string(), "x^2 + x");
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!(p(&[-3]).to_string(), "-3");
    }

    #[test]
    fn division_and_multiplicity() {
        let f = p(&[-1, 1]).pow(3).mul(&p(&[1, 1]));
        assert_eq!(f.multiplicity_of_one(), 3);
        let (q, r) = f.div_rem_monic(&p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, Poly::x_minus_one_pow(3));
        assert_eq!(p(&[-1, 5, -7, 1]).multiplicity_of_one(), 0);
    }

    #[test]
    fn rational_gcd() {
        let a = p(&[-1, 0, 1]).to_rational();
        let b = p(&[1, 2, 1]).to_rational();
        assert_eq!(a.gcd(&b), p(&[1, 1]).to_rational());
    }

    #[test]
    fn exact_signs() {
        let f = p(&[-2, 0, 1]); // x^2 - 2
        assert_eq!(f.sign_at_dyadic(&BigInt::from(181), 7), -1); // 1.4140625
        assert_eq!(f.sign_at_dyadic(&BigInt::from(182), 7), 1); // 1.421875
        assert_eq!(f.sign_at(&crate::ring::rat(3, 2)), 1);
        assert_eq!(f.sign_at(&crate::ring::rat(-1, 1)), -1);
    }
}
