//! Arbitrary-precision reals and complexes, and simultaneous root finding.
//!
//! Reals are binary `dashu_float::FBig` values. Every value is created with
//! an explicit precision in bits; arithmetic keeps the larger precision of
//! its operands.

use dashu_base::Abs;
use dashu_float::ops::SquareRoot;
use dashu_float::round::mode::HalfEven;
use dashu_float::{DBig, FBig};
use dashu_int::{IBig, UBig};
use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::poly::IntPoly;

pub type Real = FBig<HalfEven>;

/// Bits needed for `digits` significant decimal digits.
pub fn bits_for_digits(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize
}

pub fn ibig_from(v: &BigInt) -> IBig {
    let (sign, mag) = v.to_bytes_le();
    let u = IBig::from(UBig::from_le_bytes(&mag));
    if sign == Sign::Minus {
        -u
    } else {
        u
    }
}

pub fn bigint_from(v: &IBig) -> BigInt {
    let neg = *v < IBig::ZERO;
    let mag = if neg { -v.clone() } else { v.clone() };
    let mag: UBig = mag.try_into().expect("nonnegative");
    let b = BigInt::from_bytes_le(Sign::Plus, &mag.to_le_bytes());
    if neg {
        -b
    } else {
        b
    }
}

pub fn real_from_int(v: &BigInt, prec: usize) -> Real {
    Real::from(ibig_from(v)).with_precision(prec).value()
}

pub fn real_from_i64(v: i64, prec: usize) -> Real {
    Real::from(v).with_precision(prec).value()
}

pub fn real_from_rational(v: &BigRational, prec: usize) -> Real {
    real_from_int(v.numer(), prec + 8) / real_from_int(v.denom(), prec + 8)
}

pub fn real_from_f64(v: f64, prec: usize) -> Real {
    Real::try_from(v)
        .expect("finite f64")
        .with_precision(prec)
        .value()
}

pub fn to_f64(v: &Real) -> f64 {
    v.to_f64().value()
}

/// `v = m 2^e` as an exact dyadic rational `(m, e)`.
pub fn to_dyadic(v: &Real) -> (BigInt, isize) {
    let r = v.repr();
    (bigint_from(r.significand()), r.exponent())
}

/// `round(v 2^s)` as an integer.
pub fn scaled_round(v: &Real, s: usize) -> BigInt {
    let shifted = v.clone() * Real::from_parts(IBig::ONE, s as isize);
    bigint_from(&shifted.round().to_int().value())
}

/// Decimal rendering with `digits` significant digits.
pub fn to_decimal_string(v: &Real, digits: usize) -> String {
    if v.repr().is_zero() {
        return "0".to_string();
    }
    let d: DBig = v.to_decimal().value();
    d.with_precision(digits).value().to_string()
}

pub fn abs(v: &Real) -> Real {
    v.clone().abs()
}

pub fn is_negative(v: &Real) -> bool {
    v.repr().significand() < &IBig::ZERO
}

#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        Complex::new(real_from_i64(0, prec), real_from_i64(0, prec))
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.precision();
        Complex::new(re, real_from_i64(0, prec))
    }

    pub fn from_c64(z: Complex64, prec: usize) -> Self {
        Complex::new(real_from_f64(z.re, prec), real_from_f64(z.im, prec))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    pub fn add(&self, o: &Self) -> Self {
        Complex::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Complex::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Complex::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn mul_real(&self, r: &Real) -> Self {
        Complex::new(&self.re * r, &self.im * r)
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn inv(&self) -> Self {
        let d = self.norm_sqr();
        Complex::new(&self.re / &d, -(&self.im / &d))
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.re.repr().is_zero() && self.im.repr().is_zero()
    }

    pub fn with_precision(&self, prec: usize) -> Self {
        Complex::new(
            self.re.clone().with_precision(prec).value(),
            self.im.clone().with_precision(prec).value(),
        )
    }
}

/// Horner evaluation of `p` and `p'` at `z`, coefficients constant first.
pub fn eval_with_derivative(coeffs: &[Complex], z: &Complex) -> (Complex, Complex) {
    let prec = z.re.precision();
    let mut p = Complex::zero(prec);
    let mut dp = Complex::zero(prec);
    for c in coeffs.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add(c);
    }
    (p, dp)
}

pub fn eval(coeffs: &[Complex], z: &Complex) -> Complex {
    let prec = z.re.precision();
    let mut p = Complex::zero(prec);
    for c in coeffs.iter().rev() {
        p = p.mul(z).add(c);
    }
    p
}

pub fn eval_real(coeffs: &[Real], x: &Real) -> Real {
    let mut p = real_from_i64(0, x.precision());
    for c in coeffs.iter().rev() {
        p = &p * x + c;
    }
    p
}

pub fn int_coeffs(p: &IntPoly, prec: usize) -> Vec<Complex> {
    p.coeffs()
        .iter()
        .map(|c| Complex::from_real(real_from_int(c, prec)))
        .collect()
}

pub fn real_coeffs(c: &[Real], prec: usize) -> Vec<Complex> {
    c.iter()
        .map(|v| Complex::from_real(v.clone().with_precision(prec).value()))
        .collect()
}

/// Starting points on circles whose radii come from the upper convex hull
/// of `(i, log|a_i|)`.
fn initial_guesses(logs: &[f64]) -> Vec<Complex64> {
    let n = logs.len() - 1;
    let pts: Vec<(usize, f64)> = logs
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_finite())
        .map(|(i, &l)| (i, l))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    let sigma = 0.7;
    for w in hull.windows(2) {
        let (i, li) = w[0];
        let (j, lj) = w[1];
        let m = j - i;
        let radius = ((li - lj) / m as f64).exp();
        for t in 0..m {
            let ang = 2.0 * std::f64::consts::PI * (t as f64) / m as f64
                + 2.0 * std::f64::consts::PI * i as f64 / n as f64
                + sigma;
            out.push(Complex64::from_polar(radius, ang));
        }
    }
    out
}

/// Newton correction `p(z)/p'(z)` in f64, evaluated through the reversed
/// polynomial outside the unit disk to avoid overflow.
fn newton_ratio_f64(c: &[f64], z: Complex64) -> Complex64 {
    let n = c.len() - 1;
    if z.norm() <= 1.0 {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        p / dp
    } else {
        let w = z.inv();
        let mut q = Complex64::new(0.0, 0.0);
        let mut dq = Complex64::new(0.0, 0.0);
        for &a in c.iter() {
            dq = dq * w + q;
            q = q * w + a;
        }
        let denom = w * (n as f64 - w * dq / q);
        denom.inv()
    }
}

fn aberth_f64(c: &[f64], mut z: Vec<Complex64>, max_iter: usize) -> Option<Vec<Complex64>> {
    let n = z.len();
    let mut done = vec![false; n];
    for _ in 0..max_iter {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let ratio = newton_ratio_f64(c, z[i]);
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += (z[i] - z[j]).inv();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.is_finite() {
                return None;
            }
            z[i] -= w;
            if w.norm() <= 1e-15 * z[i].norm().max(1e-300) {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    z.iter().all(|v| v.is_finite()).then_some(z)
}

fn horner_majorant(abs_coeffs: &[Real], r: &Real) -> Real {
    let mut m = real_from_i64(0, r.precision().max(64));
    for c in abs_coeffs.iter().rev() {
        m = &m * r + c;
    }
    m
}

fn aberth_mp(coeffs: &[Complex], z: &mut [Complex], prec: usize, max_iter: usize) {
    let n = z.len();
    let tol = Real::from_parts(IBig::ONE, 8 - prec as isize);
    // |p(z)| below the Horner rounding bound carries no more information.
    let noise = real_from_i64(4 * (n as i64 + 1), 64) * Real::from_parts(IBig::ONE, -(prec as isize));
    let abs_coeffs: Vec<Real> = coeffs.iter().map(|c| c.abs()).collect();
    let mut done = vec![false; n];
    for _ in 0..max_iter {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = eval_with_derivative(coeffs, &z[i]);
            if p.is_zero() || p.abs() <= &noise * &horner_majorant(&abs_coeffs, &z[i].abs()) {
                done[i] = true;
                continue;
            }
            let ratio = p.div(&dp);
            let mut s = Complex::zero(prec);
            for j in 0..n {
                if j != i {
                    s = s.add(&z[i].sub(&z[j]).inv());
                }
            }
            let one = Complex::from_real(real_from_i64(1, prec));
            let w = ratio.div(&one.sub(&ratio.mul(&s)));
            z[i] = z[i].sub(&w);
            let scale = z[i].abs() + &tol;
            if w.abs() <= &tol * &scale {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
}

/// Approximate all complex roots of a polynomial with leading coefficient
/// nonzero. No isolation guarantee; see [`isolate_roots`] for that.
pub fn approximate_roots(coeffs: &[Complex], prec: usize) -> Vec<Complex> {
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        let mut out = approximate_roots(&coeffs[zeros..], prec);
        out.extend((0..zeros).map(|_| Complex::zero(prec)));
        return out;
    }
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let f: Vec<f64> = coeffs.iter().map(|c| to_f64(&c.re)).collect();
    let real_coeffs = coeffs.iter().all(|c| c.im.repr().is_zero());
    let logs: Vec<f64> = coeffs
        .iter()
        .map(|c| {
            let a = to_f64(&c.abs());
            if a == 0.0 {
                if c.is_zero() {
                    f64::NEG_INFINITY
                } else {
                    -700.0
                }
            } else if a.is_infinite() {
                c.abs().log2_est() as f64 * std::f64::consts::LN_2
            } else {
                a.ln()
            }
        })
        .collect();
    let start = initial_guesses(&logs);
    let fast = if real_coeffs && f.iter().all(|v| v.is_finite()) {
        aberth_f64(&f, start.clone(), 500)
    } else {
        None
    };
    let mut z: Vec<Complex> = match fast {
        Some(z) => z.into_iter().map(|v| Complex::from_c64(v, prec)).collect(),
        None => {
            let mut z: Vec<Complex> = start.into_iter().map(|v| Complex::from_c64(v, 64)).collect();
            let low: Vec<Complex> = coeffs.iter().map(|c| c.with_precision(64)).collect();
            aberth_mp(&low, &mut z, 64, 5000);
            z.into_iter().map(|v| v.with_precision(prec)).collect()
        }
    };
    let work: Vec<Complex> = coeffs.iter().map(|c| c.with_precision(prec)).collect();
    aberth_mp(&work, &mut z, prec, 200);
    z
}

use dashu_float::ops::EstimatedLog2;

/// Root approximations with inclusion disks.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub prec: usize,
    pub roots: Vec<Complex>,
    /// Radius of a disk around each approximation that is known to contain
    /// a root. When the disks are pairwise disjoint each holds exactly one.
    pub radii: Vec<f64>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn approx(&self, i: usize) -> Complex64 {
        self.roots[i].to_c64()
    }

    pub fn isolated(&self) -> bool {
        let z: Vec<Complex64> = (0..self.len()).map(|i| self.approx(i)).collect();
        for i in 0..z.len() {
            for j in i + 1..z.len() {
                if (z[i] - z[j]).norm() <= (self.radii[i] + self.radii[j]) * (1.0 + 1e-12) {
                    return false;
                }
            }
        }
        true
    }

    /// Index of the root whose approximation is nearest to `t`.
    pub fn nearest(&self, t: Complex64) -> Option<usize> {
        (0..self.len()).min_by(|&a, &b| {
            (self.approx(a) - t)
                .norm()
                .total_cmp(&(self.approx(b) - t).norm())
        })
    }
}

/// Weierstrass inclusion radii `n (|p(z_i)| + e_i) / |a_n prod (z_i - z_j)|`
/// where `e_i` bounds the Horner rounding error.
fn inclusion_radii(coeffs: &[Complex], z: &[Complex], prec: usize) -> Vec<f64> {
    let n = z.len();
    let lead = coeffs[n].abs();
    let u = 2.0f64.powi(-(prec as i32) + 2);
    (0..n)
        .map(|i| {
            let p = eval(coeffs, &z[i]).abs();
            let zi = z[i].abs();
            let mut majorant = real_from_i64(0, prec);
            for c in coeffs.iter().rev() {
                majorant = &majorant * &zi + c.abs();
            }
            let mut denom = lead.clone();
            for j in 0..n {
                if j != i {
                    denom = &denom * z[i].sub(&z[j]).abs();
                }
            }
            if denom.repr().is_zero() {
                return f64::INFINITY;
            }
            let err = majorant * real_from_f64(2.0 * (n as f64 + 1.0) * u, 64);
            let r = (p + err) / denom * real_from_i64(n as i64, 64);
            let rf = to_f64(&r);
            if rf.is_finite() {
                rf * (1.0 + 1e-9) + f64::MIN_POSITIVE
            } else {
                f64::INFINITY
            }
        })
        .collect()
}

/// All roots of a squarefree integer polynomial with disjoint inclusion
/// disks. Precision doubles from `prec` until the disks separate.
pub fn isolate_roots(p: &IntPoly, prec: usize) -> RootSet {
    let mut prec = prec.max(64);
    loop {
        let coeffs = int_coeffs(p, prec);
        let roots = approximate_roots(&coeffs, prec);
        let radii = inclusion_radii(&coeffs, &roots, prec);
        let set = RootSet { prec, roots, radii };
        if set.isolated() || prec > 1 << 16 {
            return set;
        }
        prec *= 2;
    }
}

/// Roots of a polynomial with real multiprecision coefficients.
pub fn roots_of_real(coeffs: &[Real], prec: usize) -> Vec<Complex> {
    approximate_roots(&real_coeffs(coeffs, prec), prec)
}

/// Refine the largest real root of a monic integer polynomial by Newton's
/// method started at `start >= root`, to `prec` bits.
///
/// A monic polynomial is increasing and convex to the right of its largest
/// real root when every other root has smaller real part, so the iterates
/// decrease monotonically.
pub fn newton_largest_real_root(p: &IntPoly, start: &Real, prec: usize) -> Real {
    let mut x = start.clone();
    for stage in [64usize, prec.max(64)] {
        let c: Vec<Real> = p.coeffs().iter().map(|v| real_from_int(v, stage + 16)).collect();
        let dc: Vec<Real> = p
            .derivative()
            .coeffs()
            .iter()
            .map(|v| real_from_int(v, stage + 16))
            .collect();
        x = x.with_precision(stage + 16).value();
        let tol = Real::from_parts(IBig::ONE, -(stage as isize));
        for _ in 0..100_000 {
            let f = eval_real(&c, &x);
            if f.repr().is_zero() {
                break;
            }
            let df = eval_real(&dc, &x);
            if df.repr().is_zero() {
                break;
            }
            let step = &f / &df;
            x = &x - &step;
            if abs(&step) <= &tol * &(abs(&x) + real_from_i64(1, 16)) {
                break;
            }
        }
    }
    x
}

pub fn f64_of_int(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}
