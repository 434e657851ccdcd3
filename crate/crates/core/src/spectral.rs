//! Exact characteristic polynomials and rank, the Perron-Frobenius
//! criterion and eigenvalue, complexity δ, reciprocity, the invariant
//! alternating form and the height function.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bipartition, first_unvisited, graph_of, is_connected};
use crate::matrix::{dot, Matrix};
use crate::mp::{self, Real};
use crate::penner::{twist_product, IntersectionMatrix, TwistWord};
use crate::poly::{IntPoly, Poly, RatPoly};
use crate::ring::int_to_rat;

/// `det(xI - M)` by Faddeev-LeVerrier. Every intermediate is integral for
/// an integer matrix, so the divisions by `k` are exact.
pub fn char_poly_exact(m: &Matrix<BigInt>) -> IntPoly {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk = Matrix::<BigInt>::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = m.mul_mat(&mk);
        for i in 0..n {
            next[(i, i)] += &c[n - k + 1];
        }
        mk = next;
        let tr = m.mul_mat(&mk).trace();
        c[n - k] = -(tr / BigInt::from(k));
    }
    Poly::new(c)
}

/// Characteristic polynomial of a rational matrix: with `A = N/d`,
/// `χ_A(x) = d^{-n} χ_N(d x)`.
pub fn char_poly_rational(m: &Matrix<BigRational>) -> RatPoly {
    let (d, num) = m.clear_denominators();
    let chi = char_poly_exact(&num);
    let n = m.rows();
    let dr = int_to_rat(&d);
    let mut dpow = BigRational::one();
    let mut coeffs = Vec::with_capacity(n + 1);
    let inv_dn = num_traits::pow(dr.clone(), n).recip();
    for c in chi.coeffs() {
        coeffs.push(int_to_rat(c) * &dpow * &inv_dn);
        dpow *= &dr;
    }
    Poly::new(coeffs)
}

pub fn rank_exact(omega: &IntersectionMatrix) -> usize {
    match omega.integral() {
        Some(m) => m.rank(),
        None => omega.entries().rank(),
    }
}

/// Why a product fails the PF criterion.
pub fn pf_obstruction(omega: &IntersectionMatrix, word: &TwistWord) -> Option<String> {
    if !is_connected(&graph_of(omega)) {
        return Some("G(omega) is disconnected".into());
    }
    first_unvisited(word.gamma(), omega.n()).map(|i| format!("generator {i} unused"))
}

/// `M_γ^p(Ω)` is Perron-Frobenius iff G(Ω) is connected and the word uses
/// every generator. `m` is accepted for interface symmetry; the test is
/// purely combinatorial.
pub fn pf_certify<M>(_m: &M, omega: &IntersectionMatrix, word: &TwistWord) -> bool {
    pf_obstruction(omega, word).is_none()
}

/// Nonnegative with some positive power (Wielandt bound `(n-1)^2 + 1`).
pub fn is_primitive(m: &Matrix<BigInt>) -> bool {
    let n = m.rows();
    if (0..n).any(|i| m.row(i).iter().any(Signed::is_negative)) {
        return false;
    }
    let b: Vec<Vec<bool>> = (0..n).map(|i| m.row(i).iter().map(|v| !v.is_zero()).collect()).collect();
    let mul = |x: &Vec<Vec<bool>>, y: &Vec<Vec<bool>>| -> Vec<Vec<bool>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|k| x[i][k] && y[k][j])).collect())
            .collect()
    };
    let bound = (n.saturating_sub(1)).pow(2) + 1;
    // B^e for e = 2^s >= bound; positivity is monotone in e for primitive
    // matrices.
    let mut p = b;
    let mut e = 1;
    while e < bound {
        p = mul(&p, &p);
        e *= 2;
    }
    p.iter().all(|r| r.iter().all(|&v| v))
}

/// A certified approximation of a simple real root.
#[derive(Clone, Debug)]
pub struct RootApprox {
    pub value: Real,
    /// The root lies strictly inside `((a-1)/2^t, (a+1)/2^t)`.
    pub center: BigInt,
    pub shift: u64,
}

impl RootApprox {
    pub fn to_f64(&self) -> f64 {
        mp::to_f64(&self.value)
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        mp::to_decimal_string(&self.value, digits)
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(&self.center - 1, BigInt::one() << self.shift)
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(&self.center + 1, BigInt::one() << self.shift)
    }

    /// `p` changes sign across the certified bracket.
    pub fn brackets_root_of(&self, p: &IntPoly) -> bool {
        let lo = p.sign_at_dyadic(&(&self.center - 1), self.shift);
        let hi = p.sign_at_dyadic(&(&self.center + 1), self.shift);
        lo * hi < 0
    }
}

/// Largest real root of a monic integer polynomial, given `start` at or
/// to the right of it, certified by an exact sign change.
pub fn largest_real_root(p: &IntPoly, start: &BigInt, digits: usize) -> Result<RootApprox> {
    let mut bits = mp::bits_for_digits(digits) + 32;
    for _ in 0..6 {
        let x0 = mp::real_from_int(start, bits);
        let x = mp::newton_largest_real_root(p, &x0, bits);
        let mag = x.log2_est_bits();
        let shift = (bits as i64 - 16 - mag).max(8) as u64;
        let center = mp::scaled_round(&x, shift as usize);
        let r = RootApprox { value: x, center, shift };
        let lo = p.sign_at_dyadic(&(&r.center - 1), shift);
        let hi = p.sign_at_dyadic(&(&r.center + 1), shift);
        if lo < 0 && hi > 0 {
            return Ok(r);
        }
        bits *= 2;
    }
    Err(Error::AmbiguousRootAssignment)
}

trait Log2Bits {
    fn log2_est_bits(&self) -> i64;
}

impl Log2Bits for Real {
    fn log2_est_bits(&self) -> i64 {
        use dashu_float::ops::EstimatedLog2;
        if self.repr().is_zero() {
            0
        } else {
            self.log2_est().ceil() as i64
        }
    }
}

fn row_sums(m: &Matrix<BigInt>) -> Vec<BigInt> {
    (0..m.rows()).map(|i| m.row(i).iter().sum()).collect()
}

/// The PF eigenvalue of a primitive integer matrix to `digits` significant
/// digits, bracketed by an exact sign change of `χ_M`.
pub fn pf_eigenvalue(m: &Matrix<BigInt>, digits: usize) -> Result<RootApprox> {
    if !is_primitive(m) {
        return Err(Error::NotPerronFrobenius("matrix is not primitive".into()));
    }
    let chi = char_poly_exact(m);
    let start = row_sums(m).into_iter().max().unwrap_or_else(BigInt::one);
    largest_real_root(&chi, &start, digits)
}

/// Exact division `χ = (x-1)^{n-r} p(x)` with `p(1) != 0`.
pub fn structure_split(charpoly: &IntPoly, n: usize, r: usize) -> Result<(usize, IntPoly)> {
    let e = n.checked_sub(r).ok_or(Error::DivisionFailed { exponent: 0 })?;
    let reduced = charpoly
        .exact_div_monic(&Poly::x_minus_one_pow(e))
        .ok_or(Error::DivisionFailed { exponent: e })?;
    if reduced.eval(&BigInt::one()).is_zero() {
        return Err(Error::DivisionFailed { exponent: e });
    }
    Ok((e, reduced))
}

/// δ: roots different from 1, counted with multiplicity (exact).
pub fn complexity<T: crate::ring::Ring>(p: &Poly<T>) -> usize {
    p.degree() - p.multiplicity_of_one()
}

/// δ for a real-coefficient polynomial: the multiplicity of 1 is the
/// number of synthetic divisions by `(x-1)` whose remainder is below
/// `tol` relative to the largest coefficient.
pub fn complexity_approx(coeffs: &[f64], tol: f64) -> usize {
    let mut c = coeffs.to_vec();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    let mut mult = 0;
    while c.len() > 1 {
        let scale = c.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
        let n = c.len() - 1;
        let mut q = vec![0.0; n];
        let mut acc = 0.0;
        for i in (0..=n).rev() {
            acc = acc + c[i];
            if i > 0 {
                q[i - 1] = acc;
            }
        }
        // acc is now p(1)
        if acc.abs() > tol * scale {
            break;
        }
        c = q;
        mult += 1;
    }
    deg - mult
}

/// `x^d p(1/x) = ±p(x)`: palindromic or anti-palindromic coefficients.
pub fn is_reciprocal(p: &IntPoly) -> bool {
    let c = p.coeffs();
    let d = c.len();
    let pal = (0..d).all(|i| c[i] == c[d - 1 - i]);
    let anti = (0..d).all(|i| c[i] == -&c[d - 1 - i]);
    pal || anti
}

/// The alternating form `Δ = UΩ` in the block-ordered basis.
#[derive(Clone, Debug)]
pub struct AlternatingForm {
    /// New 0-based index `a` is old index `perm[a]`; the a-block comes first.
    pub perm: Vec<usize>,
    pub a_size: usize,
    pub delta: Matrix<BigRational>,
}

/// Permutation putting the a-block first, both blocks in increasing order.
pub fn block_permutation(omega: &IntersectionMatrix) -> Result<(Vec<usize>, usize)> {
    let (a, b) = bipartition(&graph_of(omega)).ok_or(Error::NotBipartite)?;
    let perm: Vec<usize> = a.iter().chain(&b).map(|i| i - 1).collect();
    Ok((perm, a.len()))
}

/// `Δ = [[0, X], [-Xᵀ, 0]]` for an Ω already in block form
/// `[[0, X], [Xᵀ, 0]]` with an a-block of size `a_size`.
pub fn delta_contiguous(omega: &IntersectionMatrix, a_size: usize) -> Result<Matrix<BigRational>> {
    let n = omega.n();
    let w = omega.entries();
    for i in 0..n {
        for j in 0..n {
            if (i < a_size) == (j < a_size) && !w[(i, j)].is_zero() {
                return Err(Error::BlocksNotContiguous);
            }
        }
    }
    Ok(Matrix::from_fn(n, n, |i, j| {
        if i < a_size {
            w[(i, j)].clone()
        } else {
            -w[(i, j)].clone()
        }
    }))
}

pub fn alternating_form(omega: &IntersectionMatrix) -> Result<AlternatingForm> {
    let (perm, a_size) = block_permutation(omega)?;
    let delta = delta_contiguous(&omega.permuted(&perm), a_size)?;
    Ok(AlternatingForm { perm, a_size, delta })
}

/// Exact test of `MᵀΔM = Δ` in the block-ordered basis.
pub fn symplectic_check(omega: &IntersectionMatrix, m: &Matrix<BigRational>) -> Result<bool> {
    if m.rows() != omega.n() {
        return Err(Error::DimensionMismatch { expected: omega.n(), got: m.rows() });
    }
    let form = alternating_form(omega)?;
    let mp = m.permute(&form.perm);
    let lhs = mp.transpose().mul_mat(&form.delta).mul_mat(&mp);
    Ok(lhs == form.delta)
}

/// `h(v) = ½ vᵀΩv`.
pub fn height(omega: &IntersectionMatrix, v: &[BigRational]) -> Result<BigRational> {
    if v.len() != omega.n() {
        return Err(Error::DimensionMismatch { expected: omega.n(), got: v.len() });
    }
    let wv = omega.entries().mul_vec(v);
    Ok(dot(v, &wv) / BigRational::from_integer(2.into()))
}

/// `Q_i v` for a column vector, 1-based `i`: only coordinate `i` changes,
/// by `(Ωv)_i`.
pub fn apply_q(omega: &IntersectionMatrix, i: usize, v: &[BigRational]) -> Result<Vec<BigRational>> {
    omega.check_index(i)?;
    if v.len() != omega.n() {
        return Err(Error::DimensionMismatch { expected: omega.n(), got: v.len() });
    }
    let mut out = v.to_vec();
    out[i - 1] += dot(omega.entries().row(i - 1), v);
    Ok(out)
}

/// Everything computed about one product `M_γ^p(Ω)` for integral Ω.
#[derive(Clone, Debug)]
pub struct SpectralReport {
    pub n: usize,
    pub matrix: Matrix<BigInt>,
    pub charpoly: IntPoly,
    pub rank: usize,
    pub unit_part_exponent: usize,
    pub reduced_poly: IntPoly,
    pub pf_value: RootApprox,
    pub complexity: usize,
    pub is_pf: bool,
    pub digits: usize,
}

pub fn spectral_report(omega: &IntersectionMatrix, word: &TwistWord, digits: usize) -> Result<SpectralReport> {
    let m = twist_product(omega, word)?;
    let m = m.integer()?.clone();
    if let Some(why) = pf_obstruction(omega, word) {
        return Err(Error::NotPerronFrobenius(why));
    }
    let charpoly = char_poly_exact(&m);
    let rank = rank_exact(omega);
    let (unit_part_exponent, reduced_poly) = structure_split(&charpoly, omega.n(), rank)?;
    let start = row_sums(&m).into_iter().max().unwrap_or_else(BigInt::one);
    let pf_value = largest_real_root(&reduced_poly, &start, digits)?;
    let complexity = complexity(&charpoly);
    Ok(SpectralReport {
        n: omega.n(),
        matrix: m,
        charpoly,
        rank,
        unit_part_exponent,
        reduced_poly,
        pf_value,
        complexity,
        is_pf: true,
        digits,
    })
}

/// Coefficients as decimal strings, constant term first.
pub fn coeff_strings(p: &IntPoly) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

#[derive(Serialize)]
pub struct PolyJson {
    pub coefficients: Vec<String>,
    pub text: String,
}

impl From<&IntPoly> for PolyJson {
    fn from(p: &IntPoly) -> Self {
        PolyJson { coefficients: coeff_strings(p), text: p.to_string() }
    }
}
