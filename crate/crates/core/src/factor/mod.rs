//! Factorization of monic integer polynomials, the algebraic degree of the
//! stretch factor, and the converging-roots diagnostic.

pub mod modp;

pub use modp::{admissible_degrees, ddf_degrees};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mp::{self, Real};
use crate::poly::{IntPoly, Poly, RatPoly};
use crate::spectral::{largest_real_root, RootApprox, SpectralReport};

/// Number of good primes consulted for degree pruning.
const MOD_P_ROUNDS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Irreducible monic factors with multiplicities, sorted by degree then
    /// coefficients.
    pub factors: Vec<(IntPoly, usize)>,
    /// False only when root isolation failed for some squarefree part and
    /// that part was returned unsplit.
    pub certified: bool,
}

impl Factorization {
    pub fn product(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(Poly::one(), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|(f, _)| f.degree()).collect()
    }
}

/// Yun's squarefree decomposition over ℚ. Parts are monic integer
/// polynomials (Gauss) with strictly increasing multiplicities.
pub fn squarefree_decomposition(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    assert!(p.is_monic(), "squarefree_decomposition expects a monic polynomial");
    if p.degree() == 0 {
        return Vec::new();
    }
    if modp::squarefree_mod_some_prime(p) {
        return vec![(p.clone(), 1)];
    }
    let f = p.to_rational();
    let df = f.derivative();
    let c = f.gcd(&df);
    let mut w = f.div_rem(&c).0;
    let mut y = df.div_rem(&c).0;
    let mut z = y.sub(&w.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while w.degree() > 0 {
        let g = w.gcd(&z);
        if g.degree() > 0 {
            out.push((monic_integer(&g), i));
        }
        w = w.div_rem(&g).0;
        y = z.div_rem(&g).0;
        z = y.sub(&w.derivative());
        i += 1;
    }
    out
}

fn monic_integer(p: &RatPoly) -> IntPoly {
    p.monic().to_integer().expect("monic factor of a monic integer polynomial is integral")
}

/// Complete factorization of a monic integer polynomial over ℤ.
///
/// Candidate degrees are pruned by distinct-degree factorization modulo
/// several primes. Surviving degrees are searched by subsets of isolated
/// complex roots (a real root or a conjugate pair per unit), smallest size
/// first; each candidate is rounded and certified by exact division.
pub fn factor_monic(p: &IntPoly) -> Factorization {
    assert!(p.is_monic(), "factor_monic expects a monic polynomial");
    let mut factors = Vec::new();
    let mut certified = true;
    for (part, m) in squarefree_decomposition(p) {
        let mut irr = Vec::new();
        certified &= factor_squarefree(&part, &mut irr);
        factors.extend(irr.into_iter().map(|f| (f, m)));
    }
    factors.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
            .then(a.1.cmp(&b.1))
    });
    Factorization { factors, certified }
}

fn factor_squarefree(s: &IntPoly, out: &mut Vec<IntPoly>) -> bool {
    let d = s.degree();
    if d <= 1 {
        out.push(s.clone());
        return true;
    }
    if s.coeff(0).is_zero() {
        let x = Poly::from_i64(&[0, 1]);
        out.push(x.clone());
        let rest = s.exact_div_monic(&x).expect("x divides s");
        return factor_squarefree(&rest, out);
    }
    let adm = admissible_degrees(s, MOD_P_ROUNDS);
    let sizes: Vec<usize> = (1..=d / 2).filter(|&k| adm[k]).collect();
    if sizes.is_empty() {
        out.push(s.clone());
        return true;
    }
    let mut prec = 64;
    loop {
        let roots = mp::isolate_roots(s, prec);
        if !roots.isolated() {
            out.push(s.clone());
            return false;
        }
        match search_factor(s, &roots, &sizes) {
            Search::Found(f) => {
                let rest = s.exact_div_monic(&f).expect("certified by exact division");
                out.push(f);
                return factor_squarefree(&rest, out);
            }
            Search::Irreducible => {
                out.push(s.clone());
                return true;
            }
            Search::NeedPrecision => prec *= 2,
        }
    }
}

enum Search {
    Found(IntPoly),
    Irreducible,
    NeedPrecision,
}

/// A real root or a conjugate pair, as indices into a [`mp::RootSet`].
struct Unit {
    idx: Vec<usize>,
    trace: f64,
    abs: f64,
    radius: f64,
}

fn root_units(roots: &mp::RootSet) -> Vec<Unit> {
    let mut units = Vec::new();
    for i in 0..roots.len() {
        let z = roots.approx(i);
        let j = roots.nearest(z.conj()).expect("nonempty");
        if j == i {
            units.push(Unit { idx: vec![i], trace: z.re, abs: z.norm(), radius: roots.radii[i] });
        } else if z.im > 0.0 {
            units.push(Unit {
                idx: vec![i, j],
                trace: 2.0 * z.re,
                abs: z.norm_sqr(),
                radius: roots.radii[i] + roots.radii[j],
            });
        }
    }
    units
}

fn search_factor(s: &IntPoly, roots: &mp::RootSet, sizes: &[usize]) -> Search {
    let units = root_units(roots);
    if units.iter().map(|u| u.idx.len()).sum::<usize>() != s.degree() {
        return Search::NeedPrecision;
    }
    let a0 = s.coeff(0).abs();
    let a0f = mp::f64_of_int(&a0);
    for &k in sizes {
        let mut chosen = Vec::new();
        if let Some(r) = subsets(&units, 0, k, &mut chosen, &mut |sel| try_subset(s, roots, &units, sel, &a0, a0f)) {
            return r;
        }
    }
    Search::Irreducible
}

/// Depth-first lexicographic enumeration of unit subsets of total size
/// `left`; `visit` returns `Some` to stop.
fn subsets(
    units: &[Unit],
    from: usize,
    left: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> Option<Search>,
) -> Option<Search> {
    if left == 0 {
        return visit(chosen);
    }
    for u in from..units.len() {
        let sz = units[u].idx.len();
        if sz > left {
            continue;
        }
        chosen.push(u);
        let r = subsets(units, u + 1, left - sz, chosen, visit);
        chosen.pop();
        if r.is_some() {
            return r;
        }
    }
    None
}

fn try_subset(
    s: &IntPoly,
    roots: &mp::RootSet,
    units: &[Unit],
    sel: &[usize],
    a0: &BigInt,
    a0f: f64,
) -> Option<Search> {
    // Trace filter: the root sum of an integer factor is an integer.
    let trace: f64 = sel.iter().map(|&u| units[u].trace).sum();
    let r_sum: f64 = sel.iter().map(|&u| units[u].radius).sum();
    let mag: f64 = sel.iter().map(|&u| units[u].abs.abs() + 1.0).sum();
    if (trace - trace.round()).abs() > 2.0 * r_sum + 1e-12 * mag + 1e-9 {
        return None;
    }
    // Norm filter: |constant term| is an integer >= 1 dividing a0.
    let mut norm = 1.0f64;
    let mut rel = 0.0f64;
    for &u in sel {
        let unit = &units[u];
        norm *= unit.abs;
        for &i in &unit.idx {
            let zi = roots.approx(i).norm();
            rel += roots.radii[i] / (zi - roots.radii[i]).max(f64::MIN_POSITIVE);
        }
    }
    let tol = norm * (rel.exp_m1() + 1e-12) + 1e-9;
    let rn = norm.round();
    if rn < 1.0 - tol || (norm - rn).abs() > tol {
        return None;
    }
    if tol < 0.25 && rn < 1e18 {
        if rn > a0f * (1.0 + 1e-12) || !(a0 % BigInt::from(rn as u64)).is_zero() {
            return None;
        }
    }
    // Coefficient error of prod (x - z_i): e_j(a + r) - e_j(a) is at most
    // (sum r_i) e_{j-1}(a + r), plus rounding in the product itself.
    let mut infl_mag = vec![1.0f64];
    let idx: Vec<usize> = sel.iter().flat_map(|&u| units[u].idx.iter().copied()).collect();
    let mut r_total = 0.0;
    for &i in &idx {
        let r = roots.radii[i];
        r_total += r;
        infl_mag = mul_linear(&infl_mag, roots.approx(i).norm() + r);
    }
    let top = infl_mag.iter().copied().fold(0.0, f64::max);
    let rounding = top * (idx.len() as f64 + 1.0) * 2f64.powi(-(roots.prec as i32) + 4);
    let bound = (r_total * top + rounding) * 1.01;
    if !(bound < 0.25) {
        return Some(Search::NeedPrecision);
    }
    let cand = round_product(roots, &idx);
    if cand.degree() == idx.len() && s.exact_div_monic(&cand).is_some() {
        return Some(Search::Found(cand));
    }
    None
}

fn mul_linear(p: &[f64], a: f64) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] += c;
        out[i] += c * a;
    }
    out
}

/// Nearest-integer coefficients of `prod (x - z_i)` at the root-set precision.
fn round_product(roots: &mp::RootSet, idx: &[usize]) -> IntPoly {
    let prec = roots.prec;
    let mut c = vec![mp::Complex::from_real(mp::real_from_i64(1, prec))];
    for &i in idx {
        let z = &roots.roots[i];
        let mut next = vec![mp::Complex::zero(prec); c.len() + 1];
        for (j, cj) in c.iter().enumerate() {
            next[j + 1] = next[j + 1].add(cj);
            next[j] = next[j].sub(&cj.mul(z));
        }
        c = next;
    }
    Poly::new(c.iter().map(|v| mp::scaled_round(&v.re, 0)).collect())
}

/// Index of the factor of `fac` that changes sign across the certified
/// bracket of `root`, if exactly one does.
pub fn factor_with_root(fac: &Factorization, root: &RootApprox) -> Option<usize> {
    let hits: Vec<usize> = fac
        .factors
        .iter()
        .enumerate()
        .filter(|(_, (f, _))| root.brackets_root_of(f))
        .map(|(i, _)| i)
        .collect();
    match hits.as_slice() {
        [i] => Some(*i),
        _ => None,
    }
}

/// The minimal polynomial of λ: the irreducible factor of the reduced
/// polynomial with a certified sign change around λ.
pub fn pf_minimal_polynomial(report: &SpectralReport) -> Result<IntPoly> {
    if !report.is_pf {
        return Err(Error::NotPerronFrobenius("report is not Perron-Frobenius".into()));
    }
    let fac = factor_monic(&report.reduced_poly);
    let start = (0..report.matrix.rows())
        .map(|i| report.matrix.row(i).iter().sum::<BigInt>())
        .max()
        .unwrap_or_else(BigInt::one);
    let mut root = report.pf_value.clone();
    let mut digits = report.digits;
    for attempt in 0..=5 {
        if attempt > 0 {
            digits *= 4;
            root = largest_real_root(&report.reduced_poly, &start, digits)?;
        }
        if let Some(i) = factor_with_root(&fac, &root) {
            return Ok(fac.factors[i].0.clone());
        }
    }
    Err(Error::AmbiguousRootAssignment)
}

pub fn degree_of_pf_root(report: &SpectralReport) -> Result<usize> {
    Ok(pf_minimal_polynomial(report)?.degree())
}

/// `u / (x - λ)` by backward recurrence from the constant term, which is
/// stable when λ is the dominant root: `q_0 = -a_0/λ`, `q_j = (q_{j-1} - a_j)/λ`.
pub fn deflate(u: &IntPoly, lambda: &Real, prec: usize) -> Vec<Real> {
    let a: Vec<Real> = u.coeffs().iter().map(|c| mp::real_from_int(c, prec)).collect();
    let l = lambda.clone().with_precision(prec).value();
    let n = u.degree();
    let mut q = Vec::with_capacity(n);
    let mut prev = mp::real_from_i64(0, prec);
    for aj in a.iter().take(n) {
        let v = (&prev - aj) / &l;
        q.push(v.clone());
        prev = v;
    }
    q
}

#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub lambda: f64,
    /// `‖u_k/(x-λ_k) - v‖∞` over coefficients.
    pub distance: f64,
    /// Per nonzero root θ of `v`: whether the root of `u_k` nearest θ lies
    /// in the same irreducible factor as λ_k.
    pub same_factor: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// λ_k strictly increasing over the sample.
    pub diverging: bool,
    pub thetas: Vec<Complex64>,
}

impl ConvergenceReport {
    pub fn distances(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.distance).collect()
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].distance < w[0].distance)
    }
}

const WORK_PREC: usize = 192;

/// Roots of `v` away from zero; zero is a simple root of every limit
/// polynomial and is skipped.
fn nonzero_roots(v: &[f64]) -> Vec<Complex64> {
    let c: Vec<mp::Complex> =
        v.iter().map(|&x| mp::Complex::from_real(mp::real_from_f64(x, WORK_PREC))).collect();
    let mut c = c;
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() < 2 {
        return Vec::new();
    }
    let scale = v.iter().fold(0.0f64, |a, x| a.max(x.abs())).max(1.0);
    mp::approximate_roots(&c, WORK_PREC)
        .iter()
        .map(|z| z.to_c64())
        .filter(|z| z.norm() > 1e-9 * scale)
        .collect()
}

fn factor_of_nearest_root(fac: &Factorization, roots: &[mp::RootSet], t: Complex64) -> usize {
    let mut best = (f64::INFINITY, 0);
    for (fi, set) in roots.iter().enumerate() {
        if let Some(i) = set.nearest(t) {
            let d = (set.approx(i) - t).norm();
            if d < best.0 {
                best = (d, fi);
            }
        }
    }
    debug_assert!(best.1 < fac.factors.len());
    best.1
}

/// Compare `u_k/(x-λ_k)` with `v` for each element of a sequence.
pub fn convergence_diagnostic(seq: &[(IntPoly, Real)], limit: &[f64]) -> Result<ConvergenceReport> {
    let thetas = nonzero_roots(limit);
    let mut rows = Vec::with_capacity(seq.len());
    for (pos, (u, lambda)) in seq.iter().enumerate() {
        let prec = WORK_PREC.max(lambda.precision());
        let coeffs: Vec<Real> = u.coeffs().iter().map(|c| mp::real_from_int(c, prec)).collect();
        let l = lambda.clone().with_precision(prec).value();
        let resid = mp::abs(&mp::eval_real(&coeffs, &l));
        let majorant = mp::eval_real(
            &coeffs.iter().map(mp::abs).collect::<Vec<_>>(),
            &mp::abs(&l),
        );
        if mp::to_f64(&resid) > 1e-20 * mp::to_f64(&majorant).max(1.0) {
            return Err(Error::RootMismatch(pos + 1));
        }
        let q = deflate(u, lambda, prec);
        let n = q.len().max(limit.len());
        let distance = (0..n)
            .map(|j| {
                let a = q.get(j).map(mp::to_f64).unwrap_or(0.0);
                let b = limit.get(j).copied().unwrap_or(0.0);
                (a - b).abs()
            })
            .fold(0.0, f64::max);
        let same_factor = if thetas.is_empty() {
            Vec::new()
        } else {
            let fac = factor_monic(u);
            let sets: Vec<mp::RootSet> = fac.factors.iter().map(|(f, _)| mp::isolate_roots(f, 64)).collect();
            let lam_c = Complex64::new(mp::to_f64(lambda), 0.0);
            let lf = factor_of_nearest_root(&fac, &sets, lam_c);
            thetas.iter().map(|&t| factor_of_nearest_root(&fac, &sets, t) == lf).collect()
        };
        rows.push(ConvergenceRow { lambda: mp::to_f64(lambda), distance, same_factor });
    }
    let diverging = rows.len() >= 2 && rows.windows(2).all(|w| w[1].lambda > w[0].lambda);
    Ok(ConvergenceReport { rows, diverging, thetas })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        Poly::from_i64(c)
    }

    #[test]
    fn trivial_split() {
        let f = factor_monic(&p(&[-1, 0, 1]));
        assert_eq!(f.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        assert!(f.certified);
    }

    #[test]
    fn fixtures_are_irreducible() {
        for c in [&[1, 1, -1, 0, -1, -3, 1][..], &[-1, -1, 1, -1, -3, 1][..]] {
            let f = factor_monic(&p(c));
            assert!(f.is_irreducible(), "{f:?}");
        }
    }

    #[test]
    fn products_of_known_factors() {
        let a = p(&[1, -3, 1]);
        let b = p(&[-1, -1, 1]);
        let c = p(&[-1, 5, -7, 1]);
        let prod = a.mul(&b).mul(&c).mul(&p(&[-1, 1]).pow(3));
        let f = factor_monic(&prod);
        assert_eq!(f.product(), prod);
        assert_eq!(f.degrees(), vec![1, 2, 2, 3]);
        assert!(f.factors.iter().any(|(g, m)| *g == p(&[-1, 1]) && *m == 3));
    }

    #[test]
    fn swinnerton_dyer_style_case() {
        // x^4 + 1 passes every mod-p test as reducible; the root search
        // must still find it irreducible.
        let f = factor_monic(&p(&[1, 0, 0, 0, 1]));
        assert!(f.is_irreducible());
        let g = factor_monic(&p(&[1, 0, 0, 0, 1]).mul(&p(&[1, 0, 0, 0, 1])));
        assert_eq!(g.factors, vec![(p(&[1, 0, 0, 0, 1]), 2)]);
    }

    #[test]
    fn cyclotomic_split() {
        // x^12 - 1 = Φ1 Φ2 Φ3 Φ4 Φ6 Φ12
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let f = factor_monic(&p(&c));
        assert_eq!(f.degrees(), vec![1, 1, 2, 2, 2, 4]);
        assert_eq!(f.product(), p(&c));
    }

    #[test]
    fn zero_root() {
        let f = factor_monic(&p(&[0, 1, 1]));
        assert_eq!(f.factors, vec![(p(&[0, 1]), 1), (p(&[1, 1]), 1)]);
    }

    #[test]
    fn deflation_of_cubic() {
        let u = p(&[-1, 5, -7, 1]);
        let root = largest_real_root(&u, &BigInt::from(9), 40).unwrap();
        let q = deflate(&u, &root.value, 192);
        // (x^3 - 7x^2 + 5x - 1)/(x - λ) = x^2 + (λ-7)x + 1/λ
        let l = root.to_f64();
        assert!((mp::to_f64(&q[2]) - 1.0).abs() < 1e-30_f64.max(1e-15));
        assert!((mp::to_f64(&q[1]) - (l - 7.0)).abs() < 1e-12);
        assert!((mp::to_f64(&q[0]) - 1.0 / l).abs() < 1e-12);
    }
}
