//! Limits of Penner products along rays `kΩ`: the projections `Q_{i←j}`,
//! their path products `P_γ`, the induced maps `f_γ` on `W_γ`, eigenvector
//! asymptotics and convergence experiments.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::factor::{convergence_diagnostic, ConvergenceReport};
use crate::graph::{first_missing_edge, first_unvisited, graph_of, path_supported};
use crate::matrix::Matrix;
use crate::mp::{self, Real};
use crate::penner::{path_edges, scale_int, twist_product, IntersectionMatrix, TwistWord};
use crate::poly::{IntPoly, Poly, RatPoly};
use crate::spectral::{char_poly_exact, char_poly_rational, pf_eigenvalue, RootApprox};

/// A point of the ideal boundary, held as any nonzero matrix on its ray.
/// Everything computed from it is scale-invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryPoint {
    representative: IntersectionMatrix,
}

impl BoundaryPoint {
    pub fn new(representative: IntersectionMatrix) -> Result<Self> {
        if representative.is_zero() {
            return Err(Error::PreconditionViolated("boundary point of the zero matrix".into()));
        }
        Ok(BoundaryPoint { representative })
    }

    pub fn representative(&self) -> &IntersectionMatrix {
        &self.representative
    }

    pub fn n(&self) -> usize {
        self.representative.n()
    }
}

/// `Q_{i←j} = I - ω_ij⁻¹ T_ji Ω`: row `j` becomes `e_j - row_i(Ω)/ω_ij`.
pub fn q_arrow(bp: &BoundaryPoint, i: usize, j: usize) -> Result<Matrix<BigRational>> {
    let w = &bp.representative;
    w.check_index(i)?;
    w.check_index(j)?;
    let wij = w.omega(i, j).clone();
    if !wij.is_positive() {
        return Err(Error::NotAnEdge { i, j });
    }
    let n = w.n();
    let mut q = Matrix::identity(n);
    for t in 0..n {
        let delta = if t == j - 1 { BigRational::one() } else { BigRational::zero() };
        q[(j - 1, t)] = delta - w.entries()[(i - 1, t)].clone() / &wij;
    }
    Ok(q)
}

fn check_supported(bp: &BoundaryPoint, gamma: &[usize]) -> Result<()> {
    for &v in gamma {
        bp.representative.check_index(v)?;
    }
    if gamma.len() < 2 {
        let v = gamma.first().copied().unwrap_or(1);
        return Err(Error::NotSupported { i: v, j: v });
    }
    match first_missing_edge(gamma, &graph_of(&bp.representative)) {
        Some((i, j)) => Err(Error::NotSupported { i, j }),
        None => Ok(()),
    }
}

/// `P_γ = Q_{i₁←i_K} ⋯ Q_{i₃←i₂} Q_{i₂←i₁}` acting on column vectors.
pub fn p_gamma(bp: &BoundaryPoint, gamma: &[usize]) -> Result<Matrix<BigRational>> {
    check_supported(bp, gamma)?;
    let mut p = Matrix::identity(bp.n());
    for (a, b) in path_edges(gamma) {
        p = q_arrow(bp, b, a)?.mul_mat(&p);
    }
    Ok(p)
}

/// `f_γ`: the restriction of `P_γ` to `W_γ = (e_{i₁}ᵀΩ)^⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitMap {
    /// 1-based coordinate eliminated by the basis.
    pub pivot: usize,
    pub w_basis: Vec<Vec<BigRational>>,
    pub matrix: Matrix<BigRational>,
    pub charpoly: RatPoly,
}

impl LimitMap {
    pub fn charpoly_f64(&self) -> Vec<f64> {
        self.charpoly.coeffs().iter().map(rat_to_f64).collect()
    }

    pub fn complexity(&self) -> usize {
        crate::spectral::complexity(&self.charpoly)
    }
}

pub(crate) fn rat_to_f64(q: &BigRational) -> f64 {
    mp::to_f64(&mp::real_from_rational(q, 64))
}

/// Basis `e_t - (r_t/r_m) e_m`, `t != m`, of `r^⊥`, with `m` the last
/// nonzero position of `r`.
fn perp_basis(r: &[BigRational]) -> Option<(usize, Vec<Vec<BigRational>>)> {
    let m = r.iter().rposition(|x| !x.is_zero())?;
    let n = r.len();
    let basis = (0..n)
        .filter(|&t| t != m)
        .map(|t| {
            let mut b = vec![BigRational::zero(); n];
            b[t] = BigRational::one();
            b[m] = -(r[t].clone() / &r[m]);
            b
        })
        .collect();
    Some((m, basis))
}

pub fn f_gamma(bp: &BoundaryPoint, gamma: &[usize]) -> Result<LimitMap> {
    let p = p_gamma(bp, gamma)?;
    let i1 = gamma[0];
    let r = bp.representative.row(i1);
    let (m, w_basis) = perp_basis(&r).ok_or(Error::DegenerateRow(i1))?;
    let n = bp.n();
    // A vector of W is determined by its coordinates off `m`, which are
    // also its coordinates in the basis.
    let coords: Vec<usize> = (0..n).filter(|&t| t != m).collect();
    let images: Vec<Vec<BigRational>> = w_basis.iter().map(|b| p.mul_vec(b)).collect();
    let matrix = Matrix::from_fn(n - 1, n - 1, |s, t| images[t][coords[s]].clone());
    let charpoly = char_poly_rational(&matrix);
    Ok(LimitMap { pivot: m + 1, w_basis, matrix, charpoly })
}

/// `γ` with the backtracking `(γ_pos v γ_pos)` inserted after position
/// `pos` (1-based).
pub fn insert_backtracking(gamma: &[usize], pos: usize, v: usize) -> Vec<usize> {
    assert!(pos >= 1 && pos <= gamma.len(), "insertion position out of range");
    let mut out = gamma[..pos].to_vec();
    out.push(v);
    out.push(gamma[pos - 1]);
    out.extend_from_slice(&gamma[pos..]);
    out
}

/// Inserting a backtracking keeps `W_γ` and the matrix of `f_γ` unchanged.
pub fn homotopy_invariance_check(bp: &BoundaryPoint, gamma: &[usize], insertion: (usize, usize)) -> Result<bool> {
    let (pos, v) = insertion;
    if pos == 0 || pos > gamma.len() {
        return Err(Error::PreconditionViolated(format!("insertion position {pos} outside 1..={}", gamma.len())));
    }
    let modified = insert_backtracking(gamma, pos, v);
    let a = f_gamma(bp, gamma)?;
    let b = f_gamma(bp, &modified)?;
    Ok(a == b)
}

/// Cyclic rotation changes `W_γ` but not `χ(f_γ)`.
pub fn rotation_invariance_check(bp: &BoundaryPoint, gamma: &[usize], shift: usize) -> Result<bool> {
    let mut rotated = gamma.to_vec();
    rotated.rotate_left(shift % gamma.len().max(1));
    Ok(f_gamma(bp, gamma)?.charpoly == f_gamma(bp, &rotated)?.charpoly)
}

/// `Q_{i₃←i₂} Q_{i₂←i} Q_{i←i₂} Q_{i₂←i₁} = Q_{i₃←i₂} Q_{i₂←i₁}` exactly.
pub fn projection_identity_check(bp: &BoundaryPoint, i1: usize, i2: usize, i: usize, i3: usize) -> Result<bool> {
    let last = q_arrow(bp, i3, i2)?;
    let first = q_arrow(bp, i2, i1)?;
    let lhs = last
        .mul_mat(&q_arrow(bp, i2, i)?)
        .mul_mat(&q_arrow(bp, i, i2)?)
        .mul_mat(&first);
    let rhs = last.mul_mat(&first);
    Ok(lhs == rhs)
}

/// `x (x-1)^s`.
pub fn contractible_limit(n: usize) -> RatPoly {
    Poly::monomial(BigRational::one(), 1).mul(&Poly::x_minus_one_pow(n.saturating_sub(2)))
}

#[derive(Clone, Debug)]
pub struct EigenvectorEstimate {
    pub k: u64,
    pub lambda: f64,
    pub lhs: f64,
    pub rhs_bound: f64,
}

impl EigenvectorEstimate {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs_bound
    }
}

/// Null vector of `A` (rank `n-1`) by Gaussian elimination with partial
/// pivoting; the free coordinate is set to 1.
fn null_vector(mut a: Vec<Vec<Real>>, prec: usize) -> Vec<Real> {
    let n = a.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == n {
            break;
        }
        let best = (row..n)
            .max_by(|&x, &y| mp::abs(&a[x][col]).partial_cmp(&mp::abs(&a[y][col])).expect("finite"))
            .expect("nonempty");
        // The last pivot of a singular matrix is rounding noise; stop
        // after n-1 pivots.
        if pivots.len() == n - 1 {
            break;
        }
        a.swap(row, best);
        let piv = a[row][col].clone();
        if piv.repr().is_zero() {
            continue;
        }
        for r in row + 1..n {
            let f = &a[r][col] / &piv;
            if f.repr().is_zero() {
                continue;
            }
            for c in col..n {
                let d = &f * &a[row][c];
                a[r][c] = &a[r][c] - &d;
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free = (0..n).find(|c| !pivots.contains(c)).unwrap_or(n - 1);
    let mut x = vec![mp::real_from_i64(0, prec); n];
    x[free] = mp::real_from_i64(1, prec);
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut s = mp::real_from_i64(0, prec);
        for t in c + 1..n {
            s = &s + &(&a[r][t] * &x[t]);
        }
        x[c] = -(s / &a[r][c]);
    }
    x
}

/// `min_{t ≥ 0} max_j |t v_j - a_j|`; the optimum sits at `t = 0` or where
/// two of the lines `±(t v_j - a_j)` cross.
pub fn best_scaled_distance(v: &[f64], a: &[f64]) -> f64 {
    let f = |t: f64| v.iter().zip(a).map(|(x, y)| (t * x - y).abs()).fold(0.0, f64::max);
    let mut best = f(0.0);
    let n = v.len();
    for j in 0..n {
        for l in j..n {
            for s in [1.0, -1.0] {
                let den = v[j] - s * v[l];
                if den != 0.0 {
                    let t = (a[j] - s * a[l]) / den;
                    if t >= 0.0 && t.is_finite() {
                        best = best.min(f(t));
                    }
                }
            }
        }
    }
    best
}

/// Both sides of the eigenvector estimate for `M_γ^p(kΩ)`.
pub fn eigenvector_asymptotics(omega: &IntersectionMatrix, word: &TwistWord, k: u64) -> Result<EigenvectorEstimate> {
    word.check_dim(omega.n())?;
    if word.len() < 2 {
        return Err(Error::PreconditionViolated("the path needs at least two vertices".into()));
    }
    if k == 0 {
        return Err(Error::NonpositiveScale("0".into()));
    }
    let g = graph_of(omega);
    if let Some((i, j)) = first_missing_edge(word.gamma(), &g) {
        return Err(Error::PreconditionViolated(format!("edge ({i},{j}) missing from G(omega)")));
    }
    if let Some(i) = first_unvisited(word.gamma(), omega.n()) {
        return Err(Error::PreconditionViolated(format!("generator {i} unused")));
    }
    let kw = scale_int(omega, k)?;
    let edge_min = word
        .edges()
        .iter()
        .map(|&(i, j)| kw.omega(i, j).clone())
        .min()
        .expect("at least one edge");
    if edge_min < BigRational::one() {
        return Err(Error::PreconditionViolated("min entry of kΩ along the path is below 1".into()));
    }
    let m = twist_product(&kw, word)?.integer()?.clone();
    let lam = pf_eigenvalue(&m, 60)?;
    let prec = 320;
    let n = m.rows();
    let l = lam.value.clone().with_precision(prec).value();
    let a: Vec<Vec<Real>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = mp::real_from_int(&m[(j, i)], prec);
                    if i == j {
                        &e - &l
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    let v = null_vector(a, prec);
    let vmax = v.iter().map(mp::to_f64).fold(0.0f64, |x, y| x.max(y.abs()));
    let vf: Vec<f64> = v.iter().map(|x| mp::to_f64(x) / vmax).collect();
    let gamma = word.gamma();
    let (i1, i2) = (gamma[0], gamma[1]);
    let p1 = word.powers()[0] as f64;
    let inv = 1.0 / rat_to_f64(kw.omega(i2, i1));
    let target: Vec<f64> = (0..n)
        .map(|t| p1 * rat_to_f64(kw.omega(i1, t + 1)) + inv * rat_to_f64(kw.omega(i2, t + 1)))
        .collect();
    let lhs = best_scaled_distance(&vf, &target);
    let kk = word.len() as i32;
    let rhs_bound = 2f64.powi(kk) * (word.p_max() as f64).powi(kk - 2) * rat_to_f64(&kw.max_entry()).powi(kk - 1)
        / ((word.p_min() as f64).powi(kk) * rat_to_f64(&edge_min).powi(kk));
    Ok(EigenvectorEstimate { k, lambda: lam.to_f64(), lhs, rhs_bound })
}

/// One scale of a convergent ray experiment.
#[derive(Clone, Debug)]
pub struct RayRow {
    pub k: u64,
    pub charpoly: IntPoly,
    pub lambda: RootApprox,
    pub distance: f64,
}

#[derive(Clone, Debug)]
pub struct ConvergentRay {
    pub limit: LimitMap,
    pub rows: Vec<RayRow>,
    pub diagnostic: ConvergenceReport,
}

impl ConvergentRay {
    /// Distances decrease strictly over the last `tail` scales.
    pub fn tail_decreasing(&self, tail: usize) -> bool {
        let start = self.rows.len().saturating_sub(tail);
        self.rows[start..].windows(2).all(|w| w[1].distance < w[0].distance)
    }
}

/// Growth of eigenvalue magnitudes when the path leaves `G(Ω)`.
#[derive(Clone, Debug)]
pub struct DivergentRay {
    pub missing_edge: (usize, usize),
    pub scales: Vec<u64>,
    /// Per scale, eigenvalues sorted by decreasing modulus.
    pub eigenvalues: Vec<Vec<Complex64>>,
    /// Least-squares slope of `ln|μ_j|` against `ln k`, per rank `j`.
    pub exponents: Vec<f64>,
    /// `|μ_j| k^{-round(slope)}` at the largest scale.
    pub constants: Vec<f64>,
}

#[derive(Clone, Debug)]
pub enum RayReport {
    Convergent(ConvergentRay),
    Divergent(DivergentRay),
}

fn loglog_slope(ks: &[u64], ys: &[f64]) -> f64 {
    let xs: Vec<f64> = ks.iter().map(|&k| (k as f64).ln()).collect();
    let ls: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ls.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ls).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn eigenvalues_sorted(chi: &IntPoly) -> Vec<Complex64> {
    let mut z: Vec<Complex64> = mp::isolate_roots(chi, 128).roots.iter().map(|c| c.to_c64()).collect();
    z.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    z
}

/// Follow `M_γ^p(kΩ)` over `scales`. A path supported in `G(Ω)` gives a
/// convergence table against `χ(f_γ(Ω))`; otherwise growth exponents of
/// the eigenvalues are fitted.
pub fn ray_convergence_experiment(
    omega: &IntersectionMatrix,
    word: &TwistWord,
    scales: &[u64],
    digits: usize,
) -> Result<RayReport> {
    word.check_dim(omega.n())?;
    if let Some(i) = first_unvisited(word.gamma(), omega.n()) {
        return Err(Error::NotGeneral(i));
    }
    if scales.is_empty() {
        return Err(Error::PreconditionViolated("empty scale list".into()));
    }
    if let Some(&k) = scales.iter().find(|&&k| k == 0) {
        return Err(Error::NonpositiveScale(k.to_string()));
    }
    let g = graph_of(omega);
    if let Some(missing_edge) = first_missing_edge(word.gamma(), &g) {
        let mut eigenvalues = Vec::new();
        for &k in scales {
            let m = twist_product(&scale_int(omega, k)?, word)?;
            eigenvalues.push(eigenvalues_sorted(&char_poly_exact(m.integer()?)));
        }
        let n = omega.n();
        let exponents: Vec<f64> = (0..n)
            .map(|j| loglog_slope(scales, &eigenvalues.iter().map(|e| e[j].norm()).collect::<Vec<_>>()))
            .collect();
        let k_last = *scales.last().unwrap() as f64;
        let last = eigenvalues.last().unwrap();
        let constants = (0..n).map(|j| last[j].norm() * k_last.powf(-exponents[j].round())).collect();
        return Ok(RayReport::Divergent(DivergentRay {
            missing_edge,
            scales: scales.to_vec(),
            eigenvalues,
            exponents,
            constants,
        }));
    }
    debug_assert!(path_supported(word.gamma(), &g));
    let bp = BoundaryPoint::new(omega.clone())?;
    let limit = f_gamma(&bp, word.gamma())?;
    let mut rows = Vec::with_capacity(scales.len());
    let mut seq = Vec::with_capacity(scales.len());
    for &k in scales {
        let m = twist_product(&scale_int(omega, k)?, word)?;
        let m = m.integer()?;
        let lambda = pf_eigenvalue(m, digits)?;
        let charpoly = char_poly_exact(m);
        seq.push((charpoly.clone(), lambda.value.clone()));
        rows.push(RayRow { k, charpoly, lambda, distance: 0.0 });
    }
    let diagnostic = convergence_diagnostic(&seq, &limit.charpoly_f64())?;
    for (row, d) in rows.iter_mut().zip(&diagnostic.rows) {
        row.distance = d.distance;
    }
    Ok(RayReport::Convergent(ConvergentRay { limit, rows, diagnostic }))
}
