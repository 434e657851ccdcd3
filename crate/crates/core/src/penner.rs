//! Intersection matrices Ω, twist words, the generators `Q_i = I + D_i Ω`
//! and their products `M = Q_{i_K}^{p_K} ⋯ Q_{i_1}^{p_1}`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{int_to_rat, parse_rational, Ring};

/// A validated point Ω: symmetric, nonnegative, zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionMatrix {
    entries: Matrix<BigRational>,
    integral: Option<Matrix<BigInt>>,
}

/// Check the defining invariants of Ω and wrap it.
pub fn validate_omega(raw: Vec<Vec<BigRational>>) -> Result<IntersectionMatrix> {
    let n = raw.len();
    for (r, row) in raw.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare { row: r + 1, len: row.len(), n });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j && !raw[i][i].is_zero() {
                return Err(Error::NonzeroDiagonal { i: i + 1 });
            }
            if j > i && raw[i][j] != raw[j][i] {
                return Err(Error::NotSymmetric { i: i + 1, j: j + 1 });
            }
            if raw[i][j].is_negative() {
                return Err(Error::NegativeEntry { i: i + 1, j: j + 1 });
            }
        }
    }
    let entries = Matrix::from_rows(raw);
    let integral = entries.to_integer();
    Ok(IntersectionMatrix { entries, integral })
}

impl IntersectionMatrix {
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        validate_omega(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn from_int_matrix(m: &Matrix<BigInt>) -> Result<Self> {
        validate_omega(m.to_rational().to_rows())
    }

    /// Parse entries given as integers or `"p/q"` strings.
    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        let raw = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_rational(s).ok_or_else(|| Error::Parse(format!("bad entry {s:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        validate_omega(raw)
    }

    pub fn zero(n: usize) -> Self {
        validate_omega(vec![vec![BigRational::zero(); n]; n]).expect("zero matrix is valid")
    }

    pub fn n(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &Matrix<BigRational> {
        &self.entries
    }

    pub fn integral(&self) -> Option<&Matrix<BigInt>> {
        self.integral.as_ref()
    }

    pub fn is_integral(&self) -> bool {
        self.integral.is_some()
    }

    /// ω_ij with 1-based indices.
    pub fn omega(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[(i - 1, j - 1)]
    }

    /// Row `e_iᵀΩ`, 1-based `i`.
    pub fn row(&self, i: usize) -> Vec<BigRational> {
        self.entries.row(i - 1).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        (0..self.n()).all(|i| self.entries.row(i).iter().all(Zero::is_zero))
    }

    /// Largest entry, `‖Ω‖_∞` in the entrywise sense.
    pub fn max_entry(&self) -> BigRational {
        (0..self.n())
            .flat_map(|i| self.entries.row(i).iter().cloned())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            Err(Error::IndexOutOfRange { index: i, n: self.n() })
        } else {
            Ok(())
        }
    }

    /// Apply a symmetric permutation: new index `a` is old index `perm[a]`
    /// (both 0-based).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let entries = self.entries.permute(perm);
        let integral = entries.to_integer();
        IntersectionMatrix { entries, integral }
    }
}

impl fmt::Display for IntersectionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries)
    }
}

/// Closed path `γ = (i_1 … i_K i_1)` with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistWord {
    gamma: Vec<usize>,
    powers: Vec<u64>,
}

impl TwistWord {
    pub fn new(gamma: Vec<usize>, powers: Vec<u64>) -> Result<Self> {
        if gamma.is_empty() {
            return Err(Error::InvalidWord("empty path".into()));
        }
        if gamma.len() != powers.len() {
            return Err(Error::InvalidWord(format!(
                "{} vertices but {} powers",
                gamma.len(),
                powers.len()
            )));
        }
        if let Some(t) = powers.iter().position(|&p| p == 0) {
            return Err(Error::InvalidWord(format!("power at position {} is zero", t + 1)));
        }
        if let Some(t) = gamma.iter().position(|&i| i == 0) {
            return Err(Error::InvalidWord(format!("index 0 at position {} (indices are 1-based)", t + 1)));
        }
        let k = gamma.len();
        if k >= 2 {
            for t in 0..k {
                if gamma[t] == gamma[(t + 1) % k] {
                    return Err(Error::InvalidWord(format!(
                        "vertex {} repeats at positions {} and {}",
                        gamma[t],
                        t + 1,
                        (t + 1) % k + 1
                    )));
                }
            }
        }
        Ok(TwistWord { gamma, powers })
    }

    /// All powers equal to 1.
    pub fn unit(gamma: Vec<usize>) -> Result<Self> {
        let powers = vec![1; gamma.len()];
        TwistWord::new(gamma, powers)
    }

    /// Build from a generator list `(i, p)` in application order, merging
    /// adjacent repeats by adding exponents. Wraparound repeats are not
    /// merged since that changes the product.
    pub fn from_generators(gens: &[(usize, u64)]) -> Result<Self> {
        let mut gamma: Vec<usize> = Vec::new();
        let mut powers: Vec<u64> = Vec::new();
        for &(i, p) in gens {
            if gamma.last() == Some(&i) {
                *powers.last_mut().expect("nonempty") += p;
            } else {
                gamma.push(i);
                powers.push(p);
            }
        }
        TwistWord::new(gamma, powers)
    }

    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    pub fn powers(&self) -> &[u64] {
        &self.powers
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    pub fn p_max(&self) -> u64 {
        *self.powers.iter().max().expect("nonempty word")
    }

    pub fn p_min(&self) -> u64 {
        *self.powers.iter().min().expect("nonempty word")
    }

    /// Edges `(i_t, i_{t+1})` of the closed path, wraparound last.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        path_edges(&self.gamma)
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        match self.gamma.iter().find(|&&i| i > n) {
            Some(&i) => Err(Error::IndexOutOfRange { index: i, n }),
            None => Ok(()),
        }
    }

    /// Multiply every exponent by `k`.
    pub fn scaled_powers(&self, k: u64) -> Self {
        TwistWord {
            gamma: self.gamma.clone(),
            powers: self.powers.iter().map(|p| p * k).collect(),
        }
    }

    /// Cyclic rotation by `s` positions: `(i_{s+1} … i_K i_1 … i_s)`.
    pub fn rotated(&self, s: usize) -> Self {
        let mut gamma = self.gamma.clone();
        let mut powers = self.powers.clone();
        gamma.rotate_left(s % self.len());
        powers.rotate_left(s % self.len());
        TwistWord { gamma, powers }
    }

    /// The literal twist word `T_{i_K}^{k p_K} ⋯ T_{i_1}^{k p_1}` as
    /// `(index, exponent)` pairs, leftmost factor first.
    pub fn expanded(&self, k: u64) -> Vec<(usize, u64)> {
        self.gamma
            .iter()
            .zip(&self.powers)
            .rev()
            .map(|(&i, &p)| (i, k * p))
            .collect()
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gamma.iter().map(ToString::to_string).collect();
        let p: Vec<String> = self.powers.iter().map(ToString::to_string).collect();
        write!(f, "({})^({})", g.join(","), p.join(","))
    }
}

/// Edges of a closed path, including the wraparound edge.
pub fn path_edges(gamma: &[usize]) -> Vec<(usize, usize)> {
    let k = gamma.len();
    if k < 2 {
        return Vec::new();
    }
    (0..k).map(|t| (gamma[t], gamma[(t + 1) % k])).collect()
}

/// A product of generators: integral when Ω is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactMatrix {
    Integer(Matrix<BigInt>),
    Rational(Matrix<BigRational>),
}

impl ExactMatrix {
    pub fn dim(&self) -> usize {
        match self {
            ExactMatrix::Integer(m) => m.rows(),
            ExactMatrix::Rational(m) => m.rows(),
        }
    }

    pub fn to_rational(&self) -> Matrix<BigRational> {
        match self {
            ExactMatrix::Integer(m) => m.to_rational(),
            ExactMatrix::Rational(m) => m.clone(),
        }
    }

    pub fn as_integer(&self) -> Option<&Matrix<BigInt>> {
        match self {
            ExactMatrix::Integer(m) => Some(m),
            ExactMatrix::Rational(_) => None,
        }
    }

    pub fn integer(&self) -> Result<&Matrix<BigInt>> {
        self.as_integer().ok_or(Error::NotIntegral)
    }

    pub fn det(&self) -> BigRational {
        match self {
            ExactMatrix::Integer(m) => int_to_rat(&m.det()),
            ExactMatrix::Rational(m) => m.det(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            ExactMatrix::Integer(m) => m.is_identity(),
            ExactMatrix::Rational(m) => m.is_identity(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (ExactMatrix::Integer(a), ExactMatrix::Integer(b)) => ExactMatrix::Integer(a.mul_mat(b)),
            _ => ExactMatrix::Rational(self.to_rational().mul_mat(&other.to_rational())),
        }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactMatrix::Integer(m) => write!(f, "{m}"),
            ExactMatrix::Rational(m) => write!(f, "{m}"),
        }
    }
}

/// Left-multiply `a` by `Q_i(p Ω)`: row `i` gains `p Σ_j ω_ij row_j`.
/// `i` is 0-based here.
pub fn apply_generator<T: Ring>(a: &mut Matrix<T>, w: &Matrix<T>, i: usize, p: &T) {
    let n = a.cols();
    let mut add = vec![T::zero(); n];
    for j in 0..w.cols() {
        let wij = &w[(i, j)];
        if wij.is_zero() {
            continue;
        }
        let f = wij.mul_ref(p);
        for (c, slot) in add.iter_mut().enumerate() {
            let v = &a[(j, c)];
            if !v.is_zero() {
                *slot = slot.add_ref(&f.mul_ref(v));
            }
        }
    }
    for (c, v) in add.into_iter().enumerate() {
        if !v.is_zero() {
            a[(i, c)] = a[(i, c)].add_ref(&v);
        }
    }
}

/// `M_γ^p(W)` over any exact ring; rightmost factor `Q_{i_1}^{p_1}` first.
pub fn twist_product_over<T: Ring>(w: &Matrix<T>, word: &TwistWord) -> Matrix<T> {
    let mut m = Matrix::identity(w.rows());
    for (&i, &p) in word.gamma.iter().zip(&word.powers) {
        apply_generator(&mut m, w, i - 1, &T::from_i64(p as i64));
    }
    m
}

/// `Q_i = I + D_i Ω`, 1-based `i`.
pub fn generator(omega: &IntersectionMatrix, i: usize) -> Result<ExactMatrix> {
    omega.check_index(i)?;
    let n = omega.n();
    Ok(match omega.integral() {
        Some(w) => {
            let mut m = Matrix::identity(n);
            apply_generator(&mut m, w, i - 1, &BigInt::one());
            ExactMatrix::Integer(m)
        }
        None => {
            let mut m = Matrix::identity(n);
            apply_generator(&mut m, omega.entries(), i - 1, &BigRational::one());
            ExactMatrix::Rational(m)
        }
    })
}

/// `M_γ^p(Ω) = Q_{i_K}^{p_K} ⋯ Q_{i_1}^{p_1}`, using `Q_i^p = Q_i(pΩ)`.
pub fn twist_product(omega: &IntersectionMatrix, word: &TwistWord) -> Result<ExactMatrix> {
    word.check_dim(omega.n())?;
    Ok(match omega.integral() {
        Some(w) => ExactMatrix::Integer(twist_product_over(w, word)),
        None => ExactMatrix::Rational(twist_product_over(omega.entries(), word)),
    })
}

/// The same product computed by literal repeated multiplication of the
/// unscaled generators; used to cross-check [`twist_product`].
pub fn twist_product_by_powers(omega: &IntersectionMatrix, word: &TwistWord) -> Result<ExactMatrix> {
    word.check_dim(omega.n())?;
    let mut m = match omega.integral() {
        Some(_) => ExactMatrix::Integer(Matrix::identity(omega.n())),
        None => ExactMatrix::Rational(Matrix::identity(omega.n())),
    };
    for (&i, &p) in word.gamma.iter().zip(&word.powers) {
        let q = generator(omega, i)?;
        for _ in 0..p {
            m = q.mul(&m);
        }
    }
    Ok(m)
}

/// `kΩ` for a positive rational `k`.
pub fn scale(omega: &IntersectionMatrix, k: &BigRational) -> Result<IntersectionMatrix> {
    if !k.is_positive() {
        return Err(Error::NonpositiveScale(k.to_string()));
    }
    let entries = omega.entries().scale(k);
    let integral = entries.to_integer();
    Ok(IntersectionMatrix { entries, integral })
}

pub fn scale_int(omega: &IntersectionMatrix, k: u64) -> Result<IntersectionMatrix> {
    scale(omega, &BigRational::from_integer(k.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_matrix;

    fn omega3() -> IntersectionMatrix {
        IntersectionMatrix::from_int_rows(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap()
    }

    #[test]
    fn validation_errors_name_the_position() {
        assert!(IntersectionMatrix::from_int_rows(&[&[0, 1], &[1, 0]]).is_ok());
        assert_eq!(
            IntersectionMatrix::from_int_rows(&[&[0, 1], &[2, 0]]),
            Err(Error::NotSymmetric { i: 1, j: 2 })
        );
        assert_eq!(
            IntersectionMatrix::from_int_rows(&[&[1]]),
            Err(Error::NonzeroDiagonal { i: 1 })
        );
        assert_eq!(
            IntersectionMatrix::from_int_rows(&[&[0, -1], &[-1, 0]]),
            Err(Error::NegativeEntry { i: 1, j: 2 })
        );
        assert_eq!(
            validate_omega(vec![vec![BigRational::zero(); 2]]),
            Err(Error::NotSquare { row: 1, len: 2, n: 1 })
        );
    }

    #[test]
    fn rational_entries_parse() {
        let w = IntersectionMatrix::from_strings(&[
            vec!["0".into(), "1/2".into()],
            vec!["1/2".into(), "0".into()],
        ])
        .unwrap();
        assert!(!w.is_integral());
        assert_eq!(w.omega(1, 2), &crate::ring::rat(1, 2));
    }

    #[test]
    fn generator_replaces_one_row() {
        let q = generator(&omega3(), 1).unwrap();
        assert_eq!(q, ExactMatrix::Integer(int_matrix(&[&[1, 1, 1], &[0, 1, 0], &[0, 0, 1]])));
        assert!(generator(&IntersectionMatrix::zero(3), 2).unwrap().is_identity());
        assert_eq!(generator(&omega3(), 4), Err(Error::IndexOutOfRange { index: 4, n: 3 }));
    }

    #[test]
    fn triangle_product() {
        let w = TwistWord::unit(vec![1, 2, 3]).unwrap();
        let m = twist_product(&omega3(), &w).unwrap();
        assert_eq!(m, ExactMatrix::Integer(int_matrix(&[&[1, 1, 1], &[1, 2, 2], &[2, 3, 4]])));
        assert_eq!(m.det(), BigRational::one());
    }

    #[test]
    fn single_generator_power_is_scaled_generator() {
        let w = TwistWord::new(vec![1], vec![5]).unwrap();
        let lhs = twist_product(&omega3(), &w).unwrap();
        let rhs = generator(&scale_int(&omega3(), 5).unwrap(), 1).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(twist_product_by_powers(&omega3(), &w).unwrap(), rhs);
    }

    #[test]
    fn disjoint_generators_commute() {
        let w = IntersectionMatrix::from_int_rows(&[&[0, 0, 1], &[0, 0, 2], &[1, 2, 0]]).unwrap();
        let q1 = generator(&w, 1).unwrap();
        let q2 = generator(&w, 2).unwrap();
        assert_eq!(q1.mul(&q2), q2.mul(&q1));
    }

    #[test]
    fn word_validation_and_normalization() {
        assert!(TwistWord::new(vec![1, 2, 1], vec![1, 1, 1]).is_err());
        assert!(TwistWord::new(vec![1, 2], vec![1, 0]).is_err());
        assert!(TwistWord::new(vec![], vec![]).is_err());
        let w = TwistWord::from_generators(&[(1, 1), (2, 1), (2, 3), (3, 2)]).unwrap();
        assert_eq!(w.gamma(), &[1, 2, 3]);
        assert_eq!(w.powers(), &[1, 4, 2]);
        assert_eq!(w.expanded(2), vec![(3, 4), (2, 8), (1, 2)]);
    }

    #[test]
    fn scale_checks_sign() {
        assert!(scale(&omega3(), &BigRational::zero()).is_err());
        let two = scale_int(&IntersectionMatrix::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap(), 2).unwrap();
        assert_eq!(two.omega(1, 2), &crate::ring::rat(2, 1));
        assert_eq!(scale_int(&omega3(), 1).unwrap(), omega3());
    }
}
