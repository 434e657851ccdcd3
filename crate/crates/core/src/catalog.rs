//! Stored intersection matrices, matrix surgeries that add curves, and
//! degree-set tables.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{graph_of, is_bipartite};
use crate::matrix::Matrix;
use crate::penner::IntersectionMatrix;
use crate::ring::rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceSpec {
    pub orientable: bool,
    pub genus: u32,
    pub punctures: u32,
}

impl SurfaceSpec {
    pub fn orientable(genus: u32, punctures: u32) -> Self {
        SurfaceSpec { orientable: true, genus, punctures }
    }

    pub fn nonorientable(genus: u32, punctures: u32) -> Result<Self> {
        if genus == 0 {
            return Err(Error::OutOfFormulaRange("nonorientable genus must be at least 1".into()));
        }
        Ok(SurfaceSpec { orientable: false, genus, punctures })
    }

    /// `dim H₁` of the surface with punctures filled in.
    pub fn closed_homology_dim(&self) -> u32 {
        if self.orientable {
            2 * self.genus
        } else {
            self.genus - 1
        }
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = if self.orientable { 'S' } else { 'N' };
        if self.punctures == 0 {
            write!(f, "{letter}_{}", self.genus)
        } else {
            write!(f, "{letter}_{{{},{}}}", self.genus, self.punctures)
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub surface: SurfaceSpec,
    pub omega: IntersectionMatrix,
    pub expected_rank: usize,
    pub bipartite: bool,
    pub notes: String,
}

/// Rows of the 12×12 block `X` for `S_{4,3}`.
const S43_X: [[i64; 12]; 12] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 2, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 2, 1, 2, 2, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 2, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 2, 1, 2, 2, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 2, 1, 2, 2],
    [0, 0, 0, 0, 0, 0, 0, 0, 2, 1, 2, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 2, 1, 0, 0],
];

/// `[[0, X], [Xᵀ, 0]]`.
pub fn bipartite_block(x: &[Vec<i64>]) -> IntersectionMatrix {
    let a = x.len();
    let b = x.first().map_or(0, Vec::len);
    let n = a + b;
    let m = Matrix::from_fn(n, n, |i, j| {
        let v = match (i < a, j < a) {
            (true, false) => x[i][j - a],
            (false, true) => x[j][i - a],
            _ => 0,
        };
        BigInt::from(v)
    });
    IntersectionMatrix::from_int_matrix(&m).expect("block form is a valid intersection matrix")
}

pub fn s43_max() -> IntersectionMatrix {
    bipartite_block(&S43_X.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

/// `M_r`: zero diagonal, ones elsewhere.
pub fn m_r(r: usize) -> IntersectionMatrix {
    IntersectionMatrix::from_int_matrix(&Matrix::from_fn(r, r, |i, j| BigInt::from((i != j) as i64)))
        .expect("valid")
}

/// Off-diagonal `1/(r-1)`, diagonal `-(r-2)/(r-1)`.
pub fn m_r_inverse(r: usize) -> Matrix<BigRational> {
    let d = r as i64 - 1;
    Matrix::from_fn(r, r, |i, j| if i == j { rat(-(r as i64 - 2), d) } else { rat(1, d) })
}

fn fixed(
    id: &str,
    surface: SurfaceSpec,
    rows: &[&[i64]],
    expected_rank: usize,
    notes: &str,
) -> CatalogEntry {
    let omega = IntersectionMatrix::from_int_rows(rows).expect("stored matrices are valid");
    entry(id, surface, omega, expected_rank, notes)
}

fn entry(id: &str, surface: SurfaceSpec, omega: IntersectionMatrix, expected_rank: usize, notes: &str) -> CatalogEntry {
    let bipartite = is_bipartite(&graph_of(&omega));
    CatalogEntry { id: id.into(), surface, omega, expected_rank, bipartite, notes: notes.into() }
}

fn non(g: u32, n: u32) -> SurfaceSpec {
    SurfaceSpec { orientable: false, genus: g, punctures: n }
}

/// Every stored entry, in a fixed order.
pub fn entries() -> Vec<CatalogEntry> {
    let mut out = vec![entry(
        "S43-max",
        SurfaceSpec::orientable(4, 3),
        s43_max(),
        24,
        "filling pair of multicurves A, B on S_{4,3}; i(A,B) is the 12x12 block X",
    )];
    for r in 3..=12 {
        out.push(entry(
            &format!("Mr-{r}"),
            non(r as u32 + 1, 0),
            m_r(r),
            r,
            "curves around a central crosscap, pairwise intersecting once",
        ));
    }
    out.extend([
        fixed(
            "N5-rank5",
            non(5, 0),
            &[&[0, 0, 1, 0, 0], &[0, 0, 1, 1, 2], &[1, 1, 0, 0, 0], &[0, 1, 0, 0, 1], &[0, 2, 0, 1, 0]],
            5,
            "rank 5 collection on N_5",
        ),
        fixed(
            "N31-rank4",
            non(3, 1),
            &[&[0, 0, 1, 0], &[0, 0, 1, 2], &[1, 1, 0, 1], &[0, 2, 1, 0]],
            4,
            "filling collection on N_{3,1}",
        ),
        fixed(
            "N40-rank5",
            non(4, 0),
            &[&[0, 2, 2, 2, 2], &[2, 0, 2, 2, 2], &[2, 2, 0, 2, 2], &[2, 2, 2, 0, 4], &[2, 2, 2, 4, 0]],
            5,
            "filling collection on N_4",
        ),
        fixed(
            "N41-rank8",
            non(4, 1),
            &[
                &[0, 2, 2, 2, 2, 2, 4, 0],
                &[2, 0, 2, 2, 2, 2, 4, 0],
                &[2, 2, 0, 4, 4, 4, 8, 0],
                &[2, 2, 4, 0, 0, 0, 0, 0],
                &[2, 2, 4, 0, 0, 2, 2, 2],
                &[2, 2, 4, 0, 2, 0, 2, 2],
                &[4, 4, 8, 0, 2, 2, 0, 4],
                &[0, 0, 0, 0, 2, 2, 4, 0],
            ],
            8,
            "filling collection on N_{4,1}",
        ),
        fixed(
            "N32-rank7",
            non(3, 2),
            &[
                &[0, 2, 2, 2, 2, 2, 4],
                &[2, 0, 0, 2, 4, 4, 4],
                &[2, 0, 0, 2, 4, 2, 2],
                &[2, 2, 2, 0, 2, 2, 4],
                &[2, 4, 4, 2, 0, 0, 4],
                &[2, 4, 2, 2, 0, 0, 2],
                &[4, 4, 2, 4, 4, 2, 0],
            ],
            7,
            "filling collection on N_{3,2}",
        ),
        fixed("N13-rank3", non(1, 3), &[&[0, 2, 2], &[2, 0, 2], &[2, 2, 0]], 3, "collection on N_{1,3}"),
        fixed(
            "N14-rank4",
            non(1, 4),
            &[&[0, 0, 2, 2], &[0, 0, 2, 0], &[2, 2, 0, 2], &[2, 0, 2, 0]],
            4,
            "collection on N_{1,4}",
        ),
        fixed("N22-rank3", non(2, 2), &[&[0, 2, 2], &[2, 0, 4], &[2, 4, 0]], 3, "collection on N_{2,2}"),
        fixed(
            "N22-rank4",
            non(2, 2),
            &[&[0, 2, 2, 2], &[2, 0, 2, 2], &[2, 2, 0, 4], &[2, 2, 4, 0]],
            4,
            "collection on N_{2,2}",
        ),
    ]);
    out
}

pub fn catalog_get(id: &str) -> Result<CatalogEntry> {
    entries()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrosscapVariant {
    E,
    ED1,
    ED1D2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PunctureVariant {
    D,
    DE,
}

fn extend(omega: &IntersectionMatrix, cols: &[Vec<BigRational>], block: &[&[i64]]) -> IntersectionMatrix {
    let n = omega.n();
    let m = cols.len();
    let w = omega.entries();
    let rows: Vec<Vec<BigRational>> = (0..n + m)
        .map(|i| {
            (0..n + m)
                .map(|j| match (i < n, j < n) {
                    (true, true) => w[(i, j)].clone(),
                    (true, false) => cols[j - n][i].clone(),
                    (false, true) => cols[i - n][j].clone(),
                    (false, false) => rat(block[i - n][j - n], 1),
                })
                .collect()
        })
        .collect();
    crate::penner::validate_omega(rows).expect("surgery keeps the matrix valid")
}

/// Add curves through a new crosscap between disjoint curves `i1`, `i2`:
/// `d₁`, `d₂` copy their columns, `e` gets the sum, and the new curves
/// meet pairwise twice. Appends `[e]`, `[d₁, e]` or `[d₁, d₂, e]`.
pub fn crosscap_augment(
    omega: &IntersectionMatrix,
    i1: usize,
    i2: usize,
    variant: CrosscapVariant,
) -> Result<IntersectionMatrix> {
    omega.check_index(i1)?;
    omega.check_index(i2)?;
    if i1 == i2 || !omega.omega(i1, i2).is_zero() {
        return Err(Error::CurvesIntersect { i1, i2 });
    }
    let x = omega.entries().column(i1 - 1);
    let y = omega.entries().column(i2 - 1);
    let e: Vec<BigRational> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
    Ok(match variant {
        CrosscapVariant::E => extend(omega, &[e], &[&[0]]),
        CrosscapVariant::ED1 => extend(omega, &[x, e], &[&[0, 2], &[2, 0]]),
        CrosscapVariant::ED1D2 => extend(omega, &[x, y, e], &[&[0, 2, 2], &[2, 0, 2], &[2, 2, 0]]),
    })
}

/// Add a puncture next to curve `c`: `d` copies the column of `c` (and
/// misses `c`); for `DE` a curve `e` around the punctures meets only `d`,
/// twice.
pub fn puncture_augment(omega: &IntersectionMatrix, c: usize, variant: PunctureVariant) -> Result<IntersectionMatrix> {
    omega.check_index(c)?;
    let d = omega.entries().column(c - 1);
    Ok(match variant {
        PunctureVariant::D => extend(omega, &[d], &[&[0]]),
        PunctureVariant::DE => {
            let zero = vec![BigRational::zero(); omega.n()];
            extend(omega, &[d, zero], &[&[0, 2], &[2, 0]])
        }
    })
}

/// Real dimension of Teichmüller space.
pub fn teich_dim(s: &SurfaceSpec) -> Result<u32> {
    let (g, n) = (s.genus as i64, s.punctures as i64);
    if s.orientable {
        match (g, n) {
            (0, 0..=3) => Ok(0),
            (1, 0) => Ok(2),
            _ => Ok((6 * g - 6 + 2 * n) as u32),
        }
    } else if g == 0 {
        Err(Error::OutOfFormulaRange("nonorientable genus 0".into()))
    } else if g + n >= 3 {
        Ok((3 * g + 2 * n - 6) as u32)
    } else {
        Err(Error::OutOfFormulaRange(format!("{s}")))
    }
}

fn admits_pseudo_anosov(s: &SurfaceSpec) -> bool {
    let (g, n) = (s.genus, s.punctures);
    if s.orientable {
        !(g == 0 && n <= 3)
    } else {
        match g {
            0 => false,
            1 => n >= 3,
            2 => n >= 2,
            3 => n >= 1,
            _ => true,
        }
    }
}

fn even_range(lo: u32, hi: u32) -> impl Iterator<Item = u32> {
    (lo..=hi).filter(|d| d % 2 == 0)
}

fn odd_range(lo: u32, hi: u32) -> impl Iterator<Item = u32> {
    (lo..=hi).filter(|d| d % 2 == 1)
}

/// `D(S)`. When the table leaves a choice between two sets both are
/// returned.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSet {
    pub degrees: BTreeSet<u32>,
    /// The alternative set, present exactly when the table is ambiguous.
    pub alternative: Option<BTreeSet<u32>>,
}

impl DegreeSet {
    pub fn ambiguous(&self) -> bool {
        self.alternative.is_some()
    }
}

pub fn format_set(s: &BTreeSet<u32>) -> String {
    let parts: Vec<String> = s.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn check_pa(s: &SurfaceSpec) -> Result<()> {
    if admits_pseudo_anosov(s) {
        Ok(())
    } else {
        Err(Error::NoPseudoAnosov(s.to_string()))
    }
}

pub fn degree_set(s: &SurfaceSpec) -> Result<DegreeSet> {
    check_pa(s)?;
    let t = teich_dim(s)?;
    if !s.orientable {
        return Ok(DegreeSet { degrees: (3..=t).collect(), alternative: None });
    }
    let half = t / 2;
    let good: BTreeSet<u32> = even_range(2, t).chain(odd_range(3, half)).collect();
    if s.punctures % 2 == 1 && half % 2 == 1 {
        let bad: BTreeSet<u32> = even_range(2, t).chain(odd_range(3, half.saturating_sub(1))).collect();
        Ok(DegreeSet { degrees: good, alternative: Some(bad) })
    } else {
        Ok(DegreeSet { degrees: good, alternative: None })
    }
}

/// `D⁺(S)`, with the odd reading of the second interval for orientable
/// surfaces.
pub fn degree_set_plus(s: &SurfaceSpec) -> Result<BTreeSet<u32>> {
    check_pa(s)?;
    let h = s.closed_homology_dim();
    Ok(if s.orientable {
        even_range(2, h).chain(odd_range(3, h / 2)).collect()
    } else {
        (3..=h).collect()
    })
}

#[derive(Serialize)]
pub struct EntryJson {
    pub id: String,
    pub surface: SurfaceSpec,
    pub n: usize,
    pub expected_rank: usize,
    pub bipartite: bool,
    pub notes: String,
    pub entries: Vec<Vec<String>>,
}

impl From<&CatalogEntry> for EntryJson {
    fn from(e: &CatalogEntry) -> Self {
        EntryJson {
            id: e.id.clone(),
            surface: e.surface,
            n: e.omega.n(),
            expected_rank: e.expected_rank,
            bipartite: e.bipartite,
            notes: e.notes.clone(),
            entries: e.omega.entries().to_rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect(),
        }
    }
}

/// The whole catalog as a JSON document.
pub fn export_json() -> String {
    let all: Vec<EntryJson> = entries().iter().map(EntryJson::from).collect();
    serde_json::to_string_pretty(&all).expect("catalog serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::rank_exact;

    #[test]
    fn ranks_match() {
        for e in entries() {
            assert_eq!(rank_exact(&e.omega), e.expected_rank, "{}", e.id);
        }
        assert!(catalog_get("S43-max").unwrap().bipartite);
        assert_eq!(catalog_get("nope").unwrap_err(), Error::UnknownId("nope".into()));
    }

    #[test]
    fn m_r_inverse_exact() {
        for r in 3..=12 {
            let prod = m_r(r).entries().mul_mat(&m_r_inverse(r));
            assert!(prod.is_identity(), "r = {r}");
        }
    }

    #[test]
    fn surgeries() {
        let w = catalog_get("N31-rank4").unwrap().omega;
        // Curves 1 and 4 are disjoint.
        let r0 = rank_exact(&w);
        for (v, delta) in [(CrosscapVariant::E, 0), (CrosscapVariant::ED1, 2), (CrosscapVariant::ED1D2, 3)] {
            assert_eq!(rank_exact(&crosscap_augment(&w, 1, 4, v).unwrap()), r0 + delta);
        }
        assert_eq!(crosscap_augment(&w, 1, 3, CrosscapVariant::E).unwrap_err(), Error::CurvesIntersect { i1: 1, i2: 3 });
        let m3 = m_r(3);
        assert_eq!(rank_exact(&puncture_augment(&m3, 1, PunctureVariant::D).unwrap()), 3);
        let twice = puncture_augment(&puncture_augment(&m3, 1, PunctureVariant::DE).unwrap(), 2, PunctureVariant::DE).unwrap();
        assert_eq!(rank_exact(&puncture_augment(&m3, 1, PunctureVariant::DE).unwrap()), 5);
        assert_eq!(rank_exact(&twice), 7);
    }

    #[test]
    fn dims() {
        assert_eq!(teich_dim(&SurfaceSpec::orientable(4, 3)).unwrap(), 24);
        assert_eq!(teich_dim(&SurfaceSpec::orientable(2, 0)).unwrap(), 6);
        assert_eq!(teich_dim(&SurfaceSpec::nonorientable(3, 1).unwrap()).unwrap(), 5);
        assert!(teich_dim(&SurfaceSpec::nonorientable(1, 1).unwrap()).is_err());
    }

    #[test]
    fn degree_tables() {
        let s2 = degree_set(&SurfaceSpec::orientable(2, 0)).unwrap();
        assert_eq!(format_set(&s2.degrees), "{2,3,4,6}");
        assert!(!s2.ambiguous());
        let n31 = degree_set(&SurfaceSpec::nonorientable(3, 1).unwrap()).unwrap();
        assert_eq!(n31.degrees, BTreeSet::from([3, 4, 5]));
        assert!(matches!(degree_set(&SurfaceSpec::nonorientable(3, 0).unwrap()), Err(Error::NoPseudoAnosov(_))));
        // S_{1,1}: T = 2, T/2 = 1 odd, one puncture
        let s11 = degree_set(&SurfaceSpec::orientable(1, 1)).unwrap();
        assert!(s11.ambiguous());
        // S_{2,1}: T = 8, T/2 = 4 even
        assert!(!degree_set(&SurfaceSpec::orientable(2, 1)).unwrap().ambiguous());
        // S_{3,1}: T = 14, T/2 = 7 odd
        let s31 = degree_set(&SurfaceSpec::orientable(3, 1)).unwrap();
        assert!(s31.degrees.contains(&7));
        assert!(!s31.alternative.as_ref().unwrap().contains(&7));
        assert!(s31.alternative.unwrap().contains(&5));
    }

    #[test]
    fn plus_tables() {
        assert_eq!(degree_set_plus(&SurfaceSpec::nonorientable(5, 2).unwrap()).unwrap(), BTreeSet::from([3, 4]));
        assert_eq!(degree_set_plus(&SurfaceSpec::orientable(3, 0)).unwrap(), BTreeSet::from([2, 3, 4, 6]));
        assert!(degree_set_plus(&SurfaceSpec::orientable(0, 5)).unwrap().is_empty());
    }

    #[test]
    fn json_export_roundtrips_ids() {
        let v: serde_json::Value = serde_json::from_str(&export_json()).unwrap();
        assert_eq!(v.as_array().unwrap().len(), entries().len());
        assert_eq!(v[0]["id"], "S43-max");
    }
}
