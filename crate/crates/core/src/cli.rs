//! Commands behind the `penner` binary: input parsing, the degree
//! pipeline, the k-scan recipe, ray tables, catalog queries and a self
//! test. Each command returns data; rendering is separate.

use std::collections::VecDeque;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::boundary::{ray_convergence_experiment, RayReport};
use crate::catalog::{self, format_set, SurfaceSpec};
use crate::error::{Error, Result};
use crate::factor::{factor_monic, pf_minimal_polynomial};
use crate::graph::{first_missing_edge, first_unvisited, graph_of, is_contractible, spanning_tree_walk};
use crate::penner::{scale_int, twist_product, twist_product_by_powers, IntersectionMatrix, TwistWord};
use crate::poly::{IntPoly, Poly};
use crate::spectral::{coeff_strings, rank_exact, spectral_report, RootApprox, SpectralReport};

pub const DEFAULT_DIGITS: usize = 50;
pub const DEFAULT_K_MAX: u64 = 256;
pub const DEFAULT_WINDOW: usize = 3;

#[derive(Deserialize)]
struct OmegaFile {
    n: usize,
    entries: Vec<Vec<Value>>,
}

/// `{"n": int, "entries": [[int | "p/q", ...], ...]}`.
pub fn parse_omega_json(text: &str) -> Result<IntersectionMatrix> {
    let file: OmegaFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.entries.len() != file.n {
        return Err(Error::DimensionMismatch { expected: file.n, got: file.entries.len() });
    }
    let rows = file
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| match v {
                    Value::Number(x) if x.is_i64() || x.is_u64() => Ok(x.to_string()),
                    Value::String(s) => Ok(s.trim().to_string()),
                    other => Err(Error::Parse(format!("matrix entry {other} is not an integer or \"p/q\""))),
                })
                .collect::<Result<Vec<String>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    IntersectionMatrix::from_strings(&rows)
}

pub fn omega_to_json(omega: &IntersectionMatrix) -> Value {
    let entries: Vec<Vec<Value>> = omega
        .entries()
        .to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|q| if q.is_integer() { json!(q.to_integer().to_string().parse::<i64>().ok()) } else { json!(q.to_string()) })
                .collect()
        })
        .collect();
    json!({ "n": omega.n(), "entries": entries })
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| Error::Parse(format!("bad {what} entry {t:?}"))))
        .collect()
}

/// Comma-separated 1-based path.
pub fn parse_path(s: &str) -> Result<Vec<usize>> {
    parse_list(s, "path")
}

pub fn parse_powers(s: &str) -> Result<Vec<u64>> {
    parse_list(s, "power")
}

pub fn parse_scales(s: &str) -> Result<Vec<u64>> {
    parse_list(s, "scale")
}

/// Path argument: a list, or `tree` for a walk around a spanning tree from
/// vertex 1.
pub fn resolve_path(arg: &str, omega: &IntersectionMatrix) -> Result<Vec<usize>> {
    if arg.trim() == "tree" {
        if omega.n() == 0 {
            return Err(Error::InvalidWord("empty matrix".into()));
        }
        Ok(spanning_tree_walk(&graph_of(omega), 1))
    } else {
        parse_path(arg)
    }
}

/// Unit powers when none are given.
pub fn build_word(gamma: Vec<usize>, powers: Option<Vec<u64>>) -> Result<TwistWord> {
    match powers {
        Some(p) => TwistWord::new(gamma, p),
        None => TwistWord::unit(gamma),
    }
}

#[derive(Clone, Debug)]
pub struct DegreeOutcome {
    pub report: SpectralReport,
    pub minpoly: IntPoly,
    pub degree: usize,
}

pub fn cmd_degree(omega: &IntersectionMatrix, word: &TwistWord, digits: usize) -> Result<DegreeOutcome> {
    word.check_dim(omega.n())?;
    let report = spectral_report(omega, word, digits)?;
    let minpoly = pf_minimal_polynomial(&report)?;
    Ok(DegreeOutcome { degree: minpoly.degree(), minpoly, report })
}

fn poly_json(p: &IntPoly) -> Value {
    json!({ "coefficients": coeff_strings(p), "text": p.to_string() })
}

pub fn degree_text(o: &DegreeOutcome) -> String {
    let r = &o.report;
    let mut s = String::new();
    s.push_str(&format!("charpoly      {}\n", r.charpoly));
    s.push_str(&format!("rank          {}\n", r.rank));
    s.push_str(&format!("split         (x - 1)^{} * ({})\n", r.unit_part_exponent, r.reduced_poly));
    s.push_str(&format!("lambda        {}\n", r.pf_value.to_decimal(r.digits)));
    s.push_str(&format!("complexity    {}\n", r.complexity));
    s.push_str(&format!("minpoly       {}\n", o.minpoly));
    s.push_str(&format!("degree        {}\n", o.degree));
    s
}

pub fn degree_json(o: &DegreeOutcome) -> Value {
    let r = &o.report;
    json!({
        "n": r.n,
        "charpoly": poly_json(&r.charpoly),
        "rank": r.rank,
        "unit_part_exponent": r.unit_part_exponent,
        "reduced_poly": poly_json(&r.reduced_poly),
        "lambda": r.pf_value.to_decimal(r.digits),
        "complexity": r.complexity,
        "minpoly": poly_json(&o.minpoly),
        "degree": o.degree,
    })
}

#[derive(Clone, Debug)]
pub struct RecipeOptions {
    pub k_max: u64,
    pub window: usize,
    pub digits: usize,
    /// Compare `Q_i(kΩ)` against literal powers `Q_i(Ω)^{k p}` for k ≤ 3.
    pub cross_check: bool,
}

impl Default for RecipeOptions {
    fn default() -> Self {
        RecipeOptions { k_max: DEFAULT_K_MAX, window: DEFAULT_WINDOW, digits: DEFAULT_DIGITS, cross_check: false }
    }
}

#[derive(Clone, Debug)]
pub struct RecipeResult {
    pub k_star: u64,
    pub lambda: RootApprox,
    pub minpoly: IntPoly,
    pub degree: usize,
    pub rank: usize,
    pub stable_window: usize,
    /// `(i, k p)` pairs, leftmost factor first.
    pub twist_word_expanded: Vec<(usize, u64)>,
    /// `(k, degree)` for every scanned scale.
    pub scan: Vec<(u64, usize)>,
    pub digits: usize,
}

/// Scan `k = 1, 2, …` until the degree of λ(M_γ^p(kΩ)) equals rank Ω for
/// `window` consecutive scales.
pub fn cmd_recipe(omega: &IntersectionMatrix, word: &TwistWord, opts: &RecipeOptions) -> Result<RecipeResult> {
    word.check_dim(omega.n())?;
    if opts.window == 0 {
        return Err(Error::PreconditionViolated("stability window must be positive".into()));
    }
    if !is_contractible(word.gamma()) {
        return Err(Error::NotContractible);
    }
    if let Some((i, j)) = first_missing_edge(word.gamma(), &graph_of(omega)) {
        return Err(Error::NotSupported { i, j });
    }
    if let Some(i) = first_unvisited(word.gamma(), omega.n()) {
        return Err(Error::NotGeneralPath(i));
    }
    let rank = rank_exact(omega);
    let mut recent: VecDeque<(u64, RootApprox, IntPoly)> = VecDeque::new();
    let mut scan = Vec::new();
    for k in 1..=opts.k_max {
        let kw = scale_int(omega, k)?;
        if opts.cross_check && k <= 3 && twist_product(&kw, word)? != twist_product_by_powers(omega, &word.scaled_powers(k))? {
            return Err(Error::PreconditionViolated(format!("power identity failed at k = {k}")));
        }
        let report = spectral_report(&kw, word, opts.digits)?;
        let minpoly = pf_minimal_polynomial(&report)?;
        let degree = minpoly.degree();
        scan.push((k, degree));
        if degree == rank {
            recent.push_back((k, report.pf_value, minpoly));
        } else {
            recent.clear();
        }
        if recent.len() == opts.window {
            let (k_star, lambda, minpoly) = recent.pop_front().expect("window is nonempty");
            return Ok(RecipeResult {
                k_star,
                lambda,
                degree: minpoly.degree(),
                minpoly,
                rank,
                stable_window: opts.window,
                twist_word_expanded: word.expanded(k_star),
                scan,
                digits: opts.digits,
            });
        }
    }
    Err(Error::KBudgetExhausted { k_max: opts.k_max })
}

fn expanded_text(w: &[(usize, u64)]) -> String {
    w.iter().map(|(i, e)| format!("T{i}^{e}")).collect::<Vec<_>>().join(" ")
}

pub fn recipe_text(r: &RecipeResult) -> String {
    let mut s = String::new();
    s.push_str(&format!("rank          {}\n", r.rank));
    s.push_str(&format!("k_star        {}\n", r.k_star));
    s.push_str(&format!("degree        {}\n", r.degree));
    s.push_str(&format!("window        {}\n", r.stable_window));
    s.push_str(&format!("lambda        {}\n", r.lambda.to_decimal(r.digits)));
    s.push_str(&format!("minpoly       {}\n", r.minpoly));
    let scan: Vec<String> = r.scan.iter().map(|(k, d)| format!("{k}:{d}")).collect();
    s.push_str(&format!("scan          {}\n", scan.join(" ")));
    s.push_str(&format!("word          {}\n", expanded_text(&r.twist_word_expanded)));
    s
}

pub fn recipe_json(r: &RecipeResult) -> Value {
    json!({
        "rank": r.rank,
        "k_star": r.k_star,
        "degree": r.degree,
        "stable_window": r.stable_window,
        "lambda": r.lambda.to_decimal(r.digits),
        "minpoly": poly_json(&r.minpoly),
        "scan": r.scan.iter().map(|(k, d)| json!({"k": k, "degree": d})).collect::<Vec<_>>(),
        "twist_word_expanded": r.twist_word_expanded.iter().map(|(i, e)| json!([i, e])).collect::<Vec<_>>(),
    })
}

pub fn cmd_limit(omega: &IntersectionMatrix, word: &TwistWord, scales: &[u64], digits: usize) -> Result<RayReport> {
    ray_convergence_experiment(omega, word, scales, digits)
}

fn rat_poly_text(p: &crate::poly::RatPoly) -> String {
    p.to_string()
}

pub fn limit_text(r: &RayReport, digits: usize) -> String {
    let mut s = String::new();
    match r {
        RayReport::Convergent(c) => {
            s.push_str(&format!("limit charpoly  {}\n", rat_poly_text(&c.limit.charpoly)));
            s.push_str(&format!("{:>6}  {:<w$}  {}\n", "k", "lambda", "distance", w = digits.min(30) + 2));
            for row in &c.rows {
                s.push_str(&format!(
                    "{:>6}  {:<w$}  {:.6e}\n",
                    row.k,
                    row.lambda.to_decimal(digits.min(30)),
                    row.distance,
                    w = digits.min(30) + 2
                ));
            }
            s.push_str(&format!("diverging       {}\n", c.diagnostic.diverging));
        }
        RayReport::Divergent(d) => {
            s.push_str(&format!("path leaves G(omega) at edge ({},{})\n", d.missing_edge.0, d.missing_edge.1));
            let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" ");
            s.push_str(&format!("exponents       {}\n", fmt(&d.exponents)));
            s.push_str(&format!("constants       {}\n", fmt(&d.constants)));
            for (k, ev) in d.scales.iter().zip(&d.eigenvalues) {
                let m: Vec<String> = ev.iter().map(|z| format!("{:.6e}", z.norm())).collect();
                s.push_str(&format!("{:>6}  {}\n", k, m.join(" ")));
            }
        }
    }
    s
}

pub fn limit_json(r: &RayReport, digits: usize) -> Value {
    match r {
        RayReport::Convergent(c) => json!({
            "mode": "convergent",
            "limit_charpoly": c.limit.charpoly.coeffs().iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            "rows": c.rows.iter().map(|row| json!({
                "k": row.k,
                "lambda": row.lambda.to_decimal(digits),
                "distance": row.distance,
                "charpoly": coeff_strings(&row.charpoly),
            })).collect::<Vec<_>>(),
            "diverging": c.diagnostic.diverging,
        }),
        RayReport::Divergent(d) => json!({
            "mode": "divergent",
            "missing_edge": [d.missing_edge.0, d.missing_edge.1],
            "scales": d.scales,
            "exponents": d.exponents,
            "constants": d.constants,
            "moduli": d.eigenvalues.iter().map(|ev| ev.iter().map(|z| z.norm()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogQuery {
    List,
    Show(String),
    Degrees(SurfaceSpec),
    Export,
}

pub fn parse_surface(kind: &str, genus: u32, punctures: u32) -> Result<SurfaceSpec> {
    match kind {
        "S" | "s" => Ok(SurfaceSpec::orientable(genus, punctures)),
        "N" | "n" => SurfaceSpec::nonorientable(genus, punctures),
        other => Err(Error::Parse(format!("surface kind {other:?} is not S or N"))),
    }
}

/// Text or JSON for a catalog query. A surface without pseudo-Anosov maps
/// is reported, not treated as an error.
pub fn cmd_catalog(q: &CatalogQuery, as_json: bool) -> Result<String> {
    match q {
        CatalogQuery::List => {
            let es = catalog::entries();
            if as_json {
                let v: Vec<Value> = es
                    .iter()
                    .map(|e| json!({"id": e.id, "surface": e.surface.to_string(), "n": e.omega.n(), "rank": e.expected_rank, "bipartite": e.bipartite}))
                    .collect();
                return Ok(serde_json::to_string_pretty(&v).expect("json"));
            }
            Ok(es
                .iter()
                .map(|e| format!("{:<10} {:<9} n={:<3} rank={}\n", e.id, e.surface.to_string(), e.omega.n(), e.expected_rank))
                .collect())
        }
        CatalogQuery::Show(id) => {
            let e = catalog::catalog_get(id)?;
            if as_json {
                let mut v = omega_to_json(&e.omega);
                v["id"] = json!(e.id);
                v["rank"] = json!(e.expected_rank);
                return Ok(serde_json::to_string_pretty(&v).expect("json"));
            }
            Ok(format!("{} on {} (rank {})\n{}\n", e.id, e.surface, e.expected_rank, e.omega))
        }
        CatalogQuery::Degrees(s) => {
            let d = match catalog::degree_set(s) {
                Ok(d) => d,
                Err(Error::NoPseudoAnosov(_)) => {
                    return Ok(if as_json {
                        json!({"surface": s.to_string(), "pseudo_anosov": false}).to_string()
                    } else {
                        "no pseudo-Anosov maps\n".to_string()
                    });
                }
                Err(e) => return Err(e),
            };
            let plus = catalog::degree_set_plus(s)?;
            let dim = catalog::teich_dim(s)?;
            if as_json {
                return Ok(json!({
                    "surface": s.to_string(),
                    "teich_dim": dim,
                    "degrees": d.degrees,
                    "alternative": d.alternative,
                    "ambiguous": d.ambiguous(),
                    "degrees_plus": plus,
                })
                .to_string());
            }
            let mut out = format!("D  {}\n", format_set(&d.degrees));
            if let Some(alt) = &d.alternative {
                out.push_str(&format!("   or {} (undetermined)\n", format_set(alt)));
            }
            out.push_str(&format!("D+ {}\n", format_set(&plus)));
            Ok(out)
        }
        CatalogQuery::Export => Ok(catalog::export_json()),
    }
}

/// Short end-to-end checks with known answers.
pub fn selftest() -> Vec<(&'static str, bool)> {
    let omega3 = IntersectionMatrix::from_int_rows(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).expect("valid");
    let w = TwistWord::unit(vec![1, 2, 3]).expect("valid");
    let deg = cmd_degree(&omega3, &w, 30);
    let mut out = vec![
        ("triangle charpoly", deg.as_ref().is_ok_and(|o| o.report.charpoly == Poly::from_i64(&[-1, 5, -7, 1]))),
        ("triangle degree", deg.as_ref().is_ok_and(|o| o.degree == 3)),
        (
            "triangle lambda",
            deg.as_ref().is_ok_and(|o| o.report.pf_value.to_decimal(10).starts_with("6.22226252")),
        ),
    ];
    let fixtures = [Poly::from_i64(&[1, 1, -1, 0, -1, -3, 1]), Poly::from_i64(&[-1, -1, 1, -1, -3, 1])];
    out.push(("fixture polynomials irreducible", fixtures.iter().all(|p| factor_monic(p).is_irreducible())));
    out.push((
        "catalog ranks",
        catalog::entries().iter().all(|e| rank_exact(&e.omega) == e.expected_rank),
    ));
    out.push((
        "D(S_2)",
        catalog::degree_set(&SurfaceSpec::orientable(2, 0)).is_ok_and(|d| format_set(&d.degrees) == "{2,3,4,6}"),
    ));
    out.push((
        "non-general word rejected",
        matches!(cmd_degree(&omega3, &TwistWord::unit(vec![1, 2]).expect("valid"), 20), Err(Error::NotPerronFrobenius(_))),
    ));
    out
}
