use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use penner::cli::{self, CatalogQuery, RecipeOptions, DEFAULT_DIGITS, DEFAULT_K_MAX, DEFAULT_WINDOW};
use penner::penner::{IntersectionMatrix, TwistWord};
use penner::{catalog, Error, Result};

#[derive(Parser)]
#[command(name = "penner", version, about = "Stretch factors of Penner pseudo-Anosov maps")]
struct Cli {
    /// Significant digits for λ (default 50, or PENNER_PRECISION)
    #[arg(long, global = true)]
    digits: Option<usize>,
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Input {
    /// Intersection matrix as JSON
    #[arg(long, conflicts_with = "catalog")]
    omega: Option<std::path::PathBuf>,
    /// Catalog id instead of --omega
    #[arg(long)]
    catalog: Option<String>,
    /// Comma-separated 1-based path, or `tree`
    #[arg(long)]
    gamma: String,
    /// Comma-separated positive powers (default all 1)
    #[arg(long)]
    powers: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Degree of the stretch factor of one product
    Degree(Input),
    /// Find k with deg λ(kΩ) = rank Ω
    Recipe {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        k_max: u64,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
        /// Check Q_i(kΩ) = Q_i(Ω)^k for k ≤ 3
        #[arg(long)]
        cross_check: bool,
    },
    /// Stretch factors along a ray kΩ
    Limit {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "1,2,4,8,16,32")]
        scales: String,
    },
    /// Stored matrices and degree sets
    Catalog {
        #[command(subcommand)]
        q: CatalogCmd,
    },
    /// Quick end-to-end checks
    Selftest,
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Show { id: String },
    /// Degree sets of S_{g,n} or N_{g,n}
    Degrees { kind: String, genus: u32, punctures: u32 },
    Export,
}

fn digits(flag: Option<usize>) -> Result<usize> {
    if let Some(d) = flag {
        return Ok(d);
    }
    match std::env::var("PENNER_PRECISION") {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("PENNER_PRECISION={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_DIGITS),
    }
}

fn load(input: &Input) -> Result<(IntersectionMatrix, TwistWord)> {
    let omega = match (&input.omega, &input.catalog) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            cli::parse_omega_json(&text)?
        }
        (None, Some(id)) => catalog::catalog_get(id)?.omega,
        (None, None) => return Err(Error::Parse("one of --omega or --catalog is required".into())),
    };
    let gamma = cli::resolve_path(&input.gamma, &omega)?;
    let powers = input.powers.as_deref().map(cli::parse_powers).transpose()?;
    Ok((omega, cli::build_word(gamma, powers)?))
}

fn emit(json: bool, value: serde_json::Value, text: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).expect("json"));
    } else {
        print!("{text}");
    }
}

fn run(args: Cli) -> Result<bool> {
    let digits = digits(args.digits)?;
    match args.cmd {
        Cmd::Degree(input) => {
            let (omega, word) = load(&input)?;
            let out = cli::cmd_degree(&omega, &word, digits)?;
            emit(args.json, cli::degree_json(&out), cli::degree_text(&out));
        }
        Cmd::Recipe { input, k_max, window, cross_check } => {
            let (omega, word) = load(&input)?;
            let opts = RecipeOptions { k_max, window, digits, cross_check };
            let r = cli::cmd_recipe(&omega, &word, &opts)?;
            emit(args.json, cli::recipe_json(&r), cli::recipe_text(&r));
        }
        Cmd::Limit { input, scales } => {
            let (omega, word) = load(&input)?;
            let scales = cli::parse_scales(&scales)?;
            let r = cli::cmd_limit(&omega, &word, &scales, digits)?;
            emit(args.json, cli::limit_json(&r, digits), cli::limit_text(&r, digits));
        }
        Cmd::Catalog { q } => {
            let q = match q {
                CatalogCmd::List => CatalogQuery::List,
                CatalogCmd::Show { id } => CatalogQuery::Show(id),
                CatalogCmd::Degrees { kind, genus, punctures } => {
                    CatalogQuery::Degrees(cli::parse_surface(&kind, genus, punctures)?)
                }
                CatalogCmd::Export => CatalogQuery::Export,
            };
            let s = cli::cmd_catalog(&q, args.json)?;
            println!("{}", s.trim_end());
        }
        Cmd::Selftest => {
            let results = cli::selftest();
            let ok = results.iter().all(|(_, p)| *p);
            if args.json {
                let v: Vec<_> = results.iter().map(|(n, p)| serde_json::json!({"check": n, "pass": p})).collect();
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                for (name, pass) in &results {
                    println!("{} {name}", if *pass { "PASS" } else { "FAIL" });
                }
            }
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let args = Cli::parse();
    match run(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
