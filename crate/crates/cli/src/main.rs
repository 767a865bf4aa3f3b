//! `ingham`: queries, surveys, verification runs and the full reproduction
//! report for lattices built from tilings.
//!
//! Exit codes: `0` success, `1` a computed value disagrees with its
//! expectation, `2` usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ingham_core::catalog::{self, CatalogEntry};
use ingham_core::geometry::{cells_csv, omega_cells};
use ingham_core::lattice::{minimality_certificate, realize_points, BBox, LatticePoint};
use ingham_core::report;
use ingham_core::search::{classify_all, connected_survey, summarize, survey_csv};
use ingham_core::spectral::{ingham_constants, DEFAULT_A2_TOL};
use ingham_core::verify::{frame_bound_check, gram, removal_witness, witness_csv, SupportSet, VerifyError, FRAME_EPS};
use ingham_core::{LatticeSpec, TranslationConfig};

#[derive(Parser)]
#[command(name = "ingham", version, about = "Ingham-type inequality data for lattices built from tilings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List tilings or show one.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Condition (A2) and the Ingham constants for one configuration.
    Constants {
        #[command(flatten)]
        tiling: TilingArgs,
        /// Offsets `a,b;a,b;...` (v_k = 2π·(a,b)); defaults to the tiling's first reference configuration.
        #[arg(long)]
        config: Option<String>,
    },
    /// Classify all M-subsets of a grid, or all connected configurations.
    Survey {
        #[command(flatten)]
        tiling: TilingArgs,
        /// Grid {0..g}².
        #[arg(long, default_value_t = 3)]
        grid: i64,
        /// Survey the fixed polyominoes with M cells instead of the grid.
        #[arg(long)]
        connected_only: bool,
        /// Write one CSV row per configuration here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Gram-matrix certificates on centred box supports.
    Verify {
        #[command(flatten)]
        tiling: TilingArgs,
        #[arg(long)]
        config: Option<String>,
        /// Supports |m|∞ ≤ r for r = 0..=k, nested.
        #[arg(long, default_value_t = 1)]
        support_radius: i64,
        /// Remove the rectangle x0,y0,x1,y1 and report λ_min per support.
        #[arg(long)]
        hole: Option<String>,
        /// Write the hole witness sequence here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Recompute every published value and write a report.
    Reproduce {
        #[arg(long, default_value = "reproduction")]
        out: PathBuf,
    },
    /// Figure data as CSV.
    Export {
        #[command(flatten)]
        tiling: TilingArgs,
        #[arg(long, value_enum)]
        what: Export,
        #[arg(long)]
        config: Option<String>,
        /// x0,y0,x1,y1 for points.
        #[arg(long, default_value = "-3,-3,3,3")]
        bbox: String,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show {
        name: String,
        /// Print the interchange JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Export {
    Points,
    Domain,
}

#[derive(Args)]
struct TilingArgs {
    /// Catalog name.
    #[arg(long, required_unless_present = "spec_file")]
    tiling: Option<String>,
    /// Small side of the two-square tiling.
    #[arg(long)]
    r: Option<String>,
    /// Large side of the two-square tiling.
    #[arg(long = "R")]
    big_r: Option<String>,
    /// Custom tiling in the catalog's JSON schema.
    #[arg(long, conflicts_with = "tiling")]
    spec_file: Option<PathBuf>,
    /// Relative (A2) threshold on κ₁/κ₂.
    #[arg(long, env = "INGHAM_TOL", default_value_t = DEFAULT_A2_TOL)]
    tol: f64,
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Resolved {
    spec: LatticeSpec,
    entry: Option<CatalogEntry>,
}

impl TilingArgs {
    fn resolve(&self) -> Result<Resolved, Failure> {
        if let Some(path) = &self.spec_file {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            return Ok(Resolved { spec: catalog::parse_spec_json(&text)?, entry: None });
        }
        let name = self.tiling.as_deref().unwrap_or_default();
        let entry = match (name, &self.r, &self.big_r) {
            ("two_square", r, big_r) if r.is_some() || big_r.is_some() => {
                let r = ingham_core::quad::parse_rational(r.as_deref().unwrap_or("1"))?;
                let big_r = ingham_core::quad::parse_rational(big_r.as_deref().unwrap_or("3"))?;
                catalog::two_square(r, big_r)?
            }
            (_, None, None) => catalog::get(name)?,
            _ => return Err(Failure::Usage("--r/--R apply only to two_square".into())),
        };
        Ok(Resolved { spec: entry.spec.clone(), entry: Some(entry) })
    }

    fn tol(&self) -> Result<f64, Failure> {
        if self.tol.is_finite() && self.tol >= 0.0 {
            Ok(self.tol)
        } else {
            Err(Failure::Usage(format!("invalid tolerance {}", self.tol)))
        }
    }
}

impl Resolved {
    fn config(&self, flag: &Option<String>) -> Result<TranslationConfig, Failure> {
        match (flag, &self.entry) {
            (Some(s), _) => Ok(s.parse()?),
            (None, Some(e)) => Ok(e.default_config().clone()),
            (None, None) => Err(Failure::Usage("--config is required with --spec-file".into())),
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn parse_box(s: &str) -> Result<BBox, Failure> {
    let v: Vec<f64> = s.split(',').map(|t| t.trim().parse::<f64>()).collect::<Result<_, _>>()?;
    match v[..] {
        [x0, y0, x1, y1] => Ok(BBox::new(x0, y0, x1, y1)),
        _ => Err(Failure::Usage(format!("expected x0,y0,x1,y1, got {s:?}"))),
    }
}

fn write(path: &Path, contents: &str) -> Outcome {
    fs::write(path, contents).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn catalog_cmd(action: CatalogAction) -> Outcome {
    match action {
        CatalogAction::List => {
            for name in catalog::NAMES {
                let entry = catalog::get(name)?;
                let suffix = if name == "two_square" { " (parametric: --r, --R; default r=1, R=3)" } else { "" };
                println!("{name:24} M={}{suffix}", entry.spec.m());
            }
        }
        CatalogAction::Show { name, json } => {
            let entry = catalog::get(&name)?;
            let spec = &entry.spec;
            if json {
                print_json(&catalog::spec_to_json(spec));
                return Ok(());
            }
            let witnesses: Vec<_> = (0..spec.m()).map(|j| spec.point(LatticePoint::new(j, [0, 0]))).collect();
            let minimal = match minimality_certificate(spec, &witnesses) {
                Ok(b) => b.to_string(),
                Err(e) => format!("undecided ({e})"),
            };
            println!("name: {}", spec.name);
            println!("M={} d={}", spec.m(), spec.field()?);
            if spec.scale_sq != ingham_core::Rational::from_integer(1) {
                println!("homothety²: {}", spec.scale_sq);
            }
            println!(
                "L* = [[{}, {}], [{}, {}]]",
                spec.l_star[0][0], spec.l_star[0][1], spec.l_star[1][0], spec.l_star[1][1]
            );
            println!("det L* = {}", spec.det_l_star());
            for (j, u) in spec.us.iter().enumerate() {
                println!("u{} = ({}, {})", j + 1, u[0], u[1]);
            }
            for c in &entry.default_configs {
                println!("config {}: {}", c.label, c.config);
            }
            println!("minimality certificate: {minimal}");
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ConstantsOut {
    tiling: String,
    config: String,
    a2: bool,
    kappa1: f64,
    kappa2: f64,
    c1_full: f64,
    c2_full: f64,
    connected: bool,
}

fn constants_cmd(tiling: TilingArgs, config: Option<String>) -> Outcome {
    let res = tiling.resolve()?;
    let c = res.config(&config)?;
    let k = ingham_constants(&res.spec, &c, tiling.tol()?)?;
    print_json(&ConstantsOut {
        tiling: res.spec.name.clone(),
        config: c.to_string(),
        a2: k.satisfies_a2,
        kappa1: k.kappa1,
        kappa2: k.kappa2,
        c1_full: k.c1_full,
        c2_full: k.c2_full,
        connected: ingham_core::geometry::is_connected(c.ns()),
    });
    Ok(())
}

fn survey_cmd(tiling: TilingArgs, grid: i64, connected_only: bool, csv: Option<PathBuf>) -> Outcome {
    let res = tiling.resolve()?;
    if !(0..=7).contains(&grid) {
        return Err(Failure::Usage(format!("grid {grid} outside 0..=7")));
    }
    let m = res.spec.m();
    if !connected_only && m > ((grid + 1) * (grid + 1)) as usize {
        return Err(Failure::Usage(format!("grid {grid} has fewer than {m} points")));
    }
    let result = if connected_only {
        connected_survey(&res.spec, tiling.tol()?)?
    } else {
        classify_all(&res.spec, grid, tiling.tol()?)?
    };
    if let Some(path) = csv {
        write(&path, &survey_csv(&result))?;
    }
    print_json(&summarize(&result));
    Ok(())
}

#[derive(Serialize)]
struct VerifyOut {
    tiling: String,
    config: String,
    a2: bool,
    checks: Vec<SupportCheck>,
    interlacing: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<ingham_core::verify::WitnessStep>>,
    pass: bool,
}

#[derive(Serialize)]
struct SupportCheck {
    radius: i64,
    support_size: usize,
    lambda_min: f64,
    lambda_max: f64,
    c1_full: f64,
    c2_full: f64,
    pass: bool,
}

fn verify_cmd(
    tiling: TilingArgs,
    config: Option<String>,
    radius: i64,
    hole: Option<String>,
    csv: Option<PathBuf>,
) -> Outcome {
    let res = tiling.resolve()?;
    let c = res.config(&config)?;
    if !(0..=6).contains(&radius) {
        return Err(Failure::Usage(format!("support radius {radius} outside 0..=6")));
    }
    let tol = tiling.tol()?;
    let supports: Vec<SupportSet> = (0..=radius).map(|k| SupportSet::centered_box(res.spec.m(), k)).collect();
    let consts = ingham_constants(&res.spec, &c, tol)?;
    let mut checks = Vec::new();
    for (k, s) in supports.iter().enumerate() {
        let check = match frame_bound_check(&res.spec, &c, s, tol) {
            Ok(f) => SupportCheck {
                radius: k as i64,
                support_size: f.support_size,
                lambda_min: f.lambda_min,
                lambda_max: f.lambda_max,
                c1_full: f.c1_full,
                c2_full: f.c2_full,
                pass: f.pass,
            },
            // Without (A2) only the upper bound is asserted.
            Err(VerifyError::A2Violated { lambda_max, c2_full, upper_ok }) => {
                let vals = gram(&res.spec, &c, s)?.eigenvalues();
                SupportCheck {
                    radius: k as i64,
                    support_size: s.len(),
                    lambda_min: vals[0],
                    lambda_max,
                    c1_full: 0.0,
                    c2_full,
                    pass: upper_ok && vals[0] >= -FRAME_EPS * c2_full,
                }
            }
            Err(e) => return Err(e.into()),
        };
        checks.push(check);
    }
    let interlacing = checks.windows(2).all(|w| {
        w[1].lambda_min <= w[0].lambda_min + 1e-9 * consts.c2_full.max(1.0)
            && w[1].lambda_max >= w[0].lambda_max - 1e-9 * consts.c2_full.max(1.0)
    });
    let witness = match hole {
        Some(h) => {
            let steps = removal_witness(&res.spec, &c, &parse_box(&h)?, &supports)?;
            if let Some(path) = &csv {
                write(path, &witness_csv(&steps))?;
            }
            Some(steps)
        }
        None => None,
    };
    let witness_ok = witness.as_ref().is_none_or(|w| {
        w.iter().all(|s| s.lambda_min > 0.0 && s.lambda_min <= s.lambda_min_full + 1e-9 * s.lambda_min_full)
            && w.windows(2).all(|p| p[1].lambda_min <= p[0].lambda_min)
    });
    let pass = interlacing && witness_ok && checks.iter().all(|c| c.pass);
    print_json(&VerifyOut {
        tiling: res.spec.name.clone(),
        config: c.to_string(),
        a2: consts.satisfies_a2,
        checks,
        interlacing,
        witness,
        pass,
    });
    if pass {
        Ok(())
    } else {
        Err(Failure::Mismatch("verification failed".into()))
    }
}

fn reproduce_cmd(out: PathBuf) -> Outcome {
    let run = report::reproduce(DEFAULT_A2_TOL);
    fs::create_dir_all(&out).map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
    write(&out.join("report.json"), &run.report.to_json())?;
    for (name, contents) in &run.files {
        write(&out.join(name), contents)?;
    }
    print!("{}", report::text_table(&run.report));
    if run.report.all_pass() {
        Ok(())
    } else {
        let names: Vec<String> =
            run.report.failures().map(|f| format!("{}: {}", f.expected.tiling, f.expected.source)).collect();
        Err(Failure::Mismatch(format!("{} mismatches: {}", names.len(), names.join("; "))))
    }
}

fn export_cmd(tiling: TilingArgs, what: Export, config: Option<String>, bbox: String) -> Outcome {
    let res = tiling.resolve()?;
    match what {
        Export::Points => {
            let b = parse_box(&bbox)?;
            println!("j,m1,m2,x,y");
            if !b.is_empty() {
                for p in realize_points(&res.spec, b) {
                    println!("{},{},{},{},{}", p.point.j + 1, p.point.m[0], p.point.m[1], p.xy[0], p.xy[1]);
                }
            }
        }
        Export::Domain => {
            let c = res.config(&config)?;
            print!("{}", cells_csv(&omega_cells(&res.spec, &c)));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Catalog { action } => catalog_cmd(action),
        Command::Constants { tiling, config } => constants_cmd(tiling, config),
        Command::Survey { tiling, grid, connected_only, csv } => survey_cmd(tiling, grid, connected_only, csv),
        Command::Verify { tiling, config, support_radius, hole, csv } => {
            verify_cmd(tiling, config, support_radius, hole, csv)
        }
        Command::Reproduce { out } => reproduce_cmd(out),
        Command::Export { tiling, what, config, bbox } => export_cmd(tiling, what, config, bbox),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
