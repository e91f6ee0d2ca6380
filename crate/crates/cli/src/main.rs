use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use loopmul::dt::{self, DtFile};
use loopmul::scene::{self, corpus, io, CurveId, Scene, SmoothingConvention};
use loopmul::torus::{self, TorusClass, TwistDirection};
use loopmul::verify::{self, Config, Suite};

#[derive(Parser)]
#[command(name = "loopmul", version, about = "Curve products, twists and their verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Arithmetic of curve classes on the torus.
    #[command(subcommand)]
    Torus(TorusCmd),
    /// Curve configurations stored as rotation systems.
    #[command(subcommand)]
    Scene(SceneCmd),
    /// Twist coordinates relative to a pants decomposition.
    #[command(subcommand)]
    Dt(DtCmd),
    /// Run verification suites; exits 1 if any check fails.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum TorusCmd {
    /// Product of two classes.
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: TorusClass,
        #[arg(allow_hyphen_values = true)]
        b: TorusClass,
    },
    /// Geometric intersection number.
    Int {
        #[arg(allow_hyphen_values = true)]
        a: TorusClass,
        #[arg(allow_hyphen_values = true)]
        b: TorusClass,
    },
    /// Dehn twist of `--on` along the simple loop `--along`.
    Twist {
        #[arg(long, allow_hyphen_values = true)]
        along: TorusClass,
        #[arg(long, allow_hyphen_values = true)]
        on: TorusClass,
        /// Twist in the negative direction.
        #[arg(long)]
        neg: bool,
    },
    /// CSV of n, I(alpha^n beta, gamma).
    Profile {
        #[arg(long, allow_hyphen_values = true)]
        alpha: TorusClass,
        #[arg(long, allow_hyphen_values = true)]
        beta: TorusClass,
        #[arg(long, allow_hyphen_values = true)]
        gamma: TorusClass,
        #[arg(long, allow_hyphen_values = true, default_value = "-6..6", value_parser = parse_range)]
        range: (i64, i64),
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Standard,
    Flipped,
}

impl From<Convention> for SmoothingConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Standard => SmoothingConvention::Standard,
            Convention::Flipped => SmoothingConvention::Flipped,
        }
    }
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
}

#[derive(Subcommand)]
enum SceneCmd {
    /// Check every invariant and print a summary.
    Validate { file: PathBuf },
    /// Boundary walks of the rotation system.
    Faces { file: PathBuf },
    /// Resolve every crossing of one curve with another.
    Resolve {
        file: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum, default_value = "standard")]
        convention: Convention,
        /// Write the resolved scene here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed components, their crossings and homology classes.
    Census { file: PathBuf },
    /// Bigons between two curves.
    Bigons {
        file: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Straight-line scene of two slopes on the torus.
    Grid {
        #[arg(allow_hyphen_values = true)]
        p: i64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
        #[arg(allow_hyphen_values = true)]
        r: i64,
        #[arg(allow_hyphen_values = true)]
        s: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the built-in scene corpus into a directory.
    Corpus {
        dir: PathBuf,
        #[arg(long, default_value_t = 2)]
        grid_bound: i64,
    },
}

#[derive(Subcommand)]
enum DtCmd {
    /// Check the decomposition and the coordinates.
    Validate { file: PathBuf },
    /// Multiply by powers of the pants curves.
    Twist {
        file: PathBuf,
        /// Comma-separated exponents, one per pants curve.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        k: Vec<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exponents turning the coordinates of OTHER into those of FILE.
    Solve { file: PathBuf, other: PathBuf },
    /// Write the shipped decompositions into a directory.
    Corpus { dir: PathBuf },
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run (repeatable); all suites when omitted.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Class bound for every enumerating suite.
    #[arg(long)]
    bound: Option<i64>,
    /// Bound for the window of tested classes in the fixed-point check.
    #[arg(long)]
    gamma_bound: Option<i64>,
    /// Exponent window for the convexity suite.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    range: Option<(i64, i64)>,
    #[arg(long)]
    m_max: Option<i64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    convention: Option<Convention>,
    /// Write the full JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((a, b))
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn load_scene(path: &Path) -> Result<Scene> {
    io::load(path).with_context(|| format!("reading {}", path.display()))
}

fn emit_scene(scene: &Scene, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => io::save(p, scene).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{}", io::to_json(scene)?);
            Ok(())
        }
    }
}

fn run_torus(cmd: TorusCmd) -> Result<()> {
    match cmd {
        TorusCmd::Mul { a, b } => println!("{}", torus::multiply(a, b)?),
        TorusCmd::Int { a, b } => println!("{}", torus::intersection(a, b)?),
        TorusCmd::Twist { along, on, neg } => {
            let dir = if neg {
                TwistDirection::Negative
            } else {
                TwistDirection::Positive
            };
            println!("{}", torus::dehn_twist(along, on, dir)?);
        }
        TorusCmd::Profile {
            alpha,
            beta,
            gamma,
            range: (lo, hi),
        } => {
            if lo > hi {
                bail!("empty range {lo}..{hi}");
            }
            let p = torus::convexity_profile(alpha, beta, gamma, lo, hi)?;
            println!("n,value");
            for (n, v) in p.exponents().zip(&p.values) {
                println!("{n},{v}");
            }
        }
    }
    Ok(())
}

fn run_scene(cmd: SceneCmd) -> Result<()> {
    match cmd {
        SceneCmd::Validate { file } => print_json(&scene::validate(&load_scene(&file)?)?),
        SceneCmd::Faces { file } => print_json(&scene::trace_faces(&load_scene(&file)?)?),
        SceneCmd::Resolve {
            file,
            pair,
            convention,
            out,
        } => {
            let s = load_scene(&file)?;
            let r = scene::resolve_with(
                &s,
                &CurveId::new(pair.from),
                &CurveId::new(pair.to),
                convention.into(),
            )?;
            emit_scene(&r, out.as_deref())
        }
        SceneCmd::Census { file } => {
            let s = load_scene(&file)?;
            let census = scene::components(&s)?;
            let trivial = scene::trivial_components(&s)?;
            print_json(&json!({ "components": census.components, "trivial": trivial }))
        }
        SceneCmd::Bigons { file, pair } => {
            let s = load_scene(&file)?;
            print_json(&scene::find_bigons(
                &s,
                &CurveId::new(pair.from),
                &CurveId::new(pair.to),
            )?)
        }
        SceneCmd::Grid { p, q, r, s, out } => {
            emit_scene(&scene::torus_grid_scene(p, q, r, s)?, out.as_deref())
        }
        SceneCmd::Corpus { dir, grid_bound } => {
            corpus::write_corpus(&dir, grid_bound)?;
            eprintln!("wrote scene corpus to {}", dir.display());
            Ok(())
        }
    }
}

fn load_dt(path: &Path) -> Result<DtFile> {
    DtFile::load(path).with_context(|| format!("reading {}", path.display()))
}

fn run_dt(cmd: DtCmd) -> Result<()> {
    match cmd {
        DtCmd::Validate { file } => {
            let f = load_dt(&file)?;
            let ty = dt::validate_decomposition(&f.decomposition)?;
            dt::validate_coords(&f.decomposition, &f.coords)?;
            print_json(&ty)
        }
        DtCmd::Twist { file, k, out } => {
            let mut f = load_dt(&file)?;
            dt::validate_coords(&f.decomposition, &f.coords)?;
            f.coords = dt::twist_multiply(&f.coords, &k)?;
            match out {
                Some(p) => f.save(&p).with_context(|| format!("writing {}", p.display())),
                None => print_json(&f),
            }
        }
        DtCmd::Solve { file, other } => {
            let (a, b) = (load_dt(&file)?, load_dt(&other)?);
            if a.decomposition != b.decomposition {
                return Err(dt::DtError::IntersectionMismatch.into());
            }
            dt::validate_coords(&a.decomposition, &a.coords)?;
            dt::validate_coords(&b.decomposition, &b.coords)?;
            print_json(&dt::solve_twists(&a.coords, &b.coords)?)
        }
        DtCmd::Corpus { dir } => {
            fs::create_dir_all(&dir)?;
            for (name, f) in dt::builtin_files() {
                f.save(dir.join(name))?;
            }
            eprintln!("wrote decompositions to {}", dir.display());
            Ok(())
        }
    }
}

fn run_verify(args: VerifyArgs) -> Result<bool> {
    let mut config = Config::default();
    if let Some(b) = args.bound {
        config = config.with_bound(b);
    }
    if let Some(g) = args.gamma_bound {
        config.gamma_bound = g;
    }
    if let Some((lo, hi)) = args.range {
        config.n_min = lo;
        config.n_max = hi;
    }
    if let Some(m) = args.m_max {
        config.m_max = m;
    }
    if let Some(t) = args.trials {
        config.trials = t;
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(c) = args.convention {
        config.convention = c.into();
    }
    let suites: Vec<Suite> = if args.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        args.suites
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?
    };
    let report = verify::run(&suites, &config)?;
    for s in &report.suites {
        print!("{s}");
    }
    if let Some(out) = &args.out {
        verify::write_report(&report, out)?;
    }
    println!("{}", if report.passed { "all suites passed" } else { "FAILURES" });
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Torus(c) => run_torus(c).map(|_| true),
        Command::Scene(c) => run_scene(c).map(|_| true),
        Command::Dt(c) => run_dt(c).map(|_| true),
        Command::Verify(a) => run_verify(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
