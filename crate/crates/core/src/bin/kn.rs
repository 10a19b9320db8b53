use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use kn_core::coeffs::{serialize, CoefficientTables};
use kn_core::config::JobConfig;
use kn_core::exact::scalar::{int, parse_scalar, to_pq};
use kn_core::realization::{import, Label};
use kn_core::rep::ordering::NormalOrdering;
use kn_core::suites::{self, build_module};
use kn_core::sugawara::Sugawara;

#[derive(Parser)]
#[command(name = "kn", about = "Exact Krichever-Novikov tables, identity suites and Sugawara reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Job config file (`key = value` lines)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Index box |n| <= N
    #[arg(long, global = true)]
    range: Option<i64>,
    /// Verma module depth
    #[arg(long, global = true)]
    depth: Option<i64>,
    /// Operator index bound |k| <= K
    #[arg(long, global = true)]
    k: Option<i64>,
    /// Current index bound |r| <= R
    #[arg(long, global = true)]
    r: Option<i64>,
    /// `sl:n` or `abelian:r`
    #[arg(long, global = true)]
    algebra: Option<String>,
    /// Level c as p/q
    #[arg(long, global = true)]
    level: Option<String>,
    /// Highest weight in the fundamental-weight basis, comma-separated p/q
    #[arg(long, global = true)]
    weight: Option<String>,
    /// Normal-ordering override file (`m n +|-` lines)
    #[arg(long, global = true)]
    ordering: Option<PathBuf>,
    /// Output directory (tables) or file (export)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Write the coefficient tables of the configured realization
    Tables,
    /// Run a named identity suite; exits nonzero on any failure
    Verify { suite: String },
    /// Central charge, weight, Casimir eigenvalue and cocycle diagonal
    Report,
    /// Serialize the configured realization's basis expansions
    ExportRealization,
    /// Read and validate a realization file, then write its tables
    ImportRealization { file: PathBuf },
}

type Failure = Box<dyn std::error::Error>;

fn config(c: &Common) -> Result<JobConfig, Failure> {
    let mut cfg = match &c.config {
        Some(p) => JobConfig::load(p)?,
        None => JobConfig::default(),
    };
    let o = &mut cfg.options;
    if let Some(x) = c.range {
        o.range = x;
    }
    if let Some(x) = c.depth {
        o.depth = x;
    }
    if let Some(x) = c.k {
        o.k = x;
    }
    if let Some(x) = c.r {
        o.r = x;
    }
    if let Some(x) = &c.algebra {
        o.algebra = x.clone();
    }
    if let Some(x) = &c.level {
        o.level = parse_scalar(x)?;
    }
    if let Some(x) = &c.weight {
        o.chi = Some(x.split(',').map(|v| parse_scalar(v.trim())).collect::<Result<_, _>>()?);
    }
    if let Some(p) = &c.ordering {
        o.ordering = NormalOrdering::parse(&fs::read_to_string(p)?)?;
    }
    if let Some(x) = &c.out {
        cfg.out = x.clone();
    }
    Ok(cfg)
}

fn write_tables(t: &CoefficientTables, range: i64, dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir)?;
    let prov = serialize::provenance(t, range);
    for (name, body) in serialize::write_tables(t, range)? {
        fs::write(dir.join(&name), &body)?;
        println!("wrote {}", dir.join(&name).display());
    }
    fs::write(dir.join("provenance.txt"), prov + "\n")?;
    Ok(())
}

fn report(cfg: &JobConfig) -> Result<bool, Failure> {
    let o = &cfg.options;
    let t = Arc::new(CoefficientTables::new(cfg.realization()?));
    let m = build_module(&t, o)?;
    let s = Sugawara::new(m.clone(), o.ordering.clone());
    let lie = m.algebra().lie();
    println!("algebra {} dim {} kappa {}", o.algebra, lie.dim(), to_pq(lie.kappa()));
    println!("level {}", to_pq(&o.level));
    println!("central charge {}", to_pq(&s.central_charge()?));
    println!("ordering {}", o.ordering);
    let lambda: Vec<String> = s.weight_direct()?.lambda.iter().map(to_pq).collect();
    println!("lambda ({})", lambda.join(", "));
    let chi = m.weight().chi0();
    let rho = lie.rho();
    let shifted: Vec<_> = chi.iter().zip(rho).map(|(a, b)| a + int(2) * b).collect();
    println!(
        "weight -2(c+kappa)lambda_0 = {} = <chi+2rho,chi>",
        to_pq(&lie.casimir_pairing(&shifted, chi))
    );
    let spec = s.casimir_spec()?;
    println!("lambda_e {}", to_pq(&spec.lambda_e));
    let omega = spec.lambda_omega.as_ref().map(to_pq).unwrap_or_else(|| "none (v is not an eigenvector)".into());
    println!("lambda_omega {omega}");
    println!("chi diagonal");
    for k in -o.range..=o.range {
        let x = t.chi_ordered(Label::two_point(k), Label::two_point(-k), &o.ordering)?;
        println!("chi {k} {} {}", -k, to_pq(&x));
    }
    Ok(spec.lambda_omega.is_some())
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let common = cli.common;
    let cfg = config(&common)?;
    let o = &cfg.options;
    match cli.command {
        Command::Tables => {
            let t = CoefficientTables::new(cfg.realization()?);
            write_tables(&t, o.range, &cfg.out)?;
            Ok(true)
        }
        Command::Verify { suite } => {
            let t = Arc::new(CoefficientTables::new(cfg.realization()?));
            let r = suites::run(&suite, &t, o)?;
            println!("{r}");
            Ok(r.all_passed())
        }
        Command::Report => report(&cfg),
        Command::ExportRealization => {
            let real = cfg.realization()?;
            let text = import::export(&real, o.range, cfg.expansion_depth)?;
            match &common.out {
                Some(path) => {
                    fs::write(path, text)?;
                    println!("wrote {}", path.display());
                }
                None => print!("{text}"),
            }
            Ok(true)
        }
        Command::ImportRealization { file } => {
            let real = import::parse(&fs::read_to_string(&file)?)?;
            println!("imported {} genus={} K={}", file.display(), real.spec().genus, real.spec().branches());
            let t = CoefficientTables::new(Arc::new(real));
            write_tables(&t, o.range, &cfg.out)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
