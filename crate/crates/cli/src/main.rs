use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use lrdstable::harness::{run_experiment, ExperimentResult, ExperimentSpec, DEFAULT_GAMMAS};
use lrdstable::hermite::{coeff_table, C0Grid, CoeffCache, J_TOL};
use lrdstable::{
    ks_test, normalized_ks, simulate_lrd_pair, simulate_lrd_path, Execution, LrdModel, Sample,
    StableLaw,
};

/// Environment variable overriding the worker count of parallel commands.
const WORKERS_ENV: &str = "LRDSTABLE_WORKERS";

#[derive(Parser)]
#[command(
    name = "lrdstable",
    version,
    about = "Long-memory stable sequences and their KS test"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one (or two independent) LRD Gaussian paths.
    GenerateGaussian {
        #[arg(long)]
        d: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Emit two independent paths.
        #[arg(long)]
        pair: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Simulate an LRD stable sequence through the CMS transform.
    GenerateStable {
        #[command(flatten)]
        law: LawArgs,
        #[arg(long)]
        d: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate the stable CDF.
    Cdf {
        #[command(flatten)]
        law: LawArgs,
        /// Comma-separated evaluation points.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        x: Vec<f64>,
    },
    /// Tabulate the first-order Hermite coefficients on a uniform grid.
    Coeffs {
        #[command(flatten)]
        law: LawArgs,
        #[arg(long, allow_negative_numbers = true)]
        xmin: f64,
        #[arg(long, allow_negative_numbers = true)]
        xmax: f64,
        #[arg(long)]
        points: usize,
        #[arg(long, default_value_t = J_TOL)]
        tol: f64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        workers: WorkerArgs,
    },
    /// Supremum of the first-order coefficient norm and where it is attained.
    C0 {
        #[command(flatten)]
        law: LawArgs,
        #[command(flatten)]
        workers: WorkerArgs,
    },
    /// Raw and normalized KS statistic of a sample.
    Ks {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        law: LawArgs,
        #[arg(long)]
        d: f64,
    },
    /// Goodness-of-fit test against the half-normal limit.
    Test {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        law: LawArgs,
        #[arg(long)]
        d: f64,
        #[arg(long, default_value_t = 0.05)]
        level: f64,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo coverage table over a grid of (D, n).
    McTable(McTableArgs),
}

#[derive(Args)]
struct LawArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    beta2: f64,
}

#[derive(Args)]
struct InputArgs {
    /// CSV file; the column named `x` is used, otherwise the last column.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct WorkerArgs {
    /// Worker threads (1 runs sequentially).
    #[arg(long, env = WORKERS_ENV)]
    workers: Option<usize>,
}

impl WorkerArgs {
    fn execution(&self) -> Result<Execution> {
        if self.workers == Some(0) {
            bail!("worker count must be positive");
        }
        Ok(Execution::from_workers(self.workers))
    }
}

#[derive(Args)]
struct McTableArgs {
    /// TOML file with the experiment; command-line values take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta2: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    d_list: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<usize>>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    gammas: Option<Vec<f64>>,
    #[arg(long)]
    out: PathBuf,
    /// Write the full result, metadata included, as JSON instead of CSV.
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    workers: WorkerArgs,
}

/// Fields of an experiment config file; all optional so that the command
/// line can fill the gaps.
#[derive(serde::Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    alpha: Option<f64>,
    beta2: Option<f64>,
    ds: Option<Vec<f64>>,
    ns: Option<Vec<usize>>,
    reps: Option<usize>,
    seed: Option<u64>,
    gammas: Option<Vec<f64>>,
    workers: Option<usize>,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::GenerateGaussian {
            d,
            n,
            seed,
            pair,
            out,
        } => {
            let model = LrdModel::new(d)?;
            let mut w = csv_writer(&out)?;
            if pair {
                let p = simulate_lrd_pair(&model, n, seed)?;
                w.write_record(["index", "z1", "z2"])?;
                for (i, (a, b)) in p.z1.iter().zip(&p.z2).enumerate() {
                    w.write_record([i.to_string(), num(*a), num(*b)])?;
                }
            } else {
                let z = simulate_lrd_path(&model, n, seed)?;
                w.write_record(["index", "z1"])?;
                for (i, a) in z.iter().enumerate() {
                    w.write_record([i.to_string(), num(*a)])?;
                }
            }
            w.flush()?;
        }
        Command::GenerateStable {
            law,
            d,
            n,
            seed,
            out,
        } => {
            let law = StableLaw::new(law.alpha, law.beta2)?;
            let p = simulate_lrd_pair(&LrdModel::new(d)?, n, seed)?;
            let mut w = csv_writer(&out)?;
            w.write_record(["index", "x"])?;
            for (i, x) in law.transform_paths(&p.z1, &p.z2).into_iter().enumerate() {
                w.write_record([i.to_string(), num(x)])?;
            }
            w.flush()?;
        }
        Command::Cdf { law, x } => {
            let law = StableLaw::new(law.alpha, law.beta2)?;
            let mut out = io::stdout().lock();
            writeln!(out, "x,F")?;
            for v in x {
                writeln!(out, "{},{}", num(v), num(law.cdf(v)?))?;
            }
        }
        Command::Coeffs {
            law,
            xmin,
            xmax,
            points,
            tol,
            out,
            workers,
        } => {
            if points < 2 || !xmin.is_finite() || !xmax.is_finite() || xmax <= xmin {
                bail!("need at least 2 points and xmax > xmin");
            }
            let xs: Vec<f64> = (0..points)
                .map(|i| xmin + (xmax - xmin) * i as f64 / (points - 1) as f64)
                .collect();
            let t = coeff_table(law.alpha, law.beta2, &xs, tol, workers.execution()?)?;
            let mut w = csv_writer(&out)?;
            w.write_record(["x", "J10", "J01", "err10", "err01"])?;
            for i in 0..t.len() {
                w.write_record([
                    num(t.xs[i]),
                    num(t.j10[i]),
                    num(t.j01[i]),
                    num(t.err10[i]),
                    num(t.err01[i]),
                ])?;
            }
            w.flush()?;
        }
        Command::C0 { law, workers } => {
            let r = CoeffCache::global().c0(
                law.alpha,
                law.beta2,
                &C0Grid::default(),
                J_TOL,
                workers.execution()?,
            )?;
            println!("c0,x");
            println!("{},{}", num(r.value), num(r.argmax));
        }
        Command::Ks { input, law, d } => {
            let sample = read_sample(&input.input)?;
            let r = normalized_ks(&sample, law.alpha, law.beta2, d)?;
            println!("K_n,d_n,c0,K_n_normalized");
            println!("{},{},{},{}", num(r.kn), num(r.dn), num(r.c0), num(r.kstar));
        }
        Command::Test {
            input,
            law,
            d,
            level,
            json,
        } => {
            let sample = read_sample(&input.input)?;
            let r = ks_test(&sample, law.alpha, law.beta2, d, level)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r)?);
            } else {
                println!("K_n = {}", num(r.kn));
                println!("d_n = {}", num(r.dn));
                println!("c0 = {}", num(r.c0));
                println!("K* = {}", num(r.kstar));
                println!("p-value = {}", num(r.p_value));
                println!("reject at {} = {}", r.level, r.reject);
            }
        }
        Command::McTable(args) => mc_table(args)?,
    }
    Ok(())
}

fn mc_table(args: McTableArgs) -> Result<()> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            toml::from_str::<ConfigFile>(&text)
                .with_context(|| format!("parsing {}", path.display()))?
        }
        None => ConfigFile::default(),
    };
    let missing =
        |what: &str| anyhow::anyhow!("`{what}` must be given on the command line or in the config");
    let spec = ExperimentSpec {
        alpha: args.alpha.or(file.alpha).ok_or_else(|| missing("alpha"))?,
        beta2: args.beta2.or(file.beta2).ok_or_else(|| missing("beta2"))?,
        ds: args.d_list.or(file.ds).ok_or_else(|| missing("d-list"))?,
        ns: args.n_list.or(file.ns).ok_or_else(|| missing("n-list"))?,
        reps: args.reps.or(file.reps).ok_or_else(|| missing("reps"))?,
        master_seed: args.seed.or(file.seed).ok_or_else(|| missing("seed"))?,
        gammas: args
            .gammas
            .or(file.gammas)
            .unwrap_or_else(|| DEFAULT_GAMMAS.to_vec()),
        workers: args.workers.workers.or(file.workers),
    };
    let result = run_experiment(&spec)?;
    eprintln!(
        "{} cells, {} replications each, {:.1} s",
        result.rows.len(),
        spec.reps,
        result.runtime.as_secs_f64()
    );
    if args.json {
        let mut f = BufWriter::new(File::create(&args.out)?);
        serde_json::to_writer_pretty(&mut f, &result)?;
        writeln!(f)?;
        f.flush()?;
    } else {
        write_table_csv(&args.out, &result)?;
    }
    Ok(())
}

fn write_table_csv(path: &Path, result: &ExperimentResult) -> Result<()> {
    let mut w = csv_writer(path)?;
    let gammas = &result.spec.gammas;
    let mut header = vec![
        "D".to_string(),
        "n".into(),
        "reps".into(),
        "failed".into(),
        "mean".into(),
        "sd".into(),
    ];
    for prefix in ["kstar", "ksd", "kstar_se", "ksd_se"] {
        header.extend(gammas.iter().map(|g| format!("{prefix}_{g}")));
    }
    header.push("c0".into());
    w.write_record(&header)?;
    for row in &result.rows {
        let mut rec = vec![
            num(row.d),
            row.n.to_string(),
            row.reps.to_string(),
            row.failed.to_string(),
            num(row.mean),
            num(row.sd),
        ];
        for col in [
            &row.kstar_coverage,
            &row.ksd_coverage,
            &row.kstar_coverage_se,
            &row.ksd_coverage_se,
        ] {
            rec.extend(col.iter().map(|v| num(*v)));
        }
        rec.push(num(result.c0.value));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// 17 significant digits, enough to round-trip any f64.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_writer(path: &Path) -> Result<csv::Writer<File>> {
    csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))
}

fn read_sample(path: &Path) -> Result<Sample> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("opening {}", path.display()))?;
    let mut records = rdr.records();
    let Some(first) = records.next().transpose()? else {
        bail!("{} is empty", path.display());
    };
    let mut values = Vec::new();
    let column = if first.iter().all(|f| f.parse::<f64>().is_ok()) {
        let col = first.len() - 1;
        values.push(first[col].parse()?);
        col
    } else {
        first
            .iter()
            .position(|h| h == "x")
            .unwrap_or(first.len().saturating_sub(1))
    };
    for (line, rec) in records.enumerate() {
        let rec = rec?;
        let field = rec
            .get(column)
            .with_context(|| format!("row {} has no column {column}", line + 2))?;
        values.push(
            field
                .parse()
                .with_context(|| format!("row {}: `{field}` is not a number", line + 2))?,
        );
    }
    Ok(Sample::new(values)?)
}
