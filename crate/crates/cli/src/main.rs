use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use ptorsion::dieudonne::{
    automorphism_bound, automorphism_order, lift_image, minimal_module, ordinary_module, pi0,
    pi0_at, polarized_double, splitting_degree, stable_automorphism_order,
    stable_endomorphism_units, DieudonneModule, NewtonPolygon,
};
use ptorsion::group::table::FiniteGroupTable;
use ptorsion::group::twist::{twists_over, write_frequency_csv};
use ptorsion::h11::{form_census, write_census_csv};
use ptorsion::par::Execution;
use ptorsion::survey::genus2::run_genus2_survey;
use ptorsion::survey::{
    decay_fit, run_survey, survey_notes, write_plot_data, write_report_csv, write_summary_csv,
    SurveyConfig, SurveyMode,
};

const EXIT_INTERNAL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_GATE: u8 = 3;

#[derive(Parser, Debug, Serialize)]
#[command(
    name = "ptorsion",
    version,
    about = "Dieudonne modules, twists and Frobenius surveys over finite fields"
)]
struct Cli {
    /// Seed for sampled runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Output directory.
    #[arg(long, global = true, env = "PTORSION_OUT", default_value = ".")]
    out: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
}

#[derive(Subcommand, Debug, Serialize)]
enum Command {
    /// Minimal module H_{c,d}: matrices, automorphisms, component group.
    Minimal(MinimalArgs),
    /// Twists of a finite group at an extension degree.
    Twists(TwistArgs),
    /// Frobenius-class survey over F_{p^e}.
    Survey(SurveyArgs),
    /// Forms of the supersingular rank-two BT_1.
    H11(H11Args),
    /// Maximal-order bound on automorphism groups.
    Bound(BoundArgs),
}

#[derive(Args, Debug, Serialize)]
struct MinimalArgs {
    #[arg(long)]
    c: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Use the polarized double H_{c,d} + H_{d,c}.
    #[arg(long)]
    polarized: bool,
}

#[derive(Args, Debug, Serialize)]
struct TwistArgs {
    /// cyclic:k, sym:k, gl:g:p:n or from-module:<file>
    #[arg(long)]
    group: String,
    #[arg(long)]
    degree: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Args, Debug, Serialize)]
struct SurveyArgs {
    #[arg(long)]
    p: u64,
    /// Comma-separated field degrees.
    #[arg(long, value_delimiter = ',', required = true)]
    e_list: Vec<u32>,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    /// Draws per field in sampled mode.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    genus: u8,
    /// Exit 3 unless the decay slope lies in [-0.75, -0.25].
    #[arg(long)]
    gate: bool,
}

#[derive(Args, Debug, Serialize)]
struct H11Args {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    degree: usize,
}

#[derive(Args, Debug, Serialize)]
struct BoundArgs {
    /// Segments c:d:m separated by commas.
    #[arg(long)]
    newton: String,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    p: u64,
    /// Treat a symmetric polygon as unpolarized.
    #[arg(long)]
    unpolarized: bool,
}

#[derive(Serialize)]
struct OutputDigest {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct RunManifest<'a> {
    tool: &'static str,
    version: &'static str,
    flags: &'a Cli,
    wall_time_seconds: f64,
    outputs: Vec<OutputDigest>,
}

/// Failure classes, mapped onto exit codes.
enum Failure {
    Usage(String, String),
    Internal(String),
}

impl From<ptorsion::Error> for Failure {
    fn from(e: ptorsion::Error) -> Self {
        use ptorsion::Error as E;
        let kind = match &e {
            E::Internal(_) => return Failure::Internal(e.to_string()),
            E::NotPrime(_) => "not_prime",
            E::InvalidParameter(_) => "invalid_parameter",
            E::SizeGuard { .. } => "size_guard",
            E::NotInvertible => "not_invertible",
            E::NotCoprime(..) => "not_coprime",
            E::NoUnitRoot(_) => "no_unit_root",
            E::SingularCurve => "singular_curve",
            E::InvalidModule(_) => "invalid_module",
            E::NotSubgroup(_) => "not_subgroup",
            E::Parse { .. } => "parse",
            E::NoStabilization(_) => "no_stabilization",
        };
        Failure::Usage(kind.into(), e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(format!("io: {e}"))
    }
}

fn usage(kind: &str, msg: impl Into<String>) -> Failure {
    Failure::Usage(kind.into(), msg.into())
}

/// Files produced by a run, kept in memory until the manifest is written.
#[derive(Default)]
struct Outputs {
    files: Vec<(String, Vec<u8>)>,
}

impl Outputs {
    fn add(&mut self, name: impl Into<String>, bytes: Vec<u8>) {
        self.files.push((name.into(), bytes));
    }

    fn write(self, dir: &Path, cli: &Cli, started: Instant) -> Result<(), Failure> {
        fs::create_dir_all(dir)?;
        let mut digests = Vec::new();
        for (name, bytes) in &self.files {
            fs::write(dir.join(name), bytes)?;
            digests.push(OutputDigest {
                path: name.clone(),
                sha256: hex::encode(Sha256::digest(bytes)),
            });
        }
        let manifest = RunManifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            flags: cli,
            wall_time_seconds: started.elapsed().as_secs_f64(),
            outputs: digests,
        };
        let json =
            serde_json::to_vec_pretty(&manifest).map_err(|e| Failure::Internal(e.to_string()))?;
        fs::write(dir.join("manifest.json"), json)?;
        Ok(())
    }
}

fn build_minimal(a: &MinimalArgs, n: u32) -> ptorsion::Result<DieudonneModule> {
    if a.polarized {
        polarized_double(a.p, a.c, a.d, n)
    } else {
        minimal_module(a.p, a.c, a.d, n)
    }
}

fn cmd_minimal(a: &MinimalArgs, out: &mut Outputs) -> Result<u8, Failure> {
    if a.n == 0 {
        return Err(usage("invalid_parameter", "n must be >= 1"));
    }
    let module = build_minimal(a, a.n)?;
    let reduced = build_minimal(a, 1)?;
    let text = module.to_text();
    print!("{text}");
    let tag = if a.polarized { "double" } else { "minimal" };
    out.add(
        format!("{tag}_c{}_d{}_p{}_n{}.dmod", a.c, a.d, a.p, a.n),
        text.into_bytes(),
    );
    let degree = splitting_degree(&reduced)?;
    let component = pi0_at(&reduced, degree)?;
    let aut = automorphism_order(&module, degree)?;
    println!("splitting_degree {degree}");
    println!("aut_order {aut}");
    println!("pi0_order {}", component.order());
    println!("pi0_cyclic {}", component.table.is_cyclic());
    if a.n > 1 {
        let li = lift_image(a.p, a.c, a.d, a.n, 1, a.polarized)?;
        println!(
            "lift_image_order {} of {}",
            li.classes.len(),
            li.pi0.order()
        );
    }
    Ok(0)
}

fn parse_group(spec: &str) -> Result<FiniteGroupTable, Failure> {
    let bad = || usage("parse", format!("unrecognized group spec {spec:?}"));
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    let nums = || -> Result<Vec<u64>, Failure> {
        rest.split(':')
            .map(|x| x.parse::<u64>().map_err(|_| bad()))
            .collect()
    };
    let table = match kind {
        "cyclic" => match nums()?[..] {
            [k] => FiniteGroupTable::cyclic(k as usize)?,
            _ => return Err(bad()),
        },
        "sym" => match nums()?[..] {
            [k] => FiniteGroupTable::symmetric(k as usize)?,
            _ => return Err(bad()),
        },
        "gl" => match nums()?[..] {
            [g, p, n] => FiniteGroupTable::general_linear(g as usize, p, n as u32)?,
            _ => return Err(bad()),
        },
        "from-module" => {
            let text = fs::read_to_string(rest).map_err(|e| usage("io", format!("{rest}: {e}")))?;
            let module = DieudonneModule::from_text(&text)?;
            pi0(&module)?.table
        }
        _ => return Err(bad()),
    };
    Ok(table)
}

fn cmd_twists(a: &TwistArgs, out: &mut Outputs) -> Result<u8, Failure> {
    let g = parse_group(&a.group)?;
    let rows = twists_over(&g, a.degree)?;
    let mut buf = Vec::new();
    write_frequency_csv(&g, &rows, &mut buf)?;
    print!("{}", String::from_utf8_lossy(&buf));
    out.add(format!("twists_m{}.csv", a.degree), buf);
    Ok(0)
}

fn cmd_survey(a: &SurveyArgs, cli: &Cli, out: &mut Outputs) -> Result<u8, Failure> {
    let exec = Execution::with_threads(cli.threads);
    if a.genus == 2 {
        let mut buf = Vec::new();
        use std::io::Write;
        writeln!(
            buf,
            "q,n,charpoly_c0,charpoly_c1,observed_count,predicted_freq"
        )?;
        let mut summary = Vec::new();
        writeln!(summary, "q,curves,prank0,prank1,prank2,max_abs_deviation")?;
        for &e in &a.e_list {
            let r = run_genus2_survey(a.p, e, a.n, &exec)?;
            for (k, pred) in &r.predicted {
                let obs = r.charpoly_counts.get(k).copied().unwrap_or(0);
                writeln!(
                    buf,
                    "{},{},{},{},{},{}/{}",
                    r.q,
                    r.n,
                    k.0,
                    k.1,
                    obs,
                    pred.numer(),
                    pred.denom()
                )?;
            }
            let [p0, p1, p2] = r.prank_counts;
            writeln!(
                summary,
                "{},{},{p0},{p1},{p2},{:.12}",
                r.q,
                r.curves,
                r.max_abs_deviation()
            )?;
            println!(
                "q={} curves={} prank=({p0},{p1},{p2}) dev={:.4e}",
                r.q,
                r.curves,
                r.max_abs_deviation()
            );
        }
        out.add(format!("genus2_p{}_n{}.csv", a.p, a.n), buf);
        out.add(format!("genus2_summary_p{}_n{}.csv", a.p, a.n), summary);
        return Ok(0);
    }
    if a.genus != 1 {
        return Err(usage("invalid_parameter", "genus must be 1 or 2"));
    }
    let mode = match a.mode {
        ModeArg::Exhaustive => SurveyMode::Exhaustive,
        ModeArg::Sampled => SurveyMode::Sampled {
            count: a.samples,
            seed: cli.seed,
        },
    };
    let config = SurveyConfig {
        p: a.p,
        degrees: a.e_list.clone(),
        n: a.n,
        mode,
    };
    let reports = run_survey(&config, &exec)?;
    for r in &reports {
        let mut buf = Vec::new();
        write_report_csv(r, &mut buf)?;
        out.add(format!("survey_q{}_n{}.csv", r.q, r.n), buf);
        println!(
            "q={} ordinary={} supersingular={} max_abs_deviation={:.6e}",
            r.q, r.total_ordinary, r.total_supersingular, r.max_abs_deviation
        );
    }
    let fit = if reports.len() >= 3 {
        Some(decay_fit(&reports)?)
    } else {
        None
    };
    let mut summary = Vec::new();
    write_summary_csv(&reports, fit, &mut summary)?;
    out.add(format!("survey_summary_p{}_n{}.csv", a.p, a.n), summary);
    let mut plot = Vec::new();
    write_plot_data(&reports, &survey_notes(&config)?, &mut plot)?;
    out.add(format!("survey_plot_p{}_n{}.dat", a.p, a.n), plot);
    if let Some(f) = fit {
        println!("slope={:.6} intercept={:.6}", f.slope, f.intercept);
    }
    if a.gate {
        let ok = fit.is_some_and(|f| (-0.75..=-0.25).contains(&f.slope));
        println!("gate {}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            return Ok(EXIT_GATE);
        }
    }
    Ok(0)
}

fn cmd_h11(a: &H11Args, out: &mut Outputs) -> Result<u8, Failure> {
    let rows = form_census(a.p, a.degree)?;
    let mut buf = Vec::new();
    write_census_csv(&rows, &mut buf)?;
    print!("{}", String::from_utf8_lossy(&buf));
    out.add(format!("h11_p{}_deg{}.csv", a.p, a.degree), buf);
    Ok(0)
}

/// A module with the given polygon, when one is cheap to build.
fn bound_fixture(nu: &NewtonPolygon, p: u64, n: u32) -> Option<ptorsion::Result<u128>> {
    let segs = nu.segments();
    match (segs, nu.polarized()) {
        ([s], false) if s.m == 1 => {
            let (c, d) = (s.c as usize, s.d as usize);
            Some(stable_endomorphism_units(
                &|k| minimal_module(p, c, d, k),
                n,
            ))
        }
        ([a, b], true) if n == 1 && a.m == 1 && b.m == 1 => {
            let lo = if a.d < a.c { a } else { b };
            let (c, d) = (lo.c as usize, lo.d as usize);
            if (c, d) == (1, 0) {
                Some(stable_automorphism_order(&|k| ordinary_module(p, 1, k), 1))
            } else {
                Some(stable_automorphism_order(
                    &|k| polarized_double(p, c, d, k),
                    1,
                ))
            }
        }
        _ => None,
    }
}

fn cmd_bound(a: &BoundArgs) -> Result<u8, Failure> {
    let segments = NewtonPolygon::parse_segments(&a.newton)?;
    let nu = if a.unpolarized {
        NewtonPolygon::new(segments, false)?
    } else {
        NewtonPolygon::auto(segments)?
    };
    let b = automorphism_bound(&nu, a.n, a.p)?;
    println!("{b}");
    if let Some(check) = bound_fixture(&nu, a.p, a.n) {
        match check {
            Ok(units) if units <= b => println!("verified {units} <= {b}"),
            Ok(units) => {
                return Err(Failure::Internal(format!(
                    "fixture unit count {units} exceeds the bound {b}"
                )))
            }
            Err(e) => println!("fixture check skipped: {e}"),
        }
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let started = Instant::now();
    let mut out = Outputs::default();
    let code = match &cli.command {
        Command::Minimal(a) => cmd_minimal(a, &mut out)?,
        Command::Twists(a) => cmd_twists(a, &mut out)?,
        Command::Survey(a) => cmd_survey(a, cli, &mut out)?,
        Command::H11(a) => cmd_h11(a, &mut out)?,
        Command::Bound(a) => cmd_bound(a)?,
    };
    out.write(&cli.out, cli, started)?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(kind, message)) => {
            let body: BTreeMap<&str, &str> =
                [("error", kind.as_str()), ("message", message.as_str())].into();
            eprintln!(
                "{}",
                serde_json::to_string(&body).unwrap_or(message.clone())
            );
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Internal(message)) => {
            let body: BTreeMap<&str, &str> =
                [("error", "internal"), ("message", message.as_str())].into();
            eprintln!(
                "{}",
                serde_json::to_string(&body).unwrap_or(message.clone())
            );
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
