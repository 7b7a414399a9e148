//! Command-line front end. All operations are file-in/file-out (matrices are
//! never passed inline); stochastic subcommands take a seed from `--seed` or
//! the `GAUSSCANON_SEED` environment variable and are fully reproducible.
//!
//! Exit codes: 0 on success, 1 on domain errors (with a machine-readable
//! `{"error": ...}` payload on stderr), 2 on usage errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::generation::{distributed_tms, tms_cm};
use crate::glocc::{
    apply_single_mode, det_signs_after, prepare_symmetric_from_distributed, PureOneModeChannel,
};
use crate::io::{cov_to_json, read_cov, write_cov, MatrixJson};
use crate::phase_space::DEFAULT_TOL;
use crate::sampling;
use crate::selftest;
use crate::standard_form::{glu_equivalent, standard_form, BlockTag, DEFAULT_DEG_TOL};
use crate::three_mode::{
    block_det, build_pure_cm, classify, LocalPurities, SpecialCase, PAIRS,
};

/// Seed and tolerance configuration shared by all subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
}

impl RunConfig {
    pub fn tol(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "gausscanon",
    version,
    about = "Canonical forms and local Gaussian channels for Gaussian states"
)]
struct Cli {
    /// Seed for stochastic subcommands (scan, selftest).
    #[arg(long, global = true, env = "GAUSSCANON_SEED", default_value_t = 0xC0FFEE)]
    seed: u64,

    /// Tolerance override `name=value` (names: physical, pure, equiv, deg).
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    tolerances: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a covariance matrix file for physicality and purity.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Canonicalize a state under Gaussian local unitaries.
    StandardForm {
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the canonical matrix here; without it the matrix goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide Gaussian local-unitary equivalence of two states.
    GluEquiv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Build the canonical pure three-mode state for a purity triple.
    MakeThreeMode {
        /// Comma-separated purities, e.g. `3,2,2`.
        #[arg(long)]
        purities: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a purity triple and report its block determinants.
    Classify {
        #[arg(long)]
        purities: String,
    },
    /// Generate reference states.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Apply and analyze pure local Gaussian channels.
    #[command(subcommand)]
    Glocc(GloccCommand),
    /// Run the seeded invariant suites and print a pass/fail table.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Two-mode squeezed vacuum.
    Tms {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distributed two-mode squeezed state (one arm split on a beam splitter).
    Dtms {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ChannelArgs {
    /// Two-mode squeezing of the channel's CJ state.
    #[arg(long)]
    r: f64,
    /// Local squeezing (> 0).
    #[arg(long)]
    x: f64,
    /// Rotation angle.
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    /// Mode the channel acts on (1-based).
    #[arg(long)]
    mode: usize,
}

#[derive(Subcommand, Debug)]
enum GloccCommand {
    /// Apply a pure single-mode channel to a state file.
    Apply {
        #[arg(long)]
        state: PathBuf,
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form determinant indicators after a channel on a pure state.
    Signs {
        #[arg(long)]
        purities: String,
        #[command(flatten)]
        channel: ChannelArgs,
    },
    /// Parameters that prepare a symmetric state from a distributed one.
    PrepareSymmetric {
        #[arg(long)]
        target: f64,
    },
    /// Monte Carlo sweep over purities and channels, written as CSV.
    Scan {
        /// Number of random trials.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Upper bound for sampled purities.
        #[arg(long, default_value_t = 6.0)]
        lambda_max: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parse and run; returns the process exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version as "errors" with exit code 0
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let config = match parse_tolerances(&cli.tolerances) {
        Ok(tolerances) => RunConfig {
            seed: cli.seed,
            tolerances,
        },
        Err(e) => {
            eprintln!("{}", json!({ "error": e.to_string() }));
            return 2;
        }
    };
    match run(cli.command, &config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", json!({ "error": e.to_string() }));
            1
        }
    }
}

fn parse_tolerances(args: &[String]) -> Result<BTreeMap<String, f64>> {
    let mut map = BTreeMap::new();
    for a in args {
        let (name, value) = a.split_once('=').ok_or_else(|| {
            Error::Domain(format!("tolerance override `{a}` is not NAME=VALUE"))
        })?;
        let v: f64 = value
            .parse()
            .map_err(|_| Error::Domain(format!("bad tolerance value in `{a}`")))?;
        map.insert(name.to_string(), v);
    }
    Ok(map)
}

fn parse_purities(text: &str) -> Result<LocalPurities> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Domain(format!(
            "expected three comma-separated purities, got `{text}`"
        )));
    }
    let mut l = [0.0; 3];
    for (i, p) in parts.iter().enumerate() {
        l[i] = p
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("bad purity `{p}`")))?;
    }
    LocalPurities::new(l[0], l[1], l[2])
}

fn emit_matrix(json: &MatrixJson, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, serde_json::to_string_pretty(json)?)?,
        None => println!("{}", serde_json::to_string_pretty(json)?),
    }
    Ok(())
}

fn run(command: Command, config: &RunConfig) -> Result<i32> {
    match command {
        Command::Validate { input } => {
            let gamma = read_cov(&input)?;
            let tol = config.tol("physical", DEFAULT_TOL);
            let physical = gamma.is_physical(tol);
            let pure = physical && gamma.is_pure(config.tol("pure", DEFAULT_TOL))?;
            println!("{}", json!({ "physical": physical, "pure": pure }));
            Ok(0)
        }
        Command::StandardForm { input, out } => {
            let gamma = read_cov(&input)?;
            let sf = standard_form(&gamma, config.tol("deg", DEFAULT_DEG_TOL))?;
            let tags: BTreeMap<String, String> = sf
                .tags
                .iter()
                .map(|(&(j, k), tag)| ((format!("{}{}", j + 1, k + 1)), tag_name(*tag).into()))
                .collect();
            let mut payload = json!({
                "lambdas": sf.lambdas,
                "angles": sf.angles,
                "tags": tags,
                "ambiguous_blocks": sf.ambiguous_blocks,
            });
            match &out {
                Some(path) => write_cov(path, &sf.gamma_std)?,
                None => {
                    payload["matrix"] = serde_json::to_value(cov_to_json(&sf.gamma_std))?;
                }
            }
            println!("{}", serde_json::to_string_pretty(&payload)?);
            Ok(0)
        }
        Command::GluEquiv { a, b } => {
            let ga = read_cov(&a)?;
            let gb = read_cov(&b)?;
            let eq = glu_equivalent(&ga, &gb, config.tol("equiv", 1e-6))?;
            println!("{}", json!({ "equivalent": eq }));
            Ok(0)
        }
        Command::MakeThreeMode { purities, out } => {
            let p = parse_purities(&purities)?;
            let cm = build_pure_cm(&p);
            emit_matrix(&cov_to_json(&cm.gamma), out.as_ref())?;
            Ok(0)
        }
        Command::Classify { purities } => {
            let p = parse_purities(&purities)?;
            let dets: BTreeMap<String, f64> = PAIRS
                .iter()
                .map(|&(i, j)| (format!("{}{}", i + 1, j + 1), block_det(&p, i, j)))
                .collect();
            println!(
                "{}",
                json!({ "class": class_name(classify(&p)), "block_dets": dets })
            );
            Ok(0)
        }
        Command::Gen(gen) => {
            match gen {
                GenCommand::Tms { r, out } => {
                    let g = tms_cm(r)?;
                    emit_matrix(&cov_to_json(&g), out.as_ref())?;
                }
                GenCommand::Dtms { s, theta, out } => {
                    let g = distributed_tms(s, theta)?;
                    emit_matrix(&cov_to_json(&g.gamma), out.as_ref())?;
                }
            }
            Ok(0)
        }
        Command::Glocc(glocc) => run_glocc(glocc, config),
        Command::Selftest => {
            let results = selftest::run_all(config.seed);
            let mut all_ok = true;
            println!("{:<55} {:>6}  detail", "check", "result");
            for r in &results {
                all_ok &= r.passed;
                println!(
                    "{:<55} {:>6}  {}",
                    r.name,
                    if r.passed { "pass" } else { "FAIL" },
                    r.detail
                );
            }
            Ok(if all_ok { 0 } else { 1 })
        }
    }
}

fn run_glocc(command: GloccCommand, config: &RunConfig) -> Result<i32> {
    match command {
        GloccCommand::Apply {
            state,
            channel,
            out,
        } => {
            let gamma = read_cov(&state)?;
            let mode = mode_index(channel.mode, gamma.n_modes())?;
            let ch = PureOneModeChannel::params(channel.r, channel.x, channel.phi)?;
            let output = apply_single_mode(&gamma, &ch, mode)?;
            emit_matrix(&cov_to_json(&output), out.as_ref())?;
            Ok(0)
        }
        GloccCommand::Signs { purities, channel } => {
            let p = parse_purities(&purities)?;
            let mode = mode_index(channel.mode, 3)?;
            let signs = det_signs_after(&p, channel.r, channel.x, channel.phi, mode)?;
            println!(
                "{}",
                json!({ "c1": signs.c[0], "c2": signs.c[1], "c3": signs.c[2], "sum": signs.sum() })
            );
            Ok(0)
        }
        GloccCommand::PrepareSymmetric { target } => {
            let (s, r, x) = prepare_symmetric_from_distributed(target)?;
            let g = distributed_tms(s, std::f64::consts::FRAC_PI_4)?.gamma;
            let ch = PureOneModeChannel::params(r, x, 0.0)?;
            let out = apply_single_mode(&g, &ch, 0)?;
            let achieved: Vec<f64> = (0..3)
                .map(|k| out.block(k, k).determinant().sqrt())
                .collect();
            println!(
                "{}",
                json!({ "s": s, "r": r, "x": x, "achieved": achieved })
            );
            Ok(0)
        }
        GloccCommand::Scan {
            trials,
            lambda_max,
            out,
        } => {
            scan_csv(trials, lambda_max, &out, config.seed)?;
            Ok(0)
        }
    }
}

fn mode_index(one_based: usize, n: usize) -> Result<usize> {
    if one_based == 0 || one_based > n {
        return Err(Error::Domain(format!(
            "mode must be between 1 and {n} (got {one_based})"
        )));
    }
    Ok(one_based - 1)
}

fn scan_csv(trials: usize, lambda_max: f64, out: &PathBuf, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut writer = csv::Writer::from_path(out).map_err(csv_err)?;
    writer
        .write_record([
            "lambda1",
            "lambda2",
            "lambda3",
            "r",
            "x",
            "phi",
            "mode",
            "C1",
            "C2",
            "C3",
            "purity_residual",
        ])
        .map_err(csv_err)?;
    for _ in 0..trials {
        let p = sampling::random_purities(&mut rng, lambda_max);
        let mode = rng.gen_range(0..3);
        let r = rng.gen_range(1.0_f64..10.0).acosh();
        let x = 10.0_f64.powf(rng.gen_range(-1.0..1.0));
        let phi = rng.gen_range(0.0..std::f64::consts::PI);
        let signs = det_signs_after(&p, r, x, phi, mode)?;
        let ch = PureOneModeChannel::params(r, x, phi)?;
        let output = apply_single_mode(&build_pure_cm(&p).gamma, &ch, mode)?;
        let record = [
            p.get(0).to_string(),
            p.get(1).to_string(),
            p.get(2).to_string(),
            r.to_string(),
            x.to_string(),
            phi.to_string(),
            (mode + 1).to_string(),
            signs.c[0].to_string(),
            signs.c[1].to_string(),
            signs.c[2].to_string(),
            output.purity_residual().to_string(),
        ];
        writer.write_record(&record).map_err(csv_err)?;
    }
    writer.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Domain(format!("csv error: {e}"))
}

fn tag_name(tag: BlockTag) -> &'static str {
    match tag {
        BlockTag::Zero => "zero",
        BlockTag::DegenerateRotation => "degenerate-rotation",
        BlockTag::DegenerateReflection => "degenerate-reflection",
        BlockTag::Generic => "generic",
    }
}

fn class_name(case: SpecialCase) -> String {
    match case {
        SpecialCase::GenericAllNegative => "generic-all-negative".into(),
        SpecialCase::SingularBlock(i, j) => format!("singular-block({},{})", i + 1, j + 1),
        SpecialCase::ProportionalIdentity(i, j) => {
            format!("proportional-identity({},{})", i + 1, j + 1)
        }
        SpecialCase::Symmetric => "symmetric".into(),
        SpecialCase::Product(i) => format!("product({})", i + 1),
    }
}
