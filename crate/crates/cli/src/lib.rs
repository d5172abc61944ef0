//! `speclab`: batch experiment runner over the `spectral_lab` modules.
//!
//! Each subcommand is an [`Experiment`] registered by name. A run resolves its
//! configuration (defaults, then `--config` file, then explicit flags),
//! executes inside a rayon pool sized by `THREADS`, writes the artifact and a
//! [`RunManifest`] next to it.

pub mod artifact;
pub mod config;
pub mod experiments;
pub mod registry;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Arg, ArgAction, ArgMatches, Command};
use serde::Serialize;

use artifact::sha256_hex;
use config::{config_load, ExperimentConfig, COMMON_KEYS};
use registry::{Check, ExpError, Experiment, Registry};

pub use experiments::standard_registry;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArtifactRecord {
    pub path: Option<PathBuf>,
    pub bytes: usize,
    pub sha256: String,
}

/// Emitted for every run, including selftests.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub config: ExperimentConfig,
    pub library_version: &'static str,
    pub cli_version: &'static str,
    pub selftest: bool,
    pub threads: usize,
    pub wall_time_seconds: f64,
    pub artifacts: Vec<ArtifactRecord>,
    pub checks: Vec<Check>,
    pub exit_code: i32,
}

fn command(registry: &Registry) -> Command {
    let mut root = Command::new("speclab")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Experiments on matrix Brownian motions, Weyl-chamber kernels, MacDonald functions, xi and passage laws")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for exp in registry.iter() {
        let mut sub = Command::new(exp.name()).about(exp.about());
        let mut index = 1;
        for p in exp.params() {
            let help = format!("{} [default: {}]", p.help, p.default);
            let arg = if p.positional {
                let a = Arg::new(p.key).index(index).help(help);
                index += 1;
                a
            } else {
                Arg::new(p.key).long(p.key).value_name("VALUE").help(help)
            };
            sub = sub.arg(arg);
        }
        sub = sub
            .arg(Arg::new("seed").long("seed").value_name("SEED").help("64-bit seed [default: 20240601]"))
            .arg(Arg::new("out").long("out").value_name("PATH").help("artifact path (stdout when absent)"))
            .arg(Arg::new("format").long("format").value_name("FORMAT").help("csv or json"))
            .arg(Arg::new("config").long("config").value_name("PATH").help("file of key=value lines"))
            .arg(
                Arg::new("selftest")
                    .long("selftest")
                    .action(ArgAction::SetTrue)
                    .help("run the module's invariant suite instead of the experiment"),
            );
        root = root.subcommand(sub);
    }
    root
}

/// Defaults, then the config file, then explicit flags.
pub fn resolve_config(exp: &dyn Experiment, m: &ArgMatches) -> Result<ExperimentConfig, ExpError> {
    let mut cfg = exp.defaults();
    let keys: Vec<&str> = exp.params().iter().map(|p| p.key).chain(COMMON_KEYS).collect();
    if let Some(path) = m.get_one::<String>("config") {
        let file = config_load(Path::new(path), &keys)?;
        for (key, (_, value)) in file.entries {
            cfg.set(&key, value)?;
        }
    }
    for key in keys {
        if let Some(v) = m.get_one::<String>(key) {
            cfg.set(key, v.clone())?;
        }
    }
    Ok(cfg)
}

/// Worker count from `THREADS`, defaulting to the available parallelism.
fn thread_count() -> Result<usize, String> {
    match std::env::var("THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(format!("THREADS must be a positive integer, got `{v}`")),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn write_manifest(manifest: &RunManifest, out: Option<&Path>) -> Result<(), String> {
    let mut bytes = serde_json::to_vec_pretty(manifest).map_err(|e| e.to_string())?;
    bytes.push(b'\n');
    match out {
        Some(p) => std::fs::write(manifest_path(p), bytes).map_err(|e| e.to_string()),
        None => std::io::stderr().write_all(&bytes).map_err(|e| e.to_string()),
    }
}

/// Parses `argv` (program name first), runs the experiment and returns the
/// process exit code: 0 on success, 2 if a check failed, 1 on usage or
/// library errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let registry = standard_registry();
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let matches = match command(&registry).try_get_matches_from(&argv) {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return EXIT_OK;
            }
            // Usage errors inside a subcommand come with its full help.
            let mut cmd = command(&registry);
            let sub = argv.iter().skip(1).find_map(|a| a.to_str().and_then(|a| registry.get(a)));
            if let Some(help) = sub.and_then(|s| cmd.find_subcommand_mut(s.name())).map(|c| c.render_help()) {
                eprintln!("\n{help}");
            }
            return EXIT_USAGE;
        }
    };
    let (name, sub) = matches.subcommand().expect("subcommand is required");
    let exp = registry.get(name).expect("clap only accepts registered subcommands");
    match execute(exp, sub) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(exp: &dyn Experiment, m: &ArgMatches) -> Result<i32, ExpError> {
    let cfg = resolve_config(exp, m)?;
    let selftest = m.get_flag("selftest");
    let threads = thread_count().map_err(ExpError::Usage)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| ExpError::Usage(e.to_string()))?;
    let start = Instant::now();

    let (checks, artifacts) = if selftest {
        (pool.install(|| exp.selftest())?, Vec::new())
    } else {
        let outcome = pool.install(|| exp.run(&cfg))?;
        let bytes = outcome.artifact.render(cfg.format).map_err(ExpError::Usage)?;
        match &cfg.out {
            Some(p) => std::fs::write(p, &bytes)
                .map_err(|e| ExpError::Usage(format!("cannot write {}: {e}", p.display())))?,
            None => std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| ExpError::Usage(e.to_string()))?,
        }
        for line in &outcome.summary {
            eprintln!("{line}");
        }
        let record = ArtifactRecord {
            path: cfg.out.clone(),
            bytes: bytes.len(),
            sha256: sha256_hex(&bytes),
        };
        (outcome.checks, vec![record])
    };

    for c in &checks {
        eprintln!("{c}");
    }
    let exit_code = if checks.iter().all(|c| c.passed) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    let manifest = RunManifest {
        config: cfg.clone(),
        library_version: spectral_lab::VERSION,
        cli_version: env!("CARGO_PKG_VERSION"),
        selftest,
        threads,
        wall_time_seconds: start.elapsed().as_secs_f64(),
        artifacts,
        checks,
        exit_code,
    };
    write_manifest(&manifest, cfg.out.as_deref()).map_err(ExpError::Usage)?;
    Ok(exit_code)
}
