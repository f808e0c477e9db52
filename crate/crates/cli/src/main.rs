use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use krylovlab_cli::{list_presets, parse_config, preset_text, run, RunConfig, RunError, Threads};

#[derive(Parser)]
#[command(name = "krylovlab", version, about = "Krylov complexity and spectral chaos probes for spin chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a JSON configuration.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run a bundled preset.
    Preset {
        name: String,
        #[command(flatten)]
        overrides: Overrides,
        /// Print the resolved configuration instead of running it.
        #[arg(long)]
        print: bool,
    },
    /// List bundled presets.
    ListPresets {
        /// Also print each preset's description.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Check a configuration without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        ci: bool,
    },
}

#[derive(Args)]
struct Overrides {
    /// Worker threads; falls back to KRYLOVLAB_THREADS, then to the config.
    #[arg(long, env = "KRYLOVLAB_THREADS")]
    threads: Option<usize>,
    /// Master seed for disorder sampling.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Apply the config's reduced-size overrides (`meta.ci_overrides`).
    #[arg(long)]
    ci: bool,
}

impl Overrides {
    fn apply(&self, mut c: RunConfig) -> anyhow::Result<RunConfig> {
        if let Some(n) = self.threads {
            anyhow::ensure!(n > 0, "--threads must be positive");
            c.threads = Threads::Count(n);
        }
        if let Some(s) = self.seed {
            c.master_seed = s;
        }
        if let Some(dir) = &self.out {
            c.output_dir = dir.clone();
        }
        Ok(c)
    }
}

fn read_config(path: &PathBuf, ci: bool) -> anyhow::Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    Ok(parse_config(&text, ci)?)
}

fn execute(config: RunConfig) -> anyhow::Result<()> {
    let summary = run(&config)?;
    println!("{}", serde_json::to_string_pretty(&summary.metrics)?);
    eprintln!(
        "wrote {} to {} in {:.2} s",
        summary.artifacts.join(", "),
        config.output_dir.display(),
        summary.wall_time_s
    );
    Ok(())
}

fn dispatch(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Run { config, overrides } => {
            let c = overrides.apply(read_config(&config, overrides.ci)?)?;
            execute(c)
        }
        Command::Preset {
            name,
            overrides,
            print,
        } => {
            let text = preset_text(&name).with_context(|| {
                format!("unknown preset `{name}`; see `krylovlab list-presets`")
            })?;
            let c = overrides.apply(parse_config(text, overrides.ci)?)?;
            if print {
                println!("{}", serde_json::to_string_pretty(&c)?);
                return Ok(());
            }
            execute(c)
        }
        Command::ListPresets { verbose } => {
            for name in list_presets() {
                if verbose {
                    let c = parse_config(preset_text(name).unwrap_or_default(), false)?;
                    let desc = c.meta.map(|m| m.description).unwrap_or_default();
                    println!("{name}\t{desc}");
                } else {
                    println!("{name}");
                }
            }
            Ok(())
        }
        Command::Validate { config, ci } => {
            read_config(&config, ci)?;
            println!("ok");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let (code, record) = match err.downcast_ref::<RunError>() {
                Some(e) => (e.exit_code(), serde_json::to_value(e.record())),
                None => (
                    1,
                    Ok(serde_json::json!({
                        "kind": "other",
                        "exit_code": 1,
                        "message": format!("{err:#}"),
                    })),
                ),
            };
            match record {
                Ok(r) => eprintln!("{}", serde_json::json!({ "error": r })),
                Err(_) => eprintln!("error: {err:#}"),
            }
            ExitCode::from(code as u8)
        }
    }
}
