use clap::Parser;
use dynquant_cli::{run, Command, RawConfig, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Dynamical twists, R-matrices and orbit star products over Levi
/// subalgebras of sl_n, checked exactly.
#[derive(Parser, Debug)]
#[command(name = "dynquant", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Job configuration (`key = value` lines).
    #[arg(long)]
    config: PathBuf,
    /// Directory for `<command>.json`.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Evaluate at sample points instead of symbolically.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long = "t-order")]
    t_order: Option<usize>,
    /// Seed for sample-point generation.
    #[arg(long)]
    seed: Option<u64>,
}

fn load(args: &Args) -> Result<RawConfig, String> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| format!("cannot read {}: {e}", args.config.display()))?;
    let mut raw = RawConfig::parse(&text)?;
    let atom = |x: String| Value::Atom(x);
    if let Some(n) = args.samples {
        raw.set("samples", atom(n.to_string()));
        raw.set("lambda", atom("samples".into()));
    }
    if let Some(d) = args.depth {
        raw.set("depth", atom(d.to_string()));
    }
    if let Some(t) = args.t_order {
        raw.set("t_order", atom(t.to_string()));
    }
    if let Some(s) = args.seed {
        raw.set("seed", atom(s.to_string()));
    }
    Ok(raw)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let base = args.config.parent().unwrap_or(Path::new(".")).to_path_buf();
    let outcome = load(&args).and_then(|raw| run(args.command, raw, &base));
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let path = args.out.join(format!("{}.json", args.command.name()));
    let text = serde_json::to_string_pretty(&outcome.json).expect("JSON values serialize") + "\n";
    if let Err(e) = std::fs::create_dir_all(&args.out).and_then(|_| std::fs::write(&path, text)) {
        eprintln!("error: cannot write {}: {e}", path.display());
        return ExitCode::from(2);
    }
    for line in &outcome.lines {
        println!("{line}");
    }
    println!("wrote {}", path.display());
    ExitCode::from(if outcome.passed { 0 } else { 1 })
}
