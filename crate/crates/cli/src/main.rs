use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use equimirror::{parse_config, run, selftest, CliError, Model, RunOptions, EXIT_IDENTITY};

#[derive(Parser)]
#[command(name = "equimirror", version, about = "Equivariant Ehrhart theory and stringy Hodge numbers of Calabi-Yau hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for per-class work (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Also write the JSON report here
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Maximum group order
    #[arg(long, global = true)]
    cap_group: Option<usize>,
}

#[derive(clap::Args)]
struct ModelArgs {
    /// Model configuration (JSON)
    #[arg(long)]
    config: PathBuf,
    /// Only compute the given conjugacy class
    #[arg(long)]
    class: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Face lattice, orbits and stabilizers
    Faces(ModelArgs),
    /// Equivariant Ehrhart numerator of the cone
    Phi(ModelArgs),
    /// H and G polynomials of the cone and its dual
    Hg(ModelArgs),
    /// S-tilde of the cone and its dual
    Stilde(ModelArgs),
    /// Hodge-Deligne polynomial of the hypersurface in the torus
    Ehodge(ModelArgs),
    /// Stringy E-functions of X and its mirror
    Stringy(ModelArgs),
    /// Check the equivariant mirror identity
    MirrorCheck(ModelArgs),
    /// Hodge diamonds of X and its mirror
    Diamond {
        #[command(flatten)]
        model: ModelArgs,
        /// Show the diamonds of the quotients
        #[arg(long)]
        quotient: bool,
    },
    /// Euler characteristics per class and of the quotient
    Euler(ModelArgs),
    /// Verify the polynomial identities on every face and class
    Identities {
        #[command(flatten)]
        model: ModelArgs,
        /// Corrupt phi of this face (negative control)
        #[arg(long, hide = true)]
        fault_phi: Option<usize>,
    },
    /// Every command listed in the configuration's "commands"
    Run(ModelArgs),
    /// Rerun the golden cases
    Selftest,
}

fn write_json(path: &Option<PathBuf>, value: &serde_json::Value) -> Result<(), CliError> {
    if let Some(p) = path {
        let mut s = serde_json::to_string_pretty(value).expect("serializable");
        s.push('\n');
        std::fs::write(p, s).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<bool, CliError> {
    let (name, args, opts) = match cli.command {
        Command::Selftest => {
            let summary = selftest::selftest();
            print!("{}", summary.text());
            write_json(&cli.json, &summary.json())?;
            return Ok(summary.passed());
        }
        Command::Faces(a) => ("faces", a, RunOptions::default()),
        Command::Phi(a) => ("phi", a, RunOptions::default()),
        Command::Hg(a) => ("hg", a, RunOptions::default()),
        Command::Stilde(a) => ("stilde", a, RunOptions::default()),
        Command::Ehodge(a) => ("ehodge", a, RunOptions::default()),
        Command::Stringy(a) => ("stringy", a, RunOptions::default()),
        Command::MirrorCheck(a) => ("mirror-check", a, RunOptions::default()),
        Command::Euler(a) => ("euler", a, RunOptions::default()),
        Command::Run(a) => ("run", a, RunOptions::default()),
        Command::Diamond { model, quotient } => ("diamond", model, RunOptions { quotient, ..RunOptions::default() }),
        Command::Identities { model, fault_phi } => ("identities", model, RunOptions { fault_phi, ..RunOptions::default() }),
    };
    let opts = RunOptions { class: args.class, ..opts };
    let text = std::fs::read_to_string(&args.config).map_err(|e| CliError::Io(format!("{}: {e}", args.config.display())))?;
    let mut config = parse_config(&text)?;
    if let Some(cap) = cli.cap_group {
        config.caps.group = cap;
    }
    let commands: Vec<String> = if name == "run" { config.commands.clone() } else { vec![name.to_string()] };
    if commands.is_empty() {
        return Err(CliError::Config("the configuration lists no \"commands\"".into()));
    }
    let mut model = Model::new(config)?;
    let mut ok = true;
    let mut reports = Vec::new();
    for c in &commands {
        let out = run(&mut model, c, &opts)?;
        print!("{}", out.text);
        ok &= !out.failed;
        reports.push(out.json);
    }
    let json = if reports.len() == 1 { reports.pop().expect("one") } else { serde_json::json!({"schema": 1, "reports": reports}) };
    write_json(&cli.json, &json)?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(equimirror::EXIT_CONFIG as u8);
        }
    }
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_IDENTITY as u8),
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, CliError::Model(_)) {
                eprintln!("hint: rerun with --class N to isolate the class named above");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
