use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

mod commands;
mod input;
mod manifest;

use manifest::RunManifest;

#[derive(Parser, Debug)]
#[command(name = "orbicalc", version, about = "Exact invariants of finite groups and their classifying stacks")]
struct Cli {
    #[command(flatten)]
    io: IoOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct IoOpts {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write a run manifest (input digests, parameters, output checksum).
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Order, conjugacy classes and subgroup classes of a group.
    Group {
        /// Group file, or the name of a corpus group.
        group: String,
    },
    /// Real irreducible representations and the character table.
    Irreps {
        group: String,
        /// Print the character table as plain text instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Conjugacy classes of homomorphisms G -> H.
    Homs {
        g: String,
        h: String,
        /// Only injective classes, with the quotient cross-check.
        #[arg(long)]
        injective: bool,
    },
    /// Real irreps, stable automorphism contributors and framings of BG.
    Bundles { group: String },
    /// The group of stable maps BG -> BH.
    StableMaps {
        g: String,
        h: String,
        #[arg(long, value_parser = ["rep", "orb"])]
        variant: String,
        /// Also recount the generators by an independent Burnside count.
        #[arg(long)]
        cross_check: bool,
    },
    /// Cells and homology of the truncated nerve of finite groups and injections.
    Rstar {
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        max_dim: usize,
        #[arg(long, conflicts_with = "homology")]
        census: bool,
        #[arg(long)]
        homology: bool,
        /// Which arrows form chains.
        #[arg(long, value_parser = ["proper", "all"], default_value = "proper")]
        mode: String,
    },
    /// Hom-set of a finite category localized at a right multiplicative system.
    Localize {
        category: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Also brute-force the universal property against small categories.
        #[arg(long)]
        universal: bool,
    },
    /// Fixed-point detector for the point class of a representation.
    Detect {
        group: String,
        /// Real irrep index, or a matrix file.
        #[arg(long)]
        rep: String,
    },
    /// List or verify the bundled corpus.
    Corpus {
        /// Load every group and check its order against the index.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        max_order: Option<usize>,
        /// Worker threads for --verify.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let record = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            eprintln!("{}", serde_json::to_string_pretty(&record).expect("error record"));
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> orbicalc_core::Result<()> {
    let mut manifest = RunManifest::new(&cli.command);
    let output = commands::dispatch(&cli.command, &mut manifest)?;
    let bytes = match output {
        commands::Output::Json(v) => {
            let mut s = serde_json::to_string_pretty(&v).expect("json output");
            s.push('\n');
            s.into_bytes()
        }
        commands::Output::Text(s) => s.into_bytes(),
    };
    match &cli.io.out {
        Some(path) => fs::write(path, &bytes).map_err(|e| io_error(path, e))?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes).map_err(|e| orbicalc_core::Error::InvalidInput(e.to_string()))?;
        }
    }
    if let Some(path) = &cli.io.manifest {
        manifest.finish(&bytes);
        let mut s = serde_json::to_string_pretty(&manifest).expect("manifest");
        s.push('\n');
        fs::write(path, s).map_err(|e| io_error(path, e))?;
    }
    Ok(())
}

fn io_error(path: &std::path::Path, e: std::io::Error) -> orbicalc_core::Error {
    orbicalc_core::Error::InvalidInput(format!("{}: {e}", path.display()))
}
