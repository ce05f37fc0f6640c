use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use g2syms_core::catalog::{build_family, certify, sweep, ASignature, CatalogEntry, Family, FamilySpec};
use g2syms_core::clifford::{spinor_audit, CliffordRep};
use g2syms_core::report::Report;
use g2syms_core::scalar::ExactScalar;

const USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "g2syms", version, about = "Exact construction and certification of signature (4,3) symmetric triples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Show the catalog families and the standard sweep.
    Catalog {
        #[arg(long)]
        list: bool,
    },
    /// Build one catalog triple and write it as JSON.
    Build {
        #[arg(long)]
        family: Family,
        /// Signature of the flat factor, `1,1` or `2,0`.
        #[arg(long = "a-sig")]
        a_sig: Option<ASignature>,
        /// Parameter of family 1, e.g. `1/2` or `1/2+3/4*sqrt2`.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<ExactScalar>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the certification pipeline on a triple file.
    Certify {
        file: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check the Clifford module and the spinor stabilizers.
    SpinorAudit {
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// Errors the caller can fix by changing the invocation or its input.
struct Usage(anyhow::Error);

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}

fn run(command: Command) -> Result<u8, Usage> {
    match command {
        Command::Catalog { list } => {
            if !list {
                return Err(Usage(anyhow::anyhow!("nothing to do, pass --list")));
            }
            list_catalog();
            Ok(0)
        }
        Command::Build { family, a_sig, t, out } => {
            let spec = default_spec(family, a_sig, t).map_err(Usage)?;
            let entry = build_family(&spec).map_err(|e| Usage(e.into()))?;
            let json = serde_json::to_string_pretty(&entry).expect("catalog entries serialize");
            fs::write(&out, json).with_context(|| format!("writing {}", out.display())).map_err(Usage)?;
            println!("{spec}: dim {} written to {}", entry.triple.alg.dim(), out.display());
            Ok(0)
        }
        Command::Certify { file, report } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display())).map_err(Usage)?;
            let entry: CatalogEntry =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", file.display())).map_err(Usage)?;
            finish(certify(&entry), report)
        }
        Command::SpinorAudit { report } => {
            let rep = CliffordRep::standard().map_err(|e| Usage(e.into()))?;
            let mut r = spinor_audit(&rep);
            r.absorb("pair stabilizer", rep.check_pair_stabilizer_structure());
            finish(r, report)
        }
    }
}

fn default_spec(family: Family, a_sig: Option<ASignature>, t: Option<ExactScalar>) -> anyhow::Result<FamilySpec> {
    let spec = match family {
        Family::F1 => FamilySpec::f1(a_sig.unwrap_or(ASignature::Lorentzian), t.unwrap_or_else(ExactScalar::zero)),
        Family::F2a => {
            if t.is_some() {
                bail!("family 2a takes no --t");
            }
            FamilySpec::f2a(a_sig.unwrap_or(ASignature::Lorentzian))
        }
        Family::F2b => {
            if a_sig.is_some() || t.is_some() {
                bail!("family 2b takes neither --a-sig nor --t");
            }
            FamilySpec::f2b()
        }
    };
    spec.validate()?;
    Ok(spec)
}

fn list_catalog() {
    println!("families:");
    println!("  1   g4,1 base, a of signature 1,1 or 2,0, parameter t");
    println!("  2a  R + heisenberg base, a of signature 1,1 or 2,0");
    println!("  2b  R + heisenberg base, a of signature 1,0");
    println!("sweep:");
    for spec in sweep() {
        match build_family(&spec) {
            Ok(e) => println!("  {spec}  dim {}  dim g+ {}", e.triple.alg.dim(), e.triple.plus().len()),
            Err(e) => println!("  {spec}  error: {e}"),
        }
    }
}

fn finish(r: Report, out: Option<PathBuf>) -> Result<u8, Usage> {
    print!("{r}");
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&r).expect("reports serialize");
        fs::write(&path, json).with_context(|| format!("writing {}", path.display())).map_err(Usage)?;
    }
    Ok(r.exit_code() as u8)
}
