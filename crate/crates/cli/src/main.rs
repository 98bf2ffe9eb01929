use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ellgal::locus::{component_census, disjoint_count, disjoint_group_inventory};
use ellgal::modarith::factorize;
use ellgal::render::{render_census, OutputFormat};
use ellgal::stable_count::{enumerate_stable_subgroups_with_bound, psi, psi_prime_power, DEFAULT_CONSTRUCTIVE_BOUND};
use ellgal::torsion::{Ell, DEFAULT_ORACLE_BOUND};
use ellgal::verify::{self, VerifyConfig};
use ellgal::JClass;

#[derive(Debug, Parser)]
#[command(name = "ellgal", version, about = "Galois subspace census for elliptic curves in P^(n-1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Components of the Galois subspace locus by dimension
    Census {
        #[command(flatten)]
        degree: Degree,
        #[arg(long, default_value = "generic")]
        j: JClass,
        #[arg(long, default_value = "table")]
        format: OutputFormat,
    },
    /// Number of stable order-m subgroups of E[m]
    Psi {
        #[arg(long, value_parser = parse_ell)]
        ell: Ell,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value = "generic")]
        j: JClass,
        /// Print the per-prime-power factors
        #[arg(long)]
        explain: bool,
    },
    /// Stable subgroups from the constructive enumeration
    Subgroups {
        #[arg(long, value_parser = parse_ell)]
        ell: Ell,
        #[arg(long)]
        m: u64,
        /// Print canonical generators of each subgroup instead of the count
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = DEFAULT_CONSTRUCTIVE_BOUND)]
        bound: u64,
    },
    /// Disjoint Galois subspaces and their group inventory
    Disjoint {
        #[command(flatten)]
        degree: Degree,
        #[arg(long, default_value = "generic")]
        j: JClass,
    },
    /// Cross-check every closed form against its independent route
    Verify {
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        max_m: u64,
        #[arg(long, default_value_t = DEFAULT_CONSTRUCTIVE_BOUND)]
        constructive_max: u64,
        /// Include the finite-field witness curves
        #[arg(long)]
        with_curves: bool,
        /// CSV of `ell,m,value` lines replacing closed-form psi values
        #[arg(long, hide = true)]
        psi_override: Option<PathBuf>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Degree {
    /// Degree of the embedding divisor (n >= 3)
    #[arg(long = "n")]
    degree: Option<u64>,
    /// Ambient projective dimension N = n - 1 (N >= 2)
    #[arg(long = "N")]
    ambient: Option<u64>,
}

impl Degree {
    fn n(&self) -> u64 {
        match (self.degree, self.ambient) {
            (Some(n), _) => n,
            (None, Some(big_n)) => big_n + 1,
            (None, None) => unreachable!("clap enforces one of --n or --N"),
        }
    }
}

fn parse_ell(s: &str) -> Result<Ell, String> {
    let v: u64 = s.parse().map_err(|e| format!("{e}"))?;
    Ell::try_from(v).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<ellgal::Error> for Failure {
    fn from(e: ellgal::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_overrides(path: &PathBuf) -> Result<BTreeMap<(Ell, u64), u64>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Failure::Usage(format!("{}:{}: expected ell,m,value", path.display(), lineno + 1));
        let fields: Vec<u64> = line.split(',').map(|f| f.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
        let [ell, m, value] = fields[..] else { return Err(bad()) };
        out.insert((Ell::try_from(ell)?, m), value);
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<String, Failure> {
    let mut out = String::new();
    match cli.command {
        Command::Census { degree, j, format } => {
            let report = component_census(j, degree.n())?;
            out = render_census(&report, format);
        }
        Command::Psi { ell, m, j, explain } => {
            let value = psi(ell, j, m)?;
            if !explain {
                let _ = writeln!(out, "{value}");
            } else if !j.admits(ell) {
                let _ = writeln!(out, "psi_{ell}({m}) for j={j} = 0");
                let _ = writeln!(out, "  j={j} has no automorphism of order {ell}");
            } else {
                let _ = writeln!(out, "psi_{ell}({m}) for j={j} = {value}");
                for &(p, a) in factorize(m)?.pairs() {
                    let _ = writeln!(out, "  {p}^{a}: {}", psi_prime_power(ell, p, a)?);
                }
            }
        }
        Command::Subgroups { ell, m, list, bound } => {
            let subs = enumerate_stable_subgroups_with_bound(ell, m, bound)?;
            if list {
                for s in &subs {
                    let [(a, b), (c, d)] = s.canonical_generators();
                    let _ = writeln!(out, "({a},{b}) ({c},{d})");
                }
            } else {
                let _ = writeln!(out, "{}", subs.len());
            }
        }
        Command::Disjoint { degree, j } => {
            let n = degree.n();
            let total = disjoint_count(j, n)?;
            let _ = writeln!(out, "disjoint Galois subspaces: {total}");
            let rows = disjoint_group_inventory(j, n)?;
            if !rows.is_empty() {
                let _ = writeln!(out, "{:<4} {:<6} {:<6} {:<10} {}", "ell", "|H|", "psi", "groups/H", "subtotal");
                for r in rows {
                    let _ = writeln!(out, "{:<4} {:<6} {:<6} {:<10} {}", r.ell, r.h_order, r.psi, r.groups_per_h, r.total());
                }
            }
        }
        Command::Verify { max_m, constructive_max, with_curves, psi_override, seed } => {
            if max_m == 0 || constructive_max == 0 {
                return Err(Failure::Usage("bounds must be at least 1".into()));
            }
            let psi_overrides = match &psi_override {
                Some(path) => read_overrides(path)?,
                None => BTreeMap::new(),
            };
            let report = verify::run(&VerifyConfig { max_m, constructive_max, with_curves, psi_overrides, seed });
            for c in &report.checks {
                let _ = writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            if let Some(first) = report.first_failure() {
                print!("{out}");
                return Err(Failure::Verification(format!("first failure: {}: {}", first.name, first.detail)));
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
