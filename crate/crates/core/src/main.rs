use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use zariski_torsion::arrangement_combinatorics::fingerprint;
use zariski_torsion::cli::{self, catalog, Arrangement, CliError, Options, REPRODUCTIONS};
use zariski_torsion::torsion_invariants::{
    compute_na, distinguish, search_bound, splitting_number, tau_l_group, tau_order_o, theta_box, ArrangementSpec,
};

#[derive(Parser)]
#[command(name = "zariski", version, about = "Torsion-divisor invariants of maximal-flex arrangements")]
struct Args {
    /// Spec file, for commands taking one when no path is given.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include the constructions over quartic extensions.
    #[arg(long, global = true)]
    extended: bool,
    /// Largest total degree allowed for field towers.
    #[arg(long, global = true, default_value_t = zariski_torsion::exact_fields::DEFAULT_BUDGET)]
    tower_budget: usize,
    /// Seed for randomized property sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Points P with nP = O on a catalog curve.
    Torsion { curve: String, n: usize },
    /// n_a, orders and splitting numbers over the search box of a spec.
    /// Takes a spec file or a recipe name.
    Invariants {
        #[arg(value_name = "SPEC")]
        source: Option<String>,
    },
    /// Try to certify that two specs form a Zariski pair.
    /// Takes spec files or recipe names.
    Distinguish { left: String, right: String },
    /// Build a named construction and print its spec (and curves).
    Realize { recipe: String },
    /// Canonical fingerprint of a recipe or an arrangement file.
    Fingerprint { arrangement: String },
    /// Rerun one result (or `all`) and compare with the expected outcomes.
    Reproduce { name: String },
    /// Random abstract specs against the splitting and reduction identities.
    Sweep {
        #[arg(default_value_t = 500)]
        cases: usize,
    },
}

fn read_json(p: &Path) -> Result<Value, CliError> {
    Ok(serde_json::from_str(&fs::read_to_string(p)?)?)
}

/// A spec file, or a recipe name when no such file exists.
fn load_spec(src: &str, opts: &Options) -> Result<ArrangementSpec, CliError> {
    let path = Path::new(src);
    if !path.exists() && cli::RECIPES.contains(&src) {
        return Ok(cli::realize(src, opts)?.0);
    }
    Ok(ArrangementSpec::from_json(&read_json(path)?)?)
}

fn all_matching(s1: &ArrangementSpec, s2: &ArrangementSpec) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    let k = s1.k();
    (0..k)
        .permutations(k)
        .filter(|p| {
            s2.k() == k
                && (0..k).all(|j| s1.components[j].degree == s2.components[p[j]].degree && s1.components[j].m == s2.components[p[j]].m)
        })
        .collect()
}

fn run(args: &Args) -> Result<(String, bool), CliError> {
    let opts = Options { extended: args.extended, tower_budget: args.tower_budget };
    let mut out = String::new();
    let mut ok = true;
    match &args.cmd {
        Cmd::Torsion { curve, n } => {
            let entry = catalog::lookup(curve, opts.tower_budget)?;
            let e = entry.elliptic()?;
            out += &format!("{}: {}\n", entry.name, entry.note);
            for (p, map) in e.division_points(*n, e.origin())? {
                let order = e.map(&map).order(&p, *n as u64)?.unwrap_or(0);
                out += &format!("  order {order:>3}  {p:?}  (tower depth {})\n", p.tower().depth());
            }
        }
        Cmd::Invariants { source } => {
            let src = source.clone().or_else(|| args.spec.as_ref().map(|p| p.display().to_string()));
            let s = load_spec(&src.ok_or_else(|| CliError::Check("no spec file or recipe".into()))?, &opts)?;
            out += &format!("{}: k = {}, d0 = {}, lattice modulus {}\n", s.name, s.k(), s.d0, s.lattice_modulus());
            if s.classes().is_some() {
                let g = tau_l_group(&s)?;
                out += &format!("line-section group: {} (n = {}, point orders {:?})\n", g.group, g.n, g.orders);
            }
            out += "a\tn_a\tord\tsplit\n";
            for a in theta_box(s.k(), search_bound(&s).max(2)) {
                let (na, o, sp) = (compute_na(&s, &a)?, tau_order_o(&s, &a)?, splitting_number(&s, &a)?);
                out += &format!("{:?}\t{na}\t{o}\t{sp}\n", a.entries());
            }
        }
        Cmd::Distinguish { left, right } => {
            let (s1, s2) = (load_spec(left, &opts)?, load_spec(right, &opts)?);
            let adm = s1.admissible.clone().unwrap_or_else(|| all_matching(&s1, &s2));
            let cert = distinguish(&s1, &s2, &adm)?;
            ok = cert.is_distinguished();
            out += &cert.report();
        }
        Cmd::Realize { recipe } => {
            let (spec, arr) = cli::realize(recipe, &opts)?;
            let mut v = spec.to_json();
            if let Some(a) = arr {
                v["arrangement"] = a.to_json();
            }
            out += &serde_json::to_string_pretty(&v)?;
            out += "\n";
        }
        Cmd::Fingerprint { arrangement } => {
            let arr = if Path::new(arrangement).exists() {
                let v = read_json(Path::new(arrangement))?;
                Arrangement::from_json(v.get("arrangement").unwrap_or(&v))?
            } else {
                cli::realize(arrangement, &opts)?.1.ok_or_else(|| CliError::Check(format!("{arrangement} has no curves")))?
            };
            let f = fingerprint(&arr.cubic, &arr.curves)?;
            out += &format!("components: {}\nsingular points: {}\nconcurrent points: {}\nBezout: {}\n", f.components.len(), f.singular_point_count(), f.concurrent().count(), f.bezout_holds());
            out += &format!("canonical: {}\n", f.canonical());
        }
        Cmd::Reproduce { name } => {
            let names: Vec<&str> = if name == "all" { REPRODUCTIONS.to_vec() } else { vec![name.as_str()] };
            for n in names {
                let rep = cli::run_reproduction(n, &opts)?;
                ok &= rep.passed();
                out += &rep.render();
            }
        }
        Cmd::Sweep { cases } => {
            let n = cli::property_sweep(args.seed, *cases)?;
            out += &format!("{n} random specs passed (seed {})\n", args.seed);
        }
    }
    Ok((out, ok))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok((text, ok)) => {
            print!("{text}");
            if let Some(p) = &args.out {
                if let Err(e) = fs::write(p, &text) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
