//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage and input errors, 2 when an
//! internal invariant fails (including panics inside the library).

use std::fs;
use std::io::{self, Write};
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arrangement::{braid, parse_arrangement, Arrangement};
use crate::building::{building_set_failure, full_building_set, minimal_building_set, BuildingSet};
use crate::exactla::{format_rational, parse_rational, Rational};
use crate::lattice::{compute_lattice, Flat, IntersectionLattice};
use crate::multiplier::{
    check_jump_in, default_degree, jump_candidates_in, lct, presentation, presentation_ideal, resolution_table,
    support_in, MultiplierIdealPresentation,
};
use crate::oracle::{first_difference, hilbert, parse_polynomial};

const FORMULA: &str = "J(I^lambda) = intersection over W in G of I_W^(floor(lambda*s(W)) - r(W) + 1), \
where G is a building set of the intersection lattice, r(W) = codim W and s(W) = sum of the \
multiplicities of the hyperplanes containing W (building-set formula for multiplier ideals of \
hyperplane arrangements; G = L'(A) recovers the classical formula for reduced arrangements)";

#[derive(Parser, Debug)]
#[command(
    name = "arrmi",
    version,
    about = "Multiplier ideals, log canonical thresholds and jumping numbers of central hyperplane arrangements",
    long_about = None
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SetChoice {
    /// G_min, the irreducible flats
    Min,
    /// L'(A), every proper flat
    Full,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write the braid arrangement x_i = x_j (0 <= i < j < n) as an arrangement file.
    Braid {
        n: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// List the flats of the intersection lattice: rank r(W), multiplicity s(W), closed hyperplane set.
    Lattice {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List a building set (irreducible flats by default); --verify checks the building-set condition for every flat.
    Building {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SetChoice::Min)]
        set: SetChoice,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Multiplier ideal presentation.
    #[command(long_about = FORMULA)]
    Mi {
        file: PathBuf,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        lambda: Rational,
        #[arg(long, value_enum, default_value_t = SetChoice::Min)]
        set: SetChoice,
        #[arg(long)]
        json: bool,
    },
    /// Log canonical threshold: min over irreducible flats W of r(W)/s(W).
    Lct {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Support of J(I^lambda): the irreducible flats W with lambda >= r(W)/s(W).
    Support {
        file: PathBuf,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        lambda: Rational,
        #[arg(long)]
        json: bool,
    },
    /// Candidate jumping numbers m/s(W) <= max with m >= r(W), W irreducible; --verify compares J at c and c - eps degreewise.
    Jumps {
        file: PathBuf,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        max: Rational,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Membership of a polynomial in J(I^lambda); variables are x0..x{n-1}.
    #[command(long_about = FORMULA)]
    Member {
        file: PathBuf,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        lambda: Rational,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, value_enum, default_value_t = SetChoice::Min)]
        set: SetChoice,
        #[arg(long)]
        json: bool,
    },
    /// Divisor data of the wonderful-model resolution: discrepancy r(W) - 1 and vanishing order s(W) per flat.
    Resolution {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SetChoice::Min)]
        set: SetChoice,
        #[arg(long)]
        json: bool,
    },
    /// Hilbert function of J(I^lambda) up to a degree bound.
    #[command(long_about = FORMULA)]
    Hilbert {
        file: PathBuf,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        lambda: Rational,
        #[arg(long, value_enum, default_value_t = SetChoice::Min)]
        set: SetChoice,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Compare the presentations over the irreducible flats and over all proper flats, degree by degree.
    #[command(name = "verify-theorem", long_about = FORMULA)]
    VerifyTheorem {
        file: PathBuf,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        lambda: Rational,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(file: &PathBuf) -> Result<Arrangement, Failure> {
    let text = fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    parse_arrangement(&text).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))
}

fn choose(lat: &IntersectionLattice, set: SetChoice) -> BuildingSet {
    match set {
        SetChoice::Min => minimal_building_set(lat),
        SetChoice::Full => full_building_set(lat),
    }
}

fn flat_json(w: &Flat) -> Value {
    json!({ "rank": w.rank(), "s": w.mult(), "closed_set": w.closed_set() })
}

fn flat_line(w: &Flat) -> String {
    format!("rank={} s={} closed={}", w.rank(), w.mult(), w.label())
}

fn presentation_json(p: &MultiplierIdealPresentation) -> Value {
    json!({
        "lambda": format_rational(p.lambda()),
        "building_set": p.building_set_kind().to_string(),
        "unit": p.is_unit(),
        "terms": p.terms().iter().map(|t| {
            let mut v = flat_json(&t.flat);
            v["exponent"] = json!(t.exponent);
            v
        }).collect::<Vec<_>>(),
    })
}

fn emit(out: &mut dyn Write, json: bool, value: Value, text: String) -> io::Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json serializes"))
    } else {
        write!(out, "{text}")
    }
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().map(|l| l + "\n").collect()
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Braid { n, output } => {
            let text = braid(n)?.to_json();
            match output {
                Some(path) => fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
                None => write!(out, "{text}")?,
            }
        }
        Command::Lattice { file, json } => {
            let lat = compute_lattice(&load(&file)?);
            emit(
                out,
                json,
                Value::Array(lat.flats().iter().map(flat_json).collect()),
                lines(lat.flats().iter().map(flat_line)),
            )?;
        }
        Command::Building { file, set, verify, json } => {
            let lat = compute_lattice(&load(&file)?);
            let g = choose(&lat, set);
            let failure = verify.then(|| building_set_failure(&lat, g.flats()));
            let mut value = json!({
                "kind": g.kind().to_string(),
                "flats": g.flats().iter().map(flat_json).collect::<Vec<_>>(),
            });
            let mut text = lines(g.flats().iter().map(flat_line));
            if let Some(result) = &failure {
                match result {
                    None => {
                        value["verified"] = json!(true);
                        text += "building set: PASS\n";
                    }
                    Some((c, why)) => {
                        value["verified"] = json!(false);
                        value["first_failure"] = json!({ "flat": flat_json(c), "reason": why.to_string() });
                        text += &format!("building set: FAIL at C = {}: {why}\n", c.label());
                    }
                }
            }
            emit(out, json, value, text)?;
            if let Some(Some((c, why))) = failure {
                // min and full are building sets for every arrangement
                return Err(Failure::Internal(format!("{} set fails at {}: {why}", g.kind(), c.label())));
            }
        }
        Command::Mi { file, lambda, set, json } => {
            let lat = compute_lattice(&load(&file)?);
            let p = presentation(&choose(&lat, set), &lambda)?;
            let text = if p.is_unit() {
                "(1)\n".to_string()
            } else {
                lines(p.terms().iter().map(|t| {
                    format!(
                        "closed={} rank={} s={} exponent={}",
                        t.flat.label(),
                        t.flat.rank(),
                        t.flat.mult(),
                        t.exponent
                    )
                }))
            };
            emit(out, json, presentation_json(&p), text)?;
        }
        Command::Lct { file, json } => {
            let lat = compute_lattice(&load(&file)?);
            let t = format_rational(&lct(&lat));
            emit(out, json, json!({ "lct": t }), format!("{t}\n"))?;
        }
        Command::Support { file, lambda, json } => {
            let lat = compute_lattice(&load(&file)?);
            let s = support_in(&minimal_building_set(&lat), &lambda)?;
            let text = if s.is_empty() { "(empty)\n".to_string() } else { lines(s.iter().map(flat_line)) };
            emit(out, json, Value::Array(s.iter().map(flat_json).collect()), text)?;
        }
        Command::Jumps { file, max, verify, degree, json } => {
            let lat = compute_lattice(&load(&file)?);
            let gmin = minimal_building_set(&lat);
            let candidates = jump_candidates_in(&gmin, &max)?;
            let mut rows = Vec::new();
            let mut text = String::new();
            for c in &candidates {
                let label = format_rational(c);
                if !verify {
                    text += &format!("{label}\n");
                    rows.push(json!({ "candidate": label }));
                    continue;
                }
                let d = match degree {
                    Some(d) => d,
                    None => default_degree(&[&presentation(&gmin, c)?]),
                };
                let check = check_jump_in(&lat, &gmin, c, d)?;
                match check.first_difference {
                    Some(k) => text += &format!("{label} verified (ideals differ in degree {k})\n"),
                    None => text += &format!("{label} unverified (no change detected up to degree {d})\n"),
                }
                rows.push(json!({
                    "candidate": label,
                    "verified": check.is_jump(),
                    "degree_bound": d,
                    "first_difference": check.first_difference,
                }));
            }
            emit(out, json, Value::Array(rows), text)?;
        }
        Command::Member { file, lambda, poly, set, json } => {
            let arr = load(&file)?;
            let f = parse_polynomial(&poly, arr.dim())?;
            let lat = compute_lattice(&arr);
            let p = presentation(&choose(&lat, set), &lambda)?;
            let answer = crate::multiplier::membership(&lat, &p, &f)?;
            emit(out, json, json!({ "member": answer }), format!("{answer}\n"))?;
        }
        Command::Resolution { file, set, json } => {
            let lat = compute_lattice(&load(&file)?);
            let table = resolution_table(&choose(&lat, set));
            let value = Value::Array(
                table
                    .rows
                    .iter()
                    .map(|r| {
                        let mut v = flat_json(&r.flat);
                        v["discrepancy"] = json!(r.discrepancy);
                        v["vanishing_order"] = json!(r.vanishing_order);
                        v
                    })
                    .collect(),
            );
            let text = lines(table.rows.iter().map(|r| {
                format!("closed={} discrepancy={} order={}", r.flat.label(), r.discrepancy, r.vanishing_order)
            }));
            emit(out, json, value, text)?;
        }
        Command::Hilbert { file, lambda, set, degree, json } => {
            let lat = compute_lattice(&load(&file)?);
            let p = presentation(&choose(&lat, set), &lambda)?;
            let d = degree.unwrap_or_else(|| default_degree(&[&p]));
            let h = hilbert(&presentation_ideal(&lat, &p, d)?);
            let shown: Vec<String> = h.iter().map(ToString::to_string).collect();
            emit(
                out,
                json,
                json!({ "lambda": format_rational(&lambda), "degree_bound": d, "hilbert": h }),
                format!("hilbert function up to degree {d}: {}\n", shown.join(" ")),
            )?;
        }
        Command::VerifyTheorem { file, lambda, degree, json } => {
            let lat = compute_lattice(&load(&file)?);
            let pmin = presentation(&minimal_building_set(&lat), &lambda)?;
            let pfull = presentation(&full_building_set(&lat), &lambda)?;
            let d = degree.unwrap_or_else(|| default_degree(&[&pmin, &pfull]));
            let a = presentation_ideal(&lat, &pmin, d)?;
            let b = presentation_ideal(&lat, &pfull, d)?;
            let diff = first_difference(&a, &b, d)?;
            let show = |h: Vec<usize>| h.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            let verdict = match diff {
                None => format!("EQUAL up to degree {d}"),
                Some(k) => format!("DIFFER at degree {k}"),
            };
            let text = format!(
                "minimal: {}\nfull:    {}\n{verdict}\n",
                show(hilbert(&a)),
                show(hilbert(&b))
            );
            let value = json!({
                "lambda": format_rational(&lambda),
                "degree_bound": d,
                "hilbert_minimal": hilbert(&a),
                "hilbert_full": hilbert(&b),
                "equal": diff.is_none(),
                "first_difference": diff,
            });
            emit(out, json, value, text)?;
            if let Some(k) = diff {
                return Err(Failure::Internal(format!("presentations differ in degree {k}")));
            }
        }
    }
    Ok(())
}

/// Runs one command with the given argument list (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let result = panic::catch_unwind(AssertUnwindSafe(|| execute(cli, out)));
    match result {
        Ok(Ok(())) => 0,
        Ok(Err(Failure::Usage(msg))) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Ok(Err(Failure::Internal(msg))) => {
            let _ = writeln!(err, "internal invariant violated: {msg}");
            2
        }
        Err(_) => {
            let _ = writeln!(err, "internal invariant violated (panic)");
            2
        }
    }
}

pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = run(std::env::args_os(), &mut out, &mut stderr.lock());
    let _ = out.flush();
    code
}
