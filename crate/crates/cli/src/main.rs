//! `macaulay`: inverse systems, admissible families and Gorenstein lifts from
//! the command line.
//!
//! Exit codes: 0 success, 2 unreadable input, 3 a mathematical precondition
//! failed, 4 a family is not admissible (or does not match a claimed ideal).

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use macaulay::admissible::{check_admissible, cone_family, lift_space, simplex};
use macaulay::duality::{ann_module, hilbert_function_of_ideal, module_basis, perp_basis};
use macaulay::gorenstein::{default_trunc, family_from_ideal, finite_lift, gorenstein_check, local_verify};
use macaulay::*;

#[derive(Parser)]
#[command(name = "macaulay", version, about = "Macaulay inverse systems and Gorenstein lifts")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct RingOpts {
    /// Ring declaration, e.g. "Q[x,y,z] dual [X,Y,Z] mode graded".
    /// Without it the ring is Q on the single-letter names used, alphabetically.
    #[arg(long)]
    ring: Option<String>,
    /// Overrides the mode of the ring.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct FamilyOpts {
    /// Family file.
    #[arg(long)]
    family: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Graded,
    Local,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cond2Arg {
    Annihilator,
    Intersection,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Contraction h∘F.
    Contract {
        #[command(flatten)]
        ring: RingOpts,
        #[arg(long)]
        h: String,
        #[arg(long = "F")]
        f: String,
    },
    /// Pairing <h, F>.
    Pair {
        #[command(flatten)]
        ring: RingOpts,
        #[arg(long)]
        h: String,
        #[arg(long = "F")]
        f: String,
    },
    /// Basis of the submodule generated by the given Γ-polynomials.
    Span {
        #[command(flatten)]
        ring: RingOpts,
        /// Comma separated generators.
        #[arg(long = "F")]
        f: String,
    },
    /// Annihilator of the given Γ-polynomials.
    Ann {
        #[command(flatten)]
        ring: RingOpts,
        /// Comma separated generators.
        #[arg(long)]
        poly: String,
        /// Largest generator degree to search.
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Inverse system of an ideal, up to a degree.
    Perp {
        #[command(flatten)]
        ring: RingOpts,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Hilbert function of R/I.
    Hilbert {
        #[command(flatten)]
        ring: RingOpts,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Checks conditions 1 and 2 on a family file.
    CheckAdmissible {
        #[command(flatten)]
        fam: FamilyOpts,
        #[arg(long, value_enum, default_value = "both")]
        cond2: Cond2Arg,
    },
    /// Solves for the admissible extensions of a family at a new index.
    Lift {
        #[command(flatten)]
        fam: FamilyOpts,
        /// Index, e.g. "5" or "2,3".
        #[arg(long)]
        target: String,
        /// Degree of the unknown (graded) or its upper bound (local).
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Family `Z^[L - 1]·H` of a polynomial free of the distinguished variables.
    Cone {
        #[command(flatten)]
        ring: RingOpts,
        #[arg(long)]
        h: String,
        /// Distinguished variables, e.g. "t, w".
        #[arg(long)]
        z: String,
        #[arg(long, default_value_t = 4)]
        t0: u32,
    },
    /// Ann(H_{(b+1)_d}) in degrees ≤ b, generating an ideal.
    FiniteLift {
        #[command(flatten)]
        fam: FamilyOpts,
        /// b; defaults to deg H_1 + 1.
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Admissible family of a Gorenstein ideal.
    FamilyFromIdeal {
        #[command(flatten)]
        ring: RingOpts,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        z: String,
        #[arg(long, default_value_t = 4)]
        t0: u32,
    },
    /// Dimension, regularity of z and socle of the Artinian reduction.
    GorensteinCheck {
        #[command(flatten)]
        ring: RingOpts,
        #[arg(long)]
        ideal: String,
        /// Linear forms, e.g. "t, w".
        #[arg(long)]
        z: String,
    },
    /// Compares Ann(H_L) with I + (z^L) modulo a power of the maximal ideal.
    LocalVerify {
        #[command(flatten)]
        fam: FamilyOpts,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        trunc: Option<u32>,
    },
}

enum Failure {
    Lib(Error),
    Input(String),
    Precondition(String),
    Inadmissible(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(e) if e.is_input_error() => 2,
            Failure::Input(_) => 2,
            Failure::Lib(_) | Failure::Precondition(_) => 3,
            Failure::Inadmissible(_) => 4,
        }
    }
}

type Out = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let code = f.code();
            match f {
                // the report is the output; the exit code carries the verdict
                Failure::Inadmissible(text) => print!("{text}"),
                Failure::Lib(e) => eprintln!("error: {e}"),
                Failure::Input(m) | Failure::Precondition(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(code)
        }
    }
}

/// Single-letter names: lowercase as written on the R side, uppercase
/// lowered on the Γ side. Bracketed exponents are skipped.
fn infer_ring(r_side: &[&str], dp_side: &[&str], mode: Mode) -> Result<Ring, Failure> {
    let mut names = BTreeSet::new();
    for (texts, upper) in [(r_side, false), (dp_side, true)] {
        for t in texts {
            for c in t.chars() {
                if c.is_ascii_alphabetic() && c.is_ascii_uppercase() == upper {
                    names.insert(c.to_ascii_lowercase().to_string());
                }
            }
        }
    }
    if names.is_empty() {
        names.insert("x".into());
    }
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(RingContext::with_vars(&vars, Field::Rational, mode)?)
}

fn ring_of(opts: &RingOpts, r_side: &[&str], dp_side: &[&str]) -> Result<Ring, Failure> {
    let mode = opts.mode.map(|m| match m {
        ModeArg::Graded => Mode::Graded,
        ModeArg::Local => Mode::Local,
    });
    match &opts.ring {
        Some(decl) => {
            let r = RingContext::parse(decl)?;
            Ok(match mode {
                Some(m) => r.with_mode(m),
                None => r,
            })
        }
        None => infer_ring(r_side, dp_side, mode.unwrap_or(Mode::Graded)),
    }
}

fn load_family(opts: &FamilyOpts) -> Result<AdmissibleFamily, Failure> {
    let text =
        std::fs::read_to_string(&opts.family).map_err(|e| Failure::Input(format!("{}: {e}", opts.family.display())))?;
    Ok(parse_family(&text)?)
}

fn z_indices(ring: &Ring, names: &str) -> Result<Vec<usize>, Failure> {
    names
        .split(',')
        .map(|s| {
            let s = s.trim();
            ring.var_index(s)
                .ok_or_else(|| Failure::Input(format!("`{s}` is not a variable of the ring")))
        })
        .collect()
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string() + "\n").collect()
}

fn to_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn ideal_json(i: &Ideal) -> Value {
    json!(i.gens().iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn family_json(fam: &AdmissibleFamily) -> Value {
    let ring = fam.ring();
    let entries: serde_json::Map<String, Value> = fam
        .entries()
        .iter()
        .map(|(l, h)| (l.to_string(), json!(h.to_string())))
        .collect();
    json!({
        "ring": ring.declaration(),
        "z": fam.z().iter().map(|&i| ring.var_names()[i].clone()).collect::<Vec<_>>(),
        "d": fam.d(),
        "t0": fam.t0(),
        "entries": entries,
    })
}

fn report_text(r: &CheckReport) -> String {
    if r.passed {
        "admissible\n".into()
    } else {
        let mut s = String::from("not admissible\n");
        for v in &r.violations {
            let _ = writeln!(s, "{v}");
        }
        s
    }
}

fn verdict(r: &CheckReport, json: bool) -> Out {
    let text = if json { to_json(&json!(r)) } else { report_text(r) };
    if r.passed {
        Ok(text)
    } else {
        Err(Failure::Inadmissible(text))
    }
}

/// Hilbert function of R/I through degree `bound`, or until it vanishes.
fn hilbert_auto(ideal: &Ideal, bound: Option<u32>) -> Result<Vec<usize>, Failure> {
    if let Some(b) = bound {
        return Ok(hilbert_function_of_ideal(ideal, b)?);
    }
    let mut hi = 4;
    loop {
        let hf = hilbert_function_of_ideal(ideal, hi)?;
        if let Some(end) = hf.iter().position(|&h| h == 0) {
            return Ok(hf[..end].to_vec());
        }
        if hi >= 64 {
            return Err(Failure::Precondition(
                "R/I does not vanish by degree 64; pass --bound".into(),
            ));
        }
        hi *= 2;
    }
}

fn run(cmd: Cmd) -> Out {
    match cmd {
        Cmd::Contract { ring, h, f } => {
            let r = ring_of(&ring, &[&h], &[&f])?;
            let h = Polynomial::parse(&r, &h)?;
            let f = DPPolynomial::parse(&r, &f)?;
            let c = contract(&h, &f)?;
            Ok(if ring.json {
                to_json(&json!(c.to_string()))
            } else {
                format!("{c}\n")
            })
        }
        Cmd::Pair { ring, h, f } => {
            let r = ring_of(&ring, &[&h], &[&f])?;
            let h = Polynomial::parse(&r, &h)?;
            let f = DPPolynomial::parse(&r, &f)?;
            let c = pairing(&h, &f)?;
            Ok(if ring.json {
                to_json(&json!(c.to_string()))
            } else {
                format!("{c}\n")
            })
        }
        Cmd::Span { ring, f } => {
            let r = ring_of(&ring, &[], &[&f])?;
            let gens = parse_list::<Divided>(&r, &f)?;
            let w = module_basis(&r, &gens)?;
            let basis: Vec<String> = w.vectors().iter().map(ToString::to_string).collect();
            Ok(if ring.json {
                to_json(&json!({ "dim": w.dim(), "basis": basis }))
            } else {
                format!("dim {}\n{}", w.dim(), lines(basis))
            })
        }
        Cmd::Ann { ring, poly, bound } => {
            let r = ring_of(&ring, &[], &[&poly])?;
            let gens = parse_list::<Divided>(&r, &poly)?;
            let i = ann_module(&r, &gens, bound)?;
            Ok(if ring.json {
                to_json(&ideal_json(&i))
            } else {
                format!("{i}\n")
            })
        }
        Cmd::Perp { ring, ideal, bound } => {
            let r = ring_of(&ring, &[&ideal], &[])?;
            let i = Ideal::parse(&r, &ideal)?;
            let hi = match bound {
                Some(b) => b,
                None => hilbert_auto(&i, None)?.len() as u32,
            };
            let w = perp_basis(&i, hi)?;
            let basis: Vec<String> = w.vectors().iter().map(ToString::to_string).collect();
            Ok(if ring.json {
                to_json(&json!({ "dim": w.dim(), "basis": basis }))
            } else {
                format!("dim {}\n{}", w.dim(), lines(basis))
            })
        }
        Cmd::Hilbert { ring, ideal, bound } => {
            let r = ring_of(&ring, &[&ideal], &[])?;
            let i = Ideal::parse(&r, &ideal)?;
            let hf = hilbert_auto(&i, bound)?;
            Ok(if ring.json {
                to_json(&json!(hf))
            } else {
                let parts: Vec<String> = hf.iter().map(ToString::to_string).collect();
                format!("{}\n", parts.join(" "))
            })
        }
        Cmd::CheckAdmissible { fam, cond2 } => {
            let f = load_family(&fam)?;
            let modes: &[ConditionTwoMode] = match cond2 {
                Cond2Arg::Annihilator => &[ConditionTwoMode::Annihilator],
                Cond2Arg::Intersection => &[ConditionTwoMode::Intersection],
                Cond2Arg::Both => &[ConditionTwoMode::Annihilator, ConditionTwoMode::Intersection],
            };
            let mut report: Option<CheckReport> = None;
            for &m in modes {
                let r = check_admissible(&f, m)?;
                report = Some(match report {
                    None => r,
                    // condition 1 violations are common to both runs
                    Some(prev) if !prev.passed && !r.passed && prev.violations == r.violations => prev,
                    Some(prev) => prev.merge(r),
                });
            }
            verdict(&report.expect("at least one mode"), fam.json)
        }
        Cmd::Lift { fam, target, bound } => {
            let f = load_family(&fam)?;
            let idx = target
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<u32>()
                        .map_err(|_| Failure::Input(format!("bad target `{target}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let l = MultiIndex::new(idx)?;
            let Some(space) = lift_space(&f, &l, bound)? else {
                return Err(Failure::Precondition(format!("no admissible lift to H{l}")));
            };
            let kernel: Vec<String> = space.kernel.vectors().iter().map(ToString::to_string).collect();
            Ok(if fam.json {
                to_json(&json!({
                    "target": l,
                    "particular": space.particular.to_string(),
                    "kernel": kernel,
                }))
            } else {
                let mut s = format!("particular: {}\nkernel dim {}\n", space.particular, kernel.len());
                s.push_str(&lines(kernel));
                s
            })
        }
        Cmd::Cone { ring, h, z, t0 } => {
            let r = ring_of(&ring, &[&z], &[&h])?;
            let h = DPPolynomial::parse(&r, &h)?;
            let zi = z_indices(&r, &z)?;
            let idx = simplex(zi.len(), t0);
            let f = cone_family(&r, zi, &h, &idx)?;
            Ok(if ring.json {
                to_json(&family_json(&f))
            } else {
                write_family(&f)
            })
        }
        Cmd::FiniteLift { fam, bound } => {
            let f = load_family(&fam)?;
            let bound = bound.or_else(|| box_bound(&f));
            let i = finite_lift(&f, bound)?;
            Ok(if fam.json {
                to_json(&ideal_json(&i))
            } else {
                format!("{i}\n")
            })
        }
        Cmd::FamilyFromIdeal { ring, ideal, z, t0 } => {
            let r = ring_of(&ring, &[&ideal, &z], &[])?;
            let i = Ideal::parse(&r, &ideal)?;
            let zi = z_indices(&r, &z)?;
            let f = family_from_ideal(&i, &zi, t0)?;
            Ok(if ring.json {
                to_json(&family_json(&f))
            } else {
                write_family(&f)
            })
        }
        Cmd::GorensteinCheck { ring, ideal, z } => {
            let r = ring_of(&ring, &[&ideal, &z], &[])?;
            let i = Ideal::parse(&r, &ideal)?;
            let zs = parse_list::<Ordinary>(&r, &z)?;
            let rep = gorenstein_check(&i, zs.len(), &zs)?;
            Ok(if ring.json {
                to_json(&json!(rep))
            } else {
                gorenstein_text(&rep)
            })
        }
        Cmd::LocalVerify { fam, ideal, trunc } => {
            let f = load_family(&fam)?;
            let i = Ideal::parse(f.ring(), &ideal)?;
            let t = trunc.unwrap_or_else(|| default_trunc(&f));
            let rep = local_verify(&f, &i, t)?;
            if !fam.json && rep.passed {
                return Ok(format!("verified modulo m^{t}\n"));
            }
            verdict(&rep, fam.json)
        }
    }
}

/// When the box stops short of `H_{(r+2)_d}`, the largest `b` it does support.
fn box_bound(f: &AdmissibleFamily) -> Option<u32> {
    let d = f.d();
    let r = f.h1().degree().unwrap_or(0);
    if f.get(&MultiIndex::diagonal(d, r + 2)).is_some() {
        return None;
    }
    let top = (2..=r + 1)
        .rev()
        .find(|&t| f.get(&MultiIndex::diagonal(d, t)).is_some())?;
    eprintln!(
        "note: no H{} in the family; using generators of degree <= {}",
        MultiIndex::diagonal(d, r + 2),
        top - 1
    );
    Some(top - 1)
}

fn gorenstein_text(r: &GorensteinReport) -> String {
    let hf: Vec<String> = r.artinian_reduction_hf.iter().map(ToString::to_string).collect();
    let mut s = String::new();
    let _ = writeln!(s, "ideal: {}", r.ideal.join(", "));
    let _ = writeln!(s, "gorenstein: {}", r.is_gorenstein);
    let _ = writeln!(s, "dimension: {}", r.dimension);
    let _ = writeln!(s, "multiplicity: {}", r.multiplicity);
    let _ = writeln!(s, "regularity: {}", r.regularity);
    let _ = writeln!(s, "z regular: {}", r.z_regular);
    if let Some(k) = r.socle_dim {
        let _ = writeln!(s, "socle dimension: {k}");
    }
    let _ = writeln!(s, "reduction HF: {}", hf.join(" "));
    for step in &r.certificate {
        let mark = if step.passed { "ok" } else { "FAILED" };
        let _ = writeln!(s, "  [{mark}] {}: {}", step.check, step.detail);
    }
    s
}
