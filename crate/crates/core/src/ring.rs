//! Ring contexts: variable names of `R = k[z_1..z_n]`, their duals in the
//! divided power module, the coefficient field and the graded/local mode.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Whether ideals are homogeneous (polynomial ring) or arbitrary in the power
/// series ring, where computations are truncated modulo a power of the maximal ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Graded,
    Local,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Graded => "graded",
            Mode::Local => "local",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "graded" => Ok(Mode::Graded),
            "local" => Ok(Mode::Local),
            other => Err(Error::InvalidRing(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    var_names: Vec<String>,
    dual_names: Vec<String>,
    field: Field,
    mode: Mode,
}

/// Shared handle to a ring context; polynomials hold one of these.
pub type Ring = Arc<RingContext>;

impl RingContext {
    pub fn new(var_names: Vec<String>, dual_names: Vec<String>, field: Field, mode: Mode) -> Result<Ring> {
        if var_names.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        if var_names.len() != dual_names.len() {
            return Err(Error::InvalidRing(format!(
                "{} variables but {} dual names",
                var_names.len(),
                dual_names.len()
            )));
        }
        for name in &var_names {
            if !valid_name(name, false) {
                return Err(Error::InvalidRing(format!(
                    "variable `{name}` must start with a lowercase letter"
                )));
            }
        }
        for name in &dual_names {
            if !valid_name(name, true) {
                return Err(Error::InvalidRing(format!(
                    "dual variable `{name}` must start with an uppercase letter"
                )));
            }
        }
        for names in [&var_names, &dual_names] {
            for (i, a) in names.iter().enumerate() {
                if names[..i].contains(a) {
                    return Err(Error::InvalidRing(format!("duplicate name `{a}`")));
                }
            }
        }
        Ok(Arc::new(RingContext {
            var_names,
            dual_names,
            field,
            mode,
        }))
    }

    /// Ring over `field` whose duals are the uppercased variable names.
    pub fn with_vars(vars: &[&str], field: Field, mode: Mode) -> Result<Ring> {
        let var_names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let dual_names = var_names.iter().map(|s| default_dual(s)).collect();
        RingContext::new(var_names, dual_names, field, mode)
    }

    /// Parses `ring Q[x,y,z] dual [X,Y,Z] mode graded`; the `ring` keyword,
    /// the dual list and the mode are optional. Fields: `Q` or `Fp(p)`.
    pub fn parse(decl: &str) -> Result<Ring> {
        let mut s = decl.trim();
        if let Some(rest) = s.strip_prefix("ring") {
            if rest.starts_with(|c: char| c.is_whitespace()) {
                s = rest.trim_start();
            }
        }
        let open = s
            .find('[')
            .ok_or_else(|| Error::InvalidRing("expected `[` after the field".into()))?;
        let field = parse_field(s[..open].trim())?;
        let (vars, rest) = bracket_list(&s[open..])?;
        let mut rest = rest.trim_start();
        let mut duals = None;
        let mut mode = Mode::Graded;
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix("dual") {
                let (list, r) = bracket_list(r.trim_start())?;
                duals = Some(list);
                rest = r.trim_start();
            } else if let Some(r) = rest.strip_prefix("mode") {
                let r = r.trim_start();
                let end = r.find(char::is_whitespace).unwrap_or(r.len());
                mode = r[..end].parse()?;
                rest = r[end..].trim_start();
            } else {
                return Err(Error::InvalidRing(format!("unexpected `{rest}`")));
            }
        }
        let duals = duals.unwrap_or_else(|| vars.iter().map(|v| default_dual(v)).collect());
        RingContext::new(vars, duals, field, mode)
    }

    pub fn n(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn dual_names(&self) -> &[String] {
        &self.dual_names
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    pub fn dual_index(&self, name: &str) -> Option<usize> {
        self.dual_names.iter().position(|v| v == name)
    }

    /// Same variables and field, different mode.
    pub fn with_mode(&self, mode: Mode) -> Ring {
        Arc::new(RingContext { mode, ..self.clone() })
    }

    /// Canonical declaration string, accepted by [`RingContext::parse`].
    pub fn declaration(&self) -> String {
        format!(
            "ring {}[{}] dual [{}] mode {}",
            self.field,
            self.var_names.join(","),
            self.dual_names.join(","),
            self.mode
        )
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.declaration())
    }
}

/// Checks that two handles describe the same ring.
pub fn same_ring(a: &Ring, b: &Ring) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

fn default_dual(var: &str) -> String {
    let mut c = var.chars();
    match c.next() {
        Some(first) => first.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

fn valid_name(name: &str, upper: bool) -> bool {
    let mut chars = name.chars();
    let first_ok = match chars.next() {
        Some(c) if upper => c.is_ascii_uppercase(),
        Some(c) => c.is_ascii_lowercase(),
        None => false,
    };
    first_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_field(s: &str) -> Result<Field> {
    match s {
        "Q" | "QQ" => Ok(Field::Rational),
        _ => {
            let inner = s
                .strip_prefix("Fp(")
                .or_else(|| s.strip_prefix("GF("))
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::InvalidRing(format!("unknown field `{s}`")))?;
            let p: u64 = inner
                .trim()
                .parse()
                .map_err(|_| Error::InvalidRing(format!("bad characteristic `{inner}`")))?;
            Field::prime(p)
        }
    }
}

fn bracket_list(s: &str) -> Result<(Vec<String>, &str)> {
    let s = s
        .strip_prefix('[')
        .ok_or_else(|| Error::InvalidRing("expected `[`".into()))?;
    let close = s.find(']').ok_or_else(|| Error::InvalidRing("missing `]`".into()))?;
    let names = s[..close]
        .split(',')
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect();
    Ok((names, &s[close + 1..]))
}
