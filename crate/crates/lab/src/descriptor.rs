//! Symbol and map descriptors as they appear in experiment configs.

use std::fmt;
use std::str::FromStr;

use conelab_circle::{CircleFunction, CircleSymbol, TrigPolynomial};
use conelab_cone::{ConeError, ConeSymbol, ConormalFamily, RationalSymbol};
use conelab_linop::c64;
use evalexpr::{ContextWithMutableVariables, DefaultNumericTypes, HashMapContext, Node, Value};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Most coefficients accepted in one list.
pub const MAX_COEFFS: usize = 64;
/// Largest accepted `|lowest|` mode of an interior sheet.
pub const MAX_MODE: i64 = 64;
/// Largest accepted degree of a conormal numerator or denominator.
pub const MAX_RATIONAL_DEGREE: usize = 8;
/// Longest accepted expression in a `diagonal:(…)` map.
pub const MAX_EXPR_LEN: usize = 256;
/// Deepest accepted parenthesis nesting in a `diagonal:(…)` map.
pub const MAX_EXPR_DEPTH: usize = 16;
/// Largest accepted Hardy length and synthetic chain length.
pub const MAX_LENGTH: usize = 6;
/// Largest accepted multiplicity of a synthetic module.
pub const MAX_MULTIPLICITY: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DescriptorError {
    #[error("{0}")]
    Malformed(String),
    #[error("matching-condition residual {residual:e} on sheet {sheet} exceeds {tol:e}")]
    Matching { sheet: i32, residual: f64, tol: f64 },
    #[error(transparent)]
    Symbol(ConeError),
}

impl From<ConeError> for DescriptorError {
    fn from(e: ConeError) -> Self {
        match e {
            ConeError::MatchingViolation { sheet, residual } => DescriptorError::Matching {
                sheet,
                residual,
                tol: conelab_cone::MATCHING_TOL,
            },
            other => DescriptorError::Symbol(other),
        }
    }
}

impl From<conelab_circle::CircleError> for DescriptorError {
    fn from(e: conelab_circle::CircleError) -> Self {
        DescriptorError::Symbol(ConeError::Circle(e))
    }
}

/// A coefficient: a real number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coef {
    Real(f64),
    Complex([f64; 2]),
}

impl Coef {
    pub fn value(self) -> c64 {
        match self {
            Coef::Real(x) => c64::new(x, 0.0),
            Coef::Complex([re, im]) => c64::new(re, im),
        }
    }
}

impl From<c64> for Coef {
    fn from(z: c64) -> Self {
        if z.im == 0.0 {
            Coef::Real(z.re)
        } else {
            Coef::Complex([z.re, z.im])
        }
    }
}

fn coefficients(list: &[Coef], what: &str) -> Result<Vec<c64>, DescriptorError> {
    if list.is_empty() {
        return Err(DescriptorError::Malformed(format!(
            "{what} has no coefficients"
        )));
    }
    if list.len() > MAX_COEFFS {
        return Err(DescriptorError::Malformed(format!(
            "{what} has {} coefficients, at most {MAX_COEFFS} are accepted",
            list.len()
        )));
    }
    let out: Vec<c64> = list.iter().map(|c| c.value()).collect();
    if out.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(DescriptorError::Malformed(format!(
            "{what} has a non-finite coefficient"
        )));
    }
    Ok(out)
}

/// Trigonometric polynomial `Σ c_j e^{i(lowest + j)θ}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigSpec {
    #[serde(default)]
    pub lowest: i64,
    pub coeffs: Vec<Coef>,
}

impl TrigSpec {
    pub fn one() -> Self {
        Self {
            lowest: 0,
            coeffs: vec![Coef::Real(1.0)],
        }
    }

    pub fn build(&self, what: &str) -> Result<TrigPolynomial, DescriptorError> {
        if self.lowest.abs() > MAX_MODE {
            return Err(DescriptorError::Malformed(format!(
                "{what} starts at mode {}, modes beyond ±{MAX_MODE} are not accepted",
                self.lowest
            )));
        }
        let c = coefficients(&self.coeffs, what)?;
        Ok(TrigPolynomial::from_slice(self.lowest, &c))
    }
}

/// One interior sheet: a trigonometric polynomial, optionally over a denominator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheetSpec {
    #[serde(default)]
    pub lowest: i64,
    pub coeffs: Vec<Coef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<TrigSpec>,
}

impl SheetSpec {
    pub fn one() -> Self {
        Self {
            lowest: 0,
            coeffs: vec![Coef::Real(1.0)],
            den: None,
        }
    }

    pub fn build(&self, what: &str) -> Result<CircleFunction, DescriptorError> {
        let num = TrigSpec {
            lowest: self.lowest,
            coeffs: self.coeffs.clone(),
        }
        .build(what)?;
        let den = match &self.den {
            Some(d) => d.build(&format!("{what}.den"))?,
            None => TrigPolynomial::one(),
        };
        Ok(CircleFunction::new(num, den)?)
    }
}

fn one_sheet() -> SheetSpec {
    SheetSpec::one()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InteriorSpec {
    #[serde(default = "one_sheet")]
    pub plus: SheetSpec,
    #[serde(default = "one_sheet")]
    pub minus: SheetSpec,
}

/// Conormal symbol `n(p)/d(p)`, coefficients by ascending power of `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalSpec {
    pub num: Vec<Coef>,
    pub den: Vec<Coef>,
}

impl RationalSpec {
    pub fn one() -> Self {
        Self {
            num: vec![Coef::Real(1.0)],
            den: vec![Coef::Real(1.0)],
        }
    }

    pub fn build(&self, what: &str) -> Result<RationalSymbol, DescriptorError> {
        let num = coefficients(&self.num, &format!("{what}.num"))?;
        let den = coefficients(&self.den, &format!("{what}.den"))?;
        for (list, part) in [(&num, "num"), (&den, "den")] {
            let degree = list
                .iter()
                .rposition(|z| *z != c64::new(0.0, 0.0))
                .unwrap_or(0);
            if degree > MAX_RATIONAL_DEGREE {
                return Err(DescriptorError::Malformed(format!(
                    "{what}.{part} has degree {degree}, at most {MAX_RATIONAL_DEGREE} is accepted"
                )));
            }
        }
        Ok(RationalSymbol::from_coeffs(&num, &den)?)
    }
}

fn one_rational() -> RationalSpec {
    RationalSpec::one()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConormalSpec {
    #[serde(default = "one_rational")]
    pub plus: RationalSpec,
    #[serde(default = "one_rational")]
    pub minus: RationalSpec,
}

/// Named symbol of the stabilized algebra. Missing parts default to `1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolDescriptor {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interior: Option<InteriorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conormal: Option<ConormalSpec>,
}

impl SymbolDescriptor {
    /// Builds the symbol and checks the matching condition.
    pub fn build(&self) -> Result<ConeSymbol, DescriptorError> {
        let interior = match &self.interior {
            Some(i) => CircleSymbol::new(
                i.plus.build("interior.plus")?,
                i.minus.build("interior.minus")?,
            ),
            None => CircleSymbol::unit(),
        };
        let conormal = match &self.conormal {
            Some(c) => ConormalFamily::new(
                c.plus.build("conormal.plus")?,
                c.minus.build("conormal.minus")?,
            ),
            None => ConormalFamily::one(),
        };
        Ok(ConeSymbol::new(interior, conormal)?)
    }
}

/// Parses one symbol descriptor from JSON and builds it.
pub fn parse_symbol(json: &str) -> Result<(String, ConeSymbol), DescriptorError> {
    let d: SymbolDescriptor =
        serde_json::from_str(json).map_err(|e| DescriptorError::Malformed(e.to_string()))?;
    let s = d.build()?;
    Ok((d.name, s))
}

/// Chain shape of a synthetic resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntheticDims {
    /// Drawn from the seed.
    Auto,
    Fixed(Vec<usize>),
}

/// How the maps of a resolution are produced.
#[derive(Debug, Clone)]
pub enum MapDescriptor {
    /// `hardy:n`, the Hardy resolution of length `n`.
    Hardy(usize),
    /// `synthetic:auto` or `synthetic:d₀,d₁,…`, one resolution per seed.
    Synthetic(SyntheticDims),
    /// `diagonal:(expr)`, the length-1 model `A₀ = diag(f(m))`.
    Diagonal(DiagonalMap),
}

/// Compiled `f(m)` of a diagonal map.
#[derive(Debug, Clone)]
pub struct DiagonalMap {
    source: String,
    node: Node<DefaultNumericTypes>,
}

impl DiagonalMap {
    pub fn parse(expr: &str) -> Result<Self, DescriptorError> {
        if expr.len() > MAX_EXPR_LEN {
            return Err(DescriptorError::Malformed(format!(
                "expression is {} bytes long, at most {MAX_EXPR_LEN} are accepted",
                expr.len()
            )));
        }
        let mut depth = 0usize;
        for c in expr.chars() {
            match c {
                '(' => {
                    depth += 1;
                    if depth > MAX_EXPR_DEPTH {
                        return Err(DescriptorError::Malformed(format!(
                            "expression nests deeper than {MAX_EXPR_DEPTH}"
                        )));
                    }
                }
                ')' => depth = depth.saturating_sub(1),
                _ => {}
            }
        }
        let node = evalexpr::build_operator_tree::<DefaultNumericTypes>(expr)
            .map_err(|e| DescriptorError::Malformed(format!("expression `{expr}`: {e}")))?;
        if let Some(v) = node.iter_variable_identifiers().find(|v| *v != "m") {
            return Err(DescriptorError::Malformed(format!(
                "expression `{expr}` uses `{v}`, only `m` is bound"
            )));
        }
        let mut ctx = HashMapContext::<DefaultNumericTypes>::new();
        ctx.set_value("m".to_string(), Value::Float(1.0))
            .map_err(|e| DescriptorError::Malformed(e.to_string()))?;
        node.eval_number_with_context(&ctx)
            .map_err(|e| DescriptorError::Malformed(format!("expression `{expr}`: {e}")))?;
        Ok(Self {
            source: expr.to_string(),
            node,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// `f(m)` at a Fourier mode.
    pub fn eval(&self, m: i64) -> Result<f64, DescriptorError> {
        let mut ctx = HashMapContext::<DefaultNumericTypes>::new();
        ctx.set_value("m".to_string(), Value::Float(m as f64))
            .map_err(|e| DescriptorError::Malformed(e.to_string()))?;
        let v = self.node.eval_number_with_context(&ctx).map_err(|e| {
            DescriptorError::Malformed(format!("`{}` at m = {m}: {e}", self.source))
        })?;
        if !v.is_finite() {
            return Err(DescriptorError::Malformed(format!(
                "`{}` is not finite at m = {m}",
                self.source
            )));
        }
        Ok(v)
    }

    /// `f(m)` for `m = −n..=n`.
    pub fn weights(&self, n: usize) -> Result<Vec<f64>, DescriptorError> {
        let n = n as i64;
        (-n..=n).map(|m| self.eval(m)).collect()
    }
}

impl PartialEq for DiagonalMap {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
    }
}

impl PartialEq for MapDescriptor {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (MapDescriptor::Hardy(a), MapDescriptor::Hardy(b)) => a == b,
            (MapDescriptor::Synthetic(a), MapDescriptor::Synthetic(b)) => a == b,
            (MapDescriptor::Diagonal(a), MapDescriptor::Diagonal(b)) => a == b,
            _ => false,
        }
    }
}

fn parse_count(s: &str, what: &str, max: usize) -> Result<usize, DescriptorError> {
    let v: usize = s
        .trim()
        .parse()
        .map_err(|_| DescriptorError::Malformed(format!("{what} `{s}` is not a count")))?;
    if v > max {
        return Err(DescriptorError::Malformed(format!(
            "{what} {v} exceeds the limit {max}"
        )));
    }
    Ok(v)
}

impl FromStr for MapDescriptor {
    type Err = DescriptorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        match kind.trim() {
            "hardy" => {
                if arg.is_empty() {
                    return Ok(MapDescriptor::Hardy(1));
                }
                Ok(MapDescriptor::Hardy(parse_count(
                    arg,
                    "Hardy length",
                    MAX_LENGTH,
                )?))
            }
            "synthetic" => {
                let arg = arg.trim();
                if arg.is_empty() || arg == "auto" {
                    return Ok(MapDescriptor::Synthetic(SyntheticDims::Auto));
                }
                let dims = arg
                    .split(',')
                    .map(|d| parse_count(d, "multiplicity", MAX_MULTIPLICITY))
                    .collect::<Result<Vec<_>, _>>()?;
                if dims.len() > MAX_LENGTH + 1 {
                    return Err(DescriptorError::Malformed(format!(
                        "synthetic chain has {} spaces, at most {} are accepted",
                        dims.len(),
                        MAX_LENGTH + 1
                    )));
                }
                Ok(MapDescriptor::Synthetic(SyntheticDims::Fixed(dims)))
            }
            "diagonal" => {
                let arg = arg.trim();
                let inner = arg
                    .strip_prefix('(')
                    .and_then(|a| a.strip_suffix(')'))
                    .ok_or_else(|| {
                        DescriptorError::Malformed(format!(
                            "diagonal map `{arg}` must be written diagonal:(expr)"
                        ))
                    })?;
                Ok(MapDescriptor::Diagonal(DiagonalMap::parse(inner)?))
            }
            other => Err(DescriptorError::Malformed(format!(
                "unknown map kind `{other}`, expected hardy, synthetic or diagonal"
            ))),
        }
    }
}

impl fmt::Display for MapDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapDescriptor::Hardy(n) => write!(f, "hardy:{n}"),
            MapDescriptor::Synthetic(SyntheticDims::Auto) => write!(f, "synthetic:auto"),
            MapDescriptor::Synthetic(SyntheticDims::Fixed(d)) => {
                let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                write!(f, "synthetic:{}", parts.join(","))
            }
            MapDescriptor::Diagonal(d) => write!(f, "diagonal:({})", d.source),
        }
    }
}
