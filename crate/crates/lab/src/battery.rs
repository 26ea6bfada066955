//! Human-readable certificates for battery entries.

use std::fmt::Write;

use conelab_circle::{CircleFunction, TrigPolynomial};
use conelab_cone::{RationalSymbol, MATCHING_TOL};
use conelab_index::{cone_index_oracle, winding_of};
use conelab_linop::c64;

use crate::config::{NamedSymbol, ValidatedConfig};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("no battery entry is named `{0}`")]
pub struct UnknownName(pub String);

fn fmt_real(x: f64) -> String {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r}")
    }
}

/// `a`, `bi` or `(a + bi)`.
pub fn fmt_complex(z: c64) -> String {
    let (re, im) = (fmt_real(z.re), fmt_real(z.im));
    match (re == "0", im == "0") {
        (_, true) => re,
        (true, false) => match im.as_str() {
            "1" => "i".to_string(),
            "-1" => "-i".to_string(),
            _ => format!("{im}i"),
        },
        (false, false) => {
            let (sign, mag) = match im.strip_prefix('-') {
                Some(m) => ('-', m.to_string()),
                None => ('+', im.clone()),
            };
            let mag = if mag == "1" { String::new() } else { mag };
            format!("({re} {sign} {mag}i)")
        }
    }
}

/// Joins `(coefficient, monomial)` terms into `a + b·x − c·y`.
fn join_terms(terms: &[(c64, String)]) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let mut coef = fmt_complex(*c);
        let negative = coef.starts_with('-');
        if negative {
            coef.remove(0);
        }
        let body = match (coef.as_str(), mono.is_empty()) {
            (c, true) => c.to_string(),
            ("1", false) => mono.clone(),
            (c, false) => format!("{c}{mono}"),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

pub fn fmt_trig(p: &TrigPolynomial) -> String {
    let terms: Vec<(c64, String)> = p
        .coeffs()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(m, c)| {
            let mono = match m {
                0 => String::new(),
                1 => "e^{iθ}".to_string(),
                -1 => "e^{-iθ}".to_string(),
                m => format!("e^{{{m}iθ}}"),
            };
            (c, mono)
        })
        .collect();
    join_terms(&terms)
}

fn fmt_poly_p(coeffs: &[c64]) -> String {
    let terms: Vec<(c64, String)> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(k, &c)| {
            let mono = match k {
                0 => String::new(),
                1 => "p".to_string(),
                k => format!("p^{k}"),
            };
            (c, mono)
        })
        .collect();
    join_terms(&terms)
}

fn wrap(s: String) -> String {
    if s.contains(' ') {
        format!("({s})")
    } else {
        s
    }
}

fn fmt_rational(r: &RationalSymbol) -> String {
    let num = fmt_poly_p(r.numerator().coeffs());
    let den = r.denominator().coeffs();
    if den.len() == 1 && den[0] == c64::new(1.0, 0.0) {
        return num;
    }
    format!("{}/{}", wrap(num), wrap(fmt_poly_p(den)))
}

fn fmt_wind(w: i64) -> String {
    if w > 0 {
        format!("+{w}")
    } else {
        w.to_string()
    }
}

fn describe_sheet(f: &CircleFunction) -> String {
    let kind = match f.as_polynomial() {
        Some(p) => format!("degree-{} trig polynomial {}", p.degree(), fmt_trig(&p)),
        None => format!(
            "degree-{} rational trig function {}/{}",
            f.degree(),
            wrap(fmt_trig(f.numerator())),
            wrap(fmt_trig(f.denominator()))
        ),
    };
    if f.is_elliptic() {
        match winding_of(|t| f.eval(t)) {
            Ok(w) => format!("{kind}, elliptic, wind {}", fmt_wind(w)),
            Err(e) => format!("{kind}, elliptic, winding unresolved ({e})"),
        }
    } else {
        format!("{kind}, not elliptic (min modulus {:e})", f.min_modulus())
    }
}

fn describe_conormal(r: &RationalSymbol) -> String {
    let l = fmt_complex(r.limit());
    let ell = if r.is_elliptic() {
        "elliptic"
    } else {
        "not elliptic"
    };
    format!("rational {}, limits ({l}, {l}), {ell}", fmt_rational(r))
}

/// Matching and ellipticity certificate of one entry.
pub fn describe_symbol(s: &NamedSymbol) -> String {
    let a = &s.symbol;
    let mut out = String::new();
    let _ = writeln!(out, "{}", s.name);
    let _ = writeln!(
        out,
        "  interior ξ=+: {}",
        describe_sheet(&a.interior().plus)
    );
    let _ = writeln!(
        out,
        "  interior ξ=-: {}",
        describe_sheet(&a.interior().minus)
    );
    let _ = writeln!(
        out,
        "  conormal ω=+: {}",
        describe_conormal(&a.conormal().plus)
    );
    let _ = writeln!(
        out,
        "  conormal ω=-: {}",
        describe_conormal(&a.conormal().minus)
    );
    let _ = writeln!(
        out,
        "  matching residual {:e} (tolerance {:e})",
        a.matching_residual(),
        MATCHING_TOL
    );
    if a.is_elliptic() {
        let oracle = match cone_index_oracle(a) {
            Ok(i) => i.to_string(),
            Err(e) => format!("unresolved ({e})"),
        };
        let _ = writeln!(
            out,
            "  elliptic (min modulus {:.6}), cone index oracle {oracle}",
            a.min_modulus()
        );
    } else {
        let _ = writeln!(out, "  not elliptic (min modulus {:e})", a.min_modulus());
    }
    out
}

pub fn describe(cfg: &ValidatedConfig, name: &str) -> Result<String, UnknownName> {
    cfg.symbol(name)
        .map(describe_symbol)
        .ok_or_else(|| UnknownName(name.to_string()))
}

/// One line per entry: name, elliptic flag, matching residual and oracle index.
pub fn list(cfg: &ValidatedConfig) -> String {
    let mut out = String::new();
    for s in &cfg.battery {
        let a = &s.symbol;
        let oracle = if a.is_elliptic() {
            cone_index_oracle(a)
                .map(|i| i.to_string())
                .unwrap_or_else(|_| "?".to_string())
        } else {
            "-".to_string()
        };
        let _ = writeln!(
            out,
            "{:<28} {:<12} matching {:.1e}  index {oracle}",
            s.name,
            if a.is_elliptic() {
                "elliptic"
            } else {
                "not elliptic"
            },
            a.matching_residual()
        );
    }
    out
}
