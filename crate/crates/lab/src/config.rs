//! Experiment configuration: parsing, validation and content addressing.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

use conelab_cone::{
    ConeGeometry, ConeSymbol, DEFAULT_N, DEFAULT_T_CUT, DEFAULT_T_MINUS, DEFAULT_T_PLUS,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::descriptor::{MapDescriptor, SymbolDescriptor, SyntheticDims};

/// The configuration shipped with the binary.
pub const DEFAULT_CONFIG: &str = include_str!("../../../configs/default.json");

/// Largest accepted circle truncation.
pub const MAX_CIRCLE_TRUNCATION: usize = 2048;
/// Largest accepted cone truncation.
pub const MAX_CONE_TRUNCATION: usize = 2048;

/// A config problem, located by the JSON path of the offending key.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("config error at `{key}`: {message}")]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(key: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            key: key.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Guillemin,
    Index,
    Resolution,
    Theorem1,
    Unbounded,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Guillemin,
        Suite::Index,
        Suite::Resolution,
        Suite::Theorem1,
        Suite::Unbounded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Guillemin => "guillemin",
            Suite::Index => "index",
            Suite::Resolution => "resolution",
            Suite::Theorem1 => "theorem1",
            Suite::Unbounded => "unbounded",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_cut: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_minus: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_plus: Option<f64>,
}

impl GeometryOverrides {
    pub fn build(&self) -> Result<ConeGeometry, ConfigError> {
        let t_cut = self.t_cut.unwrap_or(DEFAULT_T_CUT);
        let t_minus = self.t_minus.unwrap_or(DEFAULT_T_MINUS);
        let t_plus = self.t_plus.unwrap_or(DEFAULT_T_PLUS);
        for (key, v) in [("t_cut", t_cut), ("t_minus", t_minus), ("t_plus", t_plus)] {
            if !v.is_finite() || v <= 0.0 || v > 200.0 {
                return Err(ConfigError::new(
                    format!("geometry.{key}"),
                    format!("{v} is outside (0, 200]"),
                ));
            }
        }
        let geo = match (self.h, self.n) {
            (Some(_), Some(_)) => {
                return Err(ConfigError::new(
                    "geometry.h",
                    "set either the step h or the truncation n, not both",
                ))
            }
            (Some(h), None) => {
                if !h.is_finite() || h <= 0.0 || h > 1.0 {
                    return Err(ConfigError::new(
                        "geometry.h",
                        format!("{h} is outside (0, 1]"),
                    ));
                }
                let g = ConeGeometry::with_step(h, t_cut, t_minus, t_plus)
                    .map_err(|e| ConfigError::new("geometry", e.to_string()))?;
                if g.n() > MAX_CONE_TRUNCATION {
                    return Err(ConfigError::new(
                        "geometry.h",
                        format!("step {h} needs N = {}, above {MAX_CONE_TRUNCATION}", g.n()),
                    ));
                }
                g
            }
            (None, n) => {
                let n = n.unwrap_or(DEFAULT_N);
                if n == 0 || n > MAX_CONE_TRUNCATION {
                    return Err(ConfigError::new(
                        "geometry.n",
                        format!("{n} is outside 1..={MAX_CONE_TRUNCATION}"),
                    ));
                }
                ConeGeometry::new(n, t_cut, t_minus, t_plus)
                    .map_err(|e| ConfigError::new("geometry", e.to_string()))?
            }
        };
        Ok(geo)
    }
}

/// A battery entry: an inline descriptor or the name of a shipped symbol.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BatteryEntry {
    Named(String),
    Inline(Box<SymbolDescriptor>),
}

// Hand-written so that errors inside an inline descriptor keep their path.
impl<'de> Deserialize<'de> for BatteryEntry {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct Entry;

        impl<'de> serde::de::Visitor<'de> for Entry {
            type Value = BatteryEntry;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a shipped symbol name or an inline symbol descriptor")
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<BatteryEntry, E> {
                Ok(BatteryEntry::Named(v.to_string()))
            }

            fn visit_map<A: serde::de::MapAccess<'de>>(
                self,
                map: A,
            ) -> Result<BatteryEntry, A::Error> {
                SymbolDescriptor::deserialize(serde::de::value::MapAccessDeserializer::new(map))
                    .map(|d| BatteryEntry::Inline(Box::new(d)))
            }
        }

        d.deserialize_any(Entry)
    }
}

fn default_circle_truncations() -> Vec<usize> {
    vec![128, 512]
}

fn default_index_truncation() -> usize {
    512
}

fn default_windings() -> Vec<i64> {
    (-3..=3).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleSettings {
    #[serde(default = "default_circle_truncations")]
    pub truncations: Vec<usize>,
    #[serde(default = "default_index_truncation")]
    pub index_truncation: usize,
    #[serde(default = "default_windings")]
    pub windings: Vec<i64>,
}

impl Default for CircleSettings {
    fn default() -> Self {
        Self {
            truncations: default_circle_truncations(),
            index_truncation: default_index_truncation(),
            windings: default_windings(),
        }
    }
}

fn default_samples() -> usize {
    20
}

fn default_support() -> f64 {
    3.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem1Settings {
    /// Random vectors per seed for the isometry check.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// The vectors are supported in `{t > support_t}`.
    #[serde(default = "default_support")]
    pub support_t: f64,
}

impl Default for Theorem1Settings {
    fn default() -> Self {
        Self {
            samples: default_samples(),
            support_t: default_support(),
        }
    }
}

fn default_order() -> usize {
    conelab_index::CONE_CHARACTER_ORDER
}

fn default_path_steps() -> usize {
    5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexSettings {
    /// Order `N` of the character.
    #[serde(default = "default_order")]
    pub order: usize,
    /// Battery symbols deformed along elliptic paths.
    #[serde(default)]
    pub paths: Vec<String>,
    /// Points on each path, endpoints included.
    #[serde(default = "default_path_steps")]
    pub path_steps: usize,
    /// Battery pairs whose product is checked for additivity.
    #[serde(default)]
    pub products: Vec<[String; 2]>,
}

impl Default for IndexSettings {
    fn default() -> Self {
        Self {
            order: default_order(),
            paths: Vec::new(),
            path_steps: default_path_steps(),
            products: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub name: String,
    pub map: String,
}

fn default_maps() -> Vec<MapSpec> {
    let mut v: Vec<MapSpec> = (0..=3)
        .map(|n| MapSpec {
            name: format!("hardy{n}"),
            map: format!("hardy:{n}"),
        })
        .collect();
    v.push(MapSpec {
        name: "synthetic".to_string(),
        map: "synthetic:auto".to_string(),
    });
    v
}

fn default_resolution_truncation() -> usize {
    16
}

fn default_unbounded_truncation() -> usize {
    8
}

fn default_nodes() -> usize {
    conelab_resolution::DEFAULT_NODES
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionSettings {
    #[serde(default = "default_resolution_truncation")]
    pub truncation: usize,
    #[serde(default = "default_unbounded_truncation")]
    pub unbounded_truncation: usize,
    #[serde(default = "default_maps")]
    pub maps: Vec<MapSpec>,
    #[serde(default = "default_nodes")]
    pub quadrature_nodes: usize,
}

impl Default for ResolutionSettings {
    fn default() -> Self {
        Self {
            truncation: default_resolution_truncation(),
            unbounded_truncation: default_unbounded_truncation(),
            maps: default_maps(),
            quadrature_nodes: default_nodes(),
        }
    }
}

fn default_output() -> PathBuf {
    PathBuf::from("runs")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub geometry: GeometryOverrides,
    pub battery: Vec<BatteryEntry>,
    pub suites: Vec<Suite>,
    #[serde(default)]
    pub seeds: Vec<u64>,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub circle: CircleSettings,
    #[serde(default)]
    pub theorem1: Theorem1Settings,
    #[serde(default)]
    pub index: IndexSettings,
    #[serde(default)]
    pub resolution: ResolutionSettings,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let key = e.path().to_string();
            let inner = e.into_inner();
            let key = if key == "." {
                "(root)".to_string()
            } else {
                key
            };
            ConfigError::new(key, inner.to_string())
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new("(file)", format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn shipped() -> Self {
        Self::from_json(DEFAULT_CONFIG).expect("shipped config parses")
    }

    /// Content hash of the experiment and the build version. The output
    /// directory is not part of the experiment.
    pub fn run_id(&self) -> String {
        let mut c = self.clone();
        c.output_dir = PathBuf::new();
        let body = serde_json::to_string(&c).expect("config serializes");
        let mut h = Sha256::new();
        h.update(body.as_bytes());
        h.update(b"\n");
        h.update(crate::BUILD_VERSION.as_bytes());
        hex::encode(&h.finalize()[..8])
    }
}

/// A battery entry after validation.
#[derive(Debug, Clone)]
pub struct NamedSymbol {
    pub name: String,
    pub descriptor: SymbolDescriptor,
    pub symbol: ConeSymbol,
}

/// A resolution spec after parsing its map descriptor.
#[derive(Debug, Clone)]
pub struct NamedMap {
    pub name: String,
    pub map: MapDescriptor,
}

/// A config that passed validation, with its geometry and symbols built.
#[derive(Debug, Clone)]
pub struct ValidatedConfig {
    pub config: ExperimentConfig,
    pub geometry: ConeGeometry,
    pub battery: Vec<NamedSymbol>,
    pub maps: Vec<NamedMap>,
}

impl ValidatedConfig {
    pub fn symbol(&self, name: &str) -> Option<&NamedSymbol> {
        self.battery.iter().find(|s| s.name == name)
    }

    pub fn has(&self, suite: Suite) -> bool {
        self.config.suites.contains(&suite)
    }
}

fn shipped_descriptor(name: &str) -> Option<SymbolDescriptor> {
    ExperimentConfig::shipped()
        .battery
        .into_iter()
        .find_map(|e| match e {
            BatteryEntry::Inline(d) if d.name == name => Some(*d),
            _ => None,
        })
}

fn check_name(key: &str, name: &str) -> Result<(), ConfigError> {
    let ok = !name.is_empty()
        && name.len() <= 64
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.');
    if ok {
        Ok(())
    } else {
        Err(ConfigError::new(
            key,
            format!("name `{name}` must be 1 to 64 characters from [A-Za-z0-9_.-]"),
        ))
    }
}

/// Checks every key and builds every referenced symbol before any suite runs.
pub fn validate(config: ExperimentConfig) -> Result<ValidatedConfig, ConfigError> {
    if config.suites.is_empty() {
        return Err(ConfigError::new("suites", "no suite requested"));
    }
    let mut seen = BTreeSet::new();
    for (i, s) in config.suites.iter().enumerate() {
        if !seen.insert(*s) {
            return Err(ConfigError::new(
                format!("suites[{i}]"),
                format!("`{s}` is listed twice"),
            ));
        }
    }
    let geometry = config.geometry.build()?;

    let mut battery: Vec<NamedSymbol> = Vec::new();
    for (i, entry) in config.battery.iter().enumerate() {
        let descriptor = match entry {
            BatteryEntry::Inline(d) => (**d).clone(),
            BatteryEntry::Named(n) => shipped_descriptor(n).ok_or_else(|| {
                ConfigError::new(
                    format!("battery[{i}]"),
                    format!("no shipped symbol is named `{n}`"),
                )
            })?,
        };
        check_name(&format!("battery[{i}].name"), &descriptor.name)?;
        if battery.iter().any(|s| s.name == descriptor.name) {
            return Err(ConfigError::new(
                format!("battery[{i}].name"),
                format!("`{}` is defined twice", descriptor.name),
            ));
        }
        let symbol = descriptor.build().map_err(|e| {
            ConfigError::new(
                format!("battery[{i}]"),
                format!("symbol `{}`: {e}", descriptor.name),
            )
        })?;
        let needs_ellipticity = config.suites.contains(&Suite::Index);
        if needs_ellipticity && !symbol.is_elliptic() {
            return Err(ConfigError::new(
                format!("battery[{i}]"),
                format!(
                    "symbol `{}` is not elliptic (min modulus {:e}), the index suite needs invertible symbols",
                    descriptor.name,
                    symbol.min_modulus()
                ),
            ));
        }
        battery.push(NamedSymbol {
            name: descriptor.name.clone(),
            descriptor,
            symbol,
        });
    }
    let needs_battery = config
        .suites
        .iter()
        .any(|s| matches!(s, Suite::Index | Suite::Theorem1));
    if needs_battery && battery.is_empty() {
        return Err(ConfigError::new(
            "battery",
            "the requested suites need at least one symbol",
        ));
    }

    let circle = &config.circle;
    if config.suites.contains(&Suite::Guillemin) {
        if circle.truncations.is_empty() {
            return Err(ConfigError::new(
                "circle.truncations",
                "no truncation given",
            ));
        }
        for (i, &n) in circle.truncations.iter().enumerate() {
            if n == 0 || n > MAX_CIRCLE_TRUNCATION {
                return Err(ConfigError::new(
                    format!("circle.truncations[{i}]"),
                    format!("{n} is outside 1..={MAX_CIRCLE_TRUNCATION}"),
                ));
            }
        }
        if circle.index_truncation == 0 || circle.index_truncation > MAX_CIRCLE_TRUNCATION {
            return Err(ConfigError::new(
                "circle.index_truncation",
                format!(
                    "{} is outside 1..={MAX_CIRCLE_TRUNCATION}",
                    circle.index_truncation
                ),
            ));
        }
        for (i, &k) in circle.windings.iter().enumerate() {
            if k.unsigned_abs() as usize >= circle.index_truncation {
                return Err(ConfigError::new(
                    format!("circle.windings[{i}]"),
                    format!("|{k}| must stay below the index truncation"),
                ));
            }
        }
    }

    let index = &config.index;
    if index.order % 2 == 0 || index.order > 7 {
        return Err(ConfigError::new(
            "index.order",
            format!("{} is not an odd order up to 7", index.order),
        ));
    }
    if !index.paths.is_empty() && index.path_steps < 2 {
        return Err(ConfigError::new(
            "index.path_steps",
            "a path needs at least two points",
        ));
    }
    for (i, name) in index.paths.iter().enumerate() {
        if !battery.iter().any(|s| &s.name == name) {
            return Err(ConfigError::new(
                format!("index.paths[{i}]"),
                format!("`{name}` is not in the battery"),
            ));
        }
    }
    for (i, pair) in index.products.iter().enumerate() {
        for (j, name) in pair.iter().enumerate() {
            if !battery.iter().any(|s| &s.name == name) {
                return Err(ConfigError::new(
                    format!("index.products[{i}][{j}]"),
                    format!("`{name}` is not in the battery"),
                ));
            }
        }
    }

    let res = &config.resolution;
    let uses_resolutions = config
        .suites
        .iter()
        .any(|s| matches!(s, Suite::Resolution | Suite::Unbounded));
    for (key, v) in [
        ("resolution.truncation", res.truncation),
        ("resolution.unbounded_truncation", res.unbounded_truncation),
    ] {
        if uses_resolutions && (v == 0 || v > 64) {
            return Err(ConfigError::new(key, format!("{v} is outside 1..=64")));
        }
    }
    if uses_resolutions && (res.quadrature_nodes == 0 || res.quadrature_nodes > 2000) {
        return Err(ConfigError::new(
            "resolution.quadrature_nodes",
            format!("{} is outside 1..=2000", res.quadrature_nodes),
        ));
    }
    let mut maps: Vec<NamedMap> = Vec::new();
    for (i, spec) in res.maps.iter().enumerate() {
        check_name(&format!("resolution.maps[{i}].name"), &spec.name)?;
        if maps.iter().any(|m| m.name == spec.name) {
            return Err(ConfigError::new(
                format!("resolution.maps[{i}].name"),
                format!("`{}` is defined twice", spec.name),
            ));
        }
        let map: MapDescriptor = spec
            .map
            .parse()
            .map_err(|e| ConfigError::new(format!("resolution.maps[{i}].map"), format!("{e}")))?;
        if let MapDescriptor::Diagonal(d) = &map {
            for t in [res.truncation, res.unbounded_truncation] {
                d.weights(t).map_err(|e| {
                    ConfigError::new(format!("resolution.maps[{i}].map"), e.to_string())
                })?;
            }
        }
        if let MapDescriptor::Synthetic(SyntheticDims::Fixed(d)) = &map {
            if conelab_resolution::feasible_kernels(d).is_empty() || d.is_empty() {
                return Err(ConfigError::new(
                    format!("resolution.maps[{i}].map"),
                    format!("no exact complex has dims {d:?}"),
                ));
            }
        }
        if matches!(map, MapDescriptor::Synthetic(_)) && uses_resolutions && config.seeds.is_empty()
        {
            return Err(ConfigError::new(
                "seeds",
                "synthetic resolutions need at least one seed",
            ));
        }
        maps.push(NamedMap {
            name: spec.name.clone(),
            map,
        });
    }
    if uses_resolutions && maps.is_empty() {
        return Err(ConfigError::new("resolution.maps", "no resolution given"));
    }

    let t1 = &config.theorem1;
    if config.suites.contains(&Suite::Theorem1) {
        if t1.samples == 0 || t1.samples > 1000 {
            return Err(ConfigError::new(
                "theorem1.samples",
                format!("{} is outside 1..=1000", t1.samples),
            ));
        }
        if !t1.support_t.is_finite() || t1.support_t >= geometry.t_plus() {
            return Err(ConfigError::new(
                "theorem1.support_t",
                format!(
                    "{} leaves no grid points below T+ = {}",
                    t1.support_t,
                    geometry.t_plus()
                ),
            ));
        }
        if config.seeds.is_empty() {
            return Err(ConfigError::new(
                "seeds",
                "theorem1 draws random vectors and needs a seed",
            ));
        }
        if geometry.n() * 2 > MAX_CONE_TRUNCATION {
            return Err(ConfigError::new(
                "geometry",
                format!(
                    "theorem1 doubles N = {} beyond {MAX_CONE_TRUNCATION}",
                    geometry.n()
                ),
            ));
        }
    }

    Ok(ValidatedConfig {
        config,
        geometry,
        battery,
        maps,
    })
}
