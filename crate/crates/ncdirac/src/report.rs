//! Run configuration, orchestration, and serialization: turns a validated
//! [`RunConfig`] into level tables, spacing tables, or raw matrix dumps, and
//! emits them as CSV (with `#`-prefixed metadata) or JSON.
//!
//! Numbers are written with 12 significant digits: corrections sit up to
//! ~13 orders below the Dirac energies, and shorter columns would destroy
//! downstream differencing. Emission is deterministic — identical configs
//! produce byte-identical output — and the levels CSV round-trips: parsing
//! and re-rendering reproduces the bytes exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::dirac::{energy, Level};
use crate::ncps::{
    area_to_natural, corrections, spacings, theta_matrix, thetabar_matrix, AlphaShiftForm, NcParams,
};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// Output serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OutputFormat::Csv => write!(f, "csv"),
            OutputFormat::Json => write!(f, "json"),
        }
    }
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!(
                "unknown format {other:?} (expected \"csv\" or \"json\")"
            ))),
        }
    }
}

/// One run's worth of settings. θ and θ̄ enter as magnitudes along the +z
/// quantization axis — θ in m², θ̄ in the mirrored area convention (see
/// [`crate::ncps`]) — and `alpha = None` selects constraint mode, where α is
/// derived from |θ||θ̄| = 4α²(1−α²). Supplying `alpha` together with two
/// nonzero magnitudes is accepted only if the triple satisfies that
/// constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub z: f64,
    pub levels: Vec<String>,
    pub theta_m2: f64,
    pub thetabar: f64,
    pub alpha: Option<f64>,
    pub alpha_form: AlphaShiftForm,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            z: 1.0,
            levels: vec!["2S1/2".into(), "2P1/2".into(), "2P3/2".into()],
            theta_m2: 0.0,
            thetabar: 0.0,
            alpha: None,
            alpha_form: AlphaShiftForm::default(),
            format: OutputFormat::default(),
            out: None,
        }
    }
}

fn parse_num(key: &str, value: &str) -> Result<f64> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("key {key:?} expects a number, got {value:?}")))
}

impl RunConfig {
    /// Applies one `key = value` assignment; used by both the config-file
    /// parser and the CLI flag overrides.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "Z" | "z" => self.z = parse_num(key, value)?,
            "levels" => {
                self.levels = value
                    .split([',', ' '])
                    .filter(|s| !s.is_empty())
                    .map(str::to_string)
                    .collect();
            }
            "theta_m2" | "theta" => self.theta_m2 = parse_num(key, value)?,
            "thetabar" => self.thetabar = parse_num(key, value)?,
            "alpha" => self.alpha = Some(parse_num(key, value)?),
            "alpha_form" => self.alpha_form = value.parse()?,
            "format" => self.format = value.parse()?,
            "out" => self.out = Some(PathBuf::from(value)),
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Parses and canonicalizes the level list; labels must be valid and
    /// must not collide after canonicalization.
    pub fn parsed_levels(&self) -> Result<Vec<Level>> {
        if self.levels.is_empty() {
            return Err(Error::Config("levels list is empty".into()));
        }
        let mut seen: Vec<String> = Vec::new();
        let mut out = Vec::new();
        for s in &self.levels {
            let lv = Level::from_label(s, self.z)
                .map_err(|e| Error::Config(format!("levels entry {s:?}: {e}")))?;
            let canon = lv.label();
            if seen.contains(&canon) {
                return Err(Error::Config(format!("duplicate level {canon:?}")));
            }
            seen.push(canon);
            out.push(lv);
        }
        Ok(out)
    }

    /// Builds the physics parameters: vectors along +z, α from the config.
    /// Direct α together with two nonzero magnitudes must satisfy the
    /// constraint |θ||θ̄| = 4α²(1−α²) within 1e−12.
    pub fn nc_params(&self, c: &PhysicalConstants) -> Result<NcParams> {
        for (name, v) in [("theta_m2", self.theta_m2), ("thetabar", self.thetabar)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Config(format!(
                    "{name} must be a finite nonnegative magnitude, got {v}"
                )));
            }
        }
        let theta = [0.0, 0.0, area_to_natural(self.theta_m2, c)];
        let thetabar = [0.0, 0.0, area_to_natural(self.thetabar, c)];
        match self.alpha {
            None => NcParams::from_constraint(theta, thetabar),
            Some(a) => {
                if !(a > 0.0 && a <= 1.0) {
                    return Err(Error::Config(format!("alpha must lie in (0, 1], got {a}")));
                }
                let prod = theta[2] * thetabar[2];
                if prod > 0.0 {
                    let rhs = 4.0 * a * a * (1.0 - a * a);
                    if (rhs - prod).abs() > 1e-12 * prod.max(1.0) {
                        return Err(Error::Config(format!(
                            "alpha, theta_m2, and thetabar are set inconsistently: \
                             |θ||θ̄| = {prod:.6e} but 4α²(1−α²) = {rhs:.6e}; drop alpha \
                             to derive it from the constraint, or zero one sector"
                        )));
                    }
                }
                NcParams::new(theta, thetabar, a)
            }
        }
    }

    pub fn alpha_mode(&self) -> &'static str {
        if self.alpha.is_some() {
            "direct"
        } else {
            "constraint"
        }
    }

    /// Full semantic validation (levels, magnitudes, α rule).
    pub fn validate(&self, c: &PhysicalConstants) -> Result<()> {
        self.parsed_levels()?;
        self.nc_params(c)?;
        Ok(())
    }
}

/// Parses a line-oriented `key = value` config file ('#' starts a comment)
/// into a validated [`RunConfig`] on top of the defaults. Unknown keys and
/// malformed lines are rejected with the offending line number.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!(
                "config line {lineno}: expected key = value, got {line:?}"
            ))
        })?;
        cfg.set(key.trim(), value.trim()).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("config line {lineno}: {msg}")),
            other => other,
        })?;
    }
    cfg.validate(&PhysicalConstants::new())?;
    Ok(cfg)
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

/// Header block shared by every table kind; serialized as `# key = value`
/// lines in CSV and as the `metadata` object in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub version: String,
    pub z: f64,
    pub alpha: f64,
    pub alpha_mode: String,
    pub alpha_form: String,
    pub theta_m2: f64,
    pub thetabar: f64,
    pub axis: String,
    pub hbar_c_sq_ev2_m2: f64,
    pub electron_mass_ev: f64,
    pub coupling_e2: f64,
    pub beyond_validated: Vec<String>,
}

/// One emitted sublevel record; `total_ev` carries the full energy
/// E_dirac + ΔE_α + E^θ + E^θ̄.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramRecord {
    pub level: String,
    pub sublevel: String,
    pub e_dirac_ev: f64,
    pub delta_alpha_ev: f64,
    pub e_theta_ev: f64,
    pub e_thetabar_ev: f64,
    pub total_ev: f64,
}

/// The level-diagram table: records ordered by level label, then by
/// descending e_theta within a level (ties keep descending-j_z order).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelDiagram {
    pub metadata: Metadata,
    pub records: Vec<DiagramRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingRecord {
    pub transition: String,
    pub a_ev_per_m2: f64,
    pub b_ev_per_unit: f64,
    pub value_ev: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingTable {
    pub metadata: Metadata,
    pub spacings: Vec<SpacingRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub level: String,
    pub matrix: String,
    pub row_jz: String,
    pub col_jz: String,
    pub re: f64,
    pub im: f64,
}

/// Raw Θ/Θ̄ entries (natural units: eV⁻² for theta, eV² for thetabar) at
/// the configured parameter vectors, for inspection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixTable {
    pub metadata: Metadata,
    pub entries: Vec<MatrixRecord>,
}

/// Normalizes −0.0 → +0.0 so emitted text is stable across algebraically
/// equivalent zero-producing paths.
fn nz(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

fn metadata(cfg: &RunConfig, p: &NcParams, c: &PhysicalConstants, beyond: Vec<String>) -> Metadata {
    Metadata {
        version: env!("CARGO_PKG_VERSION").to_string(),
        z: cfg.z,
        alpha: p.alpha(),
        alpha_mode: cfg.alpha_mode().to_string(),
        alpha_form: cfg.alpha_form.to_string(),
        theta_m2: nz(cfg.theta_m2),
        thetabar: nz(cfg.thetabar),
        axis: "+z".to_string(),
        hbar_c_sq_ev2_m2: c.hbar_c_sq(),
        electron_mass_ev: c.electron_mass_ev,
        coupling_e2: c.coupling_e2,
        beyond_validated: beyond,
    }
}

fn level_context(level: &Level, e: Error) -> Error {
    Error::LevelContext {
        level: level.label(),
        source: Box::new(e),
    }
}

/// Computes the level diagram for a validated config: one record per
/// sublevel, deterministic ordering, physics errors tagged with the
/// offending level.
pub fn run(cfg: &RunConfig, c: &PhysicalConstants) -> Result<LevelDiagram> {
    let levels = cfg.parsed_levels()?;
    let p = cfg.nc_params(c)?;
    let mut records = Vec::new();
    let mut beyond = Vec::new();
    for lv in &levels {
        let e_dirac = energy(lv, c).map_err(|e| level_context(lv, e))?;
        let b = corrections(lv, &p, cfg.alpha_form, c).map_err(|e| level_context(lv, e))?;
        if b.beyond_validated {
            beyond.push(lv.label());
        }
        for s in &b.sublevels {
            records.push(DiagramRecord {
                level: lv.label(),
                sublevel: s.label.clone(),
                e_dirac_ev: nz(e_dirac),
                delta_alpha_ev: nz(b.delta_e_alpha),
                e_theta_ev: nz(s.e_theta),
                e_thetabar_ev: nz(s.e_thetabar),
                total_ev: nz(e_dirac + s.total),
            });
        }
    }
    // stable sort: level label, then descending e_theta; ties keep the
    // descending-j_z construction order
    records.sort_by(|a, b| {
        a.level
            .cmp(&b.level)
            .then(b.e_theta_ev.partial_cmp(&a.e_theta_ev).expect("finite"))
    });
    Ok(LevelDiagram {
        metadata: metadata(cfg, &p, c, beyond),
        records,
    })
}

/// Computes the five-spacing table for a validated config.
pub fn run_spacings(cfg: &RunConfig, c: &PhysicalConstants) -> Result<SpacingTable> {
    cfg.parsed_levels()?;
    let p = cfg.nc_params(c)?;
    let rows = spacings(&p, c, cfg.z)?
        .into_iter()
        .map(|s| SpacingRecord {
            transition: s.label,
            a_ev_per_m2: nz(s.a_ev_per_area),
            b_ev_per_unit: nz(s.b_ev_per_area),
            value_ev: nz(s.value_ev),
        })
        .collect();
    Ok(SpacingTable {
        metadata: metadata(cfg, &p, c, Vec::new()),
        spacings: rows,
    })
}

/// Dumps the Θ and Θ̄ entries for every configured level at the configured
/// parameter vectors.
pub fn run_matrices(cfg: &RunConfig, c: &PhysicalConstants) -> Result<MatrixTable> {
    let levels = cfg.parsed_levels()?;
    let p = cfg.nc_params(c)?;
    let signed = |h: crate::HalfInt| {
        if h.doubled() >= 0 {
            format!("+{h}")
        } else {
            format!("{h}")
        }
    };
    let mut entries = Vec::new();
    for lv in &levels {
        let pairs = [
            (
                "theta",
                theta_matrix(lv, p.theta()).map_err(|e| level_context(lv, e))?,
            ),
            (
                "thetabar",
                thetabar_matrix(lv, p.thetabar()).map_err(|e| level_context(lv, e))?,
            ),
        ];
        for (name, m) in pairs {
            for row in 0..m.dim() {
                for col in 0..m.dim() {
                    let v = m.get(row, col);
                    entries.push(MatrixRecord {
                        level: lv.label(),
                        matrix: name.to_string(),
                        row_jz: signed(m.jz_of_row(row)),
                        col_jz: signed(m.jz_of_row(col)),
                        re: nz(v.re),
                        im: nz(v.im),
                    });
                }
            }
        }
    }
    Ok(MatrixTable {
        metadata: metadata(cfg, &p, c, Vec::new()),
        entries,
    })
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

pub const LEVELS_CSV_HEADER: &str =
    "level,sublevel,E_dirac_eV,delta_alpha_eV,e_theta_eV,e_thetabar_eV,total_eV";
pub const SPACINGS_CSV_HEADER: &str = "transition,A_eV_per_m2,B_eV_per_unit,value_eV";
pub const MATRICES_CSV_HEADER: &str = "level,matrix,row_jz,col_jz,re,im";

const LEVELS_BANNER: &str = "# ncdirac level diagram";
const SPACINGS_BANNER: &str = "# ncdirac sublevel spacings";
const MATRICES_BANNER: &str = "# ncdirac secular matrices (natural units)";

/// 12 significant digits; enough that corrections ~13 orders below the
/// Dirac energy survive differencing of totals is NOT expected — columns
/// carry the corrections separately — but differencing within a column is.
fn sig12(v: f64) -> String {
    format!("{:.11e}", nz(v))
}

fn render_metadata(out: &mut String, m: &Metadata) {
    let list = if m.beyond_validated.is_empty() {
        "(none)".to_string()
    } else {
        m.beyond_validated.join(",")
    };
    let _ = writeln!(out, "# version = {}", m.version);
    let _ = writeln!(out, "# Z = {}", sig12(m.z));
    let _ = writeln!(out, "# alpha = {}", sig12(m.alpha));
    let _ = writeln!(out, "# alpha_mode = {}", m.alpha_mode);
    let _ = writeln!(out, "# alpha_form = {}", m.alpha_form);
    let _ = writeln!(out, "# theta_m2 = {}", sig12(m.theta_m2));
    let _ = writeln!(out, "# thetabar = {}", sig12(m.thetabar));
    let _ = writeln!(out, "# axis = {}", m.axis);
    let _ = writeln!(out, "# hbar_c_sq_eV2_m2 = {}", sig12(m.hbar_c_sq_ev2_m2));
    let _ = writeln!(out, "# electron_mass_eV = {}", sig12(m.electron_mass_ev));
    let _ = writeln!(out, "# coupling_e2 = {}", sig12(m.coupling_e2));
    let _ = writeln!(out, "# beyond_validated = {list}");
}

fn verify_sum_identity(d: &LevelDiagram) {
    for r in &d.records {
        let re_sum = r.e_dirac_ev + r.delta_alpha_ev + r.e_theta_ev + r.e_thetabar_ev;
        let tol = 1e-12 * r.total_ev.abs().max(1.0);
        assert!(
            (r.total_ev - re_sum).abs() <= tol,
            "sum identity violated for {}/{}: {} vs {}",
            r.level,
            r.sublevel,
            r.total_ev,
            re_sum
        );
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("tables serialize infallibly");
    s.push('\n');
    s
}

/// Renders the level diagram; re-verifies the per-record sum identity
/// before anything is written.
pub fn render_levels(d: &LevelDiagram, format: OutputFormat) -> String {
    verify_sum_identity(d);
    match format {
        OutputFormat::Json => to_json(d),
        OutputFormat::Csv => {
            let mut s = String::new();
            s.push_str(LEVELS_BANNER);
            s.push('\n');
            render_metadata(&mut s, &d.metadata);
            s.push_str(LEVELS_CSV_HEADER);
            s.push('\n');
            for r in &d.records {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    r.level,
                    r.sublevel,
                    sig12(r.e_dirac_ev),
                    sig12(r.delta_alpha_ev),
                    sig12(r.e_theta_ev),
                    sig12(r.e_thetabar_ev),
                    sig12(r.total_ev),
                );
            }
            s
        }
    }
}

pub fn render_spacings(t: &SpacingTable, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(t),
        OutputFormat::Csv => {
            let mut s = String::new();
            s.push_str(SPACINGS_BANNER);
            s.push('\n');
            render_metadata(&mut s, &t.metadata);
            s.push_str(SPACINGS_CSV_HEADER);
            s.push('\n');
            for r in &t.spacings {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    r.transition,
                    sig12(r.a_ev_per_m2),
                    sig12(r.b_ev_per_unit),
                    sig12(r.value_ev),
                );
            }
            s
        }
    }
}

pub fn render_matrices(t: &MatrixTable, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(t),
        OutputFormat::Csv => {
            let mut s = String::new();
            s.push_str(MATRICES_BANNER);
            s.push('\n');
            render_metadata(&mut s, &t.metadata);
            s.push_str(MATRICES_CSV_HEADER);
            s.push('\n');
            for r in &t.entries {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    r.level,
                    r.matrix,
                    r.row_jz,
                    r.col_jz,
                    sig12(r.re),
                    sig12(r.im),
                );
            }
            s
        }
    }
}

/// Writes rendered text to `path`, or to stdout when `path` is `None`.
pub fn write_output(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing emitted tables back (round-trip support)
// ---------------------------------------------------------------------------

fn parse_meta_f64(kv: &mut BTreeMap<String, String>, key: &str) -> Result<f64> {
    let raw = kv
        .remove(key)
        .ok_or_else(|| Error::Config(format!("metadata key {key:?} missing")))?;
    raw.parse()
        .map_err(|_| Error::Config(format!("metadata key {key:?} is not a number: {raw:?}")))
}

fn parse_meta_str(kv: &mut BTreeMap<String, String>, key: &str) -> Result<String> {
    kv.remove(key)
        .ok_or_else(|| Error::Config(format!("metadata key {key:?} missing")))
}

/// Parses a levels CSV produced by [`render_levels`]; strict about banner,
/// metadata keys, and header so that parse → render is byte-stable.
pub fn parse_levels_csv(text: &str) -> Result<LevelDiagram> {
    let mut lines = text.lines();
    match lines.next() {
        Some(l) if l == LEVELS_BANNER => {}
        other => {
            return Err(Error::Config(format!(
                "expected banner {LEVELS_BANNER:?}, got {other:?}"
            )))
        }
    }
    let mut kv = BTreeMap::new();
    let mut header: Option<&str> = None;
    for line in lines.by_ref() {
        if let Some(rest) = line.strip_prefix("# ") {
            let (k, v) = rest
                .split_once(" = ")
                .ok_or_else(|| Error::Config(format!("malformed metadata line {line:?}")))?;
            kv.insert(k.to_string(), v.to_string());
        } else {
            header = Some(line);
            break;
        }
    }
    if header != Some(LEVELS_CSV_HEADER) {
        return Err(Error::Config(format!(
            "expected header {LEVELS_CSV_HEADER:?}, got {header:?}"
        )));
    }

    let beyond_raw = parse_meta_str(&mut kv, "beyond_validated")?;
    let metadata = Metadata {
        version: parse_meta_str(&mut kv, "version")?,
        z: parse_meta_f64(&mut kv, "Z")?,
        alpha: parse_meta_f64(&mut kv, "alpha")?,
        alpha_mode: parse_meta_str(&mut kv, "alpha_mode")?,
        alpha_form: parse_meta_str(&mut kv, "alpha_form")?,
        theta_m2: parse_meta_f64(&mut kv, "theta_m2")?,
        thetabar: parse_meta_f64(&mut kv, "thetabar")?,
        axis: parse_meta_str(&mut kv, "axis")?,
        hbar_c_sq_ev2_m2: parse_meta_f64(&mut kv, "hbar_c_sq_eV2_m2")?,
        electron_mass_ev: parse_meta_f64(&mut kv, "electron_mass_eV")?,
        coupling_e2: parse_meta_f64(&mut kv, "coupling_e2")?,
        beyond_validated: if beyond_raw == "(none)" {
            Vec::new()
        } else {
            beyond_raw.split(',').map(str::to_string).collect()
        },
    };
    if !kv.is_empty() {
        let extra: Vec<&String> = kv.keys().collect();
        return Err(Error::Config(format!("unknown metadata keys {extra:?}")));
    }

    let mut records = Vec::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(Error::Config(format!(
                "expected 7 comma-separated fields, got {}: {line:?}",
                fields.len()
            )));
        }
        let num = |i: usize| -> Result<f64> {
            fields[i]
                .parse()
                .map_err(|_| Error::Config(format!("field {i} is not a number: {:?}", fields[i])))
        };
        records.push(DiagramRecord {
            level: fields[0].to_string(),
            sublevel: fields[1].to_string(),
            e_dirac_ev: num(2)?,
            delta_alpha_ev: num(3)?,
            e_theta_ev: num(4)?,
            e_thetabar_ev: num(5)?,
            total_ev: num(6)?,
        });
    }
    Ok(LevelDiagram { metadata, records })
}

/// Parses the JSON emitted by [`render_levels`].
pub fn parse_levels_json(text: &str) -> Result<LevelDiagram> {
    serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid diagram JSON: {e}")))
}

// ---------------------------------------------------------------------------
