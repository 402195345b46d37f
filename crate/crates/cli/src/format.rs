//! Plain-text file formats.
//!
//! Every CSV file starts with `#key=value` header lines followed by
//! comma-separated rows; the JSON variants carry the same field names.
//! Floats are written with 17 significant digits so that reading a file back
//! reproduces the numbers bit for bit.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use lctkit_core::lct::LctParams;
use lctkit_core::numerics::{Representation, SampledWave, UniformGrid, Units};
use lctkit_core::phasespace::{MomentSet, PhaseSpaceCoefficients};
use lctkit_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// `{:.16e}`: 17 significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_num(s: &str, context: &str, what: &str) -> CliResult<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| CliError::format(context, format!("bad number `{s}` for {what}")))
}

fn parse_representation(s: &str, context: &str) -> CliResult<Representation> {
    match s.trim() {
        "coordinate" => Ok(Representation::Coordinate),
        "momentum" => Ok(Representation::Momentum),
        other => Err(CliError::format(
            context,
            format!("unknown representation `{other}`"),
        )),
    }
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// Header fields and data rows of a CSV file.
struct Csv<'a> {
    header: BTreeMap<String, String>,
    rows: Vec<(usize, Vec<&'a str>)>,
    context: &'a str,
}

impl<'a> Csv<'a> {
    fn parse(text: &'a str, context: &'a str) -> Self {
        let mut header = BTreeMap::new();
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some((k, v)) = rest.split_once('=') {
                    header.insert(k.trim().to_string(), v.trim().to_string());
                }
            } else {
                rows.push((i + 1, line.split(',').map(str::trim).collect()));
            }
        }
        Self {
            header,
            rows,
            context,
        }
    }

    fn get(&self, key: &str) -> CliResult<&str> {
        self.header
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| CliError::format(self.context, format!("missing header `#{key}=`")))
    }

    fn number(&self, key: &str) -> CliResult<f64> {
        parse_num(self.get(key)?, self.context, key)
    }

    fn count(&self, key: &str) -> CliResult<usize> {
        self.get(key)?
            .parse()
            .map_err(|_| CliError::format(self.context, format!("bad count for `{key}`")))
    }

    fn flag(&self, key: &str) -> CliResult<Option<bool>> {
        match self.header.get(key).map(String::as_str) {
            None => Ok(None),
            Some("true") => Ok(Some(true)),
            Some("false") => Ok(Some(false)),
            Some(other) => Err(CliError::format(
                self.context,
                format!("`{key}` must be true or false, got `{other}`"),
            )),
        }
    }

    fn numeric_rows(&self, width: usize) -> CliResult<Vec<Vec<f64>>> {
        self.rows
            .iter()
            .map(|(line, cells)| {
                if cells.len() != width {
                    return Err(CliError::format(
                        self.context,
                        format!(
                            "line {line}: expected {width} columns, found {}",
                            cells.len()
                        ),
                    ));
                }
                cells
                    .iter()
                    .map(|c| parse_num(c, self.context, &format!("line {line}")))
                    .collect()
            })
            .collect()
    }
}

fn check_lattice(grid: &UniformGrid, coords: &[f64], context: &str) -> CliResult<()> {
    for (i, &x) in coords.iter().enumerate() {
        let want = grid.point(i);
        let scale = want.abs().max(grid.step());
        if (x - want).abs() > 1e-12 * scale {
            return Err(CliError::format(
                context,
                format!("row {i}: coordinate {x} is off the lattice point {want}"),
            ));
        }
    }
    Ok(())
}

fn grid_from(start: f64, step: f64, count: usize, context: &str) -> CliResult<UniformGrid> {
    UniformGrid::new(start, step, count).map_err(|e| CliError::format(context, e.to_string()))
}

/// A sampled wave plus the ħ it was computed with.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFile {
    pub wave: SampledWave,
    pub hbar: f64,
    /// Set by tools that rescale their input.
    pub normalized: Option<bool>,
}

#[derive(Serialize, Deserialize)]
struct WaveJson {
    representation: String,
    hbar: f64,
    start: f64,
    step: f64,
    count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    normalized: Option<bool>,
    #[serde(default)]
    warnings: Vec<String>,
    points: Vec<f64>,
    values: Vec<[f64; 2]>,
}

impl WaveFile {
    pub fn new(wave: SampledWave, units: Units) -> Self {
        Self {
            wave,
            hbar: units.hbar(),
            normalized: None,
        }
    }

    pub fn units(&self) -> CliResult<Units> {
        Ok(Units::new(self.hbar)?)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let grid = self.wave.grid();
        let warnings: Vec<String> = self.wave.warnings().iter().map(|w| w.to_string()).collect();
        match format {
            OutputFormat::Csv => {
                let mut s = String::new();
                let _ = writeln!(s, "#representation={}", self.wave.representation().name());
                let _ = writeln!(s, "#hbar={}", num(self.hbar));
                let _ = writeln!(s, "#start={}", num(grid.start()));
                let _ = writeln!(s, "#step={}", num(grid.step()));
                let _ = writeln!(s, "#count={}", grid.count());
                if let Some(n) = self.normalized {
                    let _ = writeln!(s, "#normalized={n}");
                }
                if !warnings.is_empty() {
                    let _ = writeln!(s, "#warnings={}", warnings.join("; "));
                }
                let axis = match self.wave.representation() {
                    Representation::Coordinate => "x",
                    Representation::Momentum => "p",
                };
                let _ = writeln!(s, "#columns={axis},re,im");
                for (x, v) in grid.points().zip(self.wave.values()) {
                    let _ = writeln!(s, "{},{},{}", num(x), num(v.re), num(v.im));
                }
                s
            }
            OutputFormat::Json => {
                let doc = WaveJson {
                    representation: self.wave.representation().name().to_string(),
                    hbar: self.hbar,
                    start: grid.start(),
                    step: grid.step(),
                    count: grid.count(),
                    normalized: self.normalized,
                    warnings,
                    points: grid.points().collect(),
                    values: self.wave.values().iter().map(|v| [v.re, v.im]).collect(),
                };
                serde_json::to_string_pretty(&doc).expect("wave serializes") + "\n"
            }
        }
    }

    /// Reads either format; `context` names the source in error messages.
    pub fn parse(text: &str, context: &str) -> CliResult<Self> {
        let (representation, hbar, grid, normalized, coords, values) = if is_json(text) {
            let doc: WaveJson =
                serde_json::from_str(text).map_err(|e| CliError::format(context, e.to_string()))?;
            let grid = grid_from(doc.start, doc.step, doc.count, context)?;
            let values: Vec<Complex64> = doc
                .values
                .iter()
                .map(|&[r, i]| Complex64::new(r, i))
                .collect();
            (
                parse_representation(&doc.representation, context)?,
                doc.hbar,
                grid,
                doc.normalized,
                doc.points,
                values,
            )
        } else {
            let csv = Csv::parse(text, context);
            let grid = grid_from(
                csv.number("start")?,
                csv.number("step")?,
                csv.count("count")?,
                context,
            )?;
            let rows = csv.numeric_rows(3)?;
            let coords = rows.iter().map(|r| r[0]).collect();
            let values = rows.iter().map(|r| Complex64::new(r[1], r[2])).collect();
            (
                parse_representation(csv.get("representation")?, context)?,
                csv.number("hbar")?,
                grid,
                csv.flag("normalized")?,
                coords,
                values,
            )
        };
        if coords.len() != grid.count() || values.len() != grid.count() {
            return Err(CliError::format(
                context,
                format!("header count {} but {} rows", grid.count(), values.len()),
            ));
        }
        check_lattice(&grid, &coords, context)?;
        Units::new(hbar).map_err(|e| CliError::format(context, e.to_string()))?;
        let wave = SampledWave::new(grid, values, representation)?;
        Ok(Self {
            wave,
            hbar,
            normalized,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ParamsJson {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    delta_p: f64,
    #[serde(default)]
    epsilon: f64,
    #[serde(default = "default_hbar")]
    hbar: f64,
}

fn default_hbar() -> f64 {
    1.0
}

/// Reads `a, b, c, d, delta_p, epsilon, hbar` as `key=value` lines (or a
/// JSON object) and validates the symplectic condition.
pub fn parse_params(text: &str, context: &str) -> CliResult<LctParams> {
    let doc = if is_json(text) {
        serde_json::from_str::<ParamsJson>(text)
            .map_err(|e| CliError::format(context, e.to_string()))?
    } else {
        let mut map = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::format(context, format!("line {}: expected key=value", i + 1))
            })?;
            let value = parse_num(v, context, k.trim())?;
            if map.insert(k.trim().to_string(), value).is_some() {
                return Err(CliError::format(
                    context,
                    format!("duplicate key `{}`", k.trim()),
                ));
            }
        }
        let take = |k: &str| {
            map.get(k)
                .copied()
                .ok_or_else(|| CliError::format(context, format!("missing `{k}`")))
        };
        for key in map.keys() {
            if !["a", "b", "c", "d", "delta_p", "epsilon", "hbar"].contains(&key.as_str()) {
                return Err(CliError::format(context, format!("unknown key `{key}`")));
            }
        }
        ParamsJson {
            a: take("a")?,
            b: take("b")?,
            c: take("c")?,
            d: take("d")?,
            delta_p: take("delta_p")?,
            epsilon: map.get("epsilon").copied().unwrap_or(0.0),
            hbar: map.get("hbar").copied().unwrap_or(1.0),
        }
    };
    let units = Units::new(doc.hbar)?;
    Ok(LctParams::new(
        doc.a,
        doc.b,
        doc.c,
        doc.d,
        doc.delta_p,
        doc.epsilon,
        units,
    )?)
}

pub fn render_params(p: &LctParams, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut s = String::new();
            for (k, v) in [
                ("a", p.a()),
                ("b", p.b()),
                ("c", p.c()),
                ("d", p.d()),
                ("delta_p", p.delta_p()),
                ("epsilon", p.epsilon()),
                ("hbar", p.units().hbar()),
            ] {
                let _ = writeln!(s, "{k}={}", num(v));
            }
            s
        }
        OutputFormat::Json => {
            let doc = ParamsJson {
                a: p.a(),
                b: p.b(),
                c: p.c(),
                d: p.d(),
                delta_p: p.delta_p(),
                epsilon: p.epsilon(),
                hbar: p.units().hbar(),
            };
            serde_json::to_string_pretty(&doc).expect("params serialize") + "\n"
        }
    }
}

/// Phase-space coefficients plus ħ.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFile {
    pub coefficients: PhaseSpaceCoefficients,
    pub hbar: f64,
}

#[derive(Serialize, Deserialize)]
struct CoefficientJson {
    n: usize,
    delta_p: f64,
    hbar: f64,
    x_start: f64,
    x_step: f64,
    x_count: usize,
    p_start: f64,
    p_step: f64,
    p_count: usize,
    #[serde(default)]
    warnings: Vec<String>,
    /// Row-major over `(X, P)`.
    values: Vec<[f64; 2]>,
}

impl CoefficientFile {
    pub fn render(&self, format: OutputFormat, warnings: &[String]) -> String {
        let c = &self.coefficients;
        let (xg, pg) = (c.x_grid(), c.p_grid());
        match format {
            OutputFormat::Csv => {
                let mut s = String::new();
                let _ = writeln!(s, "#n={}", c.n());
                let _ = writeln!(s, "#delta_p={}", num(c.delta_p()));
                let _ = writeln!(s, "#hbar={}", num(self.hbar));
                let _ = writeln!(s, "#x_start={}", num(xg.start()));
                let _ = writeln!(s, "#x_step={}", num(xg.step()));
                let _ = writeln!(s, "#x_count={}", xg.count());
                let _ = writeln!(s, "#p_start={}", num(pg.start()));
                let _ = writeln!(s, "#p_step={}", num(pg.step()));
                let _ = writeln!(s, "#p_count={}", pg.count());
                if !warnings.is_empty() {
                    let _ = writeln!(s, "#warnings={}", warnings.join("; "));
                }
                let _ = writeln!(s, "#columns=X,P,re,im");
                for (i, x) in xg.points().enumerate() {
                    for (j, p) in pg.points().enumerate() {
                        let v = c.get(i, j);
                        let _ = writeln!(s, "{},{},{},{}", num(x), num(p), num(v.re), num(v.im));
                    }
                }
                s
            }
            OutputFormat::Json => {
                let doc = CoefficientJson {
                    n: c.n(),
                    delta_p: c.delta_p(),
                    hbar: self.hbar,
                    x_start: xg.start(),
                    x_step: xg.step(),
                    x_count: xg.count(),
                    p_start: pg.start(),
                    p_step: pg.step(),
                    p_count: pg.count(),
                    warnings: warnings.to_vec(),
                    values: c.values().iter().map(|v| [v.re, v.im]).collect(),
                };
                serde_json::to_string_pretty(&doc).expect("coefficients serialize") + "\n"
            }
        }
    }

    pub fn parse(text: &str, context: &str) -> CliResult<Self> {
        let doc = if is_json(text) {
            serde_json::from_str::<CoefficientJson>(text)
                .map_err(|e| CliError::format(context, e.to_string()))?
        } else {
            let csv = Csv::parse(text, context);
            let doc = CoefficientJson {
                n: csv.count("n")?,
                delta_p: csv.number("delta_p")?,
                hbar: csv.number("hbar")?,
                x_start: csv.number("x_start")?,
                x_step: csv.number("x_step")?,
                x_count: csv.count("x_count")?,
                p_start: csv.number("p_start")?,
                p_step: csv.number("p_step")?,
                p_count: csv.count("p_count")?,
                warnings: Vec::new(),
                values: Vec::new(),
            };
            let xg = grid_from(doc.x_start, doc.x_step, doc.x_count, context)?;
            let pg = grid_from(doc.p_start, doc.p_step, doc.p_count, context)?;
            let rows = csv.numeric_rows(4)?;
            if rows.len() != xg.count() * pg.count() {
                return Err(CliError::format(
                    context,
                    format!(
                        "expected {} rows, found {}",
                        xg.count() * pg.count(),
                        rows.len()
                    ),
                ));
            }
            let xs: Vec<f64> = rows.iter().step_by(pg.count()).map(|r| r[0]).collect();
            let ps: Vec<f64> = rows.iter().take(pg.count()).map(|r| r[1]).collect();
            check_lattice(&xg, &xs, context)?;
            check_lattice(&pg, &ps, context)?;
            CoefficientJson {
                values: rows.iter().map(|r| [r[2], r[3]]).collect(),
                ..doc
            }
        };
        let xg = grid_from(doc.x_start, doc.x_step, doc.x_count, context)?;
        let pg = grid_from(doc.p_start, doc.p_step, doc.p_count, context)?;
        Units::new(doc.hbar).map_err(|e| CliError::format(context, e.to_string()))?;
        let values = doc
            .values
            .iter()
            .map(|&[r, i]| Complex64::new(r, i))
            .collect();
        Ok(Self {
            coefficients: PhaseSpaceCoefficients::new(doc.n, doc.delta_p, xg, pg, values)?,
            hbar: doc.hbar,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct MomentsJson {
    mean_x: f64,
    mean_p: f64,
    var_x: f64,
    var_p: f64,
    codisp_xp: [f64; 2],
    codisp_px: [f64; 2],
    #[serde(default)]
    uncertainty_product: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    normalized: Option<bool>,
}

/// Writes a moment table as `quantity,value` rows or a JSON object.
pub fn render_moments(m: &MomentSet, normalized: Option<bool>, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut s = String::from("quantity,value\n");
            for (k, v) in [
                ("mean_x", m.mean_x),
                ("mean_p", m.mean_p),
                ("var_x", m.var_x),
                ("var_p", m.var_p),
                ("codisp_xp_re", m.codisp_xp.re),
                ("codisp_xp_im", m.codisp_xp.im),
                ("codisp_px_re", m.codisp_px.re),
                ("codisp_px_im", m.codisp_px.im),
                ("uncertainty_product", m.uncertainty_product()),
            ] {
                let _ = writeln!(s, "{k},{}", num(v));
            }
            if let Some(n) = normalized {
                let _ = writeln!(s, "normalized,{n}");
            }
            s
        }
        OutputFormat::Json => {
            let doc = MomentsJson {
                mean_x: m.mean_x,
                mean_p: m.mean_p,
                var_x: m.var_x,
                var_p: m.var_p,
                codisp_xp: [m.codisp_xp.re, m.codisp_xp.im],
                codisp_px: [m.codisp_px.re, m.codisp_px.im],
                uncertainty_product: m.uncertainty_product(),
                normalized,
            };
            serde_json::to_string_pretty(&doc).expect("moments serialize") + "\n"
        }
    }
}

pub fn parse_moments(text: &str, context: &str) -> CliResult<MomentSet> {
    if is_json(text) {
        let doc: MomentsJson =
            serde_json::from_str(text).map_err(|e| CliError::format(context, e.to_string()))?;
        return Ok(MomentSet {
            mean_x: doc.mean_x,
            mean_p: doc.mean_p,
            var_x: doc.var_x,
            var_p: doc.var_p,
            codisp_xp: Complex64::new(doc.codisp_xp[0], doc.codisp_xp[1]),
            codisp_px: Complex64::new(doc.codisp_px[0], doc.codisp_px[1]),
        });
    }
    let mut map = BTreeMap::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') || line == "quantity,value" {
            continue;
        }
        let (k, v) = line.split_once(',').ok_or_else(|| {
            CliError::format(context, format!("expected quantity,value in `{line}`"))
        })?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    let get = |k: &str| -> CliResult<f64> {
        let v = map
            .get(k)
            .ok_or_else(|| CliError::format(context, format!("missing `{k}`")))?;
        parse_num(v, context, k)
    };
    Ok(MomentSet {
        mean_x: get("mean_x")?,
        mean_p: get("mean_p")?,
        var_x: get("var_x")?,
        var_p: get("var_p")?,
        codisp_xp: Complex64::new(get("codisp_xp_re")?, get("codisp_xp_im")?),
        codisp_px: Complex64::new(get("codisp_px_re")?, get("codisp_px_im")?),
    })
}
