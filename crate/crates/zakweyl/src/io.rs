//! File formats for every object the binary reads or writes.
//!
//! Writers are deterministic: fields appear in a fixed order and every float
//! is printed with 17 significant digits, enough to reproduce the f64 bit
//! for bit, so identical runs produce identical bytes. Readers report the
//! line they gave up on.
//!
//! Formats:
//! - Signal: CSV with two columns re,im (one row per sample) or JSON
//!   `{"grid":…,"values":[[re,im],…]}`.
//! - ZakArray and OmegaFunction: CSV of L rows x M columns of `re+imi`
//!   cells, or JSON with nested rows.
//! - PhaseFunction: CSV matrix (x-major rows) behind a `# M=…,L=…,a=…`
//!   header line, JSON with nested rows, plus an `x,y,abs` heatmap table.
//! - OperatorMatrix: CSV of d rows x d columns of `re+imi` cells or nested
//!   JSON.
//! - LatticeCoeffs: CSV rows k,l,re,im.
//! - FactoredOperator: JSON `{"grid":…,"factors":[{"phi":…,"psi":…},…]}`.
//! - VectorField: JSON with a shape header [L, M/a, a].
//! - SuiteReport and PipelineReport: JSON documents, and a CSV summary for
//!   the pipeline.

use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::benedicks::{PipelineReport, Verdict};
use crate::error::{Error, Result};
use crate::grid::{GridSpec, Signal};
use crate::heisenberg::PhasePoint;
use crate::nullfield::VectorField;
use crate::operator::{FactoredOperator, OperatorMatrix};
use crate::periodization::{LatticeCoeffs, OmegaFunction};
use crate::verify::SuiteReport;
use crate::weyl::PhaseFunction;
use crate::zak::ZakArray;

/// Requested serialization of a command's output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!(
                "unknown format '{other}', expected csv or json"
            ))),
        }
    }

    /// Guess from the file extension, defaulting to CSV.
    pub fn detect(path: &str) -> Format {
        match path.rsplit('.').next() {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

pub fn read_text(path: &str) -> Result<String> {
    std::fs::read_to_string(Path::new(path)).map_err(|source| Error::Io {
        path: path.to_string(),
        source,
    })
}

pub fn write_text(path: &str, content: &str) -> Result<()> {
    std::fs::write(Path::new(path), content).map_err(|source| Error::Io {
        path: path.to_string(),
        source,
    })
}

/// 17 significant digits: parses back to the identical f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// One complex CSV cell, `re+imi` or `re-imi`, each part in the
/// [`fmt_f64`] format.
pub fn fmt_complex_cell(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", fmt_f64(z.re), fmt_f64(-z.im))
    } else {
        format!("{}+{}i", fmt_f64(z.re), fmt_f64(z.im))
    }
}

fn fmt_pair(z: Complex64) -> String {
    format!("[{},{}]", fmt_f64(z.re), fmt_f64(z.im))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_f64(s: &str, line: usize, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| parse_err(line, format!("cannot read {what} from '{}'", s.trim())))
}

fn parse_usize(s: &str, line: usize, what: &str) -> Result<usize> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("cannot read {what} from '{}'", s.trim())))
}

/// Reads one complex cell back; `line` labels parse errors with the source
/// row it came from.
pub fn parse_complex_cell(cell: &str, line: usize) -> Result<Complex64> {
    let s = cell.trim();
    let inner = s
        .strip_suffix('i')
        .ok_or_else(|| parse_err(line, format!("complex cell '{s}' must end with 'i'")))?;
    let bytes = inner.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && bytes[i - 1] != b'e' && bytes[i - 1] != b'E' {
            split = Some(i);
            break;
        }
    }
    let i =
        split.ok_or_else(|| parse_err(line, format!("complex cell '{s}' has no imaginary part")))?;
    let re = parse_f64(&inner[..i], line, "real part")?;
    let sign = if bytes[i] == b'-' { -1.0 } else { 1.0 };
    let im = parse_f64(&inner[i + 1..], line, "imaginary part")?;
    Ok(Complex64::new(re, sign * im))
}

fn grid_json(grid: GridSpec) -> String {
    format!(
        "{{\"M\":{},\"L\":{},\"a\":{}}}",
        grid.samples_per_unit(),
        grid.period_units(),
        grid.lattice_param()
    )
}

fn escape_json(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

// ---- Signal ----

pub fn signal_to_csv(s: &Signal) -> String {
    let mut out = String::new();
    for v in s.values() {
        out.push_str(&fmt_f64(v.re));
        out.push(',');
        out.push_str(&fmt_f64(v.im));
        out.push('\n');
    }
    out
}

pub fn signal_from_csv(grid: GridSpec, text: &str) -> Result<Signal> {
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut cols = trimmed.split(',');
        let re = parse_f64(
            cols.next()
                .ok_or_else(|| parse_err(line, "missing re column"))?,
            line,
            "re",
        )?;
        let im = parse_f64(
            cols.next()
                .ok_or_else(|| parse_err(line, "missing im column"))?,
            line,
            "im",
        )?;
        if cols.next().is_some() {
            return Err(parse_err(line, "expected exactly two columns re,im"));
        }
        values.push(Complex64::new(re, im));
    }
    Signal::from_values(grid, values)
}

pub fn signal_to_json(s: &Signal) -> String {
    let pairs: Vec<String> = s.values().iter().map(|&z| fmt_pair(z)).collect();
    format!(
        "{{\"grid\":{},\"values\":[{}]}}\n",
        grid_json(s.grid()),
        pairs.join(",")
    )
}

#[derive(Deserialize)]
struct PairsFile {
    grid: GridSpec,
    values: Vec<[f64; 2]>,
}

pub fn signal_from_json(text: &str) -> Result<Signal> {
    let file: PairsFile = serde_json::from_str(text)?;
    file.grid.validate()?;
    let values = file
        .values
        .into_iter()
        .map(|[re, im]| Complex64::new(re, im))
        .collect();
    Signal::from_values(file.grid, values)
}

// ---- row-major complex tables (ZakArray, OmegaFunction) ----

fn table_to_csv(rows: usize, cols: usize, value: impl Fn(usize, usize) -> Complex64) -> String {
    let mut out = String::new();
    for j in 0..rows {
        let cells: Vec<String> = (0..cols).map(|m| fmt_complex_cell(value(j, m))).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn table_from_csv(
    rows: usize,
    cols: usize,
    text: &str,
    mut sink: impl FnMut(usize, usize, Complex64),
) -> Result<()> {
    let mut row = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if row >= rows {
            return Err(parse_err(line, format!("expected only {rows} data rows")));
        }
        let cells: Vec<&str> = trimmed.split(',').collect();
        if cells.len() != cols {
            return Err(parse_err(
                line,
                format!("expected {cols} columns, found {}", cells.len()),
            ));
        }
        for (m, cell) in cells.iter().enumerate() {
            sink(row, m, parse_complex_cell(cell, line)?);
        }
        row += 1;
    }
    if row != rows {
        return Err(parse_err(
            text.lines().count(),
            format!("expected {rows} data rows, found {row}"),
        ));
    }
    Ok(())
}

fn table_to_json(
    grid: GridSpec,
    rows: usize,
    cols: usize,
    key: &str,
    value: impl Fn(usize, usize) -> Complex64,
) -> String {
    let row_strs: Vec<String> = (0..rows)
        .map(|j| {
            let cells: Vec<String> = (0..cols).map(|m| fmt_pair(value(j, m))).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!(
        "{{\"grid\":{},\"{key}\":[{}]}}\n",
        grid_json(grid),
        row_strs.join(",")
    )
}

#[derive(Deserialize)]
struct NestedFile {
    grid: GridSpec,
    #[serde(alias = "entries")]
    values: Vec<Vec<[f64; 2]>>,
}

fn nested_from_json(text: &str, rows: usize, cols: usize) -> Result<(GridSpec, Vec<Complex64>)> {
    let file: NestedFile = serde_json::from_str(text)?;
    file.grid.validate()?;
    let (want_rows, want_cols) = (rows, cols);
    if file.values.len() != want_rows {
        return Err(Error::LengthMismatch {
            expected: want_rows,
            got: file.values.len(),
        });
    }
    let mut flat = Vec::with_capacity(want_rows * want_cols);
    for row in &file.values {
        if row.len() != want_cols {
            return Err(Error::LengthMismatch {
                expected: want_cols,
                got: row.len(),
            });
        }
        flat.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
    }
    Ok((file.grid, flat))
}

pub fn zak_to_csv(z: &ZakArray) -> String {
    let g = z.grid();
    table_to_csv(g.period_units(), g.samples_per_unit(), |j, m| z.value(j, m))
}

pub fn zak_from_csv(grid: GridSpec, text: &str) -> Result<ZakArray> {
    let mut z = ZakArray::zeros(grid);
    table_from_csv(
        grid.period_units(),
        grid.samples_per_unit(),
        text,
        |j, m, v| z.set_value(j, m, v),
    )?;
    Ok(z)
}

pub fn zak_to_json(z: &ZakArray) -> String {
    let g = z.grid();
    table_to_json(g, g.period_units(), g.samples_per_unit(), "values", |j, m| {
        z.value(j, m)
    })
}

pub fn zak_from_json(text: &str) -> Result<ZakArray> {
    let probe: NestedFile = serde_json::from_str(text)?;
    probe.grid.validate()?;
    let g = probe.grid;
    let (grid, flat) = nested_from_json(text, g.period_units(), g.samples_per_unit())?;
    let mut z = ZakArray::zeros(grid);
    for j in 0..grid.period_units() {
        for m in 0..grid.samples_per_unit() {
            z.set_value(j, m, flat[j * grid.samples_per_unit() + m]);
        }
    }
    Ok(z)
}

pub fn omega_to_csv(g: &OmegaFunction) -> String {
    let spec = g.grid();
    table_to_csv(spec.period_units(), spec.samples_per_unit(), |j, m| {
        g.value(j, m)
    })
}

pub fn omega_from_csv(grid: GridSpec, text: &str) -> Result<OmegaFunction> {
    let mut values = vec![Complex64::new(0.0, 0.0); grid.dim()];
    table_from_csv(
        grid.period_units(),
        grid.samples_per_unit(),
        text,
        |j, m, v| values[j * grid.samples_per_unit() + m] = v,
    )?;
    OmegaFunction::from_values(grid, values)
}

pub fn omega_to_json(g: &OmegaFunction) -> String {
    let spec = g.grid();
    table_to_json(
        spec,
        spec.period_units(),
        spec.samples_per_unit(),
        "values",
        |j, m| g.value(j, m),
    )
}

pub fn omega_from_json(text: &str) -> Result<OmegaFunction> {
    let probe: NestedFile = serde_json::from_str(text)?;
    probe.grid.validate()?;
    let g = probe.grid;
    let (grid, flat) = nested_from_json(text, g.period_units(), g.samples_per_unit())?;
    OmegaFunction::from_values(grid, flat)
}

// ---- PhaseFunction ----

pub fn phase_to_csv(f: &PhaseFunction) -> String {
    let g = f.grid();
    let mut out = format!(
        "# M={},L={},a={}\n",
        g.samples_per_unit(),
        g.period_units(),
        g.lattice_param()
    );
    let d = g.dim();
    out.push_str(&table_to_csv(d, d, |ix, iy| f.value(ix, iy)));
    out
}

/// Reads the `# M=…,L=…,a=…` header and then the d x d matrix.
pub fn phase_from_csv(text: &str) -> Result<PhaseFunction> {
    let mut grid = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if let Some(header) = trimmed.strip_prefix('#') {
            let mut m = None;
            let mut l = None;
            let mut a = None;
            for part in header.split(',') {
                let mut kv = part.splitn(2, '=');
                let key = kv.next().unwrap_or("").trim();
                let value = kv
                    .next()
                    .ok_or_else(|| parse_err(line, format!("header entry '{part}' needs '='")))?;
                match key {
                    "M" => m = Some(parse_usize(value, line, "M")?),
                    "L" => l = Some(parse_usize(value, line, "L")?),
                    "a" => a = Some(parse_usize(value, line, "a")?),
                    other => {
                        return Err(parse_err(line, format!("unknown header key '{other}'")));
                    }
                }
            }
            match (m, l, a) {
                (Some(m), Some(l), Some(a)) => grid = Some(GridSpec::new(m, l, a)?),
                _ => return Err(parse_err(line, "header must set M, L and a")),
            }
            break;
        }
        if !trimmed.is_empty() {
            return Err(parse_err(line, "expected '# M=…,L=…,a=…' header first"));
        }
    }
    let grid = grid.ok_or_else(|| parse_err(1, "missing '# M=…,L=…,a=…' header"))?;
    let d = grid.dim();
    let mut values = vec![Complex64::new(0.0, 0.0); d * d];
    table_from_csv(d, d, text, |ix, iy, v| values[ix * d + iy] = v)?;
    PhaseFunction::from_values(grid, values)
}

pub fn phase_to_json(f: &PhaseFunction) -> String {
    let d = f.grid().dim();
    table_to_json(f.grid(), d, d, "values", |ix, iy| f.value(ix, iy))
}

pub fn phase_from_json(text: &str) -> Result<PhaseFunction> {
    let probe: NestedFile = serde_json::from_str(text)?;
    probe.grid.validate()?;
    let d = probe.grid.dim();
    let (grid, flat) = nested_from_json(text, d, d)?;
    PhaseFunction::from_values(grid, flat)
}

/// Plot-ready rows x,y,abs over the whole phase-space grid.
pub fn phase_heatmap_csv(f: &PhaseFunction) -> String {
    let g = f.grid();
    let d = g.dim();
    let mut out = String::from("x,y,abs\n");
    for ix in 0..d {
        for iy in 0..d {
            let x = ix as f64 / g.samples_per_unit() as f64;
            let y = iy as f64 / g.period_units() as f64;
            out.push_str(&format!(
                "{},{},{}\n",
                fmt_f64(x),
                fmt_f64(y),
                fmt_f64(f.value(ix, iy).norm())
            ));
        }
    }
    out
}

// ---- OperatorMatrix ----

pub fn matrix_to_csv(t: &OperatorMatrix) -> String {
    let d = t.grid().dim();
    table_to_csv(d, d, |i, j| t.entry(i, j))
}

pub fn matrix_from_csv(grid: GridSpec, text: &str) -> Result<OperatorMatrix> {
    let d = grid.dim();
    let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
    table_from_csv(d, d, text, |i, j, v| entries[i * d + j] = v)?;
    OperatorMatrix::from_entries(grid, entries)
}

pub fn matrix_to_json(t: &OperatorMatrix) -> String {
    let d = t.grid().dim();
    table_to_json(t.grid(), d, d, "entries", |i, j| t.entry(i, j))
}

pub fn matrix_from_json(text: &str) -> Result<OperatorMatrix> {
    #[derive(Deserialize)]
    struct MatrixFile {
        grid: GridSpec,
        entries: Vec<Vec<[f64; 2]>>,
    }
    let file: MatrixFile = serde_json::from_str(text)?;
    file.grid.validate()?;
    let d = file.grid.dim();
    if file.entries.len() != d {
        return Err(Error::LengthMismatch {
            expected: d,
            got: file.entries.len(),
        });
    }
    let mut entries = Vec::with_capacity(d * d);
    for row in &file.entries {
        if row.len() != d {
            return Err(Error::LengthMismatch {
                expected: d,
                got: row.len(),
            });
        }
        entries.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
    }
    OperatorMatrix::from_entries(file.grid, entries)
}

// ---- LatticeCoeffs ----

pub fn coeffs_to_csv(c: &LatticeCoeffs) -> String {
    let g = c.grid();
    let mut out = String::from("k,l,re,im\n");
    for k in 0..g.dual_k_count() {
        for l in 0..g.samples_per_unit() {
            let v = c.value(k, l);
            out.push_str(&format!(
                "{k},{l},{},{}\n",
                fmt_f64(v.re),
                fmt_f64(v.im)
            ));
        }
    }
    out
}

pub fn coeffs_to_json(c: &LatticeCoeffs) -> String {
    let g = c.grid();
    table_to_json(g, g.dual_k_count(), g.samples_per_unit(), "values", |k, l| {
        c.value(k, l)
    })
}

pub fn coeffs_from_csv(grid: GridSpec, text: &str) -> Result<LatticeCoeffs> {
    let mut c = LatticeCoeffs::zeros(grid);
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with("k,") {
            continue;
        }
        let cols: Vec<&str> = trimmed.split(',').collect();
        if cols.len() != 4 {
            return Err(parse_err(line, "expected four columns k,l,re,im"));
        }
        let k = parse_usize(cols[0], line, "k")?;
        let l = parse_usize(cols[1], line, "l")?;
        if k >= grid.dual_k_count() || l >= grid.samples_per_unit() {
            return Err(parse_err(
                line,
                format!(
                    "window index ({k},{l}) outside 0..{} x 0..{}",
                    grid.dual_k_count(),
                    grid.samples_per_unit()
                ),
            ));
        }
        let re = parse_f64(cols[2], line, "re")?;
        let im = parse_f64(cols[3], line, "im")?;
        c.set_value(k, l, Complex64::new(re, im));
    }
    Ok(c)
}

// ---- FactoredOperator ----

pub fn factored_to_json(x: &FactoredOperator) -> String {
    let factor_strs: Vec<String> = x
        .factors()
        .iter()
        .map(|(phi, psi)| {
            let p: Vec<String> = phi.values().iter().map(|&z| fmt_pair(z)).collect();
            let q: Vec<String> = psi.values().iter().map(|&z| fmt_pair(z)).collect();
            format!("{{\"phi\":[{}],\"psi\":[{}]}}", p.join(","), q.join(","))
        })
        .collect();
    format!(
        "{{\"grid\":{},\"factors\":[{}]}}\n",
        grid_json(x.grid()),
        factor_strs.join(",")
    )
}

pub fn factored_from_json(text: &str) -> Result<FactoredOperator> {
    #[derive(Deserialize)]
    struct FactorPair {
        phi: Vec<[f64; 2]>,
        psi: Vec<[f64; 2]>,
    }
    #[derive(Deserialize)]
    struct FactoredFile {
        grid: GridSpec,
        factors: Vec<FactorPair>,
    }
    let file: FactoredFile = serde_json::from_str(text)?;
    file.grid.validate()?;
    let mut factors = Vec::with_capacity(file.factors.len());
    for f in file.factors {
        let phi = Signal::from_values(
            file.grid,
            f.phi.into_iter().map(|[re, im]| Complex64::new(re, im)).collect(),
        )?;
        let psi = Signal::from_values(
            file.grid,
            f.psi.into_iter().map(|[re, im]| Complex64::new(re, im)).collect(),
        )?;
        factors.push((phi, psi));
    }
    FactoredOperator::new(file.grid, factors)
}

// ---- VectorField ----

pub fn field_to_json(f: &VectorField) -> String {
    let g = f.grid();
    let pairs: Vec<String> = f.values().iter().map(|&z| fmt_pair(z)).collect();
    format!(
        "{{\"grid\":{},\"shape\":[{},{},{}],\"values\":[{}]}}\n",
        grid_json(g),
        g.period_units(),
        g.sub_len(),
        g.lattice_param(),
        pairs.join(",")
    )
}

pub fn field_from_json(text: &str) -> Result<VectorField> {
    #[derive(Deserialize)]
    struct FieldFile {
        grid: GridSpec,
        shape: [usize; 3],
        values: Vec<[f64; 2]>,
    }
    let file: FieldFile = serde_json::from_str(text)?;
    file.grid.validate()?;
    let g = file.grid;
    let want = [g.period_units(), g.sub_len(), g.lattice_param()];
    if file.shape != want {
        return Err(Error::Config(format!(
            "field shape {:?} does not match the grid's {:?}",
            file.shape, want
        )));
    }
    if file.values.len() != g.dim() {
        return Err(Error::LengthMismatch {
            expected: g.dim(),
            got: file.values.len(),
        });
    }
    let mut out = VectorField::zeros(g);
    let mut it = file.values.into_iter();
    for j in 0..g.period_units() {
        for m in 0..g.sub_len() {
            for i in 0..g.lattice_param() {
                let [re, im] = it.next().expect("length checked");
                out.set_value(j, m, i, Complex64::new(re, im));
            }
        }
    }
    Ok(out)
}

// ---- reports ----

pub fn suite_report_to_json(r: &SuiteReport) -> String {
    let checks: Vec<String> = r
        .checks
        .iter()
        .map(|c| {
            format!(
                "{{\"name\":\"{}\",\"max_error\":{},\"tolerance\":{},\"pass\":{}}}",
                escape_json(&c.name),
                fmt_f64(c.max_error),
                fmt_f64(c.tolerance),
                c.pass
            )
        })
        .collect();
    let seed = match r.seed {
        Some(s) => s.to_string(),
        None => "null".to_string(),
    };
    format!(
        "{{\"suite\":\"{}\",\"grid\":{},\"seed\":{},\"checks\":[{}],\"pass\":{}}}\n",
        escape_json(&r.suite),
        grid_json(r.grid),
        seed,
        checks.join(","),
        r.pass
    )
}

pub fn suite_report_from_json(text: &str) -> Result<SuiteReport> {
    Ok(serde_json::from_str(text)?)
}

pub fn pipeline_report_to_json(r: &PipelineReport) -> String {
    let records: Vec<String> = r
        .records
        .iter()
        .map(|rec| {
            format!(
                "{{\"v_x_steps\":{},\"v_y_steps\":{},\"section_size\":{},\"tilde_norm\":{},\"sigma_min\":{},\"residual\":{},\"verdict\":\"{}\"}}",
                rec.v_x_steps,
                rec.v_y_steps,
                rec.section_size,
                fmt_f64(rec.tilde_norm),
                fmt_f64(rec.sigma_min),
                fmt_f64(rec.residual),
                rec.verdict.label()
            )
        })
        .collect();
    format!(
        "{{\"grid\":{},\"threshold\":{},\"max_symbol_abs\":{},\"support_count\":{},\"support_measure\":{},\"operator_norm\":{},\"records\":[{}],\"verdict\":\"{}\"}}\n",
        grid_json(r.grid),
        fmt_f64(r.threshold),
        fmt_f64(r.max_symbol_abs),
        r.support_count,
        fmt_f64(r.support_measure),
        fmt_f64(r.operator_norm),
        records.join(","),
        r.verdict.label()
    )
}

pub fn pipeline_report_from_json(text: &str) -> Result<PipelineReport> {
    Ok(serde_json::from_str(text)?)
}

/// The summary table: one row per sampled shift, coordinates as reals.
pub fn pipeline_report_to_csv(r: &PipelineReport) -> String {
    let g = r.grid;
    let mut out = String::from("v_x,v_y,section_size,norm,sigma_min,residual,verdict\n");
    for rec in &r.records {
        let v = PhasePoint::new(g, rec.v_x_steps, rec.v_y_steps);
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt_f64(v.x_value()),
            fmt_f64(v.y_value()),
            rec.section_size,
            fmt_f64(rec.tilde_norm),
            fmt_f64(rec.sigma_min),
            fmt_f64(rec.residual),
            rec.verdict.label()
        ));
    }
    out
}

pub fn verdict_from_label(s: &str) -> Result<Verdict> {
    match s {
        "zero" => Ok(Verdict::Zero),
        "nonzero" => Ok(Verdict::Nonzero),
        "inconsistent-truncation" => Ok(Verdict::InconsistentTruncation),
        other => Err(Error::Config(format!("unknown verdict '{other}'"))),
    }
}
