//! File formats: JSON code descriptions, CSV and gnuplot tables, TOML configuration.

use std::io::Write;
use std::path::{Path, PathBuf};

use qcleb_core::galois::{coeff_string, parse_coeff_string, FieldPoly};
use qcleb_core::lebcode::Partition;
use qcleb_core::qcleb::QCLebCode;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labbench::{BerRow, RateRow, SyndromeStats};

/// A code as stored on disk. `g` is the ascending coefficient string of the generator.
/// Either `s` (number of blocks) or `l = s / p` gives the length; `n` and `k` are
/// informational and checked when present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDescription {
    #[serde(default = "default_q")]
    pub q: u32,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    pub p: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    pub g: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

fn default_q() -> u32 {
    2
}

impl CodeDescription {
    pub fn from_code(code: &QCLebCode) -> Self {
        let p = code.partition();
        CodeDescription {
            q: code.q() as u32,
            m: p.m(),
            s: Some(p.s()),
            p: p.p(),
            l: None,
            g: coeff_string(code.g().coeffs(), code.q()),
            t: Some(code.t()),
            n: Some(code.n()),
            k: Some(code.k()),
        }
    }

    pub fn partition(&self) -> Result<Partition> {
        let s = match (self.s, self.l) {
            (Some(s), None) => s,
            (None, Some(l)) => self.p * l,
            (Some(s), Some(l)) if s == self.p * l => s,
            (Some(s), Some(l)) => return Err(Error::Usage(format!("s = {s} does not match p * l = {}", self.p * l))),
            (None, None) => return Err(Error::Usage(String::from("code file needs s or l"))),
        };
        Ok(Partition::new(self.m, s, self.p)?)
    }

    /// Builds the code; a short coefficient string is padded with zeros.
    pub fn to_code(&self) -> Result<QCLebCode> {
        let partition = self.partition()?;
        let ctx = partition.ctx(self.q)?;
        let mut coeffs = parse_coeff_string(&self.g, ctx.q())?;
        if coeffs.len() > ctx.n() {
            return Err(qcleb_core::Error::LengthMismatch { expected: ctx.n(), got: coeffs.len() }.into());
        }
        coeffs.resize(ctx.n(), 0);
        let code = QCLebCode::new(&FieldPoly::from_vec(ctx, coeffs)?, partition)?;
        if let Some(n) = self.n.filter(|&n| n != code.n()) {
            return Err(Error::Usage(format!("code file says n = {n}, parameters give {}", code.n())));
        }
        if let Some(k) = self.k.filter(|&k| k != code.k()) {
            return Err(Error::Usage(format!("code file says k = {k}, generator gives {}", code.k())));
        }
        Ok(match self.t {
            Some(t) => code.with_t(t),
            None => code,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Tabular output formats for bench results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    /// Space-separated columns under a `#` header line.
    Gnuplot,
}

/// A header and rows of already formatted cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, out: W, format: Format) -> Result<()> {
        match format {
            Format::Csv => write_csv(out, self),
            Format::Gnuplot => write_gnuplot(out, self),
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        let mut buf = Vec::new();
        self.write(&mut buf, format)?;
        Ok(String::from_utf8(buf).expect("tables are ASCII"))
    }
}

pub fn write_csv<W: Write>(out: W, table: &Table) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_gnuplot<W: Write>(mut out: W, table: &Table) -> Result<()> {
    writeln!(out, "# {}", table.header.join(" "))?;
    for row in &table.rows {
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

/// Reads a CSV file back as header plus string rows.
pub fn read_csv(text: &str) -> Result<Table> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers()?.iter().map(str::to_string).collect();
    let rows = r.records().map(|rec| Ok(rec?.iter().map(str::to_string).collect())).collect::<Result<_>>()?;
    Ok(Table { header, rows })
}

/// `snr_db,raw_ber,post_ber,csep`, or `p_flip,...` for the binary symmetric channel.
pub fn ber_table(rows: &[BerRow], bsc: bool) -> Table {
    let mut t = Table::new(&[if bsc { "p_flip" } else { "snr_db" }, "raw_ber", "post_ber", "csep"]);
    for r in rows {
        t.push(vec![r.x.to_string(), r.raw_ber.to_string(), r.post_ber.to_string(), r.csep.to_string()]);
    }
    t
}

pub fn syndrome_table(stats: &SyndromeStats) -> Table {
    let mut t = Table::new(&["syndrome_hex", "count"]);
    for (k, v) in &stats.counts {
        t.push(vec![k.clone(), v.to_string()]);
    }
    t
}

/// Lags from 1; rho_0 = 1 is left out.
pub fn autocorr_table(rho: &[f64]) -> Table {
    let mut t = Table::new(&["lag", "rho"]);
    for (k, r) in rho.iter().enumerate().skip(1) {
        t.push(vec![k.to_string(), r.to_string()]);
    }
    t
}

pub fn rate_rows_table(rows: &[RateRow]) -> Table {
    let mut t = Table::new(&["n", "m", "rate"]);
    for r in rows {
        t.push(vec![r.n.to_string(), r.m.to_string(), r.rate_text()]);
    }
    t
}

/// Defaults read from `--config`; command-line flags take precedence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CliConfig {
    pub q: Option<u32>,
    pub m: Option<usize>,
    pub p: Option<usize>,
    pub l: Option<usize>,
    /// Number of blocks; gives l = s / p when l is not set.
    pub s: Option<usize>,
    /// Path to a JSON code description.
    pub generator: Option<PathBuf>,
    pub seed: Option<u64>,
    /// `faithful` or `extended`.
    pub mode: Option<String>,
    pub budget: Option<u64>,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
}

impl CliConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    /// l from `l`, or from `s / p`.
    pub fn l_for(&self, p: usize) -> Result<Option<usize>> {
        match (self.l, self.s) {
            (Some(l), _) => Ok(Some(l)),
            (None, Some(s)) if p > 0 && s % p == 0 => Ok(Some(s / p)),
            (None, Some(s)) => Err(Error::Usage(format!("s = {s} is not a multiple of p = {p}"))),
            (None, None) => Ok(None),
        }
    }
}
