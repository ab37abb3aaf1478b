//! Plain-text tensor files.
//!
//! ```text
//! # comment
//! m n
//! dense
//! v1 v2 ... v_{n^m}          (row-major, any line breaks)
//! ```
//!
//! or
//!
//! ```text
//! m n
//! coo
//! i1 i2 ... im value         (1-based; unlisted entries are zero)
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{checked_len, unravel, DenseTensor};
use crate::error::{Result, ZeigError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorFormat {
    Dense,
    Coo,
}

pub fn read_tensor(path: impl AsRef<Path>) -> Result<DenseTensor> {
    let text = fs::read_to_string(path)?;
    text.parse()
}

pub fn write_tensor(path: impl AsRef<Path>, a: &DenseTensor, format: TensorFormat) -> Result<()> {
    fs::write(path, a.to_text(format))?;
    Ok(())
}

fn parse_err(line: usize, msg: impl Into<String>) -> ZeigError {
    ZeigError::Parse {
        line,
        msg: msg.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

impl std::str::FromStr for DenseTensor {
    type Err = ZeigError;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "empty file"))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 2 {
            return Err(parse_err(hline, "expected header `m n`"));
        }
        let order: usize = head[0]
            .parse()
            .map_err(|_| parse_err(hline, format!("bad order `{}`", head[0])))?;
        let dim: usize = head[1]
            .parse()
            .map_err(|_| parse_err(hline, format!("bad dimension `{}`", head[1])))?;
        let len = checked_len(order, dim).map_err(|e| parse_err(hline, e.to_string()))?;

        let (kline, kind) = lines
            .next()
            .ok_or_else(|| parse_err(hline, "missing `dense` or `coo` line"))?;
        match kind {
            "dense" => {
                let mut values = Vec::with_capacity(len);
                for (ln, line) in lines {
                    for tok in line.split_whitespace() {
                        let v: f64 = tok
                            .parse()
                            .map_err(|_| parse_err(ln, format!("bad value `{tok}`")))?;
                        values.push(v);
                    }
                }
                if values.len() != len {
                    return Err(parse_err(
                        kline,
                        format!("expected {len} dense values, found {}", values.len()),
                    ));
                }
                DenseTensor::new(order, dim, values)
            }
            "coo" => {
                let mut values = vec![0.0; len];
                let mut seen = vec![false; len];
                for (ln, line) in lines {
                    let toks: Vec<&str> = line.split_whitespace().collect();
                    if toks.len() != order + 1 {
                        return Err(parse_err(
                            ln,
                            format!("expected {} indices and a value", order),
                        ));
                    }
                    let mut k = 0usize;
                    for tok in &toks[..order] {
                        let d: usize = tok
                            .parse()
                            .map_err(|_| parse_err(ln, format!("bad index `{tok}`")))?;
                        if d == 0 || d > dim {
                            return Err(parse_err(ln, format!("index {d} outside 1..={dim}")));
                        }
                        k = k * dim + (d - 1);
                    }
                    let v: f64 = toks[order]
                        .parse()
                        .map_err(|_| parse_err(ln, format!("bad value `{}`", toks[order])))?;
                    if seen[k] {
                        return Err(parse_err(ln, "duplicate entry"));
                    }
                    seen[k] = true;
                    values[k] = v;
                }
                DenseTensor::new(order, dim, values)
            }
            other => Err(parse_err(
                kline,
                format!("expected `dense` or `coo`, found `{other}`"),
            )),
        }
    }
}

impl DenseTensor {
    /// Serializes in the text format; values use shortest round-trip form.
    pub fn to_text(&self, format: TensorFormat) -> String {
        let mut out = format!("{} {}\n", self.order, self.dim);
        match format {
            TensorFormat::Dense => {
                out.push_str("dense\n");
                for row in self.values.chunks(self.dim) {
                    let line: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
                    out.push_str(&line.join(" "));
                    out.push('\n');
                }
            }
            TensorFormat::Coo => {
                out.push_str("coo\n");
                for (k, &v) in self.values.iter().enumerate() {
                    if v != 0.0 {
                        for d in unravel(k, self.order, self.dim) {
                            let _ = write!(out, "{} ", d + 1);
                        }
                        let _ = writeln!(out, "{v:?}");
                    }
                }
            }
        }
        out
    }
}
