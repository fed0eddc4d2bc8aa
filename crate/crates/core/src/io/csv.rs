//! Trajectory CSV: one row per logged step, numbers at 9 significant digits.
//!
//! Columns, with `i` an agent id and `k` a ring position (`k = 0` is the
//! gap ahead of the sensing agent):
//!
//! | column | meaning |
//! |---|---|
//! | `t` | time, s |
//! | `c_x`, `c_y`, `r` | true centre and radius |
//! | `c_hat_x`, `c_hat_y`, `r_hat` | broadcast estimates |
//! | `c_hat_dot_x`, `c_hat_dot_y`, `r_hat_dot` | broadcast estimate rates |
//! | `p{i}_x`, `p{i}_y` | agent position |
//! | `beta{k}` | gap to the next agent in ring order, rad |
//! | `dc{i}`, `db{i}` | true distance to the centre and to the boundary |
//! | `u{i}_x`, `u{i}_y` | applied control |

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::sim::Row;

/// Formats `v` with 9 significant digits, switching to exponent notation
/// outside `[1e-5, 1e9)`.
pub fn fmt_sig9(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let e = v.abs().log10().floor() as i32;
    if (-5..9).contains(&e) {
        format!("{:.*}", (8 - e) as usize, v)
    } else {
        format!("{v:.8e}")
    }
}

pub fn header(n: usize) -> Vec<String> {
    let mut h: Vec<String> = [
        "t", "c_x", "c_y", "r", "c_hat_x", "c_hat_y", "r_hat", "c_hat_dot_x", "c_hat_dot_y", "r_hat_dot",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for i in 0..n {
        h.push(format!("p{i}_x"));
        h.push(format!("p{i}_y"));
    }
    h.extend((0..n).map(|k| format!("beta{k}")));
    h.extend((0..n).map(|i| format!("dc{i}")));
    h.extend((0..n).map(|i| format!("db{i}")));
    for i in 0..n {
        h.push(format!("u{i}_x"));
        h.push(format!("u{i}_y"));
    }
    h
}

fn row_values(row: &Row) -> Vec<f64> {
    let mut v = vec![
        row.t,
        row.c.x,
        row.c.y,
        row.r,
        row.c_hat.x,
        row.c_hat.y,
        row.r_hat,
        row.c_hat_dot.x,
        row.c_hat_dot.y,
        row.r_hat_dot,
    ];
    v.extend(row.positions.iter().flat_map(|p| [p.x, p.y]));
    v.extend(&row.beta);
    v.extend(&row.dc);
    v.extend(&row.db);
    v.extend(row.u.iter().flat_map(|u| [u.x, u.y]));
    v
}

pub fn write_trajectory<W: Write>(out: &mut W, rows: &[Row]) -> io::Result<()> {
    let n = rows.first().map_or(0, |r| r.positions.len());
    writeln!(out, "{}", header(n).join(","))?;
    let mut line = String::new();
    for row in rows {
        line.clear();
        for (j, v) in row_values(row).into_iter().enumerate() {
            if j > 0 {
                line.push(',');
            }
            let _ = write!(line, "{}", fmt_sig9(v));
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

#[derive(Debug, Error)]
pub enum CsvError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

/// A numeric CSV read back by column name.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }
}

pub fn read_table<R: BufRead>(input: R) -> Result<Table, CsvError> {
    let mut lines = input.lines();
    let header: Vec<String> = match lines.next() {
        Some(h) => h?.split(',').map(|s| s.trim().to_string()).collect(),
        None => return Err(CsvError::Format { line: 1, message: "empty file".into() }),
    };
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| CsvError::Format { line: i + 2, message: e.to_string() })?;
        if row.len() != header.len() {
            return Err(CsvError::Format {
                line: i + 2,
                message: format!("{} fields, header has {}", row.len(), header.len()),
            });
        }
        rows.push(row);
    }
    Ok(Table { header, rows })
}
