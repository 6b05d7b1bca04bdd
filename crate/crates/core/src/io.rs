//! File formats: multiplication tables (text and JSON) and the sparse
//! matrix interchange format.
//!
//! Table text format: line 1 is the order `n`, lines 2..n+1 hold `n`
//! space-separated 0-based indices each, and an optional trailing
//! `# names: a,b,c` line carries display labels.
//!
//! Sparse matrix text format: a `rows cols nnz` header followed by one
//! `row col value` triple per line.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::SparseMat;
use crate::semigroup::{FiniteSemigroup, SemigroupError};

#[derive(Debug, Error)]
pub enum TableIoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("invalid JSON table: {0}")]
    Json(#[from] serde_json::Error),
}

/// JSON-facing table document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl TableFile {
    pub fn from_semigroup(s: &FiniteSemigroup) -> Self {
        TableFile {
            order: s.order(),
            table: s.table_rows(),
            names: s.names().map(<[String]>::to_vec),
        }
    }

    pub fn into_semigroup(self) -> Result<FiniteSemigroup, TableIoError> {
        if self.table.len() != self.order {
            return Err(TableIoError::Parse {
                line: 0,
                message: format!(
                    "declared order {} but table has {} rows",
                    self.order,
                    self.table.len()
                ),
            });
        }
        let s = FiniteSemigroup::from_table(&self.table)?;
        match self.names {
            Some(names) if names.len() == s.order() => Ok(s.with_names(names)),
            Some(names) => Err(TableIoError::Parse {
                line: 0,
                message: format!("expected {} names, found {}", s.order(), names.len()),
            }),
            None => Ok(s),
        }
    }
}

pub fn parse_table_text(input: &str) -> Result<FiniteSemigroup, TableIoError> {
    let mut lines = input
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (line_no, first) = lines.next().ok_or(TableIoError::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let order: usize = first.trim().parse().map_err(|_| TableIoError::Parse {
        line: line_no + 1,
        message: format!("expected the order, found {first:?}"),
    })?;
    let mut rows = Vec::with_capacity(order);
    let mut names: Option<Vec<String>> = None;
    for (line_no, line) in lines {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(list) = rest.strip_prefix("names:") {
                names = Some(list.split(',').map(|s| s.trim().to_string()).collect());
            }
            continue;
        }
        if rows.len() == order {
            return Err(TableIoError::Parse {
                line: line_no + 1,
                message: "more rows than the declared order".into(),
            });
        }
        let row: Vec<usize> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| TableIoError::Parse {
                line: line_no + 1,
                message: "rows must be space-separated element indices".into(),
            })?;
        rows.push(row);
    }
    if rows.len() != order {
        return Err(TableIoError::Parse {
            line: 0,
            message: format!("expected {} rows, found {}", order, rows.len()),
        });
    }
    let s = FiniteSemigroup::from_table(&rows)?;
    match names {
        Some(names) if names.len() == s.order() => Ok(s.with_names(names)),
        Some(names) => Err(TableIoError::Parse {
            line: 0,
            message: format!("expected {} names, found {}", s.order(), names.len()),
        }),
        None => Ok(s),
    }
}

pub fn table_to_text(s: &FiniteSemigroup) -> String {
    let mut out = format!("{}\n", s.order());
    for row in s.table_rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    // The names line is comma-separated, so names containing commas or
    // newlines only survive in the JSON format.
    if let Some(names) = s.names() {
        if names.iter().all(|n| !n.contains(',') && !n.contains('\n')) {
            out.push_str("# names: ");
            out.push_str(&names.join(","));
            out.push('\n');
        }
    }
    out
}

pub fn parse_table_json(input: &str) -> Result<FiniteSemigroup, TableIoError> {
    let file: TableFile = serde_json::from_str(input)?;
    file.into_semigroup()
}

pub fn table_to_json(s: &FiniteSemigroup) -> String {
    serde_json::to_string_pretty(&TableFile::from_semigroup(s)).expect("serializable")
}

/// Loads a table file, auto-detecting JSON by a leading `{`.
pub fn load_table_file(path: &Path) -> Result<FiniteSemigroup, TableIoError> {
    let content = std::fs::read_to_string(path)?;
    if content.trim_start().starts_with('{') {
        parse_table_json(&content)
    } else {
        parse_table_text(&content)
    }
}

pub fn sparse_matrix_to_text(m: &SparseMat) -> String {
    let mut out = format!("{} {} {}\n", m.rows(), m.cols(), m.nnz());
    for (r, c, v) in m.triplets() {
        out.push_str(&format!("{r} {c} {v}\n"));
    }
    out
}

pub fn parse_sparse_matrix(input: &str) -> Result<SparseMat, TableIoError> {
    let mut lines = input
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (line_no, header) = lines.next().ok_or(TableIoError::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let parse_usize = |s: &str, line: usize| {
        s.parse::<usize>().map_err(|_| TableIoError::Parse {
            line,
            message: format!("expected an integer, found {s:?}"),
        })
    };
    if parts.len() != 3 {
        return Err(TableIoError::Parse {
            line: line_no + 1,
            message: "header must be 'rows cols nnz'".into(),
        });
    }
    let rows = parse_usize(parts[0], line_no + 1)?;
    let cols = parse_usize(parts[1], line_no + 1)?;
    let nnz = parse_usize(parts[2], line_no + 1)?;
    let mut triplets = Vec::with_capacity(nnz.min(1 << 20));
    let mut seen = std::collections::HashSet::new();
    for (line_no, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(TableIoError::Parse {
                line: line_no + 1,
                message: "entries must be 'row col value'".into(),
            });
        }
        let r = parse_usize(parts[0], line_no + 1)?;
        let c = parse_usize(parts[1], line_no + 1)?;
        let v = BigInt::from_str(parts[2]).map_err(|_| TableIoError::Parse {
            line: line_no + 1,
            message: format!("bad integer value {:?}", parts[2]),
        })?;
        if r >= rows || c >= cols {
            return Err(TableIoError::Parse {
                line: line_no + 1,
                message: format!("entry ({r}, {c}) out of bounds for {rows}x{cols}"),
            });
        }
        if !seen.insert((r, c)) {
            return Err(TableIoError::Parse {
                line: line_no + 1,
                message: format!("duplicate entry at ({r}, {c})"),
            });
        }
        triplets.push((r, c, v));
    }
    if triplets.len() != nnz {
        return Err(TableIoError::Parse {
            line: 0,
            message: format!("header declared {} entries, found {}", nnz, triplets.len()),
        });
    }
    Ok(SparseMat::from_triplets(rows, cols, triplets))
}
