//! Matrix file ingestion: dense CSV, Matrix Market coordinate files, and a
//! small JSON format. Every parse error carries the offending line.

use std::path::Path;

use blockdet::{ArithmeticMode, Matrix, Scalar};

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    DenseCsv,
    MatrixMarket,
    Json,
}

/// Pick a format from the file extension: `.csv`, `.mtx`/`.mm`, `.json`.
pub fn detect_format(path: &Path) -> CliResult<MatrixFormat> {
    match path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .as_deref()
    {
        Some("csv") => Ok(MatrixFormat::DenseCsv),
        Some("mtx") | Some("mm") => Ok(MatrixFormat::MatrixMarket),
        Some("json") => Ok(MatrixFormat::Json),
        _ => Err(CliError::Usage(format!(
            "cannot infer a matrix format from {:?}; pass --format",
            path
        ))),
    }
}

/// Read and parse a matrix file in the declared format and arithmetic mode.
pub fn parse_matrix(path: &Path, format: MatrixFormat, mode: ArithmeticMode) -> CliResult<Matrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {path:?}: {e}")))?;
    let name = path.display().to_string();
    match format {
        MatrixFormat::DenseCsv => parse_dense_csv(&name, &text, mode),
        MatrixFormat::MatrixMarket => parse_matrix_market(&name, &text, mode),
        MatrixFormat::Json => parse_json(&name, &text, mode),
    }
}

fn scalar(text: &str, mode: ArithmeticMode) -> blockdet::Result<Scalar> {
    match mode {
        ArithmeticMode::Exact => Scalar::parse_exact(text),
        ArithmeticMode::Float => Scalar::parse_float(text),
    }
}

fn parse_dense_csv(name: &str, text: &str, mode: ArithmeticMode) -> CliResult<Matrix> {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<Scalar> = line
            .split(',')
            .map(|cell| scalar(cell, mode))
            .collect::<blockdet::Result<_>>()
            .map_err(|e| CliError::Parse(format!("{name}:{}: {e}", lineno + 1)))?;
        rows.push(row);
    }
    let n = rows.len();
    if let Some(bad) = rows.iter().position(|r| r.len() != n) {
        return Err(CliError::Parse(format!(
            "{name}: dimension error: row {} has {} entries for {} rows",
            bad + 1,
            rows[bad].len(),
            n
        )));
    }
    Matrix::from_rows(rows).map_err(|e| CliError::Parse(format!("{name}: {e}")))
}

fn parse_matrix_market(name: &str, text: &str, mode: ArithmeticMode) -> CliResult<Matrix> {
    let mut lines = text.lines().enumerate();
    let (_, banner) = lines
        .next()
        .ok_or_else(|| CliError::Parse(format!("{name}: empty file")))?;
    let tokens: Vec<String> = banner
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if tokens.first().map(String::as_str) != Some("%%matrixmarket") {
        return Err(CliError::Parse(format!(
            "{name}:1: missing %%MatrixMarket banner"
        )));
    }
    let expect = |idx: usize, allowed: &[&str]| -> CliResult<String> {
        let got = tokens
            .get(idx)
            .ok_or_else(|| CliError::Parse(format!("{name}:1: truncated banner")))?;
        if allowed.contains(&got.as_str()) {
            Ok(got.clone())
        } else {
            Err(CliError::Parse(format!(
                "{name}:1: unsupported banner field {got:?} (supported: {allowed:?})"
            )))
        }
    };
    expect(1, &["matrix"])?;
    expect(2, &["coordinate"])?;
    expect(3, &["integer", "real"])?;
    expect(4, &["general"])?;

    let mut dims: Option<(usize, usize, usize)> = None;
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    for (lineno, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let human = lineno + 1;
        if dims.is_none() {
            if fields.len() != 3 {
                return Err(CliError::Parse(format!(
                    "{name}:{human}: size line needs `rows cols nnz`"
                )));
            }
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| CliError::Parse(format!("{name}:{human}: invalid size {s:?}")))
            };
            let (r, c, nnz) = (parse(fields[0])?, parse(fields[1])?, parse(fields[2])?);
            if r != c {
                return Err(CliError::Parse(format!(
                    "{name}:{human}: dimension error: {r}x{c} matrix is not square"
                )));
            }
            dims = Some((r, c, nnz));
            continue;
        }
        if fields.len() != 3 {
            return Err(CliError::Parse(format!(
                "{name}:{human}: entry needs `row col value`"
            )));
        }
        let (n, _, _) = dims.unwrap();
        let idx = |s: &str| -> CliResult<usize> {
            let v: usize = s
                .parse()
                .map_err(|_| CliError::Parse(format!("{name}:{human}: invalid index {s:?}")))?;
            if v == 0 || v > n {
                return Err(CliError::Parse(format!(
                    "{name}:{human}: index {v} outside 1..={n}"
                )));
            }
            Ok(v)
        };
        let (r, c) = (idx(fields[0])?, idx(fields[1])?);
        let v = scalar(fields[2], mode)
            .map_err(|e| CliError::Parse(format!("{name}:{human}: {e}")))?;
        if entries.iter().any(|&(er, ec, _)| (er, ec) == (r, c)) {
            return Err(CliError::Parse(format!(
                "{name}:{human}: duplicate entry for ({r}, {c})"
            )));
        }
        entries.push((r, c, v));
    }
    let Some((n, _, nnz)) = dims else {
        return Err(CliError::Parse(format!("{name}: missing size line")));
    };
    if entries.len() != nnz {
        return Err(CliError::Parse(format!(
            "{name}: header promises {nnz} entries, found {}",
            entries.len()
        )));
    }
    let mut m = match mode {
        ArithmeticMode::Exact => Matrix::zeros(n),
        ArithmeticMode::Float => Matrix::zeros(n).to_float(),
    };
    for (r, c, v) in entries {
        m.set(r - 1, c - 1, v);
    }
    Ok(m)
}

/// `{"n": N, "entries": [[row, col, value], ...]}`, 1-based indices; the
/// value may be a number or a string (`"p/q"` works in exact mode). A
/// wrapper object with a `"matrix"` key, as written by `gen`, is unwrapped.
fn parse_json(name: &str, text: &str, mode: ArithmeticMode) -> CliResult<Matrix> {
    let root: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("{name}:{}: {e}", e.line())))?;
    let doc = root.get("matrix").unwrap_or(&root);
    let n = doc
        .get("n")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| CliError::Parse(format!("{name}: missing integer field \"n\"")))?
        as usize;
    let entries = doc
        .get("entries")
        .and_then(serde_json::Value::as_array)
        .ok_or_else(|| CliError::Parse(format!("{name}: missing array field \"entries\"")))?;
    let mut m = match mode {
        ArithmeticMode::Exact => Matrix::zeros(n),
        ArithmeticMode::Float => Matrix::zeros(n).to_float(),
    };
    for (i, e) in entries.iter().enumerate() {
        let fail = |msg: String| CliError::Parse(format!("{name}: entries[{i}]: {msg}"));
        let triple = e
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| fail("expected [row, col, value]".into()))?;
        let idx = |v: &serde_json::Value, what: &str| -> CliResult<usize> {
            let raw = v
                .as_u64()
                .ok_or_else(|| fail(format!("{what} must be a positive integer")))?
                as usize;
            if raw == 0 || raw > n {
                return Err(fail(format!("{what} {raw} outside 1..={n}")));
            }
            Ok(raw)
        };
        let (r, c) = (idx(&triple[0], "row")?, idx(&triple[1], "col")?);
        let literal = match &triple[2] {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(num) => num.to_string(),
            other => return Err(fail(format!("value {other} is not numeric"))),
        };
        let v = scalar(&literal, mode).map_err(|e| fail(e.to_string()))?;
        m.set(r - 1, c - 1, v);
    }
    Ok(m)
}

/// Nonzero entries of `m` as a JSON matrix document (the `parse_json`
/// schema), sorted by row then column.
pub fn matrix_to_json(m: &Matrix) -> serde_json::Value {
    let mut entries = Vec::new();
    for i in 0..m.order() {
        for j in 0..m.order() {
            let v = m.get(i, j);
            if !v.is_zero() {
                entries.push(serde_json::json!([i + 1, j + 1, literal_value(v)]));
            }
        }
    }
    serde_json::json!({ "n": m.order(), "entries": entries })
}

fn literal_value(s: &Scalar) -> serde_json::Value {
    match s {
        Scalar::Int(v) => {
            // keep plain JSON numbers where they fit, strings beyond
            match i64::try_from(v.clone()) {
                Ok(small) => serde_json::json!(small),
                Err(_) => serde_json::json!(v.to_string()),
            }
        }
        other => serde_json::json!(other.to_string()),
    }
}
