//! Plain-text file formats.
//!
//! Matrix text: one row per line, decimal integers separated by spaces,
//! `#` starts a comment. A code file is a `q n k` header line followed by
//! k generator rows. A Gram file is a `dim <n>` header followed by the
//! symmetric matrix, optionally followed by `basis <scale>` and the ambient
//! basis rows.

use std::fmt::Write as _;
use std::path::Path;

use crate::algebra::{FpMatrix, ZMatrix};
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::lattices::GramLattice;

/// Lines with comments stripped, tokenized to integers.
fn integer_lines(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        for tok in line.split_whitespace() {
            match tok.parse::<i64>() {
                Ok(v) => row.push(v),
                Err(_) => {
                    return Err(Error::Parse(format!(
                        "line {}: expected an integer, found {tok:?}",
                        lineno + 1
                    )))
                }
            }
        }
        if !row.is_empty() {
            out.push(row);
        }
    }
    Ok(out)
}

/// Like `integer_lines` but keeps one leading word per line, for section
/// headers such as `dim 12` or `basis 5`.
fn tagged_lines(text: &str) -> Result<Vec<(Option<String>, Vec<i64>)>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut tag = None;
        let mut row = Vec::new();
        for (i, tok) in line.split_whitespace().enumerate() {
            match tok.parse::<i64>() {
                Ok(v) => row.push(v),
                Err(_) if i == 0 => tag = Some(tok.to_string()),
                Err(_) => {
                    return Err(Error::Parse(format!(
                        "line {}: expected an integer, found {tok:?}",
                        lineno + 1
                    )))
                }
            }
        }
        if tag.is_some() || !row.is_empty() {
            out.push((tag, row));
        }
    }
    Ok(out)
}

/// Parse a code file: `q n k` header, then k generator rows of n entries.
///
/// The declared k must match the actual rank; dependent or repeated rows
/// are rejected rather than silently canonicalized away.
pub fn parse_code(text: &str) -> Result<LinearCode> {
    let lines = integer_lines(text)?;
    let Some((header, rows)) = lines.split_first() else {
        return Err(Error::Parse("empty code file".into()));
    };
    let [q, n, k] = header[..] else {
        return Err(Error::Parse(format!(
            "header must be exactly `q n k`, found {} numbers",
            header.len()
        )));
    };
    let q = u8::try_from(q).map_err(|_| Error::Parse(format!("modulus {q} out of range")))?;
    let n = usize::try_from(n).map_err(|_| Error::Parse(format!("bad length {n}")))?;
    let k = usize::try_from(k).map_err(|_| Error::Parse(format!("bad dimension {k}")))?;
    if rows.len() != k {
        return Err(Error::Parse(format!("expected {k} generator rows, found {}", rows.len())));
    }
    let mut entries = Vec::with_capacity(k * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Parse(format!(
                "generator row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        entries.extend_from_slice(row);
    }
    let code = LinearCode::from_generator(&FpMatrix::new(q, k, n, entries)?);
    if code.dim() != k {
        return Err(Error::Parse(format!(
            "generator rows are dependent: declared dimension {k}, actual {}",
            code.dim()
        )));
    }
    Ok(code)
}

/// Render a code in the file format, using its canonical generator.
pub fn write_code(code: &LinearCode) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", code.p(), code.len(), code.dim());
    for row in code.generator().rows_iter() {
        let words: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", words.join(" "));
    }
    out
}

/// Parse a Gram file: `dim <n>`, n matrix rows, then optionally
/// `basis <scale>` with n ambient basis rows. When a basis is present the
/// Gram section must match the Gram matrix the basis induces.
pub fn parse_gram(text: &str) -> Result<GramLattice> {
    let lines = tagged_lines(text)?;
    let mut iter = lines.into_iter();
    let Some((Some(tag), head)) = iter.next() else {
        return Err(Error::Parse("gram file must start with a `dim <n>` header".into()));
    };
    if tag != "dim" || head.len() != 1 {
        return Err(Error::Parse(format!("expected `dim <n>` header, found `{tag}`")));
    }
    let n = usize::try_from(head[0]).map_err(|_| Error::Parse(format!("bad dim {}", head[0])))?;

    let mut gram_entries = Vec::with_capacity(n * n);
    for i in 0..n {
        let Some((None, row)) = iter.next() else {
            return Err(Error::Parse(format!("gram matrix row {} missing", i + 1)));
        };
        if row.len() != n {
            return Err(Error::Parse(format!(
                "gram row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        gram_entries.extend_from_slice(&row);
    }
    let gram = ZMatrix::new(n, n, gram_entries)?;

    match iter.next() {
        None => GramLattice::new(gram),
        Some((Some(tag), head)) if tag == "basis" && head.len() == 1 => {
            let scale = head[0];
            let mut rows = Vec::new();
            let mut width = None;
            for (i, (t, row)) in iter.enumerate() {
                if t.is_some() {
                    return Err(Error::Parse(format!("unexpected section inside basis row {}", i + 1)));
                }
                match width {
                    None => width = Some(row.len()),
                    Some(w) if w != row.len() => {
                        return Err(Error::Parse(format!(
                            "basis row {} has {} entries, expected {w}",
                            i + 1,
                            row.len()
                        )))
                    }
                    Some(_) => {}
                }
                rows.push(row);
            }
            if rows.len() != n {
                return Err(Error::Parse(format!("expected {n} basis rows, found {}", rows.len())));
            }
            let width = width.unwrap_or(0);
            let coords =
                ZMatrix::new(n, width, rows.into_iter().flatten().collect::<Vec<i64>>())?;
            let lattice = GramLattice::from_ambient_basis(coords, scale)?;
            if lattice.gram() != &gram {
                return Err(Error::Parse(
                    "gram section disagrees with the gram induced by the basis".into(),
                ));
            }
            Ok(lattice)
        }
        Some((tag, _)) => Err(Error::Parse(format!(
            "expected `basis <scale>` section, found {tag:?}"
        ))),
    }
}

/// Render a lattice in the Gram file format, including the basis section
/// when provenance is present.
pub fn write_gram(lattice: &GramLattice) -> String {
    let n = lattice.dim();
    let mut out = String::new();
    let _ = writeln!(out, "dim {n}");
    for r in 0..n {
        let words: Vec<String> = (0..n).map(|c| lattice.gram().get(r, c).to_string()).collect();
        let _ = writeln!(out, "{}", words.join(" "));
    }
    if let Some(basis) = lattice.ambient_basis() {
        let _ = writeln!(out, "basis {}", basis.scale());
        let coords = basis.coords();
        for r in 0..coords.rows() {
            let words: Vec<String> =
                (0..coords.cols()).map(|c| coords.get(r, c).to_string()).collect();
            let _ = writeln!(out, "{}", words.join(" "));
        }
    }
    out
}

pub fn read_code_file(path: impl AsRef<Path>) -> Result<LinearCode> {
    parse_code(&std::fs::read_to_string(path)?)
}

pub fn read_gram_file(path: impl AsRef<Path>) -> Result<GramLattice> {
    parse_gram(&std::fs::read_to_string(path)?)
}
