//! Matrix Market coordinate format (`real`, `symmetric` or `general`).
//!
//! Writing always emits `symmetric` with lower-triangle entries, 1-based
//! indices and 17 significant digits so that a read reproduces every value.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use super::SymmetricSparseMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    Symmetric,
    General,
}

/// Parser over any buffered reader; `origin` is used in error messages.
pub struct MatrixMarketReader<R> {
    reader: R,
    origin: PathBuf,
}

impl<R: BufRead> MatrixMarketReader<R> {
    pub fn new(reader: R, origin: impl Into<PathBuf>) -> Self {
        Self {
            reader,
            origin: origin.into(),
        }
    }

    fn err(&self, line: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            path: self.origin.clone(),
            line,
            message: message.into(),
        }
    }

    pub fn read(mut self) -> Result<SymmetricSparseMatrix> {
        let mut lines = Vec::new();
        let mut buf = String::new();
        loop {
            buf.clear();
            let n = self.reader.read_line(&mut buf).map_err(|source| Error::Io {
                path: self.origin.clone(),
                source,
            })?;
            if n == 0 {
                break;
            }
            lines.push(buf.trim_end().to_string());
        }

        let header = lines.first().ok_or_else(|| self.err(1, "empty file"))?;
        let symmetry = self.parse_header(header)?;

        let mut body = lines
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));

        let (size_line, size) = body.next().ok_or_else(|| self.err(lines.len(), "missing size line"))?;
        let dims: Vec<&str> = size.split_whitespace().collect();
        if dims.len() != 3 {
            return Err(self.err(size_line, format!("expected `rows cols entries`, got `{size}`")));
        }
        let parse_usize = |s: &str, what: &str| {
            s.parse::<usize>()
                .map_err(|_| self.err(size_line, format!("invalid {what} `{s}`")))
        };
        let rows = parse_usize(dims[0], "row count")?;
        let cols = parse_usize(dims[1], "column count")?;
        let nnz = parse_usize(dims[2], "entry count")?;
        if rows != cols {
            return Err(self.err(size_line, format!("matrix must be square, got {rows}x{cols}")));
        }
        if rows == 0 {
            return Err(self.err(size_line, "matrix dimension must be positive"));
        }

        let mut triplets = Vec::with_capacity(nnz);
        for (line, text) in body {
            let fields: Vec<&str> = text.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(self.err(line, format!("expected `row col value`, got `{text}`")));
            }
            let i: usize = fields[0]
                .parse()
                .map_err(|_| self.err(line, format!("invalid row index `{}`", fields[0])))?;
            let j: usize = fields[1]
                .parse()
                .map_err(|_| self.err(line, format!("invalid column index `{}`", fields[1])))?;
            let v: f64 = fields[2]
                .parse()
                .map_err(|_| self.err(line, format!("invalid value `{}`", fields[2])))?;
            if i == 0 || j == 0 || i > rows || j > cols {
                return Err(self.err(line, format!("index ({i}, {j}) outside {rows}x{cols} matrix")));
            }
            if symmetry == Symmetry::Symmetric && j > i {
                return Err(self.err(
                    line,
                    format!("symmetric storage expects lower-triangle entries, got ({i}, {j})"),
                ));
            }
            triplets.push((line, i - 1, j - 1, v));
        }
        if triplets.len() != nnz {
            return Err(self.err(
                lines.len(),
                format!("header declares {nnz} entries, found {}", triplets.len()),
            ));
        }

        match symmetry {
            Symmetry::Symmetric => {
                SymmetricSparseMatrix::from_symmetric_triplets(rows, triplets.into_iter().map(|(_, i, j, v)| (i, j, v)))
            }
            Symmetry::General => {
                let lines_of: std::collections::HashMap<(usize, usize), usize> =
                    triplets.iter().map(|&(l, i, j, _)| ((i, j), l)).collect();
                SymmetricSparseMatrix::from_triplets(rows, triplets.iter().map(|&(_, i, j, v)| (i, j, v))).map_err(
                    |e| match e {
                        Error::NotSymmetric { row, col, value, mirror } => {
                            let line = lines_of
                                .get(&(row, col))
                                .or_else(|| lines_of.get(&(col, row)))
                                .copied()
                                .unwrap_or(0);
                            let detail = match mirror {
                                Some(w) => format!("entry ({}, {}) = {value} but mirror = {w}", row + 1, col + 1),
                                None => format!("entry ({}, {}) = {value} has no mirror entry", row + 1, col + 1),
                            };
                            self.err(line, format!("general matrix is not symmetric: {detail}"))
                        }
                        other => other,
                    },
                )
            }
        }
    }

    fn parse_header(&self, header: &str) -> Result<Symmetry> {
        let tokens: Vec<String> = header.split_whitespace().map(|t| t.to_ascii_lowercase()).collect();
        if tokens.len() != 5 || tokens[0] != "%%matrixmarket" {
            return Err(self.err(1, format!("malformed header `{header}`")));
        }
        if tokens[1] != "matrix" || tokens[2] != "coordinate" {
            return Err(self.err(1, "only `matrix coordinate` files are supported"));
        }
        if tokens[3] != "real" {
            return Err(self.err(1, format!("unsupported field `{}`, expected `real`", tokens[3])));
        }
        match tokens[4].as_str() {
            "symmetric" => Ok(Symmetry::Symmetric),
            "general" => Ok(Symmetry::General),
            other => Err(self.err(1, format!("unsupported symmetry `{other}`"))),
        }
    }
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<SymmetricSparseMatrix> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    MatrixMarketReader::new(BufReader::new(file), path).read()
}

/// Writes `a` as `coordinate real symmetric` (lower triangle).
pub fn write_matrix_market_to<W: Write>(a: &SymmetricSparseMatrix, mut w: W) -> std::io::Result<()> {
    let lower: Vec<(usize, usize, f64)> = a.triplets().filter(|&(i, j, _)| j <= i).collect();
    writeln!(w, "%%MatrixMarket matrix coordinate real symmetric")?;
    writeln!(w, "{} {} {}", a.dim(), a.dim(), lower.len())?;
    for (i, j, v) in lower {
        writeln!(w, "{} {} {:.16e}", i + 1, j + 1, v)?;
    }
    w.flush()
}

pub fn write_matrix_market(a: &SymmetricSparseMatrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    write_matrix_market_to(a, BufWriter::new(file)).map_err(io_err)
}
