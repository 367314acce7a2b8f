//! MeatAxe-style text matrices.
//!
//! Header line `mode q nrows ncols`, then one line per row. Mode 1 writes each
//! entry as a single digit with no separators (q ≤ 10); mode 3 writes entries
//! as space-separated integers. Writing then reading is the identity, and
//! reading then writing reproduces the input bytes for files we emit.

use thiserror::Error;

use super::field::Field;
use super::matrix::Matrix;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

fn perr(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

/// Writes a matrix, choosing packed digits when every entry is a single digit.
pub fn write_matrix(m: &Matrix) -> String {
    let q = m.field().order();
    let mode = if q <= 10 { 1 } else { 3 };
    let mut s = format!("{mode} {q} {} {}\n", m.nrows(), m.ncols());
    for r in m.rows() {
        if mode == 1 {
            s.extend(r.iter().map(|&x| char::from(b'0' + x)));
        } else {
            let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            s.push_str(&parts.join(" "));
        }
        s.push('\n');
    }
    s
}

/// Reads one matrix from the front of `lines`, advancing past it.
pub fn read_matrix_from<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<Matrix, FormatError> {
    let (hl, header) = lines.find(|(_, l)| !l.trim().is_empty()).ok_or_else(|| perr(0, "missing header"))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| perr(hl, format!("bad header token {t:?}"))))
        .collect::<Result<_, _>>()?;
    let [mode, q, rows, cols] = nums[..] else { return Err(perr(hl, "header needs: mode q nrows ncols")) };
    let field = Field::get(q).map_err(|e| perr(hl, e.to_string()))?;
    if mode != 1 && mode != 3 {
        return Err(perr(hl, format!("unsupported mode {mode}")));
    }
    if mode == 1 && q > 10 {
        return Err(perr(hl, "packed mode needs q ≤ 10"));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (ln, line) = lines.next().ok_or_else(|| perr(hl, "too few rows"))?;
        let row: Vec<usize> = if mode == 1 {
            line.trim()
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| perr(ln, format!("bad digit {c:?}"))))
                .collect::<Result<_, _>>()?
        } else {
            line.split_whitespace()
                .map(|t| t.parse().map_err(|_| perr(ln, format!("bad entry {t:?}"))))
                .collect::<Result<_, _>>()?
        };
        if row.len() != cols {
            return Err(perr(ln, format!("expected {cols} entries, found {}", row.len())));
        }
        for x in row {
            if x >= q {
                return Err(perr(ln, format!("entry {x} outside GF({q})")));
            }
            data.push(x as u8);
        }
    }
    Ok(Matrix::from_vec(field, rows, cols, data))
}

pub fn read_matrix(text: &str) -> Result<Matrix, FormatError> {
    let mut it = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    read_matrix_from(&mut it)
}

/// Reads consecutive matrices until the input is exhausted.
pub fn read_matrices(text: &str) -> Result<Vec<Matrix>, FormatError> {
    let mut it = text.lines().enumerate().map(|(i, l)| (i + 1, l)).peekable();
    let mut out = Vec::new();
    loop {
        while it.peek().is_some_and(|(_, l)| l.trim().is_empty()) {
            it.next();
        }
        if it.peek().is_none() {
            return Ok(out);
        }
        out.push(read_matrix_from(&mut it)?);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_byte_stable() {
        let f = Field::get(5).unwrap();
        let m = Matrix::from_ints(f, &[&[1, 2, 3], &[4, 0, 1]]);
        let text = write_matrix(&m);
        assert_eq!(text, "1 5 2 3\n123\n401\n");
        let back = read_matrix(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(write_matrix(&back), text);

        let f = Field::get(13).unwrap();
        let m = Matrix::from_ints(f, &[&[12, 0], &[3, 11]]);
        let text = write_matrix(&m);
        assert_eq!(text, "3 13 2 2\n12 0\n3 11\n");
        assert_eq!(write_matrix(&read_matrix(&text).unwrap()), text);
    }

    #[test]
    fn rejects_out_of_range_entries() {
        assert!(read_matrix("1 5 1 2\n57\n").is_err());
        assert!(read_matrix("1 5 1 2\n1\n").is_err());
    }

    #[test]
    fn several_matrices() {
        let ms = read_matrices("1 2 1 1\n1\n\n1 2 2 2\n01\n10\n").unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[1].get(0, 1), 1);
    }
}
