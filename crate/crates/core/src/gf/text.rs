//! Matrix text format: a header line `q n l`, then `n` lines of `l`
//! space-separated residues. LF endings, no trailing whitespace.

use std::str::FromStr;

use super::{Field, Matrix};
use crate::error::{Error, Result};

impl Matrix {
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.field().order(), self.rows(), self.cols());
        out.push_str(&self.to_string());
        out
    }

    pub fn parse_text(text: &str) -> Result<Matrix> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::format(1, "missing header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [q, n, l] = fields[..] else {
            return Err(Error::format(1, "header must be `q n l`"));
        };
        let q: u8 = parse_num(q, 1)?;
        let field = Field::new(q).map_err(|e| Error::format(1, e.to_string()))?;
        let n: usize = parse_num(n, 1)?;
        let l: usize = parse_num(l, 1)?;
        if n == 0 || l == 0 {
            return Err(Error::format(1, "matrix dimensions must be positive"));
        }

        let mut data = Vec::with_capacity(n * l);
        let mut rows = 0;
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            if rows == n {
                return Err(Error::format(lineno, "more rows than declared"));
            }
            let before = data.len();
            for tok in line.split_whitespace() {
                let v: u8 = parse_num(tok, lineno)?;
                if v >= q {
                    return Err(Error::format(
                        lineno,
                        format!("residue {v} out of range for GF({q})"),
                    ));
                }
                data.push(v);
            }
            if data.len() - before != l {
                return Err(Error::format(
                    lineno,
                    format!("expected {l} entries, found {}", data.len() - before),
                ));
            }
            rows += 1;
        }
        if rows != n {
            return Err(Error::format(
                text.lines().count().max(1),
                format!("expected {n} rows, found {rows}"),
            ));
        }
        Matrix::from_vec(field, n, l, data)
    }
}

impl FromStr for Matrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Matrix> {
        Matrix::parse_text(s)
    }
}

pub(crate) fn parse_num<T: FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::format(line, format!("invalid number `{tok}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        let m = Matrix::from_rows(Field::GF3, &[[1u8, 2], [0, 1], [2, 2]]).unwrap();
        let text = m.to_text();
        assert_eq!(text, "3 3 2\n1 2\n0 1\n2 2\n");
        assert_eq!(Matrix::parse_text(&text).unwrap(), m);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Matrix::parse_text("2 2 2\n1 0\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 3, .. }), "{err}");
        let err = Matrix::parse_text("2 2 2\n1 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 2, .. }), "{err}");
        let err = Matrix::parse_text("4 1 1\n1\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 1, .. }), "{err}");
        assert!(Matrix::parse_text("2 2 1\n1\n").is_err());
    }
}
