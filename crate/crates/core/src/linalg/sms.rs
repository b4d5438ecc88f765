//! The SMS sparse text format: a header `rows cols M`, one line `i j value`
//! per entry with 1-based indices, and the terminator `0 0 0`.

use super::{LinalgError, SparseMatrix};
use crate::rational::{fmt_q, parse_q};

pub fn to_sms(m: &SparseMatrix) -> String {
    let mut out = format!("{} {} M\n", m.rows(), m.cols());
    for (i, j, x) in m.triplets() {
        out.push_str(&format!("{} {} {}\n", i + 1, j + 1, fmt_q(&x)));
    }
    out.push_str("0 0 0\n");
    out
}

pub fn from_sms(text: &str) -> Result<SparseMatrix, LinalgError> {
    let err = |s: String| LinalgError::Parse(s);
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| err("empty input".into()))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 3 || h[2] != "M" {
        return Err(err(format!("bad header `{header}`")));
    }
    let rows: usize = h[0].parse().map_err(|_| err(format!("bad row count `{}`", h[0])))?;
    let cols: usize = h[1].parse().map_err(|_| err(format!("bad column count `{}`", h[1])))?;
    let mut entries = Vec::new();
    let mut terminated = false;
    for line in lines.by_ref() {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 3 {
            return Err(err(format!("bad entry `{line}`")));
        }
        if f == ["0", "0", "0"] {
            terminated = true;
            break;
        }
        let i: usize = f[0].parse().map_err(|_| err(format!("bad row `{}`", f[0])))?;
        let j: usize = f[1].parse().map_err(|_| err(format!("bad column `{}`", f[1])))?;
        let x = parse_q(f[2]).ok_or_else(|| err(format!("bad value `{}`", f[2])))?;
        if i == 0 || j == 0 {
            return Err(err(format!("indices are 1-based: `{line}`")));
        }
        entries.push((i - 1, j - 1, x));
    }
    if !terminated {
        return Err(err("missing terminator `0 0 0`".into()));
    }
    if let Some(extra) = lines.next() {
        return Err(err(format!("data after terminator: `{extra}`")));
    }
    SparseMatrix::from_triplets(rows, cols, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    #[test]
    fn round_trip() {
        let m = SparseMatrix::from_triplets(2, 3, [(0, 0, q(1)), (1, 2, q_frac(-1, 2))]).unwrap();
        let s = to_sms(&m);
        assert_eq!(s, "2 3 M\n1 1 1\n2 3 -1/2\n0 0 0\n");
        assert_eq!(from_sms(&s).unwrap(), m);
    }

    #[test]
    fn rejects_malformed() {
        assert!(from_sms("2 2 M\n1 1 1\n").is_err());
        assert!(from_sms("2 2\n0 0 0\n").is_err());
        assert!(from_sms("2 2 M\n3 1 1\n0 0 0\n").is_err());
        assert!(from_sms("2 2 M\n0 1 1\n0 0 0\n").is_err());
    }
}
