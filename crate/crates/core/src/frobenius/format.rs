//! Plain text format for algebras:
//!
//! ```text
//! degree 2
//! basis 1:0 a:1 b:1 w:2
//! product a b = w
//! product a a = 0
//! orientation w = 1
//! differential a = 0
//! ```
//!
//! The first basis element is the unit. Every unordered pair of non-unit
//! elements needs a `product` line; the reversed order follows from graded
//! commutativity unless given too.

use num_traits::{One, Zero};

use super::{is_odd, sgn, FrobeniusError, PDAlgebra};
use crate::rational::{fmt_q, parse_q, Q};

fn parse_err(line: usize, msg: impl Into<String>) -> FrobeniusError {
    FrobeniusError::Parse { line, msg: msg.into() }
}

fn parse_vector(names: &[String], text: &str, line: usize) -> Result<Vec<Q>, FrobeniusError> {
    let mut v = vec![Q::zero(); names.len()];
    let text = text.trim();
    if text == "0" {
        return Ok(v);
    }
    let mut tokens = text.split_whitespace().peekable();
    let mut expect_term = true;
    let mut neg = false;
    while let Some(tok) = tokens.next() {
        match tok {
            "+" if !expect_term => expect_term = true,
            "-" if !expect_term => {
                expect_term = true;
                neg = true;
            }
            _ if expect_term => {
                let (c, name) = match parse_q(tok) {
                    Some(c) => (c, tokens.next().ok_or_else(|| parse_err(line, "coefficient without a basis element"))?),
                    None => match tok.strip_prefix('-') {
                        Some(rest) if !rest.is_empty() => (-Q::one(), rest),
                        _ => (Q::one(), tok),
                    },
                };
                let i = names.iter().position(|x| x == name).ok_or_else(|| parse_err(line, format!("unknown basis element {name:?}")))?;
                v[i] += if neg { -c } else { c };
                neg = false;
                expect_term = false;
            }
            _ => return Err(parse_err(line, format!("unexpected {tok:?}"))),
        }
    }
    if expect_term {
        return Err(parse_err(line, "incomplete sum"));
    }
    Ok(v)
}

impl PDAlgebra {
    pub fn parse(text: &str) -> Result<PDAlgebra, FrobeniusError> {
        let mut d: Option<i64> = None;
        let mut names: Vec<String> = Vec::new();
        let mut degrees: Vec<i64> = Vec::new();
        let mut products: Vec<(usize, String, String, String)> = Vec::new();
        let mut orientation: Vec<(usize, String, String)> = Vec::new();
        let mut differential: Vec<(usize, String, String)> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = no + 1;
            let raw = raw.split('#').next().unwrap_or("").trim();
            if raw.is_empty() {
                continue;
            }
            let (key, rest) = raw.split_once(char::is_whitespace).unwrap_or((raw, ""));
            let rest = rest.trim();
            let split_eq = || rest.split_once('=').ok_or_else(|| parse_err(line, "missing '='"));
            match key {
                "degree" => d = Some(rest.parse().map_err(|_| parse_err(line, "bad degree"))?),
                "basis" => {
                    for item in rest.split_whitespace() {
                        let (n, g) = item.split_once(':').ok_or_else(|| parse_err(line, format!("expected name:degree, got {item:?}")))?;
                        names.push(n.to_string());
                        degrees.push(g.parse().map_err(|_| parse_err(line, format!("bad degree in {item:?}")))?);
                    }
                }
                "product" => {
                    let (lhs, rhs) = split_eq()?;
                    let parts: Vec<&str> = lhs.split_whitespace().collect();
                    let [a, b] = parts.as_slice() else {
                        return Err(parse_err(line, "expected `product a b = ...`"));
                    };
                    products.push((line, a.to_string(), b.to_string(), rhs.to_string()));
                }
                "orientation" => {
                    let (lhs, rhs) = split_eq()?;
                    orientation.push((line, lhs.trim().to_string(), rhs.trim().to_string()));
                }
                "differential" => {
                    let (lhs, rhs) = split_eq()?;
                    differential.push((line, lhs.trim().to_string(), rhs.to_string()));
                }
                _ => return Err(parse_err(line, format!("unknown key {key:?}"))),
            }
        }
        let d = d.ok_or_else(|| parse_err(0, "missing `degree`"))?;
        let n = names.len();
        if n == 0 {
            return Err(parse_err(0, "missing `basis`"));
        }
        let index = |name: &str, line: usize| {
            names.iter().position(|x| x == name).ok_or_else(|| parse_err(line, format!("unknown basis element {name:?}")))
        };
        let mut table: Vec<Vec<Option<Vec<Q>>>> = vec![vec![None; n]; n];
        for i in 0..n {
            let e: Vec<Q> = (0..n).map(|k| if k == i { Q::one() } else { Q::zero() }).collect();
            table[0][i] = Some(e.clone());
            table[i][0] = Some(e);
        }
        let mut given = vec![vec![false; n]; n];
        for (line, a, b, rhs) in &products {
            let (i, j) = (index(a, *line)?, index(b, *line)?);
            table[i][j] = Some(parse_vector(&names, rhs, *line)?);
            given[i][j] = true;
        }
        for i in 1..n {
            for j in 1..n {
                if table[i][j].is_none() {
                    let Some(v) = table[j][i].clone().filter(|_| given[j][i]) else {
                        return Err(parse_err(0, format!("missing product {} {}", names[i], names[j])));
                    };
                    let s = sgn(is_odd(degrees[i] * degrees[j]));
                    table[i][j] = Some(v.into_iter().map(|x| x * &s).collect());
                }
            }
        }
        let product: Vec<Vec<Vec<Q>>> = table.into_iter().map(|r| r.into_iter().map(Option::unwrap).collect()).collect();
        let mut o = vec![Q::zero(); n];
        for (line, a, c) in &orientation {
            o[index(a, *line)?] = parse_q(c).ok_or_else(|| parse_err(*line, format!("bad coefficient {c:?}")))?;
        }
        let mut diff = vec![vec![Q::zero(); n]; n];
        for (line, a, rhs) in &differential {
            diff[index(a, *line)?] = parse_vector(&names, rhs, *line)?;
        }
        PDAlgebra::new(d, names, degrees, product, o, Some(diff))
    }

    pub fn to_text(&self) -> String {
        let n = self.dim();
        let mut out = format!("degree {}\nbasis", self.d);
        for i in 0..n {
            out.push_str(&format!(" {}:{}", self.names[i], self.degrees[i]));
        }
        out.push('\n');
        for i in 1..n {
            for j in i..n {
                out.push_str(&format!("product {} {} = {}\n", self.names[i], self.names[j], self.format_vector(&self.product[i][j])));
            }
        }
        for i in 0..n {
            if !self.orientation[i].is_zero() {
                out.push_str(&format!("orientation {} = {}\n", self.names[i], fmt_q(&self.orientation[i])));
            }
        }
        for i in 0..n {
            if self.differential[i].iter().any(|x| !x.is_zero()) {
                out.push_str(&format!("differential {} = {}\n", self.names[i], self.format_vector(&self.differential[i])));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn parses_the_two_sphere() {
        let a = PDAlgebra::parse("degree 2\nbasis 1:0 w:2\nproduct w w = 0\norientation w = 1\n").unwrap();
        assert_eq!(a, PDAlgebra::sphere(2).unwrap());
    }

    #[test]
    fn parses_cp2_as_truncated_polynomials() {
        let text = "# K[x]/(x^3)\ndegree 4\nbasis 1:0 x:2 x^2:4\nproduct x x = x^2\nproduct x x^2 = 0\nproduct x^2 x^2 = 0\norientation x^2 = 1\n";
        assert_eq!(PDAlgebra::parse(text).unwrap(), PDAlgebra::cp(2).unwrap());
    }

    #[test]
    fn zero_orientation_is_degenerate() {
        let r = PDAlgebra::parse("degree 2\nbasis 1:0 w:2\nproduct w w = 0\n");
        assert_eq!(r, Err(FrobeniusError::DegeneratePairing));
    }

    #[test]
    fn round_trips() {
        for a in [PDAlgebra::surface(2).unwrap(), PDAlgebra::cp(3).unwrap(), PDAlgebra::sphere(5).unwrap()] {
            assert_eq!(PDAlgebra::parse(&a.to_text()).unwrap(), a);
        }
    }

    #[test]
    fn sums_and_errors() {
        let names: Vec<String> = ["a", "b"].map(String::from).to_vec();
        assert_eq!(parse_vector(&names, "2 a - -1/2 b", 1).unwrap(), vec![q(2), Q::new(1.into(), 2.into())]);
        assert_eq!(parse_vector(&names, "-a + b", 1).unwrap(), vec![q(-1), q(1)]);
        assert!(parse_vector(&names, "a +", 1).is_err());
        assert!(parse_vector(&names, "c", 1).is_err());
        assert!(matches!(PDAlgebra::parse("degree 2\nbasis 1:0 a:1 b:1 w:2\norientation w = 1\n"), Err(FrobeniusError::Parse { .. })));
    }
}
