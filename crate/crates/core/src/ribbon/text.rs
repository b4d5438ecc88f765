//! One-line text records for ribbon graphs.
//!
//! ```text
//! d g m n k / alpha: a-b c-d ... / sigma: (x y ...)(...) / colors: W1 B ... / boundaries: l1 l2 ... / +1
//! ```
//!
//! `sigma` lists one cycle per vertex and `colors` gives the colour of each
//! listed cycle in the same order. `boundaries` gives the label of each cycle
//! of `phi = sigma ∘ alpha`, cycles ordered by their minimal dart. The last
//! field is the orientation sign relative to the standard word. A zero-dart
//! graph is written with an empty `alpha:` field and `sigma: ()`.

use super::{Color, GraphError, RibbonGraph};

pub(crate) fn print_graph(g: &RibbonGraph) -> String {
    let b = g.bidegree();
    let mut alpha = Vec::new();
    for x in 0..g.dart_count() {
        let y = g.alpha()[x] as usize;
        if x < y {
            alpha.push(format!("{x}-{y}"));
        }
    }
    let mut sigma = String::new();
    let mut colors = Vec::new();
    for v in 0..g.vertex_count() {
        let darts: Vec<String> = g.vertex_darts(v).iter().map(|x| x.to_string()).collect();
        sigma.push_str(&format!("({})", darts.join(" ")));
        colors.push(match g.color(v) {
            Color::White(l) => format!("W{l}"),
            Color::Black => "B".to_string(),
        });
    }
    let mut labels = Vec::new();
    if g.is_zero_dart() {
        labels.push("1".to_string());
    } else {
        let mut seen = vec![false; g.dart_count()];
        for x in 0..g.dart_count() {
            if seen[x] {
                continue;
            }
            let mut y = x;
            while !seen[y] {
                seen[y] = true;
                y = g.phi(y as u8) as usize;
            }
            labels.push(g.boundary_of(x as u8).to_string());
        }
    }
    let alpha = alpha.join(" ");
    let sep = if alpha.is_empty() { "" } else { " " };
    format!(
        "{} {} {} {} {} / alpha:{sep}{alpha} / sigma: {sigma} / colors: {} / boundaries: {} / {}",
        g.d,
        b.g,
        b.m,
        b.n,
        b.k,
        colors.join(" "),
        labels.join(" "),
        if g.sign < 0 { "-1" } else { "+1" }
    )
}

fn err(msg: impl Into<String>) -> GraphError {
    GraphError::Parse(msg.into())
}

fn field<'a>(part: &'a str, key: &str) -> Result<&'a str, GraphError> {
    part.trim()
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .map(str::trim)
        .ok_or_else(|| err(format!("expected field `{key}:`")))
}

fn num(s: &str) -> Result<usize, GraphError> {
    s.parse().map_err(|_| err(format!("bad number `{s}`")))
}

pub fn parse_graph(line: &str) -> Result<RibbonGraph, GraphError> {
    let parts: Vec<&str> = line.split('/').collect();
    if parts.len() != 6 {
        return Err(err("expected 6 `/`-separated fields"));
    }
    let header: Vec<i64> = parts[0]
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| err(format!("bad header value `{t}`"))))
        .collect::<Result<_, _>>()?;
    if header.len() != 5 {
        return Err(err("header must be `d g m n k`"));
    }
    let d = header[0] as i32;

    let mut pairs = Vec::new();
    for tok in field(parts[1], "alpha")?.split_whitespace() {
        let (a, b) = tok.split_once('-').ok_or_else(|| err(format!("bad pair `{tok}`")))?;
        pairs.push((num(a)?, num(b)?));
    }
    let nd = 2 * pairs.len();
    let mut alpha = vec![usize::MAX; nd];
    for &(a, b) in &pairs {
        if a >= nd || b >= nd || alpha[a] != usize::MAX || alpha[b] != usize::MAX {
            return Err(GraphError::Involution(a.min(nd.saturating_sub(1))));
        }
        alpha[a] = b;
        alpha[b] = a;
    }

    let sig = field(parts[2], "sigma")?;
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for chunk in sig.split(')') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let body = chunk.strip_prefix('(').ok_or_else(|| err("sigma cycles must be parenthesised"))?;
        cycles.push(body.split_whitespace().map(num).collect::<Result<_, _>>()?);
    }
    if nd == 0 && cycles.is_empty() {
        cycles.push(Vec::new());
    }
    let colors: Vec<Color> = field(parts[3], "colors")?
        .split_whitespace()
        .map(|t| match t {
            "B" => Ok(Color::Black),
            w => w
                .strip_prefix('W')
                .and_then(|l| l.parse().ok())
                .map(Color::White)
                .ok_or_else(|| err(format!("bad colour `{w}`"))),
        })
        .collect::<Result<_, _>>()?;
    if colors.len() != cycles.len() {
        return Err(err("one colour per sigma cycle is required"));
    }
    let labels: Vec<u8> = field(parts[4], "boundaries")?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| err(format!("bad label `{t}`"))))
        .collect::<Result<_, _>>()?;
    let sign = match parts[5].trim() {
        "+1" | "1" => 1,
        "-1" => -1,
        s => return Err(err(format!("bad sign `{s}`"))),
    };

    let mut sigma = vec![usize::MAX; nd];
    let mut keyed: Vec<(usize, Color)> = Vec::new();
    for (cyc, &c) in cycles.iter().zip(&colors) {
        for (i, &x) in cyc.iter().enumerate() {
            if x >= nd || sigma[x] != usize::MAX {
                return Err(GraphError::NotAPermutation);
            }
            sigma[x] = cyc[(i + 1) % cyc.len()];
        }
        keyed.push((cyc.iter().copied().min().unwrap_or(0), c));
    }
    if sigma.contains(&usize::MAX) {
        return Err(GraphError::NotAPermutation);
    }
    keyed.sort_by_key(|&(m, _)| m);
    let colors: Vec<Color> = keyed.into_iter().map(|(_, c)| c).collect();
    let g = RibbonGraph::build(&alpha, &sigma, &colors, &labels, d)?;
    let b = g.bidegree();
    let found = [b.g, b.m, b.n, b.k].map(|x| x as i64);
    if found != header[1..] {
        return Err(err(format!(
            "header ({} {} {} {}) does not match the graph ({} {} {} {})",
            header[1], header[2], header[3], header[4], found[0], found[1], found[2], found[3]
        )));
    }
    Ok(g.with_sign(sign))
}
