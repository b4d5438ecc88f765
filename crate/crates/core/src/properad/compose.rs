//! Substitution of a vertex into a boundary.
//!
//! The half-edges of the substituted vertex, in their cyclic order starting at
//! any of them, are distributed weakly monotonically over the corners of the
//! receiving boundary taken in walk order. The corner before a dart `y` lies
//! between `sigma^{-1}(y)` and `y` and belongs to the boundary of `y`.

use crate::rational::Q;
use crate::rational::sign_q;
use crate::ribbon::{canonical_parts, color_code, Color, Dart, GraphError, RibbonGraph, Sym};
use crate::sum::FormalSum;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum WordMode {
    /// Orientation word of the outer graph followed by that of the inner one.
    Concat,
    /// The symbol of the substituted black vertex is replaced by the inner word.
    Inline,
}

pub(crate) struct Relabel<'a> {
    pub outer_white: &'a dyn Fn(u8) -> u8,
    pub inner_white: &'a dyn Fn(u8) -> u8,
    pub outer_boundary: &'a dyn Fn(u8) -> u8,
    pub inner_boundary: &'a dyn Fn(u8) -> u8,
}

/// Calls `f` on every nondecreasing sequence of length `h` with values below `r`.
pub(crate) fn for_each_monotone(h: usize, r: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(seq: &mut Vec<usize>, h: usize, r: usize, f: &mut dyn FnMut(&[usize])) {
        if seq.len() == h {
            f(seq);
            return;
        }
        let lo = seq.last().copied().unwrap_or(0);
        for t in lo..r {
            seq.push(t);
            rec(seq, h, r, f);
            seq.pop();
        }
    }
    rec(&mut Vec::with_capacity(h), h, r, f);
}

/// Which attachments to generate: all, or those accepted by a predicate on
/// the rotation `s` and the corner sequence.
pub(crate) type Filter<'a> = Option<&'a dyn Fn(usize, &[usize]) -> bool>;

/// Substitutes vertex `v` of `outer` into boundary `j` of `inner` and emits
/// every resulting non-zero graph in canonical form with its sign.
pub(crate) fn substitute(
    outer: &RibbonGraph,
    v: usize,
    inner: &RibbonGraph,
    j: u8,
    mode: WordMode,
    rl: &Relabel,
    filter: Filter,
    emit: &mut dyn FnMut(RibbonGraph, i8),
) {
    let d = outer.d();
    let e1 = outer.dart_count();
    let off = e1 as Dart;
    let nd = e1 + inner.dart_count();
    let vd = outer.vertex_darts(v);

    let inner_word: Vec<Sym> = inner
        .standard_word()
        .into_iter()
        .map(|s| match s {
            Sym::Edge(a, b) => Sym::Edge(a + off, b + off),
            Sym::Black(y) => Sym::Black(y + off),
            Sym::LoneBlack => vd.first().map_or(Sym::LoneBlack, |&x| Sym::Black(x)),
        })
        .collect();
    let is_v = |s: &Sym| match *s {
        Sym::Black(x) => outer.vertex_of(x) == v,
        Sym::LoneBlack => true,
        Sym::Edge(..) => false,
    };
    let mut word: Vec<Sym> = Vec::with_capacity(outer.orientation_len() + inner_word.len());
    for s in outer.standard_word() {
        if mode == WordMode::Inline && is_v(&s) {
            word.extend_from_slice(&inner_word);
        } else {
            word.push(s);
        }
    }
    if mode == WordMode::Concat {
        word.extend_from_slice(&inner_word);
    }
    let base_sign = outer.or_sign() * inner.or_sign();
    let mut put = |g: RibbonGraph| {
        let (c, s) = g.canonicalize();
        if s != 0 {
            emit(c, s);
        }
    };

    let mut color = vec![Color::Black; nd];
    for x in 0..e1 {
        color[x] = outer.color(outer.vertex_of(x as Dart)).map_label(rl.outer_white);
    }
    for y in 0..inner.dart_count() {
        color[e1 + y] = inner.color(inner.vertex_of(y as Dart)).map_label(rl.inner_white);
    }

    if inner.is_zero_dart() {
        let c = inner.color(0).map_label(rl.inner_white);
        if vd.is_empty() {
            let g = RibbonGraph::zero_dart(d, c);
            let s = g.word_sign(&word);
            put(g.with_sign(base_sign * s));
            return;
        }
        for &x in &vd {
            color[x as usize] = c;
        }
        put(RibbonGraph::assemble(
            d,
            outer.alpha().to_vec(),
            outer.sigma().to_vec(),
            &color,
            |cyc| (rl.outer_boundary)(outer.boundary_of(cyc[0])),
            &word,
            base_sign,
        ));
        return;
    }
    if vd.is_empty() {
        put(RibbonGraph::assemble(
            d,
            inner.alpha().to_vec(),
            inner.sigma().to_vec(),
            &color,
            |cyc| {
                let l = inner.boundary_of(cyc[0]);
                if l == j {
                    (rl.outer_boundary)(1)
                } else {
                    (rl.inner_boundary)(l)
                }
            },
            &word,
            base_sign,
        ));
        return;
    }

    let mut alpha: Vec<Dart> = outer.alpha().to_vec();
    alpha.extend(inner.alpha().iter().map(|&y| y + off));
    let mut base_sigma: Vec<Dart> = outer.sigma().to_vec();
    base_sigma.extend(inner.sigma().iter().map(|&y| y + off));
    let code: Vec<u8> = color.iter().map(|&c| color_code(c)).collect();
    let ys = inner.boundary_walk(j);
    let before: Vec<Dart> = ys.iter().map(|&y| inner.sigma_inv(y) + off).collect();
    let corner_code: Vec<u8> = ys.iter().map(|&y| code[(y + off) as usize]).collect();
    let h = vd.len();
    let label = |cyc: &[Dart]| match cyc.iter().find(|&&x| (x as usize) < e1) {
        Some(&x) => (rl.outer_boundary)(outer.boundary_of(x)),
        None => (rl.inner_boundary)(inner.boundary_of(cyc[0] - off)),
    };
    let mut sigma = base_sigma.clone();
    let mut col = code.clone();
    for s in 0..h {
        for_each_monotone(h, ys.len(), &mut |f| {
            if filter.is_some_and(|keep| !keep(s, f)) {
                return;
            }
            sigma.copy_from_slice(&base_sigma);
            col.copy_from_slice(&code);
            let mut i = 0;
            for t in 0..ys.len() {
                let start = i;
                while i < h && f[i] == t {
                    i += 1;
                }
                if start == i {
                    continue;
                }
                let mut prev = before[t];
                for k in start..i {
                    let q = vd[(s + k) % h];
                    sigma[prev as usize] = q;
                    col[q as usize] = corner_code[t];
                    prev = q;
                }
                sigma[prev as usize] = ys[t] + off;
            }
            let (c, sign) = canonical_parts(d, &alpha, &sigma, &col, label, &word, base_sign);
            if sign != 0 {
                emit(c, sign);
            }
        });
    }
}

fn check_d(g1: &RibbonGraph, g2: &RibbonGraph) -> Result<(), GraphError> {
    if g1.d() != g2.d() {
        return Err(GraphError::DimensionMismatch(g1.d(), g2.d()));
    }
    Ok(())
}

/// `g1 i∘j g2`: white vertex `i` of `g1` is substituted into boundary `j` of
/// `g2`. Outputs are the boundaries of `g1` followed by those of `g2` except
/// `j`; inputs are the white vertices of `g1` except `i` followed by those of `g2`.
pub fn compose(g1: &RibbonGraph, i: u8, g2: &RibbonGraph, j: u8) -> Result<FormalSum, GraphError> {
    check_d(g1, g2)?;
    let n1 = g1.white_count() as u8;
    let m1 = g1.boundary_count() as u8;
    if i == 0 || i > n1 {
        return Err(GraphError::Index(format!("white vertex {i} of {n1}")));
    }
    if j == 0 || j as usize > g2.boundary_count() {
        return Err(GraphError::Index(format!("boundary {j} of {}", g2.boundary_count())));
    }
    let v = g1.white_vertex(i).expect("white label present");
    let ow = move |l: u8| if l < i { l } else { l - 1 };
    let iw = move |l: u8| l + n1 - 1;
    let ob = |b: u8| b;
    let ib = move |b: u8| if b < j { m1 + b } else { m1 + b - 1 };
    let rl = Relabel { outer_white: &ow, inner_white: &iw, outer_boundary: &ob, inner_boundary: &ib };
    let mut out = FormalSum::new();
    substitute(g1, v, g2, j, WordMode::Concat, &rl, None, &mut |g, s| out.add_canonical(g, sign_q(s)));
    Ok(out)
}

/// Substitutes white vertex `i` of `g` into its own boundary `j`, which must
/// not pass through that vertex. This realises a composition along two edges.
pub fn self_substitute(g: &RibbonGraph, i: u8, j: u8) -> Result<FormalSum, GraphError> {
    let v = g.white_vertex(i).ok_or_else(|| GraphError::Index(format!("white vertex {i}")))?;
    if j == 0 || j as usize > g.boundary_count() {
        return Err(GraphError::Index(format!("boundary {j}")));
    }
    let ys = g.boundary_walk(j);
    if ys.iter().any(|&y| g.vertex_of(y) == v) || ys.is_empty() {
        return Err(GraphError::Index(format!("boundary {j} touches white vertex {i}")));
    }
    let vd = g.vertex_darts(v);
    let h = vd.len();
    let before: Vec<Dart> = ys.iter().map(|&y| g.sigma_inv(y)).collect();
    let corner_color: Vec<Color> = ys.iter().map(|&y| g.color(g.vertex_of(y))).collect();
    let shift_w = |c: Color| c.map_label(|l| if l > i { l - 1 } else { l });
    let base_color: Vec<Color> = (0..g.dart_count()).map(|x| shift_w(g.color(g.vertex_of(x as Dart)))).collect();
    let word = g.standard_word();
    let mut out = FormalSum::new();
    let one = Q::from_integer(1.into());
    for s in 0..h {
        for_each_monotone(h, ys.len(), &mut |f| {
            let mut sigma = g.sigma().to_vec();
            let mut col = base_color.clone();
            let mut k = 0;
            for t in 0..ys.len() {
                let start = k;
                while k < h && f[k] == t {
                    k += 1;
                }
                if start == k {
                    continue;
                }
                let mut prev = before[t];
                for idx in start..k {
                    let q = vd[(s + idx) % h];
                    sigma[prev as usize] = q;
                    col[q as usize] = shift_w(corner_color[t]);
                    prev = q;
                }
                sigma[prev as usize] = ys[t];
            }
            let label = |cyc: &[Dart]| {
                let l = cyc.iter().map(|&x| g.boundary_of(x)).find(|&l| l != j).expect("boundary survives");
                if l > j {
                    l - 1
                } else {
                    l
                }
            };
            let h = RibbonGraph::assemble(g.d(), g.alpha().to_vec(), sigma, &col, label, &word, g.or_sign());
            out.add_graph(&h, &one);
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properad::generators::{bracket, coloop, unit};

    #[test]
    fn bracket_into_bracket_gives_two_paths() {
        for d in 0..4 {
            let s = compose(&bracket(d), 1, &bracket(d), 1).unwrap();
            assert_eq!(s.len(), 2);
            for (g, _) in s.iter() {
                assert_eq!((g.vertex_count(), g.edge_count(), g.boundary_count()), (3, 2, 1));
            }
        }
    }

    #[test]
    fn unit_laws() {
        for d in 0..4 {
            let c = coloop(d);
            let left = compose(&unit(d), 1, &c, 2).unwrap();
            assert_eq!(left, FormalSum::from_graph(&c.relabel_boundaries(&[2, 1])));
            let right = compose(&c, 1, &unit(d), 1).unwrap();
            assert_eq!(right, FormalSum::from_graph(&c));
        }
    }

    #[test]
    fn monotone_count() {
        let mut n = 0;
        for_each_monotone(3, 4, &mut |_| n += 1);
        assert_eq!(n, 20);
    }
}
