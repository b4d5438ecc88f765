//! The action of ribbon graphs on tensor products of cyclic words.
//!
//! Signs follow one rule. The evaluation of a graph is the sequence
//! `Θ_{e_1} … Θ_{e_E} x_1 … x_n` of pairing operators (degree `1 − d`, in
//! the order of the orientation word) followed by the letters of the inputs,
//! with the word fed to a black vertex spliced in at the position of that
//! vertex's symbol. Each assignment permutes this sequence into
//! `[Θ_e a_e b_e]… y_1 … y_m`, where `a_e`, `b_e` are the letters at the tail
//! and head of `e` and `y_j` reads boundary `j`; the term is the Koszul sign
//! of that permutation times `Π Θ(a_e, b_e)`.

use num_traits::{One, Zero};

use super::space::{odd, GradedSpace, Letter};
use super::word::{CyclicWord, WordSum};
use super::CyclicError;
use crate::properad::{bracket, coloop};
use crate::rational::Q;
use crate::ribbon::{Dart, RibbonGraph, Sym};
use crate::sum::FormalSum;

/// All placements of `r` cyclically ordered half-edges on a word of length
/// `len`: the first lands anywhere, the rest follow in cyclic order.
fn placements(r: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r == 0 || r > len {
        return out;
    }
    fn rec(start: usize, len: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.iter().map(|&o| (o + start) % len).collect());
            return;
        }
        let lo = cur.last().map_or(0, |&o| o + 1);
        for o in lo..len {
            if len - o < r - cur.len() {
                break;
            }
            cur.push(o);
            rec(start, len, r, cur, out);
            cur.pop();
        }
    }
    for s in 0..len {
        let mut cur = vec![0];
        rec(s, len, r, &mut cur, &mut out);
    }
    out
}

/// Parity of the Koszul sign of reordering items `0..n` into `order`.
fn koszul_odd(order: &[usize], odd_item: &[bool]) -> bool {
    let mut parity = false;
    for i in 0..order.len() {
        if !odd_item[order[i]] {
            continue;
        }
        for j in i + 1..order.len() {
            if odd_item[order[j]] && order[i] > order[j] {
                parity = !parity;
            }
        }
    }
    parity
}

/// Evaluates `g` on letter sequences, one per vertex (indexed by vertex),
/// and emits the output words with their coefficient.
fn evaluate(space: &GradedSpace, g: &RibbonGraph, feeds: &[&[Letter]], emit: &mut dyn FnMut(&[Vec<Letter>], Q)) {
    let d = space.d() as i64;
    let nv = g.vertex_count();
    // item numbering of the input sequence
    let mut item_odd: Vec<bool> = Vec::new();
    let mut first_item = vec![0usize; nv];
    let mut edges: Vec<(Dart, Dart, usize)> = Vec::new();
    let word = g.standard_word();
    let mut placed = vec![false; nv];
    let mut place = |v: usize, item_odd: &mut Vec<bool>, placed: &mut Vec<bool>| {
        first_item[v] = item_odd.len();
        item_odd.extend(feeds[v].iter().map(|&a| odd(space.degree(a))));
        placed[v] = true;
    };
    for s in &word {
        match *s {
            Sym::Edge(t, h) => {
                edges.push((t, h, item_odd.len()));
                item_odd.push(odd(1 - d));
            }
            Sym::Black(x) => place(g.vertex_of(x), &mut item_odd, &mut placed),
            Sym::LoneBlack => place(0, &mut item_odd, &mut placed),
        }
    }
    let mut whites: Vec<(u8, usize)> =
        (0..nv).filter_map(|v| g.color(v).label().map(|l| (l, v))).collect();
    whites.sort_unstable();
    for &(_, v) in &whites {
        place(v, &mut item_odd, &mut placed);
    }
    debug_assert!(placed.iter().all(|&p| p));

    let sign = if g.or_sign() < 0 { -Q::one() } else { Q::one() };
    if g.is_zero_dart() {
        emit(&[feeds[0].to_vec()], sign);
        return;
    }

    let vdarts: Vec<Vec<Dart>> = (0..nv).map(|v| g.vertex_darts(v)).collect();
    let choices: Vec<Vec<Vec<usize>>> = (0..nv).map(|v| placements(vdarts[v].len(), feeds[v].len())).collect();
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let walks = g.boundaries();
    let mut pos = vec![0usize; g.dart_count()];
    let mut idx = vec![0usize; nv];
    loop {
        for v in 0..nv {
            for (k, &x) in vdarts[v].iter().enumerate() {
                pos[x as usize] = choices[v][idx[v]][k];
            }
        }
        let letter = |x: Dart| feeds[g.vertex_of(x)][pos[x as usize]];
        let item = |x: Dart| first_item[g.vertex_of(x)] + pos[x as usize];
        let mut c = sign.clone();
        for &(t, h, _) in &edges {
            c *= space.theta(letter(t), letter(h));
            if c.is_zero() {
                break;
            }
        }
        if !c.is_zero() {
            let mut order: Vec<usize> = Vec::with_capacity(item_odd.len());
            for &(t, h, e) in &edges {
                order.extend([e, item(t), item(h)]);
            }
            let mut outs: Vec<Vec<Letter>> = Vec::with_capacity(walks.len());
            for walk in &walks {
                let mut w = Vec::new();
                for &y in walk {
                    let v = g.vertex_of(y);
                    let len = feeds[v].len();
                    let a = pos[g.sigma_inv(y) as usize];
                    let b = pos[y as usize];
                    let mut i = (a + 1) % len;
                    let mut steps = if a == b { len - 1 } else { (b + len - a - 1) % len };
                    while steps > 0 {
                        w.push(feeds[v][i]);
                        order.push(first_item[v] + i);
                        i = (i + 1) % len;
                        steps -= 1;
                    }
                }
                outs.push(w);
            }
            if koszul_odd(&order, &item_odd) {
                c = -c;
            }
            emit(&outs, c);
        }
        let mut v = 0;
        loop {
            if v == nv {
                return;
            }
            idx[v] += 1;
            if idx[v] < choices[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

fn check_graph(space: &GradedSpace, g: &RibbonGraph) -> Result<(), CyclicError> {
    if g.d() != space.d() {
        return Err(CyclicError::PairingDegreeMismatch(format!(
            "graph parameter {} but the pairing has degree {}",
            g.d(),
            1 - space.d()
        )));
    }
    Ok(())
}

/// Evaluates `g` with black vertices fed the given words (in the order of
/// `black_vertices`) on one input tuple, accumulating into `out`.
fn apply_term(space: &GradedSpace, g: &RibbonGraph, blacks: &[&CyclicWord], inputs: &[CyclicWord], c: &Q, out: &mut WordSum) {
    let nv = g.vertex_count();
    let mut feeds: Vec<&[Letter]> = vec![&[]; nv];
    for (v, w) in g.black_vertices().zip(blacks) {
        feeds[v] = w.letters();
    }
    for v in 0..nv {
        if let Some(l) = g.color(v).label() {
            feeds[v] = inputs[l as usize - 1].letters();
        }
    }
    evaluate(space, g, &feeds, &mut |outs, x| out.add_letters(space, outs, &(x * c)));
}

/// `ρ(g)` applied to a sum of `n`-tuples, `n` the number of white vertices.
/// Black vertices are not allowed; see [`act`].
pub fn represent(space: &GradedSpace, g: &RibbonGraph, input: &WordSum) -> Result<WordSum, CyclicError> {
    check_graph(space, g)?;
    if g.black_count() > 0 {
        return Err(CyclicError::ArityMismatch("black vertices need an MC element; use act".into()));
    }
    let n = g.white_count();
    let mut out = WordSum::new();
    for (t, c) in input.iter() {
        if t.len() != n {
            return Err(CyclicError::ArityMismatch(format!("{} inputs for {n} white vertices", t.len())));
        }
        apply_term(space, g, &[], t, c, &mut out);
    }
    Ok(out)
}

/// `ρ^γ` of a combination of graphs: every black vertex is fed `γ`.
pub fn act(space: &GradedSpace, graphs: &FormalSum, gamma: &WordSum, input: &WordSum) -> Result<WordSum, CyclicError> {
    let gterms: Vec<(&CyclicWord, &Q)> = gamma
        .iter()
        .map(|(t, c)| match t.as_slice() {
            [w] => Ok((w, c)),
            _ => Err(CyclicError::ArityMismatch("γ must be a sum of single words".into())),
        })
        .collect::<Result<_, _>>()?;
    let mut out = WordSum::new();
    for (g, gc) in graphs.iter() {
        check_graph(space, g)?;
        let n = g.white_count();
        let k = g.black_count();
        for (t, c) in input.iter() {
            if t.len() != n {
                return Err(CyclicError::ArityMismatch(format!("{} inputs for {n} white vertices", t.len())));
            }
            let mut pick = vec![0usize; k];
            if k > 0 && gterms.is_empty() {
                continue;
            }
            loop {
                let blacks: Vec<&CyclicWord> = pick.iter().map(|&i| gterms[i].0).collect();
                let mut coeff = c * gc;
                for &i in &pick {
                    coeff *= gterms[i].1;
                }
                apply_term(space, g, &blacks, t, &coeff, &mut out);
                let mut i = 0;
                while i < k {
                    pick[i] += 1;
                    if pick[i] < gterms.len() {
                        break;
                    }
                    pick[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// The Lie bracket `[c1, c2]` of degree `1 − d`.
pub fn lie_bracket(space: &GradedSpace, c1: &WordSum, c2: &WordSum) -> Result<WordSum, CyclicError> {
    represent(space, &bracket(space.d()), &c1.tensor(c2))
}

/// The cobracket of degree `1 − d`, with values in pairs of words.
pub fn cobracket(space: &GradedSpace, c: &WordSum) -> Result<WordSum, CyclicError> {
    represent(space, &coloop(space.d()), c)
}

/// An operation on tuples of cyclic words with known arity and degree.
pub struct Operation<'a> {
    pub inputs: usize,
    pub degree: i64,
    pub apply: Box<dyn Fn(&WordSum) -> Result<WordSum, CyclicError> + 'a>,
}

impl<'a> Operation<'a> {
    pub fn of_graph(space: &'a GradedSpace, g: &'a RibbonGraph) -> Self {
        Operation {
            inputs: g.white_count(),
            degree: g.degree(),
            apply: Box::new(move |x| represent(space, g, x)),
        }
    }
}

impl<'a> Operation<'a> {
    /// The operation whose input `perm[i]` is fed to input `i + 1` of `self`,
    /// matching [`RibbonGraph::relabel_whites`].
    pub fn relabel_inputs(self, space: &'a GradedSpace, perm: &[u8]) -> Operation<'a> {
        let from: Vec<usize> = perm.iter().map(|&p| p as usize - 1).collect();
        let Operation { inputs, degree, apply } = self;
        Operation { inputs, degree, apply: Box::new(move |x| apply(&x.permuted(space, &from))) }
    }

    /// The operation placing output `i + 1` of `self` in slot `perm[i]`,
    /// matching [`RibbonGraph::relabel_boundaries`].
    pub fn relabel_outputs(self, space: &'a GradedSpace, perm: &[u8]) -> Operation<'a> {
        let mut from = vec![0; perm.len()];
        for (old, &new) in perm.iter().enumerate() {
            from[new as usize - 1] = old;
        }
        let Operation { inputs, degree, apply } = self;
        Operation { inputs, degree, apply: Box::new(move |x| Ok(apply(x)?.permuted(space, &from))) }
    }

    /// `self i∘j g` as an operation.
    pub fn compose(self, space: &'a GradedSpace, i: usize, g: Operation<'a>, j: usize) -> Operation<'a> {
        let inputs = self.inputs - 1 + g.inputs;
        let degree = self.degree + g.degree;
        Operation { inputs, degree, apply: Box::new(move |x| compose_apply(space, &self, i, &g, j, x)) }
    }
}

fn tuple_degree(space: &GradedSpace, t: &[CyclicWord]) -> i64 {
    t.iter().map(|w| w.degree(space)).sum()
}

/// `(f i∘j g)` evaluated on a sum of tuples: output `j` of `g` feeds input
/// `i` of `f`. Inputs are those of `f` except `i` followed by those of `g`;
/// outputs are those of `f` followed by those of `g` except `j`.
pub fn compose_apply(
    space: &GradedSpace,
    f: &Operation,
    i: usize,
    g: &Operation,
    j: usize,
    input: &WordSum,
) -> Result<WordSum, CyclicError> {
    let n1 = f.inputs;
    if i == 0 || i > n1 {
        return Err(CyclicError::ArityMismatch(format!("input {i} of {n1}")));
    }
    let mut out = WordSum::new();
    for (t, c) in input.iter() {
        if t.len() != n1 - 1 + g.inputs {
            return Err(CyclicError::ArityMismatch(format!("{} inputs for a composite of arity {}", t.len(), n1 - 1 + g.inputs)));
        }
        let (xs, zs) = t.split_at(n1 - 1);
        let s1 = odd(g.degree * tuple_degree(space, xs));
        let gz = (g.apply)(&WordSum::single(zs.to_vec(), Q::one()))?;
        for (us, c2) in gz.iter() {
            if j == 0 || j > us.len() {
                return Err(CyclicError::ArityMismatch(format!("output {j} of {}", us.len())));
            }
            let u = &us[j - 1];
            let s2 = odd(u.degree(space) * (tuple_degree(space, &xs[i - 1..]) + tuple_degree(space, &us[..j - 1])));
            let mut fin: Vec<CyclicWord> = xs[..i - 1].to_vec();
            fin.push(u.clone());
            fin.extend_from_slice(&xs[i - 1..]);
            let rest: Vec<CyclicWord> = us.iter().enumerate().filter(|&(l, _)| l != j - 1).map(|(_, w)| w.clone()).collect();
            let fv = (f.apply)(&WordSum::single(fin, Q::one()))?;
            for (vs, c3) in fv.iter() {
                let mut tuple = vs.clone();
                tuple.extend(rest.iter().cloned());
                let mut coeff = c * c2 * c3;
                if s1 ^ s2 {
                    coeff = -coeff;
                }
                out.add_term(tuple, coeff);
            }
        }
    }
    Ok(out)
}

/// Extends an operator on single words, of the given degree, to tuples as a
/// derivation with Koszul signs.
pub fn extend_derivation(
    space: &GradedSpace,
    x: &WordSum,
    degree: i64,
    op: &dyn Fn(&CyclicWord) -> Result<WordSum, CyclicError>,
) -> Result<WordSum, CyclicError> {
    let mut out = WordSum::new();
    for (t, c) in x.iter() {
        let mut before = 0i64;
        for l in 0..t.len() {
            let img = op(&t[l])?;
            let neg = odd(degree * before);
            for (ws, c2) in img.iter() {
                let mut tuple = t[..l].to_vec();
                tuple.extend(ws.iter().cloned());
                tuple.extend_from_slice(&t[l + 1..]);
                let coeff = c * c2;
                out.add_term(tuple, if neg { -coeff } else { coeff });
            }
            before += t[l].degree(space);
        }
    }
    Ok(out)
}

/// The internal differential on one cyclic word, as a derivation over letters.
pub fn word_differential(space: &GradedSpace, w: &CyclicWord) -> WordSum {
    let mut out = WordSum::new();
    let ls = w.letters();
    let mut before = 0i64;
    for k in 0..ls.len() {
        for (b, c) in space.differential(ls[k]) {
            let mut v = ls.to_vec();
            v[k] = *b;
            let coeff = if odd(before) { -c.clone() } else { c.clone() };
            out.add_letters(space, &[v], &coeff);
        }
        before += space.degree(ls[k]);
    }
    out
}

/// The internal differential on a sum of tuples.
pub fn differential(space: &GradedSpace, x: &WordSum) -> WordSum {
    extend_derivation(space, x, 1, &|w| Ok(word_differential(space, w))).expect("infallible")
}
