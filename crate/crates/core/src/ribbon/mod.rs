//! Ribbon graphs as two-coloured combinatorial maps.
//!
//! Darts are `0..2E`. `alpha` pairs the two darts of each edge, `sigma` lists
//! the half-edges around each vertex in cyclic order and the boundaries are the
//! cycles of `phi = sigma ∘ alpha`. Vertices are indexed by increasing minimal
//! dart, boundaries carry labels `1..=m`, white vertices labels `1..=n`.
//!
//! An orientation is a word in odd symbols: one symbol per edge (degree `1-d`,
//! read from tail to head) followed by one symbol per black vertex (degree
//! `d`). The standard word lists edges by minimal dart, directed from the
//! smaller to the larger dart, then black vertices by index. `or_sign` records
//! the orientation relative to the standard word.

mod canonical;
pub mod maps;
mod text;

use std::fmt;

use thiserror::Error;

pub use canonical::isomorphic_with_sign;
pub(crate) use canonical::canonical_parts;
pub use text::parse_graph;

pub type Dart = u8;

/// Largest supported number of darts.
pub const MAX_DARTS: usize = 250;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    White(u8),
    Black,
}

impl Color {
    pub fn is_black(self) -> bool {
        matches!(self, Color::Black)
    }

    pub fn label(self) -> Option<u8> {
        match self {
            Color::White(l) => Some(l),
            Color::Black => None,
        }
    }

    pub fn map_label(self, f: impl Fn(u8) -> u8) -> Color {
        match self {
            Color::White(l) => Color::White(f(l)),
            Color::Black => Color::Black,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("alpha is not a fixed-point-free involution (dart {0})")]
    Involution(usize),
    #[error("sigma is not a permutation of the darts")]
    NotAPermutation,
    #[error("label error: {0}")]
    Label(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("genus is not a non-negative integer")]
    NonIntegralGenus,
    #[error("too many darts: {0}")]
    TooLarge(usize),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("degree parameters differ: {0} and {1}")]
    DimensionMismatch(i32, i32),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Genus, boundary, white and black counts of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiDegree {
    pub g: usize,
    pub m: usize,
    pub n: usize,
    pub k: usize,
}

impl BiDegree {
    pub fn new(g: usize, m: usize, n: usize, k: usize) -> Self {
        BiDegree { g, m, n, k }
    }

    /// `E = n + k + m + 2g - 2`, `None` when negative.
    pub fn edges(&self) -> Option<usize> {
        let e = (self.n + self.k + self.m + 2 * self.g) as i64 - 2;
        (e >= 0).then_some(e as usize)
    }

    pub fn degree(&self, d: i32) -> i64 {
        (1 - d as i64) * (self.n + self.m + 2 * self.g) as i64 - 2 * (1 - d as i64) + self.k as i64
    }

    pub fn with_k(&self, k: usize) -> Self {
        BiDegree { k, ..*self }
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{},{};{})", self.g, self.m, self.n, self.k)
    }
}

/// A symbol of an orientation word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Sym {
    /// Edge read from the tail dart to the head dart.
    Edge(Dart, Dart),
    /// Black vertex containing the given dart.
    Black(Dart),
    /// The black vertex of the zero-dart graph.
    LoneBlack,
}

/// Packed storage: `alpha`, `sigma`, `vertex_of` and `boundary_of` (one byte
/// per dart each) followed by one colour code per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RibbonGraph {
    d: i32,
    nd: u8,
    boundaries: u8,
    sign: i8,
    data: Box<[u8]>,
}

/// `0` for black, the label for white.
pub(crate) fn color_code(c: Color) -> u8 {
    match c {
        Color::White(l) => l,
        Color::Black => 0,
    }
}

pub(crate) fn color_from_code(c: u8) -> Color {
    if c == 0 {
        Color::Black
    } else {
        Color::White(c)
    }
}

/// Cycle index of every element and the number of cycles; cycles are
/// numbered by increasing minimal element.
pub(crate) fn cycle_ids(perm: &[Dart], id: &mut [u8]) -> usize {
    id[..perm.len()].fill(u8::MAX);
    let mut count = 0;
    for start in 0..perm.len() {
        if id[start] != u8::MAX {
            continue;
        }
        let mut x = start;
        while id[x] == u8::MAX {
            id[x] = count as u8;
            x = perm[x] as usize;
        }
        count += 1;
    }
    count
}

impl RibbonGraph {
    /// Packs raw arrays; `colors` holds one colour code per vertex.
    pub(crate) fn from_parts(
        d: i32,
        alpha: &[Dart],
        sigma: &[Dart],
        vertex_of: &[u8],
        boundary_of: &[u8],
        colors: &[u8],
        boundaries: u8,
        sign: i8,
    ) -> RibbonGraph {
        let nd = alpha.len();
        let mut data = Vec::with_capacity(4 * nd + colors.len());
        data.extend_from_slice(alpha);
        data.extend_from_slice(sigma);
        data.extend_from_slice(vertex_of);
        data.extend_from_slice(boundary_of);
        data.extend_from_slice(colors);
        RibbonGraph { d, nd: nd as u8, boundaries, sign, data: data.into_boxed_slice() }
    }

    fn nd(&self) -> usize {
        self.nd as usize
    }

    fn vertex_ids(&self) -> &[u8] {
        &self.data[2 * self.nd()..3 * self.nd()]
    }

    fn boundary_ids(&self) -> &[u8] {
        &self.data[3 * self.nd()..4 * self.nd()]
    }

    pub(crate) fn color_codes(&self) -> &[u8] {
        &self.data[4 * self.nd()..]
    }

    /// Validates raw map data. `colors` is indexed by vertex and
    /// `boundary_labels` by boundary cycle, both ordered by minimal dart.
    pub fn build(
        alpha: &[usize],
        sigma: &[usize],
        colors: &[Color],
        boundary_labels: &[u8],
        d: i32,
    ) -> Result<RibbonGraph, GraphError> {
        let nd = alpha.len();
        if nd > MAX_DARTS {
            return Err(GraphError::TooLarge(nd));
        }
        if sigma.len() != nd {
            return Err(GraphError::NotAPermutation);
        }
        if nd == 0 {
            if colors.len() != 1 {
                return Err(GraphError::Label("a zero-dart graph has exactly one vertex".into()));
            }
            if boundary_labels != [1] {
                return Err(GraphError::BoundaryMismatch(
                    "a zero-dart graph has one boundary labelled 1".into(),
                ));
            }
            if let Color::White(l) = colors[0] {
                if l != 1 {
                    return Err(GraphError::Label(format!("white label {l} out of range")));
                }
            }
            return Ok(RibbonGraph::zero_dart(d, colors[0]));
        }
        for (x, &y) in alpha.iter().enumerate() {
            if y >= nd || y == x || alpha[y] != x {
                return Err(GraphError::Involution(x));
            }
        }
        let mut seen = vec![false; nd];
        for &y in sigma {
            if y >= nd || seen[y] {
                return Err(GraphError::NotAPermutation);
            }
            seen[y] = true;
        }
        let alpha: Vec<Dart> = alpha.iter().map(|&x| x as Dart).collect();
        let sigma: Vec<Dart> = sigma.iter().map(|&x| x as Dart).collect();
        let mut vertex_of = vec![0u8; nd];
        let nv = cycle_ids(&sigma, &mut vertex_of);
        if colors.len() != nv {
            return Err(GraphError::Label(format!("{} colours for {nv} vertices", colors.len())));
        }
        let mut whites: Vec<u8> = colors
            .iter()
            .filter_map(|c| match c {
                Color::White(l) => Some(*l),
                Color::Black => None,
            })
            .collect();
        whites.sort_unstable();
        if whites.iter().enumerate().any(|(i, &l)| l as usize != i + 1) {
            return Err(GraphError::Label("white labels are not a bijection onto 1..n".into()));
        }
        let phi: Vec<Dart> = (0..nd).map(|x| sigma[alpha[x] as usize]).collect();
        let mut face_of = vec![0u8; nd];
        let nf = cycle_ids(&phi, &mut face_of);
        if boundary_labels.len() != nf {
            return Err(GraphError::BoundaryMismatch(format!(
                "{} labels for {nf} boundaries",
                boundary_labels.len()
            )));
        }
        let mut sorted = boundary_labels.to_vec();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(i, &l)| l as usize != i + 1) {
            return Err(GraphError::Label("boundary labels are not a bijection onto 1..m".into()));
        }
        let boundary_of: Vec<u8> = face_of.iter().map(|&f| boundary_labels[f as usize]).collect();
        let codes: Vec<u8> = colors.iter().map(|&c| color_code(c)).collect();
        let g = RibbonGraph::from_parts(d, &alpha, &sigma, &vertex_of, &boundary_of, &codes, nf as u8, 1);
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        if (g.edge_count() + 2) < g.vertex_count() + g.boundary_count()
            || (g.edge_count() + 2 - g.vertex_count() - g.boundary_count()) % 2 != 0
        {
            return Err(GraphError::NonIntegralGenus);
        }
        Ok(g)
    }

    /// The unit (white) or the lone black vertex: no darts, one empty boundary.
    pub fn zero_dart(d: i32, color: Color) -> RibbonGraph {
        RibbonGraph::from_parts(d, &[], &[], &[], &[], &[color_code(color)], 1, 1)
    }

    /// Assembles a graph from a map with per-dart colours, labelling each
    /// boundary cycle through `label`, oriented by `word` times `base_sign`.
    pub(crate) fn assemble(
        d: i32,
        alpha: Vec<Dart>,
        sigma: Vec<Dart>,
        dart_color: &[Color],
        mut label: impl FnMut(&[Dart]) -> u8,
        word: &[Sym],
        base_sign: i8,
    ) -> RibbonGraph {
        let nd = alpha.len();
        let mut vertex_of = vec![0u8; nd];
        let nv = cycle_ids(&sigma, &mut vertex_of);
        let mut colors = vec![0u8; nv];
        for x in (0..nd).rev() {
            colors[vertex_of[x] as usize] = color_code(dart_color[x]);
        }
        let phi: Vec<Dart> = (0..nd).map(|x| sigma[alpha[x] as usize]).collect();
        let mut face_of = vec![0u8; nd];
        let nf = cycle_ids(&phi, &mut face_of);
        let mut boundary_of = vec![0u8; nd];
        let mut cyc = Vec::with_capacity(nd);
        for f in 0..nf {
            cyc.clear();
            let start = face_of.iter().position(|&u| u as usize == f).unwrap();
            let mut x = start;
            loop {
                cyc.push(x as Dart);
                x = phi[x] as usize;
                if x == start {
                    break;
                }
            }
            let l = label(&cyc);
            for &y in &cyc {
                boundary_of[y as usize] = l;
            }
        }
        let mut g = RibbonGraph::from_parts(d, &alpha, &sigma, &vertex_of, &boundary_of, &colors, nf as u8, 1);
        g.sign = base_sign * g.word_sign(word);
        g
    }

    pub fn d(&self) -> i32 {
        self.d
    }

    pub fn dart_count(&self) -> usize {
        self.nd()
    }

    pub fn edge_count(&self) -> usize {
        self.nd() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.color_codes().len()
    }

    pub fn boundary_count(&self) -> usize {
        self.boundaries as usize
    }

    pub fn white_count(&self) -> usize {
        self.color_codes().iter().filter(|&&c| c != 0).count()
    }

    pub fn black_count(&self) -> usize {
        self.color_codes().iter().filter(|&&c| c == 0).count()
    }

    pub fn genus(&self) -> usize {
        (self.edge_count() + 2 - self.vertex_count() - self.boundary_count()) / 2
    }

    /// `(1-d)E + kd`.
    pub fn degree(&self) -> i64 {
        (1 - self.d as i64) * self.edge_count() as i64 + self.d as i64 * self.black_count() as i64
    }

    pub fn bidegree(&self) -> BiDegree {
        BiDegree::new(self.genus(), self.boundary_count(), self.white_count(), self.black_count())
    }

    pub fn or_sign(&self) -> i8 {
        self.sign
    }

    pub fn with_sign(&self, sign: i8) -> RibbonGraph {
        RibbonGraph { sign, ..self.clone() }
    }

    pub fn negated(&self) -> RibbonGraph {
        self.with_sign(-self.sign)
    }

    pub fn alpha(&self) -> &[Dart] {
        &self.data[..self.nd()]
    }

    pub fn sigma(&self) -> &[Dart] {
        &self.data[self.nd()..2 * self.nd()]
    }

    /// Vertex colours in vertex order.
    pub fn colors(&self) -> Vec<Color> {
        self.color_codes().iter().map(|&c| color_from_code(c)).collect()
    }

    pub fn vertex_of(&self, x: Dart) -> usize {
        self.vertex_ids()[x as usize] as usize
    }

    pub fn boundary_of(&self, x: Dart) -> u8 {
        self.boundary_ids()[x as usize]
    }

    pub fn color(&self, v: usize) -> Color {
        color_from_code(self.color_codes()[v])
    }

    pub fn sigma_inv(&self, y: Dart) -> Dart {
        let sigma = self.sigma();
        let mut x = y;
        while sigma[x as usize] != y {
            x = sigma[x as usize];
        }
        x
    }

    pub fn phi(&self, x: Dart) -> Dart {
        self.sigma()[self.alpha()[x as usize] as usize]
    }

    /// Darts of vertex `v` in cyclic order, starting at the minimal one.
    pub fn vertex_darts(&self, v: usize) -> Vec<Dart> {
        let Some(start) = self.vertex_ids().iter().position(|&u| u as usize == v) else {
            return Vec::new();
        };
        let sigma = self.sigma();
        let mut out = vec![start as Dart];
        let mut x = sigma[start];
        while x as usize != start {
            out.push(x);
            x = sigma[x as usize];
        }
        out
    }

    pub fn valence(&self, v: usize) -> usize {
        self.vertex_ids().iter().filter(|&&u| u as usize == v).count()
    }

    /// Vertex index of the white vertex with the given label.
    pub fn white_vertex(&self, label: u8) -> Option<usize> {
        self.color_codes().iter().position(|&c| c == label && label != 0)
    }

    pub fn black_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        let codes = self.color_codes();
        (0..codes.len()).filter(move |&v| codes[v] == 0)
    }

    /// The darts of the boundary with the given label, in walk order starting
    /// at the minimal dart. Empty for the boundary of a zero-dart graph.
    pub fn boundary_walk(&self, label: u8) -> Vec<Dart> {
        let Some(start) = self.boundary_ids().iter().position(|&b| b == label) else {
            return Vec::new();
        };
        let mut out = vec![start as Dart];
        let mut x = self.phi(start as Dart);
        while x as usize != start {
            out.push(x);
            x = self.phi(x);
        }
        out
    }

    /// All boundary walks, indexed by label minus one.
    pub fn boundaries(&self) -> Vec<Vec<Dart>> {
        (1..=self.boundaries).map(|l| self.boundary_walk(l)).collect()
    }

    pub fn is_zero_dart(&self) -> bool {
        self.nd == 0
    }

    fn is_connected(&self) -> bool {
        let nd = self.nd();
        if nd == 0 {
            return true;
        }
        let (alpha, sigma) = (self.alpha(), self.sigma());
        let mut seen = vec![false; nd];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for y in [alpha[x] as usize, sigma[x] as usize] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == nd
    }

    pub(crate) fn edge_is_odd(&self) -> bool {
        self.d.rem_euclid(2) == 0
    }

    pub(crate) fn black_is_odd(&self) -> bool {
        self.d.rem_euclid(2) == 1
    }

    /// Minimal dart of each vertex.
    pub(crate) fn vertex_min_darts(&self) -> Vec<Dart> {
        let mut mins = vec![Dart::MAX; self.vertex_count()];
        for (x, &v) in self.vertex_ids().iter().enumerate().rev() {
            mins[v as usize] = x as Dart;
        }
        mins
    }

    pub(crate) fn standard_word(&self) -> Vec<Sym> {
        if self.nd == 0 {
            return if self.color_codes()[0] == 0 { vec![Sym::LoneBlack] } else { Vec::new() };
        }
        let alpha = self.alpha();
        let mut w: Vec<Sym> = (0..alpha.len())
            .filter(|&x| x < alpha[x] as usize)
            .map(|x| Sym::Edge(x as Dart, alpha[x]))
            .collect();
        let mins = self.vertex_min_darts();
        w.extend(self.black_vertices().map(|v| Sym::Black(mins[v])));
        w
    }

    /// Sign of an orientation word relative to the standard word.
    pub(crate) fn word_sign(&self, word: &[Sym]) -> i8 {
        let edge_odd = self.edge_is_odd();
        let black_odd = self.black_is_odd();
        let vertex_of = self.vertex_ids();
        let mut reversed = 0usize;
        let mut ranks = [0u8; 256];
        let mut len = 0;
        for s in word {
            let r = match *s {
                Sym::Edge(t, h) => {
                    debug_assert_eq!(self.alpha()[t as usize], h);
                    if t > h {
                        reversed += 1;
                    }
                    edge_odd.then_some(t.min(h))
                }
                Sym::Black(x) => black_odd.then(|| vertex_of[x as usize]),
                Sym::LoneBlack => black_odd.then_some(0),
            };
            if let Some(r) = r {
                ranks[len] = r;
                len += 1;
            }
        }
        let mut inversions = 0usize;
        for i in 0..len {
            for j in i + 1..len {
                if ranks[i] > ranks[j] {
                    inversions += 1;
                }
            }
        }
        if (self.d.rem_euclid(2) as usize * reversed + inversions) % 2 == 1 {
            -1
        } else {
            1
        }
    }

    /// Relabels white vertices by `perm[old - 1] = new`; the orientation is unchanged.
    pub fn relabel_whites(&self, perm: &[u8]) -> RibbonGraph {
        let mut g = self.clone();
        let start = 4 * g.nd();
        for c in &mut g.data[start..] {
            if *c != 0 {
                *c = perm[*c as usize - 1];
            }
        }
        g
    }

    /// Relabels boundaries by `perm[old - 1] = new`.
    pub fn relabel_boundaries(&self, perm: &[u8]) -> RibbonGraph {
        let mut g = self.clone();
        let nd = g.nd();
        for b in &mut g.data[3 * nd..4 * nd] {
            *b = perm[*b as usize - 1];
        }
        g
    }

    /// Reverses the direction of the edge containing dart `x`.
    pub fn flip_edge(&self, x: Dart) -> RibbonGraph {
        let t = x.min(self.alpha()[x as usize]);
        let mut w = self.standard_word();
        for s in &mut w {
            if let Sym::Edge(a, b) = *s {
                if a == t {
                    *s = Sym::Edge(b, a);
                }
            }
        }
        self.with_sign(self.sign * self.word_sign(&w))
    }

    /// Swaps the positions of the `i`-th and `j`-th symbols of the standard word.
    pub fn transpose_symbols(&self, i: usize, j: usize) -> RibbonGraph {
        let mut w = self.standard_word();
        w.swap(i, j);
        self.with_sign(self.sign * self.word_sign(&w))
    }

    pub fn orientation_len(&self) -> usize {
        if self.nd == 0 {
            return (self.color_codes()[0] == 0) as usize;
        }
        self.edge_count() + self.black_count()
    }

    pub fn canonicalize(&self) -> (RibbonGraph, i8) {
        canonical::canonicalize(self)
    }

    pub fn text(&self) -> String {
        text::print_graph(self)
    }
}

impl fmt::Display for RibbonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// Convenience constructor with `usize` darts and a one-line signature.
pub fn build_graph(
    dart_count: usize,
    alpha: &[usize],
    sigma: &[usize],
    colors: &[Color],
    boundary_labels: &[u8],
    d: i32,
) -> Result<RibbonGraph, GraphError> {
    if alpha.len() != dart_count || sigma.len() != dart_count {
        return Err(GraphError::Index(format!(
            "expected {dart_count} darts, got alpha {} and sigma {}",
            alpha.len(),
            sigma.len()
        )));
    }
    RibbonGraph::build(alpha, sigma, colors, boundary_labels, d)
}
