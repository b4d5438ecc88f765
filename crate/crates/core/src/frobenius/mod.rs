//! Poincaré duality algebras: validation, built-in cohomology rings, the
//! diagonal, and the Maurer–Cartan element on cyclic words of the dual.

mod format;
mod mc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::cyclic::CyclicError;
use crate::rational::{fmt_q, q, Q};

pub use mc::{
    change_basis_check, dual_space, gamma_is_mc, hochschild, mc_element, product_from_gamma, reduced_letters, string_operation,
    twisted_action_suite, unit_letter, ClassCoordinates, StringOperation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrobeniusError {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("product is not associative on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("product is not graded commutative on ({0}, {1})")]
    NotGradedCommutative(String, String),
    #[error("the pairing o(a·b) is degenerate")]
    DegeneratePairing,
    #[error("orientation is nonzero on {0}, which is not of degree d")]
    OrientationDegreeError(String),
    #[error("differential: {0}")]
    DifferentialError(String),
    #[error("not connected: {0}")]
    NotConnected(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("unknown built-in algebra {0:?}")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
}

/// A finite dimensional graded commutative algebra with an orientation
/// `o: A → K[−d]` whose pairing `⟨a,b⟩ = o(a·b)` is non-degenerate. The first
/// basis element is the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PDAlgebra {
    d: i64,
    names: Vec<String>,
    degrees: Vec<i64>,
    /// `product[i][j][k]` is the coefficient of `e_k` in `e_i · e_j`.
    product: Vec<Vec<Vec<Q>>>,
    orientation: Vec<Q>,
    /// `differential[i][k]` is the coefficient of `e_k` in `∂e_i`.
    differential: Vec<Vec<Q>>,
}

fn sgn(odd: bool) -> Q {
    if odd {
        -Q::one()
    } else {
        Q::one()
    }
}

fn is_odd(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

impl PDAlgebra {
    pub fn new(
        d: i64,
        names: Vec<String>,
        degrees: Vec<i64>,
        product: Vec<Vec<Vec<Q>>>,
        orientation: Vec<Q>,
        differential: Option<Vec<Vec<Q>>>,
    ) -> Result<Self, FrobeniusError> {
        let n = names.len();
        let shape = |msg: &str| FrobeniusError::DegreeMismatch(msg.into());
        if n == 0 {
            return Err(FrobeniusError::NotConnected("empty basis".into()));
        }
        if degrees.len() != n || orientation.len() != n {
            return Err(shape("degrees and orientation need one entry per basis element"));
        }
        if product.len() != n || product.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(shape("the product table must be n×n×n"));
        }
        let differential = differential.unwrap_or_else(|| vec![vec![Q::zero(); n]; n]);
        if differential.len() != n || differential.iter().any(|r| r.len() != n) {
            return Err(shape("the differential must be n×n"));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || a.contains([',', '|', ';', ' ', '*', '+', '=']) || names[..i].contains(a) {
                return Err(shape(&format!("bad or repeated basis name {a:?}")));
            }
        }
        let a = PDAlgebra { d, names, degrees, product, orientation, differential };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<(), FrobeniusError> {
        let n = self.dim();
        if self.degrees[0] != 0 {
            return Err(FrobeniusError::NotConnected(format!("the unit {} must have degree 0", self.names[0])));
        }
        if let Some(i) = (1..n).find(|&i| self.degrees[i] <= 0) {
            return Err(FrobeniusError::NotConnected(format!("{} has degree {} ≤ 0", self.names[i], self.degrees[i])));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = &self.product[i][j][k];
                    if !c.is_zero() && self.degrees[k] != self.degrees[i] + self.degrees[j] {
                        return Err(FrobeniusError::DegreeMismatch(format!(
                            "{}·{} contains {}",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            let unit: Vec<Q> = (0..n).map(|k| if k == i { Q::one() } else { Q::zero() }).collect();
            if self.product[0][i] != unit || self.product[i][0] != unit {
                return Err(FrobeniusError::NotConnected(format!("{} is not a unit for {}", self.names[0], self.names[i])));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let s = sgn(is_odd(self.degrees[i] * self.degrees[j]));
                if self.product[i][j].iter().zip(&self.product[j][i]).any(|(x, y)| *x != &s * y) {
                    return Err(FrobeniusError::NotGradedCommutative(self.names[i].clone(), self.names[j].clone()));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = &self.product[i][j];
                for k in 0..n {
                    let left = self.mul_vec_basis(ij, k);
                    let jk = &self.product[j][k];
                    let right = self.mul_basis_vec(i, jk);
                    if left != right {
                        return Err(FrobeniusError::NotAssociative(
                            self.names[i].clone(),
                            self.names[j].clone(),
                            self.names[k].clone(),
                        ));
                    }
                }
            }
        }
        for i in 0..n {
            if !self.orientation[i].is_zero() && self.degrees[i] != self.d {
                return Err(FrobeniusError::OrientationDegreeError(self.names[i].clone()));
            }
        }
        if crate::linalg::invert_dense(&self.pairing_matrix()).is_none() {
            return Err(FrobeniusError::DegeneratePairing);
        }
        self.validate_differential()
    }

    fn validate_differential(&self) -> Result<(), FrobeniusError> {
        let n = self.dim();
        let err = |m: String| Err(FrobeniusError::DifferentialError(m));
        for i in 0..n {
            for k in 0..n {
                if !self.differential[i][k].is_zero() && self.degrees[k] != self.degrees[i] + 1 {
                    return err(format!("∂{} contains {} of the wrong degree", self.names[i], self.names[k]));
                }
            }
            if self.apply_differential(&self.differential[i]).iter().any(|x| !x.is_zero()) {
                return err(format!("∂² ≠ 0 on {}", self.names[i]));
            }
            let o: Q = self.differential[i].iter().zip(&self.orientation).map(|(a, b)| a * b).sum();
            if !o.is_zero() {
                return err(format!("o(∂{}) ≠ 0", self.names[i]));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let left = self.apply_differential(&self.product[i][j]);
                let mut right = self.mul_vec_basis(&self.differential[i], j);
                let s = sgn(is_odd(self.degrees[i]));
                for (r, x) in right.iter_mut().zip(self.mul_basis_vec(i, &self.differential[j])) {
                    *r += &s * x;
                }
                if left != right {
                    return err(format!("∂ is not a derivation on ({}, {})", self.names[i], self.names[j]));
                }
            }
        }
        Ok(())
    }

    fn apply_differential(&self, v: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for k in 0..n {
                out[k] += c * &self.differential[i][k];
            }
        }
        out
    }

    /// `v · e_k` for a coordinate vector `v`.
    fn mul_vec_basis(&self, v: &[Q], k: usize) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (l, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for m in 0..n {
                out[m] += c * &self.product[l][k][m];
            }
        }
        out
    }

    /// `e_i · v` for a coordinate vector `v`.
    fn mul_basis_vec(&self, i: usize, v: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (l, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for m in 0..n {
                out[m] += c * &self.product[i][l][m];
            }
        }
        out
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    /// Coordinates of `e_i · e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Q] {
        &self.product[i][j]
    }

    pub fn orientation(&self, i: usize) -> &Q {
        &self.orientation[i]
    }

    /// Coordinates of `∂e_i`.
    pub fn differential(&self, i: usize) -> &[Q] {
        &self.differential[i]
    }

    pub fn has_differential(&self) -> bool {
        self.differential.iter().flatten().any(|x| !x.is_zero())
    }

    /// `o(e_i · e_j · e_k)`.
    pub fn triple(&self, i: usize, j: usize, k: usize) -> Q {
        self.mul_vec_basis(&self.product[i][j], k).iter().zip(&self.orientation).map(|(a, b)| a * b).sum()
    }

    /// `G_{ij} = o(e_i · e_j)`.
    pub fn pairing_matrix(&self) -> Vec<Vec<Q>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.product[i][j].iter().zip(&self.orientation).map(|(a, b)| a * b).sum()).collect())
            .collect()
    }

    /// The dual basis `e^j` with `⟨e^j, e_i⟩ = δ_ij`, as coordinate rows:
    /// `e^j = Σ_k (G⁻¹)_{jk} e_k`.
    pub fn dual_basis(&self) -> Vec<Vec<Q>> {
        crate::linalg::invert_dense(&self.pairing_matrix()).expect("validated pairing")
    }

    /// `Δ(e_i) = Σ_j (e_i·e_j) ⊗ e^j`, of degree `|e_i| + d`, as a matrix of
    /// coefficients of `e_k ⊗ e_l`.
    pub fn diagonal(&self, i: usize) -> Vec<Vec<Q>> {
        let n = self.dim();
        let dual = self.dual_basis();
        let mut out = vec![vec![Q::zero(); n]; n];
        for j in 0..n {
            for (k, a) in self.product[i][j].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (l, b) in dual[j].iter().enumerate() {
                    out[k][l] += a * b;
                }
            }
        }
        out
    }

    /// Checks `Δ(ab) = (a⊗1)Δ(b) = Δ(a)(1⊗b)` and
    /// `Δ(ab) = (−1)^{|a||b|}(b⊗1)Δ(a) = (−1)^{|a||b|}Δ(b)(1⊗a)` on all basis
    /// pairs, with Koszul signs; returns the first failing pair.
    pub fn frobenius_violation(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        let left = |a: usize, t: &Vec<Vec<Q>>| -> Vec<Vec<Q>> {
            let mut out = vec![vec![Q::zero(); n]; n];
            for k in 0..n {
                for l in 0..n {
                    if t[k][l].is_zero() {
                        continue;
                    }
                    for (m, c) in self.product[a][k].iter().enumerate() {
                        out[m][l] += c * &t[k][l];
                    }
                }
            }
            out
        };
        let right = |t: &Vec<Vec<Q>>, b: usize| -> Vec<Vec<Q>> {
            let mut out = vec![vec![Q::zero(); n]; n];
            for k in 0..n {
                for l in 0..n {
                    if t[k][l].is_zero() {
                        continue;
                    }
                    for (m, c) in self.product[l][b].iter().enumerate() {
                        out[k][m] += c * &t[k][l];
                    }
                }
            }
            out
        };
        let diag_of = |v: &[Q]| -> Vec<Vec<Q>> {
            let mut out = vec![vec![Q::zero(); n]; n];
            for (i, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (row, drow) in out.iter_mut().zip(self.diagonal(i)) {
                    for (x, y) in row.iter_mut().zip(drow) {
                        *x += c * y;
                    }
                }
            }
            out
        };
        let scale = |t: Vec<Vec<Q>>, s: &Q| -> Vec<Vec<Q>> { t.into_iter().map(|r| r.into_iter().map(|x| x * s).collect()).collect() };
        for a in 0..n {
            for b in 0..n {
                let target = diag_of(&self.product[a][b]);
                let s = sgn(is_odd(self.degrees[a] * self.degrees[b]));
                let forms = [
                    left(a, &self.diagonal(b)),
                    right(&self.diagonal(a), b),
                    scale(left(b, &self.diagonal(a)), &s),
                    scale(right(&self.diagonal(b), a), &s),
                ];
                if forms.iter().any(|f| *f != target) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// The algebra in the basis `f_i = scales[i] · e_{order[i]}`; `order[0]`
    /// must be `0` and `scales[0]` must be `1`.
    pub fn rescaled(&self, order: &[usize], scales: &[Q]) -> Result<PDAlgebra, FrobeniusError> {
        let n = self.dim();
        let pos: Vec<usize> = {
            let mut p = vec![0; n];
            for (i, &o) in order.iter().enumerate() {
                p[o] = i;
            }
            p
        };
        let mut product = vec![vec![vec![Q::zero(); n]; n]; n];
        let mut differential = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let c = &scales[i] * &scales[j];
                for (k, x) in self.product[order[i]][order[j]].iter().enumerate() {
                    if !x.is_zero() {
                        product[i][j][pos[k]] = &c * x / &scales[pos[k]];
                    }
                }
            }
            for (k, x) in self.differential[order[i]].iter().enumerate() {
                if !x.is_zero() {
                    differential[i][pos[k]] = &scales[i] * x / &scales[pos[k]];
                }
            }
        }
        PDAlgebra::new(
            self.d,
            order.iter().map(|&o| self.names[o].clone()).collect(),
            order.iter().map(|&o| self.degrees[o]).collect(),
            product,
            order.iter().zip(scales).map(|(&o, s)| &self.orientation[o] * s).collect(),
            Some(differential),
        )
    }

    /// `S^d`, `d ≥ 1`.
    pub fn sphere(d: i64) -> Result<PDAlgebra, FrobeniusError> {
        if d < 1 {
            return Err(FrobeniusError::UnknownBuiltin(format!("sphere({d})")));
        }
        Builder::new(d, &[("1", 0), ("w", d)]).orient("w").build()
    }

    /// `CP^n`: `K[x]/(x^{n+1})` with `|x| = 2`, `d = 2n`.
    pub fn cp(n: usize) -> Result<PDAlgebra, FrobeniusError> {
        if n < 1 {
            return Err(FrobeniusError::UnknownBuiltin(format!("cp({n})")));
        }
        let names: Vec<String> = (0..=n).map(|k| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        }).collect();
        let basis: Vec<(&str, i64)> = names.iter().enumerate().map(|(k, s)| (s.as_str(), 2 * k as i64)).collect();
        let mut b = Builder::new(2 * n as i64, &basis);
        for i in 1..=n {
            for j in 1..=n - i {
                b = b.mul(i, j, i + j, q(1));
            }
        }
        b.orient(&names[n]).build()
    }

    /// The closed orientable surface of genus `g`.
    pub fn surface(g: usize) -> Result<PDAlgebra, FrobeniusError> {
        let mut names = vec!["1".to_string()];
        names.extend((1..=g).map(|i| format!("a{i}")));
        names.extend((1..=g).map(|i| format!("b{i}")));
        names.push("w".into());
        let basis: Vec<(&str, i64)> = names
            .iter()
            .enumerate()
            .map(|(k, s)| (s.as_str(), if k == 0 { 0 } else if k == 2 * g + 1 { 2 } else { 1 }))
            .collect();
        let mut b = Builder::new(2, &basis);
        let w = 2 * g + 1;
        for i in 1..=g {
            b = b.mul(i, g + i, w, q(1)).mul(g + i, i, w, q(-1));
        }
        b.orient("w").build()
    }

    /// `sphere(d)`, `cp(n)` or `surface(g)`.
    pub fn builtin(spec: &str) -> Result<PDAlgebra, FrobeniusError> {
        let unknown = || FrobeniusError::UnknownBuiltin(spec.into());
        let (name, arg) = spec.trim().strip_suffix(')').and_then(|s| s.split_once('(')).ok_or_else(unknown)?;
        let arg: i64 = arg.trim().parse().map_err(|_| unknown())?;
        match (name.trim(), usize::try_from(arg)) {
            ("sphere", _) => PDAlgebra::sphere(arg),
            ("cp", Ok(n)) => PDAlgebra::cp(n),
            ("surface", Ok(g)) => PDAlgebra::surface(g),
            _ => Err(unknown()),
        }
    }

    /// A sum of basis elements as text, e.g. `2 a + -1/2 b`.
    pub fn format_vector(&self, v: &[Q]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if c.is_one() { self.names[i].clone() } else { format!("{} {}", fmt_q(c), self.names[i]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Assembles a table from the products of non-unit elements, filling in the
/// unit and graded commutativity.
pub(crate) struct Builder {
    d: i64,
    names: Vec<String>,
    degrees: Vec<i64>,
    product: Vec<Vec<Vec<Q>>>,
    orientation: Vec<Q>,
}

impl Builder {
    fn new(d: i64, basis: &[(&str, i64)]) -> Self {
        let n = basis.len();
        let mut product = vec![vec![vec![Q::zero(); n]; n]; n];
        for i in 0..n {
            product[0][i][i] = Q::one();
            product[i][0][i] = Q::one();
        }
        Builder {
            d,
            names: basis.iter().map(|(s, _)| s.to_string()).collect(),
            degrees: basis.iter().map(|&(_, g)| g).collect(),
            product,
            orientation: vec![Q::zero(); n],
        }
    }

    fn mul(mut self, i: usize, j: usize, k: usize, c: Q) -> Self {
        self.product[i][j][k] = c;
        self
    }

    fn orient(mut self, name: &str) -> Self {
        let i = self.names.iter().position(|x| x == name).expect("known name");
        self.orientation[i] = Q::one();
        self
    }

    fn build(self) -> Result<PDAlgebra, FrobeniusError> {
        PDAlgebra::new(self.d, self.names, self.degrees, self.product, self.orientation, None)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for a in [
            PDAlgebra::sphere(1),
            PDAlgebra::sphere(2),
            PDAlgebra::sphere(3),
            PDAlgebra::cp(1),
            PDAlgebra::cp(3),
            PDAlgebra::surface(0),
            PDAlgebra::surface(1),
            PDAlgebra::surface(3),
        ] {
            let a = a.unwrap();
            assert_eq!(a.frobenius_violation(), None);
        }
        assert!(PDAlgebra::builtin("torus(1)").is_err());
        assert_eq!(PDAlgebra::builtin("cp(2)").unwrap(), PDAlgebra::cp(2).unwrap());
    }

    #[test]
    fn sphere_diagonal() {
        let s = PDAlgebra::sphere(2).unwrap();
        assert_eq!(s.diagonal(1), vec![vec![q(0), q(0)], vec![q(0), q(1)]]);
        assert_eq!(s.diagonal(0), vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
    }

    #[test]
    fn surface_products() {
        let s = PDAlgebra::surface(2).unwrap();
        let (a1, b1, b2, w) = (1, 3, 4, 5);
        assert_eq!(s.product(a1, b1)[w], q(1));
        assert_eq!(s.product(b1, a1)[w], q(-1));
        assert!(s.product(a1, b2).iter().all(Zero::is_zero));
        assert!(s.product(a1, a1).iter().all(Zero::is_zero));
    }

    #[test]
    fn validation_errors() {
        let mut b = Builder::new(2, &[("1", 0), ("w", 2)]);
        assert_eq!(b.clone_build(), Err(FrobeniusError::DegeneratePairing));
        b = b.orient("w");
        assert!(b.clone_build().is_ok());
        let bad = Builder::new(4, &[("1", 0), ("x", 2), ("y", 2), ("z", 4)]).orient("z").mul(1, 1, 3, q(1));
        assert!(matches!(bad.clone_build(), Err(FrobeniusError::DegeneratePairing)));
        let noncomm = Builder::new(2, &[("1", 0), ("a", 1), ("b", 1), ("w", 2)]).orient("w").mul(1, 2, 3, q(1)).mul(2, 1, 3, q(1));
        assert!(matches!(noncomm.clone_build(), Err(FrobeniusError::NotGradedCommutative(..))));
        let disconnected = Builder::new(2, &[("1", 0), ("u", 0), ("w", 2)]).orient("w");
        assert!(matches!(disconnected.clone_build(), Err(FrobeniusError::NotConnected(..))));
        let mut wrong_o = Builder::new(2, &[("1", 0), ("w", 2)]).orient("w");
        wrong_o.orientation[0] = q(1);
        assert!(matches!(wrong_o.clone_build(), Err(FrobeniusError::OrientationDegreeError(..))));
        assert!(matches!(non_associative().clone_build(), Err(FrobeniusError::NotAssociative(..))));
    }

    /// Commutative and Frobenius, but `(x·x)·y = y' ≠ 0 = x·(x·y)`.
    pub(crate) fn non_associative() -> Builder {
        let mut b = Builder::new(8, &[("1", 0), ("x", 2), ("y", 2), ("p", 4), ("x'", 6), ("y'", 6), ("w", 8)]).orient("w");
        for (i, j, k) in [(1, 1, 3), (2, 2, 3), (1, 3, 4), (2, 3, 5), (1, 4, 6), (2, 5, 6), (3, 3, 6)] {
            b = b.mul(i, j, k, q(1)).mul(j, i, k, q(1));
        }
        b
    }

    impl Builder {
        pub(crate) fn clone_build(&self) -> Result<PDAlgebra, FrobeniusError> {
            PDAlgebra::new(self.d, self.names.clone(), self.degrees.clone(), self.product.clone(), self.orientation.clone(), None)
        }
    }
}
