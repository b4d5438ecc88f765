//! Cyclic words and their linear combinations.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::space::{odd, GradedSpace, Letter};
use super::CyclicError;
use crate::rational::{fmt_q, parse_q, Q};

/// A word in its canonical rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CyclicWord(Vec<Letter>);

impl CyclicWord {
    pub fn empty() -> Self {
        CyclicWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, space: &GradedSpace) -> i64 {
        space.word_degree(&self.0)
    }

    pub fn contains(&self, a: Letter) -> bool {
        self.0.contains(&a)
    }
}

/// Lexicographically minimal rotation of `letters` and the Koszul sign with
/// `letters = sign · rotation`; the sign is `0` when two minimal rotations
/// disagree, i.e. the word equals minus itself.
pub fn cyclic_normalize(space: &GradedSpace, letters: &[Letter]) -> (CyclicWord, i8) {
    let k = letters.len();
    if k < 2 {
        return (CyclicWord(letters.to_vec()), 1);
    }
    let total = space.word_degree(letters);
    let mut best: Option<(usize, bool)> = None;
    let mut prefix = 0i64;
    for r in 0..k {
        let neg = odd(prefix) && odd(total - prefix);
        let better = match best {
            None => true,
            Some((b, bneg)) => {
                let ord = letters[r..].iter().chain(&letters[..r]).cmp(letters[b..].iter().chain(&letters[..b]));
                match ord {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Equal => {
                        if bneg != neg {
                            return (CyclicWord::empty(), 0);
                        }
                        false
                    }
                    std::cmp::Ordering::Greater => false,
                }
            }
        };
        if better {
            best = Some((r, neg));
        }
        prefix += space.degree(letters[r]);
    }
    let (r, neg) = best.unwrap();
    let mut w = letters[r..].to_vec();
    w.extend_from_slice(&letters[..r]);
    (CyclicWord(w), if neg { -1 } else { 1 })
}

/// A finite combination of tuples of cyclic words; a tuple of length `m`
/// stands for an element of the `m`-fold tensor power.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordSum {
    terms: BTreeMap<Vec<CyclicWord>, Q>,
}

impl WordSum {
    pub fn new() -> Self {
        WordSum::default()
    }

    pub fn single(tuple: Vec<CyclicWord>, c: Q) -> Self {
        let mut s = WordSum::new();
        s.add_term(tuple, c);
        s
    }

    pub fn word(w: CyclicWord) -> Self {
        WordSum::single(vec![w], Q::one())
    }

    /// One word given by arbitrary letters, normalized.
    pub fn from_letters(space: &GradedSpace, letters: &[Letter]) -> Self {
        let mut s = WordSum::new();
        s.add_letters(space, &[letters.to_vec()], &Q::one());
        s
    }

    pub fn add_term(&mut self, tuple: Vec<CyclicWord>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(tuple) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c` times the tuple of words read from raw letter sequences.
    pub fn add_letters(&mut self, space: &GradedSpace, words: &[Vec<Letter>], c: &Q) {
        let mut sign = 1i8;
        let mut tuple = Vec::with_capacity(words.len());
        for w in words {
            let (cw, s) = cyclic_normalize(space, w);
            if s == 0 {
                return;
            }
            sign *= s;
            tuple.push(cw);
        }
        self.add_term(tuple, if sign < 0 { -c.clone() } else { c.clone() });
    }

    pub fn add(&mut self, other: &WordSum, c: &Q) {
        for (t, x) in &other.terms {
            self.add_term(t.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &Q) -> WordSum {
        let mut s = WordSum::new();
        s.add(self, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<CyclicWord>, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, tuple: &[CyclicWord]) -> Q {
        self.terms.get(tuple).cloned().unwrap_or_else(Q::zero)
    }

    /// Tensor product, concatenating tuples.
    pub fn tensor(&self, other: &WordSum) -> WordSum {
        let mut s = WordSum::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut t = a.clone();
                t.extend(b.iter().cloned());
                s.add_term(t, x * y);
            }
        }
        s
    }

    /// Reorders every tuple so that slot `k` holds the old slot `from[k]`,
    /// with the Koszul sign of the reordering.
    pub fn permuted(&self, space: &GradedSpace, from: &[usize]) -> WordSum {
        let mut s = WordSum::new();
        for (t, c) in &self.terms {
            let mut neg = false;
            for a in 0..from.len() {
                for b in a + 1..from.len() {
                    if from[a] > from[b] && odd(t[from[a]].degree(space)) && odd(t[from[b]].degree(space)) {
                        neg = !neg;
                    }
                }
            }
            let tuple = from.iter().map(|&k| t[k].clone()).collect();
            s.add_term(tuple, if neg { -c.clone() } else { c.clone() });
        }
        s
    }

    /// Drops every tuple containing the empty word.
    pub fn reduced(&self) -> WordSum {
        WordSum { terms: self.terms.iter().filter(|(t, _)| t.iter().all(|w| !w.is_empty())).map(|(t, c)| (t.clone(), c.clone())).collect() }
    }

    /// The degree shared by all terms, or `None` for zero or mixed sums.
    pub fn degree(&self, space: &GradedSpace) -> Option<i64> {
        let mut it = self.terms.keys().map(|t| t.iter().map(|w| w.degree(space)).sum::<i64>());
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }

    /// Terms as lines `coeff ; a,b,c | d,e`.
    pub fn to_lines(&self, space: &GradedSpace) -> String {
        let mut out = String::new();
        for (t, c) in &self.terms {
            let words: Vec<String> =
                t.iter().map(|w| w.letters().iter().map(|&a| space.name(a)).collect::<Vec<_>>().join(",")).collect();
            out.push_str(&format!("{} ; {}\n", fmt_q(c), words.join(" | ")));
        }
        out
    }

    pub fn parse_lines(space: &GradedSpace, text: &str) -> Result<WordSum, CyclicError> {
        let mut s = WordSum::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |m: &str| CyclicError::Parse(format!("line {}: {m}", no + 1));
            let (c, rest) = line.split_once(';').ok_or_else(|| bad("missing ';'"))?;
            let c = parse_q(c).ok_or_else(|| bad("bad coefficient"))?;
            let mut words = Vec::new();
            for part in rest.split('|') {
                let part = part.trim();
                let mut w = Vec::new();
                if !part.is_empty() {
                    for name in part.split(',') {
                        w.push(space.letter(name.trim()).ok_or_else(|| bad(&format!("unknown letter {name:?}")))?);
                    }
                }
                words.push(w);
            }
            s.add_letters(space, &words, &c);
        }
        Ok(s)
    }
}
