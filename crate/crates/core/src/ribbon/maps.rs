//! Unlabelled connected combinatorial maps, enumerated by edge growth.
//!
//! Every connected map with at least one edge arises from a smaller one by
//! adding a pendant edge (a new univalent vertex) or a chord between two
//! corners. Maps are stored in a canonical labelling so duplicates collapse.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::Dart;

fn cycles_of(perm: &[Dart]) -> Vec<Vec<Dart>> {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x as Dart);
            x = perm[x] as usize;
        }
        if !cyc.is_empty() {
            cycles.push(cyc);
        }
    }
    cycles
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Map {
    pub alpha: Vec<Dart>,
    pub sigma: Vec<Dart>,
}

impl Map {
    pub fn edges(&self) -> usize {
        self.alpha.len() / 2
    }

    pub fn vertices(&self) -> Vec<Vec<Dart>> {
        if self.alpha.is_empty() {
            return vec![Vec::new()];
        }
        cycles_of(&self.sigma)
    }

    pub fn faces(&self) -> Vec<Vec<Dart>> {
        if self.alpha.is_empty() {
            return vec![Vec::new()];
        }
        let phi: Vec<Dart> = (0..self.alpha.len()).map(|x| self.sigma[self.alpha[x] as usize]).collect();
        cycles_of(&phi)
    }

    pub fn genus(&self) -> usize {
        (self.edges() + 2 - self.vertices().len() - self.faces().len()) / 2
    }

    fn code_from(&self, root: usize, label: &mut [u8], order: &mut Vec<usize>) -> Vec<u16> {
        label.fill(u8::MAX);
        order.clear();
        label[root] = 0;
        order.push(root);
        let mut code = Vec::with_capacity(self.alpha.len());
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for y in [self.sigma[x] as usize, self.alpha[x] as usize] {
                if label[y] == u8::MAX {
                    label[y] = order.len() as u8;
                    order.push(y);
                }
            }
            code.push((label[self.sigma[x] as usize] as u16) << 8 | label[self.alpha[x] as usize] as u16);
            i += 1;
        }
        code
    }

    /// Canonical relabelling and the order of the automorphism group.
    pub fn canonical(&self) -> (Map, usize) {
        let nd = self.alpha.len();
        if nd == 0 {
            return (self.clone(), 1);
        }
        let mut label = vec![0u8; nd];
        let mut order = Vec::with_capacity(nd);
        let mut best: Option<Vec<u16>> = None;
        let mut autos = 0;
        for r in 0..nd {
            let code = self.code_from(r, &mut label, &mut order);
            match &best {
                Some(b) if *b < code => {}
                Some(b) if *b == code => autos += 1,
                _ => {
                    best = Some(code);
                    autos = 1;
                }
            }
        }
        let best = best.unwrap();
        let map = Map {
            sigma: best.iter().map(|&c| (c >> 8) as Dart).collect(),
            alpha: best.iter().map(|&c| (c & 0xff) as Dart).collect(),
        };
        (map, autos)
    }

    fn with_pendant(&self, after: usize) -> Map {
        let nd = self.alpha.len();
        let (a, b) = (nd as Dart, nd as Dart + 1);
        let mut alpha = self.alpha.clone();
        let mut sigma = self.sigma.clone();
        alpha.extend([b, a]);
        sigma.extend([self.sigma[after], b]);
        sigma[after] = a;
        Map { alpha, sigma }
    }

    fn with_chord(&self, x: usize, y: usize) -> Map {
        let nd = self.alpha.len();
        let (a, b) = (nd as Dart, nd as Dart + 1);
        let mut alpha = self.alpha.clone();
        let mut sigma = self.sigma.clone();
        alpha.extend([b, a]);
        if x == y {
            sigma.extend([b, self.sigma[x]]);
            sigma[x] = a;
        } else {
            sigma.extend([self.sigma[x], self.sigma[y]]);
            sigma[x] = a;
            sigma[y] = b;
        }
        Map { alpha, sigma }
    }
}

type Catalog = Mutex<HashMap<(usize, usize, usize), Arc<Vec<Map>>>>;

fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All connected maps with `e` edges, `v` vertices and genus `g`, canonical and sorted.
pub fn maps(e: usize, v: usize, g: usize) -> Arc<Vec<Map>> {
    if let Some(found) = catalog().lock().unwrap().get(&(e, v, g)) {
        return found.clone();
    }
    let computed = Arc::new(compute(e, v, g));
    catalog().lock().unwrap().entry((e, v, g)).or_insert(computed).clone()
}

fn compute(e: usize, v: usize, g: usize) -> Vec<Map> {
    if v == 0 || (e + 2) < v + 2 * g || e + 1 < v {
        return Vec::new();
    }
    let faces = e + 2 - v - 2 * g;
    if faces == 0 {
        return Vec::new();
    }
    if e == 0 {
        return if v == 1 && g == 0 {
            vec![Map { alpha: Vec::new(), sigma: Vec::new() }]
        } else {
            Vec::new()
        };
    }
    let mut found = BTreeSet::new();
    let mut keep = |m: Map| {
        if m.vertices().len() == v && m.genus() == g {
            found.insert(m.canonical().0);
        }
    };
    if v >= 2 {
        for m in maps(e - 1, v - 1, g).iter() {
            if m.alpha.is_empty() {
                keep(Map { alpha: vec![1, 0], sigma: vec![0, 1] });
                continue;
            }
            for x in 0..m.alpha.len() {
                keep(m.with_pendant(x));
            }
        }
    }
    let mut chords = |src: &[Map]| {
        for m in src {
            if m.alpha.is_empty() {
                keep(Map { alpha: vec![1, 0], sigma: vec![1, 0] });
                continue;
            }
            for x in 0..m.alpha.len() {
                for y in x..m.alpha.len() {
                    keep(m.with_chord(x, y));
                }
            }
        }
    };
    chords(&maps(e - 1, v, g));
    if g >= 1 {
        chords(&maps(e - 1, v, g - 1));
    }
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Rooted maps: sum over unrooted maps of 2E / |Aut|.
    fn rooted(e: usize, genus: Option<usize>) -> usize {
        let mut total = 0;
        for v in 1..=e + 1 {
            for g in 0..=e / 2 {
                if genus.is_some_and(|h| h != g) {
                    continue;
                }
                for m in maps(e, v, g).iter() {
                    let (_, aut) = m.canonical();
                    total += (2 * e).max(1) / aut;
                }
            }
        }
        total
    }

    #[test]
    fn planar_rooted_counts() {
        let expected = [1, 2, 9, 54, 378, 2916];
        for (e, &n) in expected.iter().enumerate() {
            assert_eq!(rooted(e, Some(0)), n, "E = {e}");
        }
    }

    #[test]
    fn all_genera_rooted_counts() {
        let expected = [1, 2, 10, 74, 706, 8162];
        for (e, &n) in expected.iter().enumerate() {
            assert_eq!(rooted(e, None), n, "E = {e}");
        }
    }

    #[test]
    fn canonical_form_is_a_class_invariant() {
        for m in maps(4, 2, 1).iter() {
            let nd = m.alpha.len();
            let p: Vec<usize> = (0..nd).map(|x| (x * 5 + 3) % nd).collect();
            let mut alpha = vec![0; nd];
            let mut sigma = vec![0; nd];
            for x in 0..nd {
                alpha[p[x]] = p[m.alpha[x] as usize] as Dart;
                sigma[p[x]] = p[m.sigma[x] as usize] as Dart;
            }
            assert_eq!(Map { alpha, sigma }.canonical().0, *m);
        }
    }
}
