use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Serialize, Serializer};

use crate::algebra::LaurentPoly;
use crate::diagram::{Marker, TaitGraph};

/// Activity letter of one edge with respect to a spanning tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub in_tree: bool,
    /// Lowest edge of its cut (tree edge) or cycle (non-tree edge).
    pub live: bool,
    pub negative: bool,
}

impl Letter {
    /// Marker of the partial smoothing: live edges stay as crossings.
    pub fn marker(self) -> Marker {
        match (self.live, self.in_tree, self.negative) {
            (true, _, _) => Marker::Live,
            (false, true, false) | (false, false, true) => Marker::A,
            (false, false, false) | (false, true, true) => Marker::B,
        }
    }

    /// Contribution to the Kauffman bracket, as `(coefficient, A-exponent)`.
    pub fn monomial(self) -> (i64, i64) {
        match (self.in_tree, self.live, self.negative) {
            (true, true, false) => (-1, -3),
            (true, false, false) => (1, 1),
            (false, true, false) => (-1, 3),
            (false, false, false) => (1, -1),
            (true, true, true) => (-1, 3),
            (true, false, true) => (1, -1),
            (false, true, true) => (-1, -3),
            (false, false, true) => (1, 1),
        }
    }

    /// Sign of the kink a live edge leaves in the twisted unknot.
    pub fn kink_sign(self) -> Option<i8> {
        self.live.then_some(if self.in_tree != self.negative { -1 } else { 1 })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match (self.in_tree, self.live) {
            (true, true) => "L",
            (true, false) => "D",
            (false, true) => "ℓ",
            (false, false) => "d",
        };
        write!(f, "{base}")?;
        if self.negative {
            write!(f, "\u{304}")?;
        }
        Ok(())
    }
}

/// Letter counts `p, q, r, s, x, y, z, w` of `L, D, ℓ, d, L̄, D̄, ℓ̄, d̄`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LetterCounts {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub w: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActivityWord {
    pub letters: Vec<Letter>,
}

impl ActivityWord {
    pub fn counts(&self) -> LetterCounts {
        let mut c = LetterCounts::default();
        for l in &self.letters {
            let slot = match (l.negative, l.in_tree, l.live) {
                (false, true, true) => &mut c.p,
                (false, true, false) => &mut c.q,
                (false, false, true) => &mut c.r,
                (false, false, false) => &mut c.s,
                (true, true, true) => &mut c.x,
                (true, true, false) => &mut c.y,
                (true, false, true) => &mut c.z,
                (true, false, false) => &mut c.w,
            };
            *slot += 1;
        }
        c
    }

    /// `(u, v) = (p - r - x + z, p + q)`.
    pub fn gradings(&self) -> (i64, i64) {
        let c = self.counts();
        let u = c.p as i64 - c.r as i64 - c.x as i64 + c.z as i64;
        (u, (c.p + c.q) as i64)
    }

    /// Product of the per-letter monomials, in `A`.
    pub fn monomial(&self) -> LaurentPoly {
        let (coeff, exp) = self
            .letters
            .iter()
            .map(|l| l.monomial())
            .fold((1, 0), |(c, e), (c2, e2)| (c * c2, e + e2));
        LaurentPoly::monomial(coeff, exp)
    }

    pub fn smoothing(&self) -> Vec<Marker> {
        self.letters.iter().map(|l| l.marker()).collect()
    }
}

impl fmt::Display for ActivityWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for ActivityWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Edges `f` with endpoints on both sides of `T - e`, including `e` itself.
pub fn cut(g: &TaitGraph, tree: &[usize], e: usize) -> Vec<usize> {
    let mut uf = UnionFind::<usize>::new(g.n_vertices());
    for &t in tree {
        if t != e {
            uf.union(g.edges[t].u, g.edges[t].v);
        }
    }
    (0..g.n_edges())
        .filter(|&f| !uf.equiv(g.edges[f].u, g.edges[f].v))
        .collect()
}

/// `f` together with the tree path joining its endpoints.
pub fn cycle(g: &TaitGraph, tree: &[usize], f: usize) -> Vec<usize> {
    let (src, dst) = (g.edges[f].u, g.edges[f].v);
    let mut out = vec![f];
    if src == dst {
        return out;
    }
    let n = g.n_vertices();
    let mut via: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[src] = true;
    let mut stack = vec![src];
    while let Some(x) = stack.pop() {
        for &t in tree {
            let e = &g.edges[t];
            let y = if e.u == x {
                e.v
            } else if e.v == x {
                e.u
            } else {
                continue;
            };
            if !seen[y] {
                seen[y] = true;
                via[y] = Some(t);
                stack.push(y);
            }
        }
    }
    let mut x = dst;
    while x != src {
        let t = via[x].expect("tree spans the graph");
        out.push(t);
        let e = &g.edges[t];
        x = if e.u == x { e.v } else { e.u };
    }
    out.sort_unstable();
    out
}

/// Activity word of `tree` (sorted edge indices) in edge order.
pub fn activity_word(g: &TaitGraph, tree: &[usize]) -> ActivityWord {
    let letters = (0..g.n_edges())
        .map(|e| {
            let in_tree = tree.contains(&e);
            let group = if in_tree { cut(g, tree, e) } else { cycle(g, tree, e) };
            Letter {
                in_tree,
                live: group.iter().min() == Some(&e),
                negative: g.edges[e].sign < 0,
            }
        })
        .collect();
    ActivityWord { letters }
}

/// `f ∈ cut(T, e)` iff `e ∈ cyc(T, f)` for every tree edge `e` and non-tree `f`.
pub fn cut_cycle_duality_holds(g: &TaitGraph, tree: &[usize]) -> bool {
    let non_tree: Vec<usize> = (0..g.n_edges()).filter(|f| !tree.contains(f)).collect();
    tree.iter().all(|&e| {
        let cut_e = cut(g, tree, e);
        non_tree
            .iter()
            .all(|&f| cut_e.contains(&f) == cycle(g, tree, f).contains(&e))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letter(in_tree: bool, live: bool, negative: bool) -> Letter {
        Letter { in_tree, live, negative }
    }

    #[test]
    fn letter_text() {
        let w = ActivityWord {
            letters: vec![letter(false, true, false), letter(true, false, false), letter(true, false, true), letter(false, false, true)],
        };
        assert_eq!(w.to_string(), "ℓDD\u{304}d\u{304}");
        assert_eq!(w.gradings(), (-1, 1));
        assert_eq!(w.monomial(), LaurentPoly::monomial(-1, 4));
        assert_eq!(crate::diagram::markers_to_string(&w.smoothing()), "*ABA");
    }

    #[test]
    fn empty_word() {
        let w = ActivityWord { letters: vec![] };
        assert_eq!(w.monomial(), LaurentPoly::one());
        assert_eq!(w.gradings(), (0, 0));
    }
}
