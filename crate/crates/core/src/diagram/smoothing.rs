use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::LinkDiagram;
use crate::error::{Error, Result};

/// Per-crossing choice: A-smoothing, B-smoothing, or left as a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Marker {
    A,
    B,
    #[serde(rename = "*")]
    Live,
}

impl Marker {
    pub fn as_char(self) -> char {
        match self {
            Marker::A => 'A',
            Marker::B => 'B',
            Marker::Live => '*',
        }
    }

    /// Slot pairs joined by this smoothing.
    pub fn pairs(self) -> Option<[(usize, usize); 2]> {
        match self {
            Marker::A => Some([(0, 1), (2, 3)]),
            Marker::B => Some([(0, 3), (1, 2)]),
            Marker::Live => None,
        }
    }

    /// Slot reached when entering at `s`.
    pub fn exit_slot(self, s: usize) -> usize {
        match self {
            Marker::A => [1, 0, 3, 2][s],
            Marker::B => [3, 2, 1, 0][s],
            Marker::Live => (s + 2) % 4,
        }
    }
}

pub fn markers_to_string(m: &[Marker]) -> String {
    m.iter().map(|x| x.as_char()).collect()
}

pub fn markers_from_str(s: &str) -> Result<Vec<Marker>> {
    s.chars()
        .enumerate()
        .map(|(i, ch)| match ch {
            'A' => Ok(Marker::A),
            'B' => Ok(Marker::B),
            '*' => Ok(Marker::Live),
            _ => Err(Error::Parse { pos: i, msg: format!("unknown marker `{ch}`") }),
        })
        .collect()
}

/// Components of a (partially) smoothed diagram, as a partition of arcs.
///
/// With no `*` markers these are the circles of a Kauffman state. Circles are
/// numbered by their smallest arc index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smoothing {
    markers: Vec<Marker>,
    circle_of_arc: Vec<usize>,
    n_circles: usize,
}

impl Smoothing {
    pub(crate) fn new(d: &LinkDiagram, markers: &[Marker]) -> Smoothing {
        assert_eq!(markers.len(), d.n_crossings(), "one marker per crossing");
        let n_arcs = d.n_arcs();
        let mut uf = UnionFind::<usize>::new(n_arcs);
        for (c, &m) in markers.iter().enumerate() {
            let x = d.crossing(c);
            match m.pairs() {
                Some(pairs) => {
                    for (s, t) in pairs {
                        uf.union(x[s], x[t]);
                    }
                }
                None => {
                    for s in 1..4 {
                        uf.union(x[0], x[s]);
                    }
                }
            }
        }
        let mut id_of_root = vec![usize::MAX; n_arcs];
        let mut circle_of_arc = vec![0; n_arcs];
        let mut n_circles = 0;
        for (a, slot) in circle_of_arc.iter_mut().enumerate() {
            let r = uf.find(a);
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = n_circles;
                n_circles += 1;
            }
            *slot = id_of_root[r];
        }
        Smoothing { markers: markers.to_vec(), circle_of_arc, n_circles }
    }

    pub fn markers(&self) -> &[Marker] {
        &self.markers
    }

    pub fn n_circles(&self) -> usize {
        self.n_circles
    }

    pub fn circle_of_arc(&self, arc: usize) -> usize {
        self.circle_of_arc[arc]
    }

    /// Arcs of each circle.
    pub fn circles(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_circles];
        for (a, &c) in self.circle_of_arc.iter().enumerate() {
            out[c].push(a);
        }
        out
    }

    /// `#A - #B`, ignoring live crossings.
    pub fn sigma(&self) -> i64 {
        sigma(&self.markers)
    }
}

pub fn sigma(markers: &[Marker]) -> i64 {
    markers
        .iter()
        .map(|m| match m {
            Marker::A => 1,
            Marker::B => -1,
            Marker::Live => 0,
        })
        .sum()
}

/// Nugatory test for live crossing `c` inside a partially smoothed diagram.
pub(crate) fn is_nugatory_in(d: &LinkDiagram, markers: &[Marker], c: usize) -> bool {
    debug_assert_eq!(markers[c], Marker::Live);
    let base = Smoothing::new(d, markers).n_circles();
    let mut m = markers.to_vec();
    [Marker::A, Marker::B].into_iter().any(|choice| {
        m[c] = choice;
        Smoothing::new(d, &m).n_circles() > base
    })
}

/// Writhe of the live crossings after applying `markers`, with each
/// component of the result oriented independently.
pub(crate) fn partial_writhe(d: &LinkDiagram, markers: &[Marker]) -> i64 {
    partial_signs(d, markers).into_iter().flatten().map(i64::from).sum()
}

/// Sign of each live crossing of the partially smoothed diagram.
pub(crate) fn partial_signs(d: &LinkDiagram, markers: &[Marker]) -> Vec<Option<i8>> {
    let n = d.n_crossings();
    // entered[c] = slots through which live crossing c was entered
    let mut entered = vec![Vec::new(); n];
    let mut arc_done = vec![false; d.n_arcs()];
    for a0 in 0..d.n_arcs() {
        if arc_done[a0] || n == 0 {
            continue;
        }
        let [from, _] = arc_ends(d, a0);
        let start = (a0, d.across(from));
        let (mut arc, mut at) = start;
        loop {
            arc_done[arc] = true;
            let (c, s) = at;
            if markers[c] == Marker::Live {
                entered[c].push(s);
            }
            let out = markers[c].exit_slot(s);
            arc = d.crossing(c)[out];
            at = d.across((c, out));
            if (arc, at) == start {
                break;
            }
        }
    }
    entered
        .iter()
        .enumerate()
        .map(|(c, e)| {
            (markers[c] == Marker::Live).then(|| {
                let under_fwd = e.contains(&0);
                let over_fwd = e.contains(&3);
                if under_fwd == over_fwd {
                    1
                } else {
                    -1
                }
            })
        })
        .collect()
}

fn arc_ends(d: &LinkDiagram, arc: usize) -> [(usize, usize); 2] {
    let t = d.arc_tail(arc);
    [t, d.across(t)]
}
