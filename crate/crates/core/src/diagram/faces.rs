use std::collections::VecDeque;

use super::{LinkDiagram, Slot};

/// Complementary regions of a diagram, traced from darts.
///
/// A dart `(c, s)` leaves crossing `c` through slot `s`; its face is the
/// region on its right. Walking a face: arrive at `(c', s')`, leave again
/// through `(c', s' + 1)`.
#[derive(Clone, Debug)]
pub struct Faces {
    darts: Vec<Vec<Slot>>,
    dart_face: Vec<usize>,
    arcs: Vec<Vec<usize>>,
    /// Checkerboard color of each face.
    color: Vec<u8>,
}

impl Faces {
    pub(crate) fn trace(d: &LinkDiagram) -> Faces {
        let n = d.n_crossings();
        if n == 0 {
            return Faces {
                darts: vec![Vec::new(), Vec::new()],
                dart_face: Vec::new(),
                arcs: vec![vec![0], vec![0]],
                color: vec![0, 1],
            };
        }
        let mut dart_face = vec![usize::MAX; 4 * n];
        let mut darts = Vec::new();
        let mut arcs = Vec::new();
        for start in 0..4 * n {
            if dart_face[start] != usize::MAX {
                continue;
            }
            let f = darts.len();
            let mut cycle = Vec::new();
            let mut cur = (start / 4, start % 4);
            while dart_face[cur.0 * 4 + cur.1] == usize::MAX {
                dart_face[cur.0 * 4 + cur.1] = f;
                cycle.push(cur);
                let (c2, s2) = d.across(cur);
                cur = (c2, (s2 + 1) % 4);
            }
            arcs.push(cycle.iter().map(|&(c, s)| d.crossing(c)[s]).collect());
            darts.push(cycle);
        }
        let mut faces = Faces { darts, dart_face, arcs, color: Vec::new() };
        faces.color = faces.two_color(d);
        faces
    }

    fn two_color(&self, d: &LinkDiagram) -> Vec<u8> {
        let nf = self.darts.len();
        let mut adj = vec![Vec::new(); nf];
        for c in 0..d.n_crossings() {
            for s in 0..4 {
                let f1 = self.dart_face_of((c, s));
                let f2 = self.dart_face_of(d.across((c, s)));
                adj[f1].push(f2);
            }
        }
        let mut color = vec![u8::MAX; nf];
        for root in 0..nf {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(f) = queue.pop_front() {
                for &g in &adj[f] {
                    if color[g] == u8::MAX {
                        color[g] = 1 - color[f];
                        queue.push_back(g);
                    }
                }
            }
        }
        color
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn dart_face_of(&self, (c, s): Slot) -> usize {
        self.dart_face[c * 4 + s]
    }

    /// Face in the corner between slots `k` and `k + 1` of crossing `c`.
    pub fn corner_face(&self, c: usize, k: usize) -> usize {
        self.dart_face[c * 4 + (k + 1) % 4]
    }

    /// Face on the right of the oriented arc.
    pub fn right_of_arc(&self, d: &LinkDiagram, arc: usize) -> usize {
        if d.n_crossings() == 0 {
            return 0;
        }
        self.dart_face_of(d.arc_tail(arc))
    }

    pub fn color(&self, f: usize) -> u8 {
        self.color[f]
    }

    /// Arc indices around each face, in walking order.
    pub fn arcs(&self) -> &[Vec<usize>] {
        &self.arcs
    }

    /// Faces as cyclic sequences of arc labels.
    pub fn arc_label_cycles(&self, d: &LinkDiagram) -> Vec<Vec<u32>> {
        self.arcs.iter().map(|f| f.iter().map(|&a| d.arc_label(a)).collect()).collect()
    }

    /// Adjacent faces across every arc get different colors.
    pub fn is_checkerboard(&self, d: &LinkDiagram) -> bool {
        (0..d.n_crossings()).all(|c| {
            (0..4).all(|s| {
                self.color[self.dart_face_of((c, s))] != self.color[self.dart_face_of(d.across((c, s)))]
            })
        })
    }
}
