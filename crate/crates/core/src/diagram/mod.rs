//! Oriented, based link diagrams given by planar diagram codes.
//!
//! Each crossing lists four arc labels counterclockwise, starting with the
//! incoming under-strand. Slot 0 is the incoming under-strand, slot 2 the
//! outgoing one; the over-strand occupies slots 1 and 3. A crossing is
//! positive when the over-strand runs from slot 3 to slot 1.

mod faces;
mod pd;
mod smoothing;
mod tait;

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};

pub use faces::Faces;
pub use smoothing::{markers_from_str, markers_to_string, sigma, Marker, Smoothing};
pub use tait::{TaitEdge, TaitGraph};

/// A position on a crossing: `(crossing index, slot 0..4)`.
pub type Slot = (usize, usize);

#[derive(Clone, Debug)]
pub struct LinkDiagram {
    label: String,
    /// Arc indices per crossing; arcs are numbered by sorted label.
    crossings: Vec<[usize; 4]>,
    arc_labels: Vec<u32>,
    arc_ends: Vec<[Slot; 2]>,
    /// Slot the oriented arc leaves from and the slot it arrives at.
    arc_tail: Vec<Slot>,
    arc_head: Vec<Slot>,
    signs: Vec<i8>,
    components: usize,
    basepoint: usize,
}

impl LinkDiagram {
    /// Parse the `PD[X(a,b,c,d), ...] base=<arc>` text form.
    pub fn parse(text: &str) -> Result<Self> {
        let raw = pd::parse(text)?;
        Self::from_pd(&raw.crossings, raw.basepoint)
    }

    pub fn from_pd(crossings: &[[u32; 4]], basepoint: Option<u32>) -> Result<Self> {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for x in crossings {
            for &a in x {
                *counts.entry(a).or_default() += 1;
            }
        }
        if let Some((&arc, &count)) = counts.iter().find(|(_, &n)| n != 2) {
            return Err(Error::ArcMultiplicity { arc, count });
        }
        let arc_labels: Vec<u32> = if crossings.is_empty() {
            vec![basepoint.unwrap_or(1)]
        } else {
            counts.keys().copied().collect()
        };
        let index: BTreeMap<u32, usize> = arc_labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let basepoint = match basepoint {
            Some(b) => *index.get(&b).ok_or(Error::Basepoint(b))?,
            None => 0,
        };
        let xs: Vec<[usize; 4]> = crossings.iter().map(|x| x.map(|a| index[&a])).collect();

        let mut ends: Vec<Vec<Slot>> = vec![Vec::new(); arc_labels.len()];
        for (c, x) in xs.iter().enumerate() {
            for (s, &a) in x.iter().enumerate() {
                ends[a].push((c, s));
            }
        }
        let arc_ends: Vec<[Slot; 2]> = if xs.is_empty() {
            Vec::new()
        } else {
            ends.iter().map(|e| [e[0], e[1]]).collect()
        };

        let mut d = LinkDiagram {
            label: String::new(),
            crossings: xs,
            arc_labels,
            arc_ends,
            arc_tail: Vec::new(),
            arc_head: Vec::new(),
            signs: Vec::new(),
            components: 1,
            basepoint,
        };
        d.check_connected()?;
        d.orient()?;
        let faces = d.faces();
        let expected = d.n_crossings() + 2;
        if faces.len() != expected {
            return Err(Error::NonPlanar { faces: faces.len(), expected });
        }
        Ok(d)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_arcs(&self) -> usize {
        self.arc_labels.len()
    }

    /// Arc indices at the four slots of crossing `c`.
    pub fn crossing(&self, c: usize) -> [usize; 4] {
        self.crossings[c]
    }

    pub fn arc_label(&self, arc: usize) -> u32 {
        self.arc_labels[arc]
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn n_components(&self) -> usize {
        self.components
    }

    pub fn sign(&self, c: usize) -> i8 {
        self.signs[c]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// The slot at the other end of the arc attached at `(c, s)`.
    pub fn across(&self, (c, s): Slot) -> Slot {
        let a = self.crossings[c][s];
        let [e0, e1] = self.arc_ends[a];
        if e0 == (c, s) {
            e1
        } else {
            e0
        }
    }

    /// Slot the oriented arc leaves from.
    pub fn arc_tail(&self, arc: usize) -> Slot {
        self.arc_tail[arc]
    }

    pub fn arc_head(&self, arc: usize) -> Slot {
        self.arc_head[arc]
    }

    /// Crossing list with the original arc labels.
    pub fn pd_labels(&self) -> Vec<[u32; 4]> {
        self.crossings.iter().map(|x| x.map(|a| self.arc_labels[a])).collect()
    }

    /// Canonical text form, e.g. `PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)] base=1`.
    pub fn to_pd_string(&self) -> String {
        if self.crossings.is_empty() {
            return "PD[]".to_string();
        }
        pd::format(&self.pd_labels(), Some(self.arc_labels[self.basepoint]))
    }

    /// Mirror image: every crossing changed, orientation and basepoint kept.
    pub fn mirror(&self) -> LinkDiagram {
        let pd: Vec<[u32; 4]> = self
            .pd_labels()
            .iter()
            .enumerate()
            .map(|(c, x)| {
                // the old over-strand becomes the under-strand; start at its incoming slot
                let start = if self.arc_head[self.crossings[c][3]] == (c, 3) { 3 } else { 1 };
                [x[start], x[(start + 1) % 4], x[(start + 2) % 4], x[(start + 3) % 4]]
            })
            .collect();
        let base = (!self.crossings.is_empty()).then(|| self.arc_labels[self.basepoint]);
        LinkDiagram::from_pd(&pd, base)
            .expect("mirror of a valid diagram is valid")
            .with_label(format!("{}*", self.label))
    }

    /// Same diagram with another basepoint arc label.
    pub fn with_basepoint(&self, label: u32) -> Result<LinkDiagram> {
        if self.crossings.is_empty() {
            return Ok(self.clone());
        }
        LinkDiagram::from_pd(&self.pd_labels(), Some(label)).map(|d| d.with_label(self.label.clone()))
    }

    /// Insert a Reidemeister I kink of the given sign on the arc labelled
    /// `arc`. `flip` puts the kink loop on the other side of the strand.
    pub fn add_kink(&self, arc: u32, sign: i8, flip: bool) -> Result<LinkDiagram> {
        let mut pd = self.pd_labels();
        let top = self.arc_labels.iter().copied().max().unwrap_or(1);
        let (loop_arc, out_arc) = (top + 1, top + 2);
        let a = self.arc_labels.iter().position(|&l| l == arc).ok_or(Error::Basepoint(arc))?;
        let (in_arc, out_arc) = if self.crossings.is_empty() {
            (arc, arc)
        } else {
            let (hc, hs) = self.arc_head[a];
            pd[hc][hs] = out_arc;
            (arc, out_arc)
        };
        let l = loop_arc;
        let x = match (sign > 0, flip) {
            (true, false) => [in_arc, out_arc, l, l],
            (true, true) => [l, l, out_arc, in_arc],
            (false, false) => [in_arc, l, l, out_arc],
            (false, true) => [l, in_arc, out_arc, l],
        };
        pd.push(x);
        let base = self.arc_labels[self.basepoint];
        LinkDiagram::from_pd(&pd, Some(base)).map(|d| d.with_label(self.label.clone()))
    }

    fn check_connected(&self) -> Result<()> {
        if self.crossings.is_empty() {
            return Ok(());
        }
        let mut uf = UnionFind::<usize>::new(self.crossings.len());
        for [(c1, _), (c2, _)] in &self.arc_ends {
            uf.union(*c1, *c2);
        }
        let root = uf.find(0);
        if (1..self.crossings.len()).all(|c| uf.find(c) == root) {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Orient every component by walking straight through crossings.
    fn orient(&mut self) -> Result<()> {
        let n = self.crossings.len();
        if n == 0 {
            self.signs.clear();
            self.components = 1;
            return Ok(());
        }
        let arcs = self.arc_labels.len();
        let mut tail: Vec<Option<Slot>> = vec![None; arcs];
        let mut head: Vec<Option<Slot>> = vec![None; arcs];
        let mut components = 0;

        // Components with an under-pass start by entering some slot 0.
        let mut starts: Vec<Slot> = (0..n).map(|c| (c, 0)).collect();
        starts.reverse();
        loop {
            let start = loop {
                match starts.pop() {
                    Some((c, s)) if head[self.crossings[c][s]].is_none() => break Some((c, s)),
                    Some(_) => continue,
                    None => break None,
                }
            };
            let start = match start {
                Some(s) => s,
                None => {
                    // Remaining components only pass over: labels increase along the strand.
                    let Some(c) = (0..n).find(|&c| head[self.crossings[c][1]].is_none()) else { break };
                    let b = self.arc_labels[self.crossings[c][1]];
                    let d = self.arc_labels[self.crossings[c][3]];
                    if b == d + 1 || d > b + 1 {
                        (c, 3)
                    } else {
                        (c, 1)
                    }
                }
            };
            components += 1;
            let (mut c, mut s) = start;
            loop {
                let out = (s + 2) % 4;
                let arc = self.crossings[c][out];
                let next = self.across((c, out));
                if tail[arc].is_some() {
                    return Err(Error::Orientation {
                        crossing: c,
                        msg: format!("arc {} is traversed twice", self.arc_labels[arc]),
                    });
                }
                tail[arc] = Some((c, out));
                head[arc] = Some(next);
                (c, s) = next;
                if (c, s) == start {
                    break;
                }
            }
        }

        let mut signs = Vec::with_capacity(n);
        for c in 0..n {
            let x = self.crossings[c];
            if head[x[0]] != Some((c, 0)) {
                return Err(Error::Orientation {
                    crossing: c,
                    msg: "slot 0 is not the incoming under-strand".into(),
                });
            }
            let over_in_3 = head[x[3]] == Some((c, 3));
            signs.push(if over_in_3 { 1 } else { -1 });
        }
        self.arc_tail = tail.into_iter().map(Option::unwrap).collect();
        self.arc_head = head.into_iter().map(Option::unwrap).collect();
        self.signs = signs;
        self.components = components;
        Ok(())
    }

    pub fn faces(&self) -> Faces {
        Faces::trace(self)
    }

    /// Tait graph for the shading with `E_+ >= E_-`.
    pub fn tait_graph(&self) -> TaitGraph {
        TaitGraph::build(self)
    }

    /// Circle (or component) structure after applying `markers`.
    pub fn smooth(&self, markers: &[Marker]) -> Smoothing {
        Smoothing::new(self, markers)
    }

    /// True iff the A- or B-smoothing at `c` disconnects the diagram.
    pub fn is_nugatory(&self, c: usize) -> bool {
        let live = vec![Marker::Live; self.n_crossings()];
        smoothing::is_nugatory_in(self, &live, c)
    }

    /// Nugatory test for live crossing `c` after applying `markers` elsewhere.
    pub fn is_nugatory_in(&self, markers: &[Marker], c: usize) -> bool {
        smoothing::is_nugatory_in(self, markers, c)
    }

    /// Writhe of the partially smoothed diagram (live crossings only).
    pub fn partial_writhe(&self, markers: &[Marker]) -> i64 {
        smoothing::partial_writhe(self, markers)
    }

    /// Signs of the live crossings of the partially smoothed diagram.
    pub fn partial_signs(&self, markers: &[Marker]) -> Vec<Option<i8>> {
        smoothing::partial_signs(self, markers)
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            label: self.label.clone(),
            pd: self.to_pd_string(),
            crossings: self.pd_labels(),
            signs: self.signs.clone(),
            writhe: self.writhe(),
            components: self.components,
            basepoint: self.arc_labels[self.basepoint],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramJson {
    pub label: String,
    pub pd: String,
    pub crossings: Vec<[u32; 4]>,
    pub signs: Vec<i8>,
    pub writhe: i64,
    pub components: usize,
    pub basepoint: u32,
}

#[cfg(test)]
mod tests {
    use super::*;

    const LEFT_TREFOIL: &str = "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]";

    #[test]
    fn round_unknot() {
        let d = LinkDiagram::parse("PD[]").unwrap();
        assert_eq!(d.n_crossings(), 0);
        assert_eq!(d.writhe(), 0);
        assert_eq!(d.faces().len(), 2);
        assert_eq!(d.to_pd_string(), "PD[]");
    }

    #[test]
    fn kinks_have_the_expected_sign() {
        assert_eq!(LinkDiagram::parse("PD[X(1,1,2,2)]").unwrap().writhe(), 1);
        assert_eq!(LinkDiagram::parse("PD[X(2,1,1,2)]").unwrap().writhe(), -1);
        let kink = LinkDiagram::parse("PD[X(1,1,2,2)]").unwrap();
        assert_eq!(kink.faces().len(), 3);
        assert!(kink.is_nugatory(0));
    }

    #[test]
    fn left_trefoil() {
        let d = LinkDiagram::parse(LEFT_TREFOIL).unwrap();
        assert_eq!(d.writhe(), -3);
        assert_eq!(d.n_components(), 1);
        assert!((0..3).all(|c| !d.is_nugatory(c)));
        assert_eq!(d.mirror().writhe(), 3);
        assert_eq!(d.to_pd_string(), format!("{LEFT_TREFOIL} base=1"));
    }

    #[test]
    fn over_only_component_is_oriented_by_labels() {
        // Hopf link: one component only passes over.
        let d = LinkDiagram::parse("PD[X(4,1,3,2), X(2,3,1,4)]").unwrap();
        assert_eq!(d.n_components(), 2);
        assert_eq!(d.writhe().abs(), 2);
    }

    #[test]
    fn inserted_kinks_change_the_writhe() {
        let d = LinkDiagram::parse(LEFT_TREFOIL).unwrap();
        for (sign, flip) in [(1, false), (1, true), (-1, false), (-1, true)] {
            let k = d.add_kink(2, sign, flip).unwrap();
            assert_eq!(k.writhe(), d.writhe() + sign as i64);
            assert!(k.is_nugatory(3));
        }
        let u = LinkDiagram::parse("PD[]").unwrap();
        assert_eq!(u.add_kink(1, 1, false).unwrap().to_pd_string(), "PD[X(1,1,2,2)] base=1");
        assert_eq!(u.add_kink(1, -1, false).unwrap().writhe(), -1);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            LinkDiagram::parse("PD[X(1,2,3,4)]"),
            Err(Error::ArcMultiplicity { .. })
        ));
        assert!(matches!(
            LinkDiagram::parse("PD[X(1,1,2,2), X(3,3,4,4)]"),
            Err(Error::Disconnected)
        ));
        assert!(matches!(LinkDiagram::parse("PD[X(1,1,2,2)] base=7"), Err(Error::Basepoint(7))));
        // under-strand entering at slot 2
        assert!(matches!(
            LinkDiagram::parse("PD[X(2,5,1,4), X(3,6,4,1), X(5,2,6,3)]"),
            Err(Error::Orientation { .. }) | Err(Error::NonPlanar { .. })
        ));
    }
}
