//! Spanning trees of the Tait graph, their activity words, and the twisted
//! unknots they determine.

mod activity;
mod poset;
mod resolution;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::algebra::LaurentPoly;
use crate::diagram::{markers_to_string, sigma, LinkDiagram, Marker, TaitGraph};
use crate::error::{Error, Result};

pub use activity::{activity_word, cut, cut_cycle_duality_holds, cycle, ActivityWord, Letter, LetterCounts};
pub use poset::{compare, generator_greater, TreePoset};
pub use resolution::ResolutionNode;

/// All spanning trees as sorted edge-index sets, in lexicographic order.
pub fn enumerate_trees(g: &TaitGraph) -> Result<Vec<Vec<usize>>> {
    if !g.is_connected() {
        return Err(Error::GraphDisconnected);
    }
    let target = g.n_vertices() - 1;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let uf = UnionFind::<usize>::new(g.n_vertices());
    grow(g, 0, target, &uf, &mut chosen, &mut out);
    Ok(out)
}

fn grow(
    g: &TaitGraph,
    next: usize,
    target: usize,
    uf: &UnionFind<usize>,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == target {
        out.push(chosen.clone());
        return;
    }
    if next == g.n_edges() || chosen.len() + (g.n_edges() - next) < target {
        return;
    }
    let e = &g.edges[next];
    if !uf.equiv(e.u, e.v) {
        let mut with = uf.clone();
        with.union(e.u, e.v);
        chosen.push(next);
        grow(g, next + 1, target, &with, chosen, out);
        chosen.pop();
    }
    // skipping `next` must leave the graph spannable
    let mut rest = uf.clone();
    for f in &g.edges[next + 1..] {
        rest.union(f.u, f.v);
    }
    let root = rest.find(0);
    if (1..g.n_vertices()).all(|v| rest.find(v) == root) {
        grow(g, next + 1, target, uf, chosen, out);
    }
}

/// One RI move undoing a kink of a twisted unknot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Kink {
    pub crossing: usize,
    /// `+1` when the A-smoothing splits off the kink loop.
    pub sign: i8,
    /// Smoothing that splits off the loop.
    pub splitting: Marker,
    /// An arc of the loop.
    pub lobe_arc: usize,
}

/// Twisted unknot `U(T)`: the dead crossings smoothed, the live ones kept.
#[derive(Clone, Debug)]
pub struct TwistedUnknot {
    pub markers: Vec<Marker>,
    /// Kinks in removal order; adding them back goes in reverse.
    pub kinks: Vec<Kink>,
    pub writhe: i64,
    pub sigma: i64,
}

/// Undo kinks one at a time: always the smallest-index crossing whose
/// splitting smoothing cuts off a loop free of other crossings and away from
/// the basepoint.
pub fn unroll_kinks(d: &LinkDiagram, markers: &[Marker]) -> Result<Vec<Kink>> {
    let mut m = markers.to_vec();
    if d.smooth(&m).n_circles() != 1 {
        return Err(Error::NotTwistedUnknot(format!(
            "{} has more than one component",
            markers_to_string(markers)
        )));
    }
    let mut kinks = Vec::new();
    while m.contains(&Marker::Live) {
        let found = (0..m.len()).filter(|&c| m[c] == Marker::Live).find_map(|c| {
            [Marker::A, Marker::B].into_iter().find_map(|split| {
                let mut trial = m.clone();
                trial[c] = split;
                let s = d.smooth(&trial);
                if s.n_circles() != 2 {
                    return None;
                }
                let lobe = 1 - s.circle_of_arc(d.basepoint());
                let crowded = (0..m.len())
                    .any(|c2| c2 != c && m[c2] == Marker::Live && s.circle_of_arc(d.crossing(c2)[0]) == lobe);
                if crowded {
                    return None;
                }
                let lobe_arc = (0..d.n_arcs()).find(|&a| s.circle_of_arc(a) == lobe).unwrap();
                let sign = if split == Marker::A { 1 } else { -1 };
                Some(Kink { crossing: c, sign, splitting: split, lobe_arc })
            })
        });
        let Some(k) = found else {
            return Err(Error::NotTwistedUnknot(format!(
                "{} has a crossing that is not a removable kink",
                markers_to_string(&m)
            )));
        };
        m[k.crossing] = if k.splitting == Marker::A { Marker::B } else { Marker::A };
        kinks.push(k);
    }
    Ok(kinks)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanningTree {
    /// Position in the lexicographic enumeration.
    pub index: usize,
    pub edges: Vec<usize>,
    pub word: ActivityWord,
    pub u: i64,
    pub v: i64,
    #[serde(serialize_with = "serialize_markers")]
    pub smoothing: Vec<Marker>,
    #[serde(serialize_with = "serialize_poly_a")]
    pub monomial: LaurentPoly,
}

fn serialize_markers<S: serde::Serializer>(m: &[Marker], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&markers_to_string(m))
}

fn serialize_poly_a<S: serde::Serializer>(p: &LaurentPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&p.display("A", 1))
}

impl SpanningTree {
    pub fn name(&self) -> String {
        format!("T{}", self.index + 1)
    }

    pub fn smoothing_string(&self) -> String {
        markers_to_string(&self.smoothing)
    }

    /// 1-based edge labels, negative edges marked with a trailing bar.
    pub fn edge_labels(&self, g: &TaitGraph) -> Vec<String> {
        self.edges
            .iter()
            .map(|&e| if g.edges[e].sign < 0 { format!("{}\u{304}", e + 1) } else { (e + 1).to_string() })
            .collect()
    }
}

/// Everything the spanning-tree model derives from one diagram.
#[derive(Clone, Debug)]
pub struct TreeModel {
    pub graph: TaitGraph,
    pub trees: Vec<SpanningTree>,
    pub unknots: Vec<TwistedUnknot>,
    pub poset: TreePoset,
}

impl TreeModel {
    pub fn new(d: &LinkDiagram) -> Result<TreeModel> {
        let graph = d.tait_graph();
        let trees = spanning_trees(&graph)?;
        let unknots = trees.iter().map(|t| twisted_unknot(d, t)).collect::<Result<Vec<_>>>()?;
        let poset = TreePoset::build(&trees.iter().map(|t| t.smoothing.clone()).collect::<Vec<_>>())?;
        Ok(TreeModel { graph, trees, unknots, poset })
    }

    pub fn k(&self) -> i64 {
        self.graph.k()
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Index of the tree whose partial smoothing is `markers`.
    pub fn tree_with_smoothing(&self, markers: &[Marker]) -> Option<usize> {
        self.trees.iter().position(|t| t.smoothing == markers)
    }
}

pub fn spanning_trees(g: &TaitGraph) -> Result<Vec<SpanningTree>> {
    Ok(enumerate_trees(g)?
        .into_iter()
        .enumerate()
        .map(|(index, edges)| {
            let word = activity_word(g, &edges);
            let (u, v) = word.gradings();
            SpanningTree {
                index,
                smoothing: word.smoothing(),
                monomial: word.monomial(),
                edges,
                word,
                u,
                v,
            }
        })
        .collect())
}

/// Partial smoothing of `t`, checked to be a twisted unknot whose kinks have
/// the signs predicted by the activity letters.
pub fn twisted_unknot(d: &LinkDiagram, t: &SpanningTree) -> Result<TwistedUnknot> {
    let markers = t.smoothing.clone();
    for c in (0..markers.len()).filter(|&c| markers[c] == Marker::Live) {
        if !d.is_nugatory_in(&markers, c) {
            return Err(Error::NotTwistedUnknot(format!(
                "crossing {} of {} is not nugatory",
                c + 1,
                markers_to_string(&markers)
            )));
        }
    }
    let kinks = unroll_kinks(d, &markers)?;
    let signs = d.partial_signs(&markers);
    for k in &kinks {
        let predicted = t.word.letters[k.crossing].kink_sign();
        if signs[k.crossing] != Some(k.sign) || predicted != Some(k.sign) {
            return Err(Error::NotTwistedUnknot(format!(
                "kink at crossing {} of {} has sign {} but its letter predicts {:?}",
                k.crossing + 1,
                markers_to_string(&markers),
                k.sign,
                predicted
            )));
        }
    }
    let writhe = d.partial_writhe(&markers);
    if writhe != -t.u {
        return Err(Error::NotTwistedUnknot(format!(
            "w(U) = {writhe} but u(T) = {}",
            t.u
        )));
    }
    Ok(TwistedUnknot { sigma: sigma(&markers), markers, kinks, writhe })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{smith_normal_form, IntegerMatrix};

    fn laplacian_tree_count(g: &TaitGraph) -> i64 {
        let n = g.n_vertices();
        if n == 1 {
            return 1;
        }
        let mut lap = vec![vec![0i64; n]; n];
        for e in g.edges.iter().filter(|e| !e.is_loop()) {
            lap[e.u][e.u] += 1;
            lap[e.v][e.v] += 1;
            lap[e.u][e.v] -= 1;
            lap[e.v][e.u] -= 1;
        }
        let reduced: Vec<Vec<i64>> = lap[1..].iter().map(|r| r[1..].to_vec()).collect();
        let snf = smith_normal_form(&IntegerMatrix::from_rows(&reduced));
        if snf.rank < n - 1 {
            return 0;
        }
        snf.factors.iter().map(|f| i64::try_from(f).unwrap()).product()
    }

    #[test]
    fn tree_count_matches_matrix_tree_theorem() {
        for pd in [
            "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]",
            "PD[X(1,1,2,2)]",
            "PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]",
        ] {
            let g = LinkDiagram::parse(pd).unwrap().tait_graph();
            let trees = enumerate_trees(&g).unwrap();
            assert_eq!(trees.len() as i64, laplacian_tree_count(&g), "{pd}");
            let mut sorted = trees.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, trees);
        }
    }

    #[test]
    fn single_loop_is_externally_active() {
        let d = LinkDiagram::parse("PD[X(1,1,2,2)]").unwrap();
        let model = TreeModel::new(&d).unwrap();
        assert_eq!(model.trees.len(), 1);
        let w = model.trees[0].word.to_string();
        assert!(w == "ℓ" || w == "L", "{w}");
    }
}
