use serde::Serialize;

use super::{Faces, LinkDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TaitEdge {
    pub u: usize,
    pub v: usize,
    pub sign: i8,
    pub crossing: usize,
}

impl TaitEdge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// Signed planar multigraph of the shaded regions; edge `i` is crossing `i`.
#[derive(Clone, Debug, Serialize)]
pub struct TaitGraph {
    /// Face index of each vertex.
    pub vertices: Vec<usize>,
    pub edges: Vec<TaitEdge>,
    /// Checkerboard color class used as the shaded set.
    pub shaded_color: u8,
}

impl TaitGraph {
    pub(crate) fn build(d: &LinkDiagram) -> TaitGraph {
        let faces = d.faces();
        let g0 = Self::for_color(d, &faces, 0);
        let g1 = Self::for_color(d, &faces, 1);
        let (p0, p1) = (g0.e_plus() as i64 - g0.e_minus() as i64, g1.e_plus() as i64 - g1.e_minus() as i64);
        if p0 != p1 {
            return if p0 > p1 { g0 } else { g1 };
        }
        let base_face = faces.right_of_arc(d, d.basepoint());
        if faces.color(base_face) == 0 {
            g0
        } else {
            g1
        }
    }

    /// Tait graph with the faces of `color` shaded.
    pub fn for_color(d: &LinkDiagram, faces: &Faces, color: u8) -> TaitGraph {
        let vertices: Vec<usize> = (0..faces.len()).filter(|&f| faces.color(f) == color).collect();
        let vertex_of = |f: usize| vertices.iter().position(|&g| g == f).expect("shaded face");
        let edges = (0..d.n_crossings())
            .map(|c| {
                // A-smoothing joins corners 1 and 3
                let positive = faces.color(faces.corner_face(c, 1)) == color;
                let (k1, k2) = if positive { (1, 3) } else { (0, 2) };
                TaitEdge {
                    u: vertex_of(faces.corner_face(c, k1)),
                    v: vertex_of(faces.corner_face(c, k2)),
                    sign: if positive { 1 } else { -1 },
                    crossing: c,
                }
            })
            .collect();
        TaitGraph { vertices, edges, shaded_color: color }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn e_plus(&self) -> usize {
        self.edges.iter().filter(|e| e.sign > 0).count()
    }

    pub fn e_minus(&self) -> usize {
        self.edges.iter().filter(|e| e.sign < 0).count()
    }

    /// `k = E_+ - E_- + 2(V - 1)`.
    pub fn k(&self) -> i64 {
        self.e_plus() as i64 - self.e_minus() as i64 + 2 * (self.n_vertices() as i64 - 1)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n_vertices();
        if n == 0 {
            return false;
        }
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(n);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        let r = uf.find(0);
        (1..n).all(|v| uf.find(v) == r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_graph() {
        let g = LinkDiagram::parse("PD[]").unwrap().tait_graph();
        assert_eq!(g.n_vertices(), 1);
        assert_eq!(g.n_edges(), 0);
        assert_eq!(g.k(), 0);
    }

    #[test]
    fn trefoil_is_single_signed() {
        let d = LinkDiagram::parse("PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]").unwrap();
        let g = d.tait_graph();
        assert_eq!(g.e_minus(), 0);
        assert_eq!(g.e_plus(), 3);
        assert!(g.is_connected());
        let faces = d.faces();
        let dual = TaitGraph::for_color(&d, &faces, 1 - g.shaded_color);
        assert_eq!(dual.e_minus(), 3);
        assert_eq!(g.n_vertices() + dual.n_vertices(), faces.len());
    }

    #[test]
    fn kink_graph_has_loop_or_bridge() {
        let d = LinkDiagram::parse("PD[X(1,1,2,2)]").unwrap();
        let g = d.tait_graph();
        assert_eq!(g.e_plus(), 1);
        assert_eq!(g.n_edges(), 1);
    }
}
