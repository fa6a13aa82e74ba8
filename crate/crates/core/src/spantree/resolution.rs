use crate::diagram::{markers_to_string, LinkDiagram, Marker};

/// Binary partial-resolution tree. Crossings are visited from the highest
/// index down; nugatory crossings are left unsmoothed, others branch A first.
#[derive(Clone, Debug)]
pub enum ResolutionNode {
    Branch {
        markers: Vec<Marker>,
        crossing: usize,
        a: Box<ResolutionNode>,
        b: Box<ResolutionNode>,
    },
    Leaf {
        markers: Vec<Marker>,
    },
}

impl ResolutionNode {
    pub fn build(d: &LinkDiagram) -> ResolutionNode {
        let markers = vec![Marker::Live; d.n_crossings()];
        Self::grow(d, markers, d.n_crossings())
    }

    fn grow(d: &LinkDiagram, mut markers: Vec<Marker>, mut remaining: usize) -> ResolutionNode {
        while remaining > 0 && d.is_nugatory_in(&markers, remaining - 1) {
            remaining -= 1;
        }
        if remaining == 0 {
            return ResolutionNode::Leaf { markers };
        }
        let c = remaining - 1;
        let mut with_a = markers.clone();
        with_a[c] = Marker::A;
        let mut with_b = markers.clone();
        with_b[c] = Marker::B;
        let a = Box::new(Self::grow(d, with_a, c));
        let b = Box::new(Self::grow(d, with_b, c));
        markers[c] = Marker::Live;
        ResolutionNode::Branch { markers, crossing: c, a, b }
    }

    /// Leaf smoothings, A-branches first.
    pub fn leaves(&self) -> Vec<&[Marker]> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a [Marker]>) {
        match self {
            ResolutionNode::Leaf { markers } => out.push(markers),
            ResolutionNode::Branch { a, b, .. } => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    /// Indented text rendering, one node per line.
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_into(0, &mut s);
        s
    }

    fn render_into(&self, depth: usize, s: &mut String) {
        let pad = "  ".repeat(depth);
        match self {
            ResolutionNode::Leaf { markers } => {
                s.push_str(&format!("{pad}{} (leaf)\n", markers_to_string(markers)));
            }
            ResolutionNode::Branch { markers, crossing, a, b } => {
                s.push_str(&format!("{pad}{} split at crossing {}\n", markers_to_string(markers), crossing + 1));
                a.render_into(depth + 1, s);
                b.render_into(depth + 1, s);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_is_a_single_leaf() {
        let d = LinkDiagram::parse("PD[]").unwrap();
        assert_eq!(ResolutionNode::build(&d).leaves().len(), 1);
        let kink = LinkDiagram::parse("PD[X(1,1,2,2)]").unwrap();
        assert_eq!(ResolutionNode::build(&kink).leaves().len(), 1);
    }
}
