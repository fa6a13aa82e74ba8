//! Parse a PD code, orient it and build its Tait graph.
//!
//! `cargo run --example diagram_info -- "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]"`

use spantree_kh::diagram::LinkDiagram;

fn main() -> spantree_kh::Result<()> {
    let pd = std::env::args().nth(1).unwrap_or_else(|| "PD[X(4,1,5,2), X(8,5,1,6), X(3,6,4,7), X(7,2,8,3)] base=1".into());
    let d = LinkDiagram::parse(&pd)?;
    println!("{}", d.to_pd_string());
    println!("crossings {}, components {}, writhe {}", d.n_crossings(), d.n_components(), d.writhe());
    for c in 0..d.n_crossings() {
        let nugatory = if d.is_nugatory(c) { " (nugatory)" } else { "" };
        println!("  crossing {}: sign {:+}{nugatory}", c + 1, d.sign(c));
    }

    let g = d.tait_graph();
    println!("Tait graph: {} vertices, {} edges, k = {}", g.n_vertices(), g.n_edges(), g.k());
    for (i, e) in g.edges.iter().enumerate() {
        println!("  edge {}: {} -- {}, sign {:+}, crossing {}", i + 1, e.u, e.v, e.sign, e.crossing + 1);
    }

    let m = d.mirror();
    println!("mirror writhe {}", m.writhe());
    Ok(())
}
