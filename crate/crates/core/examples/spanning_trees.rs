//! Spanning trees of the Tait graph with activity words, (u, v) gradings,
//! partial smoothings and the partial order between them.

use spantree_kh::cli::resolve;
use spantree_kh::spantree::{ResolutionNode, TreeModel};

fn main() -> spantree_kh::Result<()> {
    let knot = std::env::args().nth(1).unwrap_or_else(|| "trefoil4".into());
    let d = resolve(&knot)?;
    let model = TreeModel::new(&d)?;
    for t in &model.trees {
        println!(
            "{:<4} {{{}}}  {}  (u,v) = ({},{})  {}  {}",
            t.name(),
            t.edge_labels(&model.graph).join(","),
            t.word,
            t.u,
            t.v,
            t.smoothing_string(),
            t.monomial.display("A", 1)
        );
    }

    let name = |t: usize| model.trees[t].name();
    println!("maximum {}, minimum {}", name(model.poset.maximum()), name(model.poset.minimum()));
    for chain in model.poset.maximal_chains(20) {
        println!("  {}", chain.into_iter().map(name).collect::<Vec<_>>().join(" > "));
    }

    for (t, u) in model.trees.iter().zip(&model.unknots) {
        let kinks: Vec<String> = u.kinks.iter().map(|k| format!("{}{:+}", k.crossing + 1, k.sign)).collect();
        println!("{} twisted unknot: writhe {}, kinks [{}]", t.name(), u.writhe, kinks.join(" "));
    }

    print!("{}", ResolutionNode::build(&d).render());
    Ok(())
}
