//! Retract the Khovanov complex onto the spanning tree complex by
//! elementary collapses, then compare homology with the full complex.

use spantree_kh::cli::resolve;
use spantree_kh::collapse::retract_to_tree_complex;
use spantree_kh::khovanov::khovanov_homology;
use spantree_kh::spantree::TreeModel;

fn main() -> spantree_kh::Result<()> {
    let knot = std::env::args().nth(1).unwrap_or_else(|| "trefoil4".into());
    let d = resolve(&knot)?;
    let model = TreeModel::new(&d)?;
    for reduced in [true, false] {
        let r = retract_to_tree_complex(&d, &model, reduced)?;
        let tc = &r.tree_complex;
        println!(
            "{}: {} generators -> {} after {} collapses",
            if reduced { "reduced" } else { "unreduced" },
            r.stats.generators,
            tc.generators.len(),
            r.stats.collapses
        );
        for g in &tc.generators {
            println!("  {:<5} (u,v) = ({},{})  (i,j) = ({},{})", g.label, g.u, g.v, g.ij.0, g.ij.1);
        }
        for (a, b, c) in tc.entries() {
            println!("  d {} = {:+} {}", tc.generators[a].label, c, tc.generators[b].label);
        }
        let same = tc.homology_ij()? == khovanov_homology(&d, reduced)?;
        println!("  homology agrees with the full complex: {same}");
        print!("{}", tc.homology()?.table());
    }
    Ok(())
}
