//! Fundamental cycles of the twisted unknots, included into the diagram's
//! complex and checked against the retraction.

use spantree_kh::cli::resolve;
use spantree_kh::collapse::{jacobsson_cycle, retract_to_tree_complex};
use spantree_kh::spantree::TreeModel;

fn main() -> spantree_kh::Result<()> {
    let knot = std::env::args().nth(1).unwrap_or_else(|| "5_2".into());
    let d = resolve(&knot)?;
    let model = TreeModel::new(&d)?;
    for (t, u) in model.unknots.iter().enumerate() {
        let z = jacobsson_cycle(&d, t, u, true)?;
        println!("{}: {} terms at {:?}", model.trees[t].name(), z.terms.len(), z.grading);
    }

    let r = retract_to_tree_complex(&d, &model, true)?;
    for c in r.check_cycles()? {
        println!(
            "{:<4} terms {:>3}  cycle {}  grading {}  r(Z) = T {}  matches inclusion {}",
            c.generator, c.terms, c.is_cycle, c.grading_ok, c.retracts_to_generator, c.matches_inclusion
        );
    }
    Ok(())
}
