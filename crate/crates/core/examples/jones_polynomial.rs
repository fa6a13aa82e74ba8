//! Kauffman bracket two ways (all states, spanning trees) and the Jones
//! polynomial for every knot in the built-in corpus.

use spantree_kh::cli::builtin;
use spantree_kh::jones::{bracket_spantree, bracket_statesum, jones};
use spantree_kh::spantree::TreeModel;

fn main() -> spantree_kh::Result<()> {
    for entry in builtin() {
        let d = entry.diagram()?;
        let model = TreeModel::new(&d)?;
        let states = bracket_statesum(&d);
        let trees = bracket_spantree(&model);
        assert_eq!(states, trees);
        let v = jones(&d)?;
        println!(
            "{:<9} {:>2} crossings {:>3} trees  <D> = {}  V = {}  |V|_1 = {}",
            entry.name,
            d.n_crossings(),
            model.len(),
            states.display("A", 1),
            v,
            v.l1_norm()
        );
    }
    Ok(())
}
