//! Alternating knots: signature, reduced homology predicted from the Jones
//! polynomial, and two-line support of unreduced homology.

use spantree_kh::alternating::{free_ranks, is_alternating, predicted_reduced_homology, thickness_report};
use spantree_kh::cli::builtin;
use spantree_kh::khovanov::khovanov_homology;
use spantree_kh::spantree::TreeModel;

fn main() -> spantree_kh::Result<()> {
    for entry in builtin().into_iter().filter(|e| e.alternating) {
        let d = entry.diagram()?;
        assert!(is_alternating(&d));
        let model = TreeModel::new(&d)?;
        let p = predicted_reduced_homology(&d)?;
        let reduced = khovanov_homology(&d, true)?;
        let unreduced = khovanov_homology(&d, false)?;
        let t = thickness_report(&d, &model, &reduced, &unreduced)?;
        println!(
            "{:<4} σ = {:>2}  row v = {}  prediction {}  lines j-2i {:?}  torsion on {:?}",
            entry.name,
            p.signature,
            p.row,
            if free_ranks(&reduced).as_ref() == Some(&p.by_ij) { "holds" } else { "fails" },
            t.unreduced_lines,
            t.torsion_lines
        );
    }
    Ok(())
}
