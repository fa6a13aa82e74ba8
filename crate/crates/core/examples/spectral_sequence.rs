//! Pages of the spectral sequence of the spanning tree filtration.

use spantree_kh::algebra::Coefficients;
use spantree_kh::cli::resolve;
use spantree_kh::spantree::TreeModel;
use spantree_kh::spectral::{build_filtration, check_convergence, compute_pages};

fn main() -> spantree_kh::Result<()> {
    let knot = std::env::args().nth(1).unwrap_or_else(|| "trefoil4".into());
    let d = resolve(&knot)?;
    let model = TreeModel::new(&d)?;
    let f = build_filtration(&d, &model)?;
    for (p, trees) in f.trees_by_level() {
        let names: Vec<String> = trees.iter().map(|&t| model.trees[t].name()).collect();
        println!("F level {p}: {}", names.join(" "));
    }
    for coeff in [Coefficients::Prime(2), Coefficients::Rationals] {
        let ss = compute_pages(&f, coeff, None)?;
        for page in &ss.pages {
            println!("E_{} over {coeff}: total {}", page.r, page.total());
        }
        let report = check_convergence(&f, &ss, coeff)?;
        println!("collapses at E_{}, E_inf matches homology: {}", ss.collapse_page, report.ok);
        print!("{}", ss.e_infinity().table());
    }
    Ok(())
}
