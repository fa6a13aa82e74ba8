//! Khovanov homology over Z, Q and F2 from the full enhanced-state complex.

use spantree_kh::algebra::Coefficients;
use spantree_kh::cli::resolve;
use spantree_kh::khovanov::{khovanov_dims, khovanov_homology, KhovanovComplex};

fn main() -> spantree_kh::Result<()> {
    let knot = std::env::args().nth(1).unwrap_or_else(|| "3_1".into());
    let d = resolve(&knot)?;
    for reduced in [true, false] {
        let kc = KhovanovComplex::build(&d, reduced)?;
        let h = khovanov_homology(&d, reduced)?;
        println!("{} complex: {} generators, chi = {}", if reduced { "reduced" } else { "unreduced" }, kc.complex.len(), kc.euler_characteristic().display("q", 1));
        print!("{}", h.table());
        for coeff in [Coefficients::Rationals, Coefficients::Prime(2)] {
            let total: usize = khovanov_dims(&d, reduced, coeff)?.values().sum();
            println!("  total dimension over {coeff}: {total}");
        }
    }
    Ok(())
}
