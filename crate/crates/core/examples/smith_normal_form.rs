//! Integer linear algebra underneath the homology computations.

use spantree_kh::algebra::{homology_groups, rank_with, smith_normal_form_with_certificate, Coefficients, IntegerMatrix};

fn main() -> spantree_kh::Result<()> {
    let m = IntegerMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form_with_certificate(&m)?;
    println!("invariant factors {:?}, rank {}", snf.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(), snf.rank);
    for coeff in [Coefficients::Rationals, Coefficients::Prime(2), Coefficients::Prime(3)] {
        println!("rank over {coeff}: {}", rank_with(coeff, &m));
    }

    // Z --2--> Z --0--> 0
    let incoming = IntegerMatrix::from_rows(&[vec![2]]);
    let outgoing = IntegerMatrix::zeros(0, 1);
    println!("homology: {}", homology_groups(&incoming, &outgoing)?);
    Ok(())
}
