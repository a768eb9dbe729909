//! Weyl-filtration multiplicities of a projective cover against
//! Jordan-Hölder multiplicities of local Weyl modules.
use affine_macdonald::bgg::verify_reciprocity;
use affine_macdonald::{AffineType, FiniteWeight, KernelSet, MacdonaldBasis};

fn main() -> affine_macdonald::Result<()> {
    let t = AffineType::load("A2^(2)")?;
    let mut basis = MacdonaldBasis::new(KernelSet::build(&t, 8)?);
    let report = verify_reciprocity(&mut basis, &FiniteWeight::new(&[1]), 0, None)?;
    for row in report.rows.iter().filter(|r| r.filtration > 0) {
        println!("[P(1) : W({}, u^{})] = {}  (JH: {})", row.mu, row.s, row.filtration, row.jordan_holder);
    }
    println!("all equal: {}", report.all_equal());
    Ok(())
}
