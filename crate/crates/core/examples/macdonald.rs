//! Macdonald polynomials at t = infinity and the product formula for their norms.
use affine_macdonald::{AffineType, FiniteWeight, MacdonaldBasis};

fn main() -> affine_macdonald::Result<()> {
    let t = AffineType::load("A4^(2)")?;
    let top = FiniteWeight::new(&[1, 1]);
    let mut basis = MacdonaldBasis::build(&t, &top, 10)?;
    for w in t.dominants_below(&top)? {
        println!("P({w}):");
        for (m, c) in basis.polynomial(&w)?.terms() {
            println!("  m_{m}: {c}");
        }
        println!("  norm {}  closed form {}", basis.norm_gs(&w)?, basis.norm_closed_form(&w)?);
    }
    Ok(())
}
