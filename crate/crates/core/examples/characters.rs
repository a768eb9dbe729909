//! Irreducible characters and orbit-sum expansions.
use affine_macdonald::character::irreducible_character;
use affine_macdonald::{AffineType, FiniteWeight};

fn main() -> affine_macdonald::Result<()> {
    let t = AffineType::load("A2^(1)")?;
    let adjoint = irreducible_character(&t, &FiniteWeight::new(&[1, 1]))?;
    println!("adjoint of A2 has {} weights", adjoint.len());
    for (w, c) in adjoint.to_monomial(&t)?.terms() {
        println!("  m_{w}: {c}");
    }
    let square = adjoint.mul(&adjoint);
    println!("square is invariant: {}", square.is_invariant(&t));
    Ok(())
}
