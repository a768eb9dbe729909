//! Affine Cartan data and real roots of a twisted type.
use affine_macdonald::AffineType;
use num_rational::Rational64;

fn main() -> affine_macdonald::Result<()> {
    let label = std::env::args().nth(1).unwrap_or_else(|| "D4^(3)".into());
    let t = AffineType::load(&label)?;
    println!("{t}: rank {}, a0 = {}, r = {}", t.rank(), t.a0(), t.r());
    println!("marks {:?}, comarks {:?}", t.marks(), t.comarks());
    for row in t.cartan() {
        println!("  {row:?}");
    }
    println!("theta = {}, |W| = {}", t.theta(), t.weyl_order());
    for root in t.positive_real_roots(Rational64::new(1, 1)) {
        println!("  {root}");
    }
    Ok(())
}
