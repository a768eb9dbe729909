//! Orbits, dominance and the level-one straightening word.
use affine_macdonald::{AffineType, AffineWeight, FiniteWeight};

fn main() -> affine_macdonald::Result<()> {
    let t = AffineType::load("C2^(1)")?;
    let lambda = FiniteWeight::new(&[1, 1]);
    println!("orbit of {lambda}: {:?}", t.weyl_orbit(&lambda));
    println!("w0({lambda}) = {}", t.w_circ(&lambda));
    println!("dominant weights below {lambda}: {:?}", t.dominants_below(&lambda)?);
    let start = AffineWeight::new(t.w_circ(&lambda), 1, 0);
    let (dom, word) = t.to_dominant(&start)?;
    println!("{} = s_{word:?} {}", start.display(t.a0()), dom.display(t.a0()));
    Ok(())
}
