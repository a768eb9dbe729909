//! The kernel, its constant term, and the two scalar products.
use affine_macdonald::character::monomial;
use affine_macdonald::{AffineType, FiniteWeight, KernelSet};

fn main() -> affine_macdonald::Result<()> {
    let t = AffineType::load("A2^(2)")?;
    let k = KernelSet::build(&t, 8)?;
    println!("constant term of the numerator: {}", k.nabla_ct());
    println!("constant term of the kernel:    {}", k.delta_q_inf().constant_term());
    for (w, c) in k.s_q_inv().truncated(2).terms() {
        println!("  1/S at m_{w}: {c}");
    }
    let m = monomial(&t, &FiniteWeight::new(&[1]));
    println!("<m, m>_q = {}", k.scalar_q(&m, &m)?);
    println!("<m, m>   = {}", k.scalar_finite(&m, &m)?);
    Ok(())
}
