//! Level-one Demazure characters against Macdonald polynomials.
use affine_macdonald::demazure::{compare_demazure_macdonald, demazure_character};
use affine_macdonald::{AffineType, FiniteWeight, KernelSet, MacdonaldBasis};

fn main() -> affine_macdonald::Result<()> {
    let a1 = AffineType::load("A1^(1)")?;
    let d = demazure_character(&a1, &FiniteWeight::new(&[-2]), 8)?;
    for (w, c) in d.to_monomial(&a1)?.terms() {
        println!("A1^(1), D(-2w) at m_{w}: {c}");
    }

    let c2 = AffineType::load("C2^(1)")?;
    let mut basis = MacdonaldBasis::new(KernelSet::build(&c2, 10)?);
    for w in [[0, 1], [1, 0], [2, 0]] {
        let cmp = compare_demazure_macdonald(&mut basis, &FiniteWeight::new(&w))?;
        println!("C2^(1) {:?}: equal {}, strictly larger {}", w, cmp.equal, cmp.strict);
    }
    Ok(())
}
