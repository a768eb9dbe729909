//! Truncated series in u: Pochhammer products, inversion and the Euler identity.
use affine_macdonald::QSeries;

fn main() -> affine_macdonald::Result<()> {
    let euler = QSeries::pochhammer(1, 15);
    println!("(u;u)_inf      = {euler}");
    let partitions = euler.invert()?;
    println!("1/(u;u)_inf    = {partitions}");
    println!("product        = {}", &euler * &partitions);
    let x = QSeries::from_i64s(&[0, 0, 1, -2], 10);
    println!("u^-2 shift     = {}", x.shifted(-2));
    println!("json           = {}", x.to_json());
    Ok(())
}
