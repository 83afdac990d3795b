//! Products, commutators and actions in the Weyl algebra on `Alt_3`.

use skew_capelli::opmatrix::ScalarMatrix;
use skew_capelli::scalars::Rational;
use skew_capelli::weyl::{apply, commutator, dpi, group_action, parse_element, AltPoly, WeylElement};

fn main() -> skew_capelli::Result<()> {
    let n = 3;
    let x = WeylElement::x(n, 1, 2)?;
    let d = WeylElement::d(n, 1, 2)?;

    // d^2 x^2 reordered with x to the left
    println!("d^2 x^2 = {}", &d.pow(2) * &x.pow(2));
    println!("[d, x] = {}", commutator(&d, &x)?);
    // indices are antisymmetric
    println!("x[2,1] = {}", WeylElement::x(n, 2, 1)?);

    let p = parse_element("x[1,3]d[2,3] - 1/2 u x[1,2]^2", n)?;
    println!("parsed: {p}");

    let f = AltPoly::coordinate(n, 2, 3)?.pow(2);
    println!("apply(x[1,3]d[2,3], x[2,3]^2) = {}", apply(&parse_element("x[1,3]d[2,3]", n)?, &f));

    let g = ScalarMatrix::diag(&[Rational::integer(2), Rational::one(), Rational::integer(3)]);
    println!("diag(2,1,3) . x[2,3]^2 = {}", group_action(&g, &f)?);

    // the infinitesimal action of E_11 on x[1,2]
    println!("[dpi(E_11), x[1,2]] = {}", commutator(&dpi(n, 1, 1)?, &x)?);
    Ok(())
}
