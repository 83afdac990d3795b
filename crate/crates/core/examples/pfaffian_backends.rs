//! The same Pfaffian through every backend, on a random 6x6 alternating
//! operator matrix and on a commuting rational one.

use skew_capelli::pfaffian::{pf_commutative, pf_expand_first_row, pfaffian, perfect_matchings, Backend, PfConfig};
use skew_capelli::sampling;

fn main() -> skew_capelli::Result<()> {
    let cfg = PfConfig::default();
    let mut rng = sampling::rng(2024);

    for m in perfect_matchings(4) {
        println!("matching {:?} sign {:+}", m.pairs(), m.sign());
    }

    let x = sampling::alternating_op_matrix(&mut rng, 2, 6, 1);
    println!("\nX =\n{x}");
    for backend in [Backend::Full, Backend::Restricted, Backend::Forms] {
        println!("{:<11} Pf = {}", backend.name(), pfaffian(&x, backend, &cfg)?);
    }

    let s = sampling::alternating_scalar_matrix(&mut rng, 6);
    let pf = pf_commutative(&s)?;
    println!("\nrational Pf = {pf}, first-row expansion = {}, det = {}", pf_expand_first_row(&s)?, s.det());
    assert_eq!(&pf * &pf, s.det());
    Ok(())
}
