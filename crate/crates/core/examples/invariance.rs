//! GL_n equivariance: conjugating Phi(u), transforming Pfaffians, and the
//! invariance of Gamma_k and Pf(Phi(u)).

use skew_capelli::capelli::{group_invariance_spot_check, invariance_check, pf_phi};
use skew_capelli::opmatrix::{ad_matrix, build_phi, build_phi_swapped_block, iota};
use skew_capelli::pfaffian::{pf_equivariance_check, Backend, PfConfig};
use skew_capelli::sampling;
use skew_capelli::weyl::AltPoly;

fn main() -> skew_capelli::Result<()> {
    let cfg = PfConfig::default();
    let mut rng = sampling::rng(11);
    let n = 3;
    let g = sampling::invertible(&mut rng, n);
    println!("g =\n{g}");

    // Ad(pi(g)) Phi against conjugation by iota(tg) and by iota(g)^{-1}
    let i_tg = iota(&g.transpose())?;
    let i_g = iota(&g)?;
    for (name, phi) in [("display layout", build_phi(n)), ("swapped blocks", build_phi_swapped_block(n))] {
        let ad = ad_matrix(&g, &phi)?;
        let by_tg = phi.scalar_mul_left(&i_tg)?.scalar_mul_right(&i_tg.inverse()?)?;
        let by_g_inv = phi.scalar_mul_left(&i_g.inverse()?)?.scalar_mul_right(&i_g)?;
        println!("{name}: Ad = iota(tg) . iota(tg)^-1: {}, Ad = iota(g)^-1 . iota(g): {}", ad == by_tg, ad == by_g_inv);
    }

    let x = sampling::anti_alternating_op_matrix(&mut rng, 2, 4, 1);
    let h = sampling::invertible(&mut rng, 4);
    println!("Pf(h X h^) = det(h) Pf(X): {}", pf_equivariance_check(&h, &x, &cfg)?);

    for n in 1..=4 {
        println!("n={n}: [dpi(E_ij), Gamma_k] = [dpi(E_ij), Pf Phi] = 0: {}", invariance_check(n, &cfg)?);
    }

    let pf = pf_phi(n, Backend::Restricted, &cfg)?;
    let f = AltPoly::coordinate(n, 1, 2)?.pow(2);
    println!("pi(g) Pf pi(g)^-1 = Pf on x[1,2]^2: {}", group_invariance_spot_check(&pf, &g, &f)?);
    Ok(())
}
