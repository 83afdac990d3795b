//! Commutative level: the symbol of Pf(Phi~(u)) is sum_k u^(n-2k) gamma_k.

use skew_capelli::capelli::{gamma_symbol, symbol_identity_check, symbol_pfaffian};
use skew_capelli::weyl::principal_symbol;

fn main() -> skew_capelli::Result<()> {
    for n in 1..=5 {
        println!("n={n} identity: {}", symbol_identity_check(n)?);
    }
    println!("sigma(Pf) for n = 3: {}", symbol_pfaffian(3)?);
    println!("gamma_2 for n = 4: {}", gamma_symbol(4, 2)?);
    let g = skew_capelli::capelli::gamma(4, 2)?.element;
    println!("principal symbol of Gamma_2: {}", principal_symbol(&g));
    Ok(())
}
