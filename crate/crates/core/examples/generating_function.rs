//! Pf(Phi(u)) against sum_k a_(n-2k)(u) Gamma_k. Pass the largest n as the
//! first argument (default 4).

use skew_capelli::capelli::{gamma, main_identity_check};
use skew_capelli::opmatrix::build_phi;
use skew_capelli::pfaffian::{Backend, PfConfig};

fn main() -> skew_capelli::Result<()> {
    let n_max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let cfg = PfConfig::default();

    println!("Phi(u) for n = 2:\n{}", build_phi(2));
    println!("Gamma_1 for n = 3: {}\n", gamma(3, 1)?.element);

    for n in 1..=n_max {
        for backend in [Backend::Restricted, Backend::Forms] {
            let r = main_identity_check(n, backend, &cfg)?;
            println!("n={n} {:<10} pass={} terms={} {} ms", backend.name(), r.pass, r.pf_term_count(), r.millis);
            if n <= 3 && backend == Backend::Restricted {
                println!("  Pf(Phi(u)) = {}", r.pf);
            }
        }
    }
    Ok(())
}
