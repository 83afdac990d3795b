//! The 2-forms tau, Theta_-, Theta_+ and the relations among them.

use skew_capelli::forms::{
    c_coeff, c_recursion_check, cr_check, expansion_check, tau, theta_commutation_check, theta_minus, theta_plus,
    theta_power_identity_check,
};

fn main() {
    let n = 2;
    println!("tau     = {}", tau(n));
    println!("Theta_- = {}", theta_minus(n));
    println!("Theta_+ = {}", theta_plus(n));
    println!("[Theta_+, Theta_-] = {}", theta_plus(n).commutator(&theta_minus(n)));

    for n in 1..=4 {
        println!("n={n}: commutation relations {}", cr_check(n));
    }
    let row: Vec<String> = (0..=3).map(|k| c_coeff(k, 6).to_string()).collect();
    println!("c_k(6) = {}", row.join(", "));
    println!("recursion m<=20: {}", (0..=20).all(c_recursion_check));
    println!("expansion n=2, m<=4: {}", (0..=4).all(|m| expansion_check(2, m)));
    println!("Theta_+^2 Theta_-^2 reordering n=3: {}", theta_commutation_check(3, 2, 2));
    println!("Theta_-^r as sub-Pfaffians n=4, r=2: {}", theta_power_identity_check(4, 2));
}
