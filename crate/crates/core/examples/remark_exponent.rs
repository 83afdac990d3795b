//! (A + B)^m with a central commutator, tested with the commutator raised to
//! 2k and to k.

use skew_capelli::weyl::{binomial_central_commutator_check, CommutatorPower};

fn main() {
    for m in 0..=8 {
        let r = binomial_central_commutator_check(m);
        let verdict = match r.resolved() {
            Some(CommutatorPower::Double) => "power 2k",
            Some(CommutatorPower::Single) => "power k",
            None => "neither",
        };
        println!("m={m}: power 2k holds {}, power k holds {} -> {verdict}", r.printed, r.single_power);
    }
}
