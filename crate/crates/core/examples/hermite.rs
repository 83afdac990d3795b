//! Hermite polynomials and the u-coefficients a_m(u).

use skew_capelli::capelli::{hermite_at_iu, hermite_relation_check, HermiteData};

fn main() {
    for m in 0..=6 {
        println!("{}  relation: {}", HermiteData::new(m), hermite_relation_check(m));
    }
    // H_4(iu) has real coefficients in even powers only
    for (e, c) in hermite_at_iu(4) {
        println!("H_4(iu): u^{e} -> {} + {} i", c.re, c.im);
    }
}
