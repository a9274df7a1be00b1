//! The Toda operator M = ½Δ − K e^{−θ} − Σ e^{α_i} as a differential operator,
//! its conjugate by e^ρ, and its image in U(b) under the dictionary.

use toda_core::rootsys::{build_root_system, TypeTag};
use toda_core::todadiff::{
    build_m, conjugation_check, default_characters, dictionary_check, killing_algebra, to_uea,
};

fn main() {
    for tag in [TypeTag::A(1), TypeTag::A(2), TypeTag::G2] {
        let s = build_root_system(tag).unwrap();
        let m = build_m(&s).unwrap();
        let b = killing_algebra(&s).unwrap();
        println!("{tag}: M has {} terms", m.terms().count());
        println!("  to_uea(M) = {}", to_uea(&m, &b).unwrap().to_text(&b));
        println!("  equals Omega/8: {}", dictionary_check(&s).unwrap().passed());
        let conj = conjugation_check(&s, &default_characters(s.rank())).unwrap();
        println!("  M = (e^rho D e^-rho + <rho,rho>)/2: {}", conj.passed());
    }
}
