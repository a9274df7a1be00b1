//! Products in U(b) in PBW normal form. X's are kept to the left of H's, and
//! moving an H past an X shifts its argument by the X's weight.

use toda_core::axb::build_axb;
use toda_core::envelope::{commutator, laplacian, multiply, Element};
use toda_core::rootsys::{build_root_system, BetaKind, TypeTag};

fn main() {
    let s = build_root_system(TypeTag::A(2)).unwrap();
    let b = build_axb(&s, &s.dominant(BetaKind::Long).unwrap());

    let h = Element::h(&b, 0);
    let x = Element::x(&b, 1);
    println!("H1 * X1 = {}", multiply(&b, &h, &x).to_text(&b));
    println!("[H1, X1] = {}", commutator(&b, &h, &x).to_text(&b));

    let omega = laplacian(&b);
    println!("\nOmega = {}", omega.to_text(&b));
    println!("symbol = {}", omega.symbol().format(&b.h_labels));
    println!("even: {}", omega.is_even());

    let sq = multiply(&b, &omega, &omega);
    println!("\nOmega^2 has {} terms, degree {}", sq.len(), sq.degree());
}
