//! Solves for the degree-6 conserved quantity of the G2 lattice built on the
//! short dominant root, then checks it commutes with the Laplacian.

use std::time::Instant;

use toda_core::axb::{build_axb, to_h_basis};
use toda_core::envelope::{commutator, laplacian};
use toda_core::invariants::generator_set;
use toda_core::rootsys::{build_root_system, BetaKind, TypeTag};
use toda_core::toda::{solve_certificate, solve_conserved, SolveOptions};

fn main() {
    let s = build_root_system(TypeTag::G2).unwrap();
    let b = build_axb(&s, &s.dominant(BetaKind::Short).unwrap());
    let u = to_h_basis(&b, &generator_set(&s).polys()[1]);

    let t = Instant::now();
    let solved = solve_conserved(&b, &u, SolveOptions::default()).expect("solvable");
    println!(
        "solved in {:?}: {} terms, ansatz {}, kernel {}, strategy {:?}",
        t.elapsed(),
        solved.element.len(),
        solved.ansatz_dim,
        solved.kernel_dim,
        solved.strategy
    );

    let c = commutator(&b, &solved.element, &laplacian(&b));
    println!("[Omega_2, Omega] = 0: {}", c.is_zero());

    let cert = solve_certificate(&b, &u, "Omega_2", &solved);
    println!("certificate passed: {}", cert.passed());
}
