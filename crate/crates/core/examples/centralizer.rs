//! Below degree 2 + 2Σm_i, everything even that commutes with Ω is a polynomial
//! in the solved family. The example compares the two dimensions.

use toda_core::axb::{build_axb, to_h_basis};
use toda_core::envelope::laplacian;
use toda_core::invariants::generator_set;
use toda_core::rootsys::{build_root_system, BetaKind, TypeTag};
use toda_core::toda::{centralizer_even, element_rank, family_products, solve_conserved, SolveOptions, DEFAULT_CAP};

fn main() {
    for (tag, kind) in [(TypeTag::A(1), BetaKind::Long), (TypeTag::A(2), BetaKind::Long), (TypeTag::G2, BetaKind::Short)] {
        let s = build_root_system(tag).unwrap();
        let choice = s.dominant(kind).unwrap();
        let b = build_axb(&s, &choice);
        let d = 1 + 2 * choice.marks_sum() as usize;
        let omega = laplacian(&b);
        let cent = centralizer_even(&b, &omega, d, DEFAULT_CAP).unwrap();
        let family: Vec<_> = generator_set(&s)
            .polys()
            .iter()
            .map(|g| solve_conserved(&b, &to_h_basis(&b, g), SolveOptions::default()).unwrap().element)
            .collect();
        let products = family_products(&b, &family, d);
        println!(
            "{tag} {kind}: degree {d}, centralizer dim {}, products span {}",
            cent.len(),
            element_rank(&products)
        );
    }
}
