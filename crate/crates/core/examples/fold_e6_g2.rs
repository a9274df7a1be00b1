//! The order-3 folding of extended E6 onto G2. Eigenvectors of the
//! automorphism on u use the cube root of unity ω.

use toda_core::folding::{build_folding, differences_lemma, fixed_subalgebra, restricted_invariants, FoldCase};
use toda_core::invariants::non_proportionality_check;

fn main() {
    let f = build_folding(FoldCase::E6G2).unwrap();
    println!("order {}, orbits {:?}", f.order, f.orbits());
    let fs = fixed_subalgebra(&f).unwrap();
    println!("differences lie in b'': {}", differences_lemma(&f, &fs).passed());
    for (name, got, _) in restricted_invariants(&f) {
        println!("{name} = {}", got.format(&f.restriction.system.coord_names));
    }
    let np = non_proportionality_check();
    for (k, v) in &np.scalars {
        println!("{k} = {v}");
    }
}
