use toda_core::invariants::{check_fundamental, generator_set};
use toda_core::rootsys::{build_root_system, TypeTag};

fn main() {
    for tag in [TypeTag::A(3), TypeTag::B(3), TypeTag::D(4), TypeTag::G2, TypeTag::F4] {
        let s = build_root_system(tag).unwrap();
        let set = generator_set(&s);
        let cert = check_fundamental(&set, &s).expect("fundamental system");
        println!(
            "{tag}: degrees {:?}, invariant under W and Jacobian nonzero: {}",
            set.degrees(),
            cert.passed()
        );
    }
    let s = build_root_system(TypeTag::G2).unwrap();
    let set = generator_set(&s);
    println!("\nG2 quadratic: {}", set.polys()[0].format(&s.coord_names));
}
