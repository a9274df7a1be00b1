use toda_core::axb::{build_axb, to_h_basis};
use toda_core::invariants::generator_set;
use toda_core::rootsys::{build_root_system, BetaKind, TypeTag};
use toda_core::toda::{solve_conserved, verify_family, SolveOptions};

fn main() {
    let s = build_root_system(TypeTag::A(3)).unwrap();
    let b = build_axb(&s, &s.dominant(BetaKind::Long).unwrap());
    let mut family = Vec::new();
    for (k, g) in generator_set(&s).polys().iter().enumerate() {
        let u = to_h_basis(&b, g);
        let solved = solve_conserved(&b, &u, SolveOptions::default()).unwrap();
        println!("Omega_{}: degree {}, {} terms", k + 1, u.degree(), solved.element.len());
        family.push((format!("Omega_{}", k + 1), solved.element));
    }
    let cert = verify_family(&b, &family);
    for w in &cert.residuals {
        println!("{} = 0: {}", w.name, w.is_zero());
    }
    for (k, v) in &cert.notes {
        println!("{k}: {v}");
    }
}
