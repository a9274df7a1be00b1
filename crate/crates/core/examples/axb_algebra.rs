use toda_core::axb::{build_axb, verify_axb, AlgVec};
use toda_core::rootsys::{build_root_system, BetaKind, TypeTag};

fn main() {
    let s = build_root_system(TypeTag::B(2)).unwrap();
    for kind in [BetaKind::Long, BetaKind::Short] {
        let b = build_axb(&s, &s.dominant(kind).unwrap());
        println!("{}: basis {}", b.name, b.labels().join(" "));
        println!("  marks {:?}", b.marks.as_ref().unwrap());

        // [H_1, X_0] = α_0(H_1) X_0
        let h1 = AlgVec::basis(&b, 0);
        let x0 = AlgVec::basis(&b, b.dim_a());
        let br = b.bracket(&h1, &x0);
        println!("  [H1, X0] has X0-coefficient {}", br.x[0]);

        let cert = verify_axb(&b);
        println!("  structure checks passed: {}", cert.passed());
    }
}
