use toda_core::envelope::laplacian;
use toda_core::folding::{build_folding, fixed_subalgebra, fold_report, laplacian_multiple, FoldCase};

fn main() {
    let f = build_folding(FoldCase::E7F4).unwrap();
    println!("orbits of the automorphism on X's: {:?}", f.orbits());
    let fs = fixed_subalgebra(&f).unwrap();
    println!("fixed subalgebra: {}", fs.b.labels().join(" "));
    println!("nu(Omega) = c Omega' with c = {}", laplacian_multiple(&f, &fs).unwrap());
    println!("nu(Omega) = {}", fs.nu(&laplacian(&f.parent)).to_text(&fs.b));

    let report = fold_report(FoldCase::E7F4).unwrap();
    for c in &report.checks {
        println!("{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
    }
}
