//! Root data for every supported type: simple roots, dominant roots and marks,
//! and the degree table recomputed from scratch.

use toda_core::rootsys::{build_root_system, table_representatives, BetaKind};

fn main() {
    for tag in table_representatives() {
        let s = build_root_system(tag).expect("supported type");
        let long = s.dominant(BetaKind::Long).unwrap();
        let short = s.dominant(BetaKind::Short).unwrap();
        println!(
            "{tag:>3}  roots {:>3}  degrees {:?}  marks(long) {:?} sum {}  marks(short) {:?} sum {}",
            s.root_count(),
            s.degrees(),
            long.marks,
            long.marks_sum(),
            short.marks,
            short.marks_sum(),
        );
    }

    let g2 = build_root_system("G2".parse().unwrap()).unwrap();
    println!("\nG2 simple roots:");
    for a in &g2.simple_roots {
        println!("  {}", g2.format_covector(a));
    }
    println!("G2 Cartan matrix: {:?}", g2.cartan);
}
