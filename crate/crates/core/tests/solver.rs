use toda_core::axb::{build_axb, to_h_basis, AxB};
use toda_core::envelope::{commutator, laplacian, Poly};
use toda_core::invariants::generator_set;
use toda_core::rootsys::{build_root_system, BetaKind, TypeTag};
use toda_core::toda::{change_generators, solve_conserved, verify_family, SolveOptions, Strategy, TodaError, DEFAULT_CAP};

fn setup(tag: TypeTag, kind: BetaKind) -> (AxB, Vec<Poly>) {
    let s = build_root_system(tag).unwrap();
    let b = build_axb(&s, &s.dominant(kind).unwrap());
    let g = generator_set(&s).polys().iter().map(|p| to_h_basis(&b, p)).collect();
    (b, g)
}

#[test]
fn strategies_agree_on_g2_short() {
    let (b, g) = setup(TypeTag::G2, BetaKind::Short);
    let full = SolveOptions {
        strategy: Strategy::Full,
        cap: DEFAULT_CAP,
    };
    let x = solve_conserved(&b, &g[1], SolveOptions::default()).unwrap();
    let y = solve_conserved(&b, &g[1], full).unwrap();
    assert_eq!(x.element, y.element);
    assert_eq!(y.kernel_dim, 0);
    assert!(x.full_symbol);
}

#[test]
fn b3_and_c3_families_commute() {
    for (tag, kind) in [(TypeTag::B(3), BetaKind::Short), (TypeTag::C(3), BetaKind::Short)] {
        let (b, g) = setup(tag, kind);
        let fam: Vec<_> = g
            .iter()
            .take(2)
            .enumerate()
            .map(|(k, u)| (format!("Omega_{}", k + 1), solve_conserved(&b, u, SolveOptions::default()).unwrap().element))
            .collect();
        let cert = verify_family(&b, &fam);
        assert!(cert.passed(), "{}: {:?}", b.name, cert.first_failure());
    }
}

#[test]
fn f4_long_degree_six() {
    let (b, g) = setup(TypeTag::F4, BetaKind::Long);
    let s = solve_conserved(&b, &g[1], SolveOptions::default()).unwrap();
    assert!(commutator(&b, &s.element, &laplacian(&b)).is_zero());
    assert!(s.element.is_even());
}

#[test]
fn generator_change_keeps_commuting() {
    // u' = u_2 + u_1^2 gives Ω' = Ω_2 + Ω_1^2.
    let (b, g) = setup(TypeTag::B(2), BetaKind::Long);
    let solved: Vec<(Poly, _)> = g
        .iter()
        .map(|u| (u.clone(), solve_conserved(&b, u, SolveOptions::default()).unwrap().element))
        .collect();
    let new = g[1].add(&g[0].pow(2));
    let out = change_generators(&b, &solved, std::slice::from_ref(&new)).unwrap();
    assert_eq!(out[0].1.symbol().homogeneous_part(4), new);
    assert!(commutator(&b, &out[0].1, &laplacian(&b)).is_zero());
}

#[test]
fn cap_is_checked_before_work() {
    let s = build_root_system(TypeTag::E7).unwrap();
    let b = build_axb(&s, &s.dominant(BetaKind::Long).unwrap());
    let top = Poly::var(7, 0).pow(18);
    match solve_conserved(&b, &top, SolveOptions::default()) {
        Err(TodaError::DegreeTooLarge { ansatz, cap }) => {
            assert!(ansatz > cap as u128);
            assert_eq!(cap, DEFAULT_CAP);
        }
        other => panic!("expected DegreeTooLarge, got {other:?}"),
    }
}
