//! The universal enveloping algebra U(b) in PBW normal form (X's left of H's),
//! and commutative polynomials for Sym(a).

mod element;
mod monomial;
mod poly;

pub use element::{commutator, laplacian, multiply, multiply_capped, power, weyl_reflect_sym, Element};
pub use monomial::Monomial;
pub use poly::{binomial, power_sum, Poly, SymPoly};

use crate::rootsys::RootSystem;
use crate::scalar::FieldElem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnvelopeError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
}

/// Image of a polynomial in ambient coordinates under the simple reflection
/// s_i: each coordinate x_k is replaced by s_i(x_k).
pub fn weyl_reflect(system: &RootSystem, i: usize, p: &Poly) -> Poly {
    let m = system.reflection_matrix(i);
    let rows: Vec<Vec<FieldElem>> = (0..m.cols()).map(|k| m.col(k)).collect();
    p.substitute_linear(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axb::{build_axb, AxB};
    use crate::rootsys::{build_root_system, BetaKind, TypeTag};
    use crate::scalar::{fe, Matrix};

    fn alg(tag: TypeTag, kind: BetaKind) -> AxB {
        let s = build_root_system(tag).unwrap();
        build_axb(&s, &s.dominant(kind).unwrap())
    }

    // The same algebra with the diagonal flag removed, forcing the generic path.
    fn generic(b: &AxB) -> AxB {
        let mut g = b.clone();
        g.shifts = None;
        g
    }

    #[test]
    fn basic_relations() {
        let b = alg(TypeTag::A(1), BetaKind::Long);
        let h = Element::h(&b, 0);
        let x0 = Element::x(&b, 0);
        let x1 = Element::x(&b, 1);
        // [H1, X1] = X1, [H1, X0] = -X0.
        assert_eq!(commutator(&b, &h, &x1), x1);
        assert_eq!(commutator(&b, &h, &x0), x0.scale(&fe(-1, 1)));
        assert!(commutator(&b, &x0, &x1).is_zero());
        // H X1 = X1 H + X1.
        let hx = multiply(&b, &h, &x1);
        assert_eq!(hx, multiply(&b, &x1, &h).add(&x1));
    }

    #[test]
    fn laplacian_a1_text() {
        let b = alg(TypeTag::A(1), BetaKind::Long);
        let w = laplacian(&b).to_witness("omega", &b);
        let texts: Vec<&str> = w.terms.iter().map(|t| t.monomial.as_str()).collect();
        assert_eq!(texts, ["X0^2", "X1^2", "H1^2"]);
        assert_eq!(Element::from_witness(&w, &b).unwrap(), laplacian(&b));
    }

    #[test]
    fn diagonal_and_generic_paths_agree() {
        let b = alg(TypeTag::G2, BetaKind::Short);
        let g = generic(&b);
        let p = multiply(&b, &Element::h(&b, 0), &Element::h(&b, 1))
            .add(&Element::x(&b, 2))
            .add(&power(&b, &Element::h(&b, 0), 3));
        let q = power(&b, &Element::x(&b, 0), 2).add(&multiply(&b, &Element::x(&b, 1), &Element::h(&b, 0)));
        assert_eq!(multiply(&b, &p, &q), multiply(&g, &p, &q));
        assert_eq!(multiply(&b, &q, &p), multiply(&g, &q, &p));
    }

    #[test]
    fn associativity_sample() {
        let b = alg(TypeTag::A(2), BetaKind::Long);
        let om = laplacian(&b);
        let hx = multiply(&b, &Element::h(&b, 1), &Element::x(&b, 0));
        let x2 = Element::x(&b, 2).add(&Element::h(&b, 0));
        let l = multiply(&b, &multiply(&b, &om, &hx), &x2);
        let r = multiply(&b, &om, &multiply(&b, &hx, &x2));
        assert_eq!(l, r);
    }

    #[test]
    fn capped_multiply() {
        let b = alg(TypeTag::A(1), BetaKind::Long);
        let om = laplacian(&b);
        let full = multiply(&b, &om, &om);
        assert_eq!(multiply_capped(&b, &om, &om, Some(4)).unwrap(), full);
        assert_eq!(multiply_capped(&b, &om, &om, Some(3)).unwrap(), full.truncate(3));
        let other = alg(TypeTag::A(2), BetaKind::Long);
        assert_eq!(
            multiply_capped(&other, &om, &om, None).unwrap_err(),
            EnvelopeError::AlgebraMismatch
        );
    }

    #[test]
    fn h_past_x_squared() {
        // H1 X1^2 = X1^2 H1 + 2 X1^2, and again through the generic path.
        let b = alg(TypeTag::A(1), BetaKind::Long);
        let x1sq = power(&b, &Element::x(&b, 1), 2);
        let want = multiply(&b, &x1sq, &Element::h(&b, 0)).add(&x1sq.scale(&fe(2, 1)));
        assert_eq!(multiply(&b, &Element::h(&b, 0), &x1sq), want);
        assert_eq!(multiply(&generic(&b), &Element::h(&b, 0), &x1sq), want);
    }

    #[test]
    fn reflection_in_coordinates() {
        let s = build_root_system(TypeTag::E7).unwrap();
        let n = s.ambient_dim();
        let mut p2 = Poly::zero(n);
        for k in 0..n {
            p2 = p2.add(&Poly::var(n, k).pow(2));
        }
        for i in 0..s.rank() {
            assert_eq!(weyl_reflect(&s, i, &p2), p2);
        }
        // α_4 = 2x_4 is orthogonal to x_1.
        assert_eq!(weyl_reflect(&s, 3, &Poly::var(n, 0)), Poly::var(n, 0));
    }

    #[test]
    fn non_diagonal_action() {
        // Basis change X0' = X0 + X1, X1' = X0 - X1 of the A1 algebra.
        let b = alg(TypeTag::A(1), BetaKind::Long);
        let c = Matrix::from_i64(&[vec![1, 1], vec![1, -1]]);
        let cinv = c.inverse().unwrap();
        let action: Vec<Matrix> = b
            .action
            .iter()
            .map(|m| cinv.mul(m).unwrap().mul(&c).unwrap())
            .collect();
        let g = AxB::general(
            "A1 rotated",
            b.h_labels.clone(),
            vec!["Y0".into(), "Y1".into()],
            action,
            b.gram_a.clone(),
            Matrix::identity(2),
        )
        .unwrap();
        assert!(!g.is_diagonal());
        // X_c = Σ_d C[c][d]-inverse columns: X0 = (Y0+Y1)/2, X1 = (Y0-Y1)/2.
        let xmap = cinv.transpose();
        let to_g = |e: &Element| e.linear_substitute(&xmap, &Matrix::identity(1));
        let p = multiply(&b, &Element::h(&b, 0), &Element::x(&b, 1));
        let q = power(&b, &Element::x(&b, 0), 2).add(&Element::h(&b, 0));
        let lhs = to_g(&multiply(&b, &p, &q));
        let rhs = multiply(&g, &to_g(&p), &to_g(&q));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn weyl_invariance_of_u1() {
        for tag in [TypeTag::A(3), TypeTag::B(2), TypeTag::G2, TypeTag::F4, TypeTag::E6] {
            let s = build_root_system(tag).unwrap();
            let b = build_axb(&s, &s.dominant(BetaKind::Long).unwrap());
            let u1 = laplacian(&b).symbol();
            for i in 0..s.rank() {
                assert_eq!(weyl_reflect_sym(&s.gram_simple(), i, &u1), u1, "{tag} s{i}");
            }
        }
    }
}
