//! Differential operators on the torus: polynomials in ∂_{H_j} with
//! exponential coefficients, the Toda operator M, conjugation by e^λ, and the
//! dictionary into U(b_C).
//!
//! Exponentials are formal monomials in the half-generators e^{α_c/2}
//! (c = 0..r, α_0 = −θ). The r + 1 half-weights are linearly dependent, so two
//! monomials of equal weight are kept apart; this is what the dictionary needs.
//! Coefficients are polynomials in the parameter K.

use std::collections::BTreeMap;

use crate::axb::{build_axb, AxB};
use crate::cert::Certificate;
use crate::envelope::{laplacian, Element, Monomial, Poly};
use crate::rootsys::{BetaKind, RootError, RootSystem};
use crate::scalar::FieldElem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiffError {
    #[error("term outside the dictionary domain: {0}")]
    NotInDictionaryDomain(String),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Doubled exponent vector: e^{Σ_c k_c α_c / 2}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpWeight(pub Vec<i32>);

impl ExpWeight {
    pub fn zero(r: usize) -> Self {
        ExpWeight(vec![0; r + 1])
    }

    /// e^{α_c} for c = 0..r.
    pub fn root(r: usize, c: usize) -> Self {
        let mut k = vec![0; r + 1];
        k[c] = 2;
        ExpWeight(k)
    }

    pub fn add(&self, o: &ExpWeight) -> ExpWeight {
        ExpWeight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// λ(H_j) for each j, where λ = Σ k_c α_c / 2.
    pub fn on_h(&self, alpha: &[Vec<i64>]) -> Vec<FieldElem> {
        let r = alpha[0].len();
        (0..r)
            .map(|j| {
                let s: i64 = self.0.iter().zip(alpha).map(|(&k, a)| k as i64 * a[j]).sum();
                FieldElem::frac(s, 2)
            })
            .collect()
    }
}

/// α_c(H_j): row 0 is −marks, row i is the i-th unit vector.
pub fn alpha_table(marks: &[i64]) -> Vec<Vec<i64>> {
    let r = marks.len();
    let mut t = vec![marks.iter().map(|m| -m).collect::<Vec<_>>()];
    for i in 0..r {
        let mut row = vec![0; r];
        row[i] = 1;
        t.push(row);
    }
    t
}

/// Σ c·e^λ·∂^J in normal form (exponentials to the left), coefficients in Q(K)[K].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOp {
    alpha: Vec<Vec<i64>>,
    terms: BTreeMap<(ExpWeight, Vec<u16>), Poly>,
}

/// The parameter K as a coefficient.
pub fn k_param() -> Poly {
    Poly::var(1, 0)
}

fn kconst(c: FieldElem) -> Poly {
    Poly::constant(1, c)
}

impl DiffOp {
    pub fn zero(alpha: Vec<Vec<i64>>) -> Self {
        DiffOp {
            alpha,
            terms: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.alpha[0].len()
    }

    pub fn term(alpha: Vec<Vec<i64>>, w: ExpWeight, d: Vec<u16>, c: Poly) -> Self {
        let mut op = Self::zero(alpha);
        op.add_term(w, d, c);
        op
    }

    pub fn one(alpha: Vec<Vec<i64>>) -> Self {
        let r = alpha[0].len();
        Self::term(alpha, ExpWeight::zero(r), vec![0; r], kconst(FieldElem::one()))
    }

    pub fn exp(alpha: Vec<Vec<i64>>, w: ExpWeight) -> Self {
        let r = alpha[0].len();
        Self::term(alpha, w, vec![0; r], kconst(FieldElem::one()))
    }

    pub fn partial(alpha: Vec<Vec<i64>>, j: usize) -> Self {
        let r = alpha[0].len();
        let mut d = vec![0; r];
        d[j] = 1;
        Self::term(alpha, ExpWeight::zero(r), d, kconst(FieldElem::one()))
    }

    pub fn add_term(&mut self, w: ExpWeight, d: Vec<u16>, c: Poly) {
        if c.is_zero() {
            return;
        }
        let key = (w, d);
        let sum = match self.terms.remove(&key) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(ExpWeight, Vec<u16>), &Poly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for ((w, d), c) in &o.terms {
            out.add_term(w.clone(), d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &DiffOp) -> DiffOp {
        self.add(&o.scale(&kconst(FieldElem::from_int(-1))))
    }

    pub fn scale(&self, c: &Poly) -> DiffOp {
        let mut out = DiffOp::zero(self.alpha.clone());
        for ((w, d), x) in &self.terms {
            out.add_term(w.clone(), d.clone(), x.mul(c));
        }
        out
    }

    /// (e^λ ∂^J)(e^μ ∂^L) = e^{λ+μ} (∂ + μ)^J ∂^L.
    pub fn mul(&self, o: &DiffOp) -> DiffOp {
        let r = self.rank();
        let mut out = DiffOp::zero(self.alpha.clone());
        for ((w1, d1), c1) in &self.terms {
            for ((w2, d2), c2) in &o.terms {
                let mu = w2.on_h(&self.alpha);
                let moved = Poly::monomial(d1.clone(), FieldElem::one()).shift(&mu);
                let c = c1.mul(c2);
                let w = w1.add(w2);
                for (e, k) in moved.terms() {
                    let d: Vec<u16> = (0..r).map(|j| e[j] + d2[j]).collect();
                    out.add_term(w.clone(), d, c.map_coeffs(|x| x * k));
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &DiffOp) -> DiffOp {
        self.mul(o).sub(&o.mul(self))
    }

    /// e^λ D e^{−λ}: every ∂_j becomes ∂_j − λ(H_j).
    pub fn conjugate_by_exp(&self, lambda_h: &[FieldElem]) -> DiffOp {
        let neg: Vec<FieldElem> = lambda_h.iter().map(|x| -x).collect();
        let mut out = DiffOp::zero(self.alpha.clone());
        for ((w, d), c) in &self.terms {
            let moved = Poly::monomial(d.clone(), FieldElem::one()).shift(&neg);
            for (e, k) in moved.terms() {
                out.add_term(w.clone(), e.clone(), c.map_coeffs(|x| x * k));
            }
        }
        out
    }

    /// The part without exponentials.
    pub fn drop_exponentials(&self) -> DiffOp {
        let r = self.rank();
        let mut out = DiffOp::zero(self.alpha.clone());
        for ((w, d), c) in &self.terms {
            if *w == ExpWeight::zero(r) {
                out.add_term(w.clone(), d.clone(), c.clone());
            }
        }
        out
    }
}

/// Factor s with s·⟨α,α⟩ = 2 for long roots.
pub fn killing_scale(system: &RootSystem) -> FieldElem {
    let long = (0..system.rank())
        .map(|i| system.norm2(&system.simple_roots[i]))
        .max_by(|a, b| (a - b).rational_sign().expect("rational norms"))
        .expect("rank > 0");
    &FieldElem::from_int(2) / &long
}

/// The highest-root ax+b algebra with the inner product rescaled so long roots have norm 2.
pub fn killing_algebra(system: &RootSystem) -> Result<AxB, DiffError> {
    let mut b = build_axb(system, &system.dominant(BetaKind::Long)?);
    let s = killing_scale(system);
    b.gram_a = b.gram_a.scale(&s.inv().expect("nonzero"));
    Ok(b)
}

fn marks_of(system: &RootSystem) -> Result<Vec<i64>, DiffError> {
    Ok(system.dominant(BetaKind::Long)?.marks)
}

/// ½ Σ ⟨α_j,α_l⟩ ∂_j ∂_l with the Killing-normalized form.
fn half_laplacian(system: &RootSystem, alpha: &[Vec<i64>]) -> DiffOp {
    let r = system.rank();
    let g = system.gram_simple().scale(&killing_scale(system));
    let mut op = DiffOp::zero(alpha.to_vec());
    for j in 0..r {
        for l in 0..r {
            let mut d = vec![0u16; r];
            d[j] += 1;
            d[l] += 1;
            op.add_term(ExpWeight::zero(r), d, kconst(&g[(j, l)] * &FieldElem::frac(1, 2)));
        }
    }
    op
}

/// M = ½Δ − K e^{−θ} − Σ e^{α_i}.
pub fn build_m(system: &RootSystem) -> Result<DiffOp, DiffError> {
    let r = system.rank();
    let alpha = alpha_table(&marks_of(system)?);
    let mut m = half_laplacian(system, &alpha);
    m.add_term(ExpWeight::root(r, 0), vec![0; r], k_param().scale(&FieldElem::from_int(-1)));
    for i in 1..=r {
        m.add_term(ExpWeight::root(r, i), vec![0; r], kconst(FieldElem::from_int(-1)));
    }
    Ok(m)
}

/// Products χ_c^+ χ_c^−: −K for c = 0 and −1 for every simple root.
pub fn default_characters(r: usize) -> Vec<Poly> {
    let mut out = vec![k_param().scale(&FieldElem::from_int(-1))];
    out.extend((0..r).map(|_| kconst(FieldElem::from_int(-1))));
    out
}

/// ρ(H_j) = the simple-root coordinates of ρ.
pub fn rho_h(system: &RootSystem) -> Vec<FieldElem> {
    system.simple_coords(&system.rho()).expect("rho in the root span")
}

/// ⟨ρ, ρ⟩ in the Killing normalization.
pub fn rho_norm(system: &RootSystem) -> FieldElem {
    &system.norm2(&system.rho()) * &killing_scale(system)
}

/// D = Δ + 2∂_{h_ρ} + 2 Σ_c χ_c^+χ_c^− e^{α_c}.
pub fn build_d(system: &RootSystem, chi: &[Poly]) -> Result<DiffOp, DiffError> {
    let r = system.rank();
    let alpha = alpha_table(&marks_of(system)?);
    let mut d = half_laplacian(system, &alpha).scale(&kconst(FieldElem::from_int(2)));
    let s = killing_scale(system);
    let rho = system.rho();
    for l in 0..r {
        let c = &(&system.inner(&system.simple_roots[l], &rho) * &s) * &FieldElem::from_int(2);
        let mut e = vec![0u16; r];
        e[l] = 1;
        d.add_term(ExpWeight::zero(r), e, kconst(c));
    }
    for (c, x) in chi.iter().enumerate() {
        d.add_term(ExpWeight::root(r, c), vec![0; r], x.scale(&FieldElem::from_int(2)));
    }
    Ok(d)
}

/// Image in U(b_C) under e^{α_i/2} ↦ (i/(2√2))X_i, √K e^{−θ/2} ↦ (i/(2√2))X_0,
/// ∂_{H_j} ↦ ½H_j.
pub fn to_uea(op: &DiffOp, b: &AxB) -> Result<Element, DiffError> {
    let r = op.rank();
    if b.dim_a() != r || b.dim_u() != r + 1 {
        return Err(DiffError::NotInDictionaryDomain("algebra of the wrong rank".into()));
    }
    let gen = &FieldElem::imag_unit() / &(&FieldElem::from_int(2) * &FieldElem::sqrt2());
    let half = FieldElem::frac(1, 2);
    let mut out = Element::zero_in(b);
    for ((w, d), c) in op.terms() {
        if w.0.iter().any(|&k| k < 0 || k % 2 != 0) {
            return Err(DiffError::NotInDictionaryDomain(format!("exponent {:?}", w.0)));
        }
        let x: Vec<u16> = w.0.iter().map(|&k| k as u16).collect();
        // The K-degree must match the number of √K e^{−θ/2} factors.
        let kdeg = x[0] as usize / 2;
        let mut coef = FieldElem::zero();
        for (e, v) in c.terms() {
            if e[0] as usize != kdeg {
                return Err(DiffError::NotInDictionaryDomain(format!(
                    "K^{} with exponent {:?}",
                    e[0], w.0
                )));
            }
            coef += v;
        }
        let xdeg: u32 = x.iter().map(|&k| k as u32).sum();
        let hdeg: u32 = d.iter().map(|&k| k as u32).sum();
        coef = &(&coef * &gen.pow(xdeg)) * &half.pow(hdeg);
        out.add_term(Monomial::new(x, d.clone()), coef);
    }
    Ok(out)
}

/// (real part, imaginary part) along i = (2ω + 1)/√3.
pub fn realform_split(p: &Element) -> (Element, Element) {
    (p.map_coeffs(FieldElem::re), p.map_coeffs(FieldElem::im))
}

/// to_uea(M) = ⅛Ω for the Killing-normalized highest-root algebra.
pub fn dictionary_check(system: &RootSystem) -> Result<Certificate, DiffError> {
    let b = killing_algebra(system)?;
    let m = build_m(system)?;
    let image = to_uea(&m, &b)?;
    let target = laplacian(&b).scale(&FieldElem::frac(1, 8));
    let mut cert = Certificate::new("dictionary image of M");
    cert.input("type", system.tag);
    cert.witnesses.push(image.to_witness("to_uea(M)", &b));
    cert.residuals.push(image.sub(&target).to_witness("to_uea(M) - Omega/8", &b));
    cert.check("to_uea(M) = Omega/8", image == target, "");
    let (re, im) = realform_split(&image);
    cert.check("image is real", im.is_zero() && re == image, "");
    // Bracket compatibility on generators.
    let alpha = alpha_table(&marks_of(system)?);
    let r = system.rank();
    let mut ok = true;
    for j in 0..r {
        for c in 0..=r {
            let mut w = ExpWeight::zero(r);
            w.0[c] = 1;
            let e = DiffOp::exp(alpha.clone(), w.clone());
            let lhs = DiffOp::partial(alpha.clone(), j).commutator(&e);
            let expect = e.scale(&kconst(FieldElem::frac(alpha[c][j], 2)));
            ok &= lhs == expect;
        }
    }
    cert.check("[d_Hj, e^(alpha_c/2)] = alpha_c(H_j)/2 e^(alpha_c/2)", ok, "");
    Ok(cert)
}

/// M = ½(e^ρ D e^{−ρ} + ⟨ρ,ρ⟩) with the given character products.
pub fn conjugation_check(system: &RootSystem, chi: &[Poly]) -> Result<Certificate, DiffError> {
    let m = build_m(system)?;
    let d = build_d(system, chi)?;
    let rho = rho_h(system);
    let conj = d.conjugate_by_exp(&rho);
    let alpha = alpha_table(&marks_of(system)?);
    let rhs = conj
        .add(&DiffOp::one(alpha).scale(&kconst(rho_norm(system))))
        .scale(&kconst(FieldElem::frac(1, 2)));
    let mut cert = Certificate::new("conjugation identity for M");
    cert.input("type", system.tag);
    cert.scalar("rho_norm", rho_norm(system));
    cert.check("M = (e^rho D e^-rho + <rho,rho>)/2", m == rhs, "");
    cert.check(
        "conjugation inverts",
        conj.conjugate_by_exp(&rho.iter().map(|x| -x).collect::<Vec<_>>()) == d,
        "",
    );
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, TypeTag};

    fn sys(tag: TypeTag) -> RootSystem {
        build_root_system(tag).unwrap()
    }

    #[test]
    fn commutation_relation() {
        let alpha = alpha_table(&[1]);
        let e = DiffOp::exp(alpha.clone(), ExpWeight::root(1, 1));
        let d = DiffOp::partial(alpha.clone(), 0);
        // [∂, e^α] = α(H) e^α = e^α.
        assert_eq!(d.commutator(&e), e);
        let e0 = DiffOp::exp(alpha.clone(), ExpWeight::root(1, 0));
        assert_eq!(d.commutator(&e0), e0.scale(&kconst(FieldElem::from_int(-1))));
    }

    #[test]
    fn a1_operator() {
        let m = build_m(&sys(TypeTag::A(1))).unwrap();
        // ½·2∂² − K e^{−α} − e^{α}; the Killing form has ⟨α,α⟩ = 2.
        let alpha = alpha_table(&[1]);
        let mut want = DiffOp::zero(alpha);
        want.add_term(ExpWeight::zero(1), vec![2], kconst(FieldElem::one()));
        want.add_term(ExpWeight::root(1, 0), vec![0], k_param().scale(&FieldElem::from_int(-1)));
        want.add_term(ExpWeight::root(1, 1), vec![0], kconst(FieldElem::from_int(-1)));
        assert_eq!(m, want);
        assert_eq!(m.drop_exponentials().terms().count(), 1);
    }

    #[test]
    fn conjugation_basics() {
        let alpha = alpha_table(&[1, 1]);
        let d = DiffOp::partial(alpha.clone(), 0);
        let lam = vec![FieldElem::from_int(1), FieldElem::from_int(1)];
        let want = d.sub(&DiffOp::one(alpha.clone()));
        assert_eq!(d.conjugate_by_exp(&lam), want);
        let zero = vec![FieldElem::zero(); 2];
        assert_eq!(d.conjugate_by_exp(&zero), d);
    }

    #[test]
    fn m_maps_to_an_eighth_of_the_laplacian() {
        for tag in [TypeTag::A(1), TypeTag::A(2), TypeTag::G2] {
            let c = dictionary_check(&sys(tag)).unwrap();
            assert!(c.passed(), "{tag}: {:?}", c.first_failure());
        }
    }

    #[test]
    fn single_root_image() {
        let s = sys(TypeTag::A(1));
        let b = killing_algebra(&s).unwrap();
        let e = DiffOp::exp(alpha_table(&[1]), ExpWeight::root(1, 1));
        let img = to_uea(&e, &b).unwrap();
        let x1 = Element::x(&b, 1);
        assert_eq!(img, crate::envelope::multiply(&b, &x1, &x1).scale(&FieldElem::frac(-1, 8)));
        let half = DiffOp::exp(alpha_table(&[1]), ExpWeight(vec![0, 1]));
        assert!(to_uea(&half, &b).is_err());
        let wrong_k = DiffOp::exp(alpha_table(&[1]), ExpWeight::root(1, 0));
        assert!(to_uea(&wrong_k, &b).is_err());
    }

    #[test]
    fn conjugation_identity() {
        for tag in [TypeTag::A(1), TypeTag::A(2), TypeTag::B(2), TypeTag::G2] {
            let s = sys(tag);
            let c = conjugation_check(&s, &default_characters(s.rank())).unwrap();
            assert!(c.passed(), "{tag}: {:?}", c.first_failure());
        }
        // Flipping the sign of one simple-root constant breaks it.
        let s = sys(TypeTag::A(2));
        let mut chi = default_characters(2);
        chi[1] = kconst(FieldElem::one());
        assert!(!conjugation_check(&s, &chi).unwrap().passed());
    }

    #[test]
    fn a2_conjugated_display() {
        // e^ρ D e^{−ρ} = Δ − ⟨ρ,ρ⟩ + 2χ_0χ_0 e^{−θ} + 2Σχχ e^{α_i}.
        let s = sys(TypeTag::A(2));
        let chi = default_characters(2);
        let d = build_d(&s, &chi).unwrap();
        let conj = d.conjugate_by_exp(&rho_h(&s));
        let alpha = alpha_table(&[1, 1]);
        let mut want = half_laplacian(&s, &alpha).scale(&kconst(FieldElem::from_int(2)));
        want.add_term(ExpWeight::zero(2), vec![0, 0], kconst(-rho_norm(&s)));
        for (c, x) in chi.iter().enumerate() {
            want.add_term(ExpWeight::root(2, c), vec![0, 0], x.scale(&FieldElem::from_int(2)));
        }
        assert_eq!(conj, want);
        assert_eq!(rho_norm(&s), FieldElem::from_int(2));
    }

    #[test]
    fn split_of_complex_elements() {
        let s = sys(TypeTag::A(1));
        let b = killing_algebra(&s).unwrap();
        let om = laplacian(&b);
        let (re, im) = realform_split(&om.scale(&FieldElem::imag_unit()));
        assert!(re.is_zero());
        assert_eq!(im, om);
    }
}
