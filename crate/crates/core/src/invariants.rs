//! Fundamental Weyl-invariant polynomials in ambient coordinates.

use std::collections::BTreeMap;

use crate::cert::Certificate;
use crate::envelope::{power_sum, weyl_reflect, Poly};
use crate::rootsys::{table_entry, Covector, RootSystem, TypeTag};
use crate::scalar::{fe, solve_sparse, FieldElem, Matrix, Solution, SparseMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("generator {generator} is not invariant under s_{reflection}")]
    NotInvariant { generator: usize, reflection: usize },
    #[error("Jacobian vanishes at both sample points")]
    DegenerateJacobian,
    #[error("target is not a polynomial in the generators")]
    NotExpressible,
    #[error("expected {expected} generators, got {got}")]
    Count { expected: usize, got: usize },
}

/// One generator: an explicit polynomial, or `scale · Σ_f f^k` kept unexpanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    Poly(Poly),
    PowerSum {
        forms: Vec<Covector>,
        k: u32,
        scale: FieldElem,
    },
}

impl Generator {
    pub fn degree(&self) -> usize {
        match self {
            Generator::Poly(p) => p.degree(),
            Generator::PowerSum { k, .. } => *k as usize,
        }
    }

    pub fn to_poly(&self) -> Poly {
        match self {
            Generator::Poly(p) => p.clone(),
            Generator::PowerSum { forms, k, scale } => power_sum(forms, *k).scale(scale),
        }
    }

    pub fn eval(&self, x: &[FieldElem]) -> FieldElem {
        match self {
            Generator::Poly(p) => p.eval(x),
            Generator::PowerSum { forms, k, scale } => {
                let s = forms.iter().fold(FieldElem::zero(), |acc, f| acc + pair(f, x).pow(*k));
                &s * scale
            }
        }
    }

    pub fn gradient(&self, x: &[FieldElem]) -> Vec<FieldElem> {
        match self {
            Generator::Poly(p) => (0..p.nvars()).map(|i| p.derivative(i).eval(x)).collect(),
            Generator::PowerSum { forms, k, scale } => {
                let mut g = vec![FieldElem::zero(); x.len()];
                let kk = &FieldElem::from_int(*k as i64) * scale;
                for f in forms {
                    let w = &pair(f, x).pow(k - 1) * &kk;
                    for (gi, fi) in g.iter_mut().zip(f) {
                        *gi += &(&w * fi);
                    }
                }
                g
            }
        }
    }

    /// Exact invariance under s_i. Power sums are checked by showing that the
    /// reflection permutes the forms (up to sign when k is even).
    pub fn is_invariant(&self, system: &RootSystem, i: usize) -> bool {
        match self {
            Generator::Poly(p) => weyl_reflect(system, i, p) == *p,
            Generator::PowerSum { forms, k, .. } => {
                let key = |f: &Covector| -> Covector {
                    if k % 2 == 1 {
                        return f.clone();
                    }
                    let lead = f.iter().find(|v| !v.is_zero());
                    match lead.and_then(FieldElem::rational_sign) {
                        Some(std::cmp::Ordering::Less) => f.iter().map(|v| -v).collect(),
                        _ => f.clone(),
                    }
                };
                let mut before: BTreeMap<Vec<[String; 8]>, usize> = BTreeMap::new();
                let mut after = before.clone();
                for f in forms {
                    let strings = |c: &Covector| c.iter().map(FieldElem::to_strings).collect::<Vec<_>>();
                    *before.entry(strings(&key(f))).or_default() += 1;
                    *after.entry(strings(&key(&system.simple_reflection(i, f)))).or_default() += 1;
                }
                before == after
            }
        }
    }

    /// Restriction along x = P y.
    pub fn restrict(&self, param: &Matrix) -> Generator {
        match self {
            Generator::Poly(p) => Generator::Poly(restrict_to_fixed(p, param)),
            Generator::PowerSum { forms, k, scale } => {
                let pt = param.transpose();
                Generator::PowerSum {
                    forms: forms.iter().map(|f| pt.mul_vec(f).expect("dimension")).collect(),
                    k: *k,
                    scale: scale.clone(),
                }
            }
        }
    }
}

fn pair(f: &[FieldElem], x: &[FieldElem]) -> FieldElem {
    f.iter().zip(x).fold(FieldElem::zero(), |acc, (a, b)| acc + a * b)
}

/// A candidate system of fundamental invariants, in the coordinates of `tag`'s
/// realization.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub tag: TypeTag,
    pub coord_names: Vec<String>,
    pub gens: Vec<Generator>,
    /// Normalization conventions, copied into certificates.
    pub notes: Vec<String>,
}

impl GeneratorSet {
    pub fn degrees(&self) -> Vec<usize> {
        self.gens.iter().map(Generator::degree).collect()
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.gens.iter().map(Generator::to_poly).collect()
    }

    pub fn restrict(&self, param: &Matrix, tag: TypeTag, names: Vec<String>) -> GeneratorSet {
        GeneratorSet {
            tag,
            coord_names: names,
            gens: self.gens.iter().map(|g| g.restrict(param)).collect(),
            notes: self.notes.clone(),
        }
    }

    /// Keeps the generators at the given positions.
    pub fn select(&self, idx: &[usize], tag: TypeTag) -> GeneratorSet {
        GeneratorSet {
            tag,
            coord_names: self.coord_names.clone(),
            gens: idx.iter().map(|&i| self.gens[i].clone()).collect(),
            notes: self.notes.clone(),
        }
    }
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("x{k}")).collect()
}

fn unit_form(n: usize, entries: &[(usize, FieldElem)]) -> Covector {
    let mut f = vec![FieldElem::zero(); n];
    for (i, v) in entries {
        f[*i] += v;
    }
    f
}

/// e_a ± e_b ± e_c over the seven lines of the Fano plane.
pub fn e7_forms() -> Vec<Covector> {
    const TRIPLES: [(usize, usize, usize); 7] =
        [(1, 2, 7), (1, 3, 6), (1, 4, 5), (2, 3, 5), (2, 4, 6), (3, 4, 7), (5, 6, 7)];
    let mut out = Vec::new();
    for (a, b, c) in TRIPLES {
        for sb in [1, -1] {
            for sc in [1, -1] {
                out.push(unit_form(
                    7,
                    &[(a - 1, fe(1, 1)), (b - 1, fe(sb, 1)), (c - 1, fe(sc, 1))],
                ));
            }
        }
    }
    out
}

pub const E7_DEGREES: [u32; 7] = [2, 6, 8, 10, 12, 14, 18];
pub const E6_DEGREES: [u32; 6] = [2, 5, 6, 8, 9, 12];

pub fn e7_invariants() -> GeneratorSet {
    let forms = e7_forms();
    GeneratorSet {
        tag: TypeTag::E7,
        coord_names: names(7),
        gens: E7_DEGREES
            .iter()
            .map(|&k| Generator::PowerSum {
                forms: forms.clone(),
                k,
                scale: FieldElem::one(),
            })
            .collect(),
        notes: vec!["v_k = sum of k-th powers of the 28 forms; v_2 = 12 * sum x_k^2".into()],
    }
}

/// The 27 weights of E6 in the x-coordinates. With `as_printed`, the last
/// group carries (√3x5 + x6), which breaks invariance; the default uses
/// (√3x5 − x6), which makes the weights sum to zero and the power sums invariant.
pub fn e6_forms(as_printed: bool) -> Vec<Covector> {
    let s2 = FieldElem::sqrt2();
    let s6 = FieldElem::sqrt6();
    let r23 = &s6 * &fe(1, 3); // √(2/3)
    let r16 = &s6 * &fe(1, 6); // 1/√6
    let half_s2 = &s2 * &fe(1, 2); // √3/√6
    let mut out = vec![
        unit_form(6, &[(5, &r23 * &fe(2, 1))]),
        unit_form(6, &[(4, s2.clone()), (5, -&r23)]),
        unit_form(6, &[(4, -&s2), (5, -&r23)]),
    ];
    let mut group = |a: usize, b: usize, x5: FieldElem, x6: FieldElem| {
        for sa in [1, -1] {
            for sb in [1, -1] {
                out.push(unit_form(
                    6,
                    &[(a - 1, fe(sa, 1)), (b - 1, fe(sb, 1)), (4, x5.clone()), (5, x6.clone())],
                ));
            }
        }
    };
    group(3, 4, FieldElem::zero(), -&r23);
    group(1, 2, FieldElem::zero(), -&r23);
    group(2, 4, half_s2.clone(), r16.clone());
    group(1, 3, half_s2.clone(), r16.clone());
    group(2, 3, -&half_s2, r16.clone());
    let last_x6 = if as_printed { -&r16 } else { r16.clone() };
    group(1, 4, -&half_s2, last_x6);
    out
}

pub fn e6_invariants() -> GeneratorSet {
    let forms = e6_forms(false);
    GeneratorSet {
        tag: TypeTag::E6,
        coord_names: names(6),
        gens: E6_DEGREES
            .iter()
            .map(|&k| Generator::PowerSum {
                forms: forms.clone(),
                k,
                scale: FieldElem::one(),
            })
            .collect(),
        notes: vec![
            "v_k = sum of k-th powers of the 27 weights; v_2 = 12 * sum x_k^2".into(),
            "(x1,x4) group uses -(1/sqrt6)(sqrt3 x5 - x6)".into(),
        ],
    }
}

fn coord_power_sum(n: usize, k: u32) -> Generator {
    let forms: Vec<Covector> = (0..n).map(|i| unit_form(n, &[(i, FieldElem::one())])).collect();
    Generator::PowerSum {
        forms,
        k,
        scale: FieldElem::one(),
    }
}

fn root_power_sum(system: &RootSystem, k: u32, pred: impl Fn(&[i64]) -> bool) -> Generator {
    let forms: Vec<Covector> = system
        .positive
        .iter()
        .filter(|c| pred(c))
        .map(|c| system.root_covector(c))
        .collect();
    Generator::PowerSum {
        forms,
        k,
        scale: FieldElem::one(),
    }
}

/// A fundamental system for the standard realization of `system.tag`.
pub fn generator_set(system: &RootSystem) -> GeneratorSet {
    let n = system.ambient_dim();
    let (gens, note): (Vec<Generator>, &str) = match system.tag {
        TypeTag::A(r) => (
            (2..=r as u32 + 1).map(|k| coord_power_sum(n, k)).collect(),
            "power sums p_2..p_{r+1}",
        ),
        TypeTag::B(r) | TypeTag::C(r) => (
            (1..=r as u32).map(|j| coord_power_sum(n, 2 * j)).collect(),
            "even power sums p_2..p_{2r}",
        ),
        TypeTag::D(r) => {
            let mut g: Vec<Generator> = (1..r as u32).map(|j| coord_power_sum(n, 2 * j)).collect();
            let mut e = vec![0u16; n];
            e.iter_mut().for_each(|x| *x = 1);
            g.push(Generator::Poly(Poly::monomial(e, FieldElem::one())));
            g.sort_by_key(Generator::degree);
            (g, "even power sums p_2..p_{2r-2} and x1*...*xr")
        }
        TypeTag::E6 => return e6_invariants(),
        TypeTag::E7 => return e7_invariants(),
        TypeTag::E8 => (
            [2, 8, 12, 14, 18, 20, 24, 30]
                .iter()
                .map(|&k| root_power_sum(system, k, |_| true))
                .collect(),
            "power sums over positive roots",
        ),
        TypeTag::F4 | TypeTag::G2 => {
            let short: Vec<Vec<i64>> = system
                .positive
                .iter()
                .filter(|c| !system.is_long(c))
                .cloned()
                .collect();
            let degrees: &[u32] = if system.tag == TypeTag::F4 { &[2, 6, 8, 12] } else { &[2, 6] };
            (
                degrees
                    .iter()
                    .map(|&k| root_power_sum(system, k, |c| short.iter().any(|s| s == c)))
                    .collect(),
                "power sums over positive short roots",
            )
        }
    };
    GeneratorSet {
        tag: system.tag,
        coord_names: system.coord_names.clone(),
        gens,
        notes: vec![note.into()],
    }
}

/// Substitutes x = P y.
pub fn restrict_to_fixed(p: &Poly, param: &Matrix) -> Poly {
    p.substitute_linear(&param.to_rows())
}

/// 2Σ_{i<j≤4} (e_i − e_j)^k + (e_i + e_j)^k.
pub fn f4_restricted_expected(k: u32) -> Poly {
    let mut acc = Poly::zero(4);
    for i in 0..4 {
        for j in i + 1..4 {
            for s in [1, -1] {
                let f = unit_form(4, &[(i, fe(1, 1)), (j, fe(s, 1))]);
                acc = acc.add(&Poly::linear(&f).pow(k));
            }
        }
    }
    acc.scale(&fe(2, 1))
}

/// 6[(x1 − x4)^k + (2x1)^k + (x1 + x4)^k] in the parameters (x1, x4).
pub fn g2_restricted_expected(k: u32) -> Poly {
    let forms = [vec![fe(1, 1), fe(-1, 1)], vec![fe(2, 1), fe(0, 1)], vec![fe(1, 1), fe(1, 1)]];
    power_sum(&forms, k).scale(&fe(6, 1))
}

/// The fixed space x1 = −x2 = x3, x5 = x6 = 0 of the order-3 folding,
/// parametrized by (x1, x4).
pub fn e6_fixed_param() -> Matrix {
    Matrix::from_i64(&[
        vec![1, 0],
        vec![-1, 0],
        vec![1, 0],
        vec![0, 1],
        vec![0, 0],
        vec![0, 0],
    ])
}

/// ν(v_6) is not a multiple of ν(v_2)³: compares (ν(v_2)/12)³ with ν(v_6)/6
/// at (x1, x4) = (0, 1) and (1, 0).
pub fn non_proportionality_check() -> Certificate {
    let set = e6_invariants();
    let p = e6_fixed_param();
    let q2 = set.gens[0].restrict(&p).to_poly().scale(&fe(1, 12));
    let q6 = set.gens[2].restrict(&p).to_poly().scale(&fe(1, 6));
    let mut cert = Certificate::new("nu(v6) is not a scalar multiple of nu(v2)^3");
    cert.input("folding", "E6G2");
    cert.note("normalization", "(nu(v2)/12)^3 = (3x1^2 + x4^2)^3 against nu(v6)/6");
    let pts = [("(0,1)", [fe(0, 1), fe(1, 1)]), ("(1,0)", [fe(1, 1), fe(0, 1)])];
    let mut ratios = Vec::new();
    for (label, pt) in &pts {
        let lhs = q2.eval(pt).pow(3);
        let rhs = q6.eval(pt);
        cert.scalar(format!("cube_at_{label}"), lhs.clone());
        cert.scalar(format!("sextic_at_{label}"), rhs.clone());
        let r = &lhs / &rhs;
        cert.scalar(format!("ratio_at_{label}"), r.clone());
        ratios.push(r);
    }
    cert.check("ratio (0,1) = 1/2", ratios[0] == fe(1, 2), ratios[0].to_string());
    cert.check("ratio (1,0) = 27/66", ratios[1] == fe(27, 66), ratios[1].to_string());
    cert.check("ratios differ", ratios[0] != ratios[1], "no common r");
    // Control: a cube against itself has ratio 1 at both points.
    let cube = q2.pow(3);
    let control = pts.iter().all(|(_, pt)| cube.eval(pt) == q2.eval(pt).pow(3));
    cert.check("control nu(v2)^3 vs itself", control, "ratio 1 at both points");
    cert
}

/// Jacobian determinant of the generators at the point ξ of a with
/// α_i(ξ) = `alpha_values[i]`, in coordinates along the gram duals of the
/// simple roots. For a strictly dominant ξ it vanishes only for dependent sets.
pub fn jacobian_det(set: &GeneratorSet, system: &RootSystem, alpha_values: &[FieldElem]) -> FieldElem {
    let r = system.rank();
    let n = system.ambient_dim();
    let mut c = Matrix::zeros(n, r);
    for (i, a) in system.simple_roots.iter().enumerate() {
        let ga = system.gram.mul_vec(a).expect("dimension");
        for k in 0..n {
            c[(k, i)] = ga[k].clone();
        }
    }
    let gs = system.gram_simple().inverse().expect("independent simple roots");
    let t = gs.mul_vec(alpha_values).expect("dimension");
    let x = c.mul_vec(&t).expect("dimension");
    let rows: Vec<Vec<FieldElem>> = set.gens.iter().map(|g| g.gradient(&x)).collect();
    let jx = Matrix::from_rows(rows).expect("rectangular");
    jx.mul(&c).expect("dimension").det().expect("square")
}

/// Invariance under all simple reflections, Jacobian criterion at a
/// deterministic point (then a second one), and degrees against the table.
pub fn check_fundamental(set: &GeneratorSet, system: &RootSystem) -> Result<Certificate, InvariantError> {
    let r = system.rank();
    if set.gens.len() != r {
        return Err(InvariantError::Count {
            expected: r,
            got: set.gens.len(),
        });
    }
    let mut cert = Certificate::new(format!("fundamental invariants of {}", system.tag));
    cert.input("type", system.tag);
    cert.input("degrees", format!("{:?}", set.degrees()));
    for (k, n) in set.notes.iter().enumerate() {
        cert.note(format!("normalization_{k}"), n.clone());
    }
    for (g, gen) in set.gens.iter().enumerate() {
        for i in 0..r {
            if !gen.is_invariant(system, i) {
                return Err(InvariantError::NotInvariant {
                    generator: g,
                    reflection: i + 1,
                });
            }
        }
    }
    cert.check("invariance", true, format!("{} generators x {r} reflections", set.gens.len()));
    let first: Vec<FieldElem> = (1..=r as i64).map(FieldElem::from_int).collect();
    let second: Vec<FieldElem> = [2i64, 3, 5, 7, 11, 13, 17, 19][..r].iter().map(|&p| FieldElem::from_int(p)).collect();
    let mut det = jacobian_det(set, system, &first);
    let mut point = "alpha_i = i";
    if det.is_zero() {
        det = jacobian_det(set, system, &second);
        point = "alpha_i = i-th prime";
    }
    if det.is_zero() {
        return Err(InvariantError::DegenerateJacobian);
    }
    cert.scalar("jacobian_det", det);
    cert.check("jacobian nonzero", true, point);
    let mut want = table_entry(system.tag).0;
    let mut got = set.degrees();
    want.sort_unstable();
    got.sort_unstable();
    cert.check("degrees match table", want == got, format!("{got:?} vs {want:?}"));
    Ok(cert)
}

/// Finds f with f(gens) = target for a homogeneous target, by linear algebra
/// over the generator monomials of the target's weighted degree.
pub fn express_in_generators(target: &Poly, gens: &[Poly]) -> Result<Poly, InvariantError> {
    let r = gens.len();
    let d = target.degree();
    if !target.is_homogeneous() {
        return Err(InvariantError::NotExpressible);
    }
    let degs: Vec<usize> = gens.iter().map(Poly::degree).collect();
    let mut exps: Vec<Vec<u16>> = Vec::new();
    weighted_exponents(&degs, d, &mut vec![0; r], 0, &mut exps);
    let n = target.nvars();
    let mut cache: BTreeMap<(usize, u16), Poly> = BTreeMap::new();
    let mut products = Vec::with_capacity(exps.len());
    for e in &exps {
        let mut p = Poly::one(n);
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                let pw = cache.entry((i, k)).or_insert_with(|| gens[i].pow(k as u32)).clone();
                p = p.mul(&pw);
            }
        }
        products.push(p);
    }
    let mut rows: BTreeMap<Vec<u16>, Vec<(usize, FieldElem)>> = BTreeMap::new();
    for (j, p) in products.iter().enumerate() {
        for (m, c) in p.terms() {
            rows.entry(m.clone()).or_default().push((j, c.clone()));
        }
    }
    for (m, _) in target.terms() {
        rows.entry(m.clone()).or_default();
    }
    let mut a = SparseMatrix::new(exps.len());
    let mut b = Vec::new();
    for (m, row) in rows {
        a.push_row(row);
        b.push(target.coeff(&m));
    }
    let sol = solve_sparse(&a, &b).map_err(|_| InvariantError::NotExpressible)?;
    let x = match sol {
        Solution::Empty => return Err(InvariantError::NotExpressible),
        s => s.particular().expect("consistent").to_vec(),
    };
    Ok(Poly::from_terms(r, exps.into_iter().zip(x)))
}

fn weighted_exponents(degs: &[usize], d: usize, cur: &mut Vec<u16>, i: usize, out: &mut Vec<Vec<u16>>) {
    if i == degs.len() {
        if d == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let mut k = 0;
    while k * degs[i] <= d {
        cur[i] = k as u16;
        weighted_exponents(degs, d - k * degs[i], cur, i + 1, out);
        k += 1;
    }
    cur[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_system;

    fn sum_squares(n: usize) -> Poly {
        (0..n).fold(Poly::zero(n), |acc, k| acc.add(&Poly::var(n, k).pow(2)))
    }

    #[test]
    fn e7_v2_is_twelve_times_gram_form() {
        let set = e7_invariants();
        assert_eq!(set.gens[0].to_poly(), sum_squares(7).scale(&fe(12, 1)));
    }

    #[test]
    fn e6_v2_is_twelve_times_gram_form() {
        let set = e6_invariants();
        assert_eq!(set.gens[0].to_poly(), sum_squares(6).scale(&fe(12, 1)));
    }

    #[test]
    fn e6_weights_sum_to_zero_only_when_corrected() {
        let total = |fs: Vec<Covector>| {
            fs.iter().fold(vec![FieldElem::zero(); 6], |acc, f| crate::rootsys::cv_add(&acc, f))
        };
        assert!(total(e6_forms(false)).iter().all(FieldElem::is_zero));
        assert!(!total(e6_forms(true)).iter().all(FieldElem::is_zero));
    }

    #[test]
    fn e6_v5_invariant_by_substitution() {
        let s = build_root_system(TypeTag::E6).unwrap();
        let v5 = e6_invariants().gens[1].to_poly();
        for i in 0..6 {
            assert_eq!(weyl_reflect(&s, i, &v5), v5, "s{}", i + 1);
        }
        let printed = Generator::PowerSum {
            forms: e6_forms(true),
            k: 5,
            scale: FieldElem::one(),
        };
        assert!((0..6).any(|i| !printed.is_invariant(&s, i)));
    }

    #[test]
    fn e7_v6_invariant_by_substitution() {
        let s = build_root_system(TypeTag::E7).unwrap();
        let v6 = e7_invariants().gens[1].to_poly();
        for i in 0..7 {
            assert_eq!(weyl_reflect(&s, i, &v6), v6, "s{}", i + 1);
        }
    }

    #[test]
    fn e7_restriction_matches_do() {
        let mut p = Matrix::zeros(7, 4);
        for i in 0..4 {
            p[(i, i)] = FieldElem::one();
        }
        let set = e7_invariants();
        for (idx, k) in [(0usize, 2u32), (1, 6), (2, 8), (4, 12)] {
            assert_eq!(set.gens[idx].restrict(&p).to_poly(), f4_restricted_expected(k), "k={k}");
        }
    }

    #[test]
    fn e6_restriction_matches_display() {
        let set = e6_invariants();
        let p = e6_fixed_param();
        assert_eq!(set.gens[0].restrict(&p).to_poly(), g2_restricted_expected(2));
        assert_eq!(set.gens[2].restrict(&p).to_poly(), g2_restricted_expected(6));
    }

    #[test]
    fn restriction_is_multiplicative() {
        let set = e6_invariants();
        let p = e6_fixed_param();
        let a = set.gens[0].to_poly();
        let b = set.gens[1].to_poly();
        assert_eq!(
            restrict_to_fixed(&a.mul(&b), &p),
            restrict_to_fixed(&a, &p).mul(&restrict_to_fixed(&b, &p))
        );
        let c = Poly::constant(6, fe(5, 1));
        assert_eq!(restrict_to_fixed(&c, &p), Poly::constant(2, fe(5, 1)));
    }

    #[test]
    fn non_proportionality() {
        let cert = non_proportionality_check();
        assert!(cert.passed(), "{:?}", cert.first_failure());
        assert_eq!(cert.scalars["ratio_at_(0,1)"], fe(1, 2));
        assert_eq!(cert.scalars["ratio_at_(1,0)"], fe(27, 66));
    }

    #[test]
    fn classical_and_exceptional_sets_are_fundamental() {
        for tag in [
            TypeTag::A(1),
            TypeTag::A(3),
            TypeTag::B(3),
            TypeTag::C(2),
            TypeTag::D(3),
            TypeTag::D(4),
            TypeTag::G2,
            TypeTag::F4,
            TypeTag::E6,
            TypeTag::E7,
            TypeTag::E8,
        ] {
            let s = build_root_system(tag).unwrap();
            let cert = check_fundamental(&generator_set(&s), &s).unwrap_or_else(|e| panic!("{tag}: {e}"));
            assert!(cert.passed(), "{tag}: {:?}", cert.first_failure());
        }
    }

    #[test]
    fn dependent_set_is_degenerate() {
        let s = build_root_system(TypeTag::A(2)).unwrap();
        let u1 = coord_power_sum(3, 2).to_poly();
        let set = GeneratorSet {
            tag: TypeTag::A(2),
            coord_names: names(3),
            gens: vec![Generator::Poly(u1.clone()), Generator::Poly(u1.pow(2))],
            notes: vec![],
        };
        assert_eq!(check_fundamental(&set, &s).unwrap_err(), InvariantError::DegenerateJacobian);
    }

    #[test]
    fn non_invariant_is_named() {
        let s = build_root_system(TypeTag::A(2)).unwrap();
        let set = GeneratorSet {
            tag: TypeTag::A(2),
            coord_names: names(3),
            gens: vec![Generator::Poly(Poly::var(3, 0).pow(2)), coord_power_sum(3, 3)],
            notes: vec![],
        };
        assert_eq!(
            check_fundamental(&set, &s).unwrap_err(),
            InvariantError::NotInvariant {
                generator: 0,
                reflection: 1
            }
        );
    }

    #[test]
    fn expression_in_generators() {
        let g = [g2_restricted_expected(2), g2_restricted_expected(6)];
        let f = express_in_generators(&g[0].pow(2), &g).unwrap();
        assert_eq!(f, Poly::monomial(vec![2, 0], fe(1, 1)));
        let f = express_in_generators(&g[1], &g).unwrap();
        assert_eq!(f, Poly::var(2, 1));
        let t = g[0].pow(3).scale(&fe(-3, 7)).add(&g[1].scale(&fe(5, 2)));
        let f = express_in_generators(&t, &g).unwrap();
        assert_eq!(f.coeff(&[3, 0]), fe(-3, 7));
        assert_eq!(f.coeff(&[0, 1]), fe(5, 2));
        let bad = Poly::var(2, 0).pow(6);
        assert_eq!(express_in_generators(&bad, &g).unwrap_err(), InvariantError::NotExpressible);
    }
}
