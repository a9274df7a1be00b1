//! Diagram foldings E7 → F4 (order two) and E6 → G2 (order three), the fixed
//! subalgebra b′, and the projection ν: U(b) → U(b′) along ⟨U(b)b″⟩.
//!
//! Every X_c is a joint eigenvector of a, so a PBW monomial X^A H^J expands in
//! the adapted basis (b′ generators first, b″ generators last) by a purely
//! commutative substitution; ν keeps the part free of b″ generators. On
//! generators this is X_c ↦ X′_O/√|O| for the orbit O of c, and H ↦ the τ-average
//! of H, which is the orthogonal projection a → a′.

use std::collections::BTreeSet;

use crate::axb::{build_axb, to_h_basis, AlgVec, AxB};
use crate::cert::Certificate;
use crate::envelope::{laplacian, multiply, Element, Monomial, Poly};
use crate::invariants::{
    check_fundamental, e6_fixed_param, e6_invariants, e7_invariants, f4_restricted_expected,
    g2_restricted_expected, non_proportionality_check, restrict_to_fixed, GeneratorSet,
};
use crate::rootsys::{build_root_system, restricted_system, BetaKind, Restriction, RootError, RootSystem, TypeTag};
use crate::scalar::{solve_linear, FieldElem, Matrix, Solution};
use crate::toda::{element_rank, exponents_upto};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FoldError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("folding mismatch: {0}")]
    Mismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldCase {
    E7F4,
    E6G2,
}

impl std::str::FromStr for FoldCase {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().replace(['-', '_', '>'], "").as_str() {
            "e7f4" | "e7" => Ok(FoldCase::E7F4),
            "e6g2" | "e6" => Ok(FoldCase::E6G2),
            _ => Err(format!("unknown folding {s}; expected e7-f4 or e6-g2")),
        }
    }
}

impl std::fmt::Display for FoldCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FoldCase::E7F4 => "E7->F4",
            FoldCase::E6G2 => "E6->G2",
        })
    }
}

/// A diagram automorphism of an extended Dynkin diagram, acting on b.
#[derive(Debug, Clone)]
pub struct Folding {
    pub case: FoldCase,
    pub system: RootSystem,
    pub parent: AxB,
    /// τ(X_c) = X_{perm[c]}.
    pub perm: Vec<usize>,
    /// τ on H-coordinates: column a is τ(H_a).
    pub tau_h: Matrix,
    /// τ on ambient vectors.
    pub tau_vec: Matrix,
    pub order: usize,
    pub restriction: Restriction,
    /// Parent simple roots (0-based) whose restrictions are the simple roots of a′.
    pub simple_from: Vec<usize>,
}

/// α_c(H_a) for the parent algebra, with α_0(H_a) = -m_a.
fn alpha_on_h(b: &AxB, c: usize, a: usize) -> FieldElem {
    b.shifts.as_ref().expect("diagonal")[c][a].clone()
}

pub fn build_folding(case: FoldCase) -> Result<Folding, FoldError> {
    let (tag, perm, simple_from, param, names) = match case {
        FoldCase::E7F4 => {
            let mut p = Matrix::zeros(7, 4);
            for i in 0..4 {
                p[(i, i)] = FieldElem::one();
            }
            (
                TypeTag::E7,
                vec![7, 6, 2, 5, 4, 3, 1, 0],
                vec![0, 1, 2, 3],
                p,
                vec!["x1", "x2", "x3", "x4"],
            )
        }
        FoldCase::E6G2 => (
            TypeTag::E6,
            vec![1, 5, 4, 3, 6, 0, 2],
            vec![1, 2],
            e6_fixed_param(),
            vec!["x1", "x4"],
        ),
    };
    let system = build_root_system(tag)?;
    let parent = build_axb(&system, &system.dominant(BetaKind::Long)?);
    let r = system.rank();
    let order = {
        let mut k = 1;
        let mut c = perm[0];
        while c != 0 {
            c = perm[c];
            k += 1;
        }
        k
    };
    // Row j of τ_h holds α_{π⁻¹(j)}(H_a), since α_j(τH) = α_{π⁻¹(j)}(H).
    let mut inv = vec![0; r + 1];
    for (c, &p) in perm.iter().enumerate() {
        inv[p] = c;
    }
    let mut tau_h = Matrix::zeros(r, r);
    for j in 0..r {
        for a in 0..r {
            tau_h[(j, a)] = alpha_on_h(&parent, inv[j + 1], a);
        }
    }
    // τ on covectors sends α_i to α_{π(i)}; vectors transform by the inverse transpose.
    let alpha0 = cv_neg(&system.root_covector(&parent.marks.clone().unwrap()));
    let root_of = |c: usize| if c == 0 { alpha0.clone() } else { system.simple_roots[c - 1].clone() };
    let src = Matrix::from_rows((1..=r).map(root_of).collect()).expect("rect").transpose();
    let dst = Matrix::from_rows((1..=r).map(|i| root_of(perm[i])).collect())
        .expect("rect")
        .transpose();
    let tau_cov = dst.mul(&src.inverse().expect("simple roots independent")).expect("dims");
    let tau_vec = tau_cov.inverse().expect("invertible").transpose();
    let restriction = restricted_system(
        &system,
        &tau_vec,
        &simple_from,
        if case == FoldCase::E7F4 { TypeTag::F4 } else { TypeTag::G2 },
        param,
        names.into_iter().map(String::from).collect(),
    )?;
    Ok(Folding {
        case,
        system,
        parent,
        perm,
        tau_h,
        tau_vec,
        order,
        restriction,
        simple_from,
    })
}

fn cv_neg(v: &[FieldElem]) -> Vec<FieldElem> {
    v.iter().map(|x| -x).collect()
}

impl Folding {
    pub fn apply(&self, v: &AlgVec) -> AlgVec {
        let h = self.tau_h.mul_vec(&v.h).expect("dims");
        let mut x = vec![FieldElem::zero(); v.x.len()];
        for (c, coef) in v.x.iter().enumerate() {
            x[self.perm[c]] = coef.clone();
        }
        AlgVec { h, x }
    }

    /// Orbits of τ on the X indices, each listed from its smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for c in 0..self.perm.len() {
            if seen.contains(&c) {
                continue;
            }
            let mut o = vec![c];
            seen.insert(c);
            let mut d = self.perm[c];
            while d != c {
                o.push(d);
                seen.insert(d);
                d = self.perm[d];
            }
            out.push(o);
        }
        out
    }

    fn tau_h_power(&self, k: usize) -> Matrix {
        (0..k).fold(Matrix::identity(self.tau_h.rows()), |m, _| self.tau_h.mul(&m).expect("square"))
    }

    /// [τY, τX_c] = τ[Y, X_c] for every basis vector Y of b and every X_c,
    /// plus τ^order = id on a and on the X labels.
    pub fn automorphism_check(&self) -> Certificate {
        let b = &self.parent;
        let mut cert = Certificate::new("diagram automorphism of b");
        cert.input("folding", self.case);
        cert.input("order", self.order);
        let mut failures = Vec::new();
        let mut pairs = 0;
        for y in 0..b.dim() {
            for c in 0..b.dim_u() {
                let yv = AlgVec::basis(b, y);
                let xv = AlgVec::basis(b, b.dim_a() + c);
                let lhs = b.bracket(&self.apply(&yv), &self.apply(&xv));
                let rhs = self.apply(&b.bracket(&yv, &xv));
                if lhs != rhs {
                    failures.push(format!("({}, {})", b.labels()[y], b.x_labels[c]));
                }
                pairs += 1;
            }
        }
        cert.check(
            format!("bracket on {}x{} basis pairs", b.dim(), b.dim_u()),
            failures.is_empty(),
            if failures.is_empty() { format!("{pairs} pairs") } else { failures.join(" ") },
        );
        cert.check(
            "tau^order = id on a",
            self.tau_h_power(self.order) == Matrix::identity(b.dim_a()),
            "",
        );
        let mut p = (0..self.perm.len()).collect::<Vec<_>>();
        for _ in 0..self.order {
            p = p.iter().map(|&c| self.perm[c]).collect();
        }
        cert.check("tau^order = id on u", p.iter().enumerate().all(|(i, &c)| i == c), "");
        cert.check(
            "tau permutes the roots",
            self.system
                .permutes_roots(&self.tau_vec.inverse().expect("invertible").transpose()),
            "",
        );
        cert
    }

    /// τ-average (1/order)·Σ τ^k on H-coordinates: the orthogonal projection a → a′.
    pub fn average_h(&self) -> Matrix {
        let n = self.tau_h.rows();
        let mut s = Matrix::zeros(n, n);
        for k in 0..self.order {
            let m = self.tau_h_power(k);
            for i in 0..n {
                for j in 0..n {
                    s[(i, j)] = &s[(i, j)] + &m[(i, j)];
                }
            }
        }
        s.scale(&FieldElem::frac(1, self.order as i64))
    }
}

/// Bases of b′ and b″ in parent coordinates.
#[derive(Debug, Clone)]
pub struct AdaptedBasis {
    /// Column k: X′_k as a combination of the parent X's.
    pub prime_x: Matrix,
    /// Column j: H′_j in parent H-coordinates.
    pub prime_h: Matrix,
    /// Nontrivial eigenvectors of τ on u, with eigenvalues.
    pub dprime_x: Vec<(Vec<FieldElem>, FieldElem)>,
    /// Nontrivial eigenvectors of τ on a, with eigenvalues.
    pub dprime_h: Vec<(Vec<FieldElem>, FieldElem)>,
}

/// b′ as an ax+b algebra together with ν on generators.
#[derive(Debug, Clone)]
pub struct FixedSub {
    pub b: AxB,
    pub basis: AdaptedBasis,
    /// ν(X_c) = Σ_k xmap[c][k] X′_k.
    pub xmap: Matrix,
    /// ν(H_a) = Σ_j hmap[a][j] H′_j.
    pub hmap: Matrix,
    /// Orbit of parent X indices behind each X′_k.
    pub orbit_of: Vec<Vec<usize>>,
}

fn inv_sqrt(n: usize) -> FieldElem {
    match n {
        1 => FieldElem::one(),
        2 => FieldElem::sqrt2().inv().expect("nonzero"),
        3 => FieldElem::sqrt3().inv().expect("nonzero"),
        _ => unreachable!("orbits have size 1, 2 or 3"),
    }
}

/// The nontrivial eigenvalues of τ: -1, or ω and ω².
fn nontrivial_eigenvalues(order: usize) -> Vec<FieldElem> {
    match order {
        2 => vec![FieldElem::from_int(-1)],
        3 => vec![FieldElem::omega(), FieldElem::omega().pow(2)],
        _ => unreachable!("foldings have order 2 or 3"),
    }
}

pub fn fixed_subalgebra(f: &Folding) -> Result<FixedSub, FoldError> {
    let parent = &f.parent;
    let rsys = &f.restriction.system;
    let bp = build_axb(rsys, &rsys.dominant(BetaKind::Short)?);
    let (nx, nh) = (parent.dim_u(), parent.dim_a());
    let (nxp, nhp) = (bp.dim_u(), bp.dim_a());
    let orbits = f.orbits();
    // X′_0 comes from the orbit of X_0, X′_k from the orbit of the k-th restricted simple root.
    let mut orbit_of = Vec::with_capacity(nxp);
    let reps: Vec<usize> = std::iter::once(0).chain(f.simple_from.iter().map(|s| s + 1)).collect();
    for &rep in &reps {
        orbit_of.push(orbits.iter().find(|o| o.contains(&rep)).expect("orbit").clone());
    }
    if orbit_of.len() != orbits.len() {
        return Err(FoldError::Mismatch(format!("{} orbits for {nxp} generators", orbits.len())));
    }
    // H′_j in parent H-coordinates: α_i(H′_j) is the coefficient of α′_j in α_i|.
    let mut prime_h = Matrix::zeros(nh, nhp);
    for i in 0..nh {
        let res = f.restriction.restrict(&f.system.simple_roots[i]);
        let coords = rsys
            .simple_coords(&res)
            .ok_or_else(|| FoldError::Mismatch(format!("alpha_{} does not restrict to the span", i + 1)))?;
        for j in 0..nhp {
            prime_h[(i, j)] = coords[j].clone();
        }
    }
    // Each parent X_c must have weight α′ of its X′ generator on a′.
    for (k, o) in orbit_of.iter().enumerate() {
        for &c in o {
            for j in 0..nhp {
                let v = (0..nh).fold(FieldElem::zero(), |s, a| &s + &(&alpha_on_h(parent, c, a) * &prime_h[(a, j)]));
                if v != alpha_on_h(&bp, k, j) {
                    return Err(FoldError::Mismatch(format!("weight of X{c} on H'{j}")));
                }
            }
        }
    }
    let avg = f.average_h();
    let mut hmap = Matrix::zeros(nh, nhp);
    for a in 0..nh {
        for (j, &s) in f.simple_from.iter().enumerate() {
            hmap[(a, j)] = avg[(s, a)].clone();
        }
    }
    if prime_h.mul(&hmap.transpose()).expect("dims") != avg {
        return Err(FoldError::Mismatch("projection does not factor through a′".into()));
    }
    let mut xmap = Matrix::zeros(nx, nxp);
    let mut prime_x = Matrix::zeros(nx, nxp);
    for (k, o) in orbit_of.iter().enumerate() {
        let s = inv_sqrt(o.len());
        for &c in o {
            xmap[(c, k)] = s.clone();
            prime_x[(c, k)] = s.clone();
        }
    }
    let mut dprime_x = Vec::new();
    for lam in nontrivial_eigenvalues(f.order) {
        for o in orbits.iter().filter(|o| o.len() > 1) {
            // v = Σ_k λ^k X_{π^k(c)} satisfies τv = λ⁻¹v.
            let mut v = vec![FieldElem::zero(); nx];
            for (k, &c) in o.iter().enumerate() {
                v[c] = lam.pow(k as u32);
            }
            dprime_x.push((v, lam.inv().expect("nonzero")));
        }
    }
    let mut dprime_h = Vec::new();
    for lam in nontrivial_eigenvalues(f.order) {
        let mut m = f.tau_h.clone();
        for i in 0..nh {
            m[(i, i)] = &m[(i, i)] - &lam;
        }
        for v in m.kernel() {
            dprime_h.push((v, lam.clone()));
        }
    }
    let names = |p: &str, idx: &[usize]| idx.iter().map(|i| format!("{p}'{i}")).collect::<Vec<_>>();
    let x_idx: Vec<usize> = orbit_of.iter().map(|o| o[0]).collect();
    let h_idx: Vec<usize> = f.simple_from.iter().map(|s| s + 1).collect();
    let b = AxB {
        name: format!("{} fixed", f.case),
        h_labels: names("H", &h_idx),
        x_labels: names("X", &x_idx),
        ..bp
    };
    Ok(FixedSub {
        b,
        basis: AdaptedBasis {
            prime_x,
            prime_h,
            dprime_x,
            dprime_h,
        },
        xmap,
        hmap,
        orbit_of,
    })
}

impl FixedSub {
    /// ν(p) for p over the parent algebra.
    pub fn nu(&self, p: &Element) -> Element {
        p.linear_substitute(&self.xmap, &self.hmap)
    }

    /// ν on Sym(a) in the H basis.
    pub fn nu_sym(&self, p: &Poly) -> Poly {
        p.substitute_linear(&self.hmap.to_rows())
    }

    /// The inclusion U(b′) → U(b).
    pub fn embed(&self, p: &Element) -> Element {
        p.linear_substitute(&self.basis.prime_x.transpose(), &self.basis.prime_h.transpose())
    }

    /// The b″ basis as degree-one parent elements.
    pub fn dprime_elements(&self, parent: &AxB) -> Vec<Element> {
        let mut out = Vec::new();
        for (v, _) in &self.basis.dprime_x {
            let mut e = Element::zero_in(parent);
            for (c, coef) in v.iter().enumerate() {
                e = e.add(&Element::x(parent, c).scale(coef));
            }
            out.push(e);
        }
        for (v, _) in &self.basis.dprime_h {
            let mut e = Element::zero_in(parent);
            for (a, coef) in v.iter().enumerate() {
                e = e.add(&Element::h(parent, a).scale(coef));
            }
            out.push(e);
        }
        out
    }
}

/// Certifies μ′(ν(p)) = ν(μ(p)).
pub fn symbol_compatibility(fs: &FixedSub, p: &Element) -> Certificate {
    let mut cert = Certificate::new("symbol compatibility of nu");
    let lhs = fs.nu(p).symbol();
    let rhs = fs.nu_sym(&p.symbol());
    let detail = if lhs == rhs {
        String::new()
    } else {
        format!("{} vs {}", lhs.format(&fs.b.h_labels), rhs.format(&fs.b.h_labels))
    };
    cert.check("mu'(nu(p)) = nu(mu(p))", lhs == rhs, detail);
    cert
}

/// First summand of U(b′_C)_ev = U(b′)_ev ⊕ i·U(b′)_ev in the PBW basis.
pub fn realify(p: &Element) -> Element {
    p.map_coeffs(FieldElem::re)
}

/// The scalar c with ν(Ω) = c·Ω_{b′}, if one exists.
pub fn laplacian_multiple(f: &Folding, fs: &FixedSub) -> Option<FieldElem> {
    let image = fs.nu(&laplacian(&f.parent));
    let target = laplacian(&fs.b);
    let (m, c0) = target.terms().next()?;
    let c = &image.coeff(m) / c0;
    (image == target.scale(&c)).then_some(c)
}

/// Every difference of two X's in one orbit lies in b″: its τ-average vanishes,
/// and it is a combination of the eigenvectors for nontrivial eigenvalues.
pub fn differences_lemma(f: &Folding, fs: &FixedSub) -> Certificate {
    let nx = f.parent.dim_u();
    let mut cert = Certificate::new("orbit differences lie in b''");
    cert.input("folding", f.case);
    let cols: Vec<Vec<FieldElem>> = fs.basis.dprime_x.iter().map(|(v, _)| v.clone()).collect();
    let a = Matrix::from_rows(cols).expect("rect").transpose();
    for (v, lam) in &fs.basis.dprime_x {
        let av = AlgVec {
            h: vec![FieldElem::zero(); f.parent.dim_a()],
            x: v.clone(),
        };
        let tv = f.apply(&av);
        cert.check(
            format!("eigenvector {}", fmt_vec(v)),
            tv == av.scale(lam) && !lam.is_one(),
            format!("eigenvalue {lam}"),
        );
    }
    for o in f.orbits().iter().filter(|o| o.len() > 1) {
        for i in 0..o.len() {
            for j in i + 1..o.len() {
                let mut d = vec![FieldElem::zero(); nx];
                d[o[i]] = FieldElem::one();
                d[o[j]] = FieldElem::from_int(-1);
                let mut avg = vec![FieldElem::zero(); nx];
                let mut cur = d.clone();
                for _ in 0..f.order {
                    for c in 0..nx {
                        avg[c] += &cur[c];
                    }
                    let mut next = vec![FieldElem::zero(); nx];
                    for c in 0..nx {
                        next[f.perm[c]] = cur[c].clone();
                    }
                    cur = next;
                }
                let in_span = !matches!(solve_linear(&a, &d), Solution::Empty);
                cert.check(
                    format!("X{}-X{}", o[i], o[j]),
                    avg.iter().all(FieldElem::is_zero) && in_span,
                    "",
                );
            }
        }
    }
    cert
}

fn fmt_vec(v: &[FieldElem]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// ν is not a Lie homomorphism: for H with α_0(H) = 0 and α_p(H) = 1, where
/// X_p = τ(X_0), the brackets [H, X_0] = 0 and [H, X_p] = X_p project to
/// different things than [ν(H), ν(X_0)] = [ν(H), ν(X_p)].
pub fn remark_counterexample(f: &Folding, fs: &FixedSub) -> Certificate {
    let b = &f.parent;
    let marks = b.marks.as_ref().expect("marks");
    let p = f.perm[0];
    let mut cert = Certificate::new("nu is not a homomorphism");
    cert.input("folding", f.case);
    // H-coordinates t with t_p = 1 and α_0 = -Σ m_a t_a = 0, using one other coordinate.
    let q = (0..marks.len())
        .rev()
        .find(|&a| a + 1 != p && marks[a] != 0)
        .expect("another nonzero mark");
    let mut t = vec![FieldElem::zero(); b.dim_a()];
    t[p - 1] = FieldElem::one();
    t[q] = FieldElem::frac(-marks[p - 1], marks[q]);
    let h = t
        .iter()
        .enumerate()
        .fold(Element::zero_in(b), |s, (a, c)| s.add(&Element::h(b, a).scale(c)));
    let a0 = (0..b.dim_a()).fold(FieldElem::zero(), |s, a| &s + &(&alpha_on_h(b, 0, a) * &t[a]));
    cert.check("alpha_0(H) = 0", a0.is_zero(), "");
    cert.note("H", h.to_text(b));
    let bracket = |x: &Element, y: &Element| crate::envelope::commutator(&fs.b, x, y);
    let nh = fs.nu(&h);
    let lhs0 = fs.nu(&crate::envelope::commutator(b, &h, &Element::x(b, 0)));
    let lhsp = fs.nu(&crate::envelope::commutator(b, &h, &Element::x(b, p)));
    let rhs0 = bracket(&nh, &fs.nu(&Element::x(b, 0)));
    let rhsp = bracket(&nh, &fs.nu(&Element::x(b, p)));
    cert.check("nu(X0) = nu(X_p)", fs.nu(&Element::x(b, 0)) == fs.nu(&Element::x(b, p)), "");
    cert.check("nu([H,X0]) = 0", lhs0.is_zero(), lhs0.to_text(&fs.b));
    cert.check("nu([H,X_p]) = nu(X_p)", lhsp == fs.nu(&Element::x(b, p)), lhsp.to_text(&fs.b));
    cert.check(
        "[nu(H), nu(X0)] differs from nu([H,X0])",
        rhs0 != lhs0,
        rhs0.to_text(&fs.b),
    );
    cert.check(
        "[nu(H), nu(X_p)] differs from nu([H,X_p])",
        rhsp != lhsp,
        rhsp.to_text(&fs.b),
    );
    cert
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Rank check of U_d(b) = U_d(b′) ⊕ (⟨U(b)b″⟩ ∩ U_d(b)), the second space
/// spanned by w·z with w a PBW monomial of degree < d and z in the b″ basis.
/// The sum always spans; it fails to be direct from d = 2 on, because
/// [a″, u″] meets u′ (see [`direct_sum_witness`]). The scalar
/// `intersection_dim` records the defect.
pub fn direct_sum_rank_check(f: &Folding, fs: &FixedSub, d: usize) -> Certificate {
    let b = &f.parent;
    let (nx, nh) = (b.dim_u(), b.dim_a());
    let mut cert = Certificate::new("U(b) = U(b') + <U(b)b''> at fixed degree");
    cert.input("folding", f.case);
    cert.input("degree", d);
    let dim_b = binom(b.dim() + d, d);
    let dim_bp = binom(fs.b.dim() + d, d);
    let zs = fs.dprime_elements(b);
    let mut products = Vec::new();
    if d > 0 {
        for e in exponents_upto(nx + nh, d - 1) {
            let w = Element::from_monomial(Monomial::new(e[..nx].to_vec(), e[nx..].to_vec()), FieldElem::one());
            for z in &zs {
                products.push(multiply(b, &w, z));
            }
        }
    }
    let sub: Vec<Element> = exponents_upto(fs.b.dim(), d)
        .into_iter()
        .map(|e| {
            let k = fs.b.dim_u();
            fs.embed(&Element::from_monomial(Monomial::new(e[..k].to_vec(), e[k..].to_vec()), FieldElem::one()))
        })
        .collect();
    let r_ideal = element_rank(&products);
    let r_sub = element_rank(&sub);
    let mut all = products;
    all.extend(sub);
    let r_all = element_rank(&all);
    cert.check("U_d(b') embeds", r_sub == dim_bp, format!("{r_sub} of {dim_bp}"));
    cert.check("sum spans U_d(b)", r_all == dim_b, format!("{r_all} of {dim_b}"));
    cert.scalar(
        "intersection_dim",
        FieldElem::from_int((r_ideal + dim_bp) as i64 - dim_b as i64),
    );
    cert.check(
        "sum is direct",
        r_ideal + dim_bp == dim_b,
        format!("{r_ideal} + {dim_bp} vs {dim_b}"),
    );
    cert
}

/// An element of U(b′) ∩ ⟨U(b)b″⟩: for H″ ∈ a″ and X″ ∈ u″ both H″X″ and
/// X″H″ lie in U(b)b″, and their difference [H″, X″] lies in u′.
pub fn direct_sum_witness(f: &Folding, fs: &FixedSub) -> Certificate {
    let b = &f.parent;
    let mut cert = Certificate::new("nonzero element of U(b') in <U(b)b''>");
    cert.input("folding", f.case);
    let zs = fs.dprime_elements(b);
    let nx2 = fs.basis.dprime_x.len();
    let found = zs[nx2..].iter().find_map(|h2| {
        zs[..nx2].iter().find_map(|x2| {
            let w = multiply(b, h2, x2).sub(&multiply(b, x2, h2));
            (!w.is_zero()).then_some(w)
        })
    });
    match found {
        Some(w) => {
            let image = fs.nu(&w);
            cert.witnesses.push(w.to_witness("[H'',X'']", b));
            cert.check("lies in U(b')", fs.embed(&image) == w, image.to_text(&fs.b));
            cert.check("nonzero", !image.is_zero(), "");
        }
        None => {
            cert.check("nonzero bracket [a'', u'']", false, "all brackets vanish");
        }
    }
    cert
}

/// The restricted invariants expected from the folding, as polynomials in the
/// parameter coordinates of a′.
pub fn restricted_invariants(f: &Folding) -> Vec<(String, Poly, Poly)> {
    let param = &f.restriction.param;
    match f.case {
        FoldCase::E7F4 => {
            let set = e7_invariants();
            [(0, 2), (1, 6), (2, 8), (4, 12)]
                .into_iter()
                .map(|(i, k)| {
                    let got = restrict_to_fixed(&set.gens[i].to_poly(), param);
                    (format!("v{k}"), got, f4_restricted_expected(k))
                })
                .collect()
        }
        FoldCase::E6G2 => {
            let set = e6_invariants();
            [(0, 2), (2, 6)]
                .into_iter()
                .map(|(i, k)| {
                    let got = restrict_to_fixed(&set.gens[i].to_poly(), param);
                    (format!("v{k}"), got, g2_restricted_expected(k))
                })
                .collect()
        }
    }
}

fn parent_generators(f: &Folding) -> GeneratorSet {
    match f.case {
        FoldCase::E7F4 => e7_invariants(),
        FoldCase::E6G2 => e6_invariants(),
    }
}

/// The whole pipeline for one folding, as a single certificate.
pub fn fold_report(case: FoldCase) -> Result<Certificate, FoldError> {
    let f = build_folding(case)?;
    let fs = fixed_subalgebra(&f)?;
    let mut cert = Certificate::new("folding pipeline");
    cert.input("folding", case);
    let merge = |cert: &mut Certificate, sub: Certificate, prefix: &str| {
        for c in sub.checks {
            cert.check(format!("{prefix}: {}", c.name), c.passed, c.detail);
        }
        for (k, v) in sub.scalars {
            cert.scalar(format!("{prefix}: {k}"), v);
        }
    };
    merge(&mut cert, f.automorphism_check(), "automorphism");
    let rs = &f.restriction.system;
    cert.note("restricted_type", rs.tag.to_string());
    cert.note(
        "restricted_cartan",
        rs.cartan
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("; "),
    );
    cert.note("b'_marks", format!("{:?}", fs.b.marks.clone().unwrap_or_default()));
    cert.note("b'_generators", fs.b.x_labels.join(" "));
    match laplacian_multiple(&f, &fs) {
        Some(c) => {
            cert.scalar("c", c.clone());
            cert.check("nu(Omega) = c Omega'", true, format!("c = {c}"));
        }
        None => {
            cert.check("nu(Omega) = c Omega'", false, "no single scalar");
        }
    }
    let om = laplacian(&f.parent);
    let nu_u1 = fs.nu_sym(&om.symbol());
    let mut expect = Element::from_sym(fs.b.dim_u(), &nu_u1);
    for k in 0..fs.b.dim_u() {
        expect = expect.add(&multiply(&fs.b, &Element::x(&fs.b, k), &Element::x(&fs.b, k)));
    }
    cert.check("nu(Omega) = nu(u1) + sum X'^2", fs.nu(&om) == expect, "");
    merge(&mut cert, symbol_compatibility(&fs, &om), "symbol");
    for (name, got, want) in restricted_invariants(&f) {
        cert.check(format!("restricted {name}"), got == want, "");
    }
    // ν on Sym(a) agrees with restriction of functions under a ≅ a*.
    let parent_set = parent_generators(&f);
    for (i, g) in parent_set.gens.iter().enumerate().take(2) {
        let lhs = fs.nu_sym(&to_h_basis(&f.parent, &g.to_poly()));
        let rhs = to_h_basis(&fs.b, &restrict_to_fixed(&g.to_poly(), &f.restriction.param));
        cert.check(format!("nu_sym(gen {}) = restriction", i + 1), lhs == rhs, "");
    }
    let idx: Vec<usize> = match case {
        FoldCase::E7F4 => vec![0, 1, 2, 4],
        FoldCase::E6G2 => vec![0, 2],
    };
    let restricted = parent_set
        .restrict(&f.restriction.param, rs.tag, rs.coord_names.clone())
        .select(&idx, rs.tag);
    match check_fundamental(&restricted, rs) {
        Ok(c) => merge(&mut cert, c, "fundamental"),
        Err(e) => {
            cert.check("fundamental", false, e.to_string());
        }
    }
    match case {
        FoldCase::E7F4 => merge(&mut cert, remark_counterexample(&f, &fs), "remark"),
        FoldCase::E6G2 => {
            merge(&mut cert, differences_lemma(&f, &fs), "differences");
            merge(&mut cert, non_proportionality_check(), "non-proportionality");
        }
    }
    let ds = direct_sum_rank_check(&f, &fs, 2);
    cert.note(
        "direct_sum_degree_2",
        format!("intersection dimension {}", ds.scalars["intersection_dim"]),
    );
    let w = direct_sum_witness(&f, &fs);
    cert.note("direct_sum_witness", w.checks.first().map(|c| c.detail.clone()).unwrap_or_default());
    Ok(cert)
}
