//! Conserved quantities: even elements of U(b) with prescribed symbol that
//! commute with the Laplacian.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::axb::{laplacian_parts, AxB};
use crate::cert::Certificate;
use crate::envelope::{commutator, laplacian, multiply, Element, Monomial, Poly};
use crate::invariants::{express_in_generators, InvariantError};
use crate::scalar::{solve_sparse, FieldElem, Matrix, Solution, SparseMatrix};

pub const DEFAULT_CAP: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TodaError {
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("ansatz dimension {ansatz} exceeds cap {cap}")]
    DegreeTooLarge { ansatz: u128, cap: usize },
    #[error("prescribed symbol must be homogeneous of degree >= 2 in the H basis")]
    BadSymbol,
    #[error(transparent)]
    NotExpressible(#[from] InvariantError),
}

/// How the linear system is assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Level-by-level in the X-degree, with the full symbol fixed to u; falls
    /// back to `Full` when that is infeasible.
    Block,
    /// One system over the whole ansatz, columns [m, Ω], lower symbol terms free.
    Full,
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub strategy: Strategy,
    pub cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            strategy: Strategy::Block,
            cap: DEFAULT_CAP,
        }
    }
}

/// The even monomials X^{2I} H^J with 2|I| + |J| ≤ d, in canonical order.
#[derive(Debug, Clone)]
pub struct AnsatzSpace {
    pub degree: usize,
    pub basis: Vec<Monomial>,
}

fn binom(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// All exponent vectors in `n` variables of total degree ≤ `max`.
pub fn exponents_upto(n: usize, max: usize) -> Vec<Vec<u16>> {
    fn rec(n: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k as u16);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max, &mut Vec::with_capacity(n), &mut out);
    out
}

impl AnsatzSpace {
    /// Number of ansatz monomials, without enumerating them.
    pub fn count(nx: usize, nh: usize, d: usize) -> u128 {
        (0..=d / 2)
            .map(|k| {
                let xs = binom((k + nx - 1) as u128, (nx - 1) as u128);
                let hs = binom((d - 2 * k + nh) as u128, nh as u128);
                xs * hs
            })
            .sum()
    }

    pub fn new(b: &AxB, d: usize, cap: usize) -> Result<Self, TodaError> {
        let n = Self::count(b.dim_u(), b.dim_a(), d);
        if n > cap as u128 {
            return Err(TodaError::DegreeTooLarge { ansatz: n, cap });
        }
        let mut basis = Vec::new();
        for i in exponents_upto(b.dim_u(), d / 2) {
            let xdeg: usize = i.iter().map(|&e| 2 * e as usize).sum();
            for j in exponents_upto(b.dim_a(), d - xdeg) {
                basis.push(Monomial::new(i.iter().map(|e| 2 * e).collect(), j));
            }
        }
        basis.sort();
        Ok(AnsatzSpace { degree: d, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Result of [`solve_conserved`].
#[derive(Debug, Clone)]
pub struct Solved {
    pub element: Element,
    /// Dimension of the solution space with the whole symbol set to zero.
    pub kernel_dim: usize,
    pub ansatz_dim: usize,
    pub strategy: Strategy,
    /// True when the symbol equals u exactly (no lower-degree symbol terms).
    pub full_symbol: bool,
}

/// Finds Γ ∈ U(b)_ev with [Γ, Ω] = 0 whose symbol has top-degree part `u`
/// (a homogeneous polynomial in the H basis). Free parameters, which can only
/// sit in the lower-degree symbol terms, are set to zero.
pub fn solve_conserved(b: &AxB, u: &Poly, opts: SolveOptions) -> Result<Solved, TodaError> {
    let d = u.degree();
    if u.nvars() != b.dim_a() || !u.is_homogeneous() || d < 2 || u.is_zero() {
        return Err(TodaError::BadSymbol);
    }
    let n = AnsatzSpace::count(b.dim_u(), b.dim_a(), d);
    if n > opts.cap as u128 {
        return Err(TodaError::DegreeTooLarge { ansatz: n, cap: opts.cap });
    }
    let block_ok = b.is_diagonal() && b.gram_u == Matrix::identity(b.dim_u());
    if opts.strategy == Strategy::Block && block_ok {
        if let Some(s) = solve_block(b, u)? {
            return Ok(Solved {
                ansatz_dim: n as usize,
                ..s
            });
        }
    }
    solve_full(b, u, opts.cap)
}

fn shift_vector(b: &AxB, xexp: &[u16]) -> Vec<FieldElem> {
    let s = b.shifts.as_ref().expect("diagonal algebra");
    let mut out = vec![FieldElem::zero(); b.dim_a()];
    for (c, &k) in xexp.iter().enumerate() {
        if k > 0 {
            let kk = FieldElem::from_int(k as i64);
            for a in 0..b.dim_a() {
                out[a] += &(&s[c][a] * &kk);
            }
        }
    }
    out
}

/// Solves p·l = r for p of degree ≤ m; returns (p, kernel dimension).
fn divide_exact(l: &Poly, r: &Poly, m: usize) -> Option<(Poly, usize)> {
    let nh = l.nvars();
    let cols = exponents_upto(nh, m);
    let mut rows: BTreeMap<Vec<u16>, Vec<(usize, FieldElem)>> = BTreeMap::new();
    for (j, e) in cols.iter().enumerate() {
        let prod = Poly::monomial(e.clone(), FieldElem::one()).mul(l);
        for (me, c) in prod.terms() {
            rows.entry(me.clone()).or_default().push((j, c.clone()));
        }
    }
    for (me, _) in r.terms() {
        rows.entry(me.clone()).or_default();
    }
    let mut a = SparseMatrix::new(cols.len());
    let mut rhs = Vec::with_capacity(rows.len());
    for (me, row) in rows {
        a.push_row(row);
        rhs.push(r.coeff(&me));
    }
    let sol = solve_sparse(&a, &rhs).ok()?;
    let kdim = sol.kernel_dim()?;
    let x = sol.particular()?.to_vec();
    Some((Poly::from_terms(nh, cols.into_iter().zip(x)), kdim))
}

fn solve_block(b: &AxB, u: &Poly) -> Result<Option<Solved>, TodaError> {
    let d = u.degree();
    let nx = b.dim_u();
    let (q, _) = laplacian_parts(b).map_err(|e| TodaError::NoSolution(e.to_string()))?;
    let double_shifts: Vec<Vec<FieldElem>> = (0..nx)
        .map(|c| {
            let mut e = vec![0u16; nx];
            e[c] = 2;
            shift_vector(b, &e)
        })
        .collect();
    // p[I] is the coefficient polynomial of X^{2I}.
    let mut p: BTreeMap<Vec<u16>, Poly> = BTreeMap::new();
    p.insert(vec![0; nx], u.clone());
    let mut kernel_dim = 0;
    let mut prev: Vec<Vec<u16>> = vec![vec![0; nx]];
    let mut level = 1;
    while !prev.is_empty() {
        let mut targets: BTreeMap<Vec<u16>, Poly> = BTreeMap::new();
        for i in &prev {
            let pi = &p[i];
            for c in 0..nx {
                let delta = pi.shift(&double_shifts[c]).sub(pi);
                let mut j = i.clone();
                j[c] += 1;
                let t = targets.entry(j).or_insert_with(|| Poly::zero(b.dim_a()));
                *t = t.sub(&delta);
            }
        }
        let mut next = Vec::new();
        for (j, r) in targets {
            if r.is_zero() {
                continue;
            }
            if 2 * level > d {
                return Ok(None);
            }
            let twice: Vec<u16> = j.iter().map(|e| 2 * e).collect();
            let l = q.sub(&q.shift(&shift_vector(b, &twice)));
            match divide_exact(&l, &r, d - 2 * level) {
                Some((pj, kd)) => {
                    kernel_dim += kd;
                    p.insert(j.clone(), pj);
                    next.push(j);
                }
                None => return Ok(None),
            }
        }
        prev = next;
        level += 1;
    }
    let mut el = Element::zero_in(b);
    for (i, pi) in &p {
        let twice: Vec<u16> = i.iter().map(|e| 2 * e).collect();
        el = el.add(&Element::from_parts(&Poly::monomial(twice, FieldElem::one()), pi));
    }
    // Injectivity of every block also covers the levels never reached.
    let kernel_dim = kernel_dim + block_kernel_tail(b, u.degree(), level);
    Ok(Some(Solved {
        element: el,
        kernel_dim,
        ansatz_dim: 0,
        strategy: Strategy::Block,
        full_symbol: true,
    }))
}

// Blocks at levels ≥ `from` that the recursion skipped because their right-hand
// sides vanished: they are multiplication by L_I, whose kernel is trivial unless
// the total shift of X^{2I} is zero.
fn block_kernel_tail(b: &AxB, d: usize, from: usize) -> usize {
    let mut k = 0;
    for level in from..=d / 2 {
        for i in exponents_upto(b.dim_u(), level).into_iter().filter(|i| {
            i.iter().map(|&e| e as usize).sum::<usize>() == level
        }) {
            let twice: Vec<u16> = i.iter().map(|e| 2 * e).collect();
            if shift_vector(b, &twice).iter().all(FieldElem::is_zero) {
                k += binom((d - 2 * level + b.dim_a()) as u128, b.dim_a() as u128) as usize;
            }
        }
    }
    k
}

fn solve_full(b: &AxB, u: &Poly, cap: usize) -> Result<Solved, TodaError> {
    let d = u.degree();
    let ansatz = AnsatzSpace::new(b, d, cap)?;
    let omega = laplacian(b);
    // Unknowns: every ansatz monomial except the top symbol ones; lower symbol
    // monomials go last so the tie-break zeroes them first.
    let (mut cols, mut sym_cols): (Vec<Monomial>, Vec<Monomial>) = (Vec::new(), Vec::new());
    for m in &ansatz.basis {
        if m.x_degree() == 0 {
            if m.h_degree() < d {
                sym_cols.push(m.clone());
            }
        } else {
            cols.push(m.clone());
        }
    }
    let n_main = cols.len();
    cols.extend(sym_cols);
    let images: Vec<Element> = cols
        .par_iter()
        .map(|m| commutator(b, &Element::from_monomial(m.clone(), FieldElem::one()), &omega))
        .collect();
    let target = commutator(b, &Element::from_sym(b.dim_u(), u), &omega).scale(&FieldElem::from_int(-1));
    let mut rows: BTreeMap<Monomial, Vec<(usize, FieldElem)>> = BTreeMap::new();
    for (j, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            rows.entry(m.clone()).or_default().push((j, c.clone()));
        }
    }
    for (m, _) in target.terms() {
        rows.entry(m.clone()).or_default();
    }
    let mut a = SparseMatrix::new(cols.len());
    let mut rhs = Vec::with_capacity(rows.len());
    for (m, row) in rows {
        a.push_row(row);
        rhs.push(target.coeff(&m));
    }
    let sol = solve_sparse(&a, &rhs).map_err(|e| TodaError::NoSolution(e.to_string()))?;
    let (x, kernel) = match sol {
        Solution::Empty => return Err(TodaError::NoSolution("inconsistent system".into())),
        Solution::Unique(x) => (x, Vec::new()),
        Solution::Affine { particular, kernel } => (particular, kernel),
    };
    let mut el = Element::from_sym(b.dim_u(), u);
    for (m, c) in cols.iter().zip(&x) {
        el.add_term(m.clone(), c.clone());
    }
    // Kernel vectors with zero symbol part.
    let sym_part: Vec<Vec<FieldElem>> = kernel.iter().map(|v| v[n_main..].to_vec()).collect();
    let sym_rank = if sym_part.is_empty() || n_main == cols.len() {
        0
    } else {
        Matrix::from_rows(sym_part).expect("rectangular").rank()
    };
    let full_symbol = x[n_main..].iter().all(FieldElem::is_zero);
    Ok(Solved {
        element: el,
        kernel_dim: kernel.len() - sym_rank,
        ansatz_dim: ansatz.dim(),
        strategy: Strategy::Full,
        full_symbol,
    })
}

/// Basis of {Γ ∈ U_d(b)_ev : [Γ, Ω] = 0}.
pub fn centralizer_even(b: &AxB, omega: &Element, d: usize, cap: usize) -> Result<Vec<Element>, TodaError> {
    let ansatz = AnsatzSpace::new(b, d, cap)?;
    let images: Vec<Element> = ansatz
        .basis
        .par_iter()
        .map(|m| commutator(b, &Element::from_monomial(m.clone(), FieldElem::one()), omega))
        .collect();
    let mut rows: BTreeMap<Monomial, Vec<(usize, FieldElem)>> = BTreeMap::new();
    for (j, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            rows.entry(m.clone()).or_default().push((j, c.clone()));
        }
    }
    let mut a = SparseMatrix::new(ansatz.dim());
    for (_, row) in rows {
        a.push_row(row);
    }
    let zeros = vec![FieldElem::zero(); a.rows()];
    let kernel = match solve_sparse(&a, &zeros).map_err(|e| TodaError::NoSolution(e.to_string()))? {
        Solution::Affine { kernel, .. } => kernel,
        _ => Vec::new(),
    };
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut e = Element::zero_in(b);
            for (m, c) in ansatz.basis.iter().zip(v) {
                e.add_term(m.clone(), c);
            }
            e
        })
        .collect())
}

/// Products Π Ω_i^{k_i} of weighted degree ≤ d, for comparing with a centralizer.
pub fn family_products(b: &AxB, family: &[Element], d: usize) -> Vec<Element> {
    let degs: Vec<usize> = family.iter().map(Element::degree).collect();
    let mut out = Vec::new();
    fn rec(
        b: &AxB,
        family: &[Element],
        degs: &[usize],
        i: usize,
        left: usize,
        cur: Element,
        out: &mut Vec<Element>,
    ) {
        if i == family.len() {
            out.push(cur);
            return;
        }
        let mut acc = cur;
        let mut used = 0;
        loop {
            rec(b, family, degs, i + 1, left - used, acc.clone(), out);
            if used + degs[i] > left {
                break;
            }
            used += degs[i];
            acc = multiply(b, &acc, &family[i]);
        }
    }
    rec(b, family, &degs, 0, d, Element::one_in(b), &mut out);
    out
}

/// Rank of a list of elements, by their coefficient vectors.
pub fn element_rank(elements: &[Element]) -> usize {
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for e in elements {
        for (m, _) in e.terms() {
            let n = index.len();
            index.entry(m.clone()).or_insert(n);
        }
    }
    let mut a = SparseMatrix::new(index.len());
    for e in elements {
        let mut row: Vec<(usize, FieldElem)> = e.terms().map(|(m, c)| (index[m], c.clone())).collect();
        row.sort_by_key(|(j, _)| *j);
        a.push_row(row);
    }
    a.rank()
}

/// Pairwise commutators of a family; the first element is expected to be Ω.
pub fn verify_family(b: &AxB, family: &[(String, Element)]) -> Certificate {
    let mut cert = Certificate::new("pairwise commutativity");
    cert.input("algebra", &b.name);
    let bound = b.marks.as_ref().map(|m| 2 + 2 * m.iter().sum::<i64>() as usize);
    for (name, e) in family {
        cert.witnesses.push(e.to_witness(name, b));
        cert.check(format!("{name} even"), e.is_even(), format!("degree {}", e.degree()));
    }
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let (ni, ei) = &family[i];
            let (nj, ej) = &family[j];
            let c = commutator(b, ei, ej);
            cert.residuals.push(c.to_witness(format!("[{ni},{nj}]"), b));
            cert.check(format!("symbol [{ni},{nj}] = 0"), c.symbol().is_zero(), "");
            let deg = ei.degree() + ej.degree() - 1;
            if let Some(bound) = bound {
                let key = format!("degree_bound [{ni},{nj}]");
                if deg < bound {
                    cert.note(key, format!("{deg} < {bound}: vanishing also follows from uniqueness"));
                } else {
                    cert.note(key, format!("{deg} >= {bound}: vanishing certified by computation only"));
                }
            }
        }
    }
    cert
}

/// Re-expresses a solved family in new generators: u′ = f(u_1, …) gives
/// Ω′ = f(Ω_1, …).
pub fn change_generators(
    b: &AxB,
    solved: &[(Poly, Element)],
    new_gens: &[Poly],
) -> Result<Vec<(Poly, Element)>, TodaError> {
    let symbols: Vec<Poly> = solved.iter().map(|(u, _)| u.clone()).collect();
    let mut out = Vec::new();
    for g in new_gens {
        let f = express_in_generators(g, &symbols)?;
        let mut total = Element::zero_in(b);
        for (e, c) in f.terms() {
            let mut term = Element::scalar_in(b, c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = multiply(b, &term, &solved[i].1);
                }
            }
            total = total.add(&term);
        }
        out.push((g.clone(), total));
    }
    Ok(out)
}

/// Certificate for one solved element: evenness, top symbol, and [Γ, Ω] = 0.
pub fn solve_certificate(b: &AxB, u: &Poly, name: &str, s: &Solved) -> Certificate {
    let omega = laplacian(b);
    let mut cert = Certificate::new("conserved quantity with prescribed top symbol");
    cert.input("algebra", &b.name);
    cert.input("degree", u.degree());
    cert.input("strategy", format!("{:?}", s.strategy));
    cert.note(
        "tie_break",
        "free parameters lie in lower-degree symbol terms and are set to zero",
    );
    cert.note("full_symbol", s.full_symbol.to_string());
    cert.witnesses.push(s.element.to_witness(name, b));
    cert.residuals.push(commutator(b, &s.element, &omega).to_witness(format!("[{name},Omega]"), b));
    cert.kernel_dim = Some(s.kernel_dim);
    cert.check("even", s.element.is_even(), "");
    let top = s.element.symbol().homogeneous_part(u.degree());
    cert.check("top symbol", top == *u, "degree-d part of the symbol equals u");
    cert.check("degree", s.element.degree() == u.degree(), s.element.degree().to_string());
    if let Some(m) = &b.marks {
        let bound = 2 + 2 * m.iter().sum::<i64>() as usize;
        if u.degree() < bound {
            cert.check("uniqueness kernel", s.kernel_dim == 0, format!("{} < {bound}", u.degree()));
        }
    }
    cert
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axb::{build_axb, to_h_basis};
    use crate::invariants::generator_set;
    use crate::rootsys::{build_root_system, BetaKind, TypeTag};

    fn setup(tag: TypeTag, kind: BetaKind) -> (AxB, Vec<Poly>) {
        let s = build_root_system(tag).unwrap();
        let b = build_axb(&s, &s.dominant(kind).unwrap());
        let gens = generator_set(&s).polys().iter().map(|p| to_h_basis(&b, p)).collect();
        (b, gens)
    }

    #[test]
    fn ansatz_count_matches_enumeration() {
        let (b, _) = setup(TypeTag::G2, BetaKind::Short);
        for d in 0..7 {
            let a = AnsatzSpace::new(&b, d, DEFAULT_CAP).unwrap();
            assert_eq!(a.dim() as u128, AnsatzSpace::count(3, 2, d));
            assert!(a.basis.iter().all(Monomial::is_even));
        }
        assert_eq!(AnsatzSpace::count(3, 2, 6), 119);
    }

    #[test]
    fn a1_gives_laplacian() {
        let (b, gens) = setup(TypeTag::A(1), BetaKind::Long);
        let s = solve_conserved(&b, &gens[0], SolveOptions::default()).unwrap();
        assert_eq!(s.element, laplacian(&b));
        assert_eq!(s.kernel_dim, 0);
    }

    #[test]
    fn a2_cubic_block_and_full_agree() {
        let (b, gens) = setup(TypeTag::A(2), BetaKind::Long);
        let blk = solve_conserved(&b, &gens[1], SolveOptions::default()).unwrap();
        let full = solve_conserved(
            &b,
            &gens[1],
            SolveOptions {
                strategy: Strategy::Full,
                cap: DEFAULT_CAP,
            },
        )
        .unwrap();
        assert_eq!(blk.strategy, Strategy::Block);
        assert_eq!(blk.element, full.element);
        assert_eq!(full.kernel_dim, 0);
        let cert = solve_certificate(&b, &gens[1], "Omega_2", &blk);
        assert!(cert.passed(), "{:?}", cert.first_failure());
    }

    #[test]
    fn cap_is_enforced() {
        let (b, gens) = setup(TypeTag::A(2), BetaKind::Long);
        let err = solve_conserved(
            &b,
            &gens[1],
            SolveOptions {
                strategy: Strategy::Block,
                cap: 10,
            },
        )
        .unwrap_err();
        assert!(matches!(err, TodaError::DegreeTooLarge { .. }));
    }

    #[test]
    fn centralizer_a1() {
        let (b, _) = setup(TypeTag::A(1), BetaKind::Long);
        let om = laplacian(&b);
        assert_eq!(centralizer_even(&b, &om, 0, DEFAULT_CAP).unwrap().len(), 1);
        let k = centralizer_even(&b, &om, 3, DEFAULT_CAP).unwrap();
        assert_eq!(k.len(), 2);
        let prods = family_products(&b, &[om], 3);
        assert_eq!(prods.len(), 2);
        let mut all = k.clone();
        all.extend(prods);
        assert_eq!(element_rank(&all), 2);
    }

    #[test]
    fn change_of_generators_scales() {
        let (b, gens) = setup(TypeTag::A(2), BetaKind::Long);
        let om = laplacian(&b);
        let s = solve_conserved(&b, &gens[1], SolveOptions::default()).unwrap();
        let solved = vec![(om.symbol(), om.clone()), (gens[1].clone(), s.element.clone())];
        let three = FieldElem::from_int(3);
        let out = change_generators(&b, &solved, &[om.symbol().scale(&three)]).unwrap();
        assert_eq!(out[0].1, om.scale(&three));
        let same = change_generators(&b, &solved, &[gens[1].clone()]).unwrap();
        assert_eq!(same[0].1, s.element);
    }
}
