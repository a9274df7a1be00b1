use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::poly::{binomial, Poly};
use super::{EnvelopeError, Monomial};
use crate::axb::AxB;
use crate::cert::{Term, Witness};
use crate::scalar::{FieldElem, Matrix};

/// An element of U(b) in PBW normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    nx: usize,
    nh: usize,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl Element {
    pub fn zero(nx: usize, nh: usize) -> Self {
        Element {
            nx,
            nh,
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_in(b: &AxB) -> Self {
        Self::zero(b.dim_u(), b.dim_a())
    }

    pub fn scalar_in(b: &AxB, c: FieldElem) -> Self {
        let mut e = Self::zero_in(b);
        e.add_term(Monomial::one(b.dim_u(), b.dim_a()), c);
        e
    }

    pub fn one_in(b: &AxB) -> Self {
        Self::scalar_in(b, FieldElem::one())
    }

    pub fn x(b: &AxB, c: usize) -> Self {
        let mut m = Monomial::one(b.dim_u(), b.dim_a());
        m.x[c] = 1;
        Self::from_monomial(m, FieldElem::one())
    }

    pub fn h(b: &AxB, a: usize) -> Self {
        let mut m = Monomial::one(b.dim_u(), b.dim_a());
        m.h[a] = 1;
        Self::from_monomial(m, FieldElem::one())
    }

    pub fn from_monomial(m: Monomial, c: FieldElem) -> Self {
        let mut e = Self::zero(m.x.len(), m.h.len());
        e.add_term(m, c);
        e
    }

    /// The element x(X)·h(H) for commutative polynomials in the u and a bases.
    pub fn from_parts(xpart: &Poly, hpart: &Poly) -> Self {
        let (nx, nh) = (xpart.nvars(), hpart.nvars());
        let mut e = Self::zero(nx, nh);
        for (ex, cx) in xpart.terms() {
            for (eh, ch) in hpart.terms() {
                e.add_term(Monomial::new(ex.clone(), eh.clone()), cx * ch);
            }
        }
        e
    }

    /// Embeds a polynomial in the H basis (an element of Sym(a) = U(a)).
    pub fn from_sym(nx: usize, p: &Poly) -> Self {
        Self::from_parts(&Poly::one(nx), p)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn nh(&self) -> usize {
        self.nh
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElem) {
        debug_assert_eq!((m.x.len(), m.h.len()), (self.nx, self.nh));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Every monomial has even X exponents.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(Monomial::is_even)
    }

    pub fn add(&self, o: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, s: &FieldElem) -> Element {
        self.map_coeffs(|c| c * s)
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElem) -> FieldElem) -> Element {
        let mut out = Element::zero(self.nx, self.nh);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Terms of degree at most `d`.
    pub fn truncate(&self, d: usize) -> Element {
        let mut out = Element::zero(self.nx, self.nh);
        for (m, c) in self.terms.iter().filter(|(m, _)| m.degree() <= d) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// The symbol μ: the X-free part, as a polynomial in the H basis.
    pub fn symbol(&self) -> Poly {
        Poly::from_terms(
            self.nh,
            self.terms
                .iter()
                .filter(|(m, _)| m.x_degree() == 0)
                .map(|(m, c)| (m.h.clone(), c.clone())),
        )
    }

    /// Coefficient polynomial p_K(H) of X^K, so that the element is Σ X^K p_K(H).
    pub fn x_blocks(&self) -> BTreeMap<Vec<u16>, Poly> {
        let mut out: BTreeMap<Vec<u16>, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.x.clone())
                .or_insert_with(|| Poly::zero(self.nh))
                .add_term(m.h.clone(), c.clone());
        }
        out
    }

    /// Linear change of generators, X_c ↦ Σ_d xmap[(c, d)] Y_d and
    /// H_a ↦ Σ_e hmap[(a, e)] K_e. Valid because each PBW block is commutative.
    pub fn linear_substitute(&self, xmap: &Matrix, hmap: &Matrix) -> Element {
        let (nx2, nh2) = (xmap.cols(), hmap.cols());
        let xrows = xmap.to_rows();
        let hrows = hmap.to_rows();
        let ximg: Vec<Poly> = xrows.iter().map(|r| Poly::linear(r)).collect();
        let himg: Vec<Poly> = hrows.iter().map(|r| Poly::linear(r)).collect();
        let mut out = Element::zero(nx2, nh2);
        for (xk, hp) in self.x_blocks() {
            let xpoly = Poly::monomial(xk, FieldElem::one()).substitute(&ximg);
            let hpoly = hp.substitute(&himg);
            out = out.add(&Element::from_parts(&xpoly, &hpoly));
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(FieldElem::is_real)
    }

    pub fn to_witness(&self, name: impl Into<String>, b: &AxB) -> Witness {
        Witness {
            name: name.into(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| Term {
                    monomial: m.to_text(&b.x_labels, &b.h_labels),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    pub fn from_witness(w: &Witness, b: &AxB) -> Result<Element, EnvelopeError> {
        let mut e = Element::zero_in(b);
        for t in &w.terms {
            e.add_term(Monomial::parse(&t.monomial, &b.x_labels, &b.h_labels)?, t.coeff.clone());
        }
        Ok(e)
    }

    /// Human-readable text, `(c)*monomial` terms joined by ` + `.
    pub fn to_text(&self, b: &AxB) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let t = m.to_text(&b.x_labels, &b.h_labels);
                if c.is_one() {
                    t
                } else if m.is_one() {
                    format!("({c})")
                } else {
                    format!("({c})*{t}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

type Expansion = Vec<(Vec<u16>, FieldElem)>;

/// (H + σ)^J expanded in the H monomials.
fn shifted_power(j: &[u16], sigma: &[FieldElem]) -> Expansion {
    let mut acc: Expansion = vec![(vec![0; j.len()], FieldElem::one())];
    for (a, (&ja, s)) in j.iter().zip(sigma).enumerate() {
        if ja == 0 {
            continue;
        }
        let factor: Vec<(u16, FieldElem)> = if s.is_zero() {
            vec![(ja, FieldElem::one())]
        } else {
            (0..=ja)
                .map(|k| (k, &binomial(ja as u32, k as u32) * &s.pow((ja - k) as u32)))
                .collect()
        };
        let mut next = Vec::with_capacity(acc.len() * factor.len());
        for (e, c) in &acc {
            for (k, f) in &factor {
                let mut e2 = e.clone();
                e2[a] = *k;
                next.push((e2, c * f));
            }
        }
        acc = next;
    }
    acc
}

/// H^J X^B in normal form for a general commuting action, as (X exps, H exps, coeff).
fn move_past(b: &AxB, j: &[u16], xb: &[u16]) -> Vec<(Vec<u16>, Vec<u16>, FieldElem)> {
    let mut cur: HashMap<(Vec<u16>, Vec<u16>), FieldElem> = HashMap::new();
    cur.insert((xb.to_vec(), vec![0; b.dim_a()]), FieldElem::one());
    for (a, &ja) in j.iter().enumerate() {
        let m = &b.action[a];
        for _ in 0..ja {
            let mut next: HashMap<(Vec<u16>, Vec<u16>), FieldElem> = HashMap::new();
            for ((xk, hl), c) in &cur {
                let mut hl2 = hl.clone();
                hl2[a] += 1;
                *next.entry((xk.clone(), hl2)).or_default() += c;
                for (cidx, &kc) in xk.iter().enumerate() {
                    if kc == 0 {
                        continue;
                    }
                    for bidx in 0..b.dim_u() {
                        let e = &m[(bidx, cidx)];
                        if e.is_zero() {
                            continue;
                        }
                        let mut x2 = xk.clone();
                        x2[cidx] -= 1;
                        x2[bidx] += 1;
                        let coef = &(c * e) * &FieldElem::from_int(kc as i64);
                        *next.entry((x2, hl.clone())).or_default() += &coef;
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
    }
    cur.into_iter().map(|((x, h), c)| (x, h, c)).collect()
}

fn add_exps(a: &[u16], b: &[u16]) -> Vec<u16> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Product in U(b), checking that both factors live in `b`; with `cap`,
/// terms of degree above the cap are dropped.
pub fn multiply_capped(
    b: &AxB,
    p: &Element,
    q: &Element,
    cap: Option<usize>,
) -> Result<Element, EnvelopeError> {
    let dims = (b.dim_u(), b.dim_a());
    if (p.nx, p.nh) != dims || (q.nx, q.nh) != dims {
        return Err(EnvelopeError::AlgebraMismatch);
    }
    let out = multiply(b, p, q);
    Ok(match cap {
        Some(c) if out.degree() > c => out.truncate(c),
        _ => out,
    })
}

/// Product in U(b), normal ordered.
pub fn multiply(b: &AxB, p: &Element, q: &Element) -> Element {
    assert_eq!((p.nx, p.nh), (b.dim_u(), b.dim_a()), "element not in this algebra");
    assert_eq!((q.nx, q.nh), (p.nx, p.nh), "element not in this algebra");
    // Group q by its X part.
    let mut groups: BTreeMap<&Vec<u16>, Vec<(&Vec<u16>, &FieldElem)>> = BTreeMap::new();
    for (m, c) in &q.terms {
        groups.entry(&m.x).or_default().push((&m.h, c));
    }
    let groups: Vec<_> = groups.into_iter().collect();
    let sigmas: Option<Vec<Vec<FieldElem>>> = b.shifts.as_ref().map(|s| {
        groups
            .iter()
            .map(|(xb, _)| {
                let mut sig = vec![FieldElem::zero(); b.dim_a()];
                for (c, &k) in xb.iter().enumerate() {
                    if k > 0 {
                        let kk = FieldElem::from_int(k as i64);
                        for a in 0..b.dim_a() {
                            sig[a] += &(&s[c][a] * &kk);
                        }
                    }
                }
                sig
            })
            .collect()
    });
    let pterms: Vec<(&Monomial, &FieldElem)> = p.terms.iter().collect();
    let work = |chunk: &[(&Monomial, &FieldElem)]| -> HashMap<Monomial, FieldElem> {
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::new();
        for (mp, cp) in chunk {
            for (gi, (xb, hs)) in groups.iter().enumerate() {
                let xsum = add_exps(&mp.x, xb);
                match &sigmas {
                    Some(sig) => {
                        for (hj, c) in shifted_power(&mp.h, &sig[gi]) {
                            let cc = *cp * &c;
                            for (hl, cq) in hs {
                                let m = Monomial::new(xsum.clone(), add_exps(&hj, hl));
                                *acc.entry(m).or_default() += &(&cc * cq);
                            }
                        }
                    }
                    None => {
                        for (xk, hj, c) in move_past(b, &mp.h, xb) {
                            let x2 = add_exps(&mp.x, &xk);
                            let cc = *cp * &c;
                            for (hl, cq) in hs {
                                let m = Monomial::new(x2.clone(), add_exps(&hj, hl));
                                *acc.entry(m).or_default() += &(&cc * cq);
                            }
                        }
                    }
                }
            }
        }
        acc
    };
    let work_size = pterms.len() * q.len();
    let maps: Vec<HashMap<Monomial, FieldElem>> = if work_size > 4096 {
        pterms.par_chunks(16).map(work).collect()
    } else {
        vec![work(&pterms)]
    };
    let mut out = Element::zero(p.nx, p.nh);
    for map in maps {
        for (m, c) in map {
            out.add_term(m, c);
        }
    }
    out
}

/// [p, q] = pq − qp.
pub fn commutator(b: &AxB, p: &Element, q: &Element) -> Element {
    multiply(b, p, q).sub(&multiply(b, q, p))
}

pub fn power(b: &AxB, p: &Element, k: u32) -> Element {
    let mut acc = Element::one_in(b);
    for _ in 0..k {
        acc = multiply(b, &acc, p);
    }
    acc
}

/// Σ g^{ab} H_a H_b + Σ g^{cd} X_c X_d.
pub fn laplacian(b: &AxB) -> Element {
    let (hp, xp) = crate::axb::laplacian_parts(b).expect("nondegenerate inner products");
    Element::from_sym(b.dim_u(), &hp).add(&Element::from_parts(&xp, &Poly::one(b.dim_a())))
}

/// Image of a polynomial in the H basis under the reflection of a*
/// in the i-th simple root, acting through the dual action on a
/// (H_a ↦ H_a − α_i(H_a) α_i^∨ in H coordinates).
pub fn weyl_reflect_sym(gram_simple: &Matrix, i: usize, p: &Poly) -> Poly {
    let r = gram_simple.rows();
    // α_i^∨ as a vector of a: coordinates α_j(α_i^∨) = 2⟨α_j,α_i⟩/⟨α_i,α_i⟩.
    let two = FieldElem::from_int(2);
    let norm = gram_simple[(i, i)].clone();
    let coroot: Vec<FieldElem> = (0..r).map(|j| &(&gram_simple[(j, i)] * &two) / &norm).collect();
    let rows: Vec<Vec<FieldElem>> = (0..r)
        .map(|a| {
            let mut row = vec![FieldElem::zero(); r];
            row[a] = FieldElem::one();
            if a == i {
                for (j, c) in coroot.iter().enumerate() {
                    row[j] -= c;
                }
            }
            row
        })
        .collect();
    p.substitute_linear(&rows)
}
