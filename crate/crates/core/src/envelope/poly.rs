//! Commutative polynomials over K. Used both for Sym(a) and for polynomials
//! in ambient coordinates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::scalar::FieldElem;

/// Sparse commutative polynomial in `n` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Vec<u16>, FieldElem>,
}

/// A polynomial in the symmetric algebra of `a`, written in the H basis.
pub type SymPoly = Poly;

pub fn deg(e: &[u16]) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

fn graded_cmp(a: &[u16], b: &[u16]) -> std::cmp::Ordering {
    deg(a).cmp(&deg(b)).then_with(|| b.cmp(a))
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: FieldElem) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, FieldElem::one())
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        let mut p = Self::zero(n);
        p.add_term(e, FieldElem::one());
        p
    }

    pub fn monomial(exps: Vec<u16>, c: FieldElem) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// Σ c_i v_i.
    pub fn linear(coeffs: &[FieldElem]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u16>, FieldElem)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &FieldElem)> {
        self.terms.iter()
    }

    /// Terms in graded order: by degree, then reverse lexicographic exponents.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u16>, &FieldElem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| graded_cmp(a.0, b.0));
        v
    }

    pub fn coeff(&self, e: &[u16]) -> FieldElem {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, e: Vec<u16>, c: FieldElem) {
        debug_assert_eq!(e.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| deg(e)).max().unwrap_or(0)
    }

    pub fn homogeneous_part(&self, d: usize) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| deg(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| deg(e));
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    pub fn scale(&self, s: &FieldElem) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * s))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElem) -> FieldElem) -> Poly {
        Poly::from_terms(self.n, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut acc: HashMap<Vec<u16>, FieldElem> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_default() += &(ca * cb);
            }
        }
        Poly::from_terms(self.n, acc)
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, point: &[FieldElem]) -> FieldElem {
        assert_eq!(point.len(), self.n);
        let mut total = FieldElem::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= &x.pow(k as u32);
                }
            }
            total += &t;
        }
        total
    }

    pub fn derivative(&self, i: usize) -> Poly {
        Poly::from_terms(
            self.n,
            self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
                let mut e2 = e.clone();
                let k = e2[i];
                e2[i] -= 1;
                (e2, c * &FieldElem::from_int(k as i64))
            }),
        )
    }

    /// Composition: variable i is replaced by `images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.n);
        let m = images.first().map_or(0, Poly::nvars);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(m), p.clone()]).collect();
        let mut out = Poly::zero(m);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][k as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Linear substitution: variable i is replaced by Σ_j m[i][j] y_j.
    pub fn substitute_linear(&self, m: &[Vec<FieldElem>]) -> Poly {
        let images: Vec<Poly> = m.iter().map(|row| Poly::linear(row)).collect();
        self.substitute(&images)
    }

    /// p(v + s).
    pub fn shift(&self, s: &[FieldElem]) -> Poly {
        let images: Vec<Poly> = (0..self.n)
            .map(|i| Poly::var(self.n, i).add(&Poly::constant(self.n, s[i].clone())))
            .collect();
        self.substitute(&images)
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(FieldElem::is_real)
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.sorted_terms() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k > 0)
                .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
                .collect();
            let mono = mono.join("*");
            parts.push(match (mono.is_empty(), c.is_one()) {
                (true, _) => format!("({c})"),
                (false, true) => mono,
                (false, false) => format!("({c})*{mono}"),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.n).map(|i| format!("v{i}")).collect();
        write!(f, "{}", self.format(&names))
    }
}

/// Σ_f f^k over linear forms f.
pub fn power_sum(forms: &[Vec<FieldElem>], k: u32) -> Poly {
    let n = forms.first().map_or(0, Vec::len);
    let mut acc = Poly::zero(n);
    for f in forms {
        acc = acc.add(&Poly::linear(f).pow(k));
    }
    acc
}

/// Binomial coefficient as a field element.
pub fn binomial(n: u32, k: u32) -> FieldElem {
    let mut b = num_bigint::BigInt::from(1);
    for i in 0..k {
        b = b * (n - i) / (i + 1);
    }
    FieldElem::from_rational(crate::scalar::Rational::from_integer(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::fe;

    #[test]
    fn arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = x.add(&y);
        let sq = s.pow(2);
        assert_eq!(sq.coeff(&[1, 1]), fe(2, 1));
        assert_eq!(sq.degree(), 2);
        assert!(sq.is_homogeneous());
        assert_eq!(sq.eval(&[fe(1, 1), fe(2, 1)]), fe(9, 1));
        assert_eq!(sq.derivative(0), x.add(&y).scale(&fe(2, 1)));
    }

    #[test]
    fn shift_matches_substitution() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.pow(3).add(&x.mul(&y));
        let shifted = p.shift(&[fe(1, 1), fe(-2, 1)]);
        let direct = p.substitute(&[
            x.add(&Poly::one(2)),
            y.sub(&Poly::constant(2, fe(2, 1))),
        ]);
        assert_eq!(shifted, direct);
    }

    #[test]
    fn power_sums() {
        let forms = vec![vec![fe(1, 1), fe(1, 1)], vec![fe(1, 1), fe(-1, 1)]];
        let p2 = power_sum(&forms, 2);
        assert_eq!(p2, Poly::var(2, 0).pow(2).add(&Poly::var(2, 1).pow(2)).scale(&fe(2, 1)));
        assert_eq!(binomial(6, 2), fe(15, 1));
    }
}
