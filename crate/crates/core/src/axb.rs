//! The solvable Lie algebra b = a ⋉ u: `a` abelian of dimension r, `u` abelian,
//! with `a` acting on `u` by commuting linear maps.

use crate::cert::Certificate;
use crate::envelope::Poly;
use crate::rootsys::{Covector, DominantChoice, RootSystem};
use crate::scalar::{FieldElem, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AxbError {
    #[error("action matrices do not commute")]
    NonCommuting,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degenerate inner product")]
    Degenerate,
}

/// An element of b: components along the a basis and the u basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgVec {
    pub h: Vec<FieldElem>,
    pub x: Vec<FieldElem>,
}

impl AlgVec {
    pub fn zero(b: &AxB) -> Self {
        AlgVec {
            h: vec![FieldElem::zero(); b.dim_a()],
            x: vec![FieldElem::zero(); b.dim_u()],
        }
    }

    pub fn basis(b: &AxB, k: usize) -> Self {
        let mut v = Self::zero(b);
        if k < b.dim_a() {
            v.h[k] = FieldElem::one();
        } else {
            v.x[k - b.dim_a()] = FieldElem::one();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.h.iter().chain(&self.x).all(FieldElem::is_zero)
    }

    pub fn add(&self, o: &AlgVec) -> AlgVec {
        AlgVec {
            h: self.h.iter().zip(&o.h).map(|(a, b)| a + b).collect(),
            x: self.x.iter().zip(&o.x).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &FieldElem) -> AlgVec {
        AlgVec {
            h: self.h.iter().map(|a| a * s).collect(),
            x: self.x.iter().map(|a| a * s).collect(),
        }
    }
}

/// A presentation of b by a basis H_1..H_r of a and X_0.. of u.
#[derive(Debug, Clone)]
pub struct AxB {
    pub name: String,
    pub h_labels: Vec<String>,
    pub x_labels: Vec<String>,
    /// `action[a]` is the matrix of ad(H_a) on u: [H_a, X_c] = Σ_b action[a][(b, c)] X_b.
    pub action: Vec<Matrix>,
    /// For a diagonal action, `shifts[c][a] = α_c(H_a)` with [H_a, X_c] = α_c(H_a) X_c.
    pub shifts: Option<Vec<Vec<FieldElem>>>,
    /// Inner products of the a basis vectors.
    pub gram_a: Matrix,
    /// Inner products of the u basis vectors.
    pub gram_u: Matrix,
    /// Marks of the dominant root, when built from a root system.
    pub marks: Option<Vec<i64>>,
    /// x_k ↦ Σ_i coord_map[(k, i)] H_i, when built from a root system.
    pub coord_map: Option<Matrix>,
}

impl AxB {
    /// General presentation. Checks that the action matrices commute; detects
    /// a diagonal action.
    pub fn general(
        name: impl Into<String>,
        h_labels: Vec<String>,
        x_labels: Vec<String>,
        action: Vec<Matrix>,
        gram_a: Matrix,
        gram_u: Matrix,
    ) -> Result<Self, AxbError> {
        let (r, n) = (h_labels.len(), x_labels.len());
        if action.len() != r
            || action.iter().any(|m| m.rows() != n || m.cols() != n)
            || gram_a.rows() != r
            || gram_u.rows() != n
        {
            return Err(AxbError::Dimension(format!("a={r}, u={n}")));
        }
        for i in 0..r {
            for j in 0..i {
                let ab = action[i].mul(&action[j]).expect("square");
                let ba = action[j].mul(&action[i]).expect("square");
                if ab != ba {
                    return Err(AxbError::NonCommuting);
                }
            }
        }
        let diagonal = action
            .iter()
            .all(|m| (0..n).all(|b| (0..n).all(|c| b == c || m[(b, c)].is_zero())));
        let shifts = diagonal.then(|| {
            (0..n)
                .map(|c| (0..r).map(|a| action[a][(c, c)].clone()).collect())
                .collect()
        });
        Ok(AxB {
            name: name.into(),
            h_labels,
            x_labels,
            action,
            shifts,
            gram_a,
            gram_u,
            marks: None,
            coord_map: None,
        })
    }

    pub fn dim_a(&self) -> usize {
        self.h_labels.len()
    }

    pub fn dim_u(&self) -> usize {
        self.x_labels.len()
    }

    pub fn dim(&self) -> usize {
        self.dim_a() + self.dim_u()
    }

    pub fn is_diagonal(&self) -> bool {
        self.shifts.is_some()
    }

    /// Generator labels in PBW order: X's then H's.
    pub fn labels(&self) -> Vec<String> {
        self.x_labels.iter().chain(&self.h_labels).cloned().collect()
    }

    /// [v, w].
    pub fn bracket(&self, v: &AlgVec, w: &AlgVec) -> AlgVec {
        let mut x = vec![FieldElem::zero(); self.dim_u()];
        for (a, m) in self.action.iter().enumerate() {
            for b in 0..self.dim_u() {
                for c in 0..self.dim_u() {
                    let e = &m[(b, c)];
                    if e.is_zero() {
                        continue;
                    }
                    x[b] += &(&(e * &v.h[a]) * &w.x[c]);
                    x[b] -= &(&(e * &w.h[a]) * &v.x[c]);
                }
            }
        }
        AlgVec {
            h: vec![FieldElem::zero(); self.dim_a()],
            x,
        }
    }

    /// Eigen-covector of X_c on a, as values on the H basis (diagonal case).
    pub fn alpha(&self, c: usize) -> Option<&Covector> {
        self.shifts.as_ref().map(|s| &s[c])
    }

    /// Checks the Jacobi identity and antisymmetry on all basis triples.
    pub fn check_jacobi(&self) -> bool {
        let basis: Vec<AlgVec> = (0..self.dim()).map(|k| AlgVec::basis(self, k)).collect();
        for u in &basis {
            for v in &basis {
                if !self.bracket(u, v).add(&self.bracket(v, u)).is_zero() {
                    return false;
                }
                for w in &basis {
                    let t = self
                        .bracket(u, &self.bracket(v, w))
                        .add(&self.bracket(v, &self.bracket(w, u)))
                        .add(&self.bracket(w, &self.bracket(u, v)));
                    if !t.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// In the diagonal case, ⟨[H,X_c],X_d⟩ = ⟨X_c,[H,X_d]⟩ whenever α_c, α_d agree
    /// on H; checks that the u gram only pairs X's with equal eigen-covectors.
    pub fn check_weight_orthogonality(&self) -> bool {
        let Some(s) = &self.shifts else {
            return true;
        };
        (0..self.dim_u()).all(|c| (0..self.dim_u()).all(|d| s[c] == s[d] || self.gram_u[(c, d)].is_zero()))
    }
}

fn labels(prefix: &str, range: impl Iterator<Item = usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

/// Diagonal presentation from a root system and a dominant root β:
/// X_0 has eigen-covector α_0 = −β, X_i has α_i; H_1..H_r is dual to the
/// simple roots.
pub fn build_axb(system: &RootSystem, choice: &DominantChoice) -> AxB {
    let r = system.rank();
    let mut shifts = Vec::with_capacity(r + 1);
    shifts.push(choice.marks.iter().map(|&m| FieldElem::from_int(-m)).collect::<Vec<_>>());
    for i in 0..r {
        let mut e = vec![FieldElem::zero(); r];
        e[i] = FieldElem::one();
        shifts.push(e);
    }
    let action: Vec<Matrix> = (0..r)
        .map(|a| Matrix::diagonal(&shifts.iter().map(|s| s[a].clone()).collect::<Vec<_>>()))
        .collect();
    let gram_a = system.gram_simple().inverse().expect("simple roots independent");
    // x_k ↦ Σ_i ⟨α_i, x_k⟩ H_i.
    let n = system.ambient_dim();
    let mut coord_map = Matrix::zeros(n, r);
    for (i, a) in system.simple_roots.iter().enumerate() {
        let ga = system.gram.mul_vec(a).expect("dimension");
        for k in 0..n {
            coord_map[(k, i)] = ga[k].clone();
        }
    }
    AxB {
        name: format!("{}/{}", system.tag, choice.kind),
        h_labels: labels("H", 1..=r),
        x_labels: labels("X", 0..=r),
        action,
        shifts: Some(shifts),
        gram_a,
        gram_u: Matrix::identity(r + 1),
        marks: Some(choice.marks.clone()),
        coord_map: Some(coord_map),
    }
}

/// Converts a polynomial in ambient coordinates to the H basis of Sym(a).
pub fn to_h_basis(b: &AxB, p: &Poly) -> Poly {
    let cm = b.coord_map.as_ref().expect("algebra built from a root system");
    p.substitute_linear(&cm.to_rows())
}

/// The Casimir-type element Σ g^{ab} H_a H_b + Σ g^{cd} X_c X_d in canonical
/// order, as (Sym(a) part, Sym(u) part).
pub fn laplacian_parts(b: &AxB) -> Result<(Poly, Poly), AxbError> {
    let ga = b.gram_a.inverse().map_err(|_| AxbError::Degenerate)?;
    let gu = b.gram_u.inverse().map_err(|_| AxbError::Degenerate)?;
    Ok((quadratic(&ga), quadratic(&gu)))
}

fn quadratic(g: &Matrix) -> Poly {
    let n = g.rows();
    let mut p = Poly::zero(n);
    for i in 0..n {
        for j in 0..n {
            let mut e = vec![0u16; n];
            e[i] += 1;
            e[j] += 1;
            p.add_term(e, g[(i, j)].clone());
        }
    }
    p
}

/// Structural checks on a presentation.
pub fn verify_axb(b: &AxB) -> Certificate {
    let mut cert = Certificate::new(format!("{} is a Lie algebra with diagonalizable a-action", b.name));
    cert.input("algebra", &b.name);
    cert.check("jacobi", b.check_jacobi(), "all basis triples");
    cert.check(
        "weight orthogonality",
        b.check_weight_orthogonality(),
        "u gram pairs only equal weights",
    );
    if let Some(s) = &b.shifts {
        let span = Matrix::from_rows(s.clone()).expect("rectangular").rank();
        cert.check("weights span a*", span == b.dim_a(), format!("rank {span}"));
    }
    cert
}
