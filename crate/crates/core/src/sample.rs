//! Seeded random elements for property tests and benchmarks.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::axb::AxB;
use crate::envelope::{Element, Monomial};
use crate::scalar::FieldElem;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Small nonzero field element; one in four carries an irrational part.
pub fn field_elem(rng: &mut impl Rng) -> FieldElem {
    let mut n = rng.gen_range(-5i64..=5);
    if n == 0 {
        n = 1;
    }
    let q = FieldElem::frac(n, rng.gen_range(1i64..=4));
    match rng.gen_range(0..8) {
        0 => &q + &FieldElem::sqrt2(),
        1 => &q * &FieldElem::omega(),
        _ => q,
    }
}

/// Random monomial of total degree at most `degree`; with `even`, every
/// X-exponent is even.
pub fn monomial(b: &AxB, rng: &mut impl Rng, degree: usize, even: bool) -> Monomial {
    let mut x = vec![0u16; b.dim_u()];
    let mut h = vec![0u16; b.dim_a()];
    let mut left = rng.gen_range(0..=degree);
    while left > 0 {
        if rng.gen_bool(0.5) {
            let step = if even { 2 } else { 1 };
            if step > left {
                break;
            }
            let i = rng.gen_range(0..x.len());
            x[i] += step as u16;
            left -= step;
        } else {
            let i = rng.gen_range(0..h.len());
            h[i] += 1;
            left -= 1;
        }
    }
    Monomial::new(x, h)
}

/// Random element with up to `terms` terms.
pub fn element(b: &AxB, rng: &mut impl Rng, degree: usize, terms: usize, even: bool) -> Element {
    let mut e = Element::zero_in(b);
    for _ in 0..terms {
        e.add_term(monomial(b, rng, degree, even), field_elem(rng));
    }
    e
}
