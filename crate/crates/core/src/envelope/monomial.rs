use std::cmp::Ordering;

use super::EnvelopeError;

/// A PBW monomial X^x H^h, X's to the left.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: Vec<u16>,
    pub h: Vec<u16>,
}

impl Monomial {
    pub fn one(nx: usize, nh: usize) -> Self {
        Monomial {
            x: vec![0; nx],
            h: vec![0; nh],
        }
    }

    pub fn new(x: Vec<u16>, h: Vec<u16>) -> Self {
        Monomial { x, h }
    }

    pub fn degree(&self) -> usize {
        self.x_degree() + self.h_degree()
    }

    pub fn x_degree(&self) -> usize {
        self.x.iter().map(|&e| e as usize).sum()
    }

    pub fn h_degree(&self) -> usize {
        self.h.iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.degree() == 0
    }

    /// Every X exponent even.
    pub fn is_even(&self) -> bool {
        self.x.iter().all(|e| e % 2 == 0)
    }

    /// Canonical text such as `X0^2*X1^2*H1`; the empty monomial is `1`.
    pub fn to_text(&self, x_labels: &[String], h_labels: &[String]) -> String {
        let parts: Vec<String> = self
            .x
            .iter()
            .zip(x_labels)
            .chain(self.h.iter().zip(h_labels))
            .filter(|(e, _)| **e > 0)
            .map(|(e, l)| if *e == 1 { l.clone() } else { format!("{l}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Inverse of [`Monomial::to_text`]. Factors must appear in PBW order.
    pub fn parse(text: &str, x_labels: &[String], h_labels: &[String]) -> Result<Self, EnvelopeError> {
        let mut m = Monomial::one(x_labels.len(), h_labels.len());
        let text = text.trim();
        if text == "1" {
            return Ok(m);
        }
        let mut last = None;
        for factor in text.split('*') {
            let (label, exp) = match factor.split_once('^') {
                Some((l, e)) => (
                    l,
                    e.parse::<u16>()
                        .map_err(|_| EnvelopeError::Parse(format!("bad exponent in {factor}")))?,
                ),
                None => (factor, 1),
            };
            let pos = if let Some(i) = x_labels.iter().position(|l| l == label) {
                m.x[i] += exp;
                i
            } else if let Some(i) = h_labels.iter().position(|l| l == label) {
                m.h[i] += exp;
                x_labels.len() + i
            } else {
                return Err(EnvelopeError::Parse(format!("unknown generator {label}")));
            };
            if exp == 0 || last.is_some_and(|p| p >= pos) {
                return Err(EnvelopeError::Parse(format!("non-canonical monomial {text}")));
            }
            last = Some(pos);
        }
        Ok(m)
    }
}

impl Ord for Monomial {
    /// Degree first, then lexicographic on (x, h).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.x.cmp(&self.x))
            .then_with(|| other.h.cmp(&self.h))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(p: &str, n: usize, start: usize) -> Vec<String> {
        (start..start + n).map(|i| format!("{p}{i}")).collect()
    }

    #[test]
    fn text_round_trip() {
        let (xl, hl) = (names("X", 3, 0), names("H", 2, 1));
        let m = Monomial::new(vec![2, 2, 0], vec![1, 0]);
        let t = m.to_text(&xl, &hl);
        assert_eq!(t, "X0^2*X1^2*H1");
        assert_eq!(Monomial::parse(&t, &xl, &hl).unwrap(), m);
        assert_eq!(Monomial::one(3, 2).to_text(&xl, &hl), "1");
        assert!(Monomial::parse("H1*X0", &xl, &hl).is_err());
        assert!(Monomial::parse("Y1", &xl, &hl).is_err());
    }

    #[test]
    fn ordering_is_graded() {
        let a = Monomial::new(vec![1, 0], vec![0]);
        let b = Monomial::new(vec![0, 0], vec![2]);
        let c = Monomial::new(vec![0, 1], vec![0]);
        assert!(a < b);
        assert!(a < c);
        assert!(Monomial::new(vec![2, 4], vec![1]).is_even());
    }
}
