//! Dense univariate polynomials with non-negative big-integer coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// Binomial coefficient `C(a, b)`, zero whenever `b < 0`, `a < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 || a < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= (a as u64) - i;
        acc /= i + 1;
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    // no trailing zeros
    coeffs: Vec<BigUint>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(BigUint::one())
    }

    pub fn constant(c: BigUint) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    /// `c * var^k`.
    pub fn monomial(c: BigUint, k: usize) -> Self {
        let mut coeffs = vec![BigUint::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add_term(&mut self, k: usize, c: &BigUint) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, BigUint::zero());
        }
        self.coeffs[k] += c;
    }

    pub fn evaluate(&self, x: &BigUint) -> BigUint {
        self.coeffs
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, c| acc * x + c)
    }

    pub fn evaluate_u64(&self, x: u64) -> BigUint {
        self.evaluate(&BigUint::from(x))
    }

    /// Substitutes `var -> 1 + x` and expands.
    pub fn shift_by_one(&self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..=k {
                out.add_term(i, &(c * binomial(k as i64, i as i64)));
            }
        }
        out
    }

    /// Text rendering in `var`, highest degree first: `x^2 + 6x + 6`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.is_one() && k > 0 { String::new() } else { c.to_string() };
            terms.push(match k {
                0 => coeff,
                1 => format!("{coeff}{var}"),
                _ => format!("{coeff}{var}^{k}"),
            });
        }
        terms.join(" + ")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (k, c) in rhs.coeffs.iter().enumerate() {
            self.add_term(k, c);
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigUint::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

// Coefficients are written as JSON numbers when they fit in a u64 and as
// decimal strings otherwise.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_u64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Small(u64),
            Big(String),
        }

        struct CoeffsVisitor;

        impl<'de> Visitor<'de> for CoeffsVisitor {
            type Value = Polynomial;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of non-negative integer coefficients")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Polynomial, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(c) = seq.next_element::<Coeff>()? {
                    coeffs.push(match c {
                        Coeff::Small(v) => BigUint::from(v),
                        Coeff::Big(s) => s.parse().map_err(de::Error::custom)?,
                    });
                }
                Ok(Polynomial::new(coeffs))
            }
        }

        deserializer.deserialize_seq(CoeffsVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(4, -1), BigUint::zero());
        assert_eq!(binomial(2, 3), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(-1, 0), BigUint::zero());
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn rendering() {
        assert_eq!(Polynomial::from_u64s(&[6, 6, 1]).to_string(), "x^2 + 6x + 6");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::from_u64s(&[0, 1]).to_string(), "x");
        assert_eq!(Polynomial::from_u64s(&[1, 0, 3]).render("z"), "3z^2 + 1");
    }

    #[test]
    fn shift() {
        // 1 + 4z + z^2 at z = 1 + x
        let p = Polynomial::from_u64s(&[1, 4, 1]).shift_by_one();
        assert_eq!(p, Polynomial::from_u64s(&[6, 6, 1]));
    }

    #[test]
    fn json_coefficients() {
        let p = Polynomial::from_u64s(&[6, 6, 1]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[6,6,1]");
        let big = Polynomial::new(vec![BigUint::from(u64::MAX) * 3u32, BigUint::one()]);
        let text = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<Polynomial>(&text).unwrap(), big);
    }

    proptest! {
        #[test]
        fn shift_matches_evaluation(coeffs in prop::collection::vec(0u64..1000, 0..8), x in 0u64..50) {
            let p = Polynomial::from_u64s(&coeffs);
            prop_assert_eq!(p.shift_by_one().evaluate_u64(x), p.evaluate_u64(x + 1));
        }

        #[test]
        fn product_evaluates_to_product(a in prop::collection::vec(0u64..100, 0..6),
                                        b in prop::collection::vec(0u64..100, 0..6),
                                        x in 0u64..20) {
            let (pa, pb) = (Polynomial::from_u64s(&a), Polynomial::from_u64s(&b));
            prop_assert_eq!((&pa * &pb).evaluate_u64(x), pa.evaluate_u64(x) * pb.evaluate_u64(x));
        }
    }
}
