//! Strict order polynomials, extended strict order polynomials and the
//! Zhang-Zhang polynomial of a strip.
//!
//! `E°(n, z)` is available through two independent routes: the sum over all
//! induced subposets of `Ω°_Q(n) z^|Q|`, and the closed sum over linear
//! extensions weighted by their descent and fixed-label counts. The ZZ
//! polynomial is `E°(n, 1 + x)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extensions::{extension_records, for_each_extension, descent_stats};
use crate::poset::{build_poset, induced_subposets, natural_labeling, DibPoset, NaturalLabeling};
use crate::polynomial::{binomial, Polynomial};
use crate::strip::{require_kekulean, require_valid, StripSpec};

/// Default cap on `p` for routes that enumerate all `2^p` subposets.
pub const DEFAULT_SUBSET_GUARD: usize = 20;

/// Default cap on the number of candidate maps `n^p` tried by brute force.
pub const DEFAULT_BRUTE_FORCE_LIMIT: u64 = 2_000_000;

/// Clar covering polynomial `Σ c_k x^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ZzPolynomial {
    pub coeffs: Polynomial,
}

impl ZzPolynomial {
    pub fn new(coeffs: Polynomial) -> Self {
        ZzPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        ZzPolynomial::default()
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        ZzPolynomial::new(Polynomial::from_u64s(coeffs))
    }

    /// `Σ a_k (1 + x)^k` for a sextet histogram `a`.
    pub fn from_sextet_histogram(a: &[BigUint]) -> Self {
        ZzPolynomial::new(Polynomial::new(a.to_vec()).shift_by_one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.coeff(k)
    }

    /// Number of Kekulé structures, `ZZ(0)`.
    pub fn kekule_count(&self) -> BigUint {
        self.coeff(0)
    }

    /// Total number of Clar covers, `ZZ(1)`.
    pub fn clar_cover_count(&self) -> BigUint {
        self.coeffs.evaluate_u64(1)
    }

    /// Degree of the polynomial; `None` for non-Kekuléan strips.
    pub fn clar_number(&self) -> Option<usize> {
        self.coeffs.degree()
    }

    pub fn evaluate_u64(&self, x: u64) -> BigUint {
        self.coeffs.evaluate_u64(x)
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let c = self.coeffs.coeffs();
        (0..c.len())
            .rev()
            .filter(|&k| !c[k].is_zero())
            .map(|k| {
                let coeff = if k > 0 && c[k] == BigUint::from(1u32) { String::new() } else { c[k].to_string() };
                match k {
                    0 => coeff,
                    1 => format!("{coeff}x"),
                    _ => format!("{coeff}x^{{{k}}}"),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for ZzPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.coeffs.fmt(f)
    }
}

/// `Ω°_Q(n) = Σ_{w ∈ L(Q)} C(n + des(w), |Q|)`.
pub fn strict_order_poly(subposet: &DibPoset, n: usize) -> BigUint {
    let labeling = natural_labeling(subposet);
    let p = subposet.len() as i64;
    let mut total = BigUint::zero();
    for_each_extension(subposet, &labeling, |w| {
        let (_, des) = descent_stats(w);
        total += binomial(n as i64 + des as i64, p);
    });
    total
}

/// Every map `Q -> [n]` with `s < t => φ(s) < φ(t)`, found by exhaustive
/// search over all `n^|Q|` assignments in lexicographic order. Values are
/// listed per element index.
pub fn brute_force_strict_maps(subposet: &DibPoset, n: usize, limit: u64) -> Result<Vec<Vec<usize>>> {
    let p = subposet.len();
    let candidates = (n as u64).checked_pow(p as u32).unwrap_or(u64::MAX);
    if candidates > limit {
        return Err(Error::GuardExceeded {
            what: "brute-force strict maps",
            limit: limit as usize,
            actual: candidates.min(usize::MAX as u64) as usize,
        });
    }
    let mut maps = Vec::new();
    if p > 0 && n == 0 {
        return Ok(maps);
    }
    let mut values = vec![1usize; p];
    loop {
        let strict = subposet
            .covers()
            .iter()
            .all(|&(a, b)| values[a] < values[b]);
        if strict {
            maps.push(values.clone());
        }
        // odometer, last element fastest
        let mut i = p;
        loop {
            if i == 0 {
                return Ok(maps);
            }
            i -= 1;
            if values[i] < n {
                values[i] += 1;
                for v in &mut values[i + 1..] {
                    *v = 1;
                }
                break;
            }
        }
    }
}

/// `E°_P(n, z) = Σ_{Q ⊆ P} Ω°_Q(n) z^|Q|`, summing over all induced subposets.
pub fn extended_poly_subposet_sum(poset: &DibPoset, n: usize, guard_p: usize) -> Result<Polynomial> {
    if poset.len() > guard_p || poset.len() >= 64 {
        return Err(Error::GuardExceeded {
            what: "subposet enumeration",
            limit: guard_p.min(63),
            actual: poset.len(),
        });
    }
    let mut out = Polynomial::zero();
    for (mask, sub) in induced_subposets(poset) {
        out.add_term(mask.count_ones() as usize, &strict_order_poly(&sub, n));
    }
    Ok(out)
}

/// `E°_P(n, z) = Σ_k Σ_{w ∈ L(P)} C(p - fix(w), k - fix(w)) C(n + des(w), k) z^k`.
pub fn extended_poly_extension_formula(
    poset: &DibPoset,
    labeling: &NaturalLabeling,
    n: usize,
) -> Polynomial {
    ClosedForm::from_poset(poset, labeling).extended_poly(n)
}

/// ZZ polynomial of a valid strip; identically zero when the strip is not
/// Kekuléan.
pub fn zz_polynomial(spec: &StripSpec) -> Result<ZzPolynomial> {
    let report = require_valid(spec)?;
    if !report.is_kekulean {
        return Ok(ZzPolynomial::zero());
    }
    Ok(closed_form(spec)?.evaluate(spec.n))
}

/// `a(S, k) = Σ_{A ⊆ S, |A| = k} Ω°_A(n)`: Kekulé structures with exactly
/// `k` proper sextets. Falls back to the extension formula's coefficients
/// above the subset guard.
pub fn a_coefficients(spec: &StripSpec, guard_p: usize) -> Result<Vec<BigUint>> {
    require_kekulean(spec)?;
    let poset = build_poset(spec)?;
    let e = if poset.len() <= guard_p {
        extended_poly_subposet_sum(&poset, spec.n, guard_p)?
    } else {
        extended_poly_extension_formula(&poset, &natural_labeling(&poset), spec.n)
    };
    Ok(e.coeffs().to_vec())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtensionGroup {
    pub des: usize,
    pub fix: usize,
    pub mult: usize,
}

/// `E°_S(n, 1 + x)` with `n` left symbolic: linear extensions grouped by
/// their `(des, fix)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClosedForm {
    pub p: usize,
    pub groups: Vec<ExtensionGroup>,
}

impl ClosedForm {
    pub fn from_poset(poset: &DibPoset, labeling: &NaturalLabeling) -> Self {
        let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for rec in extension_records(poset, labeling) {
            *counts.entry((rec.des, rec.fix)).or_default() += 1;
        }
        let groups = counts
            .into_iter()
            .map(|((des, fix), mult)| ExtensionGroup { des, fix, mult })
            .collect();
        ClosedForm { p: poset.len(), groups }
    }

    /// Number of linear extensions represented.
    pub fn extension_count(&self) -> usize {
        self.groups.iter().map(|g| g.mult).sum()
    }

    /// Coefficient of `z^k` at a concrete `n`.
    pub fn coefficient(&self, k: usize, n: usize) -> BigUint {
        let (p, k, n) = (self.p as i64, k as i64, n as i64);
        self.groups.iter().fold(BigUint::zero(), |acc, g| {
            let (des, fix) = (g.des as i64, g.fix as i64);
            acc + BigUint::from(g.mult) * binomial(p - fix, k - fix) * binomial(n + des, k)
        })
    }

    /// `E°_S(n, z)` as a polynomial in `z`.
    pub fn extended_poly(&self, n: usize) -> Polynomial {
        Polynomial::new((0..=self.p).map(|k| self.coefficient(k, n)).collect())
    }

    pub fn evaluate(&self, n: usize) -> ZzPolynomial {
        ZzPolynomial::new(self.extended_poly(n).shift_by_one())
    }

    fn terms(&self, latex: bool) -> Vec<String> {
        let binom = |top: String, bottom: String| {
            if latex {
                format!("\\binom{{{top}}}{{{bottom}}}")
            } else {
                format!("C({top},{bottom})")
            }
        };
        self.groups
            .iter()
            .map(|g| {
                let mult = if g.mult == 1 { String::new() } else { g.mult.to_string() };
                let top = if g.fix == 0 {
                    self.p.to_string()
                } else {
                    (self.p - g.fix).to_string()
                };
                let bottom = if g.fix == 0 { "k".to_string() } else { format!("k-{}", g.fix) };
                let n_top = if g.des == 0 { "n".to_string() } else { format!("n+{}", g.des) };
                format!("{mult}{}{}", binom(top, bottom), binom(n_top, "k".into()))
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        format!(
            "sum_{{k=0}}^{{{}}} ({}) (1+x)^k",
            self.p,
            self.terms(false).join(" + ")
        )
    }

    pub fn to_latex(&self) -> String {
        format!(
            "\\sum_{{k=0}}^{{{}}}\\left({}\\right)\\left(1+x\\right)^{{k}}",
            self.p,
            self.terms(true).join("+")
        )
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Closed form of a valid Kekuléan strip (independent of its `n`).
pub fn closed_form(spec: &StripSpec) -> Result<ClosedForm> {
    require_kekulean(spec)?;
    let poset = build_poset(spec)?;
    Ok(ClosedForm::from_poset(&poset, &natural_labeling(&poset)))
}
