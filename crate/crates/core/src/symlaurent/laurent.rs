use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{default_name, Monomial};

/// Exponent vector allowing negative entries, trailing zeros trimmed.
/// Ordered like [`Monomial`]: by total degree, then `x1` before `x2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentMonomial {
    deg: i64,
    exps: Vec<i32>,
}

impl LaurentMonomial {
    pub fn new(mut exps: Vec<i32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        let deg = exps.iter().map(|&e| e as i64).sum();
        LaurentMonomial { deg, exps }
    }

    pub fn from_monomial(m: &Monomial) -> Self {
        LaurentMonomial::new(m.exps().iter().map(|&e| e as i32).collect())
    }

    pub fn exps(&self) -> &[i32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> i32 {
        self.exps.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &LaurentMonomial) -> LaurentMonomial {
        let n = self.exps.len().max(other.exps.len());
        LaurentMonomial::new((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }
}

impl Ord for LaurentMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for LaurentMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Laurent polynomial with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<LaurentMonomial, BigInt>,
}

impl LaurentPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = (LaurentMonomial, BigInt)>) -> Self {
        let mut out: BTreeMap<LaurentMonomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            *out.entry(m).or_default() += c;
        }
        out.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: out }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LaurentMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every coefficient is positive.
    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(Signed::is_positive)
    }

    /// Smallest exponent of each of the first `n` variables over all terms.
    pub fn min_exponents(&self, n: usize) -> Vec<i32> {
        (0..n)
            .map(|i| self.terms.keys().map(|m| m.exp(i)).min().unwrap_or(0))
            .collect()
    }

    pub fn to_string_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        name(i)
                    } else {
                        format!("{}^{}", name(i), e)
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&format!("{abs}*"));
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_name))
    }
}
