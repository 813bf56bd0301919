use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent vector with trailing zeros trimmed.
///
/// Ordered by total degree, ties broken so that `x1` precedes `x2`
/// (reverse lexicographic on the exponent vector). This is a graded
/// monomial order; the leading term of a polynomial is its maximum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u64,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        let deg = exps.iter().map(|&e| e as u64).sum();
        Monomial { deg, exps }
    }

    pub fn one() -> Self {
        Monomial {
            deg: 0,
            exps: Vec::new(),
        }
    }

    pub fn var(i: usize) -> Self {
        let mut exps = vec![0; i + 1];
        exps[i] = 1;
        Monomial { deg: 1, exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u64 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let exps = (0..n).map(|i| self.exp(i) + other.exp(i)).collect();
        Monomial {
            deg: self.deg + other.deg,
            exps,
        }
    }

    /// `self / other` when every exponent of `other` is at most that of `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.exps.len() > self.exps.len()
            && other.exps[self.exps.len()..].iter().any(|&e| e > 0)
        {
            return None;
        }
        let mut exps = Vec::with_capacity(self.exps.len());
        for i in 0..self.exps.len() {
            exps.push(self.exps[i].checked_sub(other.exp(i))?);
        }
        Some(Monomial::new(exps))
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().min(other.exps.len());
        Monomial::new((0..n).map(|i| self.exps[i].min(other.exps[i])).collect())
    }

    fn without(&self, v: usize) -> Monomial {
        if self.exp(v) == 0 {
            return self.clone();
        }
        let mut exps = self.exps.clone();
        exps[v] = 0;
        Monomial::new(exps)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(usize) -> String) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", name(i))?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn default_name(i: usize) -> String {
    format!("x{}", i + 1)
}

/// Multivariate polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MultiPoly::term(Monomial::one(), c)
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(i: usize) -> Self {
        MultiPoly::term(Monomial::var(i), 1)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn monomial(exps: &[u32], c: impl Into<BigInt>) -> Self {
        MultiPoly::term(Monomial::new(exps.to_vec()), c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
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

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.is_constant() && self.terms.values().next().unwrap().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::one())
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// Number of variable slots used (one past the highest variable index present).
    pub fn arity(&self) -> usize {
        self.terms.keys().map(|m| m.exps.len()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Total degree restricted to the variables in `vars`.
    pub fn degree_in_vars(&self, vars: &[usize]) -> u64 {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&v| m.exp(v) as u64).sum::<u64>())
            .max()
            .unwrap_or(0)
    }

    /// Positive gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Flip the overall sign so that the leading coefficient is positive.
    pub fn normalize_sign(self) -> MultiPoly {
        if self.leading_coefficient().is_negative() {
            -self
        } else {
            self
        }
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        if d.is_monomial() {
            let (dm, dc) = d.leading().unwrap();
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                terms.insert(m.checked_div(dm)?, q);
            }
            return Some(MultiPoly { terms });
        }
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.checked_div(&dm)?;
            let (c, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            for (k, x) in &d.terms {
                rem.add_term(k.mul(&m), -(x * &c));
            }
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Substitute `images[i]` for the variable with index `i`.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        let mut powers: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one()]; images.len()];
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                let cache = &mut powers[i];
                while cache.len() <= e {
                    let next = cache.last().unwrap() * &images[i];
                    cache.push(next);
                }
                t = &t * &cache[e];
            }
            out += &t;
        }
        out
    }

    /// Common weighted degree `sum_i e_i w_i` of all terms, if homogeneous.
    pub fn weight_of(&self, weights: &[i64]) -> Option<i64> {
        let mut common = None;
        for m in self.terms.keys() {
            let w: i64 = m
                .exps
                .iter()
                .enumerate()
                .map(|(i, &e)| e as i64 * weights.get(i).copied().unwrap_or(0))
                .sum();
            match common {
                None => common = Some(w),
                Some(c) if c != w => return None,
                _ => {}
            }
        }
        common
    }

    // -- univariate views used by the gcd ----------------------------------

    fn coeffs_in(&self, v: usize) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exp(v))
                .or_default()
                .add_term(m.without(v), c.clone());
        }
        out
    }

    fn lc_in(&self, v: usize) -> MultiPoly {
        self.coeffs_in(v)
            .into_iter()
            .next_back()
            .map(|(_, c)| c)
            .unwrap_or_default()
    }

    fn content_in(&self, v: usize) -> MultiPoly {
        let mut g = MultiPoly::zero();
        for c in self.coeffs_in(v).into_values() {
            g = gcd_inner(&g, &c);
            if g.is_constant() && g.content().is_one() {
                return MultiPoly::one();
            }
        }
        g
    }

    fn primitive_in(&self, v: usize) -> MultiPoly {
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }

    fn prem(&self, b: &MultiPoly, v: usize) -> MultiPoly {
        let n = b.degree_in(v);
        let lb = b.lc_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= n {
            let d = r.degree_in(v) - n;
            let lr = r.lc_in(v);
            let mut shift = vec![0u32; v + 1];
            shift[v] = d;
            let shifted = (&lr * b).mul_monomial(&Monomial::new(shift), &BigInt::one());
            r = &(&r * &lb) - &shifted;
        }
        r
    }

    fn max_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| m.exps.len().checked_sub(1))
            .max()
    }

    pub fn to_string_with(&self, name: &dyn Fn(usize) -> String) -> String {
        struct W<'a>(&'a MultiPoly, &'a dyn Fn(usize) -> String);
        impl fmt::Display for W<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, self.1)
            }
        }
        W(self, name).to_string()
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(usize) -> String) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.fmt_with(f, name)?;
            }
        }
        Ok(())
    }
}

/// Greatest common divisor with positive leading coefficient.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    gcd_inner(a, b).normalize_sign()
}

fn monomial_gcd(m: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let (mm, mc) = m.leading().unwrap();
    let mut meet = mm.clone();
    for k in b.terms.keys() {
        meet = meet.meet(k);
        if meet.is_one() {
            break;
        }
    }
    MultiPoly::term(meet, mc.gcd(&b.content()))
}

// Recursive primitive-PRS gcd on the highest variable present; result up to sign.
fn gcd_inner(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::constant(a.content().gcd(&b.content()));
    }
    if a.is_monomial() {
        return monomial_gcd(a, b);
    }
    if b.is_monomial() {
        return monomial_gcd(b, a);
    }
    if a == b {
        return a.clone();
    }
    let nv = a.max_var().max(b.max_var()).unwrap() + 1;
    let (mut best, mut best_deg) = (None, u32::MAX);
    for v in 0..nv {
        let (da, db) = (a.degree_in(v), b.degree_in(v));
        // a variable missing on one side can be eliminated through the content
        if da == 0 && db > 0 {
            return gcd_inner(a, &b.content_in(v));
        }
        if db == 0 && da > 0 {
            return gcd_inner(&a.content_in(v), b);
        }
        if da > 0 && da.max(db) < best_deg {
            best = Some(v);
            best_deg = da.max(db);
        }
    }
    let v = best.unwrap();
    if a.len() >= b.len() && a.div_exact(b).is_some() {
        return b.clone();
    }
    if b.len() > a.len() && b.div_exact(a).is_some() {
        return a.clone();
    }
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let c = gcd_inner(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = p.prem(&q, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return c;
        }
        p = q;
        q = r.primitive_in(v);
    }
    &c * &q.primitive_in(v)
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -self.clone()
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &default_name)
    }
}
