use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::laurent::{LaurentMonomial, LaurentPoly};
use super::poly::{default_name, gcd, MultiPoly};
use super::SymError;

/// Rational function `num / den` in lowest terms.
///
/// `gcd(num, den) = 1`, `den` has a positive leading coefficient, and zero is
/// stored as `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiRational {
    num: MultiPoly,
    den: MultiPoly,
}

impl MultiRational {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, SymError> {
        if den.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return MultiRational::zero();
        }
        if let Some(q) = num.div_exact(&den) {
            return MultiRational::from_poly(q);
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        if den.leading_coefficient().is_negative() {
            num = -num;
            den = -den;
        }
        MultiRational { num, den }
    }

    pub fn zero() -> Self {
        MultiRational {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        MultiRational::from_poly(MultiPoly::one())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        MultiRational {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MultiRational::from_poly(MultiPoly::constant(c))
    }

    pub fn var(i: usize) -> Self {
        MultiRational::from_poly(MultiPoly::var(i))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<MultiRational, SymError> {
        MultiRational::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &MultiRational) -> Result<MultiRational, SymError> {
        if rhs.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<MultiRational, SymError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        // num and den stay coprime under powers
        Ok(MultiRational {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Laurent normal form, when the denominator is a monomial with unit coefficient.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        if !self.den.is_monomial() {
            return None;
        }
        let (dm, dc) = self.den.leading().unwrap();
        if !dc.is_one() {
            return None;
        }
        let shift: Vec<i32> = dm.exps().iter().map(|&e| -(e as i32)).collect();
        let shift = LaurentMonomial::new(shift);
        Some(LaurentPoly::from_terms(self.num.terms().map(|(m, c)| {
            (LaurentMonomial::from_monomial(m).mul(&shift), c.clone())
        })))
    }

    /// Exponent vector of a monomial denominator.
    pub fn denominator_exponents(&self) -> Option<Vec<u32>> {
        self.to_laurent()?;
        let (dm, _) = self.den.leading().unwrap();
        Some(dm.exps().to_vec())
    }

    pub fn substitute(&self, images: &[MultiRational]) -> Result<MultiRational, SymError> {
        let eval = |p: &MultiPoly| -> MultiRational {
            let mut acc = MultiRational::zero();
            for (m, c) in p.terms() {
                let mut t = MultiRational::constant(c.clone());
                for (i, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        t = &t * &images[i].pow(e as i32).expect("positive power");
                    }
                }
                acc = &acc + &t;
            }
            acc
        };
        eval(&self.num).checked_div(&eval(&self.den))
    }

    pub fn to_string_with(&self, name: &dyn Fn(usize) -> String) -> String {
        let num = self.num.to_string_with(name);
        if self.den.is_one() {
            return num;
        }
        let den = self.den.to_string_with(name);
        let num = if self.num.len() > 1 {
            format!("({num})")
        } else {
            num
        };
        let den = if self.den.len() > 1 || den.contains('*') {
            format!("({den})")
        } else {
            den
        };
        format!("{num}/{den}")
    }
}

impl Default for MultiRational {
    fn default() -> Self {
        MultiRational::zero()
    }
}

impl From<MultiPoly> for MultiRational {
    fn from(p: MultiPoly) -> Self {
        MultiRational::from_poly(p)
    }
}

impl Add for &MultiRational {
    type Output = MultiRational;
    fn add(self, rhs: &MultiRational) -> MultiRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return MultiRational::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let bd = self.den.div_exact(&g).unwrap();
        let dd = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &dd) + &(&rhs.num * &bd);
        let den = &self.den * &dd;
        MultiRational::reduce(num, den)
    }
}

impl Sub for &MultiRational {
    type Output = MultiRational;
    fn sub(self, rhs: &MultiRational) -> MultiRational {
        self + &(-rhs)
    }
}

impl Mul for &MultiRational {
    type Output = MultiRational;
    fn mul(self, rhs: &MultiRational) -> MultiRational {
        if self.is_zero() || rhs.is_zero() {
            return MultiRational::zero();
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = rhs.den.div_exact(&g1).unwrap();
        let c = rhs.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        let mut num = &a * &c;
        let mut den = &b * &d;
        if den.leading_coefficient().is_negative() {
            num = -num;
            den = -den;
        }
        MultiRational { num, den }
    }
}

impl Neg for &MultiRational {
    type Output = MultiRational;
    fn neg(self) -> MultiRational {
        MultiRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for MultiRational {
    type Output = MultiRational;
    fn neg(self) -> MultiRational {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiRational {
            type Output = MultiRational;
            fn $f(self, rhs: MultiRational) -> MultiRational {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for MultiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_name))
    }
}
