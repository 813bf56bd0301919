use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::poly::default_name;
use super::rational::MultiRational;
use super::SymError;

/// Dual number `even + odd * eps` with `eps^2 = 0`, over rational functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DualRational {
    pub even: MultiRational,
    pub odd: MultiRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RenderedDual {
    pub even: String,
    pub odd: String,
}

impl DualRational {
    pub fn new(even: MultiRational, odd: MultiRational) -> Self {
        DualRational { even, odd }
    }

    pub fn from_even(even: MultiRational) -> Self {
        DualRational {
            even,
            odd: MultiRational::zero(),
        }
    }

    pub fn one() -> Self {
        DualRational::from_even(MultiRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// `(a + b eps) / (c + d eps) = a/c + (b c - a d)/c^2 eps`.
    pub fn checked_div(&self, rhs: &DualRational) -> Result<DualRational, SymError> {
        if rhs.even.is_zero() {
            return Err(SymError::NonInvertibleEvenPart);
        }
        let even = self.even.checked_div(&rhs.even)?;
        let cross = &(&self.odd * &rhs.even) - &(&self.even * &rhs.odd);
        let odd = cross.checked_div(&(&rhs.even * &rhs.even))?;
        Ok(DualRational { even, odd })
    }

    pub fn pow(&self, e: u32) -> DualRational {
        // (a + b eps)^e = a^e + e a^(e-1) b eps
        if e == 0 {
            return DualRational::one();
        }
        let even = self.even.pow(e as i32).expect("nonnegative power");
        let lower = self.even.pow(e as i32 - 1).expect("nonnegative power");
        let odd = &(&MultiRational::constant(e) * &lower) * &self.odd;
        DualRational { even, odd }
    }

    pub fn render_with(&self, name: &dyn Fn(usize) -> String) -> RenderedDual {
        RenderedDual {
            even: self.even.to_string_with(name),
            odd: self.odd.to_string_with(name),
        }
    }

    pub fn render(&self) -> RenderedDual {
        self.render_with(&default_name)
    }
}

impl Add for &DualRational {
    type Output = DualRational;
    fn add(self, rhs: &DualRational) -> DualRational {
        DualRational {
            even: &self.even + &rhs.even,
            odd: &self.odd + &rhs.odd,
        }
    }
}

impl Sub for &DualRational {
    type Output = DualRational;
    fn sub(self, rhs: &DualRational) -> DualRational {
        DualRational {
            even: &self.even - &rhs.even,
            odd: &self.odd - &rhs.odd,
        }
    }
}

impl Mul for &DualRational {
    type Output = DualRational;
    fn mul(self, rhs: &DualRational) -> DualRational {
        DualRational {
            even: &self.even * &rhs.even,
            odd: &(&self.even * &rhs.odd) + &(&self.odd * &rhs.even),
        }
    }
}

impl Neg for &DualRational {
    type Output = DualRational;
    fn neg(self) -> DualRational {
        DualRational {
            even: -&self.even,
            odd: -&self.odd,
        }
    }
}
