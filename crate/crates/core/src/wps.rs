//! Weighted projective spaces `P(l_0, ..., l_n)`: reduction, well-formedness,
//! the rational fan and the isomorphism decision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::zlattice::{self, Equivalence, LatticeError, RationalMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WpsError {
    #[error("weights must be positive, got {0}")]
    NonPositiveWeight(i64),
    #[error("a weighted projective space needs at least two weights")]
    TooFewWeights,
    #[error("dimension mismatch: {0} weights versus {1}")]
    DimensionMismatch(usize, usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    pub fn new(weights: &[i64]) -> Result<Self, WpsError> {
        if weights.len() < 2 {
            return Err(WpsError::TooFewWeights);
        }
        if let Some(&w) = weights.iter().find(|&&w| w <= 0) {
            return Err(WpsError::NonPositiveWeight(w));
        }
        Ok(WeightVector(weights.iter().map(|&w| w as u64).collect()))
    }

    pub fn weights(&self) -> &[u64] {
        &self.0
    }

    /// Dimension `n` of the space (one less than the number of weights).
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    fn gcd_except(&self, j: usize) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .fold(0, |g, (_, &w)| g.gcd(&w))
    }

    /// Every `n` of the `n + 1` weights are coprime.
    pub fn is_well_formed(&self) -> bool {
        (0..self.0.len()).all(|j| self.gcd_except(j) == 1)
    }

    /// Reduced weights defining an isomorphic space.
    ///
    /// After removing the common factor, `d_j = gcd(l_k : k != j)`,
    /// `a_j = lcm(d_k : k != j)` and the reduced weight is `l_j / a_j`.
    pub fn reduce(&self) -> WeightVector {
        let g = self.0.iter().fold(0, |g, &w| g.gcd(&w));
        let base = WeightVector(self.0.iter().map(|&w| w / g).collect());
        let d: Vec<u64> = (0..base.0.len()).map(|j| base.gcd_except(j)).collect();
        let reduced = (0..base.0.len())
            .map(|j| {
                let a = d
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .fold(1, |l, (_, &dk)| l.lcm(&dk));
                debug_assert_eq!(base.0[j] % a, 0);
                base.0[j] / a
            })
            .collect();
        WeightVector(reduced)
    }

    pub fn fan(&self) -> WpsFan {
        let n = self.dim();
        let inv = |w: u64| BigRational::new(BigInt::from(1), BigInt::from(w));
        let mut rays = Vec::with_capacity(n + 1);
        rays.push(vec![-inv(self.0[0]); n]);
        for i in 1..=n {
            let mut v = vec![BigRational::zero(); n];
            v[i - 1] = inv(self.0[i]);
            rays.push(v);
        }
        WpsFan {
            weights: self.0.clone(),
            rays,
        }
    }
}

/// Rays `v_0, ..., v_n` with `v_i = e_i / l_i` and `v_0 = -(e_1 + ... + e_n) / l_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpsFan {
    weights: Vec<u64>,
    rays: Vec<Vec<BigRational>>,
}

impl WpsFan {
    pub fn rays(&self) -> &[Vec<BigRational>] {
        &self.rays
    }

    /// `sum_i l_i v_i = 0`.
    pub fn relation_holds(&self) -> bool {
        let n = self.rays[0].len();
        (0..n).all(|c| {
            self.weights
                .iter()
                .zip(&self.rays)
                .map(|(&w, v)| BigRational::from_integer(w.into()) * &v[c])
                .sum::<BigRational>()
                .is_zero()
        })
    }

    pub fn matrix(&self) -> RationalMatrix {
        RationalMatrix::from_columns(&self.rays).expect("rays share a dimension")
    }

    /// Only the coordinate rays `v_1, ..., v_n`.
    pub fn coordinate_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_columns(&self.rays[1..]).expect("rays share a dimension")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpsIsomorphism {
    pub reduced: (WeightVector, WeightVector),
    /// Witness on the full ray configurations of the reduced spaces.
    pub witness: Option<Equivalence>,
    /// Verdict from mapping `v_1..v_n` injectively into the target rays.
    pub coordinate_verdict: bool,
}

impl WpsIsomorphism {
    pub fn isomorphic(&self) -> bool {
        self.witness.is_some()
    }

    /// Whether the coordinate-ray test reached the same verdict.
    pub fn tests_agree(&self) -> bool {
        self.coordinate_verdict == self.isomorphic()
    }
}

pub fn wps_isomorphic(a: &WeightVector, b: &WeightVector) -> Result<WpsIsomorphism, WpsError> {
    if a.0.len() != b.0.len() {
        return Err(WpsError::DimensionMismatch(a.0.len(), b.0.len()));
    }
    let (ra, rb) = (a.reduce(), b.reduce());
    let (fa, fb) = (ra.fan(), rb.fan());
    let witness = zlattice::config_equivalent(&fa.matrix(), &fb.matrix())?;
    let coordinate_verdict =
        zlattice::config_embedding(&fa.coordinate_matrix(), &fb.matrix())?.is_some();
    Ok(WpsIsomorphism {
        reduced: (ra, rb),
        witness,
        coordinate_verdict,
    })
}

/// Multiset comparison of the reduced weights.
pub fn same_reduced_multiset(a: &WeightVector, b: &WeightVector) -> bool {
    let sorted = |w: &WeightVector| {
        let mut v = w.reduce().0;
        v.sort_unstable();
        v
    };
    sorted(a) == sorted(b)
}
