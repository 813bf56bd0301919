//! Invariants of weighted homogeneous spaces `G/P[psi]`.
//!
//! A parabolic is given by its Levi set `I` of simple-root indices (0-based);
//! `J` is the complement. The roots of the nilradical are
//! `R(P)_+ = { alpha in R_+ : supp(alpha) not inside I }`, which index the cell
//! coordinates of `G/P`. A weight system assigns `psi_i = <alpha_i, H> >= 1` to
//! every simple root and extends linearly: `<alpha, H> = sum_i c_i psi_i`.
//!
//! Cells are indexed by minimal representatives of `W_I \ W` (see
//! [`WeylGroup::min_coset_reps`]); the inversion set of such a representative
//! lies in `R(P)_+`, and the longest one has inversion set exactly `R(P)_+`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::bruhat::{BruhatError, WeylElement, WeylGroup};
use crate::rootsys::{Root, RootSystem};
use crate::zlattice::{self, Equivalence, LatticeError, RationalMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WhsError {
    #[error("weight of simple root {index} is {value}; weights must be at least 1")]
    NonPositiveWeight { index: usize, value: i64 },
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("{0} is not a minimal coset representative")]
    NotMinimalRepresentative(String),
    #[error(transparent)]
    Bruhat(#[from] BruhatError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Values `psi_i = <alpha_i, H>` on the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightSystem(Vec<i64>);

impl WeightSystem {
    pub fn new(psi: &[i64]) -> Result<Self, WhsError> {
        if let Some((index, &value)) = psi.iter().enumerate().find(|(_, &v)| v < 1) {
            return Err(WhsError::NonPositiveWeight { index, value });
        }
        Ok(WeightSystem(psi.to_vec()))
    }

    pub fn uniform(rank: usize) -> Self {
        WeightSystem(vec![1; rank])
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    /// `<alpha, H>` for a root given by simple-root coefficients.
    pub fn on_root(&self, root: &[i64]) -> i64 {
        root.iter().zip(&self.0).map(|(c, p)| c * p).sum()
    }

    pub fn scaled(&self, k: i64) -> Result<Self, WhsError> {
        WeightSystem::new(&self.0.iter().map(|p| p * k).collect::<Vec<_>>())
    }
}

#[derive(Clone, Debug)]
pub struct ParabolicData {
    rs: RootSystem,
    levi: Vec<usize>,
    j: Vec<usize>,
    nilradical: Vec<Root>,
}

impl ParabolicData {
    pub fn new(rs: RootSystem, levi: &[usize]) -> Result<Self, WhsError> {
        let n = rs.rank();
        if let Some(&index) = levi.iter().find(|&&i| i >= n) {
            return Err(WhsError::IndexOutOfRange { index, rank: n });
        }
        let mut levi = levi.to_vec();
        levi.sort_unstable();
        levi.dedup();
        let j = (0..n).filter(|i| !levi.contains(i)).collect();
        let nilradical = rs
            .positive_roots()
            .iter()
            .filter(|r| {
                r.iter()
                    .enumerate()
                    .any(|(i, &c)| c != 0 && !levi.contains(&i))
            })
            .cloned()
            .collect();
        Ok(ParabolicData {
            rs,
            levi,
            j,
            nilradical,
        })
    }

    pub fn borel(rs: RootSystem) -> Self {
        ParabolicData::new(rs, &[]).expect("empty Levi set")
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn levi(&self) -> &[usize] {
        &self.levi
    }

    /// Simple roots outside the Levi.
    pub fn j(&self) -> &[usize] {
        &self.j
    }

    /// `R(P)_+`, in the root system's order.
    pub fn nilradical_roots(&self) -> &[Root] {
        &self.nilradical
    }

    /// Complex dimension of `G/P`.
    pub fn dim(&self) -> usize {
        self.nilradical.len()
    }

    fn check_psi(&self, psi: &WeightSystem) -> Result<(), WhsError> {
        check_len(self.rs.rank(), psi.values().len())
    }
}

fn check_len(expected: usize, got: usize) -> Result<(), WhsError> {
    if expected == got {
        Ok(())
    } else {
        Err(WhsError::LengthMismatch { expected, got })
    }
}

/// Torus weights `<alpha, H>` on the coordinates of the cell of `w`.
pub fn cell_torus_weights(
    pd: &ParabolicData,
    psi: &WeightSystem,
    w: &WeylElement,
) -> Result<Vec<(Root, i64)>, WhsError> {
    pd.check_psi(psi)?;
    let wg = WeylGroup::new(&pd.rs);
    if !wg.is_min_coset_rep(&pd.levi, w) {
        return Err(WhsError::NotMinimalRepresentative(w.to_string()));
    }
    let inv = wg.inversion_set(w);
    Ok(pd
        .nilradical
        .iter()
        .filter(|r| inv.contains(r))
        .map(|r| (r.clone(), psi.on_root(r)))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub rep: WeylElement,
    pub weights: Vec<(Root, i64)>,
    /// Order of the chart group, the product of the weights.
    pub order: BigInt,
    pub singular: bool,
}

/// One chart per Bruhat cell, ordered by cell dimension.
pub fn orbifold_charts(
    pd: &ParabolicData,
    psi: &WeightSystem,
    cap: usize,
) -> Result<Vec<Chart>, WhsError> {
    pd.check_psi(psi)?;
    let wg = WeylGroup::new(&pd.rs);
    wg.min_coset_reps(&pd.levi, cap)?
        .into_iter()
        .map(|rep| {
            let weights = cell_torus_weights(pd, psi, &rep)?;
            let order: BigInt = weights.iter().map(|(_, w)| BigInt::from(*w)).product();
            let singular = !order.is_one();
            Ok(Chart {
                rep,
                weights,
                order,
                singular,
            })
        })
        .collect()
}

/// `prod over R(P)_+ of <alpha, H>`.
pub fn extension_degree(pd: &ParabolicData, psi: &WeightSystem) -> Result<BigInt, WhsError> {
    pd.check_psi(psi)?;
    Ok(pd
        .nilradical
        .iter()
        .map(|r| BigInt::from(psi.on_root(r)))
        .product())
}

/// Rational rays in the coroot lattice, written over the simple coroots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhsFan {
    /// The simple root or nilradical root each ray belongs to.
    pub labels: Vec<Root>,
    pub rays: Vec<Vec<BigRational>>,
}

impl WhsFan {
    pub fn matrix(&self) -> RationalMatrix {
        RationalMatrix::from_columns(&self.rays).expect("rays share a dimension")
    }
}

/// Rays `coroot_i / psi_i` over the simple roots, or `coroot(alpha) / <alpha, H>`
/// over `R(P)_+` when `extended`.
pub fn whs_fan(pd: &ParabolicData, psi: &WeightSystem, extended: bool) -> Result<WhsFan, WhsError> {
    pd.check_psi(psi)?;
    let labels: Vec<Root> = if extended {
        pd.nilradical.clone()
    } else {
        (0..pd.rs.rank()).map(|i| pd.rs.simple_root(i)).collect()
    };
    let rays = labels
        .iter()
        .map(|r| {
            let d = BigInt::from(psi.on_root(r));
            pd.rs
                .coroot_coefficients(r)
                .into_iter()
                .map(|c| BigRational::new(c.into(), d.clone()))
                .collect()
        })
        .collect();
    Ok(WhsFan { labels, rays })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhsIsomorphism {
    /// Witness exchanging the simple-coroot fans.
    pub witness: Option<Equivalence>,
    /// Verdict on the fans over `R(P)_+`; `None` when that configuration is
    /// too large to search.
    pub extended_verdict: Option<bool>,
}

impl WhsIsomorphism {
    pub fn isomorphic(&self) -> bool {
        self.witness.is_some()
    }

    /// Whether the extended-fan test reached the same verdict (vacuous when skipped).
    pub fn tests_agree(&self) -> bool {
        self.extended_verdict.is_none_or(|v| v == self.isomorphic())
    }
}

pub fn whs_isomorphic(
    pd: &ParabolicData,
    psi1: &WeightSystem,
    psi2: &WeightSystem,
) -> Result<WhsIsomorphism, WhsError> {
    let a = whs_fan(pd, psi1, false)?;
    let b = whs_fan(pd, psi2, false)?;
    let witness = zlattice::config_equivalent(&a.matrix(), &b.matrix())?;
    let ea = whs_fan(pd, psi1, true)?;
    let eb = whs_fan(pd, psi2, true)?;
    let extended_verdict = if ea.rays.len() > zlattice::MAX_CONFIG_VECTORS {
        None
    } else {
        match zlattice::config_equivalent(&ea.matrix(), &eb.matrix()) {
            Ok(e) => Some(e.is_some()),
            // a nilradical that does not span cannot be compared this way
            Err(LatticeError::SpanDeficient) => None,
            Err(e) => return Err(e.into()),
        }
    };
    Ok(WhsIsomorphism {
        witness,
        extended_verdict,
    })
}

/// A morphism `G/P[psi1] -> G/P[psi2]` exists iff every `psi1_i` divides `psi2_i`.
pub fn whs_morphism_exists(
    pd: &ParabolicData,
    psi1: &WeightSystem,
    psi2: &WeightSystem,
) -> Result<bool, WhsError> {
    pd.check_psi(psi1)?;
    pd.check_psi(psi2)?;
    Ok(psi1
        .values()
        .iter()
        .zip(psi2.values())
        .all(|(a, b)| b % a == 0))
}

/// First Chern coefficients of `L_chi`, where `chi` lists the
/// fundamental-weight coordinates `<chi, coroot_j>` for `j` in `J`: the
/// coefficient of `[w_j]` is `-<chi, coroot_j> psi_j`.
pub fn chern_coeffs(
    pd: &ParabolicData,
    psi: &WeightSystem,
    chi: &[BigRational],
) -> Result<Vec<BigRational>, WhsError> {
    pd.check_psi(psi)?;
    check_len(pd.j.len(), chi.len())?;
    Ok(pd
        .j
        .iter()
        .zip(chi)
        .map(|(&j, x)| -x * BigRational::from_integer(psi.values()[j].into()))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub enum RhoConvention {
    /// `rho` is the sum of the roots in `R(P)_+`.
    #[default]
    FullSum,
    /// `rho` is half that sum.
    HalfSum,
}

/// `rho` over the simple roots, as a rational vector.
pub fn rho(pd: &ParabolicData, convention: RhoConvention) -> Vec<BigRational> {
    let n = pd.rs.rank();
    let mut sum = vec![0i64; n];
    for r in &pd.nilradical {
        for (s, c) in sum.iter_mut().zip(r) {
            *s += c;
        }
    }
    let scale = match convention {
        RhoConvention::FullSum => BigRational::one(),
        RhoConvention::HalfSum => BigRational::new(1.into(), 2.into()),
    };
    sum.into_iter()
        .map(|s| BigRational::from_integer(s.into()) * &scale)
        .collect()
}

/// Chern coefficients of the canonical bundle, with `chi = rho`.
pub fn canonical_chern(
    pd: &ParabolicData,
    psi: &WeightSystem,
    convention: RhoConvention,
) -> Result<Vec<BigRational>, WhsError> {
    let r = rho(pd, convention);
    let a = pd.rs.cartan();
    let chi: Vec<BigRational> =
        pd.j.iter()
            .map(|&j| {
                r.iter()
                    .enumerate()
                    .map(|(i, c)| c * BigRational::from_integer(a[j][i].into()))
                    .sum()
            })
            .collect();
    chern_coeffs(pd, psi, &chi)
}

/// Strict positivity of every coefficient.
pub fn kahler_cone_check<T: Signed>(c: &[T]) -> bool {
    c.iter().all(Signed::is_positive)
}

/// `a_i > a_j` whenever `i < j`.
pub fn flag_bundle_check<T: PartialOrd>(a: &[T]) -> bool {
    a.windows(2).all(|w| w[0] > w[1])
}

/// Integer view of a rational vector, when every entry is integral.
pub fn as_integers(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

impl Chart {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }
}

/// Degree computed from the top chart, for cross-checking [`extension_degree`].
pub fn top_chart_order(charts: &[Chart]) -> BigInt {
    charts
        .iter()
        .max_by_key(|c| c.dim())
        .map_or_else(BigInt::one, |c| c.order.clone())
}
