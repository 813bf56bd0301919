//! Numeric check of invariant Kähler potentials on big cells.
//!
//! The potential is `phi(z) = sum_j c_j log |g(z) . v_j|`, with `v_j` the
//! highest vector `e_1 ^ ... ^ e_j` of the `j`-th exterior power and `g(z)` a
//! unipotent matrix parameterizing the big cell. Its complex Hessian
//! `d^2 phi / dz_i dzbar_j` is estimated by central differences.

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{rngs::StdRng, Rng, SeedableRng};
use serde::Serialize;
use thiserror::Error;

use itertools::Itertools;

pub type C64 = Complex<f64>;

pub const DEFAULT_STEP: f64 = 1e-4;
pub const HERMITIAN_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum KahlerError {
    #[error("SL_n needs n >= 2, got {0}")]
    BadRank(usize),
    #[error("{got} coefficients for {expected} fundamental weights")]
    CoefficientCount { expected: usize, got: usize },
    #[error("coefficient {0} is not finite")]
    NonFinite(f64),
    #[error("{got} coordinates for a big cell of dimension {expected}")]
    CoordinateCount { expected: usize, got: usize },
    #[error("step {0} must be positive")]
    BadStep(f64),
    #[error("Hermitian residual {0:e} exceeds tolerance; step too large")]
    StepTooLarge(f64),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Group {
    Sl(usize),
    Sp4,
}

impl Group {
    pub fn parse(s: &str) -> Result<Group, KahlerError> {
        let lower = s.to_ascii_lowercase();
        if lower == "sp4" {
            return Ok(Group::Sp4);
        }
        lower
            .strip_prefix("sl")
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n >= 2)
            .map(Group::Sl)
            .ok_or(KahlerError::UnknownGroup(s.to_string()))
    }

    /// Number of fundamental weights.
    pub fn rank(&self) -> usize {
        match self {
            Group::Sl(n) => n - 1,
            Group::Sp4 => 2,
        }
    }

    /// Complex dimension of the big cell.
    pub fn cell_dim(&self) -> usize {
        match self {
            Group::Sl(n) => n * (n - 1) / 2,
            Group::Sp4 => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PotentialSpec {
    group: Group,
    coeffs: Vec<f64>,
}

impl PotentialSpec {
    pub fn new(group: Group, coeffs: Vec<f64>) -> Result<Self, KahlerError> {
        if let Group::Sl(n) = group {
            if n < 2 {
                return Err(KahlerError::BadRank(n));
            }
        }
        if coeffs.len() != group.rank() {
            return Err(KahlerError::CoefficientCount {
                expected: group.rank(),
                got: coeffs.len(),
            });
        }
        if let Some(&c) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(KahlerError::NonFinite(c));
        }
        Ok(PotentialSpec { group, coeffs })
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn scaled(&self, k: f64) -> PotentialSpec {
        PotentialSpec {
            group: self.group,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    fn check_point(&self, z: &[C64]) -> Result<(), KahlerError> {
        let expected = self.group.cell_dim();
        if z.len() != expected {
            return Err(KahlerError::CoordinateCount {
                expected,
                got: z.len(),
            });
        }
        Ok(())
    }
}

/// Nilpotent matrix of the `Sp4` big cell, as rows.
pub fn sp4_nilpotent<T: Clone + Zero + std::ops::Neg<Output = T>>(x: &[T; 4]) -> [[T; 4]; 4] {
    let o = T::zero;
    let [x1, x2, x3, x4] = x.clone();
    [
        [o(), o(), o(), o()],
        [x1.clone(), o(), o(), o()],
        [x2, x3.clone(), o(), -x1],
        [x3, x4, o(), o()],
    ]
}

/// `exp(M) = I + M + M^2/2 + M^3/6` for the `Sp4` nilpotent `M`, exactly.
pub fn nilpotent_exp(x: &[BigRational; 4]) -> [[BigRational; 4]; 4] {
    let m = sp4_nilpotent(x);
    let mul = |a: &[[BigRational; 4]; 4], b: &[[BigRational; 4]; 4]| {
        let mut c: [[BigRational; 4]; 4] = Default::default();
        for i in 0..4 {
            for j in 0..4 {
                c[i][j] = (0..4).map(|k| &a[i][k] * &b[k][j]).sum();
            }
        }
        c
    };
    let m2 = mul(&m, &m);
    let m3 = mul(&m2, &m);
    let half = BigRational::new(1.into(), 2.into());
    let sixth = BigRational::new(1.into(), 6.into());
    let mut e: [[BigRational; 4]; 4] = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            let id = if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            e[i][j] = id + &m[i][j] + &half * &m2[i][j] + &sixth * &m3[i][j];
        }
    }
    e
}

/// `P_1 = x_2 - x_1^2 x_4 / 6`, `P_2 = x_3 + x_1 x_4 / 2`, `P_3 = x_3 - x_1 x_4 / 2`.
pub fn sp4_polynomials(z: &[C64]) -> (C64, C64, C64) {
    let (z1, z2, z3, z4) = (z[0], z[1], z[2], z[3]);
    (
        z2 - z1 * z1 * z4 / 6.0,
        z3 + z1 * z4 / 2.0,
        z3 - z1 * z4 / 2.0,
    )
}

/// Big-cell matrix `g(z)` by direct series evaluation.
pub fn cell_matrix(group: Group, z: &[C64]) -> DMatrix<C64> {
    match group {
        Group::Sl(n) => {
            let mut g = DMatrix::<C64>::identity(n, n);
            for (k, (i, j)) in (0..n).tuple_combinations().map(|(j, i)| (i, j)).enumerate() {
                g[(i, j)] = z[k];
            }
            g
        }
        Group::Sp4 => {
            let rows = sp4_nilpotent(&[z[0], z[1], z[2], z[3]]);
            let m = DMatrix::from_fn(4, 4, |i, j| rows[i][j]);
            let m2 = &m * &m;
            let m3 = &m2 * &m;
            DMatrix::<C64>::identity(4, 4) + &m + m2 * C64::from(0.5) + m3 * C64::from(1.0 / 6.0)
        }
    }
}

/// Squared norm of `g . (e_1 ^ ... ^ e_k)`: the sum of squared `k x k`
/// minors of the first `k` columns.
fn wedge_norm_sq(g: &DMatrix<C64>, k: usize) -> f64 {
    let n = g.nrows();
    (0..n)
        .combinations(k)
        .map(|rows| {
            let sub = DMatrix::from_fn(k, k, |a, b| g[(rows[a], b)]);
            sub.determinant().norm_sqr()
        })
        .sum()
}

/// Potential through the matrix action on exterior powers.
pub fn potential_eval(spec: &PotentialSpec, z: &[C64]) -> Result<f64, KahlerError> {
    spec.check_point(z)?;
    Ok(log_norms(spec.group, z)
        .iter()
        .zip(&spec.coeffs)
        .map(|(l, c)| c * l)
        .sum())
}

/// `Sp4` potential from the closed-form entries `P_1, P_2, P_3`.
pub fn sp4_potential_closed_form(c: &[f64; 2], z: &[C64]) -> f64 {
    let (p1, p2, p3) = sp4_polynomials(z);
    let one = C64::from(1.0);
    let col1 = [one, z[0], p1, p2];
    let col2 = [C64::from(0.0), one, p3, z[3]];
    let first = col1.iter().map(|v| v.norm_sqr()).sum::<f64>();
    let second = (0..4)
        .tuple_combinations()
        .map(|(i, j)| (col1[i] * col2[j] - col1[j] * col2[i]).norm_sqr())
        .sum::<f64>();
    0.5 * c[0] * first.ln() + 0.5 * c[1] * second.ln()
}

/// The same value with the `1 / 2 pi` factor of the usual normalization.
pub fn normalized_potential(spec: &PotentialSpec, z: &[C64]) -> Result<f64, KahlerError> {
    Ok(potential_eval(spec, z)? / (2.0 * std::f64::consts::PI))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HessianReport {
    pub posdef: bool,
    pub min_eig: f64,
    pub max_eig: f64,
    pub residual: f64,
    #[serde(skip)]
    pub matrix: DMatrix<C64>,
}

/// `log |g(z) . v_j|` for each fundamental index `j`.
fn log_norms(group: Group, z: &[C64]) -> Vec<f64> {
    let g = cell_matrix(group, z);
    (1..=group.rank())
        .map(|k| 0.5 * wedge_norm_sq(&g, k).ln())
        .collect()
}

/// Complex Hessian `H_ij = d^2 phi / dz_i dzbar_j` by central differences
/// on real coordinates, before any symmetrization. Each fundamental term is
/// differenced separately and then combined with the coefficients.
pub fn complex_hessian(
    spec: &PotentialSpec,
    z0: &[C64],
    h: f64,
) -> Result<DMatrix<C64>, KahlerError> {
    spec.check_point(z0)?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(KahlerError::BadStep(h));
    }
    let n = z0.len();
    let f = |shift: &[(usize, f64)]| {
        let mut z = z0.to_vec();
        for &(a, s) in shift {
            if a < n {
                z[a].re += s;
            } else {
                z[a - n].im += s;
            }
        }
        log_norms(spec.group, &z)
    };
    let f0 = f(&[]);
    let d2 = |a: usize, b: usize| -> Vec<f64> {
        if a == b {
            let (p, m) = (f(&[(a, h)]), f(&[(a, -h)]));
            (0..f0.len())
                .map(|t| (p[t] - 2.0 * f0[t] + m[t]) / (h * h))
                .collect()
        } else {
            let pp = f(&[(a, h), (b, h)]);
            let pm = f(&[(a, h), (b, -h)]);
            let mp = f(&[(a, -h), (b, h)]);
            let mm = f(&[(a, -h), (b, -h)]);
            (0..f0.len())
                .map(|t| (pp[t] - pm[t] - mp[t] + mm[t]) / (4.0 * h * h))
                .collect()
        }
    };
    let combine = |v: Vec<f64>| v.iter().zip(&spec.coeffs).map(|(x, c)| x * c).sum::<f64>();
    // d/dz d/dzbar = (d_x - i d_y)(d_x + i d_y) / 4
    Ok(DMatrix::from_fn(n, n, |i, j| {
        let re = combine(d2(i, j)) + combine(d2(n + i, n + j));
        let im = combine(d2(i, n + j)) - combine(d2(n + i, j));
        C64::new(re, im) / 4.0
    }))
}

/// Positive-definiteness of the complex Hessian at `z0`.
pub fn hessian_posdef(
    spec: &PotentialSpec,
    z0: &[C64],
    h: f64,
) -> Result<HessianReport, KahlerError> {
    let m = complex_hessian(spec, z0, h)?;
    let residual = (&m - m.adjoint()).norm();
    if residual > HERMITIAN_TOLERANCE {
        return Err(KahlerError::StepTooLarge(residual));
    }
    let herm = (&m + m.adjoint()) * C64::from(0.5);
    let eig = SymmetricEigen::new(herm).eigenvalues;
    let min_eig = eig.iter().copied().fold(f64::INFINITY, f64::min);
    let max_eig = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(HessianReport {
        posdef: min_eig > HERMITIAN_TOLERANCE,
        min_eig,
        max_eig,
        residual,
        matrix: m,
    })
}

/// Seeded point with `|z| <= radius` in the Euclidean norm of `C^d`.
pub fn sample_point(rng: &mut impl Rng, dim: usize, radius: f64) -> Vec<C64> {
    let mut z: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = z.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let scale = radius * rng.gen_range(0.0..1.0f64) / norm.max(f64::MIN_POSITIVE);
    z.iter_mut().for_each(|v| *v *= scale);
    z
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub group: Group,
    pub coeffs: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    /// Positive definite at every sample.
    pub posdef: bool,
    /// Negative definite at every sample.
    pub negdef: bool,
    pub min_eig: f64,
    pub max_eig: f64,
    pub max_residual: f64,
}

/// Hessian test at `samples` seeded points with `|z| <= 1`; the first point is the origin.
pub fn sweep(spec: &PotentialSpec, samples: usize, seed: u64) -> Result<SweepReport, KahlerError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let dim = spec.group.cell_dim();
    let mut out = SweepReport {
        group: spec.group,
        coeffs: spec.coeffs.clone(),
        samples,
        seed,
        posdef: true,
        negdef: true,
        min_eig: f64::INFINITY,
        max_eig: f64::NEG_INFINITY,
        max_residual: 0.0,
    };
    for s in 0..samples {
        let z = if s == 0 {
            vec![C64::from(0.0); dim]
        } else {
            sample_point(&mut rng, dim, 1.0)
        };
        let r = hessian_posdef(spec, &z, DEFAULT_STEP)?;
        out.posdef &= r.posdef;
        out.negdef &= r.max_eig < -HERMITIAN_TOLERANCE;
        out.min_eig = out.min_eig.min(r.min_eig);
        out.max_eig = out.max_eig.max(r.max_eig);
        out.max_residual = out.max_residual.max(r.residual);
    }
    Ok(out)
}
