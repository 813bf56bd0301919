//! Exact integer lattice tools: Hermite normal form and `GL_n(Z)` equivalence
//! of rational vector configurations.
//!
//! HNF convention: `H = U * M` with `U` unimodular acting on rows. `H` is upper
//! triangular with positive pivots on the diagonal, zero rows below the
//! pivots, and every entry above a pivot reduced into `[0, pivot)`.
//!
//! A configuration is a [`RationalMatrix`] whose columns are the vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Largest configuration accepted by [`config_equivalent`].
pub const MAX_CONFIG_VECTORS: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("matrix does not have full column rank")]
    RankDeficient,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vectors do not span the ambient space")]
    SpanDeficient,
    #[error("{count} vectors exceed the search limit of {limit}")]
    TooManyVectors { count: usize, limit: usize },
    #[error("rows have different lengths")]
    Ragged,
}

/// Dense matrix of exact rationals, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self, LatticeError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LatticeError::Ragged);
        }
        Ok(RationalMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Build from column vectors of a common length.
    pub fn from_columns(columns: &[Vec<BigRational>]) -> Result<Self, LatticeError> {
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(LatticeError::Ragged);
        }
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_int(m: &[Vec<BigInt>]) -> Result<Self, LatticeError> {
        Self::from_rows(
            m.iter()
                .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigRational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, LatticeError> {
        if self.cols != rhs.rows {
            return Err(LatticeError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        echelon(&mut rows).len()
    }

    pub fn det(&self) -> Option<BigRational> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = BigRational::one();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero());
            let Some(p) = p else {
                return Some(BigRational::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= &a[c][c];
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] / &a[c][c];
                for k in c..n {
                    let v = &a[r][k] - &f * &a[c][k];
                    a[r][k] = v;
                }
            }
        }
        Some(det)
    }

    pub fn inverse(&self) -> Option<RationalMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                r
            })
            .collect();
        let pivots = echelon(&mut a);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Self::from_rows(a.into_iter().map(|r| r[n..].to_vec()).collect()).ok()
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        if !self.is_integral() {
            return None;
        }
        Some(
            (0..self.rows)
                .map(|i| self.row(i).iter().map(|x| x.to_integer()).collect())
                .collect(),
        )
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn echelon(a: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for k in c..cols {
                let v = &a[i][k] - &f * &a[r][k];
                a[i][k] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn int_identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Integer determinant by fraction-free elimination.
pub fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn is_unimodular(m: &[Vec<BigInt>]) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && int_det(m).abs().is_one()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
}

/// Row-operation Hermite normal form of a full-column-rank integer matrix.
pub fn hnf(m: &[Vec<BigInt>]) -> Result<Hnf, LatticeError> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(LatticeError::Ragged);
    }
    if cols > rows {
        return Err(LatticeError::RankDeficient);
    }
    let mut h = m.to_vec();
    let mut u = int_identity(rows);
    for c in 0..cols {
        for k in c + 1..rows {
            if h[k][c].is_zero() {
                continue;
            }
            let a = h[c][c].clone();
            let b = h[k][c].clone();
            let e = a.extended_gcd(&b);
            let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
            // [[x, y], [-b/g, a/g]] has determinant one
            combine_rows(&mut h, c, k, &e.x, &e.y, &(-&bg), &ag);
            combine_rows(&mut u, c, k, &e.x, &e.y, &(-&bg), &ag);
        }
        if h[c][c].is_zero() {
            return Err(LatticeError::RankDeficient);
        }
        if h[c][c].is_negative() {
            for row in [&mut h[c], &mut u[c]] {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
            }
        }
        for k in 0..c {
            let q = h[k][c].div_floor(&h[c][c]);
            if q.is_zero() {
                continue;
            }
            let (hk, hc) = (h[k].clone(), h[c].clone());
            h[k] = sub_scaled(&hk, &hc, &q);
            let (uk, uc) = (u[k].clone(), u[c].clone());
            u[k] = sub_scaled(&uk, &uc, &q);
        }
    }
    Ok(Hnf { h, u })
}

fn combine_rows(
    m: &mut [Vec<BigInt>],
    i: usize,
    k: usize,
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    d: &BigInt,
) {
    let ri = m[i].clone();
    let rk = m[k].clone();
    m[i] = ri.iter().zip(&rk).map(|(x, y)| a * x + b * y).collect();
    m[k] = ri.iter().zip(&rk).map(|(x, y)| c * x + d * y).collect();
}

fn sub_scaled(a: &[BigInt], b: &[BigInt], q: &BigInt) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - q * y).collect()
}

/// Witness that `phi * v_i = v'_{perm[i]}` for every column `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub phi: IntMatrix,
    pub perm: Vec<usize>,
}

/// Decide whether some `phi` in `GL_n(Z)` maps the columns of `v` bijectively
/// onto the columns of `w`.
pub fn config_equivalent(
    v: &RationalMatrix,
    w: &RationalMatrix,
) -> Result<Option<Equivalence>, LatticeError> {
    if v.cols() != w.cols() {
        return Err(LatticeError::DimensionMismatch(format!(
            "{} vectors versus {}",
            v.cols(),
            w.cols()
        )));
    }
    config_embedding(v, w)
}

/// Decide whether some `phi` in `GL_n(Z)` maps the columns of `v` injectively
/// into the columns of `w`.
///
/// A basis `B` of columns of `v` is fixed; every injective assignment of `B`
/// into the columns of `w` determines a unique candidate `phi`, which is then
/// tested for integrality, unit determinant and the remaining columns.
pub fn config_embedding(
    v: &RationalMatrix,
    w: &RationalMatrix,
) -> Result<Option<Equivalence>, LatticeError> {
    if v.rows() != w.rows() || v.cols() > w.cols() {
        return Err(LatticeError::DimensionMismatch(format!(
            "{}x{} into {}x{}",
            v.rows(),
            v.cols(),
            w.rows(),
            w.cols()
        )));
    }
    let n = v.rows();
    if w.cols() > MAX_CONFIG_VECTORS {
        return Err(LatticeError::TooManyVectors {
            count: w.cols(),
            limit: MAX_CONFIG_VECTORS,
        });
    }
    if v.rank() < n || w.rank() < n {
        return Err(LatticeError::SpanDeficient);
    }
    let mut t = v.to_rows();
    let basis = echelon(&mut t);
    let vb = RationalMatrix::from_columns(&basis.iter().map(|&j| v.column(j)).collect::<Vec<_>>())?;
    let vb_inv = vb.inverse().expect("basis columns are independent");
    let vcols = v.columns();
    let wcols = w.columns();

    let mut image = Vec::with_capacity(n);
    let mut used = vec![false; wcols.len()];
    let ctx = Search {
        basis: &basis,
        vb_inv: &vb_inv,
        vcols: &vcols,
        wcols: &wcols,
    };
    Ok(ctx.run(&mut image, &mut used))
}

struct Search<'a> {
    basis: &'a [usize],
    vb_inv: &'a RationalMatrix,
    vcols: &'a [Vec<BigRational>],
    wcols: &'a [Vec<BigRational>],
}

impl Search<'_> {
    fn run(&self, image: &mut Vec<usize>, used: &mut [bool]) -> Option<Equivalence> {
        if image.len() == self.basis.len() {
            return self.check(image, used);
        }
        // lengths are not preserved, but zero vectors must map to zero vectors
        let src_zero = self.vcols[self.basis[image.len()]]
            .iter()
            .all(Zero::is_zero);
        for j in 0..self.wcols.len() {
            if used[j] || self.wcols[j].iter().all(Zero::is_zero) != src_zero {
                continue;
            }
            used[j] = true;
            image.push(j);
            if let Some(e) = self.run(image, used) {
                return Some(e);
            }
            image.pop();
            used[j] = false;
        }
        None
    }

    fn check(&self, image: &[usize], used: &[bool]) -> Option<Equivalence> {
        let target = RationalMatrix::from_columns(
            &image
                .iter()
                .map(|&j| self.wcols[j].clone())
                .collect::<Vec<_>>(),
        )
        .ok()?;
        let phi = target.mul(self.vb_inv).ok()?;
        let phi_int = phi.to_int()?;
        if !is_unimodular(&phi_int) {
            return None;
        }
        let m = self.vcols.len();
        let mut perm = vec![usize::MAX; m];
        let targets = self.wcols.len();
        for (&b, &j) in self.basis.iter().zip(image) {
            perm[b] = j;
        }
        let mut taken = used.to_vec();
        for i in 0..m {
            if perm[i] != usize::MAX {
                continue;
            }
            let img = phi.mul_vec(&self.vcols[i]);
            let j = (0..targets).find(|&j| !taken[j] && self.wcols[j] == img)?;
            taken[j] = true;
            perm[i] = j;
        }
        Some(Equivalence { phi: phi_int, perm })
    }
}
