//! Root systems of the finite Cartan types.
//!
//! Roots are stored as coefficient vectors over the simple roots. All
//! pairings follow the convention fixed in [`crate::cartan`].

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::cartan::{CartanType, CartanTypeError, Family};

/// Coefficient vector of a root (or any root-lattice element) over the simple roots.
pub type Root = Vec<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootSystemError {
    #[error(transparent)]
    CartanType(#[from] CartanTypeError),
    #[error("coroot index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("vector has length {got}, expected rank {rank}")]
    LengthMismatch { got: usize, rank: usize },
    #[error("highest weight has a negative coefficient at position {0}")]
    NegativeCoefficient(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    positive_roots: Vec<Root>,
    #[serde(skip)]
    index: HashMap<Root, usize>,
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Self {
        let cartan = cartan_type.cartan_matrix();
        let symmetrizer =
            find_symmetrizer(&cartan, false).expect("tabulated Cartan matrices are symmetrizable");
        let positive_roots = reflection_closure(&cartan);
        let index = positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        RootSystem {
            cartan_type,
            cartan,
            symmetrizer,
            positive_roots,
            index,
        }
    }

    pub fn from_family(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        Ok(Self::new(CartanType::new(family, rank)?))
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive integers `d` with `d_i a_ij = d_j a_ji`, normalized to have gcd 1.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// Positive roots ordered by height, then by descending coefficient vector.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_positive_root(&self, root: &[i64]) -> bool {
        self.index.contains_key(root)
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut r = vec![0; self.rank()];
        r[i] = 1;
        r
    }

    pub fn highest_root(&self) -> &Root {
        self.positive_roots
            .last()
            .expect("root systems are nonempty")
    }

    /// `<root, coroot_j> = sum_i c_i a_ji`.
    pub fn pairing(&self, root: &[i64], coroot_index: usize) -> Result<i64, RootSystemError> {
        let n = self.rank();
        if coroot_index >= n {
            return Err(RootSystemError::IndexOutOfRange {
                index: coroot_index,
                rank: n,
            });
        }
        if root.len() != n {
            return Err(RootSystemError::LengthMismatch {
                got: root.len(),
                rank: n,
            });
        }
        Ok(pair(&self.cartan, root, coroot_index))
    }

    /// Fundamental-weight coordinates of a root-lattice element: all its coroot pairings.
    pub fn to_weight(&self, root: &[i64]) -> Result<Vec<i64>, RootSystemError> {
        (0..self.rank()).map(|j| self.pairing(root, j)).collect()
    }

    /// The symmetric form `(a, b) = sum_ij a_i b_j d_i a_ij`.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] * b[j] * self.symmetrizer[i] * self.cartan[i][j];
            }
        }
        s
    }

    /// Coefficients of the coroot of `root` over the simple coroots.
    pub fn coroot_coefficients(&self, root: &[i64]) -> Root {
        let norm = self.inner(root, root);
        root.iter()
            .zip(&self.symmetrizer)
            .map(|(&c, &d)| {
                let num = 2 * c * d;
                debug_assert_eq!(num % norm, 0);
                num / norm
            })
            .collect()
    }

    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }

    /// Dimension of the irreducible module with highest weight
    /// `sum_j lambda_j w_j`, by the Weyl dimension product.
    pub fn weyl_dim(&self, lambda: &[i64]) -> Result<BigInt, RootSystemError> {
        let n = self.rank();
        if lambda.len() != n {
            return Err(RootSystemError::LengthMismatch {
                got: lambda.len(),
                rank: n,
            });
        }
        if let Some(pos) = lambda.iter().position(|&l| l < 0) {
            return Err(RootSystemError::NegativeCoefficient(pos));
        }
        // <lambda + rho, coroot> / <rho, coroot>; the norm of the root cancels.
        let mut dim = BigRational::one();
        for root in &self.positive_roots {
            let mut num = 0i64;
            let mut den = 0i64;
            for i in 0..n {
                let w = root[i] * self.symmetrizer[i];
                num += (lambda[i] + 1) * w;
                den += w;
            }
            dim *= BigRational::new(BigInt::from(num), BigInt::from(den));
        }
        debug_assert!(dim.is_integer());
        Ok(dim.to_integer())
    }
}

pub(crate) fn pair(cartan: &[Vec<i64>], root: &[i64], j: usize) -> i64 {
    root.iter().zip(&cartan[j]).map(|(c, a)| c * a).sum()
}

fn reflection_closure(cartan: &[Vec<i64>]) -> Vec<Root> {
    let n = cartan.len();
    let mut seen: HashSet<Root> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut r = vec![0; n];
        r[i] = 1;
        seen.insert(r.clone());
        queue.push_back(r);
    }
    while let Some(root) = queue.pop_front() {
        for i in 0..n {
            let p = pair(cartan, &root, i);
            if p == 0 {
                continue;
            }
            let mut img = root.clone();
            img[i] -= p;
            if img.iter().all(|&c| c >= 0) && img.iter().any(|&c| c > 0) && seen.insert(img.clone())
            {
                queue.push_back(img);
            }
        }
        // Heights are bounded by the Coxeter number, far below this guard.
        assert!(
            seen.len() <= 2 * 120,
            "reflection closure failed to terminate"
        );
    }
    let mut roots: Vec<Root> = seen.into_iter().collect();
    roots.sort_by(|a, b| {
        RootSystem::height(a)
            .cmp(&RootSystem::height(b))
            .then_with(|| b.cmp(a))
    });
    roots
}

/// Find positive integers `d` with `d_i m_ij = d_j m_ji` (symmetrizable) or
/// `d_i m_ij = -d_j m_ji` (skew-symmetrizable). The result has gcd 1 on every
/// connected component.
pub fn find_symmetrizer(m: &[Vec<i64>], skew: bool) -> Option<Vec<i64>> {
    let n = m.len();
    if m.iter().any(|row| row.len() < n) {
        return None;
    }
    let sign = if skew { -1 } else { 1 };
    for i in 0..n {
        for j in 0..n {
            if (m[i][j] == 0) != (m[j][i] == 0) {
                return None;
            }
            if i != j && m[i][j] != 0 && (m[i][j] * m[j][i] * sign) < 0 {
                return None;
            }
        }
    }
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        let mut component = vec![start];
        d[start] = Some(BigRational::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i == j || m[i][j] == 0 {
                    continue;
                }
                // d_j = d_i m_ij / (sign * m_ji)
                let di = d[i].clone().unwrap();
                let want = di * BigRational::new(m[i][j].into(), (sign * m[j][i]).into());
                match &d[j] {
                    None => {
                        d[j] = Some(want);
                        component.push(j);
                        queue.push_back(j);
                    }
                    Some(dj) if *dj != want => return None,
                    Some(_) => {}
                }
            }
        }
        let lcm = component.iter().fold(BigInt::one(), |acc, &i| {
            num_integer::Integer::lcm(&acc, d[i].as_ref().unwrap().denom())
        });
        let scaled: Vec<BigInt> = component
            .iter()
            .map(|&i| (d[i].clone().unwrap() * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = scaled
            .iter()
            .fold(BigInt::from(0), |acc, x| num_integer::Integer::gcd(&acc, x));
        for (&i, s) in component.iter().zip(scaled) {
            d[i] = Some(BigRational::from_integer(s / &g));
        }
    }
    d.into_iter()
        .map(|x| x.and_then(|r| r.to_integer().to_i64()))
        .collect()
}
