//! Weighted quivers: weight mutation, periodic weight functions,
//! dual-number exchange relations and graded flag-minor relations.
//!
//! Arrow convention as in [`crate::cluster`]: `b_ik > 0` means `i -> k`.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::Family;
use crate::cluster::{self, ClusterError};
use crate::rootsys::{find_symmetrizer, RootSystem};
use crate::symlaurent::{DualRational, MultiPoly, MultiRational, SymError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("malformed quiver: {0}")]
    Shape(String),
    #[error("exchange matrix is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("dual exchange needs a skew-symmetric matrix")]
    NotSkewSymmetric,
    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),
    #[error("vertex {index} out of range for {size} vertices")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("{0:?} is not a permutation of the vertices")]
    NotPermutation(Vec<usize>),
    #[error("the mutation sequence does not return the quiver to its permuted form")]
    QuiverNotPeriodic,
    #[error(transparent)]
    Sym(#[from] SymError),
}

impl From<ClusterError> for QuiverError {
    fn from(e: ClusterError) -> Self {
        match e {
            ClusterError::NotSkewSymmetrizable => QuiverError::NotSkewSymmetrizable,
            other => QuiverError::Shape(other.to_string()),
        }
    }
}

#[derive(Deserialize)]
struct RawQuiver {
    b: Vec<Vec<i64>>,
    w: Vec<i64>,
    #[serde(default)]
    frozen: Vec<usize>,
}

/// Square exchange matrix on all vertices, vertex weights and frozen set.
///
/// Entries between two frozen vertices are dropped (stored as zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawQuiver")]
pub struct WeightedQuiver {
    b: Vec<Vec<i64>>,
    w: Vec<i64>,
    frozen: Vec<usize>,
}

impl TryFrom<RawQuiver> for WeightedQuiver {
    type Error = QuiverError;

    fn try_from(r: RawQuiver) -> Result<Self, QuiverError> {
        WeightedQuiver::new(r.b, r.w, r.frozen)
    }
}

impl WeightedQuiver {
    pub fn new(mut b: Vec<Vec<i64>>, w: Vec<i64>, frozen: Vec<usize>) -> Result<Self, QuiverError> {
        let n = b.len();
        if b.iter().any(|r| r.len() != n) {
            return Err(QuiverError::Shape("b must be square".into()));
        }
        if w.len() != n {
            return Err(QuiverError::Shape(format!(
                "{} weights for {n} vertices",
                w.len()
            )));
        }
        if let Some(&f) = frozen.iter().find(|&&f| f >= n) {
            return Err(QuiverError::IndexOutOfRange { index: f, size: n });
        }
        let frozen: Vec<usize> = frozen
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for &i in &frozen {
            for &j in &frozen {
                b[i][j] = 0;
            }
        }
        if (0..n).any(|i| b[i][i] != 0) || find_symmetrizer(&b, true).is_none() {
            return Err(QuiverError::NotSkewSymmetrizable);
        }
        Ok(WeightedQuiver { b, w, frozen })
    }

    /// Quiver with no frozen vertices.
    pub fn unfrozen(b: Vec<Vec<i64>>, w: Vec<i64>) -> Result<Self, QuiverError> {
        Self::new(b, w, Vec::new())
    }

    pub fn b(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn weights(&self) -> &[i64] {
        &self.w
    }

    pub fn frozen(&self) -> &[usize] {
        &self.frozen
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn is_mutable(&self, k: usize) -> bool {
        k < self.len() && !self.frozen.contains(&k)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.b[i][j] == -self.b[j][i]))
    }

    fn check_mutable(&self, k: usize) -> Result<(), QuiverError> {
        if k >= self.len() {
            Err(QuiverError::IndexOutOfRange {
                index: k,
                size: self.len(),
            })
        } else if self.frozen.contains(&k) {
            Err(QuiverError::FrozenVertex(k))
        } else {
            Ok(())
        }
    }

    /// `w_i -> w_i + max(b_ik, 0) w_k` for `i != k`, then `w_k -> -w_k`;
    /// the matrix mutates as usual.
    pub fn mutate(&self, k: usize) -> Result<WeightedQuiver, QuiverError> {
        self.check_mutable(k)?;
        let mut b = cluster::mutate_rows(&self.b, k);
        for &i in &self.frozen {
            for &j in &self.frozen {
                b[i][j] = 0;
            }
        }
        let w = mutate_weights(&self.b, &self.w, k);
        Ok(WeightedQuiver {
            b,
            w,
            frozen: self.frozen.clone(),
        })
    }

    /// Mutation together with whether mutating twice at `k` restores the weights.
    pub fn mutate_report(&self, k: usize) -> Result<(WeightedQuiver, bool), QuiverError> {
        let once = self.mutate(k)?;
        let twice = once.mutate(k)?;
        Ok((once, twice.w == self.w))
    }

    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<WeightedQuiver, QuiverError> {
        seq.iter().try_fold(self.clone(), |q, &k| q.mutate(k))
    }

    /// The quiver relabelled so that vertex `i` takes the role of `t[i]`:
    /// `b'_ij = b_{t(i) t(j)}` and `w'_i = w_{t(i)}`.
    pub fn permuted(&self, t: &[usize]) -> Result<WeightedQuiver, QuiverError> {
        check_permutation(t, self.len())?;
        let b = t
            .iter()
            .map(|&i| t.iter().map(|&j| self.b[i][j]).collect())
            .collect();
        let w = t.iter().map(|&i| self.w[i]).collect();
        let mut frozen: Vec<usize> = self
            .frozen
            .iter()
            .map(|&f| t.iter().position(|&x| x == f).expect("permutation"))
            .collect();
        frozen.sort_unstable();
        Ok(WeightedQuiver { b, w, frozen })
    }

    pub fn with_weights(&self, w: Vec<i64>) -> Result<WeightedQuiver, QuiverError> {
        if w.len() != self.len() {
            return Err(QuiverError::Shape(format!(
                "{} weights for {} vertices",
                w.len(),
                self.len()
            )));
        }
        Ok(WeightedQuiver { w, ..self.clone() })
    }

    /// Column `k` of `b` restricted to the orientation used by exchange relations.
    pub fn column(&self, k: usize) -> Vec<i64> {
        self.b.iter().map(|r| r[k]).collect()
    }
}

fn mutate_weights(b: &[Vec<i64>], w: &[i64], k: usize) -> Vec<i64> {
    w.iter()
        .enumerate()
        .map(|(i, &wi)| {
            if i == k {
                -wi
            } else {
                wi + b[i][k].max(0) * w[k]
            }
        })
        .collect()
}

fn check_permutation(t: &[usize], n: usize) -> Result<(), QuiverError> {
    let mut s = t.to_vec();
    s.sort_unstable();
    if s != (0..n).collect::<Vec<_>>() {
        return Err(QuiverError::NotPermutation(t.to_vec()));
    }
    Ok(())
}

/// Primitive quiver `P_N^(t)`: `b_ij = 1` if `i - j = t`, `-1` if `j - i = t`
/// (mod `N`), zero otherwise. When both congruences hold the entry is zero.
pub fn primitive_quiver(n: usize, t: usize) -> Result<WeightedQuiver, QuiverError> {
    if n == 0 || t == 0 || t >= n {
        return Err(QuiverError::Shape(format!("P_{n}^({t}) needs 0 < t < N")));
    }
    let b = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let up = (i + n - j) % n == t;
                    let down = (j + n - i) % n == t;
                    up as i64 - down as i64
                })
                .collect()
        })
        .collect();
    WeightedQuiver::unfrozen(b, vec![0; n])
}

/// Integer weights in `[-bound, bound]^N` with `mu_seq(w) = w o t`, sorted.
///
/// The matrix must already satisfy `mu_seq(B) = B o t`.
pub fn find_periodic_weights(
    q: &WeightedQuiver,
    seq: &[usize],
    t: &[usize],
    bound: i64,
) -> Result<Vec<Vec<i64>>, QuiverError> {
    let n = q.len();
    check_permutation(t, n)?;
    let end = q.mutate_sequence(seq)?;
    if end.b != q.permuted(t)?.b {
        return Err(QuiverError::QuiverNotPeriodic);
    }
    // matrices before each step
    let mut stages = Vec::with_capacity(seq.len());
    let mut cur = q.b.clone();
    for &k in seq {
        stages.push((cur.clone(), k));
        cur = cluster::mutate_rows(&cur, k);
    }
    let range = -bound..=bound;
    let mut out = Vec::new();
    for w in (0..n).map(|_| range.clone()).multi_cartesian_product() {
        let image = stages
            .iter()
            .fold(w.clone(), |acc, (b, k)| mutate_weights(b, &acc, *k));
        if t.iter().enumerate().all(|(i, &ti)| image[i] == w[ti]) {
            out.push(w);
        }
    }
    if n == 0 {
        out.push(Vec::new());
    }
    out.sort();
    Ok(out)
}

/// Dual-number seed `z_i = x_i + y_i eps`; `x_i` is variable `i` and `y_i`
/// is variable `N + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperSeed {
    quiver: WeightedQuiver,
    vars: Vec<DualRational>,
}

impl SuperSeed {
    pub fn initial(quiver: WeightedQuiver) -> Result<Self, QuiverError> {
        if !quiver.is_skew_symmetric() {
            return Err(QuiverError::NotSkewSymmetric);
        }
        let n = quiver.len();
        let vars = (0..n)
            .map(|i| DualRational::new(MultiRational::var(i), MultiRational::var(n + i)))
            .collect();
        Ok(SuperSeed { quiver, vars })
    }

    /// Seed with prescribed variables, for evaluation at special values.
    pub fn with_vars(quiver: WeightedQuiver, vars: Vec<DualRational>) -> Result<Self, QuiverError> {
        if !quiver.is_skew_symmetric() {
            return Err(QuiverError::NotSkewSymmetric);
        }
        if vars.len() != quiver.len() {
            return Err(QuiverError::Shape(format!(
                "{} variables for {} vertices",
                vars.len(),
                quiver.len()
            )));
        }
        Ok(SuperSeed { quiver, vars })
    }

    pub fn quiver(&self) -> &WeightedQuiver {
        &self.quiver
    }

    pub fn vars(&self) -> &[DualRational] {
        &self.vars
    }

    /// `z_k z_k' = prod_{k -> j} z_j + prod_{i -> k} z_i`.
    pub fn mutate(&self, k: usize) -> Result<SuperSeed, QuiverError> {
        self.quiver.check_mutable(k)?;
        let mut out = DualRational::one();
        let mut inc = DualRational::one();
        for (j, z) in self.vars.iter().enumerate() {
            let (bkj, bjk) = (self.quiver.b[k][j], self.quiver.b[j][k]);
            if bkj > 0 {
                out = &out * &z.pow(bkj as u32);
            }
            if bjk > 0 {
                inc = &inc * &z.pow(bjk as u32);
            }
        }
        let zk = (&out + &inc).checked_div(&self.vars[k])?;
        let mut vars = self.vars.clone();
        vars[k] = zk;
        Ok(SuperSeed {
            quiver: self.quiver.mutate(k)?,
            vars,
        })
    }

    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<SuperSeed, QuiverError> {
        seq.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Largest total degree in the odd variables over all stored numerators.
    pub fn odd_degree(&self) -> u64 {
        let n = self.quiver.len();
        let odd: Vec<usize> = (n..2 * n).collect();
        self.vars
            .iter()
            .flat_map(|z| [z.even.num(), z.odd.num()])
            .map(|p| p.degree_in_vars(&odd))
            .max()
            .unwrap_or(0)
    }

    /// Even parts are Laurent in `x` and odd variables enter numerators linearly.
    pub fn oddness_holds(&self) -> bool {
        self.odd_degree() <= 1 && self.vars.iter().all(|z| z.even.to_laurent().is_some())
    }
}

/// A flag-minor relation
/// `D(A+ik) D(A+j) = D(A+ij) D(A+k) + D(A+jk) D(A+i)`, recorded for `i < j < k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorRelation {
    pub base: Vec<usize>,
    pub triple: [usize; 3],
    pub vanishes: bool,
    /// Common weight of the three terms when homogeneous.
    pub weight: Option<i64>,
}

/// Generic `n x n` minor on rows `rows` and the first `rows.len()` columns.
fn flag_minor(x: &[Vec<MultiRational>], rows: &[usize]) -> MultiPoly {
    let cols: Vec<usize> = (0..rows.len()).collect();
    let sub: Vec<Vec<MultiRational>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| x[r][c].clone()).collect())
        .collect();
    cluster::determinant(&sub).num().clone()
}

/// Three-term relations among flag minors of an `n x n` matrix whose sizes
/// both lie in `sizes`, graded by `w(D_I) = sum_{i in I} w_i`.
pub fn flag_minor_relations(row_weights: &[i64], sizes: &BTreeSet<usize>) -> Vec<MinorRelation> {
    let n = row_weights.len();
    let x = cluster::generic_matrix(n);
    let mut minors: Vec<Vec<usize>> = Vec::new();
    let mut images: Vec<MultiPoly> = Vec::new();
    let mut index = |rows: Vec<usize>| -> usize {
        let mut rows = rows;
        rows.sort_unstable();
        if let Some(p) = minors.iter().position(|m| *m == rows) {
            return p;
        }
        images.push(flag_minor(&x, &rows));
        minors.push(rows);
        minors.len() - 1
    };
    let mut rels = Vec::new();
    for size in 0..n.saturating_sub(1) {
        if !(sizes.contains(&(size + 1)) && sizes.contains(&(size + 2))) {
            continue;
        }
        for base in (0..n).combinations(size) {
            let rest: Vec<usize> = (0..n).filter(|r| !base.contains(r)).collect();
            for (i, j, k) in rest.iter().copied().tuple_combinations() {
                let with = |extra: &[usize]| [base.as_slice(), extra].concat();
                let ids = [
                    index(with(&[i, k])),
                    index(with(&[j])),
                    index(with(&[i, j])),
                    index(with(&[k])),
                    index(with(&[j, k])),
                    index(with(&[i])),
                ];
                rels.push((base.clone(), [i, j, k], ids));
            }
        }
    }
    let weights: Vec<i64> = minors
        .iter()
        .map(|m| m.iter().map(|&r| row_weights[r]).sum())
        .collect();
    rels.into_iter()
        .map(|(base, triple, ids)| {
            let z = |a: usize| MultiPoly::var(ids[a]);
            let p = &(&(&z(0) * &z(1)) - &(&z(2) * &z(3))) - &(&z(4) * &z(5));
            MinorRelation {
                base,
                triple,
                vanishes: p.substitute(&images).is_zero(),
                weight: p.weight_of(&weights),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedDynkin {
    pub quiver: WeightedQuiver,
    /// Row weights `w_1 > ... > w_n = 0` with `psi_i = w_i - w_{i+1}`, type A only.
    pub row_weights: Option<Vec<i64>>,
    pub relations: Vec<MinorRelation>,
}

impl WeightedDynkin {
    pub fn homogeneous(&self) -> bool {
        self.relations
            .iter()
            .all(|r| r.vanishes && r.weight.is_some())
    }
}

/// Bipartite Dynkin orientation weighted by `psi`, with the graded flag-minor
/// relations of `SL_n` on the sizes in `j` (0-based) when the type is `A`.
pub fn weighted_dynkin_cluster(
    rs: &RootSystem,
    j: &[usize],
    psi: &[i64],
) -> Result<WeightedDynkin, QuiverError> {
    let r = rs.rank();
    if psi.len() != r {
        return Err(QuiverError::Shape(format!(
            "{} weights for rank {r}",
            psi.len()
        )));
    }
    if let Some(&bad) = j.iter().find(|&&i| i >= r) {
        return Err(QuiverError::IndexOutOfRange {
            index: bad,
            size: r,
        });
    }
    let b = cluster::exchange_for(rs);
    let quiver = WeightedQuiver::unfrozen(b.principal(), psi.to_vec())?;
    if rs.cartan_type().family() != Family::A {
        return Ok(WeightedDynkin {
            quiver,
            row_weights: None,
            relations: Vec::new(),
        });
    }
    let mut w = vec![0i64; r + 1];
    for i in (0..r).rev() {
        w[i] = w[i + 1] + psi[i];
    }
    let sizes: BTreeSet<usize> = j.iter().map(|&i| i + 1).collect();
    let relations = flag_minor_relations(&w, &sizes);
    Ok(WeightedDynkin {
        quiver,
        row_weights: Some(w),
        relations,
    })
}
