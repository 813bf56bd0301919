//! Cluster algebras of geometric type: exchange matrices, seeds, mutation,
//! finite-type detection, exchange graphs and root labels.
//!
//! Sign convention: `b_ik > 0` means arrows `i -> k`. The exchange relation
//! in direction `k` reads
//! `x_k x_k' = prod_{b_ik > 0} x_i^{b_ik} + prod_{b_ik < 0} x_i^{-b_ik}`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use itertools::Itertools;
use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::rootsys::{find_symmetrizer, RootSystem};
use crate::symlaurent::{MultiPoly, MultiRational};
use crate::zlattice;

pub const DEFAULT_DEPTH_CAP: usize = 12;
pub const DEFAULT_SEED_CAP: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClusterError {
    #[error("vertex {k} is frozen or out of range (mutable vertices: 0..{n})")]
    FrozenIndex { k: usize, n: usize },
    #[error("malformed exchange matrix: {0}")]
    Shape(String),
    #[error("principal part is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("diagram is not bipartite")]
    NotBipartite,
    #[error("more than {0} seeds")]
    CapExceeded(usize),
    #[error("{0} is not a Laurent polynomial")]
    NotLaurent(String),
    #[error("{0:?} is neither a positive root nor a negative simple root")]
    NotAlmostPositive(Vec<i64>),
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
}

/// An `N x n` integer matrix whose top `n x n` block is skew-symmetrizable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExchangeMatrix {
    b: Vec<Vec<i64>>,
    n: usize,
}

impl ExchangeMatrix {
    /// `rows` are all `N` variables; each row lists its entries against the
    /// first `n` (mutable) variables.
    pub fn new(rows: Vec<Vec<i64>>, n: usize) -> Result<Self, ClusterError> {
        if rows.len() < n {
            return Err(ClusterError::Shape(format!(
                "{} rows but {n} mutable vertices",
                rows.len()
            )));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(ClusterError::Shape(format!(
                "row of length {} in a matrix with {n} columns",
                r.len()
            )));
        }
        let m = ExchangeMatrix { b: rows, n };
        if find_symmetrizer(&m.principal(), true).is_none() || (0..n).any(|i| m.b[i][i] != 0) {
            return Err(ClusterError::NotSkewSymmetrizable);
        }
        Ok(m)
    }

    /// Square matrix without frozen rows.
    pub fn square(rows: Vec<Vec<i64>>) -> Result<Self, ClusterError> {
        let n = rows.len();
        Self::new(rows, n)
    }

    pub fn mutable_count(&self) -> usize {
        self.n
    }

    pub fn total_count(&self) -> usize {
        self.b.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn principal(&self) -> Vec<Vec<i64>> {
        self.b[..self.n].to_vec()
    }

    pub fn symmetrizer(&self) -> Vec<i64> {
        find_symmetrizer(&self.principal(), true).expect("checked at construction")
    }

    fn check_mutable(&self, k: usize) -> Result<(), ClusterError> {
        if k < self.n {
            Ok(())
        } else {
            Err(ClusterError::FrozenIndex { k, n: self.n })
        }
    }

    /// Matrix mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix, ClusterError> {
        self.check_mutable(k)?;
        Ok(ExchangeMatrix {
            b: mutate_rows(&self.b, k),
            n: self.n,
        })
    }

    /// Column `k` as `(i, b_ik)` pairs over all rows.
    pub fn column(&self, k: usize) -> Vec<i64> {
        self.b.iter().map(|r| r[k]).collect()
    }
}

/// Three-case mutation rule on an `N x n` array of rows.
pub fn mutate_rows(b: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    b.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &bij)| {
                    if i == k || j == k {
                        -bij
                    } else {
                        let (bik, bkj) = (b[i][k], b[k][j]);
                        if bik * bkj > 0 {
                            bij + bik.abs() * bkj
                        } else {
                            bij
                        }
                    }
                })
                .collect()
        })
        .collect()
}

/// `(prod_{c_i > 0} x_i^{c_i} + prod_{c_i < 0} x_i^{-c_i}) / x_k` for a column `c`.
pub fn exchange(vars: &[MultiRational], column: &[i64], k: usize) -> MultiRational {
    let mut plus = MultiRational::one();
    let mut minus = MultiRational::one();
    for (x, &c) in vars.iter().zip(column) {
        if c > 0 {
            plus = &plus * &x.pow(c as i32).expect("nonzero power");
        } else if c < 0 {
            minus = &minus * &x.pow((-c) as i32).expect("nonzero power");
        }
    }
    (&plus + &minus)
        .checked_div(&vars[k])
        .expect("cluster variables are nonzero")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    matrix: ExchangeMatrix,
    vars: Vec<MultiRational>,
}

impl Seed {
    /// Initial seed with variables `x_1, ..., x_N`.
    pub fn initial(matrix: ExchangeMatrix) -> Self {
        let vars = (0..matrix.total_count()).map(MultiRational::var).collect();
        Seed { matrix, vars }
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    /// All variables; the first `n` are the cluster, the rest frozen.
    pub fn vars(&self) -> &[MultiRational] {
        &self.vars
    }

    pub fn cluster(&self) -> &[MultiRational] {
        &self.vars[..self.matrix.n]
    }

    pub fn mutate(&self, k: usize) -> Result<Seed, ClusterError> {
        let matrix = self.matrix.mutate(k)?;
        let mut vars = self.vars.clone();
        vars[k] = exchange(&self.vars, &self.matrix.column(k), k);
        Ok(Seed { matrix, vars })
    }

    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Seed, ClusterError> {
        seq.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Sorted rendering of the cluster; equal keys mean equal unlabeled clusters.
    pub fn key(&self) -> Vec<String> {
        let mut k: Vec<String> = self.cluster().iter().map(|x| x.to_string()).collect();
        k.sort();
        k
    }
}

/// `a_ii = 2`, `a_ij = -|b_ij|`.
pub fn cartan_companion(b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 2 } else { -b[i][j].abs() })
                .collect()
        })
        .collect()
}

/// Two-colouring of the Dynkin graph of `a`; vertex 0 of each component is `+`.
fn bipartition(a: &[Vec<i64>]) -> Result<Vec<i64>, ClusterError> {
    let n = a.len();
    let mut sign = vec![0i64; n];
    for s in 0..n {
        if sign[s] != 0 {
            continue;
        }
        sign[s] = 1;
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                if sign[j] == 0 {
                    sign[j] = -sign[i];
                    queue.push_back(j);
                } else if sign[j] == sign[i] {
                    return Err(ClusterError::NotBipartite);
                }
            }
        }
    }
    Ok(sign)
}

/// `b_ij = a_ij` for `i` in `I_+`, `-a_ij` for `i` in `I_-`, zero diagonal.
pub fn bipartite_exchange(a: &[Vec<i64>]) -> Result<ExchangeMatrix, ClusterError> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(ClusterError::Shape("Cartan matrix must be square".into()));
    }
    let sign = bipartition(a)?;
    let b = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 0 } else { sign[i] * a[i][j] })
                .collect()
        })
        .collect();
    ExchangeMatrix::square(b)
}

/// Bipartite exchange matrix of a finite root system.
pub fn exchange_for(rs: &RootSystem) -> ExchangeMatrix {
    bipartite_exchange(rs.cartan()).expect("Dynkin diagrams are trees")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Finite,
    Infinite,
    Inconclusive,
}

/// Lexicographically smallest matrix under simultaneous row/column permutation.
fn canonical(b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.len();
    (0..n)
        .permutations(n)
        .map(|p| {
            p.iter()
                .map(|&i| p.iter().map(|&j| b[i][j]).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default()
}

fn violates(b: &[Vec<i64>]) -> bool {
    let n = b.len();
    (0..n).any(|i| (i + 1..n).any(|j| (b[i][j] * b[j][i]).abs() >= 4))
}

/// Breadth-first search of the mutation class of the principal part.
///
/// The class is searched up to simultaneous permutation of indices; the
/// verdict is infinite at the first matrix with `|b_ij b_ji| >= 4`.
pub fn is_finite_type(b: &ExchangeMatrix, depth_cap: usize) -> Verdict {
    let start = b.principal();
    let n = start.len();
    if violates(&start) {
        return Verdict::Infinite;
    }
    let mut seen = BTreeSet::from([canonical(&start)]);
    let mut frontier = vec![start];
    for _ in 0..depth_cap {
        let mut next = Vec::new();
        for m in &frontier {
            for k in 0..n {
                let mk = mutate_rows(m, k);
                if violates(&mk) {
                    return Verdict::Infinite;
                }
                if seen.insert(canonical(&mk)) {
                    next.push(mk);
                }
            }
        }
        if next.is_empty() {
            return Verdict::Finite;
        }
        frontier = next;
    }
    Verdict::Inconclusive
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub seeds: Vec<Seed>,
    pub keys: Vec<Vec<String>>,
    /// `(from, to, direction)` with `from < to`.
    pub edges: Vec<(usize, usize, usize)>,
    /// Distinct cluster variables, sorted by rendering.
    pub variables: Vec<MultiRational>,
}

impl ExchangeGraph {
    pub fn seed_count(&self) -> usize {
        self.seeds.len()
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b, _)| a == node || b == node)
            .count()
    }
}

/// Exchange graph reachable from `s0`, with seeds identified by [`Seed::key`].
pub fn enumerate_seeds(s0: &Seed, cap: usize) -> Result<ExchangeGraph, ClusterError> {
    let n = s0.matrix.n;
    let mut index: HashMap<Vec<String>, usize> = HashMap::new();
    let mut seeds = vec![s0.clone()];
    let mut keys = vec![s0.key()];
    index.insert(s0.key(), 0);
    let mut edges = BTreeSet::new();
    let mut variables: BTreeMap<String, MultiRational> = BTreeMap::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for x in seeds[i].cluster() {
            variables.entry(x.to_string()).or_insert_with(|| x.clone());
        }
        for k in 0..n {
            let t = seeds[i].mutate(k)?;
            let key = t.key();
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    if seeds.len() >= cap {
                        return Err(ClusterError::CapExceeded(cap));
                    }
                    let j = seeds.len();
                    index.insert(key.clone(), j);
                    seeds.push(t);
                    keys.push(key);
                    queue.push_back(j);
                    j
                }
            };
            edges.insert((i.min(j), i.max(j), k));
        }
    }
    // a pair of seeds joined in both directions is one edge
    let mut unique: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (a, b, k) in edges {
        unique.entry((a, b)).or_insert(k);
    }
    Ok(ExchangeGraph {
        seeds,
        keys,
        edges: unique.into_iter().map(|((a, b), k)| (a, b, k)).collect(),
        variables: variables.into_values().collect(),
    })
}

/// Denominator vector in the initial cluster `x_1..x_n`: minus the smallest
/// exponent of each variable, so that `x_i` itself gives `-e_i`.
pub fn denominator_vector(var: &MultiRational, n: usize) -> Result<Vec<i64>, ClusterError> {
    let l = var
        .to_laurent()
        .ok_or_else(|| ClusterError::NotLaurent(var.to_string()))?;
    Ok(l.min_exponents(n)
        .into_iter()
        .map(|e| -(e as i64))
        .collect())
}

/// The almost positive root with coefficients `dvec`.
pub fn root_label(rs: &RootSystem, dvec: &[i64]) -> Result<Vec<i64>, ClusterError> {
    let negative_simple =
        dvec.iter().filter(|&&c| c == -1).count() == 1 && dvec.iter().all(|&c| c == 0 || c == -1);
    if rs.is_positive_root(dvec) || negative_simple {
        Ok(dvec.to_vec())
    } else {
        Err(ClusterError::NotAlmostPositive(dvec.to_vec()))
    }
}

/// Every cluster's root labels form a basis of the root lattice.
pub fn cluster_basis_check(graph: &ExchangeGraph, rs: &RootSystem) -> Result<bool, ClusterError> {
    let n = rs.rank();
    for seed in &graph.seeds {
        let labels = seed
            .cluster()
            .iter()
            .map(|x| root_label(rs, &denominator_vector(x, n)?))
            .collect::<Result<Vec<_>, _>>()?;
        let m: Vec<Vec<BigInt>> = labels
            .iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        if !zlattice::is_unimodular(&m) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct PluckerData {
    /// Index pairs `(i, j)`, `i < j`, of the variables `z_ij` (0-based).
    pub pairs: Vec<(usize, usize)>,
    /// `w_i + w_j` for each pair.
    pub weights: Vec<i64>,
    /// `P_ijkl = z_ij z_kl - z_ik z_jl + z_il z_jk` in the `z` variables.
    pub relations: Vec<([usize; 4], MultiPoly)>,
    /// Each relation vanishes after `z_ij -> x_i y_j - x_j y_i`.
    pub vanish: bool,
    /// Weight of each relation when homogeneous.
    pub relation_weights: Vec<Option<i64>>,
}

impl PluckerData {
    pub fn pair_index(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (i.min(j), i.max(j)))
    }

    /// Chart where `z_ij` is inverted, with its cyclic group order.
    pub fn charts(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.pairs.iter().copied().zip(self.weights.iter().copied())
    }
}

/// Plücker variables and three-term relations of `Gr(2, n)` with point weights `w`.
pub fn plucker_gr2(n: usize, w: &[i64]) -> Result<PluckerData, ClusterError> {
    if n < 4 {
        return Err(ClusterError::Shape(format!("Gr(2, {n}) needs n >= 4")));
    }
    if w.len() != n {
        return Err(ClusterError::Shape(format!(
            "{} weights for {n} points",
            w.len()
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let weights = pairs.iter().map(|&(i, j)| w[i] + w[j]).collect();
    let z = |i: usize, j: usize| {
        MultiPoly::var(
            pairs
                .iter()
                .position(|&p| p == (i, j))
                .expect("ordered pair"),
        )
    };
    // x_i is variable i, y_i is variable n + i
    let minor = |i: usize, j: usize| {
        &(&MultiPoly::var(i) * &MultiPoly::var(n + j))
            - &(&MultiPoly::var(j) * &MultiPoly::var(n + i))
    };
    let images: Vec<MultiPoly> = pairs.iter().map(|&(i, j)| minor(i, j)).collect();
    let mut relations = Vec::new();
    let mut vanish = true;
    let mut relation_weights = Vec::new();
    for (i, j, k, l) in (0..n).tuple_combinations() {
        let p = &(&(&z(i, j) * &z(k, l)) - &(&z(i, k) * &z(j, l))) + &(&z(i, l) * &z(j, k));
        vanish &= p.substitute(&images).is_zero();
        let wt: Vec<i64> = pairs.iter().map(|&(a, b)| w[a] + w[b]).collect();
        relation_weights.push(p.weight_of(&wt));
        relations.push(([i, j, k, l], p));
    }
    Ok(PluckerData {
        pairs,
        weights,
        relations,
        vanish,
        relation_weights,
    })
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<MultiRational>]) -> MultiRational {
    match m.len() {
        0 => MultiRational::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = MultiRational::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MultiRational>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let t = &m[0][c] * &determinant(&minor);
                acc = if c % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

/// Type A generalized minor `Delta_{u w_i, v w_i}`: the determinant on rows
/// `u({1..i})` and columns `v({1..i})`. Permutations are 0-based images.
pub fn generalized_minor(
    x: &[Vec<MultiRational>],
    u: &[usize],
    v: &[usize],
    i: usize,
) -> Result<MultiRational, ClusterError> {
    let n = x.len();
    if x.iter().any(|r| r.len() != n) {
        return Err(ClusterError::Shape("matrix must be square".into()));
    }
    for p in [u, v] {
        let mut s = p.to_vec();
        s.sort_unstable();
        if s != (0..n).collect::<Vec<_>>() {
            return Err(ClusterError::Shape(format!(
                "{p:?} is not a permutation of 0..{n}"
            )));
        }
    }
    if i > n {
        return Err(ClusterError::IndexOutOfRange { index: i, size: n });
    }
    let mut rows: Vec<usize> = u[..i].to_vec();
    let mut cols: Vec<usize> = v[..i].to_vec();
    rows.sort_unstable();
    cols.sort_unstable();
    let sub: Vec<Vec<MultiRational>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| x[r][c].clone()).collect())
        .collect();
    Ok(determinant(&sub))
}

/// Generic `n x n` matrix with entries `x_{ij}` as variable `i n + j`.
pub fn generic_matrix(n: usize) -> Vec<Vec<MultiRational>> {
    (0..n)
        .map(|i| (0..n).map(|j| MultiRational::var(i * n + j)).collect())
        .collect()
}
