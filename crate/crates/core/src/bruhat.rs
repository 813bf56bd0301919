//! Weyl groups acting on root lists, inversion sets and minimal coset
//! representatives: the combinatorial index data of Bruhat cells.
//!
//! An element is stored by its permutation of the signed root list
//! (positive roots in [`RootSystem`] order, then their negatives). Products
//! compose as functions: `(u * w)(r) = u(w(r))`.
//!
//! Cells of `G/P` are indexed by the cosets `W_I w` (the double cosets
//! `P w B`). The representative of minimal length has its whole inversion
//! set `R_+ ∩ w(R_-)` outside the Levi roots.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::rootsys::{pair, Root, RootSystem};

/// Enumeration cap covering F4, B4/C4/D4 and A6 (and E6).
pub const DEFAULT_WEYL_CAP: usize = 60_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BruhatError {
    #[error("Weyl group of order {order} exceeds the cap {cap}")]
    GroupTooLarge { order: u128, cap: usize },
    #[error("simple reflection index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("{0:?} is not a permutation of 1..=m")]
    NotAPermutation(Vec<usize>),
    #[error("permutation model requires type A, got {0}")]
    NotTypeA(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylElement {
    word: Vec<usize>,
    #[serde(skip)]
    action: Vec<u16>,
}

impl WeylElement {
    /// Reduced word (0-based simple reflection indices), leftmost letter first.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn action(&self) -> &[u16] {
        &self.action
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.action.hash(state);
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        for i in &self.word {
            write!(f, "s{}", i + 1)?;
        }
        Ok(())
    }
}

/// The Weyl group of a root system, realized on its signed root list.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rs: RootSystem,
    roots: Vec<Root>,
    simple: Vec<Vec<u16>>,
}

impl WeylGroup {
    pub fn new(rs: &RootSystem) -> Self {
        let pos = rs.positive_roots();
        let mut roots: Vec<Root> = pos.to_vec();
        roots.extend(pos.iter().map(|r| r.iter().map(|c| -c).collect::<Root>()));
        let index: HashMap<&Root, u16> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r, i as u16))
            .collect();
        let simple = (0..rs.rank())
            .map(|i| {
                roots
                    .iter()
                    .map(|r| {
                        let mut img = r.clone();
                        img[i] -= pair(rs.cartan(), r, i);
                        index[&img]
                    })
                    .collect()
            })
            .collect();
        WeylGroup {
            rs: rs.clone(),
            roots,
            simple,
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    fn n_pos(&self) -> usize {
        self.rs.positive_roots().len()
    }

    fn check_index(&self, i: usize) -> Result<(), BruhatError> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(BruhatError::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        }
    }

    fn element(&self, action: Vec<u16>) -> WeylElement {
        let word = self.reduced_word(&action);
        WeylElement { word, action }
    }

    /// Reduced word by greedy removal of the smallest right descent.
    fn reduced_word(&self, action: &[u16]) -> Vec<usize> {
        let n_pos = self.n_pos();
        let mut current = action.to_vec();
        let mut rev = Vec::new();
        'outer: loop {
            for i in 0..self.rank() {
                // a right descent: w(alpha_i) < 0; simple root i sits at index i
                if current[i] as usize >= n_pos {
                    current = self.simple[i]
                        .iter()
                        .map(|&r| current[r as usize])
                        .collect();
                    rev.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        rev
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            word: Vec::new(),
            action: (0..self.roots.len() as u16).collect(),
        }
    }

    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement, BruhatError> {
        self.check_index(i)?;
        Ok(self.element(self.simple[i].clone()))
    }

    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement, BruhatError> {
        let mut action: Vec<u16> = (0..self.roots.len() as u16).collect();
        for &i in word {
            self.check_index(i)?;
            action = self.simple[i].iter().map(|&r| action[r as usize]).collect();
        }
        Ok(self.element(action))
    }

    pub fn multiply(&self, u: &WeylElement, w: &WeylElement) -> WeylElement {
        self.element(w.action.iter().map(|&r| u.action[r as usize]).collect())
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let mut inv = vec![0u16; w.action.len()];
        for (r, &img) in w.action.iter().enumerate() {
            inv[img as usize] = r as u16;
        }
        self.element(inv)
    }

    /// Image of a root of the system under `w`.
    pub fn apply(&self, w: &WeylElement, root: &[i64]) -> Option<Root> {
        let idx = self.roots.iter().position(|r| r.as_slice() == root)?;
        Some(self.roots[w.action[idx] as usize].clone())
    }

    /// All elements, sorted by length and then by action.
    pub fn generate(&self, cap: usize) -> Result<Vec<WeylElement>, BruhatError> {
        let order = self.rs.cartan_type().weyl_order();
        if order > cap as u128 {
            return Err(BruhatError::GroupTooLarge { order, cap });
        }
        let id: Vec<u16> = (0..self.roots.len() as u16).collect();
        let mut seen: HashSet<Vec<u16>> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for s in &self.simple {
                let ws: Vec<u16> = s.iter().map(|&r| w[r as usize]).collect();
                if seen.insert(ws.clone()) {
                    if seen.len() > cap {
                        return Err(BruhatError::GroupTooLarge {
                            order: seen.len() as u128,
                            cap,
                        });
                    }
                    queue.push_back(ws);
                }
            }
        }
        let mut elements: Vec<WeylElement> = seen.into_iter().map(|a| self.element(a)).collect();
        elements.sort_by(|a, b| {
            a.length()
                .cmp(&b.length())
                .then_with(|| a.action.cmp(&b.action))
        });
        Ok(elements)
    }

    /// `R_+ ∩ w(R_-)`, in root-system order.
    pub fn inversion_set(&self, w: &WeylElement) -> Vec<Root> {
        let n_pos = self.n_pos();
        let mut idx: Vec<usize> = (n_pos..self.roots.len())
            .map(|r| w.action[r] as usize)
            .filter(|&img| img < n_pos)
            .collect();
        idx.sort_unstable();
        idx.into_iter().map(|i| self.roots[i].clone()).collect()
    }

    /// `#{alpha > 0 : w(alpha) < 0}`, computed from the action.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        let n_pos = self.n_pos();
        w.action[..n_pos]
            .iter()
            .filter(|&&r| r as usize >= n_pos)
            .count()
    }

    /// Right multiplication `w ↦ w s_i`, the Weyl shadow of the cross action.
    pub fn cross_action(&self, i: usize, w: &WeylElement) -> Result<WeylElement, BruhatError> {
        self.check_index(i)?;
        Ok(self.element(
            self.simple[i]
                .iter()
                .map(|&r| w.action[r as usize])
                .collect(),
        ))
    }

    /// Elements of the parabolic subgroup generated by `levi`.
    pub fn parabolic_subgroup(&self, levi: &[usize]) -> Result<Vec<WeylElement>, BruhatError> {
        for &i in levi {
            self.check_index(i)?;
        }
        let id = self.identity();
        let mut seen: HashSet<Vec<u16>> = HashSet::from([id.action.clone()]);
        let mut queue = VecDeque::from([id.action]);
        while let Some(w) = queue.pop_front() {
            for &i in levi {
                let ws: Vec<u16> = self.simple[i].iter().map(|&r| w[r as usize]).collect();
                if seen.insert(ws.clone()) {
                    queue.push_back(ws);
                }
            }
        }
        Ok(seen.into_iter().map(|a| self.element(a)).collect())
    }

    /// Minimal-length representatives of the cosets `W_I w`, sorted by length.
    pub fn min_coset_reps(
        &self,
        levi: &[usize],
        cap: usize,
    ) -> Result<Vec<WeylElement>, BruhatError> {
        let all = self.generate(cap)?;
        let sub = self.parabolic_subgroup(levi)?;
        let mut assigned: HashSet<Vec<u16>> = HashSet::new();
        let mut reps = Vec::new();
        for w in &all {
            if assigned.contains(&w.action) {
                continue;
            }
            let coset: Vec<WeylElement> = sub.iter().map(|u| self.multiply(u, w)).collect();
            let min_len = coset.iter().map(WeylElement::length).min().unwrap();
            let minimal: Vec<&WeylElement> =
                coset.iter().filter(|x| x.length() == min_len).collect();
            assert_eq!(
                minimal.len(),
                1,
                "minimal coset representative must be unique"
            );
            reps.push(minimal[0].clone());
            assigned.extend(coset.into_iter().map(|x| x.action));
        }
        reps.sort_by(|a, b| {
            a.length()
                .cmp(&b.length())
                .then_with(|| a.action.cmp(&b.action))
        });
        Ok(reps)
    }

    /// Whether `w` is the minimal representative of `W_I w`: no simple root
    /// of the Levi lies in its inversion set.
    pub fn is_min_coset_rep(&self, levi: &[usize], w: &WeylElement) -> bool {
        let n_pos = self.n_pos();
        // w^{-1}(alpha_i) > 0 for every i in I
        levi.iter().all(|&i| {
            let pre = w.action.iter().position(|&img| img as usize == i).unwrap();
            pre < n_pos
        })
    }

    /// Coefficients of `sum_w q^{l(w)}` over minimal coset representatives.
    pub fn poincare_poly(&self, levi: &[usize], cap: usize) -> Result<Vec<u64>, BruhatError> {
        let reps = self.min_coset_reps(levi, cap)?;
        let top = reps.iter().map(WeylElement::length).max().unwrap_or(0);
        let mut coeffs = vec![0u64; top + 1];
        for w in &reps {
            coeffs[w.length()] += 1;
        }
        Ok(coeffs)
    }

    /// The permutation of `1..=m` for type `A_{m-1}`, with `s_i` the transposition `(i, i+1)`.
    pub fn to_permutation(&self, w: &WeylElement) -> Result<Vec<usize>, BruhatError> {
        let ct = self.rs.cartan_type();
        if ct.family() != crate::cartan::Family::A {
            return Err(BruhatError::NotTypeA(ct.to_string()));
        }
        let m = ct.rank() + 1;
        let mut perm: Vec<usize> = (1..=m).collect();
        // w = s_{i1} ... s_{ik}; applying the rightmost letter first
        for &i in w.word.iter().rev() {
            for v in perm.iter_mut() {
                if *v == i + 1 {
                    *v = i + 2;
                } else if *v == i + 2 {
                    *v = i + 1;
                }
            }
        }
        Ok(perm)
    }
}

/// `#{(i, j) : i > j, w(i) < w(j)}` for a permutation of `1..=m`.
pub fn length_via_inversions_type_a(perm: &[usize]) -> Result<usize, BruhatError> {
    let m = perm.len();
    let mut seen = vec![false; m + 1];
    for &v in perm {
        if v == 0 || v > m || seen[v] {
            return Err(BruhatError::NotAPermutation(perm.to_vec()));
        }
        seen[v] = true;
    }
    let mut count = 0;
    for i in 0..m {
        for j in 0..i {
            if perm[i] < perm[j] {
                count += 1;
            }
        }
    }
    Ok(count)
}
