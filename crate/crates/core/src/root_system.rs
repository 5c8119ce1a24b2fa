//! Root systems of types `B_n` and `D_n`, the fixed numeration of their
//! positive roots, weight coordinate conversions, and the two-layer
//! signature order.
//!
//! Everything downstream indexes exponent tuples by one specific numeration:
//!
//! * `D_n`: the positive roots of `D_{n-1}` first (recursively, with base
//!   `D_2`: ε₁−ε₂ then ε₁+ε₂), then ε₁−ε_n, …, ε_{n−1}−ε_n, then
//!   ε₁+ε_n, …, ε_{n−1}+ε_n.
//! * `B_n`: all `D_n` roots in that order, followed by the short roots
//!   ε₁, …, ε_n.
//!
//! This gives the *prefix property*: the tuple layout of rank n embeds into
//! rank n+1 (and of `D_n` into `B_n`) by appending zeros, which is what the
//! recursive set descriptions in [`crate::semigroup`] rely on.
//!
//! Signatures of a common highest weight are compared blockwise, newest
//! block first: for `D_n`, degree-lexicographic on the ε_i+ε_n block, then
//! on the ε_i−ε_n block, then recursively down to `D_2`; for `B_n`, the
//! short block first, then the `D_n` rule.  Signatures of different highest
//! weights compare by deglex on the fundamental coefficients before any
//! exponents are looked at.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The two families handled by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgKind {
    B,
    D,
}

impl std::fmt::Display for AlgKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlgKind::B => write!(f, "B"),
            AlgKind::D => write!(f, "D"),
        }
    }
}

/// A simple Lie algebra of type `B_n` (odd orthogonal) or `D_n` (even
/// orthogonal), rank at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraType {
    pub kind: AlgKind,
    pub rank: usize,
}

impl AlgebraType {
    pub fn new(kind: AlgKind, rank: usize) -> Result<Self> {
        if rank < 2 {
            return Err(Error::InvalidRank(rank));
        }
        Ok(AlgebraType { kind, rank })
    }

    pub fn b(rank: usize) -> Result<Self> {
        Self::new(AlgKind::B, rank)
    }

    pub fn d(rank: usize) -> Result<Self> {
        Self::new(AlgKind::D, rank)
    }

    /// Number of positive roots: `n(n-1)` for `D_n`, `n²` for `B_n`.
    pub fn num_positive_roots(&self) -> usize {
        match self.kind {
            AlgKind::D => self.rank * (self.rank - 1),
            AlgKind::B => self.rank * self.rank,
        }
    }

    /// Dimension of the standard module: `2n` or `2n+1`.
    pub fn standard_dim(&self) -> usize {
        match self.kind {
            AlgKind::D => 2 * self.rank,
            AlgKind::B => 2 * self.rank + 1,
        }
    }
}

impl std::fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}_{}", self.kind, self.rank)
    }
}

/// A positive root in ε-coordinates: ε_i−ε_j or ε_i+ε_j (i<j), or ε_i
/// (type B only).  Entries are in {−1, 0, 1} and the first nonzero entry
/// is +1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<i64>,
}

impl Root {
    fn eps_minus(i: usize, j: usize, n: usize) -> Root {
        let mut coords = vec![0; n];
        coords[i - 1] = 1;
        coords[j - 1] = -1;
        Root { coords }
    }

    fn eps_plus(i: usize, j: usize, n: usize) -> Root {
        let mut coords = vec![0; n];
        coords[i - 1] = 1;
        coords[j - 1] = 1;
        Root { coords }
    }

    fn eps(i: usize, n: usize) -> Root {
        let mut coords = vec![0; n];
        coords[i - 1] = 1;
        Root { coords }
    }

    /// Squared length under the Euclidean form: 2 for long roots, 1 for
    /// short ones.
    pub fn norm_sq(&self) -> i64 {
        self.coords.iter().map(|c| c * c).sum()
    }
}

impl std::fmt::Display for Root {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let nonzero: Vec<(usize, i64)> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (i + 1, *c))
            .collect();
        match nonzero.as_slice() {
            [(i, 1)] => write!(f, "e{i}"),
            [(i, 1), (j, 1)] => write!(f, "e{i}+e{j}"),
            [(i, 1), (j, -1)] => write!(f, "e{i}-e{j}"),
            _ => write!(f, "{:?}", self.coords),
        }
    }
}

/// The ordered list of positive roots in the crate's fixed numeration.
pub fn positive_roots(alg: &AlgebraType) -> Vec<Root> {
    let n = alg.rank;
    let mut roots = Vec::with_capacity(alg.num_positive_roots());
    // D_j layer for j = 2..=n: first the minus block, then the plus block.
    for j in 2..=n {
        for i in 1..j {
            roots.push(Root::eps_minus(i, j, n));
        }
        for i in 1..j {
            roots.push(Root::eps_plus(i, j, n));
        }
    }
    if alg.kind == AlgKind::B {
        for i in 1..=n {
            roots.push(Root::eps(i, n));
        }
    }
    roots
}

/// Index of ε_i−ε_j (1 ≤ i < j) in the numeration.
pub fn minus_root_index(i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j);
    (j - 1) * (j - 2) + (i - 1)
}

/// Index of ε_i+ε_j (1 ≤ i < j) in the numeration.
pub fn plus_root_index(i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j);
    (j - 1) * (j - 1) + (i - 1)
}

/// Index of the short root ε_i for `B_n`.
pub fn short_root_index(i: usize, n: usize) -> usize {
    debug_assert!(1 <= i && i <= n);
    n * (n - 1) + (i - 1)
}

/// A weight in ε-coordinates.  Entries are half-integers, stored doubled so
/// that all arithmetic is over `i64`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    /// Doubled ε-coordinates: `halves[i] = 2·l_{i+1}`.
    pub halves: Vec<i64>,
}

impl Weight {
    pub fn zero(n: usize) -> Weight {
        Weight { halves: vec![0; n] }
    }

    pub fn from_halves(halves: Vec<i64>) -> Weight {
        Weight { halves }
    }

    /// ε-coordinates as exact (numerator, denominator) pairs with
    /// denominator 1 or 2.
    pub fn eps_pairs(&self) -> Vec<(i64, i64)> {
        self.halves
            .iter()
            .map(|&h| if h % 2 == 0 { (h / 2, 1) } else { (h, 2) })
            .collect()
    }

    /// Build a dominant weight from fundamental coefficients `k_1..k_n`.
    pub fn from_fund(alg: &AlgebraType, k: &[i64]) -> Result<Weight> {
        let n = alg.rank;
        if k.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: k.len() });
        }
        if k.iter().any(|&c| c < 0) {
            return Err(Error::NotDominant(k.to_vec()));
        }
        let mut halves = vec![0i64; n];
        match alg.kind {
            AlgKind::B => {
                // ω_i = ε_1+…+ε_i (i<n), ω_n = ½(ε_1+…+ε_n).
                for i in 0..n {
                    let long: i64 = k[i..n - 1].iter().sum();
                    halves[i] = 2 * long + k[n - 1];
                }
            }
            AlgKind::D => {
                // ω_i = ε_1+…+ε_i (i ≤ n−2), ω_{n−1} = ½(ε_1+…+ε_{n−1}−ε_n),
                // ω_n = ½(ε_1+…+ε_n).
                for i in 0..n {
                    let long: i64 = if i <= n - 2 { k[i..n - 2].iter().sum() } else { 0 };
                    halves[i] = 2 * long + k[n - 2] + k[n - 1];
                }
                halves[n - 1] = k[n - 1] - k[n - 2];
            }
        }
        Ok(Weight { halves })
    }

    /// Fundamental coefficients `k_1..k_n` of a dominant integral weight;
    /// errors when the weight is not dominant integral for `alg`.
    pub fn fund(&self, alg: &AlgebraType) -> Result<Vec<i64>> {
        let n = alg.rank;
        if self.halves.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: self.halves.len() });
        }
        let h = &self.halves;
        let mut k = vec![0i64; n];
        match alg.kind {
            AlgKind::B => {
                for i in 0..n - 1 {
                    let d = h[i] - h[i + 1];
                    if d % 2 != 0 {
                        return Err(Error::NotDominant(h.clone()));
                    }
                    k[i] = d / 2;
                }
                k[n - 1] = h[n - 1];
            }
            AlgKind::D => {
                for i in 0..n - 2 {
                    let d = h[i] - h[i + 1];
                    if d % 2 != 0 {
                        return Err(Error::NotDominant(h.clone()));
                    }
                    k[i] = d / 2;
                }
                let (a, b) = (h[n - 2], h[n - 1]);
                if (a - b) % 2 != 0 || (a + b) % 2 != 0 {
                    return Err(Error::NotDominant(h.clone()));
                }
                k[n - 2] = (a - b) / 2;
                k[n - 1] = (a + b) / 2;
            }
        }
        if k.iter().any(|&c| c < 0) {
            return Err(Error::NotDominant(h.clone()));
        }
        Ok(k)
    }

    pub fn is_dominant(&self, alg: &AlgebraType) -> bool {
        self.fund(alg).is_ok()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            halves: self
                .halves
                .iter()
                .zip(&other.halves)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub_root(&self, root: &Root, times: i64) -> Weight {
        Weight {
            halves: self
                .halves
                .iter()
                .zip(&root.coords)
                .map(|(h, c)| h - 2 * c * times)
                .collect(),
        }
    }

    /// Euclidean pairing with a coroot: `⟨μ, α∨⟩ = 2(μ,α)/(α,α)`.
    pub fn pair_coroot(&self, root: &Root) -> i64 {
        let dot_doubled: i64 = self
            .halves
            .iter()
            .zip(&root.coords)
            .map(|(h, c)| h * c)
            .sum();
        // dot_doubled = 2(μ,α); divide by (α,α) ∈ {1,2}.
        let norm = root.norm_sq();
        debug_assert_eq!(dot_doubled % norm, 0, "non-integral coroot pairing");
        dot_doubled / norm
    }
}

/// The i-th fundamental weight ω_i (1-based).
pub fn fundamental_weight(alg: &AlgebraType, i: usize) -> Result<Weight> {
    if i < 1 || i > alg.rank {
        return Err(Error::PowerOutOfRange { p: i, n: alg.rank });
    }
    let mut k = vec![0i64; alg.rank];
    k[i - 1] = 1;
    Weight::from_fund(alg, &k)
}

/// All fundamental weights ω_1..ω_n in order.
pub fn fundamental_weights(alg: &AlgebraType) -> Vec<Weight> {
    (1..=alg.rank)
        .map(|i| fundamental_weight(alg, i).expect("index in range"))
        .collect()
}

/// The sum ε_1+…+ε_p: equals ω_p away from the spin end, ω_{n−1}+ω_n at
/// p = n−1 for `D_n`, and 2ω_n at p = n for both families' natural reading.
pub fn hatted_weight(alg: &AlgebraType, p: usize) -> Result<Weight> {
    if p < 1 || p > alg.rank {
        return Err(Error::PowerOutOfRange { p, n: alg.rank });
    }
    let mut halves = vec![0i64; alg.rank];
    for h in halves.iter_mut().take(p) {
        *h = 2;
    }
    Ok(Weight { halves })
}

/// Which first-position-differs polarity deglex uses.  `Standard` makes the
/// larger entry at the first difference the larger tuple; `Flipped` reverses
/// exactly that comparison (total degree is compared first either way).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LexDirection {
    #[default]
    Standard,
    Flipped,
}

impl std::fmt::Display for LexDirection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LexDirection::Standard => write!(f, "standard"),
            LexDirection::Flipped => write!(f, "flipped"),
        }
    }
}

/// Degree-lexicographic comparison of two equal-length slices.
fn deglex(a: &[u32], b: &[u32], dir: LexDirection) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for (x, y) in a.iter().zip(b) {
        let ord = match dir {
            LexDirection::Standard => x.cmp(y),
            LexDirection::Flipped => y.cmp(x),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

fn deglex_i64(a: &[i64], b: &[i64], dir: LexDirection) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for (x, y) in a.iter().zip(b) {
        let ord = match dir {
            LexDirection::Standard => x.cmp(y),
            LexDirection::Flipped => y.cmp(x),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// The block order on exponent tuples.
///
/// `D_n`: for j = n down to 2, deglex on the ε_i+ε_j block, then deglex on
/// the ε_i−ε_j block.  `B_n`: deglex on the short block ε_1..ε_n first,
/// then the `D_n` rule on the long blocks.
pub fn compare_exponents(
    alg: &AlgebraType,
    a: &[u32],
    b: &[u32],
    dir: LexDirection,
) -> Result<Ordering> {
    let nroots = alg.num_positive_roots();
    if a.len() != nroots {
        return Err(Error::LengthMismatch { expected: nroots, got: a.len() });
    }
    if b.len() != nroots {
        return Err(Error::LengthMismatch { expected: nroots, got: b.len() });
    }
    let n = alg.rank;
    if alg.kind == AlgKind::B {
        let s = short_root_index(1, n);
        let ord = deglex(&a[s..s + n], &b[s..s + n], dir);
        if ord != Ordering::Equal {
            return Ok(ord);
        }
    }
    for j in (2..=n).rev() {
        let ps = plus_root_index(1, j);
        let ord = deglex(&a[ps..ps + (j - 1)], &b[ps..ps + (j - 1)], dir);
        if ord != Ordering::Equal {
            return Ok(ord);
        }
        let ms = minus_root_index(1, j);
        let ord = deglex(&a[ms..ms + (j - 1)], &b[ms..ms + (j - 1)], dir);
        if ord != Ordering::Equal {
            return Ok(ord);
        }
    }
    Ok(Ordering::Equal)
}

/// A highest weight together with one exponent per positive root.
///
/// The derived ordering is structural (for canonical storage); the
/// mathematical signature order is [`compare_signatures`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub highest_weight: Weight,
    pub exponents: Vec<u32>,
}

impl Signature {
    pub fn new(alg: &AlgebraType, highest_weight: Weight, exponents: Vec<u32>) -> Result<Self> {
        let nroots = alg.num_positive_roots();
        if exponents.len() != nroots {
            return Err(Error::LengthMismatch { expected: nroots, got: exponents.len() });
        }
        Ok(Signature { highest_weight, exponents })
    }

    /// λ − Σ p_i α_i, the weight of the signature's vector.
    pub fn weight(&self, roots: &[Root]) -> Weight {
        let mut w = self.highest_weight.clone();
        for (p, root) in self.exponents.iter().zip(roots) {
            if *p > 0 {
                w = w.sub_root(root, *p as i64);
            }
        }
        w
    }

    /// Componentwise sum with another signature of the same algebra.
    pub fn plus(&self, other: &Signature) -> Signature {
        Signature {
            highest_weight: self.highest_weight.add(&other.highest_weight),
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Total order on signatures: deglex on fundamental coefficients first,
/// then the block order on exponents.
pub fn compare_signatures(
    alg: &AlgebraType,
    a: &Signature,
    b: &Signature,
    dir: LexDirection,
) -> Result<Ordering> {
    let ka = a.highest_weight.fund(alg)?;
    let kb = b.highest_weight.fund(alg)?;
    let ord = deglex_i64(&ka, &kb, dir);
    if ord != Ordering::Equal {
        return Ok(ord);
    }
    compare_exponents(alg, &a.exponents, &b.exponents, dir)
}
