//! Explicit realizations of the modules everything else computes in:
//! the standard module, its exterior powers, spin and half-spin modules,
//! and cyclic submodules of tensor products, together with exact
//! lowering/raising operator actions and divided powers.
//!
//! The orthogonal algebras are taken in the split form: the standard
//! module has a basis e_1,…,e_n, (e_0 for odd dimension), e_{−n},…,e_{−1}
//! with the bilinear form pairing e_i with e_{−i} (and e_0 with itself).
//! Root vectors are differences of two matrix units:
//!
//! * e_{ε_i−ε_j} = E_{i,j} − E_{−j,−i} and transposed indices for lowering,
//! * e_{ε_i+ε_j} = E_{i,−j} − E_{j,−i}, lowering e_{−ε_i−ε_j} = E_{−j,i} − E_{−i,j},
//! * e_{ε_i} = 2(E_{i,0} − E_{0,−i}), lowering e_{−ε_i} = E_{0,i} − E_{−i,0}.
//!
//! The factor 2 on the short raising operator makes [e_α, e_{−α}] act with
//! eigenvalue ⟨μ, α∨⟩ on every weight-μ vector, the normalization the
//! commutation checks pin down.  Essential-signature sets are insensitive
//! to any nonzero rescaling of the lowering operators (the spans compared
//! are scale-invariant), which is verified separately by randomized tests.
//!
//! Spin modules use the fermionic-oscillator construction: basis vectors
//! are sign vectors in {+,−}^n, creation/annihilation operators flip one
//! sign with the sign factor (−1)^{#minuses strictly to the left}, and
//! root vectors are the quadratic expressions a_i†a_j, a_i†a_j†, a_ja_i,
//! a_i†ψ_0, …, with ψ_0 the diagonal parity involution (odd case).

use std::collections::{BTreeMap, HashMap};

use num::{BigRational, One, Zero};

use crate::root_system::{positive_roots, AlgKind, AlgebraType, Root, Signature, Weight};
use crate::weyl::weyl_dim;
use crate::{Error, Result};

/// Exact scalar type for all module arithmetic.
pub type Rat = BigRational;

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Immutable coordinate-list sparse matrix over exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMat {
    pub dim: usize,
    /// `cols[c]` lists the nonzero entries of column `c` as (row, value),
    /// sorted by row.
    pub cols: Vec<Vec<(usize, Rat)>>,
}

impl SparseMat {
    pub fn zero(dim: usize) -> SparseMat {
        SparseMat { dim, cols: vec![Vec::new(); dim] }
    }

    /// Build from (row, col, value) triples; entries at the same position
    /// are summed and zeros dropped.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, Rat)>) -> SparseMat {
        let mut cols: Vec<BTreeMap<usize, Rat>> = vec![BTreeMap::new(); dim];
        for (r, c, v) in entries {
            let cell = cols[c].entry(r).or_insert_with(Rat::zero);
            *cell += v;
        }
        SparseMat {
            dim,
            cols: cols
                .into_iter()
                .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        }
    }

    pub fn apply(&self, v: &ModuleVector) -> ModuleVector {
        let mut out: BTreeMap<usize, Rat> = BTreeMap::new();
        for (c, coeff) in &v.coeffs {
            for (r, m) in &self.cols[*c] {
                let cell = out.entry(*r).or_insert_with(Rat::zero);
                *cell += coeff * m;
            }
        }
        out.retain(|_, v| !v.is_zero());
        ModuleVector { coeffs: out }
    }

    pub fn scale(&self, s: &Rat) -> SparseMat {
        SparseMat {
            dim: self.dim,
            cols: self
                .cols
                .iter()
                .map(|col| col.iter().map(|(r, v)| (*r, v * s)).collect())
                .collect(),
        }
    }
}

/// A module element as a sparse coefficient map; no zero is ever stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector {
    pub coeffs: BTreeMap<usize, Rat>,
}

impl ModuleVector {
    pub fn zero() -> ModuleVector {
        ModuleVector { coeffs: BTreeMap::new() }
    }

    pub fn unit(idx: usize) -> ModuleVector {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(idx, Rat::one());
        ModuleVector { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn div_int(&mut self, t: i64) {
        debug_assert!(t != 0);
        let d = rat(t);
        for v in self.coeffs.values_mut() {
            *v /= &d;
        }
    }
}

/// Canonical name of an ambient basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum BasisLabel {
    /// The one basis vector of the trivial module.
    Trivial,
    /// e_i for i ∈ {1..n}, e_0, or e_{−i}.
    Std(i64),
    /// A wedge of standard vectors, listed in ambient order.
    Wedge(Vec<i64>),
    /// A spin sign vector, +1/−1 per slot.
    Spin(Vec<i8>),
    /// A pure tensor of two factor labels.
    Pair(Box<BasisLabel>, Box<BasisLabel>),
}

impl std::fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BasisLabel::Trivial => write!(f, "1"),
            BasisLabel::Std(i) => write!(f, "e({i})"),
            BasisLabel::Wedge(parts) => {
                let names: Vec<String> = parts.iter().map(|i| format!("e({i})")).collect();
                write!(f, "{}", names.join("^"))
            }
            BasisLabel::Spin(signs) => {
                let marks: String = signs.iter().map(|s| if *s > 0 { '+' } else { '-' }).collect();
                write!(f, "s({marks})")
            }
            BasisLabel::Pair(a, b) => write!(f, "{a}(x){b}"),
        }
    }
}

/// An explicit module with exact operator actions, immutable once built.
#[derive(Debug, Clone)]
pub struct ModuleRealization {
    pub alg: AlgebraType,
    pub highest_weight: Weight,
    pub basis_labels: Vec<BasisLabel>,
    pub weights: Vec<Weight>,
    /// One matrix per positive root, in the fixed root numeration.
    pub lowering_ops: Vec<SparseMat>,
    pub raising_ops: Vec<SparseMat>,
    pub highest_vector: usize,
}

/// Parity selector for spin bases: `Full` for the odd orthogonal spin
/// module, `Even`/`Odd` minus-counts for the two half-spin modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinParity {
    Full,
    Even,
    Odd,
}

impl ModuleRealization {
    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn roots(&self) -> Vec<Root> {
        positive_roots(&self.alg)
    }

    /// Structural sanity checks run by every constructor: operators move
    /// weights by exactly ±α entrywise, the highest vector has the stated
    /// weight, and every raising operator annihilates it.
    fn validate(&self) -> Result<()> {
        let roots = self.roots();
        if self.lowering_ops.len() != roots.len() || self.raising_ops.len() != roots.len() {
            return Err(Error::BrokenRealization("operator count != root count".into()));
        }
        for (root, (low, high)) in roots.iter().zip(self.lowering_ops.iter().zip(&self.raising_ops)) {
            for (c, col) in low.cols.iter().enumerate() {
                for (r, _) in col {
                    if self.weights[*r] != self.weights[c].sub_root(root, 1) {
                        return Err(Error::BrokenRealization(format!(
                            "lowering by {root} maps weight of {c} to wrong weight at {r}"
                        )));
                    }
                }
            }
            for (c, col) in high.cols.iter().enumerate() {
                for (r, _) in col {
                    if self.weights[*r] != self.weights[c].sub_root(root, -1) {
                        return Err(Error::BrokenRealization(format!(
                            "raising by {root} maps weight of {c} to wrong weight at {r}"
                        )));
                    }
                }
            }
            if !high.cols[self.highest_vector].is_empty() {
                return Err(Error::BrokenRealization(format!(
                    "highest vector not annihilated by raising {root}"
                )));
            }
        }
        if self.weights[self.highest_vector] != self.highest_weight {
            return Err(Error::BrokenRealization("highest vector has wrong weight".into()));
        }
        Ok(())
    }

    /// Check that [e_α, e_{−α}] acts diagonally with eigenvalue ⟨μ, α∨⟩
    /// for every simple root α.
    pub fn check_commutation(&self) -> Result<()> {
        let roots = self.roots();
        let n = self.alg.rank;
        let mut simple: Vec<Root> = Vec::new();
        for i in 1..n {
            let mut coords = vec![0i64; n];
            coords[i - 1] = 1;
            coords[i] = -1;
            simple.push(Root { coords });
        }
        let mut coords = vec![0i64; n];
        match self.alg.kind {
            AlgKind::B => coords[n - 1] = 1,
            AlgKind::D => {
                coords[n - 2] = 1;
                coords[n - 1] = 1;
            }
        }
        simple.push(Root { coords });

        for alpha in &simple {
            let idx = roots
                .iter()
                .position(|r| r == alpha)
                .expect("simple root present in numeration");
            let e = &self.raising_ops[idx];
            let f = &self.lowering_ops[idx];
            for c in 0..self.dim() {
                let basis = ModuleVector::unit(c);
                let ef = e.apply(&f.apply(&basis));
                let fe = f.apply(&e.apply(&basis));
                let mut diff = ef.coeffs;
                for (r, v) in fe.coeffs {
                    let cell = diff.entry(r).or_insert_with(Rat::zero);
                    *cell -= v;
                }
                diff.retain(|_, v| !v.is_zero());
                let expect = self.weights[c].pair_coroot(alpha);
                let mut want = BTreeMap::new();
                if expect != 0 {
                    want.insert(c, rat(expect));
                }
                if diff != want {
                    return Err(Error::BrokenRealization(format!(
                        "[e,f] for {alpha} is not ⟨μ,α∨⟩·id on basis vector {c}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The divided-power monomial v(σ) = ∏ e_{−α_i}^{p_i}/p_i! · v_λ,
    /// applied right-to-left (the α_N factor first).
    pub fn signature_vector(&self, sigma: &Signature) -> Result<ModuleVector> {
        if sigma.highest_weight != self.highest_weight {
            return Err(Error::WeightMismatch);
        }
        if sigma.exponents.len() != self.lowering_ops.len() {
            return Err(Error::LengthMismatch {
                expected: self.lowering_ops.len(),
                got: sigma.exponents.len(),
            });
        }
        let mut v = ModuleVector::unit(self.highest_vector);
        for idx in (0..self.lowering_ops.len()).rev() {
            let p = sigma.exponents[idx];
            for t in 1..=p {
                v = self.lowering_ops[idx].apply(&v);
                if v.is_zero() {
                    return Ok(v);
                }
                v.div_int(t as i64);
            }
        }
        Ok(v)
    }

    /// A copy with each lowering operator multiplied by the matching
    /// nonzero scalar.  Raising operators are left untouched; the result
    /// still passes structural validation and spans the same cyclic
    /// submodule, which is exactly what the rescaling-invariance tests
    /// exercise.
    pub fn rescale_lowering(&self, scales: &[Rat]) -> Result<ModuleRealization> {
        if scales.len() != self.lowering_ops.len() {
            return Err(Error::LengthMismatch {
                expected: self.lowering_ops.len(),
                got: scales.len(),
            });
        }
        if scales.iter().any(|s| s.is_zero()) {
            return Err(Error::ZeroScale);
        }
        let mut out = self.clone();
        out.lowering_ops = self
            .lowering_ops
            .iter()
            .zip(scales)
            .map(|(m, s)| m.scale(s))
            .collect();
        Ok(out)
    }
}

/// Position of the signed standard-basis label in the ambient order
/// e_1..e_n, (e_0), e_{−n}..e_{−1}.
fn std_pos(alg: &AlgebraType, label: i64) -> usize {
    let n = alg.rank as i64;
    let dim = alg.standard_dim() as i64;
    let p = match label {
        0 => n,
        i if i > 0 => i - 1,
        i => dim + i,
    };
    p as usize
}

fn std_label(alg: &AlgebraType, pos: usize) -> i64 {
    let n = alg.rank;
    let dim = alg.standard_dim();
    if pos < n {
        (pos + 1) as i64
    } else if alg.kind == AlgKind::B && pos == n {
        0
    } else {
        pos as i64 - dim as i64
    }
}

/// Classified positive root: (i, j) blocks or a short ε_i.
enum RootShape {
    Minus(usize, usize),
    Plus(usize, usize),
    Short(usize),
}

fn root_shape(root: &Root) -> RootShape {
    let nz: Vec<(usize, i64)> = root
        .coords
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| (i + 1, *c))
        .collect();
    match nz.as_slice() {
        [(i, 1)] => RootShape::Short(*i),
        [(i, 1), (j, 1)] => RootShape::Plus(*i, *j),
        [(i, 1), (j, -1)] => RootShape::Minus(*i, *j),
        _ => unreachable!("malformed positive root"),
    }
}

/// The standard (vector) module with its exact root-vector matrices.
pub fn standard_module(alg: &AlgebraType) -> Result<ModuleRealization> {
    let dim = alg.standard_dim();
    let basis_labels: Vec<BasisLabel> = (0..dim).map(|p| BasisLabel::Std(std_label(alg, p))).collect();
    let weights: Vec<Weight> = (0..dim)
        .map(|p| {
            let label = std_label(alg, p);
            let mut halves = vec![0i64; alg.rank];
            if label > 0 {
                halves[label as usize - 1] = 2;
            } else if label < 0 {
                halves[(-label) as usize - 1] = -2;
            }
            Weight { halves }
        })
        .collect();

    let mut lowering_ops = Vec::new();
    let mut raising_ops = Vec::new();
    for root in positive_roots(alg) {
        // E_{a,b} maps e_b to e_a: entry (pos(a), pos(b)).
        let unit = |a: i64, b: i64, v: i64| (std_pos(alg, a), std_pos(alg, b), rat(v));
        let (low, high) = match root_shape(&root) {
            RootShape::Minus(i, j) => {
                let (i, j) = (i as i64, j as i64);
                (
                    vec![unit(j, i, 1), unit(-i, -j, -1)],
                    vec![unit(i, j, 1), unit(-j, -i, -1)],
                )
            }
            RootShape::Plus(i, j) => {
                let (i, j) = (i as i64, j as i64);
                (
                    vec![unit(-j, i, 1), unit(-i, j, -1)],
                    vec![unit(i, -j, 1), unit(j, -i, -1)],
                )
            }
            RootShape::Short(i) => {
                let i = i as i64;
                (
                    vec![unit(0, i, 1), unit(-i, 0, -1)],
                    vec![unit(i, 0, 2), unit(0, -i, -2)],
                )
            }
        };
        lowering_ops.push(SparseMat::from_entries(dim, low));
        raising_ops.push(SparseMat::from_entries(dim, high));
    }

    let m = ModuleRealization {
        alg: *alg,
        highest_weight: weights[0].clone(),
        basis_labels,
        weights,
        lowering_ops,
        raising_ops,
        highest_vector: 0,
    };
    m.validate()?;
    Ok(m)
}

fn subsets_of(dim: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..p).collect();
    if p > dim {
        return out;
    }
    loop {
        out.push(cur.clone());
        // Advance to next combination in lexicographic order.
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + dim - p {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for t in i + 1..p {
            cur[t] = cur[t - 1] + 1;
        }
    }
}

/// Derive the Leibniz action of `std_op` on p-subsets.
fn wedge_matrix(
    std_op: &SparseMat,
    subsets: &[Vec<usize>],
    index_of: &HashMap<Vec<usize>, usize>,
) -> SparseMat {
    let mut entries: Vec<(usize, usize, Rat)> = Vec::new();
    for (col_idx, subset) in subsets.iter().enumerate() {
        for (t, &x) in subset.iter().enumerate() {
            for (y, c) in &std_op.cols[x] {
                if subset.binary_search(y).is_ok() {
                    continue; // repeated factor kills the wedge
                }
                let mut target: Vec<usize> = subset.clone();
                target.remove(t);
                let tp = target.partition_point(|&z| z < *y);
                target.insert(tp, *y);
                let sign = if (t + tp) % 2 == 0 { 1 } else { -1 };
                entries.push((index_of[&target], col_idx, c * rat(sign)));
            }
        }
    }
    SparseMat::from_entries(subsets.len(), entries)
}

/// Λ^p of the standard module, highest vector e_1∧…∧e_p.
pub fn exterior_power_module(alg: &AlgebraType, p: usize) -> Result<ModuleRealization> {
    let n = alg.rank;
    if p < 1 || p > n {
        return Err(Error::PowerOutOfRange { p, n });
    }
    let std = standard_module(alg)?;
    let subsets = subsets_of(std.dim(), p);
    let index_of: HashMap<Vec<usize>, usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();

    let basis_labels: Vec<BasisLabel> = subsets
        .iter()
        .map(|s| BasisLabel::Wedge(s.iter().map(|&pos| std_label(alg, pos)).collect()))
        .collect();
    let weights: Vec<Weight> = subsets
        .iter()
        .map(|s| {
            s.iter()
                .fold(Weight::zero(n), |acc, &pos| acc.add(&std.weights[pos]))
        })
        .collect();
    let lowering_ops: Vec<SparseMat> = std
        .lowering_ops
        .iter()
        .map(|op| wedge_matrix(op, &subsets, &index_of))
        .collect();
    let raising_ops: Vec<SparseMat> = std
        .raising_ops
        .iter()
        .map(|op| wedge_matrix(op, &subsets, &index_of))
        .collect();

    let highest_vector = index_of[&(0..p).collect::<Vec<usize>>()];
    let m = ModuleRealization {
        alg: *alg,
        highest_weight: weights[highest_vector].clone(),
        basis_labels,
        weights,
        lowering_ops,
        raising_ops,
        highest_vector,
    };
    m.validate()?;
    Ok(m)
}

/// Spin (B) and half-spin (D) modules on sign-vector bases.
pub fn spin_module(alg: &AlgebraType, parity: SpinParity) -> Result<ModuleRealization> {
    let n = alg.rank;
    match (alg.kind, parity) {
        (AlgKind::B, SpinParity::Full) | (AlgKind::D, SpinParity::Even) | (AlgKind::D, SpinParity::Odd) => {}
        (AlgKind::B, _) => return Err(Error::BadParity("odd orthogonal spin module is the full one")),
        (AlgKind::D, SpinParity::Full) => {
            return Err(Error::BadParity("even orthogonal spin module splits into half-spins"))
        }
    }

    // Bit s of a mask set ⟺ slot s+1 carries a minus.
    let masks: Vec<usize> = (0usize..1 << n)
        .filter(|m| match parity {
            SpinParity::Full => true,
            SpinParity::Even => m.count_ones() % 2 == 0,
            SpinParity::Odd => m.count_ones() % 2 == 1,
        })
        .collect();
    let index_of: HashMap<usize, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    let basis_labels: Vec<BasisLabel> = masks
        .iter()
        .map(|&m| {
            BasisLabel::Spin((0..n).map(|s| if m >> s & 1 == 1 { -1i8 } else { 1 }).collect())
        })
        .collect();
    let weights: Vec<Weight> = masks
        .iter()
        .map(|&m| Weight {
            halves: (0..n).map(|s| if m >> s & 1 == 1 { -1 } else { 1 }).collect(),
        })
        .collect();

    // a_s† / a_s on a mask: flip bit s−1, sign (−1)^{#minuses left of slot s}.
    let create = |s: usize, m: usize| -> Option<(usize, i64)> {
        let bit = 1usize << (s - 1);
        if m & bit != 0 {
            return None;
        }
        let sign = if (m & (bit - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
        Some((m | bit, sign))
    };
    let annihilate = |s: usize, m: usize| -> Option<(usize, i64)> {
        let bit = 1usize << (s - 1);
        if m & bit == 0 {
            return None;
        }
        let sign = if (m & (bit - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
        Some((m & !bit, sign))
    };
    let parity_sign = |m: usize| -> i64 {
        if m.count_ones() % 2 == 0 {
            1
        } else {
            -1
        }
    };

    let mut lowering_ops = Vec::new();
    let mut raising_ops = Vec::new();
    for root in positive_roots(alg) {
        let mut low: Vec<(usize, usize, Rat)> = Vec::new();
        let mut high: Vec<(usize, usize, Rat)> = Vec::new();
        for (col, &m) in masks.iter().enumerate() {
            match root_shape(&root) {
                RootShape::Minus(i, j) => {
                    // lowering a_i†a_j, raising a_j†a_i (rightmost acts first)
                    if let Some((m1, s1)) = annihilate(j, m) {
                        if let Some((m2, s2)) = create(i, m1) {
                            low.push((index_of[&m2], col, rat(s1 * s2)));
                        }
                    }
                    if let Some((m1, s1)) = annihilate(i, m) {
                        if let Some((m2, s2)) = create(j, m1) {
                            high.push((index_of[&m2], col, rat(s1 * s2)));
                        }
                    }
                }
                RootShape::Plus(i, j) => {
                    // lowering a_i†a_j†, raising a_j a_i
                    if let Some((m1, s1)) = create(j, m) {
                        if let Some((m2, s2)) = create(i, m1) {
                            low.push((index_of[&m2], col, rat(s1 * s2)));
                        }
                    }
                    if let Some((m1, s1)) = annihilate(i, m) {
                        if let Some((m2, s2)) = annihilate(j, m1) {
                            high.push((index_of[&m2], col, rat(s1 * s2)));
                        }
                    }
                }
                RootShape::Short(i) => {
                    // lowering a_i†ψ_0, raising −a_iψ_0
                    let pm = parity_sign(m);
                    if let Some((m2, s2)) = create(i, m) {
                        low.push((index_of[&m2], col, rat(pm * s2)));
                    }
                    if let Some((m2, s2)) = annihilate(i, m) {
                        high.push((index_of[&m2], col, rat(-pm * s2)));
                    }
                }
            }
        }
        lowering_ops.push(SparseMat::from_entries(masks.len(), low));
        raising_ops.push(SparseMat::from_entries(masks.len(), high));
    }

    // Highest vector: all-plus for ω_n; single minus in slot n for the
    // other half-spin module.
    let hv_mask = match parity {
        SpinParity::Odd => 1usize << (n - 1),
        _ => 0,
    };
    let highest_vector = index_of[&hv_mask];
    let m = ModuleRealization {
        alg: *alg,
        highest_weight: weights[highest_vector].clone(),
        basis_labels,
        weights,
        lowering_ops,
        raising_ops,
        highest_vector,
    };
    m.validate()?;
    Ok(m)
}

/// The one-dimensional trivial module.
pub fn trivial_module(alg: &AlgebraType) -> Result<ModuleRealization> {
    let nroots = alg.num_positive_roots();
    let m = ModuleRealization {
        alg: *alg,
        highest_weight: Weight::zero(alg.rank),
        basis_labels: vec![BasisLabel::Trivial],
        weights: vec![Weight::zero(alg.rank)],
        lowering_ops: vec![SparseMat::zero(1); nroots],
        raising_ops: vec![SparseMat::zero(1); nroots],
        highest_vector: 0,
    };
    m.validate()?;
    Ok(m)
}

/// Full tensor product with highest vector v_λ ⊗ v_μ.  Consumers only ever
/// apply lowering operators to that vector, so the reachable span is the
/// cyclic submodule V(λ+μ).
pub fn cyclic_tensor_module(m1: &ModuleRealization, m2: &ModuleRealization) -> Result<ModuleRealization> {
    if m1.alg != m2.alg {
        return Err(Error::AlgebraMismatch);
    }
    let (d1, d2) = (m1.dim(), m2.dim());
    let dim = d1 * d2;
    let pair = |i: usize, j: usize| i * d2 + j;

    let mut basis_labels = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    for i in 0..d1 {
        for j in 0..d2 {
            basis_labels.push(BasisLabel::Pair(
                Box::new(m1.basis_labels[i].clone()),
                Box::new(m2.basis_labels[j].clone()),
            ));
            weights.push(m1.weights[i].add(&m2.weights[j]));
        }
    }

    let leibniz = |a: &SparseMat, b: &SparseMat| -> SparseMat {
        let mut entries: Vec<(usize, usize, Rat)> = Vec::new();
        for i in 0..d1 {
            for j in 0..d2 {
                let col = pair(i, j);
                for (r, v) in &a.cols[i] {
                    entries.push((pair(*r, j), col, v.clone()));
                }
                for (r, v) in &b.cols[j] {
                    entries.push((pair(i, *r), col, v.clone()));
                }
            }
        }
        SparseMat::from_entries(dim, entries)
    };

    let lowering_ops: Vec<SparseMat> = m1
        .lowering_ops
        .iter()
        .zip(&m2.lowering_ops)
        .map(|(a, b)| leibniz(a, b))
        .collect();
    let raising_ops: Vec<SparseMat> = m1
        .raising_ops
        .iter()
        .zip(&m2.raising_ops)
        .map(|(a, b)| leibniz(a, b))
        .collect();

    let m = ModuleRealization {
        alg: m1.alg,
        highest_weight: m1.highest_weight.add(&m2.highest_weight),
        basis_labels,
        weights,
        lowering_ops,
        raising_ops,
        highest_vector: pair(m1.highest_vector, m2.highest_vector),
    };
    m.validate()?;
    Ok(m)
}

/// The module factor realizing the fundamental weight ω_i.
fn fundamental_factor(alg: &AlgebraType, i: usize) -> Result<ModuleRealization> {
    let n = alg.rank;
    match alg.kind {
        AlgKind::B => {
            if i < n {
                exterior_power_module(alg, i)
            } else {
                spin_module(alg, SpinParity::Full)
            }
        }
        AlgKind::D => {
            if i <= n - 2 {
                exterior_power_module(alg, i)
            } else if i == n - 1 {
                spin_module(alg, SpinParity::Odd)
            } else {
                spin_module(alg, SpinParity::Even)
            }
        }
    }
}

/// A module containing V(λ) as the cyclic span of its highest vector:
/// the tensor product of fundamental factors, one per unit of each
/// fundamental coefficient, folded left to right.
pub fn realize(alg: &AlgebraType, fund: &[i64]) -> Result<ModuleRealization> {
    // Validates dominance and length.
    Weight::from_fund(alg, fund)?;
    let mut acc: Option<ModuleRealization> = None;
    for (i, &k) in fund.iter().enumerate() {
        for _ in 0..k {
            let factor = fundamental_factor(alg, i + 1)?;
            acc = Some(match acc {
                None => factor,
                Some(prev) => cyclic_tensor_module(&prev, &factor)?,
            });
        }
    }
    match acc {
        Some(m) => Ok(m),
        None => trivial_module(alg),
    }
}

/// Ambient dimension equals the irreducible dimension exactly when the
/// realization is itself irreducible; asserted for the cases where that
/// holds (all exterior powers of B, those of D below the top, spin
/// modules).
pub fn assert_irreducible_ambient(m: &ModuleRealization) -> Result<()> {
    let expect = weyl_dim(&m.alg, &m.highest_weight)?;
    if num::BigUint::from(m.dim()) != expect {
        return Err(Error::Cardinality {
            expected: expect.to_string(),
            got: m.dim(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{
        fundamental_weight, hatted_weight, minus_root_index, plus_root_index, short_root_index,
    };

    #[test]
    fn standard_modules() {
        let d2 = AlgebraType::d(2).unwrap();
        let m = standard_module(&d2).unwrap();
        assert_eq!(m.dim(), 4);
        let mut ws: Vec<Vec<i64>> = m.weights.iter().map(|w| w.halves.clone()).collect();
        ws.sort();
        assert_eq!(ws, vec![vec![-2, 0], vec![0, -2], vec![0, 2], vec![2, 0]]);

        let b2 = AlgebraType::b(2).unwrap();
        let m = standard_module(&b2).unwrap();
        assert_eq!(m.dim(), 5);
        assert_eq!(m.basis_labels[2], BasisLabel::Std(0));
        assert_eq!(m.weights[2], Weight::zero(2));
        m.check_commutation().unwrap();
        standard_module(&d2).unwrap().check_commutation().unwrap();
    }

    #[test]
    fn sl2_string_in_standard_module() {
        let d2 = AlgebraType::d(2).unwrap();
        let m = standard_module(&d2).unwrap();
        let f = &m.lowering_ops[minus_root_index(1, 2)];
        let e1 = ModuleVector::unit(0);
        let once = f.apply(&e1);
        assert!(!once.is_zero());
        assert!(f.apply(&once).is_zero());
        // e_2 is the bottom of its α-string already.
        let e2 = ModuleVector::unit(1);
        assert!(f.apply(&e2).is_zero());
    }

    #[test]
    fn exterior_powers() {
        let b2 = AlgebraType::b(2).unwrap();
        let m = exterior_power_module(&b2, 2).unwrap();
        assert_eq!(m.dim(), 10);
        assert_irreducible_ambient(&m).unwrap();
        m.check_commutation().unwrap();

        let d3 = AlgebraType::d(3).unwrap();
        let m = exterior_power_module(&d3, 2).unwrap();
        assert_eq!(m.dim(), 15);
        assert_eq!(m.highest_weight, hatted_weight(&d3, 2).unwrap());
        assert_irreducible_ambient(&m).unwrap();
        m.check_commutation().unwrap();

        // Λ^1 is the standard module under relabeling.
        let m1 = exterior_power_module(&d3, 1).unwrap();
        let std = standard_module(&d3).unwrap();
        assert_eq!(m1.weights, std.weights);
        assert_eq!(m1.lowering_ops, std.lowering_ops);

        assert!(exterior_power_module(&d3, 0).is_err());
        assert!(exterior_power_module(&d3, 4).is_err());
    }

    #[test]
    fn spin_modules() {
        let b2 = AlgebraType::b(2).unwrap();
        let m = spin_module(&b2, SpinParity::Full).unwrap();
        assert_eq!(m.dim(), 4);
        assert_irreducible_ambient(&m).unwrap();
        m.check_commutation().unwrap();
        assert!(spin_module(&b2, SpinParity::Even).is_err());

        let d3 = AlgebraType::d(3).unwrap();
        let even = spin_module(&d3, SpinParity::Even).unwrap();
        assert_eq!(even.dim(), 4);
        assert_eq!(even.highest_weight, fundamental_weight(&d3, 3).unwrap());
        assert_irreducible_ambient(&even).unwrap();
        even.check_commutation().unwrap();
        let odd = spin_module(&d3, SpinParity::Odd).unwrap();
        assert_eq!(odd.highest_weight, fundamental_weight(&d3, 2).unwrap());
        odd.check_commutation().unwrap();
        assert!(spin_module(&d3, SpinParity::Full).is_err());

        // Weight multiset of the rank-2 odd half-spin module.
        let d2 = AlgebraType::d(2).unwrap();
        let odd2 = spin_module(&d2, SpinParity::Odd).unwrap();
        let mut ws: Vec<Vec<i64>> = odd2.weights.iter().map(|w| w.halves.clone()).collect();
        ws.sort();
        assert_eq!(ws, vec![vec![-1, 1], vec![1, -1]]);
    }

    #[test]
    fn tensor_modules() {
        let d2 = AlgebraType::d(2).unwrap();
        let t = cyclic_tensor_module(&trivial_module(&d2).unwrap(), &trivial_module(&d2).unwrap()).unwrap();
        assert_eq!(t.dim(), 1);
        assert_eq!(t.highest_weight, Weight::zero(2));

        let m = realize(&d2, &[1, 1]).unwrap();
        assert_eq!(m.dim(), 4);
        assert_eq!(m.highest_weight.halves, vec![2, 0]);
        m.check_commutation().unwrap();

        let b2 = AlgebraType::b(2).unwrap();
        assert!(cyclic_tensor_module(&trivial_module(&d2).unwrap(), &trivial_module(&b2).unwrap()).is_err());
    }

    #[test]
    fn leibniz_rule_on_simple_tensor() {
        let d2 = AlgebraType::d(2).unwrap();
        let s1 = spin_module(&d2, SpinParity::Odd).unwrap();
        let s2 = spin_module(&d2, SpinParity::Even).unwrap();
        let t = cyclic_tensor_module(&s1, &s2).unwrap();
        let idx = minus_root_index(1, 2);
        let lhs = t.lowering_ops[idx].apply(&ModuleVector::unit(t.highest_vector));
        // (f v)⊗w + v⊗(f w) computed by hand from the factors.
        let fv = s1.lowering_ops[idx].apply(&ModuleVector::unit(s1.highest_vector));
        let fw = s2.lowering_ops[idx].apply(&ModuleVector::unit(s2.highest_vector));
        let mut expect: BTreeMap<usize, Rat> = BTreeMap::new();
        for (r, v) in &fv.coeffs {
            expect.insert(r * s2.dim() + s2.highest_vector, v.clone());
        }
        for (r, v) in &fw.coeffs {
            expect.insert(s1.highest_vector * s2.dim() + r, v.clone());
        }
        assert_eq!(lhs.coeffs, expect);
    }

    #[test]
    fn signature_vectors() {
        let d2 = AlgebraType::d(2).unwrap();
        let m = realize(&d2, &[1, 0]).unwrap();
        let hw = m.highest_weight.clone();
        let zero_sig = Signature::new(&d2, hw.clone(), vec![0, 0]).unwrap();
        assert_eq!(
            m.signature_vector(&zero_sig).unwrap(),
            ModuleVector::unit(m.highest_vector)
        );
        let s10 = Signature::new(&d2, hw.clone(), vec![1, 0]).unwrap();
        let v = m.signature_vector(&s10).unwrap();
        assert!(!v.is_zero());
        let roots = m.roots();
        for (idx, _) in v.coeffs.iter() {
            assert_eq!(m.weights[*idx], s10.weight(&roots));
        }
        let s01 = Signature::new(&d2, hw.clone(), vec![0, 1]).unwrap();
        assert!(m.signature_vector(&s01).unwrap().is_zero());

        let wrong = Signature::new(&d2, Weight::zero(2), vec![0, 0]).unwrap();
        assert!(matches!(m.signature_vector(&wrong), Err(Error::WeightMismatch)));
    }

    #[test]
    fn divided_powers_match_plain_powers() {
        let b2 = AlgebraType::b(2).unwrap();
        let m = exterior_power_module(&b2, 2).unwrap();
        let hw = m.highest_weight.clone();
        // v(σ) for σ = (0,1,2,0): apply shorts^2/2! then the plus root once.
        let sig = Signature::new(&b2, hw, vec![0, 1, 2, 0]).unwrap();
        let via_divided = m.signature_vector(&sig).unwrap();
        let f_short = &m.lowering_ops[short_root_index(1, 2)];
        let f_plus = &m.lowering_ops[plus_root_index(1, 2)];
        let mut v = ModuleVector::unit(m.highest_vector);
        v = f_short.apply(&f_short.apply(&v));
        v.div_int(2);
        v = f_plus.apply(&v);
        assert_eq!(via_divided, v);
    }

    #[test]
    fn rescaling_keeps_structure() {
        let b2 = AlgebraType::b(2).unwrap();
        let m = spin_module(&b2, SpinParity::Full).unwrap();
        let scales: Vec<Rat> = (1..=4).map(|i| Rat::new(i.into(), 3.into())).collect();
        let r = m.rescale_lowering(&scales).unwrap();
        r.validate().unwrap();
        assert!(m
            .rescale_lowering(&[Rat::zero(), Rat::one(), Rat::one(), Rat::one()])
            .is_err());
    }
}
