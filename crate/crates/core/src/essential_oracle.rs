//! Ground-truth essential-signature computation straight from the
//! definition: enumerate every divided-power monomial v(σ) ≠ 0 in an
//! explicit realization, then keep σ exactly when v(σ) does not lie in
//! the span of the v(τ) with τ < σ.
//!
//! Because every realization here carries a weight basis, vectors of
//! distinct weights have disjoint support, so the span test decomposes
//! by weight class; each class is processed independently in increasing
//! exponent order with exact fraction-free integer elimination.  A
//! global-elimination variant ignoring the weight grading is kept for
//! cross-checking that equivalence.

use std::collections::HashMap;

use num::bigint::BigInt;
use num::{Integer, One, Zero};
use rayon::prelude::*;

use crate::rep_modules::{ModuleRealization, ModuleVector};
use crate::root_system::{compare_signatures, AlgebraType, LexDirection, Signature, Weight};
use crate::weyl::weyl_dim;
use crate::{Error, Result};

/// The essential signatures of one highest-weight module, sorted
/// increasing under the signature order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialSet {
    pub alg: AlgebraType,
    pub highest_weight: Weight,
    pub signatures: Vec<Signature>,
}

impl EssentialSet {
    pub fn len(&self) -> usize {
        self.signatures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signatures.is_empty()
    }

    /// The bare exponent tuples, in set order.
    pub fn exponents(&self) -> Vec<Vec<u32>> {
        self.signatures.iter().map(|s| s.exponents.clone()).collect()
    }

    pub fn contains_exponents(&self, exps: &[u32]) -> bool {
        self.signatures.iter().any(|s| s.exponents == exps)
    }
}

fn enumerate_with_vectors(m: &ModuleRealization) -> Vec<(Vec<u32>, ModuleVector)> {
    fn rec(
        m: &ModuleRealization,
        remaining: usize,
        exps: &mut Vec<u32>,
        v: &ModuleVector,
        out: &mut Vec<(Vec<u32>, ModuleVector)>,
    ) {
        if remaining == 0 {
            out.push((exps.clone(), v.clone()));
            return;
        }
        let ridx = remaining - 1;
        rec(m, ridx, exps, v, out);
        let mut cur = v.clone();
        let mut t = 1u32;
        loop {
            cur = m.lowering_ops[ridx].apply(&cur);
            if cur.is_zero() {
                break;
            }
            cur.div_int(t as i64);
            exps[ridx] = t;
            rec(m, ridx, exps, &cur, out);
            t += 1;
        }
        exps[ridx] = 0;
    }

    let nroots = m.lowering_ops.len();
    let mut exps = vec![0u32; nroots];
    let mut out = Vec::new();
    let hv = ModuleVector::unit(m.highest_vector);
    rec(m, nroots, &mut exps, &hv, &mut out);
    out
}

/// All signatures with v(σ) ≠ 0, found by depth-first recursion over the
/// roots α_N, α_{N−1}, …, α_1: at each level the exponent is incremented
/// while the partial vector stays nonzero.  The pruning is exact: once a
/// divided power of a single lowering operator kills the vector, higher
/// powers of it stay zero.
pub fn enumerate_nonzero_signatures(m: &ModuleRealization) -> Vec<Signature> {
    enumerate_with_vectors(m)
        .into_iter()
        .map(|(exps, _)| Signature {
            highest_weight: m.highest_weight.clone(),
            exponents: exps,
        })
        .collect()
}

/// Clear denominators and divide out the content, producing a primitive
/// integer row (sorted by index).
fn integer_row(v: &ModuleVector) -> Vec<(usize, BigInt)> {
    let mut lcm = BigInt::one();
    for c in v.coeffs.values() {
        lcm = lcm.lcm(c.denom());
    }
    let mut row: Vec<(usize, BigInt)> = v
        .coeffs
        .iter()
        .map(|(i, c)| (*i, c.numer() * (&lcm / c.denom())))
        .collect();
    let mut content = BigInt::zero();
    for (_, c) in &row {
        content = content.gcd(c);
    }
    if !content.is_one() && !content.is_zero() {
        for (_, c) in &mut row {
            *c = &*c / &content;
        }
    }
    row
}

/// Incremental echelon basis over the integers with fraction-free row
/// updates; at most one stored row per leading index.
#[derive(Default)]
struct Eliminator {
    /// Rows keyed by leading index.
    rows: HashMap<usize, Vec<(usize, BigInt)>>,
}

fn content_reduce(row: &mut Vec<(usize, BigInt)>) {
    let mut content = BigInt::zero();
    for (_, c) in row.iter() {
        content = content.gcd(c);
    }
    if !content.is_one() && !content.is_zero() {
        for (_, c) in row.iter_mut() {
            *c = &*c / &content;
        }
    }
}

/// a·x + b·y for sorted sparse rows.
fn row_combine(
    a: &BigInt,
    x: &[(usize, BigInt)],
    b: &BigInt,
    y: &[(usize, BigInt)],
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, b * &y[j].1));
            j += 1;
        } else {
            let v = a * &x[i].1 + b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Eliminator {
    /// Reduce `row` against the basis; if a nonzero remainder survives,
    /// store it and report that the span grew.
    fn grows(&mut self, mut row: Vec<(usize, BigInt)>) -> bool {
        loop {
            let Some((lead, lead_coeff)) = row.first().map(|(i, c)| (*i, c.clone())) else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(pivot) => {
                    let pivot_lead = pivot[0].1.clone();
                    row = row_combine(&pivot_lead, &row, &(-lead_coeff), pivot);
                    content_reduce(&mut row);
                }
                None => {
                    content_reduce(&mut row);
                    self.rows.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

fn keep_essentials(
    alg: &AlgebraType,
    mut class: Vec<(Vec<u32>, ModuleVector)>,
    dir: LexDirection,
) -> Vec<Vec<u32>> {
    class.sort_by(|(a, _), (b, _)| {
        crate::root_system::compare_exponents(alg, a, b, dir).expect("uniform exponent length")
    });
    let mut elim = Eliminator::default();
    let mut kept = Vec::new();
    for (exps, v) in class {
        if elim.grows(integer_row(&v)) {
            kept.push(exps);
        }
    }
    kept
}

/// Essential signatures of the cyclic span of the highest vector, via
/// per-weight-class ordered elimination, under the given order direction.
pub fn essential_set_with(m: &ModuleRealization, dir: LexDirection) -> Result<EssentialSet> {
    let roots = m.roots();
    let mut classes: HashMap<Vec<i64>, Vec<(Vec<u32>, ModuleVector)>> = HashMap::new();
    for (exps, v) in enumerate_with_vectors(m) {
        let sig = Signature {
            highest_weight: m.highest_weight.clone(),
            exponents: exps,
        };
        let w = sig.weight(&roots);
        classes.entry(w.halves).or_default().push((sig.exponents, v));
    }
    let mut class_list: Vec<(Vec<i64>, Vec<(Vec<u32>, ModuleVector)>)> = classes.into_iter().collect();
    class_list.sort_by(|(a, _), (b, _)| a.cmp(b));

    let alg = m.alg;
    let kept: Vec<Vec<Vec<u32>>> = class_list
        .into_par_iter()
        .map(|(_, class)| keep_essentials(&alg, class, dir))
        .collect();

    let mut signatures: Vec<Signature> = kept
        .into_iter()
        .flatten()
        .map(|exponents| Signature {
            highest_weight: m.highest_weight.clone(),
            exponents,
        })
        .collect();
    signatures.sort_by(|a, b| compare_signatures(&alg, a, b, dir).expect("same algebra"));

    let expect = weyl_dim(&alg, &m.highest_weight)?;
    if num::BigUint::from(signatures.len()) != expect {
        return Err(Error::Cardinality {
            expected: expect.to_string(),
            got: signatures.len(),
        });
    }
    Ok(EssentialSet {
        alg,
        highest_weight: m.highest_weight.clone(),
        signatures,
    })
}

/// [`essential_set_with`] under the default order direction.
pub fn essential_set(m: &ModuleRealization) -> Result<EssentialSet> {
    essential_set_with(m, LexDirection::default())
}

/// Same computation with one global elimination over all signatures in
/// exponent order, ignoring the weight grading.  Must agree with
/// [`essential_set_with`]: vectors of distinct weights have disjoint
/// support in a weight basis, hence are independent.
pub fn essential_set_global(m: &ModuleRealization, dir: LexDirection) -> Result<EssentialSet> {
    let alg = m.alg;
    let mut all = enumerate_with_vectors(m);
    all.sort_by(|(a, _), (b, _)| {
        crate::root_system::compare_exponents(&alg, a, b, dir).expect("uniform exponent length")
    });
    let mut elim = Eliminator::default();
    let mut signatures = Vec::new();
    for (exps, v) in all {
        if elim.grows(integer_row(&v)) {
            signatures.push(Signature {
                highest_weight: m.highest_weight.clone(),
                exponents: exps,
            });
        }
    }
    signatures.sort_by(|a, b| compare_signatures(&alg, a, b, dir).expect("same algebra"));
    let expect = weyl_dim(&alg, &m.highest_weight)?;
    if num::BigUint::from(signatures.len()) != expect {
        return Err(Error::Cardinality {
            expected: expect.to_string(),
            got: signatures.len(),
        });
    }
    Ok(EssentialSet {
        alg,
        highest_weight: m.highest_weight.clone(),
        signatures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep_modules::{realize, standard_module, trivial_module};
    use itertools::Itertools;

    fn exps(set: &EssentialSet) -> Vec<Vec<u32>> {
        set.exponents()
    }

    #[test]
    fn trivial_module_oracle() {
        let b3 = AlgebraType::b(3).unwrap();
        let m = trivial_module(&b3).unwrap();
        assert_eq!(enumerate_nonzero_signatures(&m).len(), 1);
        let ess = essential_set(&m).unwrap();
        assert_eq!(exps(&ess), vec![vec![0u32; 9]]);
    }

    #[test]
    fn rank_two_fundamentals() {
        let d2 = AlgebraType::d(2).unwrap();
        let m = realize(&d2, &[1, 0]).unwrap();
        let nonzero: Vec<Vec<u32>> = enumerate_nonzero_signatures(&m)
            .into_iter()
            .map(|s| s.exponents)
            .sorted()
            .collect();
        assert_eq!(nonzero, vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(exps(&essential_set(&m).unwrap()), vec![vec![0, 0], vec![1, 0]]);

        let m = realize(&d2, &[0, 1]).unwrap();
        assert_eq!(exps(&essential_set(&m).unwrap()), vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn standard_module_rank_two() {
        let b2 = AlgebraType::b(2).unwrap();
        let m = standard_module(&b2).unwrap();
        let nonzero = enumerate_nonzero_signatures(&m);
        // Six nonzero monomials; the two of weight −ε_1 are dependent, so
        // five essentials remain — one per weight of the 5-dim module.
        assert_eq!(nonzero.len(), 6);
        let ess = essential_set(&m).unwrap();
        assert_eq!(ess.len(), 5);
        assert!(ess.contains_exponents(&[1, 1, 0, 0]));
        assert!(!ess.contains_exponents(&[0, 0, 2, 0]));
    }

    #[test]
    fn spin_rank_two() {
        let b2 = AlgebraType::b(2).unwrap();
        let m = realize(&b2, &[0, 1]).unwrap();
        let ess = essential_set(&m).unwrap();
        assert_eq!(
            exps(&ess),
            vec![
                vec![0, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 0, 1],
                vec![1, 0, 0, 1],
            ]
        );
    }

    #[test]
    fn global_elimination_agrees() {
        for (alg, fund) in [
            (AlgebraType::d(2).unwrap(), vec![1i64, 1]),
            (AlgebraType::d(2).unwrap(), vec![2, 1]),
            (AlgebraType::b(2).unwrap(), vec![1, 0]),
            (AlgebraType::b(2).unwrap(), vec![0, 1]),
            (AlgebraType::b(2).unwrap(), vec![1, 1]),
        ] {
            let m = realize(&alg, &fund).unwrap();
            for dir in [LexDirection::Standard, LexDirection::Flipped] {
                let by_class = essential_set_with(&m, dir).unwrap();
                let global = essential_set_global(&m, dir).unwrap();
                assert_eq!(by_class, global, "{alg} {fund:?} {dir}");
            }
        }
    }

    #[test]
    fn rank_two_boxes() {
        // Σ(kω_1 + lω_2) = { (p_1, p_2) : p_1 ≤ k, p_2 ≤ l }.
        let d2 = AlgebraType::d(2).unwrap();
        for k in 0..=2u32 {
            for l in 0..=2u32 {
                let m = realize(&d2, &[k as i64, l as i64]).unwrap();
                let ess = essential_set(&m).unwrap();
                let expect: Vec<Vec<u32>> = (0..=l)
                    .flat_map(|p2| (0..=k).map(move |p1| vec![p1, p2]))
                    .collect();
                let got: Vec<Vec<u32>> = exps(&ess).into_iter().sorted().collect();
                let expect: Vec<Vec<u32>> = expect.into_iter().sorted().collect();
                assert_eq!(got, expect, "k={k} l={l}");
            }
        }
    }

    #[test]
    fn sums_of_essentials_stay_essential() {
        for (alg, f1, f2) in [
            (AlgebraType::d(2).unwrap(), vec![1i64, 0], vec![0i64, 1]),
            (AlgebraType::b(2).unwrap(), vec![1, 0], vec![0, 1]),
        ] {
            let m1 = realize(&alg, &f1).unwrap();
            let m2 = realize(&alg, &f2).unwrap();
            let sum_fund: Vec<i64> = f1.iter().zip(&f2).map(|(a, b)| a + b).collect();
            let msum = realize(&alg, &sum_fund).unwrap();
            let e1 = essential_set(&m1).unwrap();
            let e2 = essential_set(&m2).unwrap();
            let esum = essential_set(&msum).unwrap();
            for s in &e1.signatures {
                for t in &e2.signatures {
                    let st = s.plus(t);
                    assert!(
                        esum.signatures.iter().any(|u| u.exponents == st.exponents),
                        "{:?}+{:?}",
                        s.exponents,
                        t.exponents
                    );
                }
            }
        }
    }
}
