//! Exact Weyl dimension formula for types `B_n` and `D_n`.
//!
//! dim V(λ) = ∏_{α>0} ⟨λ+ρ, α⟩ / ∏_{α>0} ⟨ρ, α⟩, with ρ half the sum of
//! the positive roots.  Both pairings are evaluated in doubled
//! ε-coordinates, so each factor is an integer and the common scale
//! cancels between numerator and denominator.  The quotient is computed as
//! one exact big-integer division at the end.

use num::bigint::BigInt;
use num::{BigUint, Integer, One, Zero};

use crate::root_system::{positive_roots, AlgKind, AlgebraType, Weight};
use crate::{Error, Result};

/// Doubled ε-coordinates of ρ: `B_n` has ρ_i = n−i+½, `D_n` has ρ_i = n−i.
pub fn rho_halves(alg: &AlgebraType) -> Vec<i64> {
    let n = alg.rank as i64;
    (1..=n)
        .map(|i| match alg.kind {
            AlgKind::B => 2 * (n - i) + 1,
            AlgKind::D => 2 * (n - i),
        })
        .collect()
}

/// Exact dimension of the irreducible module with highest weight λ.
pub fn weyl_dim(alg: &AlgebraType, lambda: &Weight) -> Result<BigUint> {
    // Validates dominance and integrality as a side effect.
    lambda.fund(alg)?;
    let rho = rho_halves(alg);
    let shifted: Vec<i64> = lambda
        .halves
        .iter()
        .zip(&rho)
        .map(|(l, r)| l + r)
        .collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for root in positive_roots(alg) {
        let dot = |h: &[i64]| -> i64 {
            h.iter().zip(&root.coords).map(|(a, c)| a * c).sum()
        };
        num *= BigInt::from(dot(&shifted));
        den *= BigInt::from(dot(&rho));
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero(), "Weyl quotient must be exact");
    q.try_into().map_err(|_| Error::NotDominant(lambda.halves.clone()))
}
