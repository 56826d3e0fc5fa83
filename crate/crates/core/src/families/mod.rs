//! Classical code families (generalized Reed-Muller, character, BCH,
//! quadratic residue) with their predicted parameters, and checkers for the
//! asymmetric quantum codes derived from them by subfield expansion.

mod bch;
mod character;
mod grm;
mod qr;

use serde_json::Value;

use crate::budget::Budget;
use crate::css::{self, Claimed, CssPair, Derivation, TheoremClaim};
use crate::error::{Error, Result};
use crate::galois::{prime_tower, BasisKind, FieldBasis};
use crate::lincode::expand;

pub use bch::{
    abch1_aqecc, bch, cyclic_code, cyclotomic_cosets, multiplicative_order, salah_aqecc,
    salah_dimension, Abch1Item, BchSpec,
};
pub use character::{character_aqecc, character_code, character_dual_scaling, sum_binomials};
pub use grm::{grm, grm_aqecc, grm_dimension, grm_distance, GrmSpec};
pub use qr::{qr, qr_aqecc, qr_distance_bound, QrSpec};

pub(crate) fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Expands both codes of `pair` down to the prime field.
pub(crate) fn to_prime(pair: CssPair, kind: BasisKind) -> Result<CssPair> {
    if pair.field().m() == 1 {
        return Ok(pair);
    }
    let basis = FieldBasis::of_kind(prime_tower(pair.field()), kind);
    CssPair::new(expand(pair.c1(), &basis)?, expand(pair.c2(), &basis)?)
}

/// Runs `body`, reporting budget and field-size overflows as a
/// budget-exceeded claim that still carries the predicted parameters.
pub(crate) fn guarded(
    theorem: &str,
    inputs: &Value,
    claimed: Claimed,
    body: impl FnOnce() -> Result<Derivation>,
) -> Result<Derivation> {
    match body() {
        Err(e @ (Error::BudgetExceeded { .. } | Error::FieldTooLarge { .. })) => Ok(Derivation {
            pair: None,
            claim: TheoremClaim::budget_exceeded(
                theorem,
                inputs.clone(),
                Some(claimed),
                e.to_string(),
            ),
        }),
        other => other,
    }
}

pub(crate) fn grade(
    theorem: &str,
    inputs: &Value,
    claimed: Claimed,
    pair: CssPair,
    budget: &Budget,
) -> Result<Derivation> {
    css::assess(theorem, inputs.clone(), claimed, pair, budget)
}

pub(crate) fn rejected(
    theorem: &str,
    inputs: &Value,
    claimed: Option<Claimed>,
    reason: impl Into<String>,
) -> Derivation {
    Derivation {
        pair: None,
        claim: TheoremClaim::hypothesis_failed(theorem, inputs.clone(), claimed, reason),
    }
}
