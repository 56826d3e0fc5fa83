//! Checkers for the stabilizer-level constructions: symplectic expansion
//! over a subfield, and puncturing of a purely distanced code.

use serde_json::{json, Value};

use super::{AdditiveCode, StabilizerParams};
use crate::budget::Budget;
use crate::css::{Claimed, TheoremClaim};
use crate::error::{Error, Result};
use crate::galois::FieldBasis;

#[derive(Debug, Clone)]
pub struct StabilizerDerivation {
    pub code: Option<AdditiveCode>,
    pub claim: TheoremClaim,
}

/// Unwraps an oracle value; budget overflows and undefined distances end
/// the run with a claim instead of an error.
macro_rules! within_budget {
    ($e:expr, $theorem:expr, $inputs:expr, $code:expr) => {
        match $e {
            Ok(v) => v,
            Err(Error::BudgetExceeded { required, budget }) => {
                return Ok(StabilizerDerivation {
                    code: $code,
                    claim: TheoremClaim::budget_exceeded(
                        $theorem,
                        $inputs,
                        None,
                        format!("an oracle needs {required} words, budget is {budget}"),
                    ),
                })
            }
            Err(Error::UndefinedDistance) => {
                return Ok(StabilizerDerivation {
                    code: $code,
                    claim: TheoremClaim::hypothesis_failed(
                        $theorem,
                        $inputs,
                        None,
                        "the code has no logical operator of some kind, so dz or dx is undefined",
                    ),
                })
            }
            Err(e) => return Err(e),
        }
    };
}

fn grade(
    theorem: &str,
    inputs: Value,
    claimed: Claimed,
    code: AdditiveCode,
    params: StabilizerParams,
) -> StabilizerDerivation {
    let claim = match params.as_aqecc() {
        Some(oracle) => TheoremClaim::assess(theorem, inputs, claimed, oracle),
        None => TheoremClaim::hypothesis_failed(
            theorem,
            inputs,
            Some(claimed),
            format!(
                "K = {}^{} is not a power of q = {}",
                code.field().p(),
                params.e,
                params.q
            ),
        ),
    };
    StabilizerDerivation {
        code: Some(code),
        claim,
    }
}

/// Expands a stabilizer code over GF(Q^m) to one over GF(Q) of length `nm`
/// with `K` unchanged, `dz* >= dz` and `dx* >= dx`.
pub fn expansion_stabilizer(
    code: &AdditiveCode,
    basis: &FieldBasis,
    budget: &Budget,
) -> Result<StabilizerDerivation> {
    const NAME: &str = "stabilizer-expansion";
    let inputs = json!({ "code": code.to_string(), "basis": basis.elements() });
    let image = code.expand(basis)?;
    let before = within_budget!(code.stabilizer_params(budget), NAME, inputs, Some(image));
    let after = within_budget!(image.stabilizer_params(budget), NAME, inputs, Some(image));
    let q = basis.tower().bottom().q();
    let t = basis.tower().bottom().m() as usize;
    if before.e % t != 0 {
        return Ok(StabilizerDerivation {
            code: Some(image),
            claim: TheoremClaim::hypothesis_failed(
                NAME,
                inputs,
                None,
                format!("K = p^{} is not a power of {q}", before.e),
            ),
        });
    }
    let claimed = Claimed {
        q,
        n: code.n() * basis.degree(),
        k: before.e / t,
        dz: before.dz,
        dx: before.dx,
    };
    Ok(grade(NAME, inputs, claimed, image, after))
}

/// Punctures position `i` of a code whose normalizer is strongly pure:
/// every vector of `C⊥s` with a nonzero X part has X-weight at least `dx`,
/// and likewise for Z. The result has length `n - 1`, the same `K`, and
/// distances at least `dz - 1`, `dx - 1`.
///
/// The code is shortened at `i` and then completed greedily, adding the
/// first normalizer generator outside the current code until the rank is
/// `rank C - t`.
pub fn puncture_stabilizer(
    code: &AdditiveCode,
    i: usize,
    budget: &Budget,
) -> Result<StabilizerDerivation> {
    const NAME: &str = "stabilizer-puncture";
    if i >= code.n() {
        return Err(Error::CoordinateOutOfRange {
            index: i,
            n: code.n(),
        });
    }
    let inputs = json!({ "code": code.to_string(), "i": i });
    if code.n() < 2 {
        return Ok(StabilizerDerivation {
            code: None,
            claim: TheoremClaim::hypothesis_failed(NAME, inputs, None, "length must be at least 2"),
        });
    }
    let before = within_budget!(code.stabilizer_params(budget), NAME, inputs, None);
    let Some(k) = before.k() else {
        return Ok(StabilizerDerivation {
            code: None,
            claim: TheoremClaim::hypothesis_failed(NAME, inputs, None, "K is not a power of q"),
        });
    };
    let claimed = Claimed {
        q: code.q(),
        n: code.n() - 1,
        k,
        dz: before.dz.saturating_sub(1),
        dx: before.dx.saturating_sub(1),
    };
    if before.dz < 2 || before.dx < 2 {
        return Ok(StabilizerDerivation {
            code: None,
            claim: TheoremClaim::hypothesis_failed(
                NAME,
                inputs,
                Some(claimed),
                "distances must be at least 2",
            ),
        });
    }
    let normalizer = code.symplectic_dual();
    let (wx, wz) = within_budget!(normalizer.min_partial_weights(budget), NAME, inputs, None);
    if wx.is_some_and(|w| w < before.dx) || wz.is_some_and(|w| w < before.dz) {
        return Ok(StabilizerDerivation {
            code: None,
            claim: TheoremClaim::hypothesis_failed(
                NAME,
                inputs,
                Some(claimed),
                format!(
                    "normalizer is not strongly pure: X-weight {:?} vs dx {}, Z-weight {:?} vs dz {}",
                    wx, before.dx, wz, before.dz
                ),
            ),
        });
    }

    let target = code.rank() - code.t();
    let mut punctured = code.shorten(i)?;
    while punctured.rank() < target {
        let dual = punctured.symplectic_dual();
        let Some(row) = dual
            .generator()
            .iter()
            .find(|r| !punctured.contains_digits(r))
            .cloned()
        else {
            break;
        };
        punctured = punctured.with_rows(&[row]);
    }
    let after = within_budget!(
        punctured.stabilizer_params(budget),
        NAME,
        inputs,
        Some(punctured)
    );
    let mut derivation = grade(NAME, inputs, claimed, punctured, after);
    if let Some(oracle) = &derivation.claim.oracle {
        if oracle.pure != Some(true) {
            derivation
                .claim
                .notes
                .push("punctured code is not pure".into());
        }
    }
    Ok(derivation)
}
