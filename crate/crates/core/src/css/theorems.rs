//! Checkers for the pair-level constructions: subfield expansion, direct
//! sum, puncturing, extension and `(u | u+v)`. Each builds the new pair,
//! states the bounds the construction guarantees, and re-derives the
//! parameters by oracle.

use serde_json::{json, Value};

use super::{derive, Claimed, CssPair, Derivation, TheoremClaim};
use crate::budget::Budget;
use crate::combinators;
use crate::error::{Error, Result};
use crate::galois::FieldBasis;
use crate::lincode::{expand, LinearCode};

/// Unwraps an oracle value, turning a budget overflow into a
/// budget-exceeded derivation.
macro_rules! within_budget {
    ($e:expr, $theorem:expr, $inputs:expr, $pair:expr) => {
        match $e {
            Ok(v) => v,
            Err(Error::BudgetExceeded { required, budget }) => {
                return Ok(Derivation {
                    pair: $pair,
                    claim: TheoremClaim::budget_exceeded(
                        $theorem,
                        $inputs,
                        None,
                        format!("an oracle needs {required} words, budget is {budget}"),
                    ),
                })
            }
            Err(e) => return Err(e),
        }
    };
}

fn d(code: &LinearCode, budget: &Budget) -> Result<usize> {
    code.min_distance(budget).map(|r| r.value)
}

fn describe(pair: &CssPair) -> Value {
    json!({ "c1": pair.c1().to_string(), "c2": pair.c2().to_string() })
}

/// Derives the oracle parameters of `pair` and grades them against `claimed`.
pub(crate) fn assess(
    theorem: &str,
    inputs: Value,
    claimed: Claimed,
    pair: CssPair,
    budget: &Budget,
) -> Result<Derivation> {
    let params = derive(&pair, budget)?;
    Ok(Derivation {
        claim: TheoremClaim::assess(theorem, inputs, claimed, params),
        pair: Some(pair),
    })
}

/// `(β(C1), β(C2))`: length and dimension scale by `m`, `dz >= d(C1)`,
/// `dx >= d(C2⊥)`.
pub fn expand_aqecc(pair: &CssPair, basis: &FieldBasis, budget: &Budget) -> Result<Derivation> {
    const NAME: &str = "expansion";
    let m = basis.degree();
    let new = CssPair::new(expand(pair.c1(), basis)?, expand(pair.c2(), basis)?)?;
    let mut inputs = describe(pair);
    inputs["basis"] = json!(basis.elements());
    let d1 = within_budget!(d(pair.c1(), budget), NAME, inputs, Some(new));
    let d2 = within_budget!(d(&pair.c2().dual(), budget), NAME, inputs, Some(new));
    let claimed = Claimed {
        q: basis.tower().bottom().q(),
        n: m * pair.n(),
        k: m * pair.k(),
        dz: d1,
        dx: d2,
    };
    assess(NAME, inputs, claimed, new, budget)
}

/// `(C1 ⊕ C3, C2 ⊕ C4)` with `dz >= min(d1, d3)`, `dx >= min(d(C2⊥), d(C4⊥))`.
pub fn direct_sum_aqecc(a: &CssPair, b: &CssPair, budget: &Budget) -> Result<Derivation> {
    const NAME: &str = "direct-sum";
    let new = CssPair::new(
        combinators::direct_sum(a.c1(), b.c1())?,
        combinators::direct_sum(a.c2(), b.c2())?,
    )?;
    let inputs = json!({ "a": describe(a), "b": describe(b) });
    let d1 = within_budget!(d(a.c1(), budget), NAME, inputs, Some(new));
    let d3 = within_budget!(d(b.c1(), budget), NAME, inputs, Some(new));
    let d2p = within_budget!(d(&a.c2().dual(), budget), NAME, inputs, Some(new));
    let d4p = within_budget!(d(&b.c2().dual(), budget), NAME, inputs, Some(new));
    let claimed = Claimed {
        q: a.q(),
        n: a.n() + b.n(),
        k: a.k() + b.k(),
        dz: d1.min(d3),
        dx: d2p.min(d4p),
    };
    assess(NAME, inputs, claimed, new, budget)
}

/// Punctures both codes at coordinate `i`. Requires `n >= 2`, `d(C1) >= 2`,
/// `d(C2⊥) >= 2` and a nonzero word of `C2⊥` vanishing at `i`. The phase
/// bound drops by one exactly when some minimum-weight word of `C1` touches
/// `i`.
pub fn puncture_aqecc(pair: &CssPair, i: usize, budget: &Budget) -> Result<Derivation> {
    const NAME: &str = "puncture";
    pair.c1().check_coordinate(i)?;
    let inputs = json!({ "pair": describe(pair), "coordinate": i });
    if pair.n() < 2 {
        return Ok(Derivation {
            pair: None,
            claim: TheoremClaim::hypothesis_failed(NAME, inputs, None, "length must be at least 2"),
        });
    }
    let c2_dual = pair.c2().dual();
    let d1 = within_budget!(d(pair.c1(), budget), NAME, inputs, None);
    let d2p = within_budget!(d(&c2_dual, budget), NAME, inputs, None);
    let fail = |reason: String| {
        Ok(Derivation {
            pair: None,
            claim: TheoremClaim::hypothesis_failed(NAME, inputs.clone(), None, reason),
        })
    };
    if d1 < 2 {
        return fail(format!("d(C1) = {d1} < 2"));
    }
    if d2p < 2 {
        return fail(format!("d(C2⊥) = {d2p} < 2"));
    }
    if !c2_dual.has_zero_coordinate_word(i)? {
        return fail(format!("no nonzero word of C2⊥ vanishes at coordinate {i}"));
    }
    let touches = within_budget!(
        pair.c1().has_min_weight_word_at(i, budget),
        NAME,
        inputs,
        None
    );
    let new = CssPair::new(
        combinators::puncture(pair.c1(), i)?,
        combinators::puncture(pair.c2(), i)?,
    )?;
    let claimed = Claimed {
        q: pair.q(),
        n: pair.n() - 1,
        k: pair.k(),
        dz: if touches { d1 - 1 } else { d1 },
        dx: d2p,
    };
    let mut out = assess(NAME, inputs, claimed, new, budget)?;
    out.claim.notes.push(if touches {
        "a minimum-weight word of C1 is nonzero at the punctured coordinate".into()
    } else {
        "no minimum-weight word of C1 touches the punctured coordinate".into()
    });
    Ok(out)
}

/// Extends both codes by an overall parity coordinate. The phase bound rises
/// by one when every minimum-weight word of `C1` is odd-like; the flip bound
/// is the distance of the extended inner code's dual.
pub fn extend_aqecc(pair: &CssPair, budget: &Budget) -> Result<Derivation> {
    const NAME: &str = "extension";
    let inputs = describe(pair);
    let new = CssPair::new(
        combinators::extend(pair.c1()),
        combinators::extend(pair.c2()),
    )?;
    let eo = within_budget!(pair.c1().even_odd_weights(budget), NAME, inputs, Some(new));
    let dx = within_budget!(d(&new.c2().dual(), budget), NAME, inputs, Some(new));
    let (dz, case) = match (eo.even, eo.odd) {
        (Some(e), Some(o)) if o < e => (o + 1, "odd-like minimum"),
        (Some(e), Some(o)) => (e.min(o), "even-like minimum"),
        (Some(e), None) => (e, "even-like minimum"),
        (None, Some(o)) => (o + 1, "odd-like minimum"),
        (None, None) => unreachable!("C1 is nonzero"),
    };
    let claimed = Claimed {
        q: pair.q(),
        n: pair.n() + 1,
        k: pair.k(),
        dz,
        dx,
    };
    let mut out = assess(NAME, inputs, claimed, new, budget)?;
    out.claim.notes.push(case.into());
    Ok(out)
}

/// `((C1 | C1+C3), (C2 | C2+C4))` from `a = (C1, C2)` and `b = (C3, C4)`:
/// `dz >= min(2 d1, d3)`, `dx >= min(2 d(C4⊥), d(C2⊥))`.
pub fn uuv_aqecc(a: &CssPair, b: &CssPair, budget: &Budget) -> Result<Derivation> {
    const NAME: &str = "u-u-plus-v";
    let new = CssPair::new(
        combinators::uuv(a.c1(), b.c1())?,
        combinators::uuv(a.c2(), b.c2())?,
    )?;
    let inputs = json!({ "a": describe(a), "b": describe(b) });
    let d1 = within_budget!(d(a.c1(), budget), NAME, inputs, Some(new));
    let d3 = within_budget!(d(b.c1(), budget), NAME, inputs, Some(new));
    let d2p = within_budget!(d(&a.c2().dual(), budget), NAME, inputs, Some(new));
    let d4p = within_budget!(d(&b.c2().dual(), budget), NAME, inputs, Some(new));
    let claimed = Claimed {
        q: a.q(),
        n: 2 * a.n(),
        k: a.k() + b.k(),
        dz: (2 * d1).min(d3),
        dx: (2 * d4p).min(d2p),
    };
    assess(NAME, inputs, claimed, new, budget)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::css::tests::steane;
    use crate::css::Status;
    use crate::galois::{make_field, Tower};
    use crate::lincode::tests::hamming;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn direct_sum_of_steane_codes() {
        let out = direct_sum_aqecc(&steane(), &steane(), &b()).unwrap();
        assert_eq!(out.claim.status, Status::VerifiedExact);
        assert_eq!(out.params().unwrap().to_string(), "[[14,2,3/3]]_2");
        let f = make_field(2, 1).unwrap();
        let tiny = CssPair::new(LinearCode::full(f.clone(), 1), LinearCode::zero(f, 1)).unwrap();
        let out = direct_sum_aqecc(&steane(), &tiny, &b()).unwrap();
        assert_eq!(out.params().unwrap().to_string(), "[[8,2,1/1]]_2");
        assert_eq!(out.claim.status, Status::VerifiedExact);
    }

    #[test]
    fn puncture_steane() {
        let out = puncture_aqecc(&steane(), 0, &b()).unwrap();
        let c = out.claim.claimed.unwrap();
        assert_eq!((c.n, c.k, c.dz, c.dx), (6, 1, 2, 3));
        assert_eq!(out.claim.status, Status::VerifiedExact);
        assert!(puncture_aqecc(&steane(), 9, &b()).is_err());
    }

    #[test]
    fn puncture_keeps_distance_when_min_words_avoid_the_coordinate() {
        let f = make_field(2, 1).unwrap();
        let c1 =
            LinearCode::from_generator(f.clone(), 5, &[vec![1, 1, 0, 0, 0], vec![0, 0, 1, 1, 1]])
                .unwrap();
        let c2 = LinearCode::from_generator(f, 5, &[vec![1, 1, 1, 1, 1]]).unwrap();
        let out = puncture_aqecc(&CssPair::new(c1, c2).unwrap(), 2, &b()).unwrap();
        let c = out.claim.claimed.unwrap();
        assert_eq!(c.dz, 2);
        assert_eq!(out.claim.status, Status::VerifiedExact);
    }

    #[test]
    fn puncture_hypothesis_failures() {
        let f = make_field(2, 1).unwrap();
        let pair = CssPair::new(LinearCode::full(f.clone(), 3), LinearCode::zero(f, 3)).unwrap();
        let out = puncture_aqecc(&pair, 0, &b()).unwrap();
        assert_eq!(out.claim.status, Status::HypothesisFailed);
    }

    #[test]
    fn extend_steane_and_even_code() {
        let out = extend_aqecc(&steane(), &b()).unwrap();
        let c = out.claim.claimed.unwrap();
        assert_eq!((c.n, c.k, c.dz), (8, 1, 4));
        assert_eq!(out.claim.status, Status::VerifiedExact);
        let e = combinators::extend(&hamming());
        let inner = combinators::extend(&hamming().dual());
        let out = extend_aqecc(&CssPair::new(e, inner).unwrap(), &b()).unwrap();
        assert_eq!(out.claim.claimed.unwrap().dz, 4);
        assert_eq!(out.claim.notes.last().unwrap(), "even-like minimum");
        assert_eq!(out.claim.status, Status::VerifiedExact);
    }

    #[test]
    fn uuv_of_steane_codes() {
        let out = uuv_aqecc(&steane(), &steane(), &b()).unwrap();
        let c = out.claim.claimed.unwrap();
        assert_eq!((c.n, c.k, c.dz, c.dx), (14, 2, 3, 3));
        assert_eq!(out.claim.status, Status::VerifiedExact);
        let f = make_field(2, 1).unwrap();
        let short = CssPair::new(LinearCode::full(f.clone(), 3), LinearCode::zero(f, 3)).unwrap();
        assert!(uuv_aqecc(&steane(), &short, &b()).is_err());
    }

    #[test]
    fn uuv_over_gf3() {
        let f = make_field(3, 1).unwrap();
        let c3 = LinearCode::from_generator(f.clone(), 3, &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let c4 = LinearCode::from_generator(f.clone(), 3, &[vec![1, 0, 1]]).unwrap();
        let c1 = LinearCode::full(f.clone(), 3);
        let c2 = LinearCode::repetition(f, 3);
        let a = CssPair::new(c1, c2).unwrap();
        let bb = CssPair::new(c3, c4).unwrap();
        let out = uuv_aqecc(&a, &bb, &b()).unwrap();
        assert_eq!(out.claim.status, Status::VerifiedExact);
    }

    #[test]
    fn expansion_of_a_gf4_pair() {
        let f = make_field(2, 2).unwrap();
        let c1 = LinearCode::from_generator(f.clone(), 3, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let c2 = LinearCode::from_generator(f.clone(), 3, &[vec![1, 1, 0]]).unwrap();
        let pair = CssPair::new(c1, c2).unwrap();
        let tower = Arc::new(Tower::new(f, make_field(2, 1).unwrap()).unwrap());
        let basis = FieldBasis::polynomial(tower);
        let out = expand_aqecc(&pair, &basis, &b()).unwrap();
        let c = out.claim.claimed.unwrap();
        assert_eq!((c.q, c.n, c.k), (2, 6, 2));
        assert_eq!(out.claim.status, Status::VerifiedExact);
        assert_eq!(out.pair.unwrap().k(), 2);
    }
}
