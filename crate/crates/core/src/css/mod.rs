//! CSS codes from nested pairs `C2 ⊂ C1`, and checkers for the
//! constructions that transform such pairs.

mod claim;
mod theorems;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::galois::FiniteField;
use crate::lincode::{CodeRecord, LinearCode};

pub use claim::{Claimed, Derivation, Status, TheoremClaim};
pub(crate) use theorems::assess;
pub use theorems::{direct_sum_aqecc, expand_aqecc, extend_aqecc, puncture_aqecc, uuv_aqecc};

/// A strictly nested pair `c2 ⊂ c1` over one field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PairRecord", into = "PairRecord")]
pub struct CssPair {
    c1: LinearCode,
    c2: LinearCode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub c1: CodeRecord,
    pub c2: CodeRecord,
}

impl CssPair {
    pub fn new(c1: LinearCode, c2: LinearCode) -> Result<CssPair> {
        if c1.field() != c2.field() {
            return Err(Error::FieldMismatch(format!(
                "{:?} vs {:?}",
                c1.field(),
                c2.field()
            )));
        }
        if c1.n() != c2.n() {
            return Err(Error::LengthMismatch {
                expected: c1.n(),
                got: c2.n(),
            });
        }
        if !c2.is_subcode_of(&c1) {
            return Err(Error::NotNested);
        }
        if c1.k() == c2.k() {
            return Err(Error::NotStrictlyNested);
        }
        Ok(CssPair { c1, c2 })
    }

    pub fn c1(&self) -> &LinearCode {
        &self.c1
    }

    pub fn c2(&self) -> &LinearCode {
        &self.c2
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.c1.field()
    }

    pub fn q(&self) -> u32 {
        self.c1.q()
    }

    pub fn n(&self) -> usize {
        self.c1.n()
    }

    /// Logical dimension `k1 - k2`.
    pub fn k(&self) -> usize {
        self.c1.k() - self.c2.k()
    }
}

impl From<CssPair> for PairRecord {
    fn from(pair: CssPair) -> Self {
        PairRecord {
            c1: pair.c1.record(),
            c2: pair.c2.record(),
        }
    }
}

impl TryFrom<PairRecord> for CssPair {
    type Error = Error;

    fn try_from(r: PairRecord) -> Result<Self> {
        let budget = Budget::default();
        CssPair::new(
            LinearCode::from_record(&r.c1, &budget)?,
            LinearCode::from_record(&r.c2, &budget)?,
        )
    }
}

/// A distance that is either exact or only a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distance {
    pub value: usize,
    pub exact: bool,
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.value)
        } else {
            write!(f, ">={}", self.value)
        }
    }
}

/// `[[n, k, dz/dx]]_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AqeccParams {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub dz: Distance,
    pub dx: Distance,
    pub pure: Option<bool>,
}

impl AqeccParams {
    /// `k <= n - dx - dz + 2`; only meaningful for exact distances.
    pub fn satisfies_singleton(&self) -> bool {
        self.k + self.dx.value + self.dz.value <= self.n + 2
    }
}

impl fmt::Display for AqeccParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{},{}/{}]]_{}",
            self.n, self.k, self.dz, self.dx, self.q
        )
    }
}

fn relative_or_bound(outer: &LinearCode, inner: &LinearCode, budget: &Budget) -> Result<Distance> {
    match outer.relative_min_weight(inner, budget) {
        Ok(r) => Ok(Distance {
            value: r.value,
            exact: true,
        }),
        Err(Error::BudgetExceeded { .. }) => {
            let value = outer.min_distance(budget).map(|r| r.value).unwrap_or(1);
            Ok(Distance {
                value,
                exact: false,
            })
        }
        Err(e) => Err(e),
    }
}

/// `dz = wt(C1 \ C2)`, `dx = wt(C2⊥ \ C1⊥)`. Out-of-budget distances fall
/// back to the absolute distance of the outer code, flagged inexact.
pub fn derive(pair: &CssPair, budget: &Budget) -> Result<AqeccParams> {
    let (c1, c2) = (pair.c1(), pair.c2());
    let (d1, d2) = (c1.dual(), c2.dual());
    let dz = relative_or_bound(c1, c2, budget)?;
    let dx = relative_or_bound(&d2, &d1, budget)?;
    let pure = if dz.exact && dx.exact {
        match (c1.min_distance(budget), d2.min_distance(budget)) {
            (Ok(a), Ok(b)) => Some(dz.value == a.value && dx.value == b.value),
            _ => None,
        }
    } else {
        None
    };
    Ok(AqeccParams {
        q: pair.q(),
        n: pair.n(),
        k: pair.k(),
        dz,
        dx,
        pure,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::galois::make_field;
    use crate::lincode::tests::hamming;

    pub(crate) fn steane() -> CssPair {
        let h = hamming();
        CssPair::new(h.clone(), h.dual()).unwrap()
    }

    #[test]
    fn steane_parameters() {
        let p = derive(&steane(), &Budget::default()).unwrap();
        assert_eq!(p.to_string(), "[[7,1,3/3]]_2");
        assert_eq!(p.pure, Some(true));
        assert!(p.satisfies_singleton());
    }

    #[test]
    fn degenerate_extremes() {
        let f = make_field(3, 1).unwrap();
        let pair = CssPair::new(LinearCode::full(f.clone(), 4), LinearCode::zero(f, 4)).unwrap();
        let p = derive(&pair, &Budget::default()).unwrap();
        assert_eq!(p.to_string(), "[[4,4,1/1]]_3");
    }

    #[test]
    fn nesting_is_validated() {
        let h = hamming();
        assert_eq!(CssPair::new(h.dual(), h.clone()), Err(Error::NotNested));
        assert_eq!(
            CssPair::new(h.clone(), h.clone()),
            Err(Error::NotStrictlyNested)
        );
    }

    #[test]
    fn out_of_budget_falls_back_to_bounds() {
        let p = derive(&steane(), &Budget::with_codewords(8)).unwrap();
        // both relative weights still resolve through the dual distributions
        assert!(p.dz.exact && p.dx.exact);
        let p = derive(&steane(), &Budget::with_codewords(4)).unwrap();
        assert!(!p.dz.exact);
        assert_eq!(p.pure, None);
        assert!(p.to_string().contains(">="));
    }

    #[test]
    fn pair_serde_round_trip() {
        let s = serde_json::to_string(&steane()).unwrap();
        let back: CssPair = serde_json::from_str(&s).unwrap();
        assert_eq!(back, steane());
    }
}
