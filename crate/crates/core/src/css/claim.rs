use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AqeccParams, CssPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Exact oracle distances meet every claimed bound.
    VerifiedExact,
    /// Some distance is only a lower bound, and the bounds meet the claim.
    VerifiedBound,
    /// Oracles could not reach the claimed bounds within budget.
    BudgetExceeded,
    HypothesisFailed,
    /// An exact oracle value falls below a claimed bound.
    Violated,
}

impl Status {
    /// Process exit code for a command reporting this status.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::VerifiedExact => 0,
            Status::VerifiedBound | Status::BudgetExceeded => 2,
            Status::HypothesisFailed => 3,
            Status::Violated => 1,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::VerifiedExact => "verified-exact",
            Status::VerifiedBound => "verified-bound",
            Status::BudgetExceeded => "budget-exceeded",
            Status::HypothesisFailed => "hypothesis-failed",
            Status::Violated => "violated",
        };
        f.write_str(s)
    }
}

/// Parameters asserted by a construction: exact `n`, `k` and lower bounds on
/// `dz`, `dx`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claimed {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub dz: usize,
    pub dx: usize,
}

impl fmt::Display for Claimed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{},>={}/>={}]]_{}",
            self.n, self.k, self.dz, self.dx, self.q
        )
    }
}

/// One run of a construction checker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremClaim {
    pub theorem: String,
    pub inputs: serde_json::Value,
    pub claimed: Option<Claimed>,
    pub oracle: Option<AqeccParams>,
    pub status: Status,
    pub notes: Vec<String>,
}

impl TheoremClaim {
    pub fn hypothesis_failed(
        theorem: &str,
        inputs: serde_json::Value,
        claimed: Option<Claimed>,
        reason: impl Into<String>,
    ) -> TheoremClaim {
        TheoremClaim {
            theorem: theorem.to_string(),
            inputs,
            claimed,
            oracle: None,
            status: Status::HypothesisFailed,
            notes: vec![reason.into()],
        }
    }

    pub fn budget_exceeded(
        theorem: &str,
        inputs: serde_json::Value,
        claimed: Option<Claimed>,
        reason: impl Into<String>,
    ) -> TheoremClaim {
        TheoremClaim {
            theorem: theorem.to_string(),
            inputs,
            claimed,
            oracle: None,
            status: Status::BudgetExceeded,
            notes: vec![reason.into()],
        }
    }

    /// Compares oracle parameters against the claim.
    pub fn assess(
        theorem: &str,
        inputs: serde_json::Value,
        claimed: Claimed,
        oracle: AqeccParams,
    ) -> TheoremClaim {
        let mut notes = Vec::new();
        let mut violated = false;
        if (oracle.q, oracle.n, oracle.k) != (claimed.q, claimed.n, claimed.k) {
            notes.push(format!("oracle code is {oracle}, claim is {claimed}"));
            violated = true;
        }
        let mut short = false;
        for (name, got, want) in [("dz", oracle.dz, claimed.dz), ("dx", oracle.dx, claimed.dx)] {
            if got.value < want {
                if got.exact {
                    notes.push(format!(
                        "{name} = {} is below the claimed {want}",
                        got.value
                    ));
                    violated = true;
                } else {
                    notes.push(format!("{name} known only as >= {}", got.value));
                    short = true;
                }
            }
        }
        if oracle.pure == Some(true) && !oracle.satisfies_singleton() {
            notes.push("advisory: k > n - dx - dz + 2".into());
        }
        let status = if violated {
            Status::Violated
        } else if short {
            Status::BudgetExceeded
        } else if oracle.dz.exact && oracle.dx.exact {
            Status::VerifiedExact
        } else {
            Status::VerifiedBound
        };
        TheoremClaim {
            theorem: theorem.to_string(),
            inputs,
            claimed: Some(claimed),
            oracle: Some(oracle),
            status,
            notes,
        }
    }
}

/// Result of a CSS-level construction checker.
#[derive(Debug, Clone)]
pub struct Derivation {
    pub pair: Option<CssPair>,
    pub claim: TheoremClaim,
}

impl Derivation {
    pub fn params(&self) -> Option<&AqeccParams> {
        self.claim.oracle.as_ref()
    }
}
