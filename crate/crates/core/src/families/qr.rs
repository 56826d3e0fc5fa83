use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{cyclic_code, grade, guarded, rejected, to_prime};
use crate::budget::Budget;
use crate::css::{Claimed, CssPair, Derivation, TheoremClaim};
use crate::error::{Error, Result};
use crate::galois::{is_prime, prime_power, prime_tower, BasisKind, FieldBasis};
use crate::lincode::LinearCode;
use crate::symplectic::AdditiveCode;

/// The four quadratic residue codes of prime length `p` over GF(q).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QrSpec {
    pub p: u32,
    pub q: u32,
    pub residues: Vec<usize>,
    pub non_residues: Vec<usize>,
    /// Zeros at the residues, dimension `(p+1)/2`.
    pub q_code: LinearCode,
    /// Zeros at the residues and at 1, dimension `(p-1)/2`.
    pub q_even: LinearCode,
    pub c_code: LinearCode,
    pub c_even: LinearCode,
}

fn residue_check(p: u32, q: u32) -> std::result::Result<(), String> {
    if p < 3 || !is_prime(p) {
        return Err(format!("{p} is not an odd prime"));
    }
    if prime_power(q).is_none() {
        return Err(format!("{q} is not a prime power"));
    }
    if q.is_multiple_of(p) {
        return Err(format!("{p} divides {q}"));
    }
    if !(1..p).any(|x| (x as u64 * x as u64) % p as u64 == (q % p) as u64) {
        return Err(format!("{q} is not a quadratic residue mod {p}"));
    }
    Ok(())
}

pub fn qr(p: u32, q: u32, budget: &Budget) -> Result<QrSpec> {
    residue_check(p, q).map_err(Error::InvalidParameter)?;
    let residues: BTreeSet<usize> = (1..p as usize).map(|x| x * x % p as usize).collect();
    let non_residues: BTreeSet<usize> = (1..p as usize).filter(|x| !residues.contains(x)).collect();
    let n = p as usize;
    let with_one = |s: &BTreeSet<usize>| {
        let mut s = s.clone();
        s.insert(0);
        s
    };
    Ok(QrSpec {
        p,
        q,
        q_code: cyclic_code(q, n, &residues, budget)?.0,
        q_even: cyclic_code(q, n, &with_one(&residues), budget)?.0,
        c_code: cyclic_code(q, n, &non_residues, budget)?.0,
        c_even: cyclic_code(q, n, &with_one(&non_residues), budget)?.0,
        residues: residues.into_iter().collect(),
        non_residues: non_residues.into_iter().collect(),
    })
}

/// `⌈√p⌉` for `p = 1 mod 4`; otherwise the least `d` with `d² - d + 1 >= p`.
pub fn qr_distance_bound(p: u32) -> usize {
    let p = p as usize;
    if p % 4 == 1 {
        (1..).find(|d| d * d >= p).unwrap()
    } else {
        (1..).find(|d| d * d - d + 1 >= p).unwrap()
    }
}

/// Quantum codes from the quadratic residue codes of length `p` over GF(q),
/// `q = p*^t`. For `p = 1 mod 4` the pair is `(Q, C⊥)`; for `p = 3 mod 4`
/// it is `(Q, Q⊥)`, and the expanded variant goes through the symplectic
/// expansion of its stabilizer code. Unexpanded: `[[p, 1]]_q`; expanded:
/// `[[tp, t]]_{p*}`. Both distances are claimed at least
/// [`qr_distance_bound`].
pub fn qr_aqecc(
    p: u32,
    q: u32,
    expanded: bool,
    basis: BasisKind,
    budget: &Budget,
) -> Result<Derivation> {
    let name = if expanded { "expanded-qr" } else { "qr" };
    let inputs = json!({ "p": p, "q": q, "basis": basis });
    if let Err(reason) = residue_check(p, q) {
        return Ok(rejected(name, &inputs, None, reason));
    }
    let (pstar, t) = prime_power(q).expect("checked");
    let d = qr_distance_bound(p);
    let claimed = if expanded {
        Claimed {
            q: pstar,
            n: t as usize * p as usize,
            k: t as usize,
            dz: d,
            dx: d,
        }
    } else {
        Claimed {
            q,
            n: p as usize,
            k: 1,
            dz: d,
            dx: d,
        }
    };
    guarded(name, &inputs, claimed, || {
        let spec = qr(p, q, budget)?;
        if p % 4 == 1 {
            let c_dual = spec.c_code.dual();
            let mut out = {
                let pair = CssPair::new(spec.q_code.clone(), c_dual.clone())?;
                let pair = if expanded {
                    to_prime(pair, basis)?
                } else {
                    pair
                };
                grade(name, &inputs, claimed, pair, budget)?
            };
            if c_dual != spec.q_even {
                out.claim
                    .notes
                    .push("C⊥ differs from the even-like residue code".into());
            }
            return Ok(out);
        }
        let pair = CssPair::new(spec.q_code.clone(), spec.q_code.dual())?;
        if !expanded {
            return grade(name, &inputs, claimed, pair, budget);
        }
        let mut code = AdditiveCode::from_css(&pair);
        if t > 1 {
            code = code.expand(&FieldBasis::of_kind(prime_tower(pair.field()), basis))?;
        }
        let params = code.stabilizer_params(budget)?;
        let mut claim = match params.as_aqecc() {
            Some(oracle) => TheoremClaim::assess(name, inputs.clone(), claimed, oracle),
            None => TheoremClaim::hypothesis_failed(
                name,
                inputs.clone(),
                Some(claimed),
                "K is not a power of q",
            ),
        };
        claim
            .notes
            .push("derived through the symplectic expansion".into());
        Ok(Derivation {
            pair: Some(pair),
            claim,
        })
    })
}
