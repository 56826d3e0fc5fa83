use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{binomial, grade, guarded, rejected, to_prime};
use crate::budget::Budget;
use crate::css::{Claimed, CssPair, Derivation};
use crate::error::{Error, Result};
use crate::galois::{make_field_of_order, prime_power, BasisKind, Elem};
use crate::lincode::LinearCode;

/// Predicted parameters of the generalized Reed-Muller code `R_q(alpha, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrmSpec {
    pub q: u32,
    pub m: u32,
    pub alpha: usize,
    pub k: usize,
    pub d: usize,
    /// `m(q-1) - 1 - alpha`, the order of the dual code.
    pub dual_order: usize,
}

fn check_order(q: u32, m: u32, alpha: usize) -> Result<()> {
    let top = m as usize * (q as usize - 1);
    if alpha >= top {
        return Err(Error::InvalidParameter(format!(
            "order {alpha} must be below m(q-1) = {top}"
        )));
    }
    Ok(())
}

/// Number of exponent vectors in `[0, q-1]^m` of total degree at most `alpha`,
/// by inclusion-exclusion.
pub fn grm_dimension(q: u32, m: u32, alpha: usize) -> usize {
    let (q, m, a) = (q as i64, m as i64, alpha as i64);
    let mut k: i128 = 0;
    for i in 0..=m {
        let term = binomial(m, i) as i128 * binomial(m + a - i * q, a - i * q) as i128;
        k += if i % 2 == 0 { term } else { -term };
    }
    k as usize
}

/// `(t+1) q^u` with `m(q-1) - alpha = (q-1)u + t`, `0 <= t < q-1`.
pub fn grm_distance(q: u32, m: u32, alpha: usize) -> usize {
    let r = m as usize * (q as usize - 1) - alpha;
    let (u, t) = (r / (q as usize - 1), r % (q as usize - 1));
    (t + 1) * (q as usize).pow(u as u32)
}

/// Evaluation code of the reduced polynomials of total degree at most
/// `alpha` at every point of GF(q)^m. Points are in index-lexicographic
/// order with the first variable most significant; monomials are in
/// graded order.
pub fn grm(q: u32, m: u32, alpha: usize, budget: &Budget) -> Result<(LinearCode, GrmSpec)> {
    check_order(q, m, alpha)?;
    let field = make_field_of_order(q, budget.max_field)?;
    let n = budget.check(q, m as usize)? as usize;
    let mut monomials: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            (0..m)
                .map(|i| (j / (q as usize).pow(m - 1 - i)) as u32 % q)
                .collect()
        })
        .filter(|e: &Vec<u32>| e.iter().sum::<u32>() as usize <= alpha)
        .collect();
    monomials.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
    let points: Vec<Vec<Elem>> = (0..n)
        .map(|j| {
            (0..m)
                .map(|i| (j / (q as usize).pow(m - 1 - i)) as Elem % q)
                .collect()
        })
        .collect();
    let rows: Vec<Vec<Elem>> = monomials
        .iter()
        .map(|e| {
            points
                .iter()
                .map(|x| {
                    x.iter().zip(e).fold(1, |acc, (&xi, &ei)| {
                        field.mul(acc, field.pow(xi, ei as u64))
                    })
                })
                .collect()
        })
        .collect();
    let code = LinearCode::from_generator(field, n, &rows)?;
    let spec = GrmSpec {
        q,
        m,
        alpha,
        k: grm_dimension(q, m, alpha),
        d: grm_distance(q, m, alpha),
        dual_order: m as usize * (q as usize - 1) - 1 - alpha,
    };
    Ok((code, spec))
}

/// The pair `(R(alpha2), R(alpha1))` expanded to the prime field: length
/// `t q^m`, dimension `t(k(alpha2) - k(alpha1))`, `dz >= d(alpha2)` and
/// `dx >= d(alpha1⊥)`.
pub fn grm_aqecc(
    q: u32,
    m: u32,
    alpha1: usize,
    alpha2: usize,
    basis: BasisKind,
    budget: &Budget,
) -> Result<Derivation> {
    const NAME: &str = "grm";
    let (p, t) = prime_power(q)
        .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
    check_order(q, m, alpha2)?;
    if alpha1 > alpha2 {
        return Err(Error::InvalidParameter(format!(
            "alpha1 = {alpha1} exceeds alpha2 = {alpha2}"
        )));
    }
    let t = t as usize;
    let inputs = json!({ "q": q, "m": m, "alpha1": alpha1, "alpha2": alpha2, "basis": basis });
    let claimed = Claimed {
        q: p,
        n: t * (q as usize).pow(m),
        k: t * (grm_dimension(q, m, alpha2) - grm_dimension(q, m, alpha1)),
        dz: grm_distance(q, m, alpha2),
        dx: grm_distance(q, m, m as usize * (q as usize - 1) - 1 - alpha1),
    };
    if alpha1 == alpha2 {
        return Ok(rejected(
            NAME,
            &inputs,
            Some(claimed),
            "equal orders give k = 0",
        ));
    }
    guarded(NAME, &inputs, claimed, || {
        let (c1, _) = grm(q, m, alpha2, budget)?;
        let (c2, _) = grm(q, m, alpha1, budget)?;
        let pair = to_prime(CssPair::new(c1, c2)?, basis)?;
        grade(NAME, &inputs, claimed, pair, budget)
    })
}
