use serde_json::json;

use super::{binomial, grade, guarded, rejected, to_prime};
use crate::budget::Budget;
use crate::css::{Claimed, CssPair, Derivation};
use crate::error::{Error, Result};
use crate::galois::{make_field_of_order, prime_power, BasisKind, Elem};
use crate::lincode::LinearCode;

/// `s_m(r) = sum_{i <= r} C(m, i)`.
pub fn sum_binomials(m: u32, r: usize) -> usize {
    (0..=r).map(|i| binomial(m as i64, i as i64) as usize).sum()
}

/// Span of the characters `x -> (-1)^{x·y}` of `Z_2^m` with `wt(y) <= r`,
/// over GF(q) of odd characteristic. Coordinates are indexed by `x` as an
/// integer.
pub fn character_code(q: u32, r: usize, m: u32, budget: &Budget) -> Result<LinearCode> {
    let field = make_field_of_order(q, budget.max_field)?;
    if field.p() == 2 {
        return Err(Error::InvalidParameter(
            "character codes need odd characteristic".into(),
        ));
    }
    if r > m as usize {
        return Err(Error::InvalidParameter(format!("r = {r} exceeds m = {m}")));
    }
    let n = budget.check(2, m as usize)? as usize;
    let minus = field.from_int(-1);
    let rows: Vec<Vec<Elem>> = (0..n)
        .filter(|y: &usize| y.count_ones() as usize <= r)
        .map(|y| {
            (0..n)
                .map(|x| {
                    if (x & y).count_ones() % 2 == 0 {
                        1
                    } else {
                        minus
                    }
                })
                .collect()
        })
        .collect();
    LinearCode::from_generator(field, n, &rows)
}

/// Searches for signs `s` with `C_q(r, m)⊥ = diag(s) C_q(m-r-1, m)`, for
/// `2^m <= 16`. Returns `None` when no diagonal `±1` scaling works.
pub fn character_dual_scaling(
    q: u32,
    r: usize,
    m: u32,
    budget: &Budget,
) -> Result<Option<Vec<i8>>> {
    if m > 4 {
        return Err(Error::InvalidParameter(
            "scaling search is limited to 2^m <= 16".into(),
        ));
    }
    if r >= m as usize {
        return Err(Error::InvalidParameter(format!(
            "need r < m, got r = {r}, m = {m}"
        )));
    }
    let dual = character_code(q, r, m, budget)?.dual();
    let other = character_code(q, m as usize - r - 1, m, budget)?;
    let f = other.field().clone();
    let minus = f.from_int(-1);
    let n = other.n();
    // a global sign flip maps the code to itself, so fix the first sign
    for pattern in 0u32..(1 << (n - 1)) {
        let signs: Vec<Elem> = (0..n)
            .map(|x| {
                if x > 0 && pattern >> (x - 1) & 1 == 1 {
                    minus
                } else {
                    1
                }
            })
            .collect();
        let all_in = other.generator().iter().all(|row| {
            let scaled: Vec<Elem> = row.iter().zip(&signs).map(|(&v, &s)| f.mul(v, s)).collect();
            dual.contains(&scaled)
        });
        if all_in && dual.k() == other.k() {
            return Ok(Some(
                signs.iter().map(|&s| if s == 1 { 1 } else { -1 }).collect(),
            ));
        }
    }
    Ok(None)
}

/// The pair `(C_q(r2, m), C_q(r1, m))` expanded to the prime field: length
/// `t 2^m`, dimension `t(s_m(r2) - s_m(r1))`, `dz >= 2^(m-r2)`,
/// `dx >= 2^(r1+1)`.
pub fn character_aqecc(
    q: u32,
    m: u32,
    r1: usize,
    r2: usize,
    basis: BasisKind,
    budget: &Budget,
) -> Result<Derivation> {
    const NAME: &str = "character";
    let (p, t) = prime_power(q)
        .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
    if p == 2 {
        return Err(Error::InvalidParameter(
            "character codes need odd characteristic".into(),
        ));
    }
    let t = t as usize;
    let inputs = json!({ "q": q, "m": m, "r1": r1, "r2": r2, "basis": basis });
    if r1 >= r2 || r2 > m as usize {
        return Ok(rejected(
            NAME,
            &inputs,
            None,
            format!("need 0 <= r1 < r2 <= m, got r1 = {r1}, r2 = {r2}"),
        ));
    }
    let claimed = Claimed {
        q: p,
        n: t << m,
        k: t * (sum_binomials(m, r2) - sum_binomials(m, r1)),
        dz: 1 << (m as usize - r2),
        dx: 1 << (r1 + 1),
    };
    guarded(NAME, &inputs, claimed, || {
        let c1 = character_code(q, r2, m, budget)?;
        let c2 = character_code(q, r1, m, budget)?;
        let pair = to_prime(CssPair::new(c1, c2)?, basis)?;
        grade(NAME, &inputs, claimed, pair, budget)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::css::Status;

    fn b() -> Budget {
        Budget::default()
    }

    fn params(q: u32, r: usize, m: u32) -> (usize, usize, usize) {
        let c = character_code(q, r, m, &b()).unwrap();
        (c.n(), c.k(), c.min_distance(&b()).unwrap().value)
    }

    #[test]
    fn small_instances() {
        assert_eq!(params(3, 0, 2), (4, 1, 4));
        assert_eq!(params(3, 1, 2), (4, 3, 2));
        assert_eq!(params(5, 1, 3), (8, 4, 4));
        assert!(character_code(4, 1, 2, &b()).is_err());
    }

    #[test]
    fn parameters_follow_the_formula() {
        for q in [3, 5, 9] {
            for m in 1..=3u32 {
                for r in 0..=m as usize {
                    assert_eq!(
                        params(q, r, m),
                        (1 << m, sum_binomials(m, r), 1 << (m as usize - r))
                    );
                }
            }
        }
    }

    #[test]
    fn dual_is_a_sign_scaling() {
        for (q, m) in [(3, 2), (3, 3), (5, 2)] {
            for r in 0..m as usize {
                let signs = character_dual_scaling(q, r, m, &b())
                    .unwrap()
                    .expect("scaling exists");
                assert_eq!(signs.len(), 1 << m);
                let dual = character_code(q, r, m, &b()).unwrap().dual();
                let other = character_code(q, m as usize - r - 1, m, &b()).unwrap();
                assert_eq!(
                    (dual.k(), dual.min_distance(&b()).unwrap().value),
                    (other.k(), other.min_distance(&b()).unwrap().value)
                );
            }
        }
    }

    #[test]
    fn aqecc_instances() {
        let out = character_aqecc(3, 2, 0, 1, BasisKind::Polynomial, &b()).unwrap();
        let c = out.claim.claimed.unwrap();
        assert_eq!((c.n, c.k, c.dz, c.dx), (4, 2, 2, 2));
        assert_eq!(out.claim.status, Status::VerifiedExact);
        let out = character_aqecc(9, 2, 0, 1, BasisKind::Polynomial, &b()).unwrap();
        let c = out.claim.claimed.unwrap();
        assert_eq!((c.q, c.n, c.k), (3, 8, 4));
        assert_eq!(out.claim.status, Status::VerifiedExact);
        let out = character_aqecc(3, 2, 1, 1, BasisKind::Polynomial, &b()).unwrap();
        assert_eq!(out.claim.status, Status::HypothesisFailed);
    }
}
