use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{grade, guarded, rejected, to_prime};
use crate::budget::Budget;
use crate::css::{Claimed, CssPair, Derivation};
use crate::error::{Error, Result};
use crate::galois::{
    gcd, make_field_of_order, make_field_within, poly, prime_power, BasisKind, Elem, Tower,
};
use crate::lincode::LinearCode;

/// Least `m >= 1` with `q^m = 1 mod n`, or `None` when `gcd(q, n) != 1`.
pub fn multiplicative_order(q: u64, n: u64) -> Option<u32> {
    if n == 0 || gcd(q, n) != 1 {
        return None;
    }
    if n == 1 {
        return Some(1);
    }
    let mut x = q % n;
    let mut m = 1;
    while x != 1 {
        x = x * q % n;
        m += 1;
    }
    Some(m)
}

/// Orbits of `Z_n` under multiplication by `q`, each sorted, ordered by
/// their least element.
pub fn cyclotomic_cosets(q: u64, n: u64) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut x = s;
        while !seen[x as usize] {
            seen[x as usize] = true;
            coset.push(x as usize);
            x = x * q % n;
        }
        coset.sort_unstable();
        out.push(coset);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BchSpec {
    pub q: u32,
    pub n: usize,
    pub b: usize,
    pub delta: usize,
    /// `ord_n(q)`; the roots live in GF(q^m).
    pub m: u32,
    /// Cyclotomic cosets whose roots are zeros of the code.
    pub cosets: Vec<Vec<usize>>,
    /// Generator polynomial over GF(q), ascending.
    pub generator: Vec<Elem>,
    pub degree: usize,
}

/// Cyclic code of length `n` over GF(q) whose zeros are `α^s`, `s ∈ zeros`,
/// with `α = γ^((q^m - 1)/n)` for the canonical primitive `γ` of GF(q^m).
/// `zeros` must be a union of cyclotomic cosets. Returns the code and its
/// generator polynomial.
pub fn cyclic_code(
    q: u32,
    n: usize,
    zeros: &BTreeSet<usize>,
    budget: &Budget,
) -> Result<(LinearCode, Vec<Elem>)> {
    let field = make_field_of_order(q, budget.max_field)?;
    let m = multiplicative_order(q as u64, n as u64)
        .ok_or_else(|| Error::InvalidParameter(format!("gcd({q}, {n}) != 1")))?;
    if zeros
        .iter()
        .any(|&s| s >= n || !zeros.contains(&(s * q as usize % n)))
    {
        return Err(Error::InvalidParameter(
            "zeros must be a union of cyclotomic cosets".into(),
        ));
    }
    let top = make_field_within(field.p(), field.m() * m, budget.max_field)?;
    let tower = Tower::new(top.clone(), field.clone())?;
    let alpha = top.pow(top.generator(), (top.q() as u64 - 1) / n as u64);
    let g_top = poly::from_roots(&top, zeros.iter().map(|&s| top.pow(alpha, s as u64)));
    let g: Vec<Elem> = g_top
        .iter()
        .map(|&c| {
            tower
                .project(c)
                .expect("coset union gives a polynomial over the base field")
        })
        .collect();
    let deg = g.len() - 1;
    let rows: Vec<Vec<Elem>> = (0..n - deg)
        .map(|i| {
            let mut row = vec![0; n];
            row[i..i + g.len()].copy_from_slice(&g);
            row
        })
        .collect();
    Ok((LinearCode::from_generator(field, n, &rows)?, g))
}

fn coset_union(
    q: u32,
    n: usize,
    exponents: impl IntoIterator<Item = usize>,
) -> (BTreeSet<usize>, Vec<Vec<usize>>) {
    let wanted: BTreeSet<usize> = exponents.into_iter().map(|s| s % n).collect();
    let cosets: Vec<Vec<usize>> = cyclotomic_cosets(q as u64, n as u64)
        .into_iter()
        .filter(|c| c.iter().any(|s| wanted.contains(s)))
        .collect();
    (cosets.iter().flatten().copied().collect(), cosets)
}

/// BCH code with zeros `α^b, ..., α^(b+delta-2)` and their conjugates.
pub fn bch(
    q: u32,
    n: usize,
    b: usize,
    delta: usize,
    budget: &Budget,
) -> Result<(LinearCode, BchSpec)> {
    if delta == 0 || n == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and delta >= 1".into()));
    }
    let m = multiplicative_order(q as u64, n as u64)
        .ok_or_else(|| Error::InvalidParameter(format!("gcd({q}, {n}) != 1")))?;
    let (zeros, cosets) = coset_union(q, n, b..b + delta - 1);
    let (code, generator) = cyclic_code(q, n, &zeros, budget)?;
    let spec = BchSpec {
        q,
        n,
        b,
        delta,
        m,
        cosets,
        degree: generator.len() - 1,
        generator,
    };
    Ok((code, spec))
}

fn ceil_frac(delta: usize, q: u32) -> usize {
    ((delta - 1) * (q as usize - 1)).div_ceil(q as usize)
}

/// `n - m⌈(δ1-1)(1-1/q)⌉ - m⌈(δ2-1)(1-1/q)⌉`, or `None` if negative.
pub fn salah_dimension(q: u32, n: usize, m: u32, delta1: usize, delta2: usize) -> Option<usize> {
    n.checked_sub(m as usize * (ceil_frac(delta1, q) + ceil_frac(delta2, q)))
}

/// Nested narrow-sense BCH codes `C2 ⊂ C1` with designed distances
/// `delta2 > delta1` in the dual-containing range give the pair
/// `(C2, C1⊥)`, expanded to the prime field: `dz >= delta2`,
/// `dx >= delta1`.
pub fn salah_aqecc(
    q: u32,
    n: usize,
    delta1: usize,
    delta2: usize,
    basis: BasisKind,
    budget: &Budget,
) -> Result<Derivation> {
    const NAME: &str = "bch-salah";
    let (p, t) = prime_power(q)
        .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
    let t = t as usize;
    let inputs = json!({ "q": q, "n": n, "delta1": delta1, "delta2": delta2, "basis": basis });
    let Some(m) = multiplicative_order(q as u64, n as u64) else {
        return Ok(rejected(NAME, &inputs, None, format!("gcd({q}, {n}) != 1")));
    };
    let qm = (q as u128).checked_pow(m).unwrap_or(u128::MAX);
    let low = (q as u128).pow(m / 2);
    if !(low < n as u128 && (n as u128) < qm) {
        return Ok(rejected(
            NAME,
            &inputs,
            None,
            format!("need {low} < n <= {}", qm - 1),
        ));
    }
    let delta_max = ((n as u128 * (q as u128).pow(m.div_ceil(2)) / (qm - 1)) as usize).min(n);
    if delta1 < 2 || delta2 < 2 || delta1.max(delta2) > delta_max {
        return Ok(rejected(
            NAME,
            &inputs,
            None,
            format!("designed distances must lie in [2, {delta_max}]"),
        ));
    }
    if delta1 >= delta2 {
        return Ok(rejected(NAME, &inputs, None, "need delta1 < delta2"));
    }
    if coset_union(q, n, 1..delta1).0 == coset_union(q, n, 1..delta2).0 {
        return Ok(rejected(
            NAME,
            &inputs,
            None,
            "the two designed distances give the same coset union",
        ));
    }
    let Some(k) = salah_dimension(q, n, m, delta1, delta2) else {
        return Ok(rejected(
            NAME,
            &inputs,
            None,
            "dimension formula is negative",
        ));
    };
    let claimed = Claimed {
        q: p,
        n: t * n,
        k: t * k,
        dz: delta2,
        dx: delta1,
    };
    guarded(NAME, &inputs, claimed, || {
        let (c1, _) = bch(q, n, 1, delta1, budget)?;
        let (c2, _) = bch(q, n, 1, delta2, budget)?;
        let pair = match CssPair::new(c2, c1.dual()) {
            Ok(pair) => pair,
            Err(Error::NotNested | Error::NotStrictlyNested) => {
                return Ok(rejected(
                    NAME,
                    &inputs,
                    Some(claimed),
                    "C1⊥ is not strictly contained in C2",
                ));
            }
            Err(e) => return Err(e),
        };
        grade(NAME, &inputs, claimed, to_prime(pair, basis)?, budget)
    })
}

/// The five parameter shapes for `n = q^m - 1`, odd `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "item", rename_all = "kebab-case")]
pub enum Abch1Item {
    First,
    Second { c: usize },
    Third { c: usize, l: usize },
    Fourth { c: usize, l: usize },
    Fifth { l: usize },
}

impl std::fmt::Display for Abch1Item {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Abch1Item::First => write!(f, "first"),
            Abch1Item::Second { c } => write!(f, "second c={c}"),
            Abch1Item::Third { c, l } => write!(f, "third c={c} l={l}"),
            Abch1Item::Fourth { c, l } => write!(f, "fourth c={c} l={l}"),
            Abch1Item::Fifth { l } => write!(f, "fifth l={l}"),
        }
    }
}

impl Abch1Item {
    /// Every item with in-range `c`, `l` for the given `q`.
    pub fn all(q: u32) -> Vec<Abch1Item> {
        let q = q as usize;
        let mut out = vec![Abch1Item::First];
        out.extend((0..=q - 2).map(|c| Abch1Item::Second { c }));
        for c in 2..=q {
            out.extend((0..=c - 2).map(|l| Abch1Item::Third { c, l }));
        }
        for c in q + 3..=2 * q {
            out.extend((0..=c - q - 3).map(|l| Abch1Item::Fourth { c, l }));
        }
        out.extend((0..=q - 2).map(|l| Abch1Item::Fifth { l }));
        out
    }

    /// `(k, dz, dx)` before expansion, or the violated range condition.
    pub fn parameters(self, q: u32, m: u32) -> std::result::Result<(usize, usize, usize), String> {
        let q = q as i64;
        let m = m as i64;
        let n = q.pow(m as u32) - 1;
        let (k, dz, dx) = match self {
            Abch1Item::First => (n - m * (4 * q - 5) - 2, 2 * q + 2, 2 * q),
            Abch1Item::Second { c } => {
                let c = c as i64;
                if c > q - 2 {
                    return Err(format!("need 0 <= c <= {}", q - 2));
                }
                (n - m * (4 * q - c - 5) - 2, 2 * q + 2, 2 * q - c)
            }
            Abch1Item::Third { c, l } => {
                let (c, l) = (c as i64, l as i64);
                if !(2 <= c && c <= q && l <= c - 2) {
                    return Err(format!("need 2 <= c <= {q} and 0 <= l <= c - 2"));
                }
                (n - m * (2 * c - l - 4) - 2, c, c - l)
            }
            Abch1Item::Fourth { c, l } => {
                let (c, l) = (c as i64, l as i64);
                if !(q + 2 < c && c <= 2 * q && l <= c - q - 3) {
                    return Err(format!(
                        "need {} < c <= {} and 0 <= l <= c - q - 3",
                        q + 2,
                        2 * q
                    ));
                }
                (n - m * (2 * c - l - 6) - 2, c, c - l)
            }
            Abch1Item::Fifth { l } => {
                let l = l as i64;
                if l > q - 2 {
                    return Err(format!("need 0 <= l <= {}", q - 2));
                }
                (n - m * (4 * q - l - 5) - 1, 2 * q + 1, 2 * q - l)
            }
        };
        if k < 0 {
            return Err(format!("dimension formula gives {k}"));
        }
        Ok((k as usize, dz as usize, dx as usize))
    }
}

/// Checks one shape of the `n = q^m - 1` BCH family. The nested pair is
/// reconstructed as `C1 = BCH(b, dz)`, `C2 = BCH(b, dx)⊥` for `b ∈ {1, 0}`;
/// when neither reconstruction has the claimed dimension the instance is
/// reported as hypothesis-failed with the dimensions found.
pub fn abch1_aqecc(
    q: u32,
    m: u32,
    item: Abch1Item,
    basis: BasisKind,
    budget: &Budget,
) -> Result<Derivation> {
    const NAME: &str = "bch-primitive";
    let (p, t) = prime_power(q)
        .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
    if p == 2 {
        return Err(Error::InvalidParameter(
            "this family needs odd characteristic".into(),
        ));
    }
    let t = t as usize;
    let inputs = json!({ "q": q, "m": m, "shape": item, "basis": basis });
    let min_m = if q == 3 { 4 } else { 3 };
    if m < min_m {
        return Ok(rejected(NAME, &inputs, None, format!("need m >= {min_m}")));
    }
    let (k, dz, dx) = match item.parameters(q, m) {
        Ok(v) => v,
        Err(reason) => return Ok(rejected(NAME, &inputs, None, reason)),
    };
    let n = (q as usize).pow(m) - 1;
    let claimed = Claimed {
        q: p,
        n: t * n,
        k: t * k,
        dz,
        dx,
    };
    guarded(NAME, &inputs, claimed, || {
        let mut found = Vec::new();
        for b in [1, 0] {
            let (c1, _) = bch(q, n, b, dz, budget)?;
            let (c2x, _) = bch(q, n, b, dx, budget)?;
            let c2 = c2x.dual();
            if !c2.is_subcode_of(&c1) || c1.k() == c2.k() {
                found.push(format!("b = {b}: not nested"));
                continue;
            }
            if c1.k() - c2.k() != k {
                found.push(format!("b = {b}: k = {}", c1.k() - c2.k()));
                continue;
            }
            let pair = to_prime(CssPair::new(c1, c2)?, basis)?;
            return grade(NAME, &inputs, claimed, pair, budget);
        }
        Ok(rejected(
            NAME,
            &inputs,
            Some(claimed),
            format!(
                "BCH reconstruction does not reach k = {k} ({})",
                found.join("; ")
            ),
        ))
    })
}
