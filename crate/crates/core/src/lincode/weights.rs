//! Distance oracles: exhaustive enumeration, coset enumeration and the
//! MacWilliams transform of an exhaustively computed dual distribution.

use serde::{Deserialize, Serialize};

use super::enumerate::{tally, Layout};
use super::LinearCode;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::galois::Elem;
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightKind {
    Absolute,
    Relative,
    EvenLike,
    OddLike,
    Dual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    CosetExhaustive,
    /// Exhaustive enumeration of the dual followed by the MacWilliams identity.
    MacWilliams,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    pub codes: Vec<String>,
    pub kind: WeightKind,
    pub value: usize,
    pub method: Method,
    /// Number of words whose weight was inspected.
    pub enumerated: u128,
}

/// `counts[w]` = number of codewords of weight `w`, zero word included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub counts: Vec<u128>,
    pub method: Method,
    pub enumerated: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenOdd {
    pub even: Option<usize>,
    pub odd: Option<usize>,
    pub enumerated: u128,
}

fn with_tags(code: &LinearCode, tag_rows: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let f = code.field();
    code.generator()
        .iter()
        .map(|g| {
            let mut row = g.clone();
            row.extend(tag_rows.iter().map(|h| linalg::dot(f, g, h)));
            row
        })
        .collect()
}

/// `K_j(i)` for length `n` over an alphabet of size `q`.
pub fn krawtchouk(n: usize, q: u32, j: usize, i: usize) -> Option<i128> {
    let mut total: i128 = 0;
    for s in 0..=j.min(i) {
        if j - s > n - i {
            continue;
        }
        let term = binomial(i, s)?
            .checked_mul(binomial(n - i, j - s)?)?
            .checked_mul((q as i128 - 1).checked_pow((j - s) as u32)?)?;
        total = if s % 2 == 0 {
            total.checked_add(term)?
        } else {
            total.checked_sub(term)?
        };
    }
    Some(total)
}

fn binomial(n: usize, k: usize) -> Option<i128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as i128)? / (i as i128 + 1);
    }
    Some(acc)
}

/// Distribution of `C` from the distribution of `C⊥`; `None` on overflow.
pub fn macwilliams(n: usize, q: u32, dual_counts: &[u128]) -> Option<Vec<u128>> {
    let dual_size: i128 = dual_counts.iter().map(|&c| c as i128).sum();
    (0..=n)
        .map(|j| {
            let mut acc: i128 = 0;
            for (i, &b) in dual_counts.iter().enumerate() {
                if b != 0 {
                    acc = acc.checked_add((b as i128).checked_mul(krawtchouk(n, q, j, i)?)?)?;
                }
            }
            debug_assert_eq!(acc % dual_size, 0);
            u128::try_from(acc / dual_size).ok()
        })
        .collect()
}

// enumerations this small are never worth routing through the dual
const SMALL_ENUMERATION: u128 = 1 << 16;

impl LinearCode {
    fn prefers_direct(&self, budget: &Budget) -> bool {
        let dual_dim = self.n() - self.k();
        Budget::words(self.q(), self.k()) <= SMALL_ENUMERATION
            || self.k() <= dual_dim
            || !budget.allows(self.q(), dual_dim)
    }

    /// Words enumerated by [`LinearCode::weight_distribution`], if in budget.
    fn distribution_cost(&self, budget: &Budget) -> Option<u128> {
        [self.k(), self.n() - self.k()]
            .into_iter()
            .filter(|&k| budget.allows(self.q(), k))
            .map(|k| Budget::words(self.q(), k))
            .min()
    }

    fn direct_distribution(&self, budget: &Budget) -> Result<WeightDistribution> {
        let enumerated = budget.check(self.q(), self.k())?;
        let t = tally(
            self.field(),
            self.generator(),
            &Layout::hamming(self.n(), 0),
        );
        let mut counts: Vec<u128> = t.combined().into_iter().map(u128::from).collect();
        counts[0] += 1;
        Ok(WeightDistribution {
            counts,
            method: Method::Exhaustive,
            enumerated,
        })
    }

    /// Exact weight distribution, by enumerating whichever of `C`, `C⊥` is
    /// smaller.
    pub fn weight_distribution(&self, budget: &Budget) -> Result<WeightDistribution> {
        if self.prefers_direct(budget) {
            if let Ok(d) = self.direct_distribution(budget) {
                return Ok(d);
            }
        }
        let dual = self.dual().direct_distribution(budget)?;
        let counts =
            macwilliams(self.n(), self.q(), &dual.counts).ok_or(Error::BudgetExceeded {
                required: Budget::words(self.q(), self.k()),
                budget: budget.max_codewords,
            })?;
        Ok(WeightDistribution {
            counts,
            method: Method::MacWilliams,
            enumerated: dual.enumerated,
        })
    }

    /// Minimum Hamming weight of a nonzero codeword, cached on success.
    pub fn min_distance(&self, budget: &Budget) -> Result<WeightReport> {
        if let Some(r) = self.cached_distance().get() {
            return Ok(r.clone());
        }
        if self.k() == 0 {
            return Err(Error::ZeroCode);
        }
        let report = if budget.allows(self.q(), self.k()) && self.prefers_direct(budget) {
            let enumerated = budget.check(self.q(), self.k())?;
            let t = tally(
                self.field(),
                self.generator(),
                &Layout::hamming(self.n(), 0),
            );
            WeightReport {
                codes: vec![self.to_string()],
                kind: WeightKind::Absolute,
                value: t.min_plain().expect("nonzero code has a nonzero word"),
                method: Method::Exhaustive,
                enumerated,
            }
        } else {
            let dist = self.weight_distribution(budget)?;
            WeightReport {
                codes: vec![self.to_string()],
                kind: WeightKind::Absolute,
                value: dist
                    .counts
                    .iter()
                    .skip(1)
                    .position(|&c| c > 0)
                    .expect("nonzero code")
                    + 1,
                method: dist.method,
                enumerated: dist.enumerated,
            }
        };
        Ok(self.cached_distance().get_or_init(|| report).clone())
    }

    /// `wt(self \ inner)` for a subcode `inner`.
    pub fn relative_min_weight(&self, inner: &LinearCode, budget: &Budget) -> Result<WeightReport> {
        if !inner.is_subcode_of(self) {
            return Err(Error::NotNested);
        }
        if inner.k() == self.k() {
            return Err(Error::UndefinedDistance);
        }
        let codes = vec![self.to_string(), inner.to_string()];
        let outside = Budget::words(self.q(), self.k()) - Budget::words(self.q(), inner.k());
        let direct = Budget::words(self.q(), self.k());
        let via_distributions = self
            .distribution_cost(budget)
            .zip(inner.distribution_cost(budget))
            .map(|(a, b)| a + b);
        if budget.allows(self.q(), self.k())
            && (direct <= SMALL_ENUMERATION || via_distributions.is_none_or(|c| direct <= c))
        {
            let checks = inner.parity_check();
            let rows = with_tags(self, &checks);
            let t = tally(
                self.field(),
                &rows,
                &Layout::hamming(self.n(), checks.len()),
            );
            return Ok(WeightReport {
                codes,
                kind: WeightKind::Relative,
                value: t.min_tagged().expect("proper subcode leaves words outside"),
                method: Method::CosetExhaustive,
                enumerated: outside,
            });
        }
        // count words of each weight in both codes and subtract
        let outer = self.weight_distribution(budget)?;
        let sub = inner.weight_distribution(budget)?;
        let value = outer
            .counts
            .iter()
            .zip(&sub.counts)
            .position(|(a, b)| a > b)
            .expect("proper subcode leaves words outside");
        Ok(WeightReport {
            codes,
            kind: WeightKind::Relative,
            value,
            method: Method::MacWilliams,
            enumerated: outer.enumerated + sub.enumerated,
        })
    }

    /// Minimum weights of even-like (coordinate sum zero) and odd-like words.
    pub fn even_odd_weights(&self, budget: &Budget) -> Result<EvenOdd> {
        let enumerated = budget.check(self.q(), self.k())?;
        let rows = with_tags(self, &[vec![1; self.n()]]);
        let t = tally(self.field(), &rows, &Layout::hamming(self.n(), 1));
        Ok(EvenOdd {
            even: t.min_plain(),
            odd: t.min_tagged(),
            enumerated,
        })
    }

    /// Whether some minimum-weight codeword is nonzero at coordinate `i`.
    pub fn has_min_weight_word_at(&self, i: usize, budget: &Budget) -> Result<bool> {
        self.check_coordinate(i)?;
        let d = self.min_distance(budget)?.value;
        if budget.allows(self.q(), self.k()) {
            let mut unit = vec![0; self.n()];
            unit[i] = 1;
            let rows = with_tags(self, &[unit]);
            let t = tally(self.field(), &rows, &Layout::hamming(self.n(), 1));
            return Ok(t.tagged[d] > 0);
        }
        let all = self.weight_distribution(budget)?;
        let avoiding = self.zero_at(i)?.weight_distribution(budget)?;
        Ok(all.counts[d] > avoiding.counts[d])
    }

    /// Whether some nonzero codeword vanishes at coordinate `i`.
    pub fn has_zero_coordinate_word(&self, i: usize) -> Result<bool> {
        Ok(self.zero_at(i)?.k() > 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;
    use crate::lincode::tests::hamming;

    fn brute_distance(code: &LinearCode) -> usize {
        code.codewords(&Budget::default())
            .unwrap()
            .iter()
            .map(|w| w.iter().filter(|&&x| x != 0).count())
            .filter(|&w| w > 0)
            .min()
            .unwrap()
    }

    #[test]
    fn hamming_family_distances() {
        let b = Budget::default();
        let h = hamming();
        let r = h.min_distance(&b).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(r.enumerated, 16);
        assert_eq!(h.dual().min_distance(&b).unwrap().value, 4);
        let f = make_field(3, 1).unwrap();
        let rep = LinearCode::repetition(f.clone(), 4);
        assert_eq!(rep.min_distance(&b).unwrap().value, 4);
        assert_eq!(rep.dual().min_distance(&b).unwrap().value, 2);
        assert_eq!(
            LinearCode::zero(f, 3).min_distance(&b),
            Err(Error::ZeroCode)
        );
    }

    #[test]
    fn relative_weights() {
        let b = Budget::default();
        let h = hamming();
        let r = h.relative_min_weight(&h.dual(), &b).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(r.method, Method::CosetExhaustive);
        assert_eq!(r.enumerated, 8);
        let f = make_field(2, 1).unwrap();
        let full = LinearCode::full(f.clone(), 3);
        let rep = LinearCode::repetition(f.clone(), 3);
        assert_eq!(full.relative_min_weight(&rep, &b).unwrap().value, 1);
        let z = LinearCode::zero(f, 7);
        assert_eq!(h.relative_min_weight(&z, &b).unwrap().value, 3);
        assert_eq!(h.dual().relative_min_weight(&h, &b), Err(Error::NotNested));
        assert_eq!(h.relative_min_weight(&h, &b), Err(Error::UndefinedDistance));
    }

    #[test]
    fn macwilliams_fallback_agrees_with_direct_enumeration() {
        let h = hamming();
        let direct = h.weight_distribution(&Budget::default()).unwrap();
        assert_eq!(direct.counts, vec![1, 0, 0, 7, 7, 0, 0, 1]);
        let tight = Budget::with_codewords(8);
        let via_dual = h.weight_distribution(&tight).unwrap();
        assert_eq!(via_dual.method, Method::MacWilliams);
        assert_eq!(via_dual.counts, direct.counts);
        let fresh = hamming();
        assert_eq!(fresh.min_distance(&tight).unwrap().value, 3);
        let rel = fresh.relative_min_weight(&fresh.dual(), &tight).unwrap();
        assert_eq!(rel.method, Method::MacWilliams);
        assert_eq!(rel.value, 3);
        assert!(fresh.has_min_weight_word_at(0, &tight).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let f = make_field(2, 1).unwrap();
        let full = LinearCode::full(f, 12);
        let r = full.even_odd_weights(&Budget::with_codewords(100));
        assert!(matches!(
            r,
            Err(Error::BudgetExceeded { required: 4096, .. })
        ));
    }

    #[test]
    fn even_odd() {
        let b = Budget::default();
        let eo = hamming().even_odd_weights(&b).unwrap();
        assert_eq!((eo.even, eo.odd), (Some(4), Some(3)));
        let f = make_field(2, 1).unwrap();
        let eo = LinearCode::repetition(f, 4).even_odd_weights(&b).unwrap();
        assert_eq!((eo.even, eo.odd), (Some(4), None));
    }

    #[test]
    fn coordinate_predicates() {
        let b = Budget::default();
        let h = hamming();
        assert!((0..7).all(|i| h.has_min_weight_word_at(i, &b).unwrap()));
        assert!((0..7).all(|i| h.dual().has_min_weight_word_at(i, &b).unwrap()));
        let f = make_field(2, 1).unwrap();
        let rep = LinearCode::repetition(f.clone(), 4);
        assert!(!rep.has_zero_coordinate_word(2).unwrap());
        let c =
            LinearCode::from_generator(f, 5, &[vec![1, 1, 0, 0, 0], vec![0, 0, 1, 1, 1]]).unwrap();
        assert!(!c.has_min_weight_word_at(2, &b).unwrap());
        assert!(c.has_min_weight_word_at(0, &b).unwrap());
        assert!(h.has_min_weight_word_at(7, &b).is_err());
    }

    #[test]
    fn distance_matches_brute_force_over_gf4() {
        let f = make_field(2, 2).unwrap();
        let rows = vec![
            vec![1, 2, 3, 0, 1, 1],
            vec![0, 1, 1, 2, 3, 0],
            vec![1, 0, 0, 1, 1, 3],
        ];
        let c = LinearCode::from_generator(f, 6, &rows).unwrap();
        assert_eq!(
            c.min_distance(&Budget::default()).unwrap().value,
            brute_distance(&c)
        );
        let d = c.dual();
        assert_eq!(
            d.min_distance(&Budget::default()).unwrap().value,
            brute_distance(&d)
        );
    }

    #[test]
    fn krawtchouk_orthogonality_small() {
        // sum_i K_j(i) K_i(l) = q^n delta_jl
        let (n, q) = (4usize, 3u32);
        for j in 0..=n {
            for l in 0..=n {
                let s: i128 = (0..=n)
                    .map(|i| krawtchouk(n, q, j, i).unwrap() * krawtchouk(n, q, i, l).unwrap())
                    .sum();
                assert_eq!(s, if j == l { 81 } else { 0 });
            }
        }
    }
}
