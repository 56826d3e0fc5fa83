use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

use super::field::{Elem, FiniteField};

/// A canonical field `top = GF(p^(s*m))` viewed over its subfield
/// `bottom = GF(p^s)`.
///
/// The embedding sends the canonical root of the bottom modulus to the
/// smallest-index root of that polynomial in the top field.
#[derive(Debug, Clone)]
pub struct Tower {
    top: Arc<FiniteField>,
    bottom: Arc<FiniteField>,
    degree: u32,
    embed: Vec<Elem>,
    project: Vec<Option<Elem>>,
}

impl Tower {
    pub fn new(top: Arc<FiniteField>, bottom: Arc<FiniteField>) -> Result<Tower> {
        if top.p() != bottom.p() {
            return Err(Error::IncompatibleTower(format!(
                "characteristics differ: {:?} over {:?}",
                top, bottom
            )));
        }
        if !top.m().is_multiple_of(bottom.m()) {
            return Err(Error::IncompatibleTower(format!(
                "{:?} is not a subfield of {:?}",
                bottom, top
            )));
        }
        let degree = top.m() / bottom.m();
        let embed: Vec<Elem> = if degree == 1 {
            bottom.elements().collect()
        } else {
            let modulus = bottom.modulus();
            let root = top
                .elements()
                .find(|&r| {
                    let val = modulus
                        .iter()
                        .rev()
                        .fold(0, |acc, &c| top.add(top.mul(acc, r), c));
                    val == 0
                })
                .expect("subfield modulus splits in the extension");
            let powers: Vec<Elem> = (0..bottom.m()).map(|i| top.pow(root, i as u64)).collect();
            bottom
                .elements()
                .map(|b| {
                    bottom
                        .digits(b)
                        .iter()
                        .zip(&powers)
                        .fold(0, |acc, (&d, &pw)| top.add(acc, top.mul(d, pw)))
                })
                .collect()
        };
        let mut project = vec![None; top.q() as usize];
        for (b, &t) in embed.iter().enumerate() {
            project[t as usize] = Some(b as Elem);
        }
        Ok(Tower {
            top,
            bottom,
            degree,
            embed,
            project,
        })
    }

    /// GF(q) over its prime subfield.
    pub fn over_prime(field: Arc<FiniteField>) -> Result<Tower> {
        let prime = super::field::make_field_within(field.p(), 1, u64::MAX)?;
        Tower::new(field, prime)
    }

    pub fn top(&self) -> &Arc<FiniteField> {
        &self.top
    }

    pub fn bottom(&self) -> &Arc<FiniteField> {
        &self.bottom
    }

    /// Extension degree `[top : bottom]`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn embed(&self, b: Elem) -> Elem {
        self.embed[b as usize]
    }

    /// Bottom-field index of a top element lying in the subfield.
    pub fn project(&self, a: Elem) -> Option<Elem> {
        self.project[a as usize]
    }

    /// `sum_{i<m} a^(Q^i)` as a bottom-field element, `Q = |bottom|`.
    pub fn trace(&self, a: Elem) -> Elem {
        let t = self.trace_in_top(a);
        self.project(t).expect("trace lies in the subfield")
    }

    pub(crate) fn trace_in_top(&self, a: Elem) -> Elem {
        let qb = self.bottom.q() as u64;
        let mut acc = 0;
        let mut cur = a;
        for _ in 0..self.degree {
            acc = self.top.add(acc, cur);
            cur = self.top.pow(cur, qb);
        }
        acc
    }

    /// Frobenius `a -> a^Q` over the bottom field.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.top.pow(a, self.bottom.q() as u64)
    }
}

/// Cached tower of a canonical field over its prime subfield.
pub fn prime_tower(field: &Arc<FiniteField>) -> Arc<Tower> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<Tower>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut cache = cache.lock().expect("tower cache poisoned");
    cache
        .entry((field.p(), field.m()))
        .or_insert_with(|| Arc::new(Tower::over_prime(field.clone()).expect("prime subfield")))
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    #[test]
    fn trace_gf4_over_gf2() {
        let t = Tower::new(make_field(2, 2).unwrap(), make_field(2, 1).unwrap()).unwrap();
        let w = t.top().generator();
        assert_eq!(t.trace(0), 0);
        assert_eq!(t.trace(w), 1);
        assert_eq!(t.trace(1), 0);
    }

    #[test]
    fn embedding_is_a_field_homomorphism() {
        let t = Tower::new(make_field(2, 4).unwrap(), make_field(2, 2).unwrap()).unwrap();
        let (top, bot) = (t.top().clone(), t.bottom().clone());
        for a in bot.elements() {
            for b in bot.elements() {
                assert_eq!(t.embed(bot.add(a, b)), top.add(t.embed(a), t.embed(b)));
                assert_eq!(t.embed(bot.mul(a, b)), top.mul(t.embed(a), t.embed(b)));
            }
        }
    }

    #[test]
    fn trace_is_linear_and_onto() {
        let t = Tower::new(make_field(3, 2).unwrap(), make_field(3, 1).unwrap()).unwrap();
        let (top, bot) = (t.top().clone(), t.bottom().clone());
        let mut hit = vec![false; bot.q() as usize];
        for a in top.elements() {
            hit[t.trace(a) as usize] = true;
            for b in top.elements() {
                for lam in bot.elements() {
                    let lhs = t.trace(top.add(top.mul(t.embed(lam), a), b));
                    let rhs = bot.add(bot.mul(lam, t.trace(a)), t.trace(b));
                    assert_eq!(lhs, rhs);
                }
            }
        }
        assert!(hit.iter().all(|&h| h));
    }

    #[test]
    fn frobenius_is_additive() {
        let t = Tower::over_prime(make_field(5, 2).unwrap()).unwrap();
        let f = t.top().clone();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(
                    t.frobenius(f.add(a, b)),
                    f.add(t.frobenius(a), t.frobenius(b))
                );
            }
        }
    }

    #[test]
    fn rejects_non_subfield() {
        let r = Tower::new(make_field(2, 3).unwrap(), make_field(2, 2).unwrap());
        assert!(matches!(r, Err(Error::IncompatibleTower(_))));
        let r = Tower::new(make_field(3, 2).unwrap(), make_field(2, 1).unwrap());
        assert!(matches!(r, Err(Error::IncompatibleTower(_))));
    }
}
