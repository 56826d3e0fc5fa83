//! Symplectic vectors `(a | b)` over GF(q), the trace-symplectic and
//! trace-alternating forms, and additive stabilizer codes.

mod additive;
mod theorems;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::galois::{make_field_within, prime_tower, Elem, FieldBasis, FiniteField, Tower};

pub use additive::{AdditiveCode, AdditiveRecord, StabilizerParams};
pub use theorems::{expansion_stabilizer, puncture_stabilizer, StabilizerDerivation};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymplecticVector {
    pub a: Vec<Elem>,
    pub b: Vec<Elem>,
}

impl SymplecticVector {
    pub fn new(a: Vec<Elem>, b: Vec<Elem>) -> Result<SymplecticVector> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                expected: a.len(),
                got: b.len(),
            });
        }
        Ok(SymplecticVector { a, b })
    }

    pub fn zero(n: usize) -> SymplecticVector {
        SymplecticVector {
            a: vec![0; n],
            b: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Number of positions with `(a_i, b_i) != (0, 0)`.
    pub fn swt(&self) -> usize {
        self.a
            .iter()
            .zip(&self.b)
            .filter(|(&x, &y)| x != 0 || y != 0)
            .count()
    }

    pub fn wt_x(&self) -> usize {
        self.a.iter().filter(|&&x| x != 0).count()
    }

    pub fn wt_z(&self) -> usize {
        self.b.iter().filter(|&&x| x != 0).count()
    }
}

/// `tr_{q/p}(b·a' - b'·a)`, returned as an element of GF(p).
pub fn trace_symplectic(
    field: &Arc<FiniteField>,
    x: &SymplecticVector,
    y: &SymplecticVector,
) -> Result<Elem> {
    if x.n() != y.n() {
        return Err(Error::LengthMismatch {
            expected: x.n(),
            got: y.n(),
        });
    }
    let mut s = 0;
    for i in 0..x.n() {
        s = field.add(s, field.mul(x.b[i], y.a[i]));
        s = field.sub(s, field.mul(y.b[i], x.a[i]));
    }
    Ok(prime_tower(field).trace(s))
}

/// The trace-alternating form on GF(q^2)^n,
/// `tr_{q/p}((v·w^q - v^q·w) / (β^{2q} - β^2))`, where `β, β^q` is the
/// smallest normal basis of GF(q^2) over GF(q).
#[derive(Debug, Clone)]
pub struct AlternatingForm {
    basis: FieldBasis,
    prime: Arc<Tower>,
    beta: Elem,
    beta_q: Elem,
    denom_inv: Elem,
}

impl AlternatingForm {
    /// Builds GF(q^2) over `field = GF(q)`.
    pub fn new(field: Arc<FiniteField>, budget: &Budget) -> Result<AlternatingForm> {
        let top = make_field_within(field.p(), 2 * field.m(), budget.max_field)?;
        let tower = Arc::new(Tower::new(top.clone(), field.clone())?);
        let basis = FieldBasis::normal(tower.clone());
        let beta = basis.elements()[0];
        let beta_q = tower.frobenius(beta);
        let denom = top.sub(top.mul(beta_q, beta_q), top.mul(beta, beta));
        let denom_inv = top
            .inv(denom)
            .expect("normal basis gives a nonzero denominator");
        Ok(AlternatingForm {
            basis,
            prime: prime_tower(&field),
            beta,
            beta_q,
            denom_inv,
        })
    }

    /// GF(q^2).
    pub fn top(&self) -> &Arc<FiniteField> {
        self.basis.tower().top()
    }

    pub fn eval(&self, v: &[Elem], w: &[Elem]) -> Result<Elem> {
        if v.len() != w.len() {
            return Err(Error::LengthMismatch {
                expected: v.len(),
                got: w.len(),
            });
        }
        let tower = self.basis.tower();
        let f = tower.top();
        let mut s = 0;
        for (&x, &y) in v.iter().zip(w) {
            s = f.add(s, f.mul(x, tower.frobenius(y)));
            s = f.sub(s, f.mul(tower.frobenius(x), y));
        }
        let s = tower
            .project(f.mul(s, self.denom_inv))
            .expect("form value lies in GF(q)");
        Ok(self.prime.trace(s))
    }

    /// `(a | b) -> β a + β^q b`, taking the trace-symplectic form to this one.
    pub fn phi(&self, x: &SymplecticVector) -> Vec<Elem> {
        let tower = self.basis.tower();
        let f = tower.top();
        x.a.iter()
            .zip(&x.b)
            .map(|(&a, &b)| {
                f.add(
                    f.mul(self.beta, tower.embed(a)),
                    f.mul(self.beta_q, tower.embed(b)),
                )
            })
            .collect()
    }

    pub fn phi_inverse(&self, v: &[Elem]) -> SymplecticVector {
        let (a, b) = v
            .iter()
            .map(|&x| (self.basis.coords(x)[0], self.basis.coords(x)[1]))
            .unzip();
        SymplecticVector { a, b }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    fn all_pairs(q: u32) -> Vec<SymplecticVector> {
        let mut out = Vec::new();
        for a in 0..q {
            for b in 0..q {
                out.push(SymplecticVector::new(vec![a], vec![b]).unwrap());
            }
        }
        out
    }

    #[test]
    fn weights() {
        let v = SymplecticVector::new(vec![1, 0, 2, 0], vec![0, 0, 1, 3]).unwrap();
        assert_eq!((v.swt(), v.wt_x(), v.wt_z()), (3, 2, 2));
        assert!(SymplecticVector::new(vec![1], vec![]).is_err());
    }

    #[test]
    fn symplectic_form_is_alternating_and_nondegenerate() {
        for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = make_field(p, m).unwrap();
            let vs = all_pairs(f.q());
            for x in &vs {
                assert_eq!(trace_symplectic(&f, x, x).unwrap(), 0);
                if *x != SymplecticVector::zero(1) {
                    assert!(vs.iter().any(|y| trace_symplectic(&f, x, y).unwrap() != 0));
                }
                for y in &vs {
                    let xy = trace_symplectic(&f, x, y).unwrap();
                    let yx = trace_symplectic(&f, y, x).unwrap();
                    assert_eq!(make_field(p, 1).unwrap().add(xy, yx), 0);
                }
            }
        }
    }

    #[test]
    fn phi_carries_symplectic_to_alternating() {
        for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)] {
            let f = make_field(p, m).unwrap();
            let form = AlternatingForm::new(f.clone(), &Budget::default()).unwrap();
            let vs = all_pairs(f.q());
            for x in &vs {
                let px = form.phi(x);
                assert_eq!(&form.phi_inverse(&px), x);
                for y in &vs {
                    let py = form.phi(y);
                    assert_eq!(
                        form.eval(&px, &py).unwrap(),
                        trace_symplectic(&f, x, y).unwrap()
                    );
                }
            }
        }
    }
}
