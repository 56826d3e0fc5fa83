use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

use super::field::Elem;
use super::tower::Tower;

/// An ordered basis of the top field of a [`Tower`] over its bottom field.
#[derive(Debug, Clone)]
pub struct FieldBasis {
    tower: Arc<Tower>,
    elements: Vec<Elem>,
    // coordinates of every top element, row-major (q_top x m), bottom indices
    coords: Vec<Elem>,
}

/// Named basis choices understood by the CLI and the theorem checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    /// `1, g, ..., g^(m-1)` for the canonical generator `g` of the top field.
    Polynomial,
    /// The dual of the polynomial basis.
    DualOfPolynomial,
    /// Smallest-index normal basis.
    Normal,
}

impl std::str::FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "polynomial" => Ok(BasisKind::Polynomial),
            "dual-of-polynomial" => Ok(BasisKind::DualOfPolynomial),
            "normal" => Ok(BasisKind::Normal),
            other => Err(Error::InvalidParameter(format!(
                "unknown basis kind {other:?}"
            ))),
        }
    }
}

impl FieldBasis {
    pub fn new(tower: Arc<Tower>, elements: Vec<Elem>) -> Result<FieldBasis> {
        let m = tower.degree() as usize;
        if elements.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                got: elements.len(),
            });
        }
        let top = tower.top().clone();
        let bottom = tower.bottom().clone();
        for &e in &elements {
            if !top.contains(e) {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    q: top.q(),
                });
            }
        }
        // enumerate every bottom-linear combination; a collision means dependence
        let qb = bottom.q() as usize;
        let qt = top.q() as usize;
        let mut coords = vec![Elem::MAX; qt * m];
        let mut digits = vec![0 as Elem; m];
        let total = qb.pow(m as u32);
        for idx in 0..total {
            let mut rest = idx;
            for d in digits.iter_mut() {
                *d = (rest % qb) as Elem;
                rest /= qb;
            }
            let value = digits
                .iter()
                .zip(&elements)
                .fold(0, |acc, (&c, &b)| top.add(acc, top.mul(tower.embed(c), b)));
            let slot = &mut coords[value as usize * m..(value as usize + 1) * m];
            if slot[0] != Elem::MAX {
                return Err(Error::InvalidParameter(
                    "basis elements are linearly dependent".into(),
                ));
            }
            slot.copy_from_slice(&digits);
        }
        Ok(FieldBasis {
            tower,
            elements,
            coords,
        })
    }

    pub fn polynomial(tower: Arc<Tower>) -> FieldBasis {
        let top = tower.top().clone();
        let g = top.generator();
        let elements = (0..tower.degree()).map(|i| top.pow(g, i as u64)).collect();
        FieldBasis::new(tower, elements).expect("powers of a primitive element are independent")
    }

    /// Smallest-index `b` with `b, b^Q, ..., b^(Q^(m-1))` independent.
    pub fn normal(tower: Arc<Tower>) -> FieldBasis {
        let top = tower.top().clone();
        for b in top.elements().skip(1) {
            let mut elements = Vec::with_capacity(tower.degree() as usize);
            let mut cur = b;
            for _ in 0..tower.degree() {
                elements.push(cur);
                cur = tower.frobenius(cur);
            }
            if let Ok(basis) = FieldBasis::new(tower.clone(), elements) {
                return basis;
            }
        }
        unreachable!("normal bases always exist")
    }

    pub fn of_kind(tower: Arc<Tower>, kind: BasisKind) -> FieldBasis {
        match kind {
            BasisKind::Polynomial => FieldBasis::polynomial(tower),
            BasisKind::DualOfPolynomial => FieldBasis::polynomial(tower).dual(),
            BasisKind::Normal => FieldBasis::normal(tower),
        }
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn degree(&self) -> usize {
        self.elements.len()
    }

    /// Coordinates `c_B(a)` over the bottom field.
    pub fn coords(&self, a: Elem) -> &[Elem] {
        let m = self.degree();
        &self.coords[a as usize * m..(a as usize + 1) * m]
    }

    /// `sum_j c_j b_j`.
    pub fn combine(&self, coords: &[Elem]) -> Elem {
        let top = self.tower.top();
        coords.iter().zip(&self.elements).fold(0, |acc, (&c, &b)| {
            top.add(acc, top.mul(self.tower.embed(c), b))
        })
    }

    /// `M_ij = tr(b_i b_j)`, over the bottom field.
    pub fn gram_matrix(&self) -> Vec<Vec<Elem>> {
        let top = self.tower.top();
        self.elements
            .iter()
            .map(|&bi| {
                self.elements
                    .iter()
                    .map(|&bj| self.tower.trace(top.mul(bi, bj)))
                    .collect()
            })
            .collect()
    }

    /// The unique basis `b*` with `tr(b_i b*_j) = delta_ij`.
    pub fn dual(&self) -> FieldBasis {
        let bottom = self.tower.bottom();
        let top = self.tower.top();
        let gram = self.gram_matrix();
        let inv = linalg::inverse(bottom, &gram).expect("trace form is nondegenerate");
        let elements = (0..self.degree())
            .map(|j| {
                (0..self.degree()).fold(0, |acc, k| {
                    top.add(acc, top.mul(self.tower.embed(inv[k][j]), self.elements[k]))
                })
            })
            .collect();
        FieldBasis::new(self.tower.clone(), elements).expect("dual basis is a basis")
    }

    pub fn is_self_dual(&self) -> bool {
        let gram = self.gram_matrix();
        gram.iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == (i == j) as Elem))
    }
}

impl PartialEq for FieldBasis {
    fn eq(&self, other: &Self) -> bool {
        self.tower.top() == other.tower.top()
            && self.tower.bottom() == other.tower.bottom()
            && self.elements == other.elements
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    fn gf4() -> Arc<Tower> {
        Arc::new(Tower::new(make_field(2, 2).unwrap(), make_field(2, 1).unwrap()).unwrap())
    }

    fn gf9() -> Arc<Tower> {
        Arc::new(Tower::new(make_field(3, 2).unwrap(), make_field(3, 1).unwrap()).unwrap())
    }

    #[test]
    fn dual_of_polynomial_gf4() {
        let t = gf4();
        let w = t.top().generator();
        let w2 = t.top().mul(w, w);
        let b = FieldBasis::new(t.clone(), vec![1, w]).unwrap();
        assert_eq!(b.dual().elements(), &[w2, 1]);
        for (i, &bi) in b.elements().iter().enumerate() {
            for (j, &dj) in b.dual().elements().iter().enumerate() {
                assert_eq!(t.trace(t.top().mul(bi, dj)), (i == j) as u32);
            }
        }
    }

    #[test]
    fn self_dual_basis_gf4() {
        let t = gf4();
        let w = t.top().generator();
        let w2 = t.top().mul(w, w);
        let b = FieldBasis::new(t, vec![w, w2]).unwrap();
        assert!(b.is_self_dual());
        assert_eq!(b.dual(), b);
        assert_eq!(b.gram_matrix(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn gram_of_polynomial_gf4() {
        let b = FieldBasis::polynomial(gf4());
        assert_eq!(b.gram_matrix(), vec![vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn gram_identity_exhaustive_gf9() {
        let t = gf9();
        let b = FieldBasis::polynomial(t.clone());
        let m = b.gram_matrix();
        let f = t.bottom().clone();
        for x in t.top().elements() {
            for y in t.top().elements() {
                let cx = b.coords(x);
                let cy = b.coords(y);
                let mut acc = 0;
                for i in 0..2 {
                    for j in 0..2 {
                        acc = f.add(acc, f.mul(cx[i], f.mul(m[i][j], cy[j])));
                    }
                }
                assert_eq!(acc, t.trace(t.top().mul(x, y)));
            }
        }
    }

    #[test]
    fn dual_is_involution_and_gram_inverts() {
        for t in [gf4(), gf9()] {
            let f = t.bottom().clone();
            for a in t.top().elements() {
                for c in t.top().elements() {
                    let Ok(b) = FieldBasis::new(t.clone(), vec![a, c]) else {
                        continue;
                    };
                    let d = b.dual();
                    assert_eq!(d.dual(), b);
                    let prod = linalg::mat_mul(&f, &b.gram_matrix(), &d.gram_matrix());
                    assert_eq!(prod, vec![vec![1, 0], vec![0, 1]]);
                }
            }
        }
    }

    #[test]
    fn normal_basis_quadratic() {
        let b = FieldBasis::normal(gf4());
        let w = b.tower().top().generator();
        assert_eq!(b.elements(), &[w, b.tower().top().mul(w, w)]);
        let b9 = FieldBasis::normal(gf9());
        let t = b9.tower().clone();
        // smallest valid index
        for cand in 1..b9.elements()[0] {
            assert!(FieldBasis::new(t.clone(), vec![cand, t.frobenius(cand)]).is_err());
        }
        assert_eq!(b9.elements()[1], t.frobenius(b9.elements()[0]));
    }

    #[test]
    fn dependent_elements_rejected() {
        let t = gf4();
        assert!(FieldBasis::new(t.clone(), vec![1, 1]).is_err());
        assert!(FieldBasis::new(t, vec![1]).is_err());
    }
}
