//! Dense polynomials over a [`FiniteField`], coefficients in ascending order.

use super::field::{Elem, FiniteField};

pub fn trim(mut a: Vec<Elem>) -> Vec<Elem> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[Elem]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn mul(field: &FiniteField, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    trim(out)
}

/// Product of the linear factors `(x - r)` over the given roots.
pub fn from_roots(field: &FiniteField, roots: impl IntoIterator<Item = Elem>) -> Vec<Elem> {
    roots
        .into_iter()
        .fold(vec![1], |acc, r| mul(field, &acc, &[field.neg(r), 1]))
}

pub fn eval(field: &FiniteField, a: &[Elem], x: Elem) -> Elem {
    a.iter()
        .rev()
        .fold(0, |acc, &c| field.add(field.mul(acc, x), c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    #[test]
    fn roots_vanish() {
        let f = make_field(2, 3).unwrap();
        let roots = [2, 4, 6];
        let p = from_roots(&f, roots);
        assert_eq!(degree(&p), Some(3));
        for r in roots {
            assert_eq!(eval(&f, &p, r), 0);
        }
        assert_ne!(eval(&f, &p, 1), 0);
    }

    #[test]
    fn product_over_all_nonzero_elements_is_x_pow_minus_one() {
        let f = make_field(3, 2).unwrap();
        let p = from_roots(&f, 1..9);
        let mut expected = vec![0; 9];
        expected[0] = f.neg(1);
        expected[8] = 1;
        assert_eq!(p, expected);
    }
}
