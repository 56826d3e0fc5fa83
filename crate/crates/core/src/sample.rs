//! Seeded random instances for the property suites.

use std::sync::Arc;

use rand::Rng;

use crate::css::CssPair;
use crate::galois::{make_field, Elem, FieldBasis, FiniteField, Tower};
use crate::lincode::LinearCode;
use crate::symplectic::AdditiveCode;

pub fn random_rows<R: Rng>(
    rng: &mut R,
    field: &FiniteField,
    rows: usize,
    n: usize,
) -> Vec<Vec<Elem>> {
    (0..rows)
        .map(|_| (0..n).map(|_| rng.gen_range(0..field.q())).collect())
        .collect()
}

/// Span of `k` uniformly random rows; the dimension may come out below `k`.
pub fn random_code<R: Rng>(
    rng: &mut R,
    field: &Arc<FiniteField>,
    n: usize,
    k: usize,
) -> LinearCode {
    LinearCode::from_generator(field.clone(), n, &random_rows(rng, field, k, n))
        .expect("well-formed rows")
}

/// A random strictly nested pair of length `n`, or `None` when the draw
/// degenerates.
pub fn random_pair<R: Rng>(rng: &mut R, field: &Arc<FiniteField>, n: usize) -> Option<CssPair> {
    let k1 = rng.gen_range(1..=n);
    let c1 = random_code(rng, field, n, k1);
    if c1.k() == 0 {
        return None;
    }
    let k2 = rng.gen_range(0..c1.k());
    let rows: Vec<Vec<Elem>> = (0..k2)
        .map(|_| {
            let msg: Vec<Elem> = (0..c1.k()).map(|_| rng.gen_range(0..field.q())).collect();
            c1.encode(&msg)
        })
        .collect();
    let c2 = LinearCode::from_generator(field.clone(), n, &rows).expect("codewords of c1");
    CssPair::new(c1, c2).ok()
}

/// A random basis of the top field of `tower` over its bottom field.
pub fn random_basis<R: Rng>(rng: &mut R, tower: &Arc<Tower>) -> FieldBasis {
    let q = tower.top().q();
    loop {
        let elements = (0..tower.degree()).map(|_| rng.gen_range(1..q)).collect();
        if let Ok(b) = FieldBasis::new(tower.clone(), elements) {
            return b;
        }
    }
}

/// A random self-orthogonal additive code built by adding random vectors
/// of the current symplectic dual, up to GF(p)-rank `rank <= tn`.
pub fn random_self_orthogonal<R: Rng>(
    rng: &mut R,
    field: &Arc<FiniteField>,
    n: usize,
    rank: usize,
) -> AdditiveCode {
    let prime = make_field(field.p(), 1).expect("prime field");
    let mut code = AdditiveCode::from_digit_rows(field.clone(), n, &[]).expect("empty code");
    let mut stalls = 0;
    while code.rank() < rank && stalls < 64 {
        let dual = code.symplectic_dual();
        let width = 2 * field.m() as usize * n;
        let mut v = vec![0; width];
        for row in dual.generator() {
            let c = rng.gen_range(0..prime.q());
            crate::linalg::axpy(&prime, &mut v, c, row);
        }
        let next = code.with_rows(&[v]);
        if next.rank() == code.rank() {
            stalls += 1;
        }
        code = next;
    }
    code
}
