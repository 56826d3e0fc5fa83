//! Puncturing, shortening, extension, direct sum and `(u | u+v)`.
//! Coordinates are 0-indexed.

use crate::error::{Error, Result};
use crate::galois::Elem;
use crate::lincode::LinearCode;

fn delete_column(rows: &[Vec<Elem>], i: usize) -> Vec<Vec<Elem>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

fn same_field(a: &LinearCode, b: &LinearCode) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(format!(
            "{:?} vs {:?}",
            a.field(),
            b.field()
        )));
    }
    Ok(())
}

/// Deletes coordinate `i` from every codeword.
pub fn puncture(code: &LinearCode, i: usize) -> Result<LinearCode> {
    code.check_coordinate(i)?;
    if code.n() < 2 {
        return Err(Error::InvalidParameter(
            "puncturing needs length >= 2".into(),
        ));
    }
    LinearCode::from_generator(
        code.field().clone(),
        code.n() - 1,
        &delete_column(code.generator(), i),
    )
}

/// Keeps the codewords vanishing at `i`, then deletes coordinate `i`.
pub fn shorten(code: &LinearCode, i: usize) -> Result<LinearCode> {
    code.check_coordinate(i)?;
    if code.n() < 2 {
        return Err(Error::InvalidParameter(
            "shortening needs length >= 2".into(),
        ));
    }
    let sub = code.zero_at(i)?;
    LinearCode::from_generator(
        code.field().clone(),
        code.n() - 1,
        &delete_column(sub.generator(), i),
    )
}

/// Appends an overall parity coordinate so that every coordinate sum is zero.
pub fn extend(code: &LinearCode) -> LinearCode {
    let f = code.field();
    let rows: Vec<Vec<Elem>> = code
        .generator()
        .iter()
        .map(|r| {
            let sum = r.iter().fold(0, |acc, &x| f.add(acc, x));
            let mut row = r.clone();
            row.push(f.neg(sum));
            row
        })
        .collect();
    LinearCode::from_generator(f.clone(), code.n() + 1, &rows).expect("extended rows")
}

/// `{(c1, c2)}` with a block-diagonal generator.
pub fn direct_sum(c1: &LinearCode, c2: &LinearCode) -> Result<LinearCode> {
    same_field(c1, c2)?;
    let n = c1.n() + c2.n();
    let mut rows: Vec<Vec<Elem>> = c1
        .generator()
        .iter()
        .map(|r| {
            let mut row = r.clone();
            row.resize(n, 0);
            row
        })
        .collect();
    rows.extend(c2.generator().iter().map(|r| {
        let mut row = vec![0; c1.n()];
        row.extend_from_slice(r);
        row
    }));
    LinearCode::from_generator(c1.field().clone(), n, &rows)
}

/// `{(u, u + v) : u ∈ c1, v ∈ c2}`.
pub fn uuv(c1: &LinearCode, c2: &LinearCode) -> Result<LinearCode> {
    same_field(c1, c2)?;
    if c1.n() != c2.n() {
        return Err(Error::LengthMismatch {
            expected: c1.n(),
            got: c2.n(),
        });
    }
    let n = c1.n();
    let mut rows: Vec<Vec<Elem>> = c1
        .generator()
        .iter()
        .map(|u| u.iter().chain(u.iter()).copied().collect())
        .collect();
    rows.extend(c2.generator().iter().map(|v| {
        let mut row = vec![0; n];
        row.extend_from_slice(v);
        row
    }));
    LinearCode::from_generator(c1.field().clone(), 2 * n, &rows)
}
