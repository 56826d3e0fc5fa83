use crate::error::{Error, Result};
use crate::galois::{Elem, FieldBasis};

use super::LinearCode;

/// Coordinate-wise basis expansion of a word over the top field.
pub fn expand_word(word: &[Elem], basis: &FieldBasis) -> Vec<Elem> {
    word.iter()
        .flat_map(|&a| basis.coords(a).to_vec())
        .collect()
}

/// The subfield image `β(C)`: every symbol is replaced by its `m`
/// coordinates in `basis`. Rows `b_j g_i` span the image.
pub fn expand(code: &LinearCode, basis: &FieldBasis) -> Result<LinearCode> {
    let tower = basis.tower();
    if **code.field() != **tower.top() {
        return Err(Error::IncompatibleTower(format!(
            "code over {:?}, basis of {:?} over {:?}",
            code.field(),
            tower.top(),
            tower.bottom()
        )));
    }
    let top = tower.top();
    let rows: Vec<Vec<Elem>> = code
        .generator()
        .iter()
        .flat_map(|g| {
            basis.elements().iter().map(move |&b| {
                let scaled: Vec<Elem> = g.iter().map(|&x| top.mul(b, x)).collect();
                expand_word(&scaled, basis)
            })
        })
        .collect();
    LinearCode::from_generator(tower.bottom().clone(), code.n() * basis.degree(), &rows)
}
