//! Linear codes over GF(q) in canonical reduced row-echelon form.

pub(crate) mod enumerate;
mod expand;
mod weights;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::galois::{field_from_record, Elem, FieldRecord, FiniteField};
use crate::linalg::{self, Matrix};

pub use expand::{expand, expand_word};
pub use weights::{
    krawtchouk, macwilliams, EvenOdd, Method, WeightDistribution, WeightKind, WeightReport,
};

#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "CodeRecord", into = "CodeRecord")]
pub struct LinearCode {
    field: Arc<FiniteField>,
    n: usize,
    generator: Matrix,
    pivots: Vec<usize>,
    distance: OnceLock<WeightReport>,
}

/// Serialized form of a [`LinearCode`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub field: FieldRecord,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<Vec<Elem>>,
}

impl LinearCode {
    /// Code spanned by `rows`, each of length `n`.
    pub fn from_generator(field: Arc<FiniteField>, n: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        for row in rows {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            if let Some(&bad) = row.iter().find(|&&x| !field.contains(x)) {
                return Err(Error::ElementOutOfRange {
                    element: bad,
                    q: field.q(),
                });
            }
        }
        let (generator, pivots) = linalg::rref(&field, rows, n);
        Ok(LinearCode {
            field,
            n,
            generator,
            pivots,
            distance: OnceLock::new(),
        })
    }

    pub fn zero(field: Arc<FiniteField>, n: usize) -> Self {
        LinearCode::from_generator(field, n, &[]).expect("empty generator")
    }

    pub fn full(field: Arc<FiniteField>, n: usize) -> Self {
        let rows: Matrix = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as Elem).collect())
            .collect();
        LinearCode::from_generator(field, n, &rows).expect("identity generator")
    }

    pub fn repetition(field: Arc<FiniteField>, n: usize) -> Self {
        LinearCode::from_generator(field, n, &[vec![1; n]]).expect("all-ones generator")
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.generator.len()
    }

    /// Canonical generator matrix (RREF, unit pivots).
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Generator of the dual code.
    pub fn parity_check(&self) -> Matrix {
        linalg::nullspace(&self.field, &self.generator, self.n)
    }

    pub fn dual(&self) -> LinearCode {
        let rows = self.parity_check();
        LinearCode::from_generator(self.field.clone(), self.n, &rows).expect("nullspace rows")
    }

    pub fn encode(&self, message: &[Elem]) -> Vec<Elem> {
        let mut word = vec![0; self.n];
        for (&c, row) in message.iter().zip(&self.generator) {
            linalg::axpy(&self.field, &mut word, c, row);
        }
        word
    }

    /// Membership by reduction against the pivots.
    pub fn contains(&self, word: &[Elem]) -> bool {
        if word.len() != self.n {
            return false;
        }
        let mut w = word.to_vec();
        for (row, &p) in self.generator.iter().zip(&self.pivots) {
            let c = w[p];
            if c != 0 {
                linalg::axpy(&self.field, &mut w, self.field.neg(c), row);
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// `self ⊆ other`.
    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.field == other.field
            && self.n == other.n
            && self.generator.iter().all(|row| other.contains(row))
    }

    /// Subcode of words vanishing at coordinate `i` (length unchanged).
    pub fn zero_at(&self, i: usize) -> Result<LinearCode> {
        self.check_coordinate(i)?;
        let mut rows = self.generator.clone();
        let Some(sel) = rows.iter().position(|r| r[i] != 0) else {
            return Ok(self.clone());
        };
        let pivot = rows.remove(sel);
        let inv = self.field.inv(pivot[i]).expect("nonzero");
        for row in rows.iter_mut() {
            if row[i] != 0 {
                let c = self.field.neg(self.field.mul(row[i], inv));
                linalg::axpy(&self.field, row, c, &pivot);
            }
        }
        LinearCode::from_generator(self.field.clone(), self.n, &rows)
    }

    pub(crate) fn check_coordinate(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::CoordinateOutOfRange {
                index: i,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Every codeword, in message-index order. Refuses codes beyond `budget`.
    pub fn codewords(&self, budget: &Budget) -> Result<Vec<Vec<Elem>>> {
        let total = budget.check(self.q(), self.k())?;
        let q = self.q() as u128;
        Ok((0..total)
            .map(|idx| {
                let mut rest = idx;
                let msg: Vec<Elem> = (0..self.k())
                    .map(|_| {
                        let d = (rest % q) as Elem;
                        rest /= q;
                        d
                    })
                    .collect();
                self.encode(&msg)
            })
            .collect())
    }

    pub fn record(&self) -> CodeRecord {
        CodeRecord {
            field: self.field.record(),
            n: self.n,
            k: self.k(),
            generator: self.generator.clone(),
        }
    }

    pub fn from_record(record: &CodeRecord, budget: &Budget) -> Result<LinearCode> {
        let field = field_from_record(&record.field, budget.max_field)?;
        let code = LinearCode::from_generator(field, record.n, &record.generator)?;
        if code.k() != record.k {
            return Err(Error::Malformed(format!(
                "declared dimension {} but generator has rank {}",
                record.k,
                code.k()
            )));
        }
        Ok(code)
    }

    pub(crate) fn cached_distance(&self) -> &OnceLock<WeightReport> {
        &self.distance
    }
}

/// `c2 ⊆ c1`.
pub fn is_subcode(c2: &LinearCode, c1: &LinearCode) -> bool {
    c2.is_subcode_of(c1)
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.generator == other.generator
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self, self.generator)
    }
}

impl fmt::Display for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]_{}", self.n, self.k(), self.q())
    }
}

impl From<LinearCode> for CodeRecord {
    fn from(code: LinearCode) -> Self {
        code.record()
    }
}

impl TryFrom<CodeRecord> for LinearCode {
    type Error = Error;

    fn try_from(record: CodeRecord) -> Result<Self> {
        LinearCode::from_record(&record, &Budget::default())
    }
}
