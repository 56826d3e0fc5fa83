use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::SymplecticVector;
use crate::budget::Budget;
use crate::css::{AqeccParams, CssPair, Distance};
use crate::error::{Error, Result};
use crate::galois::{make_field, prime_tower, Elem, FieldBasis, FiniteField};
use crate::linalg::{self, Matrix};
use crate::lincode::enumerate::{tally, Layout};

/// A GF(p)-linear subspace of GF(q)^{2n}, stored as RREF rows over the
/// `2tn` digit coordinates `[a_1 .. a_n | b_1 .. b_n]`, `q = p^t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AdditiveRecord", into = "AdditiveRecord")]
pub struct AdditiveCode {
    field: Arc<FiniteField>,
    prime: Arc<FiniteField>,
    n: usize,
    generator: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveRecord {
    pub p: u32,
    pub t: u32,
    pub n: usize,
    pub generator: Matrix,
}

/// Parameters `((n, p^e))` with distances measured on pure X- and Z-type
/// vectors of `C⊥s \ C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerParams {
    pub q: u32,
    pub n: usize,
    /// `log_p K`.
    pub e: usize,
    pub dz: usize,
    pub dx: usize,
    pub pure: bool,
    pub enumerated: u128,
}

impl StabilizerParams {
    /// `k = e / t`, when `K` is a power of `q`.
    pub fn k(&self) -> Option<usize> {
        let t = crate::galois::prime_power(self.q).expect("prime power").1 as usize;
        self.e.is_multiple_of(t).then_some(self.e / t)
    }

    pub fn as_aqecc(&self) -> Option<AqeccParams> {
        Some(AqeccParams {
            q: self.q,
            n: self.n,
            k: self.k()?,
            dz: Distance {
                value: self.dz,
                exact: true,
            },
            dx: Distance {
                value: self.dx,
                exact: true,
            },
            pure: Some(self.pure),
        })
    }
}

impl AdditiveCode {
    pub fn from_digit_rows(
        field: Arc<FiniteField>,
        n: usize,
        rows: &[Vec<Elem>],
    ) -> Result<AdditiveCode> {
        let prime = make_field(field.p(), 1)?;
        let width = 2 * field.m() as usize * n;
        for r in rows {
            if r.len() != width {
                return Err(Error::LengthMismatch {
                    expected: width,
                    got: r.len(),
                });
            }
            if let Some(&x) = r.iter().find(|&&x| x >= field.p()) {
                return Err(Error::ElementOutOfRange {
                    element: x,
                    q: field.p(),
                });
            }
        }
        let (generator, _) = linalg::rref(&prime, rows, width);
        Ok(AdditiveCode {
            field,
            prime,
            n,
            generator,
        })
    }

    /// GF(p)-span of `vectors`.
    pub fn from_vectors(
        field: Arc<FiniteField>,
        n: usize,
        vectors: &[SymplecticVector],
    ) -> Result<AdditiveCode> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.n() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: v.n(),
                });
            }
            if let Some(&x) = v.a.iter().chain(&v.b).find(|&&x| !field.contains(x)) {
                return Err(Error::ElementOutOfRange {
                    element: x,
                    q: field.q(),
                });
            }
            rows.push(to_digits(&field, v));
        }
        AdditiveCode::from_digit_rows(field, n, &rows)
    }

    /// `{(a | b) : a ∈ C1⊥, b ∈ C2}`, whose symplectic dual is `C2⊥ × C1`.
    pub fn from_css(pair: &CssPair) -> AdditiveCode {
        let field = pair.field().clone();
        let n = pair.n();
        let units: Vec<Elem> = (0..field.m()).map(|d| field.p().pow(d)).collect();
        let mut vectors = Vec::new();
        for r in pair.c1().dual().generator() {
            for &u in &units {
                let a = r.iter().map(|&x| field.mul(u, x)).collect();
                vectors.push(SymplecticVector { a, b: vec![0; n] });
            }
        }
        for r in pair.c2().generator() {
            for &u in &units {
                let b = r.iter().map(|&x| field.mul(u, x)).collect();
                vectors.push(SymplecticVector { a: vec![0; n], b });
            }
        }
        AdditiveCode::from_vectors(field, n, &vectors).expect("css rows are well formed")
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn t(&self) -> usize {
        self.field.m() as usize
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// GF(p)-dimension.
    pub fn rank(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    fn width(&self) -> usize {
        2 * self.t() * self.n
    }

    pub fn vectors(&self) -> Vec<SymplecticVector> {
        self.generator
            .iter()
            .map(|r| from_digits(&self.field, self.n, r))
            .collect()
    }

    pub fn contains(&self, v: &SymplecticVector) -> bool {
        if v.n() != self.n {
            return false;
        }
        let mut rows = self.generator.clone();
        rows.push(to_digits(&self.field, v));
        linalg::rank(&self.prime, &rows, self.width()) == self.rank()
    }

    pub fn is_subcode_of(&self, other: &AdditiveCode) -> bool {
        self.field == other.field
            && self.n == other.n
            && self.vectors().iter().all(|v| other.contains(v))
    }

    /// Digit matrix `J` with `<x, y>_s = x J y^T`.
    fn form_matrix(&self) -> Matrix {
        let t = self.t();
        let tn = t * self.n;
        let tower = prime_tower(&self.field);
        let f = &self.field;
        let unit = |d: usize| f.p().pow(d as u32);
        let mut j = vec![vec![0; 2 * tn]; 2 * tn];
        for d in 0..t {
            for e in 0..t {
                let tr = tower.trace(f.mul(unit(d), unit(e)));
                let neg = self.prime.neg(tr);
                for i in 0..self.n {
                    j[tn + i * t + d][i * t + e] = tr;
                    j[i * t + d][tn + i * t + e] = neg;
                }
            }
        }
        j
    }

    /// `C⊥s` under the trace-symplectic form.
    pub fn symplectic_dual(&self) -> AdditiveCode {
        let gj = linalg::mat_mul(&self.prime, &self.generator, &self.form_matrix());
        let generator = linalg::nullspace(&self.prime, &gj, self.width());
        AdditiveCode {
            field: self.field.clone(),
            prime: self.prime.clone(),
            n: self.n,
            generator,
        }
    }

    pub fn is_self_orthogonal(&self) -> bool {
        let gj = linalg::mat_mul(&self.prime, &self.generator, &self.form_matrix());
        gj.iter().all(|row| {
            self.generator
                .iter()
                .all(|g| linalg::dot(&self.prime, row, g) == 0)
        })
    }

    /// Rows spanning the vectors whose `zeroed` half vanishes, restricted
    /// to the other half. `zeroed_is_b` selects which half is zero.
    fn pure_rows(&self, zeroed_is_b: bool) -> Matrix {
        let tn = self.t() * self.n;
        // order the zeroed half first so that RREF isolates the subspace
        let swap = |r: &Vec<Elem>| -> Vec<Elem> {
            if zeroed_is_b {
                r[tn..].iter().chain(&r[..tn]).copied().collect()
            } else {
                r.clone()
            }
        };
        let rows: Matrix = self.generator.iter().map(swap).collect();
        let (red, pivots) = linalg::rref(&self.prime, &rows, 2 * tn);
        red.into_iter()
            .zip(pivots)
            .filter(|&(_, p)| p >= tn)
            .map(|(r, _)| r[tn..].to_vec())
            .collect()
    }

    /// Stabilizer parameters of a self-orthogonal code. `dx` is the least
    /// X-weight of a pure `(a | 0)` in `C⊥s \ C`, `dz` likewise for `(0 | b)`;
    /// when `K = 1` the minimum runs over all nonzero pure vectors of `C`.
    pub fn stabilizer_params(&self, budget: &Budget) -> Result<StabilizerParams> {
        if !self.is_self_orthogonal() {
            return Err(Error::NotSelfOrthogonal);
        }
        let t = self.t();
        let tn = t * self.n;
        let e = tn - self.rank();
        let dual = self.symplectic_dual();
        let check = linalg::nullspace(&self.prime, &self.generator, 2 * tn);
        let mut enumerated = 0;
        let mut side = |zeroed_is_b: bool| -> Result<(usize, bool)> {
            let rows = dual.pure_rows(zeroed_is_b);
            enumerated += budget.check(self.prime.q(), rows.len())?;
            // syndrome against C tags the vectors outside it
            let offset = if zeroed_is_b { 0 } else { tn };
            let tagged: Matrix = rows
                .iter()
                .map(|r| {
                    let mut out = r.clone();
                    out.extend(
                        check
                            .iter()
                            .map(|h| linalg::dot(&self.prime, &h[offset..offset + tn], r)),
                    );
                    out
                })
                .collect();
            let layout = Layout {
                block_of: (0..tn).map(|x| Some(x / t)).collect(),
                nblocks: self.n,
                ntags: check.len(),
            };
            let tl = tally(&self.prime, &tagged, &layout);
            let any = tl.min_any().ok_or(Error::UndefinedDistance)?;
            let d = if e == 0 {
                any
            } else {
                tl.min_tagged().ok_or(Error::UndefinedDistance)?
            };
            Ok((d, d == any))
        };
        let (dx, pure_x) = side(true)?;
        let (dz, pure_z) = side(false)?;
        Ok(StabilizerParams {
            q: self.q(),
            n: self.n,
            e,
            dz,
            dx,
            pure: pure_x && pure_z,
            enumerated,
        })
    }

    /// Least X- and Z-weights over vectors of `self` with a nonzero X
    /// (resp. Z) part, `None` when no such vector exists.
    pub(crate) fn min_partial_weights(
        &self,
        budget: &Budget,
    ) -> Result<(Option<usize>, Option<usize>)> {
        budget.check(self.prime.q(), self.rank())?;
        let t = self.t();
        let tn = t * self.n;
        let side = |x_side: bool| {
            let layout = Layout {
                block_of: (0..2 * tn)
                    .map(|x| ((x < tn) == x_side).then_some((x % tn) / t))
                    .collect(),
                nblocks: self.n,
                ntags: 0,
            };
            let tl = tally(&self.prime, &self.generator, &layout);
            tl.combined()
                .iter()
                .skip(1)
                .position(|&c| c > 0)
                .map(|w| w + 1)
        };
        Ok((side(true), side(false)))
    }

    /// Symplectic basis expansion over the bottom field of `basis`:
    /// `(u | v) -> (c_B(u) | c_{B*}(v))`, which preserves the trace form.
    pub fn expand(&self, basis: &FieldBasis) -> Result<AdditiveCode> {
        let tower = basis.tower();
        if *self.field != **tower.top() {
            return Err(Error::IncompatibleTower(format!(
                "code over {:?}, basis of {:?} over {:?}",
                self.field,
                tower.top(),
                tower.bottom()
            )));
        }
        let dual = basis.dual();
        let vectors: Vec<SymplecticVector> = self
            .vectors()
            .iter()
            .map(|v| SymplecticVector {
                a: v.a.iter().flat_map(|&x| basis.coords(x).to_vec()).collect(),
                b: v.b.iter().flat_map(|&x| dual.coords(x).to_vec()).collect(),
            })
            .collect();
        AdditiveCode::from_vectors(tower.bottom().clone(), self.n * basis.degree(), &vectors)
    }

    /// Keeps the vectors vanishing at position `i`, then deletes it.
    pub fn shorten(&self, i: usize) -> Result<AdditiveCode> {
        if i >= self.n {
            return Err(Error::CoordinateOutOfRange {
                index: i,
                n: self.n,
            });
        }
        let t = self.t();
        let tn = t * self.n;
        let at_i = |x: usize| (x % tn) / t == i;
        // RREF with the position-i digits first
        let order: Vec<usize> = (0..2 * tn)
            .filter(|&x| at_i(x))
            .chain((0..2 * tn).filter(|&x| !at_i(x)))
            .collect();
        let rows: Matrix = self
            .generator
            .iter()
            .map(|r| order.iter().map(|&x| r[x]).collect())
            .collect();
        let (red, pivots) = linalg::rref(&self.prime, &rows, 2 * tn);
        let kept: Matrix = red
            .into_iter()
            .zip(pivots)
            .filter(|&(_, p)| p >= 2 * t)
            .map(|(r, _)| {
                let mut full = vec![0; 2 * tn];
                for (pos, &x) in order.iter().enumerate() {
                    full[x] = r[pos];
                }
                (0..2 * tn).filter(|&x| !at_i(x)).map(|x| full[x]).collect()
            })
            .collect();
        AdditiveCode::from_digit_rows(self.field.clone(), self.n - 1, &kept)
    }

    pub(crate) fn with_rows(&self, extra: &[Vec<Elem>]) -> AdditiveCode {
        let mut rows = self.generator.clone();
        rows.extend_from_slice(extra);
        AdditiveCode::from_digit_rows(self.field.clone(), self.n, &rows)
            .expect("rows of matching width")
    }

    pub(crate) fn contains_digits(&self, row: &[Elem]) -> bool {
        let mut rows = self.generator.clone();
        rows.push(row.to_vec());
        linalg::rank(&self.prime, &rows, self.width()) == self.rank()
    }

    pub fn record(&self) -> AdditiveRecord {
        AdditiveRecord {
            p: self.field.p(),
            t: self.field.m(),
            n: self.n,
            generator: self.generator.clone(),
        }
    }
}

fn to_digits(field: &FiniteField, v: &SymplecticVector) -> Vec<Elem> {
    v.a.iter()
        .chain(&v.b)
        .flat_map(|&x| field.digits(x))
        .collect()
}

fn from_digits(field: &FiniteField, n: usize, row: &[Elem]) -> SymplecticVector {
    let t = field.m() as usize;
    let elems: Vec<Elem> = row.chunks(t).map(|c| field.from_digits(c)).collect();
    SymplecticVector {
        a: elems[..n].to_vec(),
        b: elems[n..].to_vec(),
    }
}

impl fmt::Display for AdditiveCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(({},{}^{}))_{}",
            self.n,
            self.field.p(),
            self.rank(),
            self.q()
        )
    }
}

impl From<AdditiveCode> for AdditiveRecord {
    fn from(code: AdditiveCode) -> Self {
        code.record()
    }
}

impl TryFrom<AdditiveRecord> for AdditiveCode {
    type Error = Error;

    fn try_from(r: AdditiveRecord) -> Result<Self> {
        let field = crate::galois::make_field(r.p, r.t)?;
        AdditiveCode::from_digit_rows(field, r.n, &r.generator)
    }
}
