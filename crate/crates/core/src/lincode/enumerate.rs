//! Exhaustive walk over the span of a set of rows.
//!
//! Messages are visited in modular q-ary Gray order, so consecutive words
//! differ by a multiple of one row and weights update incrementally. Each row
//! carries `block_of.len()` weight coordinates followed by `ntags` tag
//! coordinates; a word's weight is the number of blocks holding a nonzero
//! coordinate, and it lands in the `tagged` histogram when any tag is nonzero.

use rayon::prelude::*;

use crate::galois::{Elem, FiniteField};

pub(crate) struct Layout {
    pub block_of: Vec<Option<usize>>,
    pub nblocks: usize,
    pub ntags: usize,
}

impl Layout {
    /// Hamming weight over `n` coordinates, plus `ntags` tags.
    pub fn hamming(n: usize, ntags: usize) -> Layout {
        Layout {
            block_of: (0..n).map(Some).collect(),
            nblocks: n,
            ntags,
        }
    }

    fn width(&self) -> usize {
        self.block_of.len() + self.ntags
    }
}

/// Weight histograms of every nonzero message, split by tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Tally {
    pub plain: Vec<u64>,
    pub tagged: Vec<u64>,
}

impl Tally {
    fn new(nblocks: usize) -> Tally {
        Tally {
            plain: vec![0; nblocks + 1],
            tagged: vec![0; nblocks + 1],
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.plain.iter_mut().zip(other.plain) {
            *a += b;
        }
        for (a, b) in self.tagged.iter_mut().zip(other.tagged) {
            *a += b;
        }
        self
    }

    pub fn min_plain(&self) -> Option<usize> {
        self.plain.iter().position(|&c| c > 0)
    }

    pub fn min_tagged(&self) -> Option<usize> {
        self.tagged.iter().position(|&c| c > 0)
    }

    pub fn min_any(&self) -> Option<usize> {
        match (self.min_plain(), self.min_tagged()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// `plain + tagged`, indexed by weight.
    pub fn combined(&self) -> Vec<u64> {
        self.plain
            .iter()
            .zip(&self.tagged)
            .map(|(a, b)| a + b)
            .collect()
    }
}

// below this many messages a single sequential chunk is used
const PARALLEL_THRESHOLD: u128 = 1 << 14;

/// Tallies every nonzero combination of `rows`. The caller is responsible
/// for checking that `q^rows.len()` fits the budget.
pub(crate) fn tally(field: &FiniteField, rows: &[Vec<Elem>], layout: &Layout) -> Tally {
    debug_assert!(rows.iter().all(|r| r.len() == layout.width()));
    let k = rows.len();
    if k == 0 {
        return Tally::new(layout.nblocks);
    }
    let q = field.q() as u128;
    let total = q.saturating_pow(k as u32);
    let threads = rayon::current_num_threads().max(1) as u128;
    // fix the top `s` digits per chunk
    let mut s = 0usize;
    if total >= PARALLEL_THRESHOLD && threads > 1 {
        let mut chunks = 1u128;
        while s < k - 1 && chunks < 8 * threads {
            chunks *= q;
            s += 1;
        }
    }
    let (low, high) = rows.split_at(k - s);
    let nchunks = q.pow(s as u32) as u64;

    if let Some(bin) = BinaryRows::new(field, rows, layout) {
        let (blow, bhigh) = bin.rows.split_at(k - s);
        return (0..nchunks)
            .into_par_iter()
            .map(|c| bin.walk(blow, bhigh, c, layout.nblocks))
            .reduce(|| Tally::new(layout.nblocks), Tally::merge);
    }
    (0..nchunks)
        .into_par_iter()
        .map(|c| walk_generic(field, low, high, c, layout))
        .reduce(|| Tally::new(layout.nblocks), Tally::merge)
}

fn walk_generic(
    field: &FiniteField,
    low: &[Vec<Elem>],
    high: &[Vec<Elem>],
    chunk: u64,
    layout: &Layout,
) -> Tally {
    let q = field.q();
    let nw = layout.block_of.len();
    let width = layout.width();
    let mut tally = Tally::new(layout.nblocks);

    let mut word = vec![0 as Elem; width];
    let mut rest = chunk;
    let mut prefix_zero = true;
    for row in high {
        let c = (rest % q as u64) as Elem;
        rest /= q as u64;
        if c != 0 {
            prefix_zero = false;
            crate::linalg::axpy(field, &mut word, c, row);
        }
    }

    let mut counts = vec![0u32; layout.nblocks];
    let mut weight = 0usize;
    let mut tags_nonzero = 0usize;
    for (x, &v) in word.iter().enumerate() {
        if v == 0 {
            continue;
        }
        if x < nw {
            if let Some(b) = layout.block_of[x] {
                counts[b] += 1;
                if counts[b] == 1 {
                    weight += 1;
                }
            }
        } else {
            tags_nonzero += 1;
        }
    }
    if !prefix_zero {
        record(&mut tally, weight, tags_nonzero);
    }

    let support: Vec<Vec<(usize, Elem)>> = low
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, &v)| (i, v))
                .collect()
        })
        .collect();
    // step from digit value v to v+1 mod q adds delta[v] times the row
    let delta: Vec<Elem> = (0..q).map(|v| field.sub((v + 1) % q, v)).collect();

    let r = low.len();
    let mut odometer = vec![0u32; r];
    let mut gray = vec![0u32; r];
    loop {
        let mut j = 0;
        while j < r {
            odometer[j] += 1;
            if odometer[j] < q {
                break;
            }
            odometer[j] = 0;
            j += 1;
        }
        if j == r {
            break;
        }
        let c = delta[gray[j] as usize];
        gray[j] = (gray[j] + 1) % q;
        for &(x, v) in &support[j] {
            let old = word[x];
            let new = field.add(old, field.mul(c, v));
            word[x] = new;
            if (old == 0) == (new == 0) {
                continue;
            }
            if x < nw {
                if let Some(b) = layout.block_of[x] {
                    if new != 0 {
                        counts[b] += 1;
                        if counts[b] == 1 {
                            weight += 1;
                        }
                    } else {
                        counts[b] -= 1;
                        if counts[b] == 0 {
                            weight -= 1;
                        }
                    }
                }
            } else if new != 0 {
                tags_nonzero += 1;
            } else {
                tags_nonzero -= 1;
            }
        }
        record(&mut tally, weight, tags_nonzero);
    }
    tally
}

#[inline]
fn record(tally: &mut Tally, weight: usize, tags_nonzero: usize) {
    if tags_nonzero == 0 {
        tally.plain[weight] += 1;
    } else {
        tally.tagged[weight] += 1;
    }
}

/// Bit-packed rows for binary codes whose blocks are single coordinates.
struct BinaryRows {
    rows: Vec<(u128, u128)>,
    weight_mask: u128,
}

impl BinaryRows {
    fn new(field: &FiniteField, rows: &[Vec<Elem>], layout: &Layout) -> Option<BinaryRows> {
        let nw = layout.block_of.len();
        if field.q() != 2 || nw > 128 || layout.ntags > 128 {
            return None;
        }
        let mut seen = vec![false; layout.nblocks];
        let mut weight_mask = 0u128;
        for (x, b) in layout.block_of.iter().enumerate() {
            if let Some(b) = *b {
                if seen[b] {
                    return None;
                }
                seen[b] = true;
                weight_mask |= 1 << x;
            }
        }
        let rows = rows
            .iter()
            .map(|r| {
                let mut w = 0u128;
                let mut t = 0u128;
                for (x, &v) in r.iter().enumerate() {
                    if v != 0 {
                        if x < nw {
                            w |= 1 << x;
                        } else {
                            t |= 1 << (x - nw);
                        }
                    }
                }
                (w, t)
            })
            .collect();
        Some(BinaryRows { rows, weight_mask })
    }

    fn walk(
        &self,
        low: &[(u128, u128)],
        high: &[(u128, u128)],
        chunk: u64,
        nblocks: usize,
    ) -> Tally {
        let mut tally = Tally::new(nblocks);
        let (mut w, mut t) = (0u128, 0u128);
        for (i, &(rw, rt)) in high.iter().enumerate() {
            if chunk >> i & 1 == 1 {
                w ^= rw;
                t ^= rt;
            }
        }
        let mask = self.weight_mask;
        if chunk != 0 {
            record(
                &mut tally,
                (w & mask).count_ones() as usize,
                (t != 0) as usize,
            );
        }
        let r = low.len() as u32;
        let steps: u64 = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
        for step in 1..=steps {
            let (rw, rt) = low[step.trailing_zeros() as usize];
            w ^= rw;
            t ^= rt;
            let weight = (w & mask).count_ones() as usize;
            if t == 0 {
                tally.plain[weight] += 1;
            } else {
                tally.tagged[weight] += 1;
            }
        }
        tally
    }
}
