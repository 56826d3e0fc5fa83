//! Table-driven arithmetic in GF(p^m).
//!
//! Elements are integer indices in `[0, q)`: the index of an element is the
//! base-`p` evaluation of its coefficient vector in the polynomial basis
//! `1, x, ..., x^(m-1)` modulo the canonical modulus. Index 0 is zero, index 1
//! is one, and the prime subfield occupies indices `0..p`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::budget::DEFAULT_MAX_FIELD;
use crate::error::{Error, Result};

/// Field element, stored as its index.
pub type Elem = u32;

const ADD_TABLE_LIMIT: u32 = 1024;

pub struct FiniteField {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
    neg: Vec<u32>,
}

/// Serialized field description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.m)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl Eq for FiniteField {}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Returns `p^m` when `p` is a prime power of the form `p^m`, as `(p, m)`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = prime_factors(q as u64)[0] as u32;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

// Dense polynomial helpers over GF(p), coefficients ascending.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    // modulus is monic
    for deg in (m..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &mc) in modulus[..m].iter().enumerate() {
            let sub = c * mc as u64 % p as u64;
            let idx = deg - m + i;
            prod[idx] = (prod[idx] + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(m);
    prod.into_iter().map(|c| c as u32).collect()
}

fn poly_powmod(base: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut result = vec![0u32; m];
    result[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &b, modulus, p);
        }
        b = poly_mulmod(&b, &b, modulus, p);
        e >>= 1;
    }
    result
}

fn pow_mod(mut b: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1 % n;
    b %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % n;
        }
        b = b * b % n;
        e >>= 1;
    }
    r
}

/// Whether the monic polynomial `modulus` (degree m) has a primitive root,
/// i.e. `x` generates the unit group of `GF(p)[x]/(modulus)`.
pub(crate) fn is_primitive_modulus(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    if modulus[0] == 0 {
        return false;
    }
    let q = (p as u64).pow(m as u32);
    let order = q - 1;
    if m == 1 {
        let root = (p - modulus[0]) as u64 % p as u64;
        if root == 0 {
            return false;
        }
        return prime_factors(order)
            .into_iter()
            .all(|r| pow_mod(root, order / r, p as u64) != 1);
    }
    let mut x = vec![0u32; m];
    x[1] = 1;
    let mut one = vec![0u32; m];
    one[0] = 1;
    if poly_powmod(&x, order, modulus, p) != one {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|r| poly_powmod(&x, order / r, modulus, p) != one)
}

/// Smallest monic degree-m polynomial over GF(p) with a primitive root,
/// ordered by the base-p value of its lower coefficients.
fn canonical_modulus(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(m as usize + 1);
        let mut c = code;
        for _ in 0..m {
            coeffs.push((c % p as u64) as u32);
            c /= p as u64;
        }
        coeffs.push(1);
        if is_primitive_modulus(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("every finite field has a primitive polynomial")
}

fn field_cache() -> &'static Mutex<HashMap<(u32, u32), Arc<FiniteField>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<FiniteField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Canonical GF(p^m) under the default field budget.
pub fn make_field(p: u32, m: u32) -> Result<Arc<FiniteField>> {
    make_field_within(p, m, DEFAULT_MAX_FIELD)
}

/// Canonical GF(p^m), refusing fields larger than `max_q`.
pub fn make_field_within(p: u32, m: u32, max_q: u64) -> Result<Arc<FiniteField>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::InvalidParameter(
            "extension degree must be >= 1".into(),
        ));
    }
    let q = (p as u64).checked_pow(m);
    match q {
        Some(q) if q <= max_q && q <= u32::MAX as u64 / 2 => {}
        _ => return Err(Error::FieldTooLarge { p, m, limit: max_q }),
    }
    let mut cache = field_cache().lock().expect("field cache poisoned");
    if let Some(f) = cache.get(&(p, m)) {
        return Ok(f.clone());
    }
    let field = Arc::new(FiniteField::build(p, m));
    cache.insert((p, m), field.clone());
    Ok(field)
}

/// Canonical GF(q) for a prime power q.
pub fn make_field_of_order(q: u32, max_q: u64) -> Result<Arc<FiniteField>> {
    let (p, m) = prime_power(q)
        .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
    make_field_within(p, m, max_q)
}

/// Rebuilds a field from its serialized description, checking the modulus.
pub fn field_from_record(record: &FieldRecord, max_q: u64) -> Result<Arc<FiniteField>> {
    let field = make_field_within(record.p, record.m, max_q)?;
    if field.modulus() != record.modulus.as_slice() {
        return Err(Error::FieldMismatch(format!(
            "modulus {:?} is not the canonical modulus {:?} of {:?}",
            record.modulus,
            field.modulus(),
            field
        )));
    }
    Ok(field)
}

impl FiniteField {
    fn build(p: u32, m: u32) -> FiniteField {
        let q = p.pow(m);
        let modulus = canonical_modulus(p, m);
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; q as usize];

        // powers of the root, tracked as a coefficient vector
        let mut cur = vec![0u32; m as usize];
        cur[0] = 1;
        let mut root = vec![0u32; m as usize];
        if m == 1 {
            root[0] = (p - modulus[0]) % p;
        } else {
            root[1] = 1;
        }
        for i in 0..order {
            let idx = cur.iter().rev().fold(0u32, |acc, &c| acc * p + c);
            exp[i] = idx;
            exp[i + order] = idx;
            log[idx as usize] = i as u32;
            cur = poly_mulmod(&cur, &root, &modulus, p);
        }
        let neg = (0..q)
            .map(|a| {
                let mut out = 0u32;
                let mut place = 1u32;
                let mut a = a;
                for _ in 0..m {
                    let d = a % p;
                    out += ((p - d) % p) * place;
                    place *= p;
                    a /= p;
                }
                out
            })
            .collect();
        let mut field = FiniteField {
            p,
            m,
            q,
            modulus,
            exp,
            log,
            add_table: None,
            neg,
        };
        if p != 2 && q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add_table = Some(table);
        }
        field
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, ascending, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn record(&self) -> FieldRecord {
        FieldRecord {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
        }
    }

    /// The canonical primitive element (root of the modulus).
    pub fn generator(&self) -> Elem {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    pub fn contains(&self, a: Elem) -> bool {
        a < self.q
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.q
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add_table {
            t[(a * self.q + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let order = self.q - 1;
        Some(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64 * (e % order) % order;
        self.exp[l as usize]
    }

    /// Discrete log to the canonical generator; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `generator^e`.
    pub fn exp(&self, e: u64) -> Elem {
        let order = (self.q - 1) as u64;
        self.exp[(e % order) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = (self.q - 1) as u64;
        Some(n / gcd(l, n))
    }

    /// Coefficients of `a` in the polynomial basis, ascending.
    pub fn digits(&self, mut a: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.p + d % self.p)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
