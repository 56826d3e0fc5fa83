//! Seeded property suites over every module, with a pass/fail report per
//! suite.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::combinators::{direct_sum, extend, puncture, shorten, uuv};
use crate::css::{
    derive, direct_sum_aqecc, expand_aqecc, extend_aqecc, puncture_aqecc, uuv_aqecc, Derivation,
    Status, TheoremClaim,
};
use crate::error::{Error, Result};
use crate::families::{
    abch1_aqecc, bch, character_aqecc, character_code, character_dual_scaling, grm, grm_aqecc,
    grm_dimension, grm_distance, qr, qr_distance_bound, sum_binomials, Abch1Item,
};
use crate::galois::{
    is_prime, make_field, make_field_of_order, prime_power, BasisKind, FieldBasis, FiniteField,
    Tower,
};
use crate::lincode::{expand, LinearCode};
use crate::sample::{random_basis, random_code, random_pair, random_self_orthogonal};
use crate::symplectic::{
    expansion_stabilizer, puncture_stabilizer, trace_symplectic, AdditiveCode, AlternatingForm,
    SymplecticVector,
};
use crate::table::{derivations, Caps, Family};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    FieldAxioms,
    DualExpansion,
    Combinators,
    CssSymplecticAgreement,
    Symplectic,
    Grm,
    Character,
    Bch,
    Qr,
    Theorems,
    All,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::FieldAxioms,
        Suite::DualExpansion,
        Suite::Combinators,
        Suite::CssSymplecticAgreement,
        Suite::Symplectic,
        Suite::Grm,
        Suite::Character,
        Suite::Bch,
        Suite::Qr,
        Suite::Theorems,
        Suite::All,
    ];

    fn salt(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).unwrap() as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string tag"))
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Largest field order for the field-axiom suite.
    pub max_q: u32,
    pub budget: Budget,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            max_q: 64,
            budget: Budget::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: u64,
    /// Checks abandoned because an oracle exceeded the budget.
    pub skipped: u64,
    pub failures: Vec<String>,
    pub claims: Vec<TheoremClaim>,
    pub passed: bool,
}

struct Run {
    report: SuiteReport,
    rng: ChaCha8Rng,
    budget: Budget,
}

impl Run {
    fn new(suite: Suite, opts: &VerifyOptions) -> Run {
        Run {
            report: SuiteReport {
                suite,
                checks: 0,
                skipped: 0,
                failures: Vec::new(),
                claims: Vec::new(),
                passed: false,
            },
            rng: ChaCha8Rng::seed_from_u64(
                opts.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ suite.salt(),
            ),
            budget: opts.budget,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.report.checks += 1;
        if !ok {
            self.report.failures.push(what());
        }
    }

    /// Records an oracle result: budget overflows are skipped, other
    /// errors fail.
    fn oracle<T>(&mut self, r: Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(Error::BudgetExceeded { .. } | Error::FieldTooLarge { .. }) => {
                self.report.skipped += 1;
                None
            }
            Err(e) => {
                self.report.checks += 1;
                self.report.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }

    fn claim(&mut self, label: &str, d: Result<TheoremClaim>) {
        if let Some(c) = self.oracle(d, label) {
            self.report.claims.push(c);
        }
    }

    fn finish(mut self) -> SuiteReport {
        let failures = soundness_failures(&self.report.claims);
        self.report.checks += self.report.claims.len() as u64;
        self.report.failures.extend(failures);
        self.report.passed = self.report.failures.is_empty();
        self.report
    }
}

/// Claims that are violated, or marked verified-exact without exact
/// oracle values meeting every claimed bound.
pub fn soundness_failures(claims: &[TheoremClaim]) -> Vec<String> {
    let mut out = Vec::new();
    for c in claims {
        let label = format!("{} {}", c.theorem, c.inputs);
        match c.status {
            Status::Violated => out.push(format!("{label}: violated ({})", c.notes.join("; "))),
            Status::VerifiedExact => {
                let sound = match (&c.claimed, &c.oracle) {
                    (Some(cl), Some(o)) => {
                        o.dz.exact
                            && o.dx.exact
                            && (o.q, o.n, o.k) == (cl.q, cl.n, cl.k)
                            && cl.dz <= o.dz.value
                            && cl.dx <= o.dx.value
                    }
                    _ => false,
                };
                if !sound {
                    out.push(format!("{label}: verified-exact without a matching oracle"));
                }
            }
            _ => {}
        }
    }
    out
}

/// Runs `suite`; `All` runs every other suite in order.
pub fn run(suite: Suite, opts: &VerifyOptions) -> Vec<SuiteReport> {
    if suite == Suite::All {
        return Suite::ALL[..Suite::ALL.len() - 1]
            .iter()
            .map(|&s| run_one(s, opts))
            .collect();
    }
    vec![run_one(suite, opts)]
}

fn run_one(suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    let mut r = Run::new(suite, opts);
    match suite {
        Suite::FieldAxioms => field_axioms(&mut r, opts.max_q),
        Suite::DualExpansion => dual_expansion(&mut r),
        Suite::Combinators => combinator_laws(&mut r),
        Suite::CssSymplecticAgreement => css_symplectic_agreement(&mut r),
        Suite::Symplectic => symplectic(&mut r),
        Suite::Grm => grm_suite(&mut r),
        Suite::Character => character_suite(&mut r),
        Suite::Bch => bch_suite(&mut r),
        Suite::Qr => qr_suite(&mut r),
        Suite::Theorems => theorems(&mut r),
        Suite::All => unreachable!(),
    }
    r.finish()
}

fn field_axioms(r: &mut Run, max_q: u32) {
    for q in 2..=max_q.min(r.budget.max_field as u32) {
        let Some((p, m)) = prime_power(q) else {
            continue;
        };
        let f = make_field(p, m).expect("prime power within the field budget");
        let elems: Vec<u32> = f.elements().collect();
        let g = f.generator();
        r.check(f.order(g) == Some(q as u64 - 1), || {
            format!("GF({q}): generator is not primitive")
        });
        for &a in &elems {
            r.check(f.add(a, f.neg(a)) == 0, || {
                format!("GF({q}): {a} + (-{a}) != 0")
            });
            r.check(f.from_digits(&f.digits(a)) == a, || {
                format!("GF({q}): digit round trip of {a}")
            });
            if a != 0 {
                let ok = f.inv(a).is_some_and(|i| f.mul(a, i) == 1)
                    && f.exp(f.log(a).unwrap() as u64) == a;
                r.check(ok, || format!("GF({q}): inverse or log of {a}"));
            }
            for &b in &elems {
                let ok = f.add(a, b) == f.add(b, a)
                    && f.mul(a, b) == f.mul(b, a)
                    && f.sub(f.add(a, b), b) == a;
                r.check(ok, || format!("GF({q}): commutativity at ({a}, {b})"));
            }
        }
        let triples: Vec<[u32; 3]> = if q <= 16 {
            elems
                .iter()
                .flat_map(|&a| {
                    elems
                        .iter()
                        .flat_map(move |&b| (0..q).map(move |c| [a, b, c]))
                })
                .collect()
        } else {
            (0..4096)
                .map(|_| [0; 3].map(|_| r.rng.gen_range(0..q)))
                .collect()
        };
        for [a, b, c] in triples {
            let ok = f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                && f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
            r.check(ok, || format!("GF({q}): ring laws at ({a}, {b}, {c})"));
        }
        for d in (1..m).filter(|d| m % d == 0) {
            let bottom = make_field(p, d).expect("subfield");
            let tower = Arc::new(Tower::new(f.clone(), bottom.clone()).expect("divisor degree"));
            tower_laws(r, &f, &bottom, &tower);
        }
    }
}

fn tower_laws(r: &mut Run, f: &FiniteField, bottom: &FiniteField, tower: &Arc<Tower>) {
    let name = format!("GF({})/GF({})", f.q(), bottom.q());
    for c in bottom.elements() {
        r.check(tower.project(tower.embed(c)) == Some(c), || {
            format!("{name}: embed/project of {c}")
        });
        r.check(tower.frobenius(tower.embed(c)) == tower.embed(c), || {
            format!("{name}: Frobenius moves {c}")
        });
    }
    let mut onto = false;
    for a in f.elements() {
        onto |= tower.trace(a) != 0;
        for b in f.elements() {
            let ok = tower.trace(f.add(a, b)) == bottom.add(tower.trace(a), tower.trace(b))
                && tower.frobenius(f.mul(a, b)) == f.mul(tower.frobenius(a), tower.frobenius(b))
                && tower.frobenius(f.add(a, b)) == f.add(tower.frobenius(a), tower.frobenius(b));
            r.check(ok, || {
                format!("{name}: trace or Frobenius not additive/multiplicative at ({a}, {b})")
            });
        }
        for c in bottom.elements() {
            let ok = tower.trace(f.mul(tower.embed(c), a)) == bottom.mul(c, tower.trace(a));
            r.check(ok, || format!("{name}: trace not linear at ({c}, {a})"));
        }
    }
    r.check(onto, || format!("{name}: trace is identically zero"));
    for kind in [
        BasisKind::Polynomial,
        BasisKind::DualOfPolynomial,
        BasisKind::Normal,
    ] {
        let basis = FieldBasis::of_kind(tower.clone(), kind);
        let dual = basis.dual();
        for (i, &x) in basis.elements().iter().enumerate() {
            for (j, &y) in dual.elements().iter().enumerate() {
                let want = u32::from(i == j);
                r.check(tower.trace(f.mul(x, y)) == want, || {
                    format!("{name}: {kind:?} dual pairing at ({i}, {j})")
                });
            }
        }
        for a in f.elements() {
            r.check(basis.combine(basis.coords(a)) == a, || {
                format!("{name}: {kind:?} coordinates of {a}")
            });
        }
    }
}

fn codeword_set(c: &LinearCode, budget: &Budget) -> Result<BTreeSet<Vec<u32>>> {
    Ok(c.codewords(budget)?.into_iter().collect())
}

fn dual_expansion(r: &mut Run) {
    let small = Budget::with_codewords(1 << 20);
    for (p, m, count) in [(2, 2, 50), (3, 2, 25)] {
        let top = make_field(p, m).expect("small field");
        let tower = Arc::new(Tower::over_prime(top.clone()).expect("prime tower"));
        for _ in 0..count {
            let n = r.rng.gen_range(1..=6);
            let k = r.rng.gen_range(1..=n.min(3));
            let c = random_code(&mut r.rng, &top, n, k);
            let basis = random_basis(&mut r.rng, &tower);
            let label = format!(
                "GF({}) n={n} code {c} basis {:?}",
                top.q(),
                basis.elements()
            );
            let (Ok(lhs), Ok(rhs)) = (expand(&c, &basis), expand(&c.dual(), &basis.dual())) else {
                r.check(false, || format!("{label}: expansion failed"));
                continue;
            };
            let lhs = lhs.dual();
            r.check(lhs == rhs, || {
                format!("{label}: dual of the expansion differs")
            });
            let sets =
                codeword_set(&lhs, &small).and_then(|a| Ok((a, codeword_set(&rhs, &small)?)));
            if let Some((a, b)) = r.oracle(sets, &label) {
                r.check(a == b, || format!("{label}: codeword sets differ"));
            }
        }
    }
}

fn distance(c: &LinearCode, budget: &Budget) -> Result<Option<usize>> {
    if c.k() == 0 {
        return Ok(None);
    }
    Ok(Some(c.min_distance(budget)?.value))
}

fn combinator_laws(r: &mut Run) {
    let fields =
        [make_field(2, 1), make_field(3, 1), make_field(2, 2)].map(|f| f.expect("small field"));
    for round in 0..120 {
        let f = fields[round % 3].clone();
        let max_n = if f.q() == 4 { 4 } else { 6 };
        let n = r.rng.gen_range(2..=max_n);
        let ka = r.rng.gen_range(1..n);
        let kb = r.rng.gen_range(1..n);
        let a = random_code(&mut r.rng, &f, n, ka);
        let b = random_code(&mut r.rng, &f, n, kb);
        let i = r.rng.gen_range(0..n);
        let label = format!("GF({}) a={a} b={b}", f.q());

        let dual_of_puncture = puncture(&a, i).map(|c| c.dual());
        let ok = matches!((dual_of_puncture, shorten(&a.dual(), i)), (Ok(x), Ok(y)) if x == y);
        r.check(ok, || format!("{label}: puncture/shorten duality at {i}"));

        let ok = puncture(&extend(&a), n).is_ok_and(|c| c == a);
        r.check(ok, || format!("{label}: puncturing the extension"));

        let ok = match (direct_sum(&a, &b), direct_sum(&a.dual(), &b.dual())) {
            (Ok(s), Ok(t)) => s.dual() == t,
            _ => false,
        };
        r.check(ok, || format!("{label}: direct-sum dual"));

        let Ok(u) = uuv(&a, &b) else {
            r.check(false, || format!("{label}: uuv failed"));
            continue;
        };
        let got = distance(&u.dual(), &r.budget);
        let da = distance(&a.dual(), &r.budget);
        let db = distance(&b.dual(), &r.budget);
        let all = got.and_then(|g| Ok((g, da?, db?)));
        if let Some((got, da, db)) = r.oracle(all, &label) {
            let want = [db.map(|d| 2 * d), da].into_iter().flatten().min();
            r.check(got == want, || {
                format!("{label}: uuv dual distance {got:?}, law gives {want:?}")
            });
        }
    }
}

fn css_symplectic_agreement(r: &mut Run) {
    let fields =
        [make_field(2, 1), make_field(3, 1), make_field(2, 2)].map(|f| f.expect("small field"));
    let mut done = 0;
    while done < 20 {
        let f = fields[done % 3].clone();
        let max_n = if f.q() == 4 { 4 } else { 6 };
        let n = r.rng.gen_range(2..=max_n);
        let Some(pair) = random_pair(&mut r.rng, &f, n) else {
            continue;
        };
        done += 1;
        let label = format!("GF({}) c1={} c2={}", f.q(), pair.c1(), pair.c2());
        let css = derive(&pair, &r.budget);
        let sym = AdditiveCode::from_css(&pair).stabilizer_params(&r.budget);
        let both = css.and_then(|c| Ok((c, sym?)));
        if let Some((css, sym)) = r.oracle(both, &label) {
            let sym = sym.as_aqecc();
            r.check(sym.as_ref() == Some(&css), || {
                format!("{label}: derive gives {css}, stabilizer gives {sym:?}")
            });
        }
    }
}

fn all_vectors(q: u32, n: usize) -> Vec<SymplecticVector> {
    let total = (q as usize).pow(2 * n as u32);
    (0..total)
        .map(|mut x| {
            let mut digits = vec![0; 2 * n];
            for d in digits.iter_mut() {
                *d = (x % q as usize) as u32;
                x /= q as usize;
            }
            let b = digits.split_off(n);
            SymplecticVector::new(digits, b).expect("equal halves")
        })
        .collect()
}

fn symplectic(r: &mut Run) {
    let f2 = make_field(2, 1).expect("GF(2)");
    let form = AlternatingForm::new(f2.clone(), &r.budget).expect("GF(4) fits");
    for n in 1..=3 {
        let vs = all_vectors(2, n);
        let images: Vec<Vec<u32>> = vs.iter().map(|x| form.phi(x)).collect();
        for (x, px) in vs.iter().zip(&images) {
            let wt = px.iter().filter(|&&v| v != 0).count();
            r.check(wt == x.swt(), || format!("phi changes the weight of {x:?}"));
            r.check(&form.phi_inverse(px) == x, || {
                format!("phi is not inverted at {x:?}")
            });
        }
        for (x, px) in vs.iter().zip(&images) {
            for (y, py) in vs.iter().zip(&images) {
                let ok = form.eval(px, py).ok() == trace_symplectic(&f2, x, y).ok();
                r.check(ok, || {
                    format!("phi does not carry the form at ({x:?}, {y:?})")
                });
            }
        }
    }

    let f4 = make_field(2, 2).expect("GF(4)");
    let tower = Arc::new(Tower::over_prime(f4.clone()).expect("prime tower"));
    for _ in 0..20 {
        let n = r.rng.gen_range(1..=3);
        let rank = r.rng.gen_range(1..=2 * n);
        let code = random_self_orthogonal(&mut r.rng, &f4, n, rank);
        let basis = random_basis(&mut r.rng, &tower);
        let label = format!("{code} basis {:?}", basis.elements());
        r.check(code.is_self_orthogonal(), || {
            format!("{label}: sample is not self-orthogonal")
        });
        let (Ok(image), Ok(dual_image)) =
            (code.expand(&basis), code.symplectic_dual().expand(&basis))
        else {
            r.check(false, || format!("{label}: expansion failed"));
            continue;
        };
        r.check(image.is_self_orthogonal(), || {
            format!("{label}: expansion breaks self-orthogonality")
        });
        r.check(dual_image == image.symplectic_dual(), || {
            format!("{label}: expansion does not carry the dual")
        });
        for c in [&code, &image] {
            size_law(r, c);
        }
    }

    // the size law also for codes that are not self-orthogonal
    for f in [f2, make_field(3, 1).expect("GF(3)"), f4] {
        for _ in 0..10 {
            let n = r.rng.gen_range(1..=3);
            let width = 2 * f.m() as usize * n;
            let rows = r.rng.gen_range(0..=width);
            let digits: Vec<Vec<u32>> = (0..rows)
                .map(|_| (0..width).map(|_| r.rng.gen_range(0..f.p())).collect())
                .collect();
            let code =
                AdditiveCode::from_digit_rows(f.clone(), n, &digits).expect("well-formed rows");
            size_law(r, &code);
        }
    }
}

fn size_law(r: &mut Run, c: &AdditiveCode) {
    let ok = c.rank() + c.symplectic_dual().rank() == 2 * c.t() * c.n();
    r.check(ok, || format!("{c}: |C||C⊥s| != p^(2tn)"));
}

fn grm_suite(r: &mut Run) {
    let limit = Budget::with_codewords(1 << 20);
    for q in [2, 3, 4] {
        for m in 1..=3u32 {
            for alpha in 0..m as usize * (q as usize - 1) {
                let label = format!("R_{q}({alpha}, {m})");
                let Some((code, info)) = r.oracle(grm(q, m, alpha, &r.budget), &label) else {
                    continue;
                };
                r.check(
                    code.k() == grm_dimension(q, m, alpha) && code.k() == info.k,
                    || {
                        format!(
                            "{label}: rank {} vs formula {}",
                            code.k(),
                            grm_dimension(q, m, alpha)
                        )
                    },
                );
                if limit.allows(q, code.k()) {
                    if let Some(d) = r.oracle(code.min_distance(&limit), &label) {
                        let want = grm_distance(q, m, alpha);
                        r.check(d.value == want, || {
                            format!("{label}: distance {} vs formula {want}", d.value)
                        });
                    }
                }
                if let Some((dual, _)) = r.oracle(grm(q, m, info.dual_order, &r.budget), &label) {
                    r.check(code.dual() == dual, || {
                        format!("{label}: dual is not R_{q}({}, {m})", info.dual_order)
                    });
                }
            }
        }
    }
}

fn character_suite(r: &mut Run) {
    for q in [3, 5, 9] {
        for m in 1..=3u32 {
            for rr in 0..=m as usize {
                let label = format!("C_{q}({rr}, {m})");
                let Some(c) = r.oracle(character_code(q, rr, m, &r.budget), &label) else {
                    continue;
                };
                let want = (
                    1usize << m,
                    sum_binomials(m, rr),
                    1usize << (m as usize - rr),
                );
                if let Some(d) = r.oracle(c.min_distance(&r.budget), &label) {
                    let got = (c.n(), c.k(), d.value);
                    r.check(got == want, || {
                        format!("{label}: parameters {got:?}, formula {want:?}")
                    });
                }
                if rr < m as usize && q != 9 {
                    let s = character_dual_scaling(q, rr, m, &r.budget);
                    if let Some(s) = r.oracle(s, &label) {
                        r.check(s.is_some(), || {
                            format!("{label}: dual is not a sign scaling")
                        });
                    }
                }
            }
        }
    }
}

/// Length and field pairs for the BCH bound suite.
pub const BCH_LENGTHS: [(u32, usize); 5] = [(2, 7), (2, 15), (3, 8), (3, 26), (4, 15)];

fn bch_suite(r: &mut Run) {
    for (q, n) in BCH_LENGTHS {
        for delta in 1..=n {
            let label = format!("BCH(q={q}, n={n}, delta={delta})");
            let Some((code, info)) = r.oracle(bch(q, n, 1, delta, &r.budget), &label) else {
                continue;
            };
            r.check(code.k() == n - info.degree, || {
                format!("{label}: k = {} but deg g = {}", code.k(), info.degree)
            });
            if code.k() == 0 {
                continue;
            }
            if let Some(d) = r.oracle(code.min_distance(&r.budget), &label) {
                r.check(d.value >= delta, || {
                    format!("{label}: distance {} below the designed distance", d.value)
                });
            }
        }
    }
}

fn qr_suite(r: &mut Run) {
    for p in (3..=31).filter(|&p| is_prime(p)) {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            if q % p == 0 || !(1..p).any(|x| x * x % p == q % p) {
                continue;
            }
            let label = format!("QR(p={p}, q={q})");
            let Some(s) = r.oracle(qr(p, q, &r.budget), &label) else {
                continue;
            };
            let half = p as usize / 2;
            let dims = (s.q_code.k(), s.c_code.k(), s.q_even.k(), s.c_even.k());
            r.check(dims == (half + 1, half + 1, half, half), || {
                format!("{label}: dimensions {dims:?}")
            });
            let expected_dual = if p % 4 == 1 {
                s.c_code.dual()
            } else {
                s.q_code.dual()
            };
            r.check(expected_dual == s.q_even, || {
                format!("{label}: dual is not the even-like residue code")
            });
            let bound = qr_distance_bound(p);
            for c in [&s.q_code, &s.c_code] {
                if let Some(d) = r.oracle(c.min_distance(&r.budget), &label) {
                    r.check(d.value >= bound, || {
                        format!("{label}: distance {} below {bound}", d.value)
                    });
                }
            }
        }
    }
}

fn family_claims(r: &mut Run, family: Family, caps: Caps) {
    let all = derivations(family, &caps, BasisKind::Polynomial, &r.budget);
    match all {
        Ok(list) => r
            .report
            .claims
            .extend(list.into_iter().map(|(_, d)| d.claim)),
        Err(e) => r.check(false, || format!("{family} table: {e}")),
    }
}

fn theorems(r: &mut Run) {
    let small = Caps {
        max_p: 13,
        max_q: 4,
        max_m: 2,
        q: None,
    };
    for family in Family::ALL {
        family_claims(r, family, small);
    }
    for (q, m) in [(2, 3), (3, 2)] {
        for a2 in 0..m as usize * (q as usize - 1) {
            for a1 in 0..a2 {
                let d = grm_aqecc(q, m, a1, a2, BasisKind::Normal, &r.budget).map(|d| d.claim);
                r.claim("grm", d);
            }
        }
    }
    for (r1, r2) in [(0, 1), (0, 2), (1, 2), (1, 3)] {
        let d = character_aqecc(3, 3, r1, r2, BasisKind::Polynomial, &r.budget).map(|d| d.claim);
        r.claim("character", d);
    }
    let d = character_aqecc(9, 2, 0, 1, BasisKind::Normal, &r.budget).map(|d| d.claim);
    r.claim("character", d);
    for item in Abch1Item::all(3) {
        let d = abch1_aqecc(3, 4, item, BasisKind::Polynomial, &r.budget).map(|d| d.claim);
        r.claim("bch-primitive", d);
    }

    let fields = [make_field(2, 1), make_field(3, 1)].map(|f| f.expect("small field"));
    let f4 = make_field(2, 2).expect("GF(4)");
    let tower = Arc::new(Tower::over_prime(f4.clone()).expect("prime tower"));
    for round in 0..12 {
        let f = fields[round % 2].clone();
        let n = r.rng.gen_range(2..=5);
        let (Some(a), Some(b)) = (
            random_pair(&mut r.rng, &f, n),
            random_pair(&mut r.rng, &f, n),
        ) else {
            continue;
        };
        let i = r.rng.gen_range(0..n);
        let budget = r.budget;
        r.claim("direct-sum", direct_sum_aqecc(&a, &b, &budget).map(take));
        r.claim("puncture", puncture_aqecc(&a, i, &budget).map(take));
        r.claim("extend", extend_aqecc(&a, &budget).map(take));
        r.claim("uuv", uuv_aqecc(&a, &b, &budget).map(take));

        let n4 = r.rng.gen_range(2..=3);
        if let Some(pair) = random_pair(&mut r.rng, &f4, n4) {
            let basis = random_basis(&mut r.rng, &tower);
            r.claim("expand", expand_aqecc(&pair, &basis, &budget).map(take));
        }
        let rank = r.rng.gen_range(1..=2 * n4);
        let code = random_self_orthogonal(&mut r.rng, &f4, n4, rank);
        let basis = random_basis(&mut r.rng, &tower);
        r.claim(
            "stabilizer-expansion",
            expansion_stabilizer(&code, &basis, &budget).map(|d| d.claim),
        );
        let i = r.rng.gen_range(0..n4);
        r.claim(
            "stabilizer-puncture",
            puncture_stabilizer(&code, i, &budget).map(|d| d.claim),
        );
    }

    // a pure CSS code with room to puncture: the Steane code
    let h = crate::families::bch(2, 7, 1, 3, &r.budget).map(|(c, _)| c);
    if let Some(h) = r.oracle(h, "hamming") {
        if let Ok(pair) = crate::css::CssPair::new(h.clone(), h.dual()) {
            let code = AdditiveCode::from_css(&pair);
            let budget = r.budget;
            r.claim("puncture", puncture_aqecc(&pair, 0, &budget).map(take));
            r.claim("extend", extend_aqecc(&pair, &budget).map(take));
            r.claim(
                "stabilizer-puncture",
                puncture_stabilizer(&code, 0, &budget).map(|d| d.claim),
            );
            let field = make_field_of_order(4, budget.max_field).expect("GF(4)");
            let lifted = AdditiveCode::from_css(&lift(&pair, &field));
            let basis = FieldBasis::normal(tower.clone());
            r.claim(
                "stabilizer-expansion",
                expansion_stabilizer(&lifted, &basis, &budget).map(|d| d.claim),
            );
        }
    }
}

fn take(d: Derivation) -> TheoremClaim {
    d.claim
}

/// The same generator matrices read over an extension field.
fn lift(pair: &crate::css::CssPair, field: &Arc<FiniteField>) -> crate::css::CssPair {
    let tower = Tower::new(field.clone(), pair.field().clone()).expect("subfield");
    let up = |c: &LinearCode| {
        let rows: Vec<Vec<u32>> = c
            .generator()
            .iter()
            .map(|r| r.iter().map(|&x| tower.embed(x)).collect())
            .collect();
        LinearCode::from_generator(field.clone(), c.n(), &rows).expect("embedded rows")
    };
    crate::css::CssPair::new(up(pair.c1()), up(pair.c2())).expect("nesting survives the lift")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(
            Suite::CssSymplecticAgreement.to_string(),
            "css-symplectic-agreement"
        );
    }

    #[test]
    fn small_suites_pass() {
        let opts = VerifyOptions {
            max_q: 16,
            ..VerifyOptions::default()
        };
        for s in [
            Suite::FieldAxioms,
            Suite::CssSymplecticAgreement,
            Suite::Character,
        ] {
            let rep = run(s, &opts).pop().unwrap();
            assert!(rep.passed, "{:?}", rep.failures);
            assert!(rep.checks > 0);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let opts = VerifyOptions::default();
        let a = run(Suite::CssSymplecticAgreement, &opts);
        let b = run(Suite::CssSymplecticAgreement, &opts);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn soundness_flags_bad_claims() {
        let c = TheoremClaim::hypothesis_failed("x", serde_json::json!({}), None, "no");
        assert!(soundness_failures(std::slice::from_ref(&c)).is_empty());
        let bad = TheoremClaim {
            status: Status::VerifiedExact,
            ..c
        };
        assert_eq!(soundness_failures(&[bad]).len(), 1);
    }
}
