use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use aqecc::combinators::{extend, puncture, shorten, uuv};
use aqecc::css::{derive, CssPair};
use aqecc::galois::{make_field, prime_tower, FieldBasis, FiniteField};
use aqecc::linalg;
use aqecc::lincode::{expand, macwilliams, LinearCode};
use aqecc::sample::{random_basis, random_code, random_pair, random_rows, random_self_orthogonal};
use aqecc::symplectic::{AdditiveCode, SymplecticVector};
use aqecc::{Budget, Error};

fn field(i: usize) -> Arc<FiniteField> {
    let (p, m) = [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)][i % 5];
    make_field(p, m).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(fi in 0usize..5, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(fi);
        let (a, b, c) = (a % f.q(), b % f.q(), c % f.q());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if b != 0 {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
        prop_assert_eq!(f.pow(a, f.q() as u64), a);
    }

    #[test]
    fn rank_nullity(fi in 0usize..5, seed in any::<u64>(), rows in 0usize..6, cols in 1usize..7) {
        let f = field(fi);
        let m = random_rows(&mut rng(seed), &f, rows, cols);
        let r = linalg::rank(&f, &m, cols);
        let null = linalg::nullspace(&f, &m, cols);
        prop_assert_eq!(r + null.len(), cols);
        for v in &null {
            for row in &m {
                prop_assert_eq!(linalg::dot(&f, row, v), 0);
            }
        }
    }

    #[test]
    fn codes_round_trip_and_dualize(fi in 0usize..5, seed in any::<u64>(), n in 1usize..8, k in 0usize..8) {
        let f = field(fi);
        let c = random_code(&mut rng(seed), &f, n, k.min(n));
        prop_assert_eq!(c.dual().dual(), c.clone());
        prop_assert_eq!(c.k() + c.dual().k(), n);
        let text = serde_json::to_string(&c).unwrap();
        let back: LinearCode = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        let msg: Vec<u32> = (0..c.k() as u32).map(|i| i % f.q()).collect();
        prop_assert!(c.contains(&c.encode(&msg)));
    }

    #[test]
    fn macwilliams_matches_enumeration(fi in 0usize..5, seed in any::<u64>(), n in 1usize..7, k in 1usize..7) {
        let f = field(fi);
        let c = random_code(&mut rng(seed), &f, n, k.min(n));
        let b = Budget::default();
        let direct = c.weight_distribution(&b).unwrap().counts;
        let dual = c.dual().weight_distribution(&b).unwrap().counts;
        prop_assert_eq!(macwilliams(n, f.q(), &dual).unwrap(), direct);
    }

    #[test]
    fn budget_is_enforced(seed in any::<u64>(), k in 3usize..8) {
        let f = field(0);
        let c = random_code(&mut rng(seed), &f, 10, k);
        if c.k() == 0 {
            return Ok(());
        }
        let smaller = c.k().min(10 - c.k());
        let tight = Budget::with_codewords((1u128 << smaller) - 1);
        let over = matches!(c.min_distance(&tight), Err(Error::BudgetExceeded { .. }));
        prop_assert!(over);
        let enough = Budget::with_codewords(1u128 << c.k());
        prop_assert!(c.weight_distribution(&enough).is_ok());
    }

    #[test]
    fn expansion_scales_and_dualizes(fi in 2usize..5, seed in any::<u64>(), n in 1usize..5, k in 1usize..4) {
        let f = field(fi);
        if f.m() == 1 {
            return Ok(());
        }
        let mut r = rng(seed);
        let c = random_code(&mut r, &f, n, k.min(n));
        let basis = random_basis(&mut r, &prime_tower(&f));
        let e = expand(&c, &basis).unwrap();
        prop_assert_eq!((e.n(), e.k()), (n * f.m() as usize, c.k() * f.m() as usize));
        prop_assert_eq!(e.dual(), expand(&c.dual(), &basis.dual()).unwrap());
        if c.k() > 0 {
            let b = Budget::default();
            prop_assert!(e.min_distance(&b).unwrap().value >= c.min_distance(&b).unwrap().value);
        }
    }

    #[test]
    fn combinator_identities(fi in 0usize..3, seed in any::<u64>(), n in 2usize..7, k in 1usize..6) {
        let f = field(fi);
        let mut r = rng(seed);
        let c = random_code(&mut r, &f, n, k.min(n - 1));
        let d = random_code(&mut r, &f, n, k.min(n - 1));
        for i in 0..n {
            prop_assert_eq!(puncture(&c, i).unwrap().dual(), shorten(&c.dual(), i).unwrap());
        }
        prop_assert_eq!(puncture(&extend(&c), n).unwrap(), c.clone());
        let u = uuv(&c, &d).unwrap();
        prop_assert_eq!((u.n(), u.k()), (2 * n, c.k() + d.k()));
    }

    #[test]
    fn css_distances_dominate_absolute(fi in 0usize..3, seed in any::<u64>(), n in 2usize..7) {
        let f = field(fi);
        let Some(pair) = random_pair(&mut rng(seed), &f, n) else { return Ok(()); };
        let b = Budget::default();
        let p = derive(&pair, &b).unwrap();
        prop_assert_eq!(p.k, pair.c1().k() - pair.c2().k());
        prop_assert!(p.dz.value >= pair.c1().min_distance(&b).unwrap().value);
        prop_assert!(p.dx.value >= pair.c2().dual().min_distance(&b).unwrap().value);
        let text = serde_json::to_string(&pair).unwrap();
        prop_assert_eq!(serde_json::from_str::<CssPair>(&text).unwrap(), pair.clone());
        let sym = AdditiveCode::from_css(&pair).stabilizer_params(&b).unwrap().as_aqecc();
        prop_assert_eq!(sym, Some(p));
    }

    #[test]
    fn symplectic_sizes(fi in 0usize..5, seed in any::<u64>(), n in 1usize..4, rank in 0usize..7) {
        let f = field(fi);
        let code = random_self_orthogonal(&mut rng(seed), &f, n, rank.min(f.m() as usize * n));
        prop_assert!(code.is_self_orthogonal());
        let dual = code.symplectic_dual();
        prop_assert_eq!(code.rank() + dual.rank(), 2 * f.m() as usize * n);
        prop_assert!(code.is_subcode_of(&dual));
        let text = serde_json::to_string(&code).unwrap();
        prop_assert_eq!(serde_json::from_str::<AdditiveCode>(&text).unwrap(), code.clone());
        if f.m() > 1 {
            let basis = FieldBasis::polynomial(prime_tower(&f));
            let image = code.expand(&basis).unwrap();
            prop_assert!(image.is_self_orthogonal());
            prop_assert_eq!(image.rank(), code.rank());
        }
    }

    #[test]
    fn symplectic_weight_bounds(a in proptest::collection::vec(0u32..3, 1..8), seed in any::<u64>()) {
        let f = field(1);
        let n = a.len();
        let b: Vec<u32> = random_rows(&mut rng(seed), &f, 1, n).pop().unwrap();
        let v = SymplecticVector::new(a, b).unwrap();
        prop_assert!(v.swt() <= v.wt_x() + v.wt_z());
        prop_assert!(v.swt() >= v.wt_x().max(v.wt_z()));
    }
}
