#![allow(dead_code)]

use proptest::prelude::*;
use samuel_core::monomial::radical_contains;
use samuel_core::{rat_make, Monomial, MonomialIdeal, Rational};

pub fn q(p: i64, d: i64) -> Rational {
    rat_make(p, d).unwrap()
}

pub fn mono(v: &[u64]) -> Monomial {
    Monomial::new(v.to_vec())
}

pub fn ideal(gens: &[&[u64]]) -> MonomialIdeal {
    MonomialIdeal::new(gens.iter().map(|g| mono(g)).collect()).unwrap()
}

pub fn from_vecs(gens: Vec<Vec<u64>>) -> MonomialIdeal {
    MonomialIdeal::new(gens.into_iter().map(Monomial::new).collect()).unwrap()
}

/// Proper monomial ideals in `vars` variables with at most `max_gens`
/// generators and exponents at most `max_exp`.
pub fn arb_ideal(
    vars: std::ops::RangeInclusive<usize>,
    max_gens: usize,
    max_exp: u64,
) -> impl Strategy<Value = MonomialIdeal> {
    vars.prop_flat_map(move |r| {
        prop::collection::vec(prop::collection::vec(0..=max_exp, r), 1..=max_gens)
            .prop_filter("no constant generator", |gens| {
                gens.iter().all(|g| g.iter().any(|&e| e > 0))
            })
            .prop_map(from_vecs)
    })
}

/// An ideal together with a monomial `c` with `(c) ⊆ √I`.
pub fn arb_instance(
    vars: std::ops::RangeInclusive<usize>,
    max_gens: usize,
    max_exp: u64,
) -> impl Strategy<Value = (MonomialIdeal, Monomial)> {
    arb_ideal(vars, max_gens, max_exp).prop_flat_map(move |i| {
        let r = i.var_count();
        let t = i.generators().len();
        (Just(i), prop::collection::vec(0..=max_exp, r), 0..t).prop_map(|(i, mut c, pick)| {
            for v in i.generators()[pick].support().collect::<Vec<_>>() {
                if c[v] == 0 {
                    c[v] = 1;
                }
            }
            let c = Monomial::new(c);
            debug_assert!(radical_contains(&i, &MonomialIdeal::principal(c.clone())).unwrap());
            (i, c)
        })
    })
}

/// Exhaustive oracle: largest `sum y` over all `y >= 0` with `sum y_i b_i <= a`.
pub fn brute_max_power(a: &Monomial, i: &MonomialIdeal) -> u64 {
    fn go(gens: &[Monomial], idx: usize, budget: &mut Vec<u64>, acc: u64, best: &mut u64) {
        if idx == gens.len() {
            *best = (*best).max(acc);
            return;
        }
        let g = gens[idx].exponents();
        let mut k = 0u64;
        loop {
            go(gens, idx + 1, budget, acc + k, best);
            if g.iter().zip(budget.iter()).any(|(&e, &b)| e > b) {
                break;
            }
            for (b, &e) in budget.iter_mut().zip(g) {
                *b -= e;
            }
            k += 1;
        }
        for (b, &e) in budget.iter_mut().zip(g) {
            *b += e * k;
        }
    }
    let mut best = 0;
    go(i.generators(), 0, &mut a.exponents().to_vec(), 0, &mut best);
    best
}

/// Composition oracle: is there `y` with `sum y = n` and `sum y_i b_i <= a`?
pub fn brute_member(a: &Monomial, i: &MonomialIdeal, n: u64) -> bool {
    fn go(gens: &[Monomial], idx: usize, left: u64, used: &mut Vec<u64>, a: &[u64]) -> bool {
        if idx + 1 == gens.len() {
            let g = gens[idx].exponents();
            return used
                .iter()
                .zip(g)
                .zip(a)
                .all(|((u, e), lim)| u + e * left <= *lim);
        }
        for k in 0..=left {
            let g = gens[idx].exponents();
            for (u, e) in used.iter_mut().zip(g) {
                *u += e * k;
            }
            let ok = go(gens, idx + 1, left - k, used, a);
            for (u, e) in used.iter_mut().zip(g) {
                *u -= e * k;
            }
            if ok {
                return true;
            }
        }
        false
    }
    go(
        i.generators(),
        0,
        n,
        &mut vec![0; a.var_count()],
        a.exponents(),
    )
}
