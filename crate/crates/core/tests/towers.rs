use num_traits::ToPrimitive;
use proptest::prelude::*;
use selfsmall::exactalg::{Elem, Ideal, Ring};
use selfsmall::fpmod::hom_module;
use selfsmall::towers::{mittag_leffler_check, AdicTower, MittagLeffler, TruncatedLimit};

fn z(n: i64) -> Elem {
    Elem::from(n)
}

fn int(e: &Elem) -> i64 {
    e.as_int().unwrap().to_i64().unwrap()
}

fn tower(p: i64, depth: usize) -> AdicTower {
    let ring = Ring::Integers;
    AdicTower::build(ring, Ideal::new(&ring, z(p)).unwrap(), depth).unwrap()
}

/// Coherent tuples under reduction, enumerated directly: `x_n ∈ ℤ/p^n`
/// with `x_{n+1} ≡ x_n (mod p^n)`.
fn brute_coherent(p: i64, depth: usize) -> Vec<Vec<i64>> {
    let top = p.pow(depth as u32);
    let mut out: Vec<Vec<i64>> =
        (0..top).map(|x| (1..=depth as u32).map(|n| x.rem_euclid(p.pow(n))).collect()).collect();
    out.sort();
    out
}

#[test]
fn delta_is_reduction() {
    for p in [2, 3, 5] {
        let t = tower(p, 5);
        for n in 1..5 {
            let delta = t.build_delta(n).unwrap();
            for x in 0..p.pow(n as u32 + 1) {
                let y = delta.apply(&[z(x)]).unwrap();
                assert_eq!(int(&y[0]).rem_euclid(p.pow(n as u32)), x % p.pow(n as u32), "p={p} n={n} x={x}");
            }
        }
    }
}

#[test]
fn limit_elements_are_the_coherent_tuples() {
    for (p, depth) in [(2, 5), (3, 3), (5, 2)] {
        let t = tower(p, depth);
        let j = TruncatedLimit::new(&t, depth).unwrap();
        let mut got: Vec<Vec<i64>> = j
            .elements(1 << 12)
            .unwrap()
            .iter()
            .map(|x| {
                x.components().iter().enumerate().map(|(n, c)| int(c).rem_euclid(p.pow(n as u32 + 1))).collect()
            })
            .collect();
        got.sort();
        assert_eq!(got, brute_coherent(p, depth), "p={p} N={depth}");
    }
}

#[test]
fn endomorphisms_of_the_limit() {
    for p in [2, 3] {
        for depth in 1..=4 {
            let t = tower(p, depth);
            let j = TruncatedLimit::new(&t, depth).unwrap();
            let end = hom_module(j.carrier(), j.carrier()).unwrap();
            let expected = num_bigint::BigUint::from(p as u64).pow(depth as u32);
            assert_eq!(end.module.order().unwrap(), expected);
            assert_eq!(j.carrier().order().unwrap(), expected);
        }
    }
}

#[test]
fn mittag_leffler_on_the_tower_system() {
    let t = tower(2, 5);
    let system = t.inverse_system().unwrap();
    assert_eq!(mittag_leffler_check(&system, 8).unwrap(), MittagLeffler::HoldsBySurjectivity);
}

#[test]
fn polynomial_tower_limit() {
    let ring = Ring::polynomials(3).unwrap();
    let g = ring.poly(&[1, 1]);
    let t = AdicTower::build(ring, Ideal::new(&ring, g).unwrap(), 3).unwrap();
    let j = TruncatedLimit::new(&t, 3).unwrap();
    assert_eq!(j.carrier().order().unwrap(), 27u32.into());
    let u = j.shift_endomorphism().unwrap();
    assert!(!u.is_injective().unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_operations_are_componentwise(
        p in prop::sample::select(vec![2i64, 3, 5]),
        depth in 1usize..=4,
        a in 0i64..10_000,
        b in 0i64..10_000,
    ) {
        let t = tower(p, depth);
        let j = TruncatedLimit::new(&t, depth).unwrap();
        let (x, y) = (j.phi(&z(a)), j.phi(&z(b)));
        let prod = j.multiply(&x, &y).unwrap();
        let sum = j.add(&x, &y).unwrap();
        for n in 0..depth {
            let m = p.pow(n as u32 + 1);
            prop_assert_eq!(int(&x.components()[n]).rem_euclid(m), a % m);
            prop_assert_eq!(int(&prod.components()[n]).rem_euclid(m), (a * b) % m);
            prop_assert_eq!(int(&sum.components()[n]).rem_euclid(m), (a + b) % m);
        }
        if depth >= 2 {
            // u(x) = (0, p·x_1, ..., p·x_{N-1}).
            let s = j.shift(&x).unwrap();
            prop_assert_eq!(int(&s.components()[0]).rem_euclid(p), 0);
            for n in 1..depth {
                let m = p.pow(n as u32 + 1);
                prop_assert_eq!(int(&s.components()[n]).rem_euclid(m), (p * (a % p.pow(n as u32))) % m);
            }
        }
    }
}
