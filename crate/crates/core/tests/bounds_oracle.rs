use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use sunflower_core::bounds::{
    binomial_step, binomial_step_threshold_failures, deza_bound, ell_for_4k, er_bound, main_bound,
    main_bound_interval, rw_bound, split_binomial, split_binomial_check, BoundConfig, LogBase,
    RoundingMode,
};

fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
    let mut t: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for n in 1..=rows {
        let prev = &t[n - 1];
        let mut row = vec![BigUint::one(); n + 1];
        for r in 1..n {
            row[r] = &prev[r - 1] + &prev[r];
        }
        t.push(row);
    }
    t
}

fn choose(t: &[Vec<BigUint>], n: i64, r: i64) -> BigUint {
    if n < 0 || r < 0 || r > n {
        BigUint::zero()
    } else {
        t[n as usize][r as usize].clone()
    }
}

/// `k!(r-1)^k - Σ_{t<k} t · k! (r-1)^(k-t) / (t+1)!`, expanded term by term.
fn er_oracle(k: u32, r: u32) -> BigRational {
    let b = BigInt::from(r - 1);
    let fact = |m: u32| (1..=m).fold(BigInt::one(), |a, i| a * i);
    let mut exact = BigRational::from(fact(k) * b.pow(k));
    for t in 1..k {
        exact -= BigRational::new(fact(k) * BigInt::from(t) * b.pow(k - t), fact(t + 1));
    }
    exact
}

#[test]
fn er_bound_small_values() {
    let expect = [2, 6, 32, 250, 2492];
    for (i, v) in expect.iter().enumerate() {
        let b = er_bound(i + 1, 3).unwrap();
        assert_eq!(b.rounding, RoundingMode::Exact);
        assert_eq!(b.as_integer(), Some(BigInt::from(*v)));
    }
    for k in 1..=12 {
        assert_eq!(er_bound(k, 2).unwrap().as_integer(), Some(BigInt::one()));
    }
    assert_eq!(er_bound(4, 4).unwrap().as_integer(), Some(BigInt::from(1539)));
    assert!(er_bound(0, 3).is_err());
    assert!(er_bound(3, 1).is_err());
}

#[test]
fn er_bound_matches_oracle_and_grows() {
    for r in 2..=7u32 {
        let mut prev = BigRational::zero();
        for k in 1..=16u32 {
            let b = er_bound(k as usize, r as usize).unwrap();
            let want = er_oracle(k, r);
            assert_eq!(b.value, want, "k={k} r={r}");
            assert!(b.value >= prev);
            prev = b.value.clone();
        }
    }
    for k in 1..=10 {
        for r in 2..=6 {
            assert!(er_bound(k, r + 1).unwrap().value > er_bound(k, r).unwrap().value);
        }
    }
}

#[test]
fn binomial_step_agrees_with_pascal_and_quadratic() {
    let t = pascal(201);
    for n in 1..=200i64 {
        for r in 0..=n {
            let (lhs, quad) = binomial_step(n as usize, r as usize).unwrap();
            assert_eq!(lhs, choose(&t, n, r) <= choose(&t, n - 1, r + 1), "n={n} r={r}");
            let q = (r * r + (1 - 3 * n) * r + n * n - 2 * n) as i128;
            assert_eq!(quad, q >= 0);
            assert_eq!(lhs, quad, "equivalence at n={n} r={r}");
        }
    }
    assert!(binomial_step(0, 0).is_err());
    assert!(binomial_step(3, 4).is_err());
}

#[test]
fn no_failures_below_threshold() {
    let cfg = BoundConfig::default();
    for n in 0..=300 {
        assert!(binomial_step_threshold_failures(n, &cfg).is_empty(), "n={n}");
    }
}

#[test]
fn split_binomial_matches_pascal() {
    let t = pascal(130);
    for k in 1..=64usize {
        for ell in 0..k {
            let want = choose(&t, (2 * k - ell) as i64, ell as i64 + 1);
            assert_eq!(split_binomial(k, ell), want);
        }
    }
    let cfg = BoundConfig::default();
    for k in 1..=32 {
        let audit = split_binomial_check(k, &cfg).unwrap();
        assert!(audit.holds, "k={k}");
        assert_eq!(audit.rows.len(), k);
    }
}

#[test]
fn simple_closed_forms() {
    let t = pascal(40);
    for n in 1..=40usize {
        for s in 1..=n {
            let v = rw_bound(n, s).unwrap();
            assert_eq!(v.as_integer().unwrap().to_biguint().unwrap(), choose(&t, n as i64, s as i64));
        }
    }
    for k in 1..=50usize {
        assert_eq!(deza_bound(k).unwrap().as_integer(), Some(BigInt::from(k * k - k + 1)));
    }
}

fn main_f64(k: usize, s: usize) -> f64 {
    let kf = k as f64;
    (kf * kf - kf + 2.0) * 8f64.powi(s as i32 - 1) * 2f64.powf((1.0 + 5f64.sqrt() / 5.0) * kf * (s as f64 - 1.0))
}

proptest! {
    #[test]
    fn main_bound_encloses_float_value(k in 1usize..=20, s in 1usize..=5) {
        let cfg = BoundConfig::default();
        let b = main_bound(k, s, &cfg).unwrap();
        let want = main_f64(k, s);
        let got = b.approx();
        prop_assert!(((got - want) / want).abs() < 1e-10, "k={} s={} got={} want={}", k, s, got, want);
        let iv = main_bound_interval(k, s, cfg.precision);
        prop_assert!(iv.lo() <= iv.hi());
        prop_assert_eq!(iv.hi(), &b.value);
        let width = (iv.hi() - iv.lo()).to_f64().unwrap();
        prop_assert!(width <= want * 1e-20);
    }

    #[test]
    fn main_bound_is_monotone(k in 1usize..=15, s in 1usize..=4) {
        let cfg = BoundConfig::default();
        let a = main_bound(k, s, &cfg).unwrap().value;
        prop_assert!(main_bound(k + 1, s, &cfg).unwrap().value > a.clone());
        prop_assert!(main_bound(k, s + 1, &cfg).unwrap().value > a);
    }
}

#[test]
fn ell_for_4k_matches_float_ceiling() {
    for k in 2..=300usize {
        for base in [LogBase::Natural, LogBase::Two] {
            let lg = match base {
                LogBase::Natural => (k as f64).ln(),
                LogBase::Two => (k as f64).log2(),
            };
            let x = k as f64 - k as f64 / lg;
            // Skip values too close to an integer for a float to decide.
            if (x - x.round()).abs() < 1e-9 && !(base == LogBase::Two && k.is_power_of_two()) {
                continue;
            }
            let want = x.ceil().max(0.0) as usize;
            assert_eq!(ell_for_4k(k, base).unwrap(), want, "k={k} {base:?}");
        }
    }
}
