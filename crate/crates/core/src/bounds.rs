//! Upper and lower bounds on sunflower-free families, evaluated exactly when
//! the formula is rational and with certified outward rounding otherwise.
//!
//! Constants the literature leaves unspecified (the Kostochka constant
//! `D(r, α)` and the constant `c` of the product-construction lower bounds)
//! are always caller-supplied and recorded in the returned parameters.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numeric::{
    binomial, factorial, from_biguint, int, round_down, sqrt5, Interval, Rational,
    DEFAULT_PRECISION,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    /// `k!(r-1)^k (1 - Σ t/((t+1)!(r-1)^t))`.
    ErdosRado,
    /// `D k! ((log log log k)^2 / (α log log k))^k`.
    Kostochka,
    /// `C(n, s)`.
    RayChaudhuriWilson,
    /// `k^2 - k + 1` for non-sunflower `{λ}`-intersecting families.
    Deza,
    /// `(k^2-k+2) 8^(s-1) 2^((1+√5/5) k (s-1))`.
    LIntersecting,
    /// `D C(k,ℓ) (k-ℓ)! ((log log log (k-ℓ))^2 / (α log log (k-ℓ)))^(k-ℓ)`.
    EllIntersecting,
    /// `D 4^k` at `ℓ = ⌈k - k / log k⌉`.
    EllIntersecting4k,
    /// `f(k,3,s) <= max_ℓ C(2k-ℓ, ℓ+1) f(k-1,3,s-1)`.
    RecursionAsStated,
    /// Same recursion with the reduced uniformity `k-ℓ-1`.
    RecursionAsProved,
    /// `2 · 10^(k/2 - c log k)`, lower bound.
    AhsLower,
    /// `f(k,3,s) > 2 · 10^(s/2 - c log s)`, lower bound.
    FLower,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::ErdosRado => "erdos_rado",
            TheoremId::Kostochka => "kostochka",
            TheoremId::RayChaudhuriWilson => "ray_chaudhuri_wilson",
            TheoremId::Deza => "deza",
            TheoremId::LIntersecting => "l_intersecting",
            TheoremId::EllIntersecting => "ell_intersecting",
            TheoremId::EllIntersecting4k => "ell_intersecting_4k",
            TheoremId::RecursionAsStated => "recursion_as_stated",
            TheoremId::RecursionAsProved => "recursion_as_proved",
            TheoremId::AhsLower => "ahs_lower",
            TheoremId::FLower => "f_lower",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RoundingMode {
    Exact,
    /// Value is `>=` the true real value.
    RoundedUp,
    /// Value is `<=` the true real value.
    RoundedDown,
}

impl RoundingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            RoundingMode::Exact => "EXACT",
            RoundingMode::RoundedUp => "ROUNDED_UP",
            RoundingMode::RoundedDown => "ROUNDED_DOWN",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LogBase {
    #[default]
    Natural,
    Two,
}

impl LogBase {
    pub fn as_str(self) -> &'static str {
        match self {
            LogBase::Natural => "e",
            LogBase::Two => "2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundConfig {
    pub log_base: LogBase,
    /// Working precision in bits for irrational expressions.
    pub precision: u32,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            log_base: LogBase::Natural,
            precision: DEFAULT_PRECISION,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Param {
    Int(u64),
    Rational(Rational),
}

/// A bound with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub theorem: TheoremId,
    pub params: Vec<(&'static str, Param)>,
    pub value: Rational,
    pub rounding: RoundingMode,
    /// Set when the formula involves a logarithm.
    pub log_base: Option<LogBase>,
}

impl BoundValue {
    fn exact(theorem: TheoremId, params: Vec<(&'static str, Param)>, value: Rational) -> Self {
        BoundValue {
            theorem,
            params,
            value,
            rounding: RoundingMode::Exact,
            log_base: None,
        }
    }

    /// Exact integer value, when the value is integral.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.value.is_integer().then(|| self.value.to_integer())
    }

    /// Largest integer certified not to exceed the true value when this is
    /// an upper bound: `floor(value)`.
    pub fn floor(&self) -> BigInt {
        self.value.floor().to_integer()
    }

    pub fn approx(&self) -> f64 {
        crate::numeric::to_f64(&self.value)
    }

    /// Decimal rendering rounded in the certified direction.
    pub fn display(&self, digits: u32) -> String {
        match self.rounding {
            RoundingMode::Exact if self.value.is_integer() => {
                format!("{}", self.value.to_integer())
            }
            RoundingMode::Exact => format!("{}", self.value),
            RoundingMode::RoundedUp => crate::numeric::to_sci_string(&self.value, digits, true),
            RoundingMode::RoundedDown => {
                crate::numeric::to_sci_string(&self.value, digits, false)
            }
        }
    }
}

fn p_int(v: usize) -> Param {
    Param::Int(v as u64)
}

fn big(v: BigUint) -> Rational {
    from_biguint(&v)
}

/// Exact `k!(r-1)^k (1 - Σ_{t=1}^{k-1} t / ((t+1)! (r-1)^t))`.
pub fn er_bound(k: usize, r: usize) -> Result<BoundValue> {
    if k < 1 {
        return Err(Error::domain("er_bound", "k must be at least 1"));
    }
    if r < 2 {
        return Err(Error::domain("er_bound", "r must be at least 2"));
    }
    let base = BigUint::from(r - 1);
    let mut sum = Rational::zero();
    for t in 1..k {
        let den = factorial(t as u64 + 1) * num_traits::pow(base.clone(), t);
        sum += Rational::new(BigInt::from(t), BigInt::from(den));
    }
    let lead = big(factorial(k as u64) * num_traits::pow(base, k));
    let value = lead * (Rational::one() - sum);
    Ok(BoundValue::exact(
        TheoremId::ErdosRado,
        vec![("k", p_int(k)), ("r", p_int(r))],
        value,
    ))
}

fn log_interval(x: &Interval, base: LogBase, prec: u32) -> Option<Interval> {
    match base {
        LogBase::Natural => x.ln(prec),
        LogBase::Two => x.log2(prec),
    }
}

/// `(log log log m)^2 / (α log log m)`, or `None` when `log log log m` is not
/// certified positive.
fn kostochka_ratio(m: usize, alpha: &Rational, cfg: &BoundConfig) -> Option<Interval> {
    let p = cfg.precision;
    let l1 = log_interval(&Interval::point(int(m as i64)), cfg.log_base, p)?;
    let l2 = log_interval(&l1, cfg.log_base, p)?;
    let l3 = log_interval(&l2, cfg.log_base, p)?;
    if !l3.lo().is_positive() {
        return None;
    }
    let num = l3.mul(&l3, p);
    let den = l2.scale(alpha, p);
    num.div(&den, p)
}

/// Smallest `m` with `log log log m > 0`: 16 for natural logs, 5 for base 2.
pub fn log_domain_threshold(base: LogBase) -> usize {
    match base {
        LogBase::Natural => 16,
        LogBase::Two => 5,
    }
}

fn check_alpha_d(op: &'static str, alpha: &Rational, d: &Rational) -> Result<()> {
    if *alpha <= Rational::one() {
        return Err(Error::domain(op, "alpha must exceed 1"));
    }
    if !d.is_positive() {
        return Err(Error::domain(op, "D must be positive"));
    }
    Ok(())
}

/// Upper-rounded `D k! ((log log log k)^2 / (α log log k))^k`.
pub fn kostochka_bound(
    k: usize,
    r: usize,
    alpha: &Rational,
    d: &Rational,
    cfg: &BoundConfig,
) -> Result<BoundValue> {
    check_alpha_d("kostochka_bound", alpha, d)?;
    if r < 3 {
        return Err(Error::domain("kostochka_bound", "r must exceed 2"));
    }
    let p = cfg.precision;
    let ratio = kostochka_ratio(k, alpha, cfg).ok_or_else(|| {
        Error::domain(
            "kostochka_bound",
            format!(
                "log log log {k} is not positive (base {}, need k >= {})",
                cfg.log_base.as_str(),
                log_domain_threshold(cfg.log_base)
            ),
        )
    })?;
    let v = ratio
        .powi(k as u32, p)
        .scale(&big(factorial(k as u64)), p)
        .scale(d, p);
    Ok(BoundValue {
        theorem: TheoremId::Kostochka,
        params: vec![
            ("k", p_int(k)),
            ("r", p_int(r)),
            ("alpha", Param::Rational(alpha.clone())),
            ("D", Param::Rational(d.clone())),
        ],
        value: v.hi().clone(),
        rounding: RoundingMode::RoundedUp,
        log_base: Some(cfg.log_base),
    })
}

/// Exact `C(n, s)`.
pub fn rw_bound(n: usize, s: usize) -> Result<BoundValue> {
    if s == 0 || s > n {
        return Err(Error::domain("rw_bound", "need 0 < s <= n"));
    }
    Ok(BoundValue::exact(
        TheoremId::RayChaudhuriWilson,
        vec![("n", p_int(n)), ("s", p_int(s))],
        big(binomial(n as u64, s as u64)),
    ))
}

/// Exact `k^2 - k + 1`.
pub fn deza_bound(k: usize) -> Result<BoundValue> {
    if k < 1 {
        return Err(Error::domain("deza_bound", "k must be at least 1"));
    }
    let k = k as u64;
    Ok(BoundValue::exact(
        TheoremId::Deza,
        vec![("k", Param::Int(k))],
        big(BigUint::from(k * k - k + 1)),
    ))
}

/// Enclosure of `(1 + √5/5) · m`.
fn split_exponent(m: u64, prec: u32) -> Interval {
    let one_plus = sqrt5(prec)
        .scale(&Rational::new(BigInt::one(), BigInt::from(5)), prec)
        .add(&Interval::from_int(1), prec);
    one_plus.scale(&from_biguint(&BigUint::from(m)), prec)
}

/// Enclosure of `(k^2-k+2) 8^(s-1) 2^((1+√5/5) k (s-1))`; `k = 0` is
/// allowed and gives `2 · …`, which the prover uses for empty-set families.
pub fn main_bound_interval(k: usize, s: usize, prec: u32) -> Interval {
    let k64 = k as u64;
    let lead = BigUint::from(k64 * k64 - k64 + 2) * num_traits::pow(BigUint::from(8u32), s - 1);
    let lead = Interval::point(big(lead));
    if s == 1 {
        return lead;
    }
    let e = split_exponent(k64 * (s as u64 - 1), prec);
    lead.mul(&e.exp2(prec), prec)
}

/// `(k^2-k+2) 8^(s-1) 2^((1+√5/5) k (s-1))`, rounded up; exact for `s = 1`.
pub fn main_bound(k: usize, s: usize, cfg: &BoundConfig) -> Result<BoundValue> {
    if k < 1 || s < 1 {
        return Err(Error::domain("main_bound", "need k >= 1 and s >= 1"));
    }
    let v = main_bound_interval(k, s, cfg.precision);
    Ok(BoundValue {
        theorem: TheoremId::LIntersecting,
        params: vec![("k", p_int(k)), ("s", p_int(s))],
        value: v.hi().clone(),
        rounding: if s == 1 {
            RoundingMode::Exact
        } else {
            RoundingMode::RoundedUp
        },
        log_base: None,
    })
}

/// Upper-rounded `D C(k,ℓ) (k-ℓ)! ((log log log (k-ℓ))^2 / (α log log (k-ℓ)))^(k-ℓ)`.
pub fn main2_bound(
    k: usize,
    ell: usize,
    alpha: &Rational,
    d: &Rational,
    cfg: &BoundConfig,
) -> Result<BoundValue> {
    check_alpha_d("main2_bound", alpha, d)?;
    if ell >= k {
        return Err(Error::domain("main2_bound", "need 0 <= ell < k"));
    }
    let m = k - ell;
    let p = cfg.precision;
    let ratio = kostochka_ratio(m, alpha, cfg).ok_or_else(|| {
        Error::domain(
            "main2_bound",
            format!(
                "k - ell = {m} is below the logarithm domain threshold {} (base {})",
                log_domain_threshold(cfg.log_base),
                cfg.log_base.as_str()
            ),
        )
    })?;
    let lead = binomial(k as u64, ell as u64) * factorial(m as u64);
    let v = ratio.powi(m as u32, p).scale(&big(lead), p).scale(d, p);
    Ok(BoundValue {
        theorem: TheoremId::EllIntersecting,
        params: vec![
            ("k", p_int(k)),
            ("ell", p_int(ell)),
            ("alpha", Param::Rational(alpha.clone())),
            ("D", Param::Rational(d.clone())),
        ],
        value: v.hi().clone(),
        rounding: RoundingMode::RoundedUp,
        log_base: Some(cfg.log_base),
    })
}

/// `D · 4^k` together with the `ℓ` it is stated for and the audit of
/// `C(k,ℓ) (k-ℓ)! <= 4^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Main3 {
    pub bound: BoundValue,
    pub ell: usize,
    /// `C(k,ℓ) (k-ℓ)!`.
    pub lhs: BigUint,
    pub audit_holds: bool,
}

/// `⌈k - k / log k⌉`, exact. Refines precision until the ceiling is decided.
pub fn ell_for_4k(k: usize, base: LogBase) -> Result<usize> {
    if k < 2 {
        return Err(Error::domain("ell_for_4k", "k must be at least 2"));
    }
    // Exact when the logarithm is an integer (k a power of two in base 2).
    if base == LogBase::Two && k.is_power_of_two() {
        let lg = k.trailing_zeros() as i64;
        let x = int(k as i64) - Rational::new(BigInt::from(k), BigInt::from(lg));
        return clamp_ell(x.ceil().to_integer());
    }
    let mut prec = 64;
    loop {
        let kk = Interval::from_int(k as i64);
        let lg = log_interval(&kk, base, prec).expect("k >= 2 has positive log");
        let x = kk.sub(&kk.div(&lg, prec).expect("log k > 0"), prec);
        if let Some(c) = x.ceil_exact() {
            return clamp_ell(c);
        }
        prec *= 2;
        if prec > 1 << 16 {
            return Err(Error::domain("ell_for_4k", "ceiling undecided at 65536 bits"));
        }
    }
}

fn clamp_ell(c: BigInt) -> Result<usize> {
    Ok(c.max(BigInt::zero()).to_usize().expect("ell fits in usize"))
}

pub fn main3_bound(k: usize, d: &Rational, cfg: &BoundConfig) -> Result<Main3> {
    if !d.is_positive() {
        return Err(Error::domain("main3_bound", "D must be positive"));
    }
    let ell = ell_for_4k(k, cfg.log_base)?;
    let four_k = num_traits::pow(BigUint::from(4u32), k);
    let lhs = binomial(k as u64, ell as u64) * factorial((k - ell) as u64);
    let audit_holds = lhs <= four_k;
    Ok(Main3 {
        bound: BoundValue {
            theorem: TheoremId::EllIntersecting4k,
            params: vec![
                ("k", p_int(k)),
                ("ell", p_int(ell)),
                ("D", Param::Rational(d.clone())),
            ],
            value: d * big(four_k),
            rounding: RoundingMode::Exact,
            log_base: Some(cfg.log_base),
        },
        ell,
        lhs,
        audit_holds,
    })
}

/// Both sides of the equivalence
/// `C(n,r) <= C(n-1,r+1)  ⇔  r^2 + (1-3n) r + n^2 - 2n >= 0`.
///
/// Requires `1 <= n` (for `n = 0` the right binomial has a negative top and
/// is not a subset count) and `r <= n`.
pub fn binomial_step(n: usize, r: usize) -> Result<(bool, bool)> {
    if n == 0 || r > n {
        return Err(Error::domain("binomial_step", "need 0 <= r <= n and n >= 1"));
    }
    let lhs = binomial(n as u64, r as u64) <= binomial(n as u64 - 1, r as u64 + 1);
    let (n, r) = (n as i128, r as i128);
    let quad = r * r + (1 - 3 * n) * r + n * n - 2 * n >= 0;
    Ok((lhs, quad))
}

/// Lower-rounded `(3n - 1 - √5 (n+1)) / 2`.
pub fn binomial_step_threshold(n: usize, cfg: &BoundConfig) -> Rational {
    let p = cfg.precision;
    let n1 = Interval::from_int(n as i64 + 1);
    let v = Interval::from_int(3 * n as i64 - 1)
        .sub(&sqrt5(p).mul(&n1, p), p)
        .scale(&Rational::new(BigInt::one(), BigInt::from(2)), p);
    round_down(v.lo(), p)
}

/// Integers `0 <= r <= threshold(n)` for which `C(n,r) <= C(n-1,r+1)` fails.
pub fn binomial_step_threshold_failures(n: usize, cfg: &BoundConfig) -> Vec<usize> {
    let t = binomial_step_threshold(n, cfg);
    if t.is_negative() {
        return Vec::new();
    }
    let top = t.floor().to_integer().to_usize().unwrap_or(usize::MAX).min(n);
    (0..=top)
        .filter(|&r| {
            n == 0 || binomial(n as u64, r as u64) > binomial(n as u64 - 1, r as u64 + 1)
        })
        .collect()
}

/// Per-`ℓ` audit of `C(2k-ℓ, ℓ+1) <= 8 · 2^((1+√5/5) k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitBinomialAudit {
    pub k: usize,
    /// Lower-rounded right-hand side.
    pub rhs_lower: Rational,
    /// `(ℓ, C(2k-ℓ, ℓ+1), holds)`.
    pub rows: Vec<(usize, BigUint, bool)>,
    pub holds: bool,
}

/// Checks the inequality for every `0 <= ℓ <= k-1` against the lower end of
/// the right side's enclosure, so `holds = true` is certified.
pub fn split_binomial_check(k: usize, cfg: &BoundConfig) -> Result<SplitBinomialAudit> {
    if k < 1 {
        return Err(Error::domain("split_binomial_check", "k must be at least 1"));
    }
    let rhs = split_binomial_rhs(k, cfg.precision);
    let rows: Vec<_> = (0..k)
        .map(|ell| {
            let b = split_binomial(k, ell);
            let ok = from_biguint(&b) <= *rhs.lo();
            (ell, b, ok)
        })
        .collect();
    let holds = rows.iter().all(|r| r.2);
    Ok(SplitBinomialAudit {
        k,
        rhs_lower: rhs.lo().clone(),
        rows,
        holds,
    })
}

/// `C(2k-ℓ, ℓ+1)`.
pub fn split_binomial(k: usize, ell: usize) -> BigUint {
    binomial((2 * k - ell) as u64, ell as u64 + 1)
}

/// Enclosure of `8 · 2^((1+√5/5) k)`.
pub fn split_binomial_rhs(k: usize, prec: u32) -> Interval {
    split_exponent(k as u64, prec)
        .exp2(prec)
        .scale(&int(8), prec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecursionVariant {
    /// Recurse on `f(k-1, 3, s-1)`.
    AsStated,
    /// Recurse on `f(k-ℓ-1, 3, s-1)`, the uniformity of the reduced families.
    AsProved,
}

/// Default `f(k,3,1)` base: `k^2 - k + 2`, i.e. the Deza threshold plus one
/// for the case where the family is itself a (two-petal) sunflower.
pub fn default_recursion_base(k: usize) -> BigUint {
    let k = k as u64;
    BigUint::from(k * k - k + 2)
}

/// Evaluates `max_{0<=ℓ<=k-1} C(2k-ℓ, ℓ+1) · f(k', 3, s-1)` down to `s = 1`,
/// where `f(·,3,1)` comes from `base`.
pub fn recursion_f_bound(
    k: usize,
    s: usize,
    variant: RecursionVariant,
    base: &dyn Fn(usize) -> BigUint,
) -> Result<BoundValue> {
    if s < 1 {
        return Err(Error::domain("recursion_f_bound", "s must be at least 1"));
    }
    let value = recursion_value(k, s, variant, base);
    Ok(BoundValue::exact(
        match variant {
            RecursionVariant::AsStated => TheoremId::RecursionAsStated,
            RecursionVariant::AsProved => TheoremId::RecursionAsProved,
        },
        vec![("k", p_int(k)), ("s", p_int(s))],
        big(value),
    ))
}

fn recursion_value(
    k: usize,
    s: usize,
    variant: RecursionVariant,
    base: &dyn Fn(usize) -> BigUint,
) -> BigUint {
    if s == 1 || k == 0 {
        return base(k);
    }
    (0..k)
        .map(|ell| {
            let sub_k = match variant {
                RecursionVariant::AsStated => k - 1,
                RecursionVariant::AsProved => k - ell - 1,
            };
            split_binomial(k, ell) * recursion_value(sub_k, s - 1, variant, base)
        })
        .max()
        .expect("k >= 1")
}

fn ten_power_lower(
    theorem: TheoremId,
    m: usize,
    name: &'static str,
    c: &Rational,
    cfg: &BoundConfig,
) -> Result<BoundValue> {
    if m < 1 {
        return Err(Error::domain(theorem.as_str(), "parameter must be at least 1"));
    }
    if c.is_negative() {
        return Err(Error::domain(theorem.as_str(), "c must be nonnegative"));
    }
    let p = cfg.precision;
    let half = Interval::point(Rational::new(BigInt::from(m), BigInt::from(2)));
    let lg = log_interval(&Interval::from_int(m as i64), cfg.log_base, p)
        .expect("m >= 1 has a log");
    let expo = half.sub(&lg.scale(c, p), p);
    let v = expo.exp10(p).scale(&int(2), p);
    Ok(BoundValue {
        theorem,
        params: vec![(name, p_int(m)), ("c", Param::Rational(c.clone()))],
        value: v.lo().clone(),
        rounding: RoundingMode::RoundedDown,
        log_base: Some(cfg.log_base),
    })
}

/// Lower-rounded `2 · 10^(k/2 - c log k)` for the size of a 3-sunflower-free
/// `k`-uniform family.
pub fn ahs_lower_bound(k: usize, c: &Rational, cfg: &BoundConfig) -> Result<BoundValue> {
    ten_power_lower(TheoremId::AhsLower, k, "k", c, cfg)
}

/// Lower-rounded `2 · 10^(s/2 - c log s)` for `f(k,3,s)`.
pub fn f_lower_bound(s: usize, c: &Rational, cfg: &BoundConfig) -> Result<BoundValue> {
    ten_power_lower(TheoremId::FLower, s, "s", c, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;

    fn cfg() -> BoundConfig {
        BoundConfig::default()
    }

    #[test]
    fn rw_and_deza() {
        assert_eq!(rw_bound(7, 1).unwrap().as_integer(), Some(7.into()));
        assert_eq!(rw_bound(10, 3).unwrap().as_integer(), Some(120.into()));
        assert_eq!(rw_bound(5, 5).unwrap().as_integer(), Some(1.into()));
        assert!(rw_bound(3, 0).is_err() && rw_bound(3, 4).is_err());
        assert_eq!(deza_bound(3).unwrap().as_integer(), Some(7.into()));
        assert_eq!(deza_bound(1).unwrap().as_integer(), Some(1.into()));
        assert_eq!(deza_bound(10).unwrap().as_integer(), Some(91.into()));
    }

    #[test]
    fn main_bound_small_cases() {
        let b = main_bound(3, 1, &cfg()).unwrap();
        assert_eq!(b.as_integer(), Some(8.into()));
        assert_eq!(b.rounding, RoundingMode::Exact);
        assert_eq!(main_bound(1, 1, &cfg()).unwrap().as_integer(), Some(2.into()));
        for k in 1..20 {
            let m = main_bound(k, 1, &cfg()).unwrap().value;
            let d = deza_bound(k).unwrap().value;
            assert_eq!(m, d + Rational::one());
        }
        assert!(main_bound(0, 1, &cfg()).is_err());
    }

    #[test]
    fn kostochka_domain() {
        let a = ratio(3, 2);
        let one = int(1);
        let v = kostochka_bound(16, 3, &a, &one, &cfg()).unwrap();
        assert!(v.value.is_positive());
        assert_eq!(v.rounding, RoundingMode::RoundedUp);
        assert!(kostochka_bound(15, 3, &a, &one, &cfg()).is_err());
        assert!(kostochka_bound(10, 3, &int(2), &one, &cfg()).is_err());
        let two = BoundConfig {
            log_base: LogBase::Two,
            ..cfg()
        };
        assert!(kostochka_bound(5, 3, &a, &one, &two).is_ok());
        assert!(kostochka_bound(4, 3, &a, &one, &two).is_err());
        assert!(kostochka_bound(100, 3, &int(1), &one, &cfg()).is_err());
        assert!(kostochka_bound(100, 2, &int(2), &one, &cfg()).is_err());
    }

    #[test]
    fn main2_domain_and_binomial_factor() {
        let two = int(2);
        let one = int(1);
        assert!(main2_bound(40, 30, &two, &one, &cfg()).is_err());
        let a = main2_bound(40, 20, &two, &one, &cfg()).unwrap();
        assert!(a.value.is_positive());
        assert!(main2_bound(40, 24, &two, &one, &cfg()).is_ok());
    }

    #[test]
    fn ell_for_4k_both_bases() {
        assert_eq!(ell_for_4k(2, LogBase::Natural).unwrap(), 0);
        assert_eq!(ell_for_4k(2, LogBase::Two).unwrap(), 0);
        assert_eq!(ell_for_4k(16, LogBase::Natural).unwrap(), 11);
        assert_eq!(ell_for_4k(16, LogBase::Two).unwrap(), 12);
        assert!(ell_for_4k(1, LogBase::Natural).is_err());
    }

    #[test]
    fn binomial_step_examples() {
        assert_eq!(binomial_step(5, 1).unwrap(), (true, true));
        assert_eq!(binomial_step(4, 2).unwrap(), (false, false));
        assert!(binomial_step(0, 0).is_err());
        assert!(binomial_step(3, 4).is_err());
        for n in 1..50 {
            let (a, b) = binomial_step(n, n).unwrap();
            assert!(!a && !b);
        }
    }

    #[test]
    fn threshold_examples() {
        let t10 = binomial_step_threshold(10, &cfg());
        assert!(t10 > ratio(22, 10) && t10 < ratio(221, 100));
        assert!(binomial_step_threshold_failures(10, &cfg()).is_empty());
        assert!(binomial_step_threshold(2, &cfg()).is_negative());
    }

    #[test]
    fn recursion_base_case() {
        let b = recursion_f_bound(5, 1, RecursionVariant::AsStated, &default_recursion_base)
            .unwrap();
        assert_eq!(b.as_integer(), Some(22.into()));
    }

    #[test]
    fn lower_bounds() {
        let c0 = int(0);
        let v = f_lower_bound(2, &c0, &cfg()).unwrap();
        assert!(v.value <= int(20) && v.value > ratio(19999, 1000));
        assert_eq!(v.rounding, RoundingMode::RoundedDown);
        let small = f_lower_bound(5, &int(1), &cfg()).unwrap();
        let big = f_lower_bound(5, &ratio(1, 2), &cfg()).unwrap();
        assert!(small.value < big.value);
        assert!(f_lower_bound(0, &c0, &cfg()).is_err());
        assert!(ahs_lower_bound(4, &c0, &cfg()).unwrap().value <= int(200));
    }

    #[test]
    fn display_respects_direction() {
        let b = main_bound(2, 2, &cfg()).unwrap();
        assert_eq!(b.display(6), "2.37936e2");
        let l = f_lower_bound(1, &int(0), &cfg()).unwrap();
        assert_eq!(l.display(6), "6.32455e0");
    }
}
