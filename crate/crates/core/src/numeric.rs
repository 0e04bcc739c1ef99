//! Exact integers/rationals and outward-rounded interval arithmetic.
//!
//! Interval endpoints are rationals that get rounded to dyadic numbers with
//! `prec` significant bits after every operation: lower endpoints towards
//! `-inf`, upper endpoints towards `+inf`. Transcendental kernels (`exp`,
//! `ln`, `sqrt`) add an explicit truncation-error term, so every interval
//! returned here encloses the true real value.

use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 192;

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_biguint(v: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from_biguint(Sign::Plus, v.clone()))
}

/// `n!` exactly.
pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Binomial coefficient with the combinatorial convention `C(n, k) = 0`
/// for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `floor(log2 |x|)` up to an error of one, for nonzero `x`.
fn log2_estimate(x: &Rational) -> i64 {
    x.numer().bits() as i64 - x.denom().bits() as i64
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

// Unreduced sum and product. Every interval operation rounds its result to
// a reduced dyadic afterwards, so skipping the gcd here is safe and keeps
// the series evaluations cheap.
fn qadd(a: &Rational, b: &Rational) -> Rational {
    if a.denom() == b.denom() {
        return Rational::new_raw(a.numer() + b.numer(), a.denom().clone());
    }
    Rational::new_raw(a.numer() * b.denom() + b.numer() * a.denom(), a.denom() * b.denom())
}

fn qmul(a: &Rational, b: &Rational) -> Rational {
    Rational::new_raw(a.numer() * b.numer(), a.denom() * b.denom())
}

/// Cross-multiplied comparison; much faster than `Ord` on big ratios.
fn cmp_q(a: &Rational, b: &Rational) -> Ordering {
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

fn round_dir(x: &Rational, prec: u32, up: bool) -> Rational {
    if x.is_zero() {
        return x.clone();
    }
    let shift = prec as i64 - log2_estimate(x);
    let (num, den) = if shift >= 0 {
        (x.numer() << shift as u64, x.denom().clone())
    } else {
        (x.numer().clone(), x.denom() << (-shift) as u64)
    };
    let q = if up {
        num.div_ceil(&den)
    } else {
        num.div_floor(&den)
    };
    if shift >= 0 {
        // Reduce by hand: the denominator is a power of two.
        if q.is_zero() {
            return Rational::zero();
        }
        let tz = q.trailing_zeros().unwrap_or(0).min(shift as u64);
        Rational::new_raw(q >> tz, pow2(shift as u64 - tz))
    } else {
        Rational::from_integer(q << (-shift) as u64)
    }
}

/// Largest dyadic with `prec` significant bits that is `<= x`.
pub fn round_down(x: &Rational, prec: u32) -> Rational {
    round_dir(x, prec, false)
}

/// Smallest dyadic with `prec` significant bits that is `>= x`.
pub fn round_up(x: &Rational, prec: u32) -> Rational {
    round_dir(x, prec, true)
}

/// Closed interval `[lo, hi]` of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::point(int(v))
    }

    /// Panics if `lo > hi`.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    fn rounded(lo: Rational, hi: Rational, prec: u32) -> Self {
        Interval {
            lo: round_down(&lo, prec),
            hi: round_up(&hi, prec),
        }
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        Self::rounded(qadd(&self.lo, &o.lo), qadd(&self.hi, &o.hi), prec)
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        Self::rounded(qadd(&self.lo, &-&o.hi), qadd(&self.hi, &-&o.lo), prec)
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let p = [
            qmul(&self.lo, &o.lo),
            qmul(&self.lo, &o.hi),
            qmul(&self.hi, &o.lo),
            qmul(&self.hi, &o.hi),
        ];
        let lo = p.iter().min_by(|a, b| cmp_q(a, b)).unwrap().clone();
        let hi = p.iter().max_by(|a, b| cmp_q(a, b)).unwrap().clone();
        Self::rounded(lo, hi, prec)
    }

    /// `None` when the divisor contains zero.
    pub fn div(&self, o: &Self, prec: u32) -> Option<Self> {
        if o.lo.is_positive() || o.hi.is_negative() {
            let recip = Interval {
                lo: round_down(&o.hi.recip(), prec),
                hi: round_up(&o.lo.recip(), prec),
            };
            Some(self.mul(&recip, prec))
        } else {
            None
        }
    }

    pub fn scale(&self, q: &Rational, prec: u32) -> Self {
        self.mul(&Interval::point(q.clone()), prec)
    }

    pub fn powi(&self, mut e: u32, prec: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Interval::from_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, prec);
            }
        }
        acc
    }

    /// `None` for a negative lower endpoint.
    pub fn sqrt(&self, prec: u32) -> Option<Self> {
        if self.lo.is_negative() {
            return None;
        }
        Some(Interval {
            lo: sqrt_enclosure(&self.lo, prec).lo,
            hi: sqrt_enclosure(&self.hi, prec).hi,
        })
    }

    pub fn exp(&self, prec: u32) -> Self {
        Interval {
            lo: exp_enclosure(&self.lo, prec).lo,
            hi: exp_enclosure(&self.hi, prec).hi,
        }
    }

    /// `None` unless strictly positive.
    pub fn ln(&self, prec: u32) -> Option<Self> {
        if !self.lo.is_positive() {
            return None;
        }
        Some(Interval {
            lo: ln_enclosure(&self.lo, prec).lo,
            hi: ln_enclosure(&self.hi, prec).hi,
        })
    }

    /// `2^self`.
    pub fn exp2(&self, prec: u32) -> Self {
        self.mul(&ln2(prec), prec).exp(prec)
    }

    /// `10^self`.
    pub fn exp10(&self, prec: u32) -> Self {
        let ln10 = ln_enclosure(&int(10), prec);
        self.mul(&ln10, prec).exp(prec)
    }

    pub fn log2(&self, prec: u32) -> Option<Self> {
        self.ln(prec)?.div(&ln2(prec), prec)
    }

    /// The integer `floor(x)` if it is the same for every `x` in the interval.
    pub fn floor_exact(&self) -> Option<BigInt> {
        let a = self.lo.floor().to_integer();
        (a == self.hi.floor().to_integer()).then_some(a)
    }

    /// The integer `ceil(x)` if it is the same for every `x` in the interval.
    pub fn ceil_exact(&self) -> Option<BigInt> {
        let a = self.lo.ceil().to_integer();
        (a == self.hi.ceil().to_integer()).then_some(a)
    }

    /// Midpoint as `f64`, for display only.
    pub fn approx(&self) -> f64 {
        to_f64(&((&self.lo + &self.hi) / int(2)))
    }
}

/// Lossy conversion for display.
pub fn to_f64(x: &Rational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    // Scale into range before converting so huge numerators do not overflow.
    let e = log2_estimate(x);
    let shift = 60 - e;
    let scaled = if shift >= 0 {
        Rational::new(x.numer() << shift as u64, x.denom().clone())
    } else {
        Rational::new(x.numer().clone(), x.denom() << (-shift) as u64)
    };
    let m = scaled.to_integer().to_f64().unwrap_or(f64::NAN);
    m * pow2f(-shift)
}

fn pow2f(e: i64) -> f64 {
    let mut r = 1.0f64;
    let (base, n) = if e >= 0 { (2.0, e) } else { (0.5, -e) };
    for _ in 0..n.min(2100) {
        r *= base;
    }
    r
}

/// Scientific-notation string with `digits` significant decimal digits,
/// rounded up (`up = true`) or down, so printed upper bounds stay upper
/// bounds.
pub fn to_sci_string(x: &Rational, digits: u32, up: bool) -> alloc::string::String {
    use alloc::format;
    if x.is_zero() {
        return "0".into();
    }
    if x.is_negative() {
        let s = to_sci_string(&-x, digits, !up);
        return format!("-{s}");
    }
    let ten = BigInt::from(10);
    // Decimal exponent: find e with 10^e <= x < 10^(e+1).
    let mut e = (log2_estimate(x) as f64 * core::f64::consts::LOG10_2) as i64;
    let pow10 = |p: i64| -> Rational {
        if p >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), p as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-p) as usize))
        }
    };
    while &pow10(e) > x {
        e -= 1;
    }
    while &pow10(e + 1) <= x {
        e += 1;
    }
    let scaled = x / pow10(e - (digits as i64 - 1));
    let mut m = if up {
        scaled.ceil().to_integer()
    } else {
        scaled.floor().to_integer()
    };
    if m == num_traits::pow(ten.clone(), digits as usize) {
        m /= &ten;
        e += 1;
    }
    let s = m.to_str_radix(10);
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    if tail.is_empty() {
        format!("{head}e{e}")
    } else {
        format!("{head}.{tail}e{e}")
    }
}

fn sqrt_enclosure(x: &Rational, prec: u32) -> Interval {
    debug_assert!(!x.is_negative());
    if x.is_zero() {
        return Interval::point(x.clone());
    }
    let p = ((prec as i64 - log2_estimate(x) / 2).max(0) + 4) as u64;
    let scaled = x * Rational::from_integer(pow2(2 * p));
    let fl = scaled.floor().to_integer();
    let ce = scaled.ceil().to_integer();
    let lo = fl.sqrt();
    let mut hi = ce.sqrt();
    if &hi * &hi < ce {
        hi += 1;
    }
    let d = pow2(p);
    Interval {
        lo: Rational::new(lo, d.clone()),
        hi: Rational::new(hi, d),
    }
}

/// Enclosure of `e^x` for a rational point.
fn exp_enclosure(x: &Rational, prec: u32) -> Interval {
    if x.is_zero() {
        return Interval::from_int(1);
    }
    // Argument reduction: y = x / 2^j with |y| <= 1/2, then square j times.
    let j = (log2_estimate(x) + 2).max(0) as u32;
    let wp = prec + j + 16;
    let y = x / Rational::from_integer(pow2(j as u64));
    let yi = Interval::point(y.clone());
    let y_abs = y.abs();
    let eps = Rational::new(BigInt::one(), pow2(wp as u64 + 4));

    let mut sum = Interval::from_int(1);
    let mut term = Interval::from_int(1);
    let mut i = 1i64;
    loop {
        term = term.mul(&yi, wp).scale(&ratio(1, i), wp);
        sum = sum.add(&term, wp);
        let t_abs = core::cmp::max_by(term.hi.abs(), term.lo.abs(), cmp_q);
        if cmp_q(&t_abs, &eps) == Ordering::Less {
            // Tail after the last added term t_i is bounded by |t_i| because
            // |y| / (i + 1) <= 1/2.
            let bound = t_abs * &y_abs;
            sum = Interval::rounded(&sum.lo - &bound, &sum.hi + &bound, wp);
            break;
        }
        i += 1;
    }
    let mut r = sum;
    for _ in 0..j {
        r = r.mul(&r, wp);
    }
    Interval::rounded(r.lo, r.hi, prec)
}

/// Enclosure of `atanh(z)` for `0 <= z <= 1/3`.
fn atanh_small(z: &Rational, wp: u32) -> Interval {
    let zi = Interval::point(z.clone());
    let z2 = zi.mul(&zi, wp);
    let eps = Rational::new(BigInt::one(), pow2(wp as u64 + 4));
    let mut power = zi.clone();
    let mut sum = zi.clone();
    let mut i = 1i64;
    loop {
        power = power.mul(&z2, wp);
        let term = power.scale(&ratio(1, 2 * i + 1), wp);
        sum = sum.add(&term, wp);
        if cmp_q(&term.hi, &eps) == Ordering::Less {
            // Remaining tail <= next term / (1 - z^2) <= term * 9/8.
            let bound = term.hi * ratio(9, 8);
            return Interval::rounded(sum.lo, &sum.hi + &bound, wp);
        }
        i += 1;
    }
}

/// Enclosure of `ln 2`.
pub fn ln2(prec: u32) -> Interval {
    let wp = prec + 16;
    let a = atanh_small(&ratio(1, 3), wp);
    let two = Interval::from_int(2);
    let r = a.mul(&two, wp);
    Interval::rounded(r.lo, r.hi, prec)
}

/// Enclosure of `ln x` for a positive rational point.
fn ln_enclosure(x: &Rational, prec: u32) -> Interval {
    debug_assert!(x.is_positive());
    if x.is_one() {
        return Interval::from_int(0);
    }
    let mut m = log2_estimate(x);
    let two = int(2);
    let scale = |m: i64| -> Rational {
        if m >= 0 {
            Rational::from_integer(pow2(m as u64))
        } else {
            Rational::new(BigInt::one(), pow2((-m) as u64))
        }
    };
    let mut y = x / scale(m);
    while y >= two {
        m += 1;
        y = x / scale(m);
    }
    while y < Rational::one() {
        m -= 1;
        y = x / scale(m);
    }
    let wp = prec + 32;
    let z = (&y - Rational::one()) / (&y + Rational::one());
    let ln_y = atanh_small(&z, wp).mul(&Interval::from_int(2), wp);
    let r = ln2(wp).scale(&int(m), wp).add(&ln_y, wp);
    Interval::rounded(r.lo, r.hi, prec)
}

/// `sqrt(5)` enclosure.
pub fn sqrt5(prec: u32) -> Interval {
    sqrt_enclosure(&int(5), prec)
}

/// Compares an exact integer with an interval: `Some(Less)` if the integer
/// lies strictly below the interval, `Some(Greater)` if strictly above,
/// `None` when the interval straddles or touches it.
pub fn compare_int(v: &BigUint, x: &Interval) -> Option<Ordering> {
    let q = from_biguint(v);
    if q < x.lo {
        Some(Ordering::Less)
    } else if q > x.hi {
        Some(Ordering::Greater)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = DEFAULT_PRECISION;

    fn tight(x: &Interval, bits: u32) -> bool {
        let w = x.width();
        let scale = x.hi.abs().max(Rational::one());
        w <= scale * Rational::new(BigInt::one(), pow2(bits as u64))
    }

    #[test]
    fn rounding_brackets() {
        let third = ratio(1, 3);
        let lo = round_down(&third, 64);
        let hi = round_up(&third, 64);
        assert!(lo < third && third < hi);
        assert!(&hi - &lo < ratio(1, 1 << 62));
        let neg = ratio(-7, 3);
        assert!(round_down(&neg, 40) <= neg && neg <= round_up(&neg, 40));
        assert_eq!(round_up(&int(1 << 20), 8), int(1 << 20));
    }

    #[test]
    fn sqrt_of_squares_is_tight() {
        let s = Interval::from_int(49).sqrt(P).unwrap();
        assert!(s.contains(&int(7)));
        assert!(tight(&s, 180));
        let s5 = sqrt5(P);
        // 2.2360679774997896964...
        assert!(s5.lo > ratio(22360679774997896, 10000000000000000));
        assert!(s5.hi < ratio(22360679774997897, 10000000000000000));
    }

    #[test]
    fn exp_and_ln_are_inverse_enclosures() {
        let one = Interval::from_int(1);
        let e = one.exp(P);
        // e = 2.718281828459045235...
        assert!(e.lo > ratio(2718281828459045, 1000000000000000));
        assert!(e.hi < ratio(2718281828459046, 1000000000000000));
        let back = e.ln(P).unwrap();
        assert!(back.contains(&int(1)));
        assert!(tight(&back, 170));

        let l2 = ln2(P);
        // ln 2 = 0.693147180559945309417...
        assert!(l2.lo > ratio(693147180559945309, 1000000000000000000));
        assert!(l2.hi < ratio(693147180559945310, 1000000000000000000));
    }

    #[test]
    fn exp2_of_integer_contains_power() {
        let x = Interval::from_int(37).exp2(P);
        assert!(x.contains(&int(1 << 37)));
        assert!(tight(&x, 160));
        let y = Interval::from_int(-5).exp2(P);
        assert!(y.contains(&ratio(1, 32)));
    }

    #[test]
    fn ln_of_large_and_small() {
        let big = Interval::point(Rational::from_integer(pow2(300))).ln(P).unwrap();
        let expect = ln2(P).scale(&int(300), P);
        assert!(big.lo <= expect.hi && expect.lo <= big.hi);
        let small = Interval::point(ratio(1, 1000)).ln(P).unwrap();
        assert!(small.hi < int(0));
        assert!(Interval::from_int(0).ln(P).is_none());
    }

    #[test]
    fn exp_of_negative_and_large() {
        let x = Interval::from_int(-40).exp(P);
        assert!(x.lo.is_positive());
        let prod = x.mul(&Interval::from_int(40).exp(P), P);
        assert!(prod.contains(&int(1)));
    }

    #[test]
    fn floor_and_ceil_detection() {
        let x = Interval::new(ratio(5, 2), ratio(27, 10));
        assert_eq!(x.floor_exact(), Some(BigInt::from(2)));
        assert_eq!(x.ceil_exact(), Some(BigInt::from(3)));
        let y = Interval::new(ratio(19, 10), ratio(21, 10));
        assert_eq!(y.floor_exact(), None);
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(factorial(10), BigUint::from(3628800u32));
    }

    #[test]
    fn sci_strings_round_in_direction() {
        let x = ratio(2, 3);
        assert_eq!(to_sci_string(&x, 4, true), "6.667e-1");
        assert_eq!(to_sci_string(&x, 4, false), "6.666e-1");
        assert_eq!(to_sci_string(&int(120), 6, true), "1.2e2");
        assert_eq!(to_sci_string(&ratio(9999, 1000), 3, true), "1e1");
        assert!((to_f64(&ratio(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
    }
}
