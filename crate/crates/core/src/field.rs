//! Arithmetic in the prime field GF(2^61 - 1).
//!
//! The Mersenne modulus keeps reduction branch-light: a 122-bit product folds
//! into the field with shifts and one conditional subtraction. The modulus is
//! fixed rather than chosen per instance; with identity-testing error bounded
//! by `degree / field size`, a single trial on an n-vertex instance fails with
//! probability below `n / 2^61`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rng::Rng;

/// The Mersenne prime 2^61 - 1.
pub const MODULUS: u64 = (1u64 << 61) - 1;

/// An element of GF(2^61 - 1); the wrapped value is always reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FieldElement(u64);

#[inline(always)]
fn fold62(x: u64) -> u64 {
    // Valid for x < 2^62: one fold brings the value to at most 2^61,
    // one conditional subtraction finishes the reduction.
    let y = (x & MODULUS) + (x >> 61);
    if y >= MODULUS {
        y - MODULUS
    } else {
        y
    }
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Element representing `v` modulo 2^61 - 1.
    #[inline]
    pub fn new(v: u64) -> Self {
        FieldElement(fold62((v & MODULUS) + (v >> 61)))
    }

    /// Canonical representative in `[0, 2^61 - 1)`.
    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn try_inv(self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(MODULUS - 2))
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self) -> Self {
        self.try_inv().expect("inversion of zero field element")
    }

    /// Uniform sample from the whole field.
    ///
    /// Draws 61 bits and rejects the single out-of-range value, so the bias
    /// is exactly zero at a rejection rate of 2^-61.
    pub fn sample_uniform(rng: &mut Rng) -> Self {
        loop {
            let v = rng.next_u64() & MODULUS;
            if v < MODULUS {
                return FieldElement(v);
            }
        }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    #[inline(always)]
    fn add(self, rhs: Self) -> Self {
        FieldElement(fold62(self.0 + rhs.0))
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    #[inline(always)]
    fn sub(self, rhs: Self) -> Self {
        FieldElement(fold62(self.0 + (MODULUS - rhs.0)))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    #[inline(always)]
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            FieldElement(MODULUS - self.0)
        }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    #[inline(always)]
    fn mul(self, rhs: Self) -> Self {
        let t = self.0 as u128 * rhs.0 as u128;
        let lo = (t as u64) & MODULUS;
        let hi = (t >> 61) as u64;
        FieldElement(fold62(lo + hi))
    }
}

impl Zero for FieldElement {
    fn zero() -> Self {
        FieldElement::ZERO
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for FieldElement {
    fn one() -> Self {
        FieldElement::ONE
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Scalar types usable as coefficients of the squarefree ring.
///
/// The supertraits come from `num_traits`; the two extra methods cover unit
/// inversion and embedding of small integers (needed for the division-free
/// Pfaffian recurrence, which divides by loop counters).
pub trait FieldScalar:
    Copy
    + Eq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn try_inv(self) -> Option<Self>;
    fn from_integer(v: u64) -> Self;
}

impl FieldScalar for FieldElement {
    fn try_inv(self) -> Option<Self> {
        FieldElement::try_inv(self)
    }
    fn from_integer(v: u64) -> Self {
        FieldElement::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: u64) -> FieldElement {
        FieldElement::new(v)
    }

    #[test]
    fn wraparound_at_modulus() {
        assert_eq!(f(MODULUS - 1) + f(1), f(0));
        assert_eq!(f(MODULUS), f(0));
    }

    #[test]
    fn inverse_of_two() {
        let two = f(2);
        assert_eq!(two.inv() * two, f(1));
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(f(0).try_inv().is_none());
    }

    #[test]
    fn multiplicative_identity() {
        let mut rng = Rng::from_seed_u64(11);
        for _ in 0..100 {
            let a = FieldElement::sample_uniform(&mut rng);
            assert_eq!(a * f(1), a);
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = Rng::from_seed_u64(12);
        for _ in 0..200 {
            let a = FieldElement::sample_uniform(&mut rng);
            let b = FieldElement::sample_uniform(&mut rng);
            let c = FieldElement::sample_uniform(&mut rng);
            assert_eq!((a + b) + c, a + (b + c));
            assert_eq!((a * b) * c, a * (b * c));
            assert_eq!(a * (b + c), a * b + a * c);
            assert_eq!(a + b, b + a);
            assert_eq!(a * b, b * a);
            assert_eq!(a - a, f(0));
            if !a.is_zero() {
                assert_eq!(a.inv() * a, f(1));
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let mut a = Rng::from_seed_u64(42);
        let mut b = Rng::from_seed_u64(42);
        for _ in 0..50 {
            assert_eq!(
                FieldElement::sample_uniform(&mut a),
                FieldElement::sample_uniform(&mut b)
            );
        }
    }

    // Golden value locked in from the first run; guards against accidental
    // changes to the generator or the sampling path.
    #[test]
    fn golden_first_sample_seed_42() {
        let mut rng = Rng::from_seed_u64(42);
        let v = FieldElement::sample_uniform(&mut rng).value();
        assert_eq!(v, GOLDEN_SEED_42);
    }

    const GOLDEN_SEED_42: u64 = 1049549498249730977;

    #[test]
    fn chi_squared_uniformity_64_buckets() {
        // 10^6 draws into 64 buckets by top bits; alpha = 0.001 on 63 dof.
        let mut rng = Rng::from_seed_u64(2024);
        let mut counts = [0u64; 64];
        let draws = 1_000_000u64;
        for _ in 0..draws {
            let v = FieldElement::sample_uniform(&mut rng).value();
            counts[(v >> 55) as usize] += 1;
        }
        let expected = draws as f64 / 64.0;
        let stat: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        // Critical value of chi^2 with 63 dof at the 0.999 quantile.
        assert!(stat < 103.44, "chi-squared statistic too large: {stat}");
    }
}
