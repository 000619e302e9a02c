//! The squarefree quotient ring `F[y_1..y_p] / (y_v^2)`.
//!
//! Elements are dense vectors of `2^p` coefficients indexed by subsets of the
//! variable set: the entry at bitmask `T` is the coefficient of the monomial
//! `prod_{v in T} y_v`. Because every variable squares to zero, multiplication
//! is exactly subset convolution over disjoint unions:
//!
//! `(a * b)[T] = sum over A ⊔ B = T of a[A] * b[B]`
//!
//! computed with the ranked zeta / pointwise / ranked Moebius pipeline in
//! `O(2^p p^2)` field operations.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::field::FieldScalar;

/// Hard ceiling on the variable count; 2^24 coefficients of 8 bytes is about
/// 128 MiB per element, the practical desk-scale limit.
pub const MAX_VARS: usize = 24;

/// Commutative-ring interface used by the Pfaffian routines.
///
/// `zero_like`/`one_like` exist because the additive and multiplicative
/// identities of a ring element depend on its shape (the variable count of a
/// [`RingElement`] is not known statically). `try_inv` succeeds exactly on
/// units, and `div_by_int` is coefficient-wise division by a small integer,
/// always exact since the scalar field has huge characteristic.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn try_inv(&self) -> Option<Self>;
    fn div_by_int(&self, k: u64) -> Self;
}

/// Dense element of the squarefree ring on `p` variables.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement<F: FieldScalar> {
    vars: usize,
    coeffs: Vec<F>,
}

impl<F: FieldScalar> RingElement<F> {
    fn check_vars(vars: usize) {
        assert!(
            vars <= MAX_VARS,
            "refusing {} ring variables (limit {})",
            vars,
            MAX_VARS
        );
    }

    /// The additive identity on `vars` variables.
    pub fn zero(vars: usize) -> Self {
        Self::check_vars(vars);
        RingElement {
            vars,
            coeffs: vec![F::zero(); 1 << vars],
        }
    }

    /// The multiplicative identity on `vars` variables.
    pub fn one(vars: usize) -> Self {
        let mut e = Self::zero(vars);
        e.coeffs[0] = F::one();
        e
    }

    /// Dense element from `(subset, coefficient)` terms; duplicates are summed.
    pub fn from_sparse_terms(vars: usize, terms: &[(u32, F)]) -> Self {
        let mut e = Self::zero(vars);
        for &(mask, c) in terms {
            assert!((mask as usize) < (1 << vars), "subset out of range");
            e.coeffs[mask as usize] = e.coeffs[mask as usize] + c;
        }
        e
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Coefficient of the monomial `prod_{v in mask} y_v`.
    pub fn coefficient_at(&self, mask: u32) -> F {
        assert!((mask as usize) < self.coeffs.len(), "subset out of range");
        self.coeffs[mask as usize]
    }

    pub(crate) fn set_coefficient(&mut self, mask: u32, value: F) {
        self.coeffs[mask as usize] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficient-wise scalar multiplication.
    pub fn scale(&self, s: F) -> Self {
        RingElement {
            vars: self.vars,
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    fn assert_same_vars(&self, rhs: &Self) {
        assert_eq!(
            self.vars, rhs.vars,
            "ring elements with mismatched variable counts"
        );
    }

    fn pointwise(&self, rhs: &Self, op: impl Fn(F, F) -> F) -> Self {
        self.assert_same_vars(rhs);
        RingElement {
            vars: self.vars,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    /// Subset convolution by ranked zeta transform, rank-truncated pointwise
    /// products, and ranked Moebius transform.
    fn convolve(&self, rhs: &Self) -> Self {
        self.assert_same_vars(rhs);
        let p = self.vars;
        let size = 1usize << p;
        let planes = p + 1;

        // ranked[r * size + t] = sum of coefficients over subsets of t of rank r
        let rank_expand = |src: &[F]| -> Vec<F> {
            let mut ranked = vec![F::zero(); planes * size];
            for t in 0..size {
                ranked[(t.count_ones() as usize) * size + t] = src[t];
            }
            for plane in ranked.chunks_exact_mut(size) {
                zeta_in_place(plane, p);
            }
            ranked
        };

        let fa = rank_expand(&self.coeffs);
        let fb = rank_expand(&rhs.coeffs);

        // Pointwise product of rank polynomials, truncated at rank p.
        let mut fc = vec![F::zero(); planes * size];
        for r in 0..planes {
            for i in 0..=r {
                let (pa, pb, pc) = (
                    &fa[i * size..(i + 1) * size],
                    &fb[(r - i) * size..(r - i + 1) * size],
                    &mut fc[r * size..(r + 1) * size],
                );
                for t in 0..size {
                    pc[t] = pc[t] + pa[t] * pb[t];
                }
            }
        }

        for plane in fc.chunks_exact_mut(size) {
            moebius_in_place(plane, p);
        }

        let mut out = Self::zero(p);
        for t in 0..size {
            out.coeffs[t] = fc[(t.count_ones() as usize) * size + t];
        }
        out
    }
}

fn zeta_in_place<F: FieldScalar>(plane: &mut [F], p: usize) {
    for i in 0..p {
        let bit = 1usize << i;
        for t in 0..plane.len() {
            if t & bit != 0 {
                plane[t] = plane[t] + plane[t ^ bit];
            }
        }
    }
}

fn moebius_in_place<F: FieldScalar>(plane: &mut [F], p: usize) {
    for i in 0..p {
        let bit = 1usize << i;
        for t in 0..plane.len() {
            if t & bit != 0 {
                plane[t] = plane[t] - plane[t ^ bit];
            }
        }
    }
}

impl<F: FieldScalar> Add for &RingElement<F> {
    type Output = RingElement<F>;
    fn add(self, rhs: Self) -> RingElement<F> {
        self.pointwise(rhs, |a, b| a + b)
    }
}

impl<F: FieldScalar> Sub for &RingElement<F> {
    type Output = RingElement<F>;
    fn sub(self, rhs: Self) -> RingElement<F> {
        self.pointwise(rhs, |a, b| a - b)
    }
}

impl<F: FieldScalar> Neg for &RingElement<F> {
    type Output = RingElement<F>;
    fn neg(self) -> RingElement<F> {
        RingElement {
            vars: self.vars,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl<F: FieldScalar> Mul for &RingElement<F> {
    type Output = RingElement<F>;
    fn mul(self, rhs: Self) -> RingElement<F> {
        self.convolve(rhs)
    }
}

impl<F: FieldScalar> std::fmt::Debug for RingElement<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RingElement(p={};", self.vars)?;
        let mut shown = 0;
        for (t, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write!(f, " {t:#b}:{c:?}")?;
                shown += 1;
                if shown >= 8 {
                    write!(f, " ...")?;
                    break;
                }
            }
        }
        write!(f, ")")
    }
}

impl<F: FieldScalar> Ring for RingElement<F> {
    fn zero_like(&self) -> Self {
        RingElement::zero(self.vars)
    }
    fn one_like(&self) -> Self {
        RingElement::one(self.vars)
    }
    fn is_zero(&self) -> bool {
        RingElement::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }

    /// A squarefree-ring element is a unit exactly when its constant
    /// coefficient is nonzero: the rest is nilpotent, so the inverse is the
    /// truncated geometric series with at most `p + 1` terms.
    fn try_inv(&self) -> Option<Self> {
        let c0inv = self.coeffs[0].try_inv()?;
        // w = 1 - self * c0inv has zero constant term, hence w^(p+1) = 0.
        let mut w = -&self.scale(c0inv);
        w.coeffs[0] = w.coeffs[0] + F::one();
        // Horner form of 1 + w + w^2 + ... + w^p.
        let one = self.one_like();
        let mut acc = one.clone();
        for _ in 0..self.vars {
            let prod = &w * &acc;
            acc = &prod + &one;
        }
        Some(acc.scale(c0inv))
    }

    fn div_by_int(&self, k: u64) -> Self {
        let inv = F::from_integer(k)
            .try_inv()
            .expect("integer divisor reduces to zero in the field");
        self.scale(inv)
    }
}

impl<F: FieldScalar> Ring for F {
    fn zero_like(&self) -> Self {
        F::zero()
    }
    fn one_like(&self) -> Self {
        F::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn try_inv(&self) -> Option<Self> {
        FieldScalar::try_inv(*self)
    }
    fn div_by_int(&self, k: u64) -> Self {
        *self
            * F::from_integer(k)
                .try_inv()
                .expect("integer divisor reduces to zero in the field")
    }
}
