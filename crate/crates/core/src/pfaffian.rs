//! Pfaffians of skew-symmetric matrices over a commutative ring.
//!
//! The Pfaffian of a skew-symmetric matrix `A` indexed by a set `S` is the
//! signed sum over perfect matchings `M` of `S` of `sgn(M) * prod A[u][v]`,
//! with `sgn(M)` the sign of the permutation `(i1 j1 i2 j2 ...)` obtained by
//! flattening the matching with `ik < jk` and `i1 < i2 < ...`. That convention
//! makes `Pf(A)^2 = det(A)` and `Pf` of the empty matrix 1.
//!
//! Three evaluators are provided:
//! - [`pfaffian`]: skew Gaussian elimination with unit pivots (`O(dim^3)` ring
//!   operations), falling back to the division-free recurrence whenever no
//!   pivot in the current row is a unit;
//! - [`pfaffian_division_free`]: a characteristic-polynomial recurrence using
//!   only ring additions/multiplications and divisions by loop counters
//!   (`O(dim^4)` ring multiplications);
//! - [`pfaffian_bruteforce`]: direct matching enumeration, the definitional
//!   oracle, limited to small dimensions.

use crate::field::FieldScalar;
use crate::ring::Ring;
use crate::{Error, Result};

/// Skew-symmetric square matrix with ring entries.
///
/// The `zero` prototype fixes the shape of entries (e.g. the variable count of
/// ring elements) so identities can be produced even for the 0x0 matrix.
#[derive(Clone, Debug)]
pub struct SkewMatrix<E> {
    dim: usize,
    zero: E,
    entries: Vec<E>,
}

impl<E: Ring> SkewMatrix<E> {
    /// All-zero matrix of the given dimension; `zero` prototypes the entries.
    pub fn zeros(dim: usize, zero: E) -> Self {
        SkewMatrix {
            dim,
            entries: vec![zero.clone(); dim * dim],
            zero,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.dim + j]
    }

    /// Sets `[i][j] = value` and `[j][i] = -value` in one step.
    pub fn set_pair(&mut self, i: usize, j: usize, value: E) {
        assert!(i != j, "diagonal entries of a skew matrix stay zero");
        self.entries[j * self.dim + i] = value.neg();
        self.entries[i * self.dim + j] = value;
    }

    /// Swaps rows i,j and columns i,j simultaneously (preserves skew-symmetry,
    /// flips the Pfaffian's sign).
    pub fn swap_pair(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.dim {
            self.entries.swap(i * self.dim + c, j * self.dim + c);
        }
        for r in 0..self.dim {
            self.entries.swap(r * self.dim + i, r * self.dim + j);
        }
    }

    /// Checks skew-symmetry, a zero diagonal, and even dimension.
    pub fn validate(&self) -> Result<()> {
        if self.dim % 2 != 0 {
            return Err(Error::Invalid(format!(
                "pfaffian requires even dimension, got {}",
                self.dim
            )));
        }
        for i in 0..self.dim {
            if !self.get(i, i).is_zero() {
                return Err(Error::Invalid("nonzero diagonal entry".into()));
            }
            for j in (i + 1)..self.dim {
                if *self.get(j, i) != self.get(i, j).neg() {
                    return Err(Error::Invalid(format!(
                        "matrix not skew-symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    fn submatrix(&self, from: usize) -> SkewMatrix<E> {
        let d = self.dim - from;
        let mut sub = SkewMatrix::zeros(d, self.zero.clone());
        for i in 0..d {
            for j in 0..d {
                sub.entries[i * d + j] = self.get(from + i, from + j).clone();
            }
        }
        sub
    }
}

/// Pfaffian by skew elimination; equals the signed perfect-matching sum.
///
/// Pivots are inverted in the ring, which is valid whenever the pivot is a
/// unit. Rows whose candidate pivots are all non-units (possible over rings
/// with nilpotents) divert the remaining submatrix to the division-free
/// evaluator, so the result is always exact.
pub fn pfaffian<E: Ring>(m: &SkewMatrix<E>) -> Result<E> {
    m.validate()?;
    let dim = m.dim;
    let one = m.zero.one_like();
    if dim == 0 {
        return Ok(one);
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut acc = one;
    let mut r = 0;
    while r < dim {
        let pivot_col = ((r + 1)..dim).find(|&c| a.get(r, c).try_inv().is_some());
        let c = match pivot_col {
            Some(c) => c,
            None => {
                if ((r + 1)..dim).all(|c| a.get(r, c).is_zero()) {
                    // Row r cannot be matched: the Pfaffian vanishes.
                    return Ok(m.zero.zero_like());
                }
                // Nonzero but non-unit pivots only; finish division-free.
                let rest = pfaffian_division_free(&a.submatrix(r))?;
                let total = acc.mul(&rest);
                return Ok(if negate { total.neg() } else { total });
            }
        };
        if c != r + 1 {
            a.swap_pair(c, r + 1);
            negate = !negate;
        }
        let pivot = a.get(r, r + 1).clone();
        let pivot_inv = pivot.try_inv().expect("pivot chosen as unit");
        acc = acc.mul(&pivot);
        // Schur update: A[i][j] -= (A[r][i] A[r+1][j] - A[r][j] A[r+1][i]) / pivot
        let scaled: Vec<E> = ((r + 2)..dim)
            .map(|j| a.get(r, j).mul(&pivot_inv))
            .collect();
        for i in (r + 2)..dim {
            for j in (i + 1)..dim {
                let si = &scaled[i - r - 2];
                let sj = &scaled[j - r - 2];
                let upd = si.mul(a.get(r + 1, j)).sub(&sj.mul(a.get(r + 1, i)));
                let val = a.get(i, j).sub(&upd);
                a.set_pair(i, j, val);
            }
        }
        r += 2;
    }
    Ok(if negate { acc.neg() } else { acc })
}

/// Division-free Pfaffian via Newton's identities.
///
/// For skew `A` of dimension `2h` and the standard skew form `J` (blocks
/// `[[0,1],[-1,0]]`), the polynomial `Pf(A - xJ)` squares to the
/// characteristic polynomial of `C = J^{-1} A`, so the eigenvalues of `C` are
/// its roots doubled. Newton's identities recover the monic coefficients from
/// the half power sums `tr(C^k)/2`, dividing only by the integers `1..=h`,
/// which are scalar constants of the field. `Pf(A) = (-1)^h` times the
/// constant coefficient.
pub fn pfaffian_division_free<E: Ring>(m: &SkewMatrix<E>) -> Result<E> {
    m.validate()?;
    let dim = m.dim;
    let zero = m.zero.zero_like();
    let one = m.zero.one_like();
    if dim == 0 {
        return Ok(one);
    }
    let half = dim / 2;

    // C = J^{-1} A: row 2i is -A[2i+1], row 2i+1 is A[2i].
    let mut c = vec![zero.clone(); dim * dim];
    for i in 0..half {
        for j in 0..dim {
            c[(2 * i) * dim + j] = m.get(2 * i + 1, j).neg();
            c[(2 * i + 1) * dim + j] = m.get(2 * i, j).clone();
        }
    }

    let trace = |mat: &[E]| -> E {
        let mut t = zero.clone();
        for i in 0..dim {
            t = t.add(&mat[i * dim + i]);
        }
        t
    };
    let mat_mul = |x: &[E], y: &[E]| -> Vec<E> {
        let mut out = vec![zero.clone(); dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let xik = &x[i * dim + k];
                if xik.is_zero() {
                    continue;
                }
                for j in 0..dim {
                    let yk = &y[k * dim + j];
                    if !yk.is_zero() {
                        out[i * dim + j] = out[i * dim + j].add(&xik.mul(yk));
                    }
                }
            }
        }
        out
    };

    // sigma[k] = tr(C^k) / 2 for k = 1..=half
    let mut sigma = vec![zero.clone(); half + 1];
    let mut power = c.clone();
    sigma[1] = trace(&power).div_by_int(2);
    for k in 2..=half {
        power = mat_mul(&power, &c);
        sigma[k] = trace(&power).div_by_int(2);
    }

    // Monic coefficients by Newton's identities, highest first.
    let mut coef = vec![zero; half + 1];
    coef[half] = one;
    for k in 1..=half {
        let mut s = sigma[k].clone();
        for i in 1..k {
            s = s.add(&coef[half - i].mul(&sigma[k - i]));
        }
        coef[half - k] = s.neg().div_by_int(k as u64);
    }

    Ok(if half % 2 == 1 {
        coef[0].neg()
    } else {
        coef[0].clone()
    })
}

/// Hard limit for the brute-force matcher (10395 matchings at dimension 12).
pub const BRUTEFORCE_MAX_DIM: usize = 12;

/// Definitional Pfaffian: enumerate perfect matchings with explicit signs.
pub fn pfaffian_bruteforce<E: Ring>(m: &SkewMatrix<E>) -> Result<E> {
    m.validate()?;
    if m.dim > BRUTEFORCE_MAX_DIM {
        return Err(Error::Guard(format!(
            "brute-force pfaffian limited to dimension {BRUTEFORCE_MAX_DIM}, got {}",
            m.dim
        )));
    }
    let one = m.zero.one_like();
    let mut total = m.zero.zero_like();
    let mut order = Vec::with_capacity(m.dim);
    enumerate_matchings(m, &mut (0..m.dim).collect::<Vec<_>>(), &mut order, &one, &mut total);
    Ok(total)
}

fn enumerate_matchings<E: Ring>(
    m: &SkewMatrix<E>,
    remaining: &mut Vec<usize>,
    order: &mut Vec<usize>,
    partial: &E,
    total: &mut E,
) {
    if remaining.is_empty() {
        let s = permutation_sign(order);
        *total = if s { total.sub(partial) } else { total.add(partial) };
        return;
    }
    let i = remaining[0];
    for idx in 1..remaining.len() {
        let j = remaining[idx];
        let entry = m.get(i, j);
        if entry.is_zero() {
            continue;
        }
        let next = partial.mul(entry);
        let mut rest: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&v| v != i && v != j)
            .collect();
        order.push(i);
        order.push(j);
        enumerate_matchings(m, &mut rest, order, &next, total);
        order.pop();
        order.pop();
    }
}

/// True for odd permutations of `0..len` given as a flat sequence.
fn permutation_sign(perm: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Determinant of a field-valued skew matrix by Gaussian elimination.
///
/// Reference routine for the `Pf^2 = det` cross-check; exact over the finite
/// field and independent of the Pfaffian code paths above.
pub fn skew_determinant<F: FieldScalar + Ring>(m: &SkewMatrix<F>) -> Result<F> {
    m.validate()?;
    let n = m.dim;
    let mut a = m.entries.clone();
    let mut det = <F as num_traits::One>::one();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !Ring::is_zero(&a[r * n + col]));
        let pr = match pivot_row {
            Some(pr) => pr,
            None => return Ok(<F as num_traits::Zero>::zero()),
        };
        if pr != col {
            for c in 0..n {
                a.swap(pr * n + c, col * n + c);
            }
            det = -det;
        }
        let pivot = a[col * n + col];
        det = det * pivot;
        let inv = FieldScalar::try_inv(pivot).expect("nonzero pivot");
        for r in (col + 1)..n {
            let factor = a[r * n + col] * inv;
            if Ring::is_zero(&factor) {
                continue;
            }
            for c in col..n {
                a[r * n + c] = a[r * n + c] - factor * a[col * n + c];
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;
    use crate::ring::RingElement;
    use crate::rng::Rng;

    type F = FieldElement;
    type Poly = RingElement<F>;

    fn f(v: u64) -> F {
        F::new(v)
    }

    fn random_field_skew(dim: usize, rng: &mut Rng) -> SkewMatrix<F> {
        let mut m = SkewMatrix::zeros(dim, F::ZERO);
        for i in 0..dim {
            for j in (i + 1)..dim {
                m.set_pair(i, j, F::sample_uniform(rng));
            }
        }
        m
    }

    fn random_ring_skew(dim: usize, vars: usize, rng: &mut Rng) -> SkewMatrix<Poly> {
        let mut m = SkewMatrix::zeros(dim, Poly::zero(vars));
        for i in 0..dim {
            for j in (i + 1)..dim {
                // Sparse entries: a handful of random monomials.
                let terms: Vec<(u32, F)> = (0..3)
                    .map(|_| {
                        let mask = (rng.next_u64() & ((1 << vars) - 1)) as u32;
                        (mask, F::sample_uniform(rng))
                    })
                    .collect();
                m.set_pair(i, j, Poly::from_sparse_terms(vars, &terms));
            }
        }
        m
    }

    #[test]
    fn empty_matrix_is_one() {
        let m: SkewMatrix<F> = SkewMatrix::zeros(0, F::ZERO);
        assert_eq!(pfaffian(&m).unwrap(), f(1));
        assert_eq!(pfaffian_division_free(&m).unwrap(), f(1));
        assert_eq!(pfaffian_bruteforce(&m).unwrap(), f(1));
    }

    #[test]
    fn dim_two_is_the_entry() {
        let mut m = SkewMatrix::zeros(2, F::ZERO);
        m.set_pair(0, 1, f(37));
        assert_eq!(pfaffian(&m).unwrap(), f(37));
        assert_eq!(pfaffian_division_free(&m).unwrap(), f(37));
        assert_eq!(pfaffian_bruteforce(&m).unwrap(), f(37));
    }

    #[test]
    fn dim_four_three_term_expansion() {
        let mut rng = Rng::from_seed_u64(21);
        for _ in 0..20 {
            let m = random_field_skew(4, &mut rng);
            let expect = *m.get(0, 1) * *m.get(2, 3) - *m.get(0, 2) * *m.get(1, 3)
                + *m.get(0, 3) * *m.get(1, 2);
            assert_eq!(pfaffian(&m).unwrap(), expect);
            assert_eq!(pfaffian_division_free(&m).unwrap(), expect);
            assert_eq!(pfaffian_bruteforce(&m).unwrap(), expect);
        }
    }

    // Entries set to distinct ring variables turn the Pfaffian into its
    // symbolic matching sum; the three dim-4 coefficients must come out
    // +1, -1, +1, pinning the sign convention exactly.
    #[test]
    fn dim_four_symbolic_signs() {
        let vars = 6;
        let mut m = SkewMatrix::zeros(4, Poly::zero(vars));
        let mut var = 0u32;
        let mut index = [[0u32; 4]; 4];
        for i in 0..4 {
            for j in (i + 1)..4 {
                m.set_pair(i, j, Poly::from_sparse_terms(vars, &[(1 << var, f(1))]));
                index[i][j] = 1 << var;
                var += 1;
            }
        }
        let pf = pfaffian_division_free(&m).unwrap();
        let minus_one = -f(1);
        assert_eq!(pf.coefficient_at(index[0][1] | index[2][3]), f(1));
        assert_eq!(pf.coefficient_at(index[0][2] | index[1][3]), minus_one);
        assert_eq!(pf.coefficient_at(index[0][3] | index[1][2]), f(1));
        assert_eq!(pfaffian(&m).unwrap(), pf);
        assert_eq!(pfaffian_bruteforce(&m).unwrap(), pf);
    }

    #[test]
    fn zero_row_gives_zero() {
        let mut rng = Rng::from_seed_u64(22);
        let mut m = random_field_skew(6, &mut rng);
        for j in 0..6 {
            if j != 2 {
                m.set_pair(2, j.max(2).min(j), F::ZERO);
            }
        }
        // Clear row/column 2 entirely.
        for j in 0..6 {
            if j != 2 {
                let (a, b) = if 2 < j { (2, j) } else { (j, 2) };
                m.set_pair(a, b, F::ZERO);
            }
        }
        assert_eq!(pfaffian(&m).unwrap(), f(0));
        assert_eq!(pfaffian_division_free(&m).unwrap(), f(0));
        assert_eq!(pfaffian_bruteforce(&m).unwrap(), f(0));
    }

    #[test]
    fn odd_dimension_rejected() {
        let m: SkewMatrix<F> = SkewMatrix::zeros(3, F::ZERO);
        assert!(pfaffian(&m).is_err());
    }

    #[test]
    fn non_skew_rejected() {
        let mut m = SkewMatrix::zeros(2, F::ZERO);
        m.entries[1] = f(4);
        m.entries[2] = f(4);
        assert!(pfaffian(&m).is_err());
    }

    #[test]
    fn transposition_flips_sign() {
        let mut rng = Rng::from_seed_u64(23);
        for _ in 0..20 {
            let m = random_field_skew(8, &mut rng);
            let before = pfaffian(&m).unwrap();
            let mut swapped = m.clone();
            let i = (rng.next_u64() % 8) as usize;
            let mut j = (rng.next_u64() % 8) as usize;
            while j == i {
                j = (rng.next_u64() % 8) as usize;
            }
            swapped.swap_pair(i, j);
            assert_eq!(pfaffian(&swapped).unwrap(), -before);
        }
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let mut rng = Rng::from_seed_u64(24);
        for dim in [2usize, 4, 6, 8, 10] {
            for _ in 0..8 {
                let m = random_field_skew(dim, &mut rng);
                let pf = pfaffian(&m).unwrap();
                let pf_df = pfaffian_division_free(&m).unwrap();
                let det = skew_determinant(&m).unwrap();
                assert_eq!(pf * pf, det);
                assert_eq!(pf_df * pf_df, det);
            }
        }
    }

    #[test]
    fn agrees_with_bruteforce_on_ring_matrices() {
        let mut rng = Rng::from_seed_u64(25);
        for dim in [2usize, 4, 6, 8] {
            for _ in 0..10 {
                let m = random_ring_skew(dim, 4, &mut rng);
                let brute = pfaffian_bruteforce(&m).unwrap();
                assert_eq!(pfaffian(&m).unwrap(), brute);
                assert_eq!(pfaffian_division_free(&m).unwrap(), brute);
            }
        }
    }

    // All entries pure monomials: every pivot candidate is nilpotent, so the
    // elimination path must divert to the division-free fallback.
    #[test]
    fn elimination_fallback_on_non_unit_pivots() {
        let vars = 6;
        let mut rng = Rng::from_seed_u64(26);
        for _ in 0..10 {
            let mut m = SkewMatrix::zeros(4, Poly::zero(vars));
            let mut var = 0;
            for i in 0..4 {
                for j in (i + 1)..4 {
                    let coeff = F::sample_uniform(&mut rng);
                    m.set_pair(i, j, Poly::from_sparse_terms(vars, &[(1 << var, coeff)]));
                    var += 1;
                }
            }
            assert_eq!(pfaffian(&m).unwrap(), pfaffian_bruteforce(&m).unwrap());
        }
    }

    #[test]
    fn bruteforce_guard() {
        let m: SkewMatrix<F> = SkewMatrix::zeros(14, F::ZERO);
        assert!(matches!(
            pfaffian_bruteforce(&m),
            Err(crate::Error::Guard(_))
        ));
    }
}
