//! Finite-difference calculus on functions on Z/N.
//!
//! The difference operator f(x) - f(x-1) plays the role of a one-parameter
//! group action's infinitesimal shadow: its kernel and cokernel are computed
//! exactly, a level-raising antiderivative inverts it modulo p, and a
//! translation twisted by a unipotent coefficient action measures the same
//! thing with polynomial coefficients attached.

use crate::linalg::{image, kernel, quotient_shape, shape_of_submodule, QuotientShape, Submodule};
use crate::matrix::ExactMatrix;
use crate::module::sym_matrix;
use crate::ring::{RingSpec, Scalar};

/// Cyclic shift on functions on Z/n: it sends f to x -> f(x - 1).
fn shift_matrix(ring: RingSpec, n: usize) -> ExactMatrix {
    let rows: Vec<Vec<(usize, Scalar)>> = (0..n).map(|i| vec![((i + 1) % n, ring.one())]).collect();
    ExactMatrix::from_sparse_rows(ring, n, n, rows)
}

/// The difference operator and the summation functional on functions on
/// Z/n, with their two defining identities checked at construction: the
/// difference of a constant vanishes, and every difference sums to zero.
#[derive(Debug, Clone)]
pub struct DeltaSystem {
    pub n: usize,
    pub ring: RingSpec,
    pub delta: ExactMatrix,
    pub haar: Vec<Scalar>,
}

impl DeltaSystem {
    pub fn new(ring: RingSpec, n: usize) -> DeltaSystem {
        assert!(n >= 1, "level must be positive");
        let delta = ExactMatrix::identity(ring, n).sub(&shift_matrix(ring, n));
        let haar = vec![ring.one(); n];
        let sys = DeltaSystem { n, ring, delta, haar };
        let ones = vec![ring.one(); n];
        assert!(
            sys.apply(&ones).iter().all(|c| ring.is_zero(c)),
            "difference of a constant must vanish"
        );
        for i in 0..n {
            let mut e = vec![ring.zero(); n];
            e[i] = ring.one();
            assert!(
                ring.is_zero(&sys.integrate(&sys.apply(&e))),
                "every difference must sum to zero"
            );
        }
        sys
    }

    /// The difference f(x) - f(x - 1), indices read mod n.
    pub fn apply(&self, f: &[Scalar]) -> Vec<Scalar> {
        self.delta.row_vec_mul(f)
    }

    /// The sum of all values: the invariant functional.
    pub fn integrate(&self, f: &[Scalar]) -> Scalar {
        let mut acc = self.ring.zero();
        for c in f {
            acc = self.ring.add(&acc, c);
        }
        acc
    }
}

/// Kernel and cokernel shapes of the difference operator on functions on
/// Z/n: the fixed functions are the constants, and the invariant functional
/// identifies the cokernel with the scalars.
pub fn ga_cohomology(ring: RingSpec, n: usize) -> (QuotientShape, QuotientShape) {
    let sys = DeltaSystem::new(ring, n);
    let ker = shape_of_submodule(&kernel(&sys.delta));
    let full = Submodule::full(ring, n);
    let coker = quotient_shape(&full, &image(&sys.delta))
        .expect("image lies in the full space")
        .shape;
    (ker, coker)
}

/// Matrix of the pullback of functions along the reduction map
/// Z/n_big -> Z/n_small; row h is the indicator of the residue class h.
pub fn level_pullback(ring: RingSpec, n_small: usize, n_big: usize) -> ExactMatrix {
    assert!(n_small >= 1 && n_big.is_multiple_of(n_small), "levels must be nested");
    let rows: Vec<Vec<(usize, Scalar)>> = (0..n_small)
        .map(|h| (0..n_big).filter(|x| x % n_small == h).map(|x| (x, ring.one())).collect())
        .collect();
    ExactMatrix::from_sparse_rows(ring, n_small, n_big, rows)
}

/// A function on Z/(n*p) whose difference is the pullback of `f`, working
/// over the prime field with p elements: the running sum x -> sum of
/// f(0..=x mod n) is well defined at level n*p because p copies of the full
/// period sum to zero mod p.  The identity is re-checked before returning.
pub fn antiderivative(ring: RingSpec, n: usize, f: &[Scalar]) -> Vec<Scalar> {
    let (p, e) = ring
        .prime_and_exp()
        .expect("antiderivatives are taken over a prime field");
    assert_eq!(e, 1, "antiderivatives are taken over a prime field");
    assert_eq!(f.len(), n, "function must live on Z/n");
    let big = n * (p as usize);
    let mut values = Vec::with_capacity(big);
    let mut acc = ring.zero();
    for x in 0..big {
        acc = ring.add(&acc, &f[x % n]);
        values.push(acc.clone());
    }
    let sys = DeltaSystem::new(ring, big);
    let pulled = level_pullback(ring, n, big).row_vec_mul(f);
    assert_eq!(
        sys.apply(&values),
        pulled,
        "difference of the running sum must recover the pullback"
    );
    values
}

/// Kernel and cokernel shapes of the operator (translation) tensor
/// (unipotent coefficient action) minus the identity, on functions on Z/n
/// with values in the degree-k symmetric-power module.  The twist index j
/// is accepted for symmetry with the coefficient family; a unipotent has
/// determinant one, so it never changes the matrices.
pub fn unipotent_twisted_cohomology(
    ring: RingSpec,
    n: usize,
    k: u32,
    j: i64,
) -> (QuotientShape, QuotientShape) {
    let _ = j;
    let rho = sym_matrix(ring, k, [1, 1, 0, 1]);
    let rank = n * (k + 1) as usize;
    let op = shift_matrix(ring, n)
        .kron(&rho)
        .sub(&ExactMatrix::identity(ring, rank));
    let ker = shape_of_submodule(&kernel(&op));
    let full = Submodule::full(ring, rank);
    let coker = quotient_shape(&full, &image(&op))
        .expect("image lies in the full space")
        .shape;
    (ker, coker)
}
