//! Representations induced from upper-triangular subgroups.
//!
//! Two constructions live here.  `algebraic_induce` builds, by exact linear
//! algebra over the rationals, the space of polynomials in the entries of a
//! generic 2x2 matrix that transform under the upper-triangular subgroup by a
//! prescribed pair of torus weights; the group then acts on that space by
//! right substitution and the result is packaged with explicit generator
//! matrices.  `smooth_induce_dimension` counts the functions on a finite
//! matrix group that transform on the left by a character of its
//! upper-triangular subgroup, building the solution space explicitly and
//! re-checking the transformation law exhaustively.

use std::collections::HashMap;

use crate::group::{GroupError, GroupKind, GroupTable};
use crate::linalg::{image, inverse, kernel, Submodule};
use crate::matrix::ExactMatrix;
use crate::module::GammaModule;
use crate::ring::{RingSpec, Scalar};

/// Largest torus weight magnitude accepted by [`algebraic_induce`].
pub const MAX_WEIGHT: i64 = 8;

#[derive(Debug, thiserror::Error)]
pub enum InductionError {
    #[error("torus weights ({0}, {1}) exceed the supported magnitude {MAX_WEIGHT}")]
    WeightOutOfRange(i64, i64),
    #[error("representation dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("character is not multiplicative: ({0}, {1}) * ({2}, {3})")]
    CharacterNotMultiplicative(u64, u64, u64, u64),
    #[error("character value at ({0}, {1}) is not a unit")]
    CharacterValueNotUnit(u64, u64),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A representation presented by explicit matrices for the two standard
/// generators, together with human-readable labels for the basis vectors.
#[derive(Debug, Clone)]
pub struct AlgebraicRep {
    pub dimension: usize,
    pub mat_s: ExactMatrix,
    pub mat_u: ExactMatrix,
    pub basis_labels: Vec<String>,
}

impl AlgebraicRep {
    /// Repackage a coefficient module as a bare matrix representation.
    pub fn from_module(m: &GammaModule) -> AlgebraicRep {
        AlgebraicRep {
            dimension: m.rank(),
            mat_s: m.mat_s().clone(),
            mat_u: m.mat_u().clone(),
            basis_labels: (0..m.rank()).map(|i| format!("e{i}")).collect(),
        }
    }

    /// Check the defining relations of the group on the generator matrices:
    /// the order-four generator squared equals the order-six generator cubed,
    /// and its fourth power is the identity.
    pub fn verify_relations(&self) {
        let n = self.dimension;
        assert_eq!(self.mat_s.rows(), n);
        assert_eq!(self.mat_u.rows(), n);
        if n == 0 {
            return;
        }
        let ring = self.mat_s.ring();
        let s2 = self.mat_s.mul(&self.mat_s);
        let u2 = self.mat_u.mul(&self.mat_u);
        let u3 = u2.mul(&self.mat_u);
        assert_eq!(s2, u3, "squared and cubed generators must agree");
        assert_eq!(
            s2.mul(&s2),
            ExactMatrix::identity(ring, n),
            "order-four generator relation"
        );
    }
}

/// Exponent vector of a monomial in the four matrix-entry symbols x, y, z, t
/// (x, y is the top row of the generic matrix; z, t the bottom row).
type Expo = [u32; 4];

/// All monomials of total degree at most `max_degree`, in a deterministic
/// order: degree ascending, and within a degree the bottom-row block z^k,
/// z^{k-1}t, ..., t^k appears with the t-exponent ascending.
fn window_monomials(max_degree: u32) -> (Vec<Expo>, HashMap<Expo, usize>) {
    let mut list = Vec::new();
    for d in 0..=max_degree {
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                for g in (0..=d - a - b).rev() {
                    list.push([a, b, g, d - a - b - g]);
                }
            }
        }
    }
    let index = list
        .iter()
        .enumerate()
        .map(|(i, e)| (*e, i))
        .collect::<HashMap<_, _>>();
    (list, index)
}

/// Expand one monomial after substituting each symbol by a linear
/// combination of the four symbols; `subst[i]` lists the coefficients of the
/// image of symbol i.  The substitution preserves total degree.
fn substitute_monomial(
    ring: RingSpec,
    expo: &Expo,
    subst: &[[i64; 4]; 4],
) -> HashMap<Expo, Scalar> {
    let mut acc: HashMap<Expo, Scalar> = HashMap::new();
    acc.insert([0; 4], ring.one());
    for sym in 0..4 {
        for _ in 0..expo[sym] {
            let mut next: HashMap<Expo, Scalar> = HashMap::new();
            for (e, c) in &acc {
                for (j, &coeff) in subst[sym].iter().enumerate() {
                    if coeff == 0 {
                        continue;
                    }
                    let mut e2 = *e;
                    e2[j] += 1;
                    let term = ring.mul(c, &ring.from_i64(coeff));
                    let slot = next.entry(e2).or_insert_with(|| ring.zero());
                    *slot = ring.add(slot, &term);
                }
            }
            acc = next;
        }
    }
    acc.retain(|_, c| !ring.is_zero(c));
    acc
}

/// For each row of `basis` (a polynomial in window coordinates), the row of
/// its image under `subst` minus `factor` times itself.  Vectors whose rows
/// all vanish here satisfy the twisted-equivariance constraint exactly.
fn constraint_rows(
    ring: RingSpec,
    basis: &ExactMatrix,
    monos: &[Expo],
    index: &HashMap<Expo, usize>,
    subst: &[[i64; 4]; 4],
    factor: &Scalar,
) -> ExactMatrix {
    if basis.rows() == 0 {
        return ExactMatrix::zeros(ring, 0, monos.len());
    }
    let mut rows = Vec::with_capacity(basis.rows());
    for i in 0..basis.rows() {
        let v = basis.dense_row(i);
        let mut out = vec![ring.zero(); monos.len()];
        for (m, c) in v.iter().enumerate() {
            if ring.is_zero(c) {
                continue;
            }
            for (e, q) in substitute_monomial(ring, &monos[m], subst) {
                let j = index[&e];
                out[j] = ring.add(&out[j], &ring.mul(c, &q));
            }
            out[m] = ring.sub(&out[m], &ring.mul(factor, c));
        }
        rows.push(out);
    }
    ExactMatrix::from_rows(ring, rows)
}

/// Integer power as an exact scalar; negative exponents invert the base.
fn int_pow(ring: RingSpec, base: i64, exp: i64) -> Scalar {
    let b = ring.from_i64(base);
    let mut acc = ring.one();
    for _ in 0..exp.unsigned_abs() {
        acc = ring.mul(&acc, &b);
    }
    if exp < 0 {
        ring.inv(&acc).expect("nonzero base")
    } else {
        acc
    }
}

/// Substitution sending the top row (x, y) to a*(x, y) + b*(z, t) and
/// scaling the bottom row by d: the effect of an upper-triangular matrix
/// with diagonal (a, d) acting on the left of the generic matrix.
fn borel_subst(a: i64, d: i64, b: i64) -> [[i64; 4]; 4] {
    [
        [a, 0, b, 0],
        [0, a, 0, b],
        [0, 0, d, 0],
        [0, 0, 0, d],
    ]
}

/// Substitution realizing right multiplication of the generic matrix by the
/// transpose of [[a, b], [c, d]]: each row (p, q) maps to (a*p + b*q,
/// c*p + d*q), which is how the group acts on the induced polynomials.
fn right_subst(g: &[i64; 4]) -> [[i64; 4]; 4] {
    let [a, b, c, d] = *g;
    [
        [a, b, 0, 0],
        [c, d, 0, 0],
        [0, 0, a, b],
        [0, 0, c, d],
    ]
}

fn monomial_label(e: &Expo) -> String {
    const NAMES: [&str; 4] = ["x", "y", "z", "t"];
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(NAMES[i].to_string()),
            _ => parts.push(format!("{}^{}", NAMES[i], k)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn polynomial_label(ring: RingSpec, det_power: i64, row: &[Scalar], monos: &[Expo]) -> String {
    let mut terms = Vec::new();
    for (m, c) in row.iter().enumerate() {
        if ring.is_zero(c) {
            continue;
        }
        let mono = monomial_label(&monos[m]);
        if ring.is_one(c) {
            terms.push(mono);
        } else if mono == "1" {
            terms.push(c.to_string());
        } else {
            terms.push(format!("{c}*{mono}"));
        }
    }
    let body = if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    };
    match det_power {
        0 => body,
        1 if body == "1" => "(xt-yz)".to_string(),
        p if body == "1" => format!("(xt-yz)^{p}"),
        1 => format!("(xt-yz)*({body})"),
        p => format!("(xt-yz)^{p}*({body})"),
    }
}

/// Triples (a, d, b) of upper-triangular samples whose joint constraint pins
/// the equivariant polynomials: two diagonal scalings with multiplicatively
/// independent entries, the basic shear, and one composite element.
const BOREL_SAMPLES: [(i64, i64, i64); 4] = [(2, 1, 0), (1, 3, 0), (1, 1, 1), (5, 7, 2)];

/// The polynomials P in the entries of a generic 2x2 matrix satisfying
/// P((x,y)*a + (z,t)*b, (z,t)*d) = a^r d^s P for upper-triangular samples,
/// after factoring P = (xt - yz)^r Q with Q polynomial.  Returns the group
/// representation on the solution space: dimension s - r + 1 when s >= r and
/// zero otherwise, with the group acting by right substitution twisted by
/// the r-th power of the determinant.
pub fn algebraic_induce(r: i64, s: i64) -> Result<AlgebraicRep, InductionError> {
    if r.abs() > MAX_WEIGHT || s.abs() > MAX_WEIGHT {
        return Err(InductionError::WeightOutOfRange(r, s));
    }
    let ring = RingSpec::Q;
    let gap = s - r;
    let width = u32::try_from(gap.max(0)).unwrap() + 2;
    let (monos, index) = window_monomials(width);

    // After dividing out the determinant factor, the constraint for the
    // sample (a, d, b) reads Q(image) = d^(s-r) Q.  The two diagonal samples
    // give single-entry rows, so solve them first and restrict the two shear
    // samples to that subspace; the intersection is the full constraint set.
    let full = ExactMatrix::identity(ring, monos.len());
    let mut stage1 = Vec::new();
    let mut stage2 = Vec::new();
    for &(a, d, b) in &BOREL_SAMPLES {
        let subst = borel_subst(a, d, b);
        let factor = int_pow(ring, d, gap);
        if b == 0 {
            stage1.push((subst, factor));
        } else {
            stage2.push((subst, factor));
        }
    }
    let c1 = constraint_rows(ring, &full, &monos, &index, &stage1[0].0, &stage1[0].1);
    let c2 = constraint_rows(ring, &full, &monos, &index, &stage1[1].0, &stage1[1].1);
    let diag_solutions = kernel(&c1.hstack(&c2));

    let solution = if diag_solutions.is_zero() {
        diag_solutions
    } else {
        let b1 = diag_solutions.basis();
        let c3 = constraint_rows(ring, b1, &monos, &index, &stage2[0].0, &stage2[0].1);
        let c4 = constraint_rows(ring, b1, &monos, &index, &stage2[1].0, &stage2[1].1);
        let coeffs = kernel(&c3.hstack(&c4));
        image(&coeffs.basis().mul(b1))
    };

    // The solution space must be exactly the span of the bottom-row
    // monomials of degree s - r; the window is two degrees wider, so any
    // spurious solution would be caught here.
    let expected_cols: Vec<usize> = if gap >= 0 {
        monos
            .iter()
            .enumerate()
            .filter(|(_, e)| e[0] == 0 && e[1] == 0 && i64::from(e[2] + e[3]) == gap)
            .map(|(i, _)| i)
            .collect()
    } else {
        Vec::new()
    };
    let expected = if expected_cols.is_empty() {
        Submodule::zero(ring, monos.len())
    } else {
        let rows = expected_cols
            .iter()
            .map(|&i| {
                let mut row = vec![ring.zero(); monos.len()];
                row[i] = ring.one();
                row
            })
            .collect();
        image(&ExactMatrix::from_rows(ring, rows))
    };
    assert!(
        solution.contains_submodule(&expected) && expected.contains_submodule(&solution),
        "equivariant solution space must match the bottom-row monomial family"
    );

    let dimension = solution.gens();
    if dimension == 0 {
        return Ok(AlgebraicRep {
            dimension: 0,
            mat_s: ExactMatrix::zeros(ring, 0, 0),
            mat_u: ExactMatrix::zeros(ring, 0, 0),
            basis_labels: Vec::new(),
        });
    }

    // Right substitution by a group element preserves the solution space;
    // express the image of each basis vector back in basis coordinates.
    let action = |g: &[i64; 4]| -> ExactMatrix {
        let subst = right_subst(g);
        let mut rows = Vec::with_capacity(dimension);
        for i in 0..dimension {
            let v = solution.basis().dense_row(i);
            let mut out = vec![ring.zero(); monos.len()];
            for (m, c) in v.iter().enumerate() {
                if ring.is_zero(c) {
                    continue;
                }
                for (e, q) in substitute_monomial(ring, &monos[m], &subst) {
                    let j = index[&e];
                    out[j] = ring.add(&out[j], &ring.mul(c, &q));
                }
            }
            rows.push(
                solution
                    .coords_of(&out)
                    .expect("group action preserves the solution space"),
            );
        }
        ExactMatrix::from_rows(ring, rows)
    };

    let rep = AlgebraicRep {
        dimension,
        mat_s: action(&[0, 1, -1, 0]),
        mat_u: action(&[0, 1, -1, 1]),
        basis_labels: (0..dimension)
            .map(|i| polynomial_label(ring, r, &solution.basis().dense_row(i), &monos))
            .collect(),
    };
    rep.verify_relations();
    Ok(rep)
}

/// An invertible matrix T with T * rho_A(g) = rho_B(g) * T for both
/// generators, if one exists; `None` when the homomorphism space contains no
/// invertible element, an error when the dimensions differ.
pub fn intertwiner(
    a: &AlgebraicRep,
    b: &AlgebraicRep,
) -> Result<Option<ExactMatrix>, InductionError> {
    if a.dimension != b.dimension {
        return Err(InductionError::DimensionMismatch(a.dimension, b.dimension));
    }
    let n = a.dimension;
    if n == 0 {
        return Ok(Some(ExactMatrix::zeros(RingSpec::Q, 0, 0)));
    }
    let ring = a.mat_s.ring();
    let id = ExactMatrix::identity(ring, n);

    // Rows of T concatenated form the unknown vector; T * A - B * T = 0
    // becomes vec(T) * (I (x) A - B^tr (x) I) = 0 for each generator.
    let block = |gen_a: &ExactMatrix, gen_b: &ExactMatrix| -> ExactMatrix {
        id.kron(gen_a).sub(&gen_b.transpose().kron(&id))
    };
    let system = block(&a.mat_s, &b.mat_s).hstack(&block(&a.mat_u, &b.mat_u));
    let homs = kernel(&system);
    if homs.is_zero() {
        return Ok(None);
    }

    let unflatten = |v: &[Scalar]| -> ExactMatrix {
        let rows = v.chunks(n).map(|c| c.to_vec()).collect();
        ExactMatrix::from_rows(ring, rows)
    };
    let mut candidates: Vec<Vec<Scalar>> = (0..homs.gens())
        .map(|i| homs.basis().dense_row(i))
        .collect();
    // A generic element of the homomorphism space is invertible whenever any
    // invertible one exists; try basis vectors first, then a weighted sum.
    let mut weighted = vec![ring.zero(); n * n];
    for (i, row) in candidates.clone().iter().enumerate() {
        let w = int_pow(ring, 2, i as i64);
        for (slot, c) in weighted.iter_mut().zip(row) {
            *slot = ring.add(slot, &ring.mul(&w, c));
        }
    }
    candidates.push(weighted);
    for v in candidates {
        let t = unflatten(&v);
        if inverse(&t).is_ok() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Dimension of the space of functions f on the finite matrix group of the
/// given kind and level with f(bg) = character(b) * f(g) for every
/// upper-triangular b, the character being read off the diagonal and
/// extended trivially across the unipotent part.  The solution space is
/// constructed explicitly and the transformation law re-verified.
pub fn smooth_induce_dimension(
    ring: RingSpec,
    kind: GroupKind,
    n: u64,
    character: &dyn Fn(u64, u64) -> Scalar,
) -> Result<usize, InductionError> {
    if n == 1 {
        return Ok(1);
    }
    let table = GroupTable::new(kind, n)?;

    // Collect the upper-triangular elements and the character value of each.
    let mut borel = Vec::new();
    let mut eta = HashMap::new();
    let mut diag_pairs = Vec::new();
    for g in 0..table.order() {
        let e = table.elem(g);
        if e[2] != 0 {
            continue;
        }
        let value = character(e[0], e[3]);
        if !ring.is_unit(&value) {
            return Err(InductionError::CharacterValueNotUnit(e[0], e[3]));
        }
        if e[1] == 0 {
            diag_pairs.push((e[0], e[3]));
        }
        borel.push(g);
        eta.insert(g, value);
    }

    // The extension is a character exactly when the diagonal values are
    // multiplicative; verify over every pair of occurring diagonal elements.
    for &(a1, d1) in &diag_pairs {
        for &(a2, d2) in &diag_pairs {
            let lhs = character((a1 * a2) % n, (d1 * d2) % n);
            let rhs = ring.mul(&character(a1, d1), &character(a2, d2));
            if lhs != rhs {
                return Err(InductionError::CharacterNotMultiplicative(a1, d1, a2, d2));
            }
        }
    }
    // The full extension must itself be multiplicative (the unipotent part
    // is normal, so this follows, but it is cheap to confirm outright).
    for &b1 in &borel {
        for &b2 in &borel {
            let prod = table.mul(b1, b2);
            assert_eq!(
                eta[&prod],
                ring.mul(&eta[&b1], &eta[&b2]),
                "extended character must be a homomorphism"
            );
        }
    }

    // Left translation by the subgroup is free, so each orbit carries a
    // one-dimensional space of solutions: f(b * rep) = eta(b).
    let mut coset_of = vec![usize::MAX; table.order()];
    let mut reps = Vec::new();
    for g in 0..table.order() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(g);
        for &b in &borel {
            let bg = table.mul(b, g);
            assert!(
                coset_of[bg] == usize::MAX || coset_of[bg] == id,
                "orbits must not merge"
            );
            coset_of[bg] = id;
        }
    }

    // Re-verify the transformation law on an explicit basis function of the
    // first orbit against every upper-triangular element.
    if let Some(&rep0) = reps.first() {
        let mut f = vec![ring.zero(); table.order()];
        for &b in &borel {
            f[table.mul(b, rep0)] = eta[&b].clone();
        }
        for &b in &borel {
            for g in 0..table.order() {
                if coset_of[g] != 0 {
                    continue;
                }
                let lhs = &f[table.mul(b, g)];
                let rhs = ring.mul(&eta[&b], &f[g]);
                assert_eq!(*lhs, rhs, "induced function must transform by the character");
            }
        }
    }
    Ok(reps.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::GammaModule;

    #[test]
    fn degree_two_family_matches_symmetric_square() {
        let rep = algebraic_induce(0, 2).unwrap();
        assert_eq!(rep.dimension, 3);
        assert_eq!(rep.basis_labels, vec!["z^2", "z*t", "t^2"]);
        let sym = AlgebraicRep::from_module(&GammaModule::sym_power(RingSpec::Q, 2, 0).unwrap());
        assert_eq!(rep.mat_s, sym.mat_s);
        assert_eq!(rep.mat_u, sym.mat_u);
        let t = intertwiner(&rep, &sym).unwrap().expect("isomorphic");
        assert!(inverse(&t).is_ok());
    }

    #[test]
    fn equal_weights_give_the_determinant_character() {
        let rep = algebraic_induce(1, 1).unwrap();
        assert_eq!(rep.dimension, 1);
        assert_eq!(rep.basis_labels, vec!["(xt-yz)"]);
        assert_eq!(rep.mat_s, ExactMatrix::identity(RingSpec::Q, 1));
        assert_eq!(rep.mat_u, ExactMatrix::identity(RingSpec::Q, 1));
        let twice = algebraic_induce(2, 2).unwrap();
        assert_eq!(twice.basis_labels, vec!["(xt-yz)^2"]);
    }

    #[test]
    fn reversed_weights_leave_no_solutions() {
        assert_eq!(algebraic_induce(1, 0).unwrap().dimension, 0);
        assert_eq!(algebraic_induce(3, 1).unwrap().dimension, 0);
        assert_eq!(algebraic_induce(2, -2).unwrap().dimension, 0);
    }

    #[test]
    fn dimension_grows_linearly_in_the_weight_gap() {
        for gap in 0..=4 {
            let from_zero = algebraic_induce(0, gap).unwrap();
            assert_eq!(from_zero.dimension, gap as usize + 1);
            let shifted = algebraic_induce(-1, gap - 1).unwrap();
            assert_eq!(shifted.dimension, gap as usize + 1);
        }
    }

    #[test]
    fn negative_weight_twist_still_matches_the_plain_family() {
        let twisted = algebraic_induce(-1, 1).unwrap();
        assert_eq!(twisted.dimension, 3);
        let plain = algebraic_induce(0, 2).unwrap();
        let t = intertwiner(&twisted, &plain).unwrap().expect("isomorphic");
        assert!(inverse(&t).is_ok());
    }

    #[test]
    fn weight_bound_is_enforced() {
        assert!(matches!(
            algebraic_induce(9, 2),
            Err(InductionError::WeightOutOfRange(9, 2))
        ));
    }

    #[test]
    fn intertwiner_rejects_mismatched_dimensions() {
        let a = algebraic_induce(0, 2).unwrap();
        let b = algebraic_induce(0, 1).unwrap();
        assert!(matches!(
            intertwiner(&a, &b),
            Err(InductionError::DimensionMismatch(3, 2))
        ));
    }

    #[test]
    fn intertwiner_distinguishes_nonisomorphic_representations() {
        let sym = AlgebraicRep::from_module(&GammaModule::sym_power(RingSpec::Q, 2, 0).unwrap());
        let triv = GammaModule::trivial(RingSpec::Q);
        let pair = GammaModule::direct_sum(&triv, &triv).unwrap();
        let flat = AlgebraicRep::from_module(&GammaModule::direct_sum(&pair, &triv).unwrap());
        assert!(intertwiner(&sym, &flat).unwrap().is_none());
    }

    #[test]
    fn borel_orbit_counts_match_known_function_spaces() {
        let ring = RingSpec::Q;
        let trivial = |_: u64, _: u64| RingSpec::Q.one();
        assert_eq!(
            smooth_induce_dimension(ring, GroupKind::GL2, 3, &trivial).unwrap(),
            4
        );
        assert_eq!(
            smooth_induce_dimension(ring, GroupKind::SL2, 4, &trivial).unwrap(),
            6
        );
        assert_eq!(
            smooth_induce_dimension(ring, GroupKind::GL2, 1, &trivial).unwrap(),
            1
        );
    }

    #[test]
    fn sign_character_keeps_the_orbit_count() {
        let ring = RingSpec::Q;
        let sign = |a: u64, d: u64| {
            let flip = |v: u64| if v == 2 { -1 } else { 1 };
            RingSpec::Q.from_i64(flip(a) * flip(d))
        };
        assert_eq!(
            smooth_induce_dimension(ring, GroupKind::GL2, 3, &sign).unwrap(),
            4
        );
    }

    #[test]
    fn nonmultiplicative_character_is_rejected() {
        let ring = RingSpec::Q;
        let broken = |a: u64, _: u64| RingSpec::Q.from_i64(a as i64);
        assert!(matches!(
            smooth_induce_dimension(ring, GroupKind::GL2, 3, &broken),
            Err(InductionError::CharacterNotMultiplicative(..))
        ));
    }

    #[test]
    fn orbit_count_times_subgroup_order_is_the_group_order() {
        let ring = RingSpec::Q;
        let trivial = |_: u64, _: u64| RingSpec::Q.one();
        for kind in [GroupKind::SL2, GroupKind::GL2] {
            for n in 2..=8u64 {
                let table = GroupTable::new(kind, n).unwrap();
                let borel_size = (0..table.order())
                    .filter(|&g| table.elem(g)[2] == 0)
                    .count();
                let dim = smooth_induce_dimension(ring, kind, n, &trivial).unwrap();
                assert_eq!(dim * borel_size, table.order(), "{kind:?} level {n}");
            }
        }
    }
}
