//! Coefficient modules: finite-rank exact-arithmetic representations of the
//! two standard torsion generators, closed under duals, tensor products,
//! direct sums, and passage to the part where the central element acts
//! trivially.  Vectors are rows and operators act on the right, so words in
//! the generators compose left to right.

use std::sync::Arc;

use thiserror::Error;

use crate::group::{GroupError, GroupKind, GroupTable};
use crate::linalg::{inverse, kernel};
use crate::matrix::ExactMatrix;
use crate::ring::{RingSpec, Scalar};

/// Hard cap on module rank; everything in the test battery stays well below.
pub const RANK_CAP: usize = 20_000;

/// Hard cap on symmetric-power degree.
pub const MAX_SYM_DEGREE: u32 = 24;

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("rank {rank} exceeds cap {RANK_CAP}")]
    RankCap { rank: usize },
    #[error("symmetric power degree {0} exceeds cap {MAX_SYM_DEGREE}")]
    BadSymDegree(u32),
}

/// Inclusion/projection pair recorded when a module is built as the
/// central-invariant part of an ambient module.
#[derive(Debug, Clone)]
pub struct PlusEmbedding {
    /// Rows are the chosen basis of the invariant part, in ambient coordinates.
    pub inclusion: ExactMatrix,
    /// Averaging projector from ambient coordinates onto that basis.
    pub projection: ExactMatrix,
}

/// A right module over the group ring: matrices for the order-four generator
/// `s` and the order-six generator `u`, with the relations `s^4 = 1` and
/// `s^2 = u^3` checked at construction time.
pub struct GammaModule {
    ring: RingSpec,
    rank: usize,
    label: String,
    mat_s: ExactMatrix,
    mat_u: ExactMatrix,
    mat_i: ExactMatrix,
    group: Option<Arc<GroupTable>>,
    plus_embed: Option<Box<PlusEmbedding>>,
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut out: i64 = 1;
    for i in 0..k.min(n - k) {
        out = out * (n - i) as i64 / (i + 1) as i64;
    }
    out
}

impl GammaModule {
    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn mat_s(&self) -> &ExactMatrix {
        &self.mat_s
    }

    pub fn mat_u(&self) -> &ExactMatrix {
        &self.mat_u
    }

    /// Matrix of the central element (the square of `s`).
    pub fn mat_i(&self) -> &ExactMatrix {
        &self.mat_i
    }

    /// Element table, present only on plain function modules.
    pub fn group(&self) -> Option<&Arc<GroupTable>> {
        self.group.as_ref()
    }

    /// Embedding data, present only on invariant-part modules.
    pub fn plus_embedding(&self) -> Option<&PlusEmbedding> {
        self.plus_embed.as_deref()
    }

    /// Check the defining relations of the generator matrices.
    pub fn verify_presentation(&self) -> bool {
        let id = ExactMatrix::identity(self.ring, self.rank);
        let s2 = self.mat_s.mul(&self.mat_s);
        let u3 = self.mat_u.mul(&self.mat_u).mul(&self.mat_u);
        s2 == u3 && s2.mul(&s2) == id && self.mat_i == s2
    }

    fn assemble(
        ring: RingSpec,
        label: String,
        mat_s: ExactMatrix,
        mat_u: ExactMatrix,
        group: Option<Arc<GroupTable>>,
        plus_embed: Option<Box<PlusEmbedding>>,
    ) -> Result<GammaModule, ModuleError> {
        let rank = mat_s.rows();
        if rank > RANK_CAP {
            return Err(ModuleError::RankCap { rank });
        }
        let mat_i = mat_s.mul(&mat_s);
        let m = GammaModule {
            ring,
            rank,
            label,
            mat_s,
            mat_u,
            mat_i,
            group,
            plus_embed,
        };
        assert!(
            m.verify_presentation(),
            "generator matrices for {} violate the presentation",
            m.label
        );
        Ok(m)
    }

    /// Rank-one module with both generators acting as the identity.
    pub fn trivial(ring: RingSpec) -> GammaModule {
        GammaModule::assemble(
            ring,
            "Triv".to_string(),
            ExactMatrix::identity(ring, 1),
            ExactMatrix::identity(ring, 1),
            None,
            None,
        )
        .expect("rank one is always in range")
    }

    /// Degree-k symmetric power of the standard rank-two module, twisted by
    /// the j-th power of the determinant.  The twist acts trivially here
    /// because both generators have determinant one; it is kept as part of
    /// the label so expressions round-trip.
    pub fn sym_power(ring: RingSpec, k: u32, j: i64) -> Result<GammaModule, ModuleError> {
        if k > MAX_SYM_DEGREE {
            return Err(ModuleError::BadSymDegree(k));
        }
        let mat = |g: [i64; 4]| sym_matrix(ring, k, g);
        GammaModule::assemble(
            ring,
            format!("Sym({},{})", k, j),
            mat([0, 1, -1, 0]),
            mat([0, 1, -1, 1]),
            None,
            None,
        )
    }

    /// Functions on the full level-n group, with the generators acting by
    /// left translation on the argument.
    pub fn functions(ring: RingSpec, kind: GroupKind, n: u64) -> Result<GammaModule, ModuleError> {
        let table = Arc::new(GroupTable::new(kind, n)?);
        let mat = |g: [i64; 4]| translation_matrix(ring, &table, g);
        GammaModule::assemble(
            ring,
            format!("Fun({},{})", kind.label(), n),
            mat([0, 1, -1, 0]),
            mat([0, 1, -1, 1]),
            Some(table),
            None,
        )
    }

    /// Functions on the quotient of the level-n group by the subgroup
    /// generated by the given matrices (acting on cosets gK by left
    /// translation).
    pub fn coset_functions(
        ring: RingSpec,
        kind: GroupKind,
        n: u64,
        gens: &[[i64; 4]],
    ) -> Result<GammaModule, ModuleError> {
        let table = GroupTable::new(kind, n)?;
        let gen_idx: Vec<usize> = gens
            .iter()
            .map(|g| table.reduce(g))
            .collect::<Result<_, _>>()?;
        let subgroup = table.subgroup_closure(&gen_idx);
        let (coset_of, reps) = table.left_cosets(&subgroup);
        let rank = reps.len();
        let mat = |g: [i64; 4]| {
            let gi = table.reduce(&g).expect("generator reduces");
            let g_inv = table.inverse(gi);
            let rows: Vec<Vec<(usize, Scalar)>> = reps
                .iter()
                .map(|&r| vec![(coset_of[table.mul(g_inv, r)], ring.one())])
                .collect();
            ExactMatrix::from_sparse_rows(ring, rank, rank, rows)
        };
        let gens_label: Vec<String> = gens
            .iter()
            .map(|g| {
                let r = table.reduce(g).expect("generator reduces");
                let e = table.elem(r);
                format!("[[{},{}],[{},{}]]", e[0], e[1], e[2], e[3])
            })
            .collect();
        GammaModule::assemble(
            ring,
            format!("Coset({},{};{})", kind.label(), n, gens_label.join(",")),
            mat([0, 1, -1, 0]),
            mat([0, 1, -1, 1]),
            None,
            None,
        )
    }

    /// Matrix of right translation by the table element with the given index.
    /// Only available on plain function modules; commutes with the module
    /// structure because the two translations act on opposite sides.
    pub fn right_translation(&self, elem: usize) -> ExactMatrix {
        let table = self
            .group
            .as_ref()
            .expect("right translation requires a plain function module");
        let k_inv = table.inverse(elem);
        let rows: Vec<Vec<(usize, Scalar)>> = (0..self.rank)
            .map(|g| vec![(table.mul(g, k_inv), self.ring.one())])
            .collect();
        ExactMatrix::from_sparse_rows(self.ring, self.rank, self.rank, rows)
    }

    /// Tensor product, with the generators acting diagonally.
    pub fn tensor(a: &GammaModule, b: &GammaModule) -> Result<GammaModule, ModuleError> {
        assert_eq!(a.ring, b.ring, "tensor factors must share a ring");
        let rank = a.rank * b.rank;
        if rank > RANK_CAP {
            return Err(ModuleError::RankCap { rank });
        }
        GammaModule::assemble(
            a.ring,
            format!("tensor({},{})", a.label, b.label),
            a.mat_s.kron(&b.mat_s),
            a.mat_u.kron(&b.mat_u),
            None,
            None,
        )
    }

    /// Direct sum, block diagonal action.
    pub fn direct_sum(a: &GammaModule, b: &GammaModule) -> Result<GammaModule, ModuleError> {
        assert_eq!(a.ring, b.ring, "summands must share a ring");
        GammaModule::assemble(
            a.ring,
            format!("sum({},{})", a.label, b.label),
            a.mat_s.direct_sum(&b.mat_s),
            a.mat_u.direct_sum(&b.mat_u),
            None,
            None,
        )
    }

    /// Contragredient module: generators act by transpose inverse, so the
    /// natural pairing (row dot row) satisfies <x g, y g> = <x, y>.
    pub fn dual(m: &GammaModule) -> GammaModule {
        let t = |mat: &ExactMatrix| {
            inverse(mat)
                .expect("generator matrices are invertible")
                .transpose()
        };
        GammaModule::assemble(
            m.ring,
            format!("dual({})", m.label),
            t(&m.mat_s),
            t(&m.mat_u),
            None,
            None,
        )
        .expect("dual preserves rank")
    }

    /// Submodule where the central element acts trivially, as a standalone
    /// module in its own coordinates.  The chosen basis always has unit
    /// pivots (the central element acts by a signed permutation for every
    /// constructor above), so coordinates are honest and the averaging
    /// projector is defined; this is asserted.
    pub fn plus_part(m: &GammaModule) -> GammaModule {
        let ring = m.ring;
        let id = ExactMatrix::identity(ring, m.rank);
        let fixed = kernel(&m.mat_i.sub(&id));
        assert!(
            fixed.pivots().iter().all(|&(_, v)| v == 0),
            "invariant part of {} is not a free direct summand",
            m.label
        );
        let b = fixed.basis().clone();
        let np = b.rows();
        let induce = |mat: &ExactMatrix| {
            let rows: Vec<Vec<Scalar>> = (0..np)
                .map(|i| {
                    let img = mat.row_vec_mul(&b.dense_row(i));
                    fixed
                        .coords_of(&img)
                        .expect("invariant part is stable under the action")
                })
                .collect();
            ExactMatrix::from_rows(ring, rows)
        };
        let half = ring.inv(&ring.from_i64(2)).expect("2 is a unit");
        let averager = id.add(&m.mat_i).scale(&half);
        let proj_rows: Vec<Vec<Scalar>> = (0..m.rank)
            .map(|k| {
                let img = averager.dense_row(k);
                fixed
                    .coords_of(&img)
                    .expect("averaging lands in the invariant part")
            })
            .collect();
        let projection = ExactMatrix::from_rows(ring, proj_rows);
        GammaModule::assemble(
            ring,
            format!("plus({})", m.label),
            induce(&m.mat_s),
            induce(&m.mat_u),
            None,
            Some(Box::new(PlusEmbedding {
                inclusion: b,
                projection,
            })),
        )
        .expect("invariant part preserves rank bound")
    }
}

/// Action of an integer matrix on degree-k monomials in two symbols:
/// the first symbol maps to (a, b) and the second to (c, d), rows and
/// columns indexed by the exponent of the second symbol.
pub(crate) fn sym_matrix(ring: RingSpec, k: u32, g: [i64; 4]) -> ExactMatrix {
    let [a, b, c, d] = g;
    let n = (k + 1) as usize;
    let mut rows = vec![vec![ring.zero(); n]; n];
    for t in 0..=k {
        // Expand (a x + b y)^(k-t) * (c x + d y)^t by exponent of y.
        let mut coeffs = vec![0i64; n];
        for i in 0..=(k - t) {
            for j in 0..=t {
                let term = binomial(k - t, i)
                    * binomial(t, j)
                    * a.pow(k - t - i)
                    * b.pow(i)
                    * c.pow(t - j)
                    * d.pow(j);
                coeffs[(i + j) as usize] += term;
            }
        }
        for (col, &v) in coeffs.iter().enumerate() {
            rows[t as usize][col] = ring.from_i64(v);
        }
    }
    ExactMatrix::from_rows(ring, rows)
}

/// Permutation matrix of left translation on the group table: the basis
/// vector at g is sent to the one at red(gamma)^{-1} g.
fn translation_matrix(ring: RingSpec, table: &GroupTable, g: [i64; 4]) -> ExactMatrix {
    let gi = table.reduce(&g).expect("generator reduces to the level");
    let g_inv = table.inverse(gi);
    let rows: Vec<Vec<(usize, Scalar)>> = (0..table.order())
        .map(|x| vec![(table.mul(g_inv, x), ring.one())])
        .collect();
    ExactMatrix::from_sparse_rows(ring, table.order(), table.order(), rows)
}

/// Pullback along reduction from the big level to the small level, as a
/// matrix from small-level functions to big-level functions.  Commutes with
/// both generator actions.
pub fn level_inclusion(
    ring: RingSpec,
    kind: GroupKind,
    n_small: u64,
    n_big: u64,
) -> Result<ExactMatrix, ModuleError> {
    assert!(
        n_big.is_multiple_of(n_small),
        "inclusion requires the small level to divide the big one"
    );
    let small = GroupTable::new(kind, n_small)?;
    let big = GroupTable::new(kind, n_big)?;
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); small.order()];
    for g in 0..big.order() {
        let e = big.elem(g);
        let red = [
            (e[0] % n_small) as i64,
            (e[1] % n_small) as i64,
            (e[2] % n_small) as i64,
            (e[3] % n_small) as i64,
        ];
        let h = small.reduce(&red).expect("reduction is a group map");
        rows[h].push((g, ring.one()));
    }
    Ok(ExactMatrix::from_sparse_rows(
        ring,
        small.order(),
        big.order(),
        rows,
    ))
}
