//! Canonical row reduction and submodule arithmetic.
//!
//! Over Q the canonical form is the reduced row echelon form; over Z/p^e it
//! is the Howell form: pivots are powers of p, entries above a pivot are
//! reduced modulo that power, and for every pivot of positive valuation a
//! completion row (p^(e-v) times the pivot row) is fed back into the sweep
//! so that the form spans every element of the row module, torsion included.
//! Both forms are unique for the row span, so submodule equality is matrix
//! equality of canonical bases.
//!
//! Row vectors act on the left (`x * A`); `kernel` returns {x : x * A = 0}.

// Elimination sweeps index several parallel structures by pivot position;
// indexed loops are clearer than iterator chains here.
#![allow(clippy::needless_range_loop)]

use crate::matrix::ExactMatrix;
use crate::ring::{RingSpec, Scalar};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("inner submodule is not contained in the ambient submodule")]
    NotContained,
    #[error("matrix is not invertible")]
    NotInvertible,
}

type SparseRow = Vec<(usize, Scalar)>;

fn row_scale(ring: &RingSpec, row: &SparseRow, s: &Scalar) -> SparseRow {
    row.iter()
        .filter_map(|(c, v)| {
            let w = ring.mul(v, s);
            if ring.is_zero(&w) {
                None
            } else {
                Some((*c, w))
            }
        })
        .collect()
}

/// a - q * b, both sorted sparse rows.
fn row_sub_scaled(ring: &RingSpec, a: &SparseRow, q: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|(c, _)| *c);
        let cb = b.get(j).map(|(c, _)| *c);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = ring.sub(&a[i].1, &ring.mul(q, &b[j].1));
                if !ring.is_zero(&v) {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push((x, a[i].1.clone()));
                i += 1;
            }
            (Some(_), Some(_)) | (None, Some(_)) => {
                let v = ring.neg(&ring.mul(q, &b[j].1));
                if !ring.is_zero(&v) {
                    out.push((b[j].0, v));
                }
                j += 1;
            }
            (Some(x), None) => {
                out.push((x, a[i].1.clone()));
                i += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

struct EngineRow {
    main: SparseRow,
    track: Option<SparseRow>,
}

struct EngineOut {
    /// Retired pivot rows in pivot-column order.
    rows: Vec<SparseRow>,
    /// (pivot column, pivot valuation) per retired row; valuation 0 over Q.
    pivots: Vec<(usize, u32)>,
    tracks: Vec<SparseRow>,
    /// Tracks of rows that reduced to zero (id order).
    zero_tracks: Vec<SparseRow>,
    /// Number of padding rows consumed by completion rows.
    completions: usize,
}

/// Shared sweep for RREF (Q) and Howell form (Z/p^e).
fn engine(ring: &RingSpec, input: Vec<SparseRow>, ncols: usize, track: bool) -> EngineOut {
    let m = input.len();
    let zpe = ring.prime_and_exp();
    let mut rows: Vec<Option<EngineRow>> = input
        .into_iter()
        .enumerate()
        .map(|(i, main)| {
            Some(EngineRow {
                main,
                track: if track { Some(vec![(i, ring.one())]) } else { None },
            })
        })
        .collect();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    let mut zero_ids: Vec<usize> = Vec::new();
    for i in 0..m {
        match rows[i].as_ref().unwrap().main.first() {
            Some((c, _)) => buckets[*c].push(i),
            None => zero_ids.push(i),
        }
    }
    let mut completions = 0usize;
    let mut retired: Vec<usize> = Vec::new();
    let mut pivots: Vec<(usize, u32)> = Vec::new();

    for col in 0..ncols {
        let mut cand = std::mem::take(&mut buckets[col]);
        if cand.is_empty() {
            continue;
        }
        cand.sort_unstable();
        // Pivot choice: minimal valuation (Z/p^e), then fewest entries, then
        // lowest id. Deterministic, and over Q valuations are all zero.
        let pivot_id = *cand
            .iter()
            .min_by_key(|&&id| {
                let r = rows[id].as_ref().unwrap();
                let lead = &r.main.first().unwrap().1;
                let v = match zpe {
                    Some(_) => ring.valuation(lead),
                    None => 0,
                };
                (v, r.main.len(), id)
            })
            .unwrap();
        // Normalize the pivot entry to 1 (Q) or p^v (Z/p^e).
        let (piv_main, piv_track, piv_val) = {
            let r = rows[pivot_id].as_mut().unwrap();
            let lead = r.main.first().unwrap().1.clone();
            let (scale, v) = match zpe {
                None => (ring.inv(&lead).unwrap(), 0),
                Some(_) => {
                    let v = ring.valuation(&lead);
                    (ring.inv(&ring.unit_part(&lead)).unwrap(), v)
                }
            };
            r.main = row_scale(ring, &r.main, &scale);
            if let Some(t) = &r.track {
                r.track = Some(row_scale(ring, t, &scale));
            }
            (r.main.clone(), r.track.clone(), v)
        };
        for &id in &cand {
            if id == pivot_id {
                continue;
            }
            let r = rows[id].as_mut().unwrap();
            let lead = r.main.first().unwrap().1.clone();
            let q = match zpe {
                None => lead,
                Some(_) => ring.div_prime_power(&lead, piv_val),
            };
            r.main = row_sub_scaled(ring, &r.main, &q, &piv_main);
            if let Some(t) = &r.track {
                r.track = Some(row_sub_scaled(ring, t, &q, piv_track.as_ref().unwrap()));
            }
            match r.main.first() {
                Some((c, _)) => buckets[*c].push(id),
                None => zero_ids.push(id),
            }
        }
        if let Some((_, e)) = zpe {
            if piv_val > 0 {
                let factor = ring.prime_power(e - piv_val);
                let comp_main = row_scale(ring, &piv_main, &factor);
                if let Some(c) = comp_main.first().map(|(c, _)| *c) {
                    let comp_track = piv_track.as_ref().map(|t| {
                        let mut ct = row_scale(ring, t, &factor);
                        let pad_col = m + completions;
                        ct.push((pad_col, ring.one()));
                        ct.sort_by_key(|(c, _)| *c);
                        ct
                    });
                    if track {
                        completions += 1;
                    }
                    let new_id = rows.len();
                    rows.push(Some(EngineRow {
                        main: comp_main,
                        track: comp_track,
                    }));
                    buckets[c].push(new_id);
                }
            }
        }
        retired.push(pivot_id);
        pivots.push((col, piv_val));
    }

    // Back substitution: reduce entries above each pivot (to 0 over Q, to a
    // canonical residue below p^v over Z/p^e).
    let mut out_rows: Vec<SparseRow> = Vec::with_capacity(retired.len());
    let mut out_tracks: Vec<SparseRow> = Vec::with_capacity(retired.len());
    for &id in &retired {
        let r = rows[id].take().unwrap();
        out_rows.push(r.main);
        out_tracks.push(r.track.unwrap_or_default());
    }
    for j in 0..out_rows.len() {
        let (pc, pv) = pivots[j];
        let pivot_row = out_rows[j].clone();
        let pivot_trk = out_tracks[j].clone();
        for i in 0..j {
            let entry = out_rows[i]
                .binary_search_by_key(&pc, |(c, _)| *c)
                .ok()
                .map(|k| out_rows[i][k].1.clone());
            let Some(a) = entry else { continue };
            let q = match zpe {
                None => a,
                Some(_) => {
                    let (q, _) = ring.divmod_prime_power(&a, pv);
                    q
                }
            };
            if ring.is_zero(&q) {
                continue;
            }
            out_rows[i] = row_sub_scaled(ring, &out_rows[i], &q, &pivot_row);
            if track {
                out_tracks[i] = row_sub_scaled(ring, &out_tracks[i], &q, &pivot_trk);
            }
        }
    }

    zero_ids.sort_unstable();
    let zero_tracks = zero_ids
        .into_iter()
        .map(|id| rows[id].take().unwrap().track.unwrap_or_default())
        .collect();
    EngineOut {
        rows: out_rows,
        pivots,
        tracks: out_tracks,
        zero_tracks,
        completions,
    }
}

/// Canonical form with certificate: returns (H, T) with H = T * pad(A),
/// where pad(A) appends zero rows so that T is square and invertible (over
/// Z/p^e the sweep may append completion rows; each consumes one padding
/// row). H lists the echelon rows first, zero rows last.
pub fn canonical_form(a: &ExactMatrix) -> (ExactMatrix, ExactMatrix) {
    let ring = a.ring();
    let input: Vec<SparseRow> = (0..a.rows()).map(|i| a.sparse_row(i)).collect();
    let out = engine(&ring, input, a.cols(), true);
    let m_pad = a.rows() + out.completions;
    let mut h_rows = out.rows;
    let mut t_rows = out.tracks;
    for zt in out.zero_tracks {
        h_rows.push(Vec::new());
        t_rows.push(zt);
    }
    // Padding rows not consumed by a retired/zero row do not exist; t is
    // (rows of H) x m_pad and square because every input and completion row
    // is retired or zero.
    assert_eq!(h_rows.len(), m_pad, "engine row accounting");
    let h = ExactMatrix::from_sparse_rows(ring, m_pad, a.cols(), h_rows);
    let t = ExactMatrix::from_sparse_rows(ring, m_pad, m_pad, t_rows);
    (h, t)
}

/// A submodule of R^ambient, held as its unique canonical basis (no zero
/// rows). Equality of submodules is equality of these matrices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Submodule {
    ambient: usize,
    basis: ExactMatrix,
    /// (pivot column, pivot valuation) per basis row.
    pivots: Vec<(usize, u32)>,
}

impl Submodule {
    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }
    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }
    pub fn gens(&self) -> usize {
        self.basis.rows()
    }
    pub fn is_zero(&self) -> bool {
        self.basis.rows() == 0
    }
    pub fn ring(&self) -> RingSpec {
        self.basis.ring()
    }

    pub fn zero(ring: RingSpec, ambient: usize) -> Submodule {
        Submodule {
            ambient,
            basis: ExactMatrix::zeros(ring, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ring: RingSpec, ambient: usize) -> Submodule {
        Submodule {
            ambient,
            basis: ExactMatrix::identity(ring, ambient),
            pivots: (0..ambient).map(|c| (c, 0)).collect(),
        }
    }

    /// Reduce v against the basis; returns (coefficients, remainder).
    /// v is a member iff the remainder is zero.
    pub fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        let ring = self.ring();
        let mut rem: Vec<Scalar> = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.basis.rows());
        for (i, &(pc, pv)) in self.pivots.iter().enumerate() {
            let a = rem[pc].clone();
            let q = match ring.prime_and_exp() {
                None => a,
                Some(_) => ring.divmod_prime_power(&a, pv).0,
            };
            if !ring.is_zero(&q) {
                for (c, w) in self.basis.sparse_row(i) {
                    rem[c] = ring.sub(&rem[c], &ring.mul(&q, &w));
                }
            }
            coeffs.push(q);
        }
        (coeffs, rem)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let ring = self.ring();
        self.reduce(v).1.iter().all(|x| ring.is_zero(x))
    }

    /// Coefficients of v over the basis rows, if v is a member.
    pub fn coords_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let ring = self.ring();
        let (coeffs, rem) = self.reduce(v);
        if rem.iter().all(|x| ring.is_zero(x)) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains_submodule(&self, other: &Submodule) -> bool {
        (0..other.basis.rows()).all(|i| self.contains(&other.basis.dense_row(i)))
    }

    /// Basis rows as dense vectors.
    pub fn basis_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.basis.rows()).map(|i| self.basis.dense_row(i)).collect()
    }

    /// (pivot column, pivot valuation) per basis row; valuations are all
    /// zero over the rationals.
    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }
}

/// Canonical basis of the row span (canonical form minus zero rows).
pub fn image(a: &ExactMatrix) -> Submodule {
    let ring = a.ring();
    let input: Vec<SparseRow> = (0..a.rows()).map(|i| a.sparse_row(i)).collect();
    let out = engine(&ring, input, a.cols(), false);
    Submodule {
        ambient: a.cols(),
        basis: ExactMatrix::from_sparse_rows(ring, out.rows.len(), a.cols(), out.rows),
        pivots: out.pivots,
    }
}

/// {x : x * A = 0}, complete over Z/p^e (torsion relations included),
/// computed from the canonical form of [A | I].
pub fn kernel(a: &ExactMatrix) -> Submodule {
    let ring = a.ring();
    let m = a.rows();
    let n = a.cols();
    let aug = a.hstack(&ExactMatrix::identity(ring, m));
    let input: Vec<SparseRow> = (0..m).map(|i| aug.sparse_row(i)).collect();
    let out = engine(&ring, input, n + m, false);
    let mut ker_rows: Vec<SparseRow> = Vec::new();
    for (row, &(pc, _)) in out.rows.iter().zip(&out.pivots) {
        if pc >= n {
            ker_rows.push(row.iter().map(|(c, v)| (c - n, v.clone())).collect());
        }
    }
    // The extracted rows are already echelon; re-canonicalize to be safe.
    let raw = ExactMatrix::from_sparse_rows(ring, ker_rows.len(), m, ker_rows);
    image(&raw)
}

pub fn sum_submodules(u: &Submodule, v: &Submodule) -> Submodule {
    assert_eq!(u.ambient, v.ambient, "ambient mismatch");
    image(&u.basis.vstack(&v.basis))
}

/// U ∩ V via the kernel of the stacked coefficient system.
pub fn intersect(u: &Submodule, v: &Submodule) -> Submodule {
    assert_eq!(u.ambient, v.ambient, "ambient mismatch");
    let ring = u.ring();
    if u.is_zero() || v.is_zero() {
        return Submodule::zero(ring, u.ambient);
    }
    let stacked = u.basis.vstack(&v.basis.neg());
    let k = kernel(&stacked);
    // Project kernel rows (x | y) to x * B_U.
    let ru = u.basis.rows();
    let mut rows = Vec::new();
    for i in 0..k.basis.rows() {
        let xy = k.basis.dense_row(i);
        let x = &xy[..ru];
        rows.push(u.basis.row_vec_mul(x));
    }
    if rows.is_empty() {
        return Submodule::zero(ring, u.ambient);
    }
    image(&ExactMatrix::from_rows(ring, rows))
}

/// {x : x * t ∈ v} (t maps R^m -> R^n by right multiplication of rows).
pub fn preimage(t: &ExactMatrix, v: &Submodule) -> Submodule {
    assert_eq!(t.cols(), v.ambient, "ambient mismatch");
    let ring = t.ring();
    if v.is_zero() {
        return kernel(t);
    }
    let stacked = t.vstack(&v.basis.neg());
    let k = kernel(&stacked);
    let m = t.rows();
    let mut rows = Vec::new();
    for i in 0..k.basis.rows() {
        let xy = k.basis.dense_row(i);
        rows.push(xy[..m].to_vec());
    }
    if rows.is_empty() {
        return Submodule::zero(ring, m);
    }
    image(&ExactMatrix::from_rows(ring, rows))
}

/// Isomorphism class of a finitely generated module: a Q-dimension, or the
/// multiset of cyclic orders p^a over Z/p^e (ascending exponents; a free
/// factor reports a = e).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum QuotientShape {
    Dim(usize),
    Divisors(Vec<u32>),
}

impl QuotientShape {
    pub fn is_trivial(&self) -> bool {
        match self {
            QuotientShape::Dim(d) => *d == 0,
            QuotientShape::Divisors(v) => v.is_empty(),
        }
    }
    /// Number of reported generators.
    pub fn gens(&self) -> usize {
        match self {
            QuotientShape::Dim(d) => *d,
            QuotientShape::Divisors(v) => v.len(),
        }
    }
    /// Sum of cyclic exponents (log_p of the cardinality) over Z/p^e.
    pub fn size_exponent(&self) -> Option<u64> {
        match self {
            QuotientShape::Dim(_) => None,
            QuotientShape::Divisors(v) => Some(v.iter().map(|&a| a as u64).sum()),
        }
    }
    pub fn describe(&self) -> String {
        match self {
            QuotientShape::Dim(d) => format!("{d}"),
            QuotientShape::Divisors(v) => {
                let parts: Vec<String> = v.iter().map(|a| a.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
        }
    }
}

/// Shape of a quotient together with ambient-space representatives of its
/// generators (one per divisor / free dimension).
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub shape: QuotientShape,
    pub representatives: Vec<Vec<Scalar>>,
}

/// Smith diagonalization over Z/p^e of a dense relation matrix in the
/// coordinate space R^r, with the inverse column transform tracked so the
/// generators of the quotient can be read off. Returns the valuation of
/// each diagonal position (e where the diagonal ran out) and V^{ -1}.
fn smith_valuations(
    ring: &RingSpec,
    mut d: Vec<Vec<Scalar>>,
    r: usize,
) -> (Vec<u32>, Vec<Vec<Scalar>>) {
    let (_, e) = ring.prime_and_exp().expect("smith over Z/p^e only");
    let m = d.len();
    let mut v_inv: Vec<Vec<Scalar>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| if i == j { ring.one() } else { ring.zero() })
                .collect()
        })
        .collect();
    let steps = m.min(r);
    let mut vals = vec![e; r];
    for pos in 0..steps {
        // Minimal-valuation entry of the trailing submatrix, row-major scan.
        let mut best: Option<(u32, usize, usize)> = None;
        for i in pos..m {
            for j in pos..r {
                if ring.is_zero(&d[i][j]) {
                    continue;
                }
                let v = ring.valuation(&d[i][j]);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((pv, pi, pj)) = best else { break };
        d.swap(pos, pi);
        if pj != pos {
            for row in d.iter_mut() {
                row.swap(pos, pj);
            }
            v_inv.swap(pos, pj);
        }
        // Normalize the pivot to p^v by scaling its row by the unit inverse.
        let unit_inv = ring.inv(&ring.unit_part(&d[pos][pos])).unwrap();
        for x in d[pos].iter_mut() {
            *x = ring.mul(x, &unit_inv);
        }
        // Clear the pivot column (row operations, untracked).
        for i in 0..m {
            if i == pos || ring.is_zero(&d[i][pos]) {
                continue;
            }
            let q = ring.div_prime_power(&d[i][pos], pv);
            for j in pos..r {
                let t = ring.mul(&q, &d[pos][j]);
                d[i][j] = ring.sub(&d[i][j], &t);
            }
        }
        // Clear the pivot row (column operations, tracked on V^{-1}):
        // col_c -= q * col_pos corresponds to row_pos += q * row_c on V^{-1}.
        for c in (pos + 1)..r {
            if ring.is_zero(&d[pos][c]) {
                continue;
            }
            let q = ring.div_prime_power(&d[pos][c], pv);
            for i in 0..m {
                let t = ring.mul(&q, &d[i][pos]);
                d[i][c] = ring.sub(&d[i][c], &t);
            }
            let add: Vec<Scalar> = v_inv[c].iter().map(|x| ring.mul(&q, x)).collect();
            for (t, a) in v_inv[pos].iter_mut().zip(add) {
                *t = ring.add(t, &a);
            }
        }
        vals[pos] = pv;
    }
    (vals, v_inv)
}

/// Shape and generator representatives of ambient/inner. Errors when inner
/// is not contained in ambient. Representatives are ambient-space vectors;
/// over Z/p^e the i-th representative generates a cyclic factor of order
/// p^(divisor i).
pub fn quotient_shape(ambient: &Submodule, inner: &Submodule) -> Result<QuotientData, LinalgError> {
    assert_eq!(ambient.ambient, inner.ambient, "ambient mismatch");
    let ring = ambient.ring();
    let r = ambient.basis.rows();
    // Coefficients of inner generators over the ambient basis.
    let mut rel_rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..inner.basis.rows() {
        match ambient.coords_of(&inner.basis.dense_row(i)) {
            Some(c) => rel_rows.push(c),
            None => return Err(LinalgError::NotContained),
        }
    }
    // Relations of the ambient coordinate map R^r -> ambient.
    let coord_rel = kernel(&ambient.basis);
    for i in 0..coord_rel.basis.rows() {
        rel_rows.push(coord_rel.basis.dense_row(i));
    }

    match ring.prime_and_exp() {
        None => {
            // Field case: pivots of the relation span mark dead coordinates.
            let rel = image(&ExactMatrix::from_rows(ring, rel_rows.clone()));
            let pivot_cols: std::collections::BTreeSet<usize> =
                rel.pivots.iter().map(|(c, _)| *c).collect();
            let mut reps = Vec::new();
            for f in 0..r {
                if !pivot_cols.contains(&f) {
                    reps.push(ambient.basis.dense_row(f));
                }
            }
            Ok(QuotientData {
                shape: QuotientShape::Dim(r - pivot_cols.len()),
                representatives: reps,
            })
        }
        Some(_) => {
            let (vals, v_inv) = smith_valuations(&ring, rel_rows, r);
            let mut order: Vec<usize> = (0..r).collect();
            order.sort_by_key(|&i| (vals[i], i));
            let mut divisors = Vec::new();
            let mut reps = Vec::new();
            for i in order {
                if vals[i] == 0 {
                    continue;
                }
                divisors.push(vals[i]);
                reps.push(ambient.basis.row_vec_mul(&v_inv[i]));
            }
            Ok(QuotientData {
                shape: QuotientShape::Divisors(divisors),
                representatives: reps,
            })
        }
    }
}

/// Isomorphism class of a submodule itself (quotient by zero).
pub fn shape_of_submodule(s: &Submodule) -> QuotientShape {
    let zero = Submodule::zero(s.ring(), s.ambient);
    quotient_shape(s, &zero)
        .expect("zero is contained in everything")
        .shape
}

/// Any solution x of x * A = b.
pub fn solve(a: &ExactMatrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let ring = a.ring();
    assert_eq!(b.len(), a.cols(), "rhs length mismatch");
    let (h, t) = canonical_form(a);
    // Reduce b against the pivot rows of h, collecting coefficients.
    let mut rem: Vec<Scalar> = b.to_vec();
    let mut y = vec![ring.zero(); h.rows()];
    for i in 0..h.rows() {
        let row = h.sparse_row(i);
        let Some((pc, pval)) = row.first().map(|(c, v)| (*c, v)) else {
            break; // zero rows start
        };
        let pv = match ring.prime_and_exp() {
            None => 0,
            Some(_) => ring.valuation(pval),
        };
        let a0 = rem[pc].clone();
        let q = match ring.prime_and_exp() {
            None => a0,
            Some(_) => ring.divmod_prime_power(&a0, pv).0,
        };
        if !ring.is_zero(&q) {
            for (c, w) in &row {
                rem[*c] = ring.sub(&rem[*c], &ring.mul(&q, w));
            }
        }
        y[i] = q;
    }
    if !rem.iter().all(|x| ring.is_zero(x)) {
        return None;
    }
    let x_full = t.row_vec_mul(&y); // y * T
    Some(x_full[..a.rows()].to_vec())
}

/// Inverse via the canonical form certificate: H = T * A with H = I.
pub fn inverse(a: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
    if a.rows() != a.cols() {
        return Err(LinalgError::NotInvertible);
    }
    let (h, t) = canonical_form(a);
    if h.rows() == a.rows() && h.is_identity() {
        Ok(t)
    } else {
        Err(LinalgError::NotInvertible)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RingSpec {
        RingSpec::Q
    }
    fn z25() -> RingSpec {
        RingSpec::parse("Z/5^2").unwrap()
    }

    #[test]
    fn rref_example() {
        let a = ExactMatrix::from_i64_rows(q(), &[&[2, 4], &[1, 2]]);
        let (h, t) = canonical_form(&a);
        let expect = ExactMatrix::from_i64_rows(q(), &[&[1, 2], &[0, 0]]);
        assert_eq!(h, expect);
        assert_eq!(t.mul(&a), h);
        assert!(inverse(&t).is_ok());
    }

    #[test]
    fn howell_diagonal_example() {
        let a = ExactMatrix::from_i64_rows(z25(), &[&[5, 0], &[0, 5]]);
        let (h, _) = canonical_form(&a);
        assert_eq!(h, a);
    }

    #[test]
    fn howell_completion_row() {
        // span{(5,1)} over Z/25 needs the completion row (0,5).
        let a = ExactMatrix::from_i64_rows(z25(), &[&[5, 1]]);
        let s = image(&a);
        let expect = ExactMatrix::from_i64_rows(z25(), &[&[5, 1], &[0, 5]]);
        assert_eq!(s.basis(), &expect);
        // Same span from redundant, scrambled generators.
        let b = ExactMatrix::from_i64_rows(z25(), &[&[10, 2], &[5, 1]]);
        assert_eq!(image(&b), s);
        // Certificate on the version with a completion row.
        let (h, t) = canonical_form(&a);
        assert_eq!(h.rows(), 2);
        let a_pad = a.vstack(&ExactMatrix::zeros(z25(), 1, 2));
        assert_eq!(t.mul(&a_pad), h);
        assert!(inverse(&t).is_ok());
    }

    #[test]
    fn kernel_captures_torsion() {
        // kernel of [5] over Z/25 is span{(5)}.
        let a = ExactMatrix::from_i64_rows(z25(), &[&[5]]);
        let k = kernel(&a);
        let expect = ExactMatrix::from_i64_rows(z25(), &[&[5]]);
        assert_eq!(k.basis(), &expect);
    }

    #[test]
    fn kernel_times_matrix_is_zero() {
        let a = ExactMatrix::from_i64_rows(z25(), &[&[5, 10, 1], &[0, 5, 5], &[15, 0, 2]]);
        let k = kernel(&a);
        assert!(k.basis().mul(&a).is_zero());
        let b = ExactMatrix::from_i64_rows(q(), &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let kb = kernel(&b);
        assert_eq!(kb.gens(), 1);
        assert!(kb.basis().mul(&b).is_zero());
    }

    #[test]
    fn brute_force_span_cardinality() {
        // |rowspan| over Z/25 equals the product of p^(e - v_i) over pivots,
        // and |span| * |kernel span| = 25^m.
        let ring = z25();
        let cases: Vec<ExactMatrix> = vec![
            ExactMatrix::from_i64_rows(ring, &[&[5, 1], &[0, 5]]),
            ExactMatrix::from_i64_rows(ring, &[&[5, 10], &[10, 20]]),
            ExactMatrix::from_i64_rows(ring, &[&[2, 3], &[4, 6]]),
            ExactMatrix::from_i64_rows(ring, &[&[5, 0], &[0, 0]]),
        ];
        for a in cases {
            let mut seen = std::collections::HashSet::new();
            for x0 in 0..25u64 {
                for x1 in 0..25u64 {
                    let x = vec![Scalar::Mod(x0), Scalar::Mod(x1)];
                    let v = a.row_vec_mul(&x);
                    seen.insert(format!("{},{}", v[0], v[1]));
                }
            }
            let s = image(&a);
            let span_size: u64 = s
                .pivots
                .iter()
                .map(|&(_, v)| 5u64.pow(2 - v))
                .product();
            assert_eq!(span_size, seen.len() as u64, "span size mismatch");
            let k = kernel(&a);
            let ker_size: u64 = k
                .pivots
                .iter()
                .map(|&(_, v)| 5u64.pow(2 - v))
                .product();
            assert_eq!(span_size * ker_size, 25u64.pow(2));
        }
    }

    #[test]
    fn membership_and_coords() {
        let a = ExactMatrix::from_i64_rows(z25(), &[&[5, 1]]);
        let s = image(&a);
        assert!(s.contains(&[Scalar::Mod(0), Scalar::Mod(5)]));
        assert!(s.contains(&[Scalar::Mod(10), Scalar::Mod(2)]));
        assert!(!s.contains(&[Scalar::Mod(1), Scalar::Mod(0)]));
        let c = s.coords_of(&[Scalar::Mod(10), Scalar::Mod(2)]).unwrap();
        let back = s.basis().row_vec_mul(&c);
        assert_eq!(back, vec![Scalar::Mod(10), Scalar::Mod(2)]);
    }

    #[test]
    fn solve_examples() {
        let a = ExactMatrix::from_i64_rows(z25(), &[&[5]]);
        let x = solve(&a, &[Scalar::Mod(10)]).unwrap();
        assert_eq!(a.row_vec_mul(&x), vec![Scalar::Mod(10)]);
        assert!(solve(&a, &[Scalar::Mod(1)]).is_none());
        let b = ExactMatrix::from_i64_rows(q(), &[&[1, 2], &[3, 4], &[4, 6]]);
        let x = solve(&b, &[q().from_i64(5), q().from_i64(8)]).unwrap();
        assert_eq!(
            b.row_vec_mul(&x),
            vec![q().from_i64(5), q().from_i64(8)]
        );
    }

    #[test]
    fn intersect_and_sum_dims_over_q() {
        let u = image(&ExactMatrix::from_i64_rows(q(), &[&[1, 0, 0], &[0, 1, 0]]));
        let v = image(&ExactMatrix::from_i64_rows(q(), &[&[0, 1, 1], &[1, 0, 1]]));
        let i = intersect(&u, &v);
        let s = sum_submodules(&u, &v);
        assert_eq!(u.gens() + v.gens(), i.gens() + s.gens());
        for row in i.basis_rows() {
            assert!(u.contains(&row) && v.contains(&row));
        }
    }

    #[test]
    fn intersect_torsion() {
        let ring = z25();
        let u = image(&ExactMatrix::from_i64_rows(ring, &[&[1, 0]]));
        let v = image(&ExactMatrix::from_i64_rows(ring, &[&[5, 5]]));
        let i = intersect(&u, &v);
        // (5,5)*5 = (25,25) = 0; multiples of (5,5) with zero second coord:
        // c*(5,5), 5|c*5 in second coord -> c*5 ≡ 0 mod 25 -> c ∈ 5Z: gives 0.
        assert!(i.is_zero());
        let w = image(&ExactMatrix::from_i64_rows(ring, &[&[5, 0], &[0, 5]]));
        let j = intersect(&w, &v);
        assert_eq!(j, image(&ExactMatrix::from_i64_rows(ring, &[&[5, 5]])));
    }

    #[test]
    fn preimage_matches_definition() {
        let ring = z25();
        let t = ExactMatrix::from_i64_rows(ring, &[&[5, 0], &[0, 1]]);
        let v = image(&ExactMatrix::from_i64_rows(ring, &[&[0, 5]]));
        let p = preimage(&t, &v);
        // x*t = (5 x0, x1) ∈ span{(0,5)} iff 5 x0 = 0 and 5 | x1.
        for x0 in 0..25u64 {
            for x1 in 0..25u64 {
                let x = vec![Scalar::Mod(x0), Scalar::Mod(x1)];
                let y = t.row_vec_mul(&x);
                let member = v.contains(&y);
                assert_eq!(p.contains(&x), member, "x = ({x0},{x1})");
            }
        }
    }

    #[test]
    fn quotient_shapes() {
        let ring = z25();
        let full = Submodule::full(ring, 2);
        let inner = image(&ExactMatrix::from_i64_rows(ring, &[&[5, 0]]));
        let qd = quotient_shape(&full, &inner).unwrap();
        assert_eq!(qd.shape, QuotientShape::Divisors(vec![1, 2]));
        assert_eq!(qd.representatives.len(), 2);
        // Q case: dimension of a plane modulo a line.
        let fullq = Submodule::full(q(), 3);
        let innerq = image(&ExactMatrix::from_i64_rows(q(), &[&[1, 1, 1]]));
        let qq = quotient_shape(&fullq, &innerq).unwrap();
        assert_eq!(qq.shape, QuotientShape::Dim(2));
        // Containment violation is an error.
        let small = image(&ExactMatrix::from_i64_rows(q(), &[&[1, 0, 0]]));
        assert_eq!(
            quotient_shape(&innerq, &small).unwrap_err(),
            LinalgError::NotContained
        );
    }

    #[test]
    fn submodule_shape_detects_cyclic() {
        // span{(5,1)} over Z/25 is cyclic of order 25, not Z/5 + Z/5.
        let s = image(&ExactMatrix::from_i64_rows(z25(), &[&[5, 1]]));
        assert_eq!(shape_of_submodule(&s), QuotientShape::Divisors(vec![2]));
        // span{(5,0),(0,5)} really is Z/5 + Z/5.
        let t = image(&ExactMatrix::from_i64_rows(z25(), &[&[5, 0], &[0, 5]]));
        assert_eq!(shape_of_submodule(&t), QuotientShape::Divisors(vec![1, 1]));
    }

    #[test]
    fn quotient_representatives_generate() {
        let ring = z25();
        let full = Submodule::full(ring, 2);
        let inner = image(&ExactMatrix::from_i64_rows(ring, &[&[5, 0]]));
        let qd = quotient_shape(&full, &inner).unwrap();
        // Brute force: the classes of c1*r1 + c2*r2 + inner must cover R^2.
        let mut seen = std::collections::HashSet::new();
        let inner_all: Vec<Vec<Scalar>> = (0..25u64)
            .map(|c| inner.basis().row_vec_mul(&[Scalar::Mod(c)]))
            .collect();
        for c1 in 0..25u64 {
            for c2 in 0..25u64 {
                let mut v = [ring.zero(), ring.zero()];
                for (c, rep) in [(c1, &qd.representatives[0]), (c2, &qd.representatives[1])] {
                    for k in 0..2 {
                        v[k] = ring.add(&v[k], &ring.mul(&Scalar::Mod(c), &rep[k]));
                    }
                }
                for w in &inner_all {
                    let key = format!(
                        "{},{}",
                        ring.add(&v[0], &w[0]),
                        ring.add(&v[1], &w[1])
                    );
                    seen.insert(key);
                }
            }
        }
        assert_eq!(seen.len(), 625);
    }

    #[test]
    fn inverse_round_trip() {
        let a = ExactMatrix::from_i64_rows(q(), &[&[0, 1], &[-1, 1]]);
        let inv = inverse(&a).unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
        let b = ExactMatrix::from_i64_rows(z25(), &[&[2, 1], &[1, 1]]);
        let invb = inverse(&b).unwrap();
        assert!(b.mul(&invb).is_identity());
        let sing = ExactMatrix::from_i64_rows(z25(), &[&[5, 0], &[0, 1]]);
        assert_eq!(inverse(&sing).unwrap_err(), LinalgError::NotInvertible);
    }

    #[test]
    fn canonical_is_idempotent_and_storage_blind() {
        let a = ExactMatrix::from_i64_rows(z25(), &[&[5, 10, 3], &[0, 5, 5], &[10, 0, 2]]);
        let (h1, _) = canonical_form(&a.clone().force_dense());
        let (h2, _) = canonical_form(&a.clone().force_sparse());
        assert_eq!(h1, h2);
        let s = image(&a);
        let (h3, _) = canonical_form(s.basis());
        let top = h3.columns(0..3).select_rows(&(0..s.gens()).collect::<Vec<_>>());
        assert_eq!(&top, s.basis());
    }
}
