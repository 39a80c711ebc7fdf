//! Finite matrix groups over Z/N: exhaustive element tables for the
//! determinant-one and full invertible 2x2 groups, with multiplication,
//! inversion, subgroup closure, and coset partitions.  Levels are capped
//! so tables stay comfortably in memory.

use std::collections::HashMap;
use thiserror::Error;

use crate::oracle::{gl2_order, sl2_order};

/// Maximum supported level for element tables.
pub const MAX_LEVEL: u64 = 12;

/// Which 2x2 matrix group over Z/N to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// Determinant exactly one.
    SL2,
    /// Any unit determinant.
    GL2,
}

impl GroupKind {
    pub fn label(self) -> &'static str {
        match self {
            GroupKind::SL2 => "SL2",
            GroupKind::GL2 => "GL2",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("level {0} out of range (need 2..={MAX_LEVEL})")]
    BadLevel(u64),
    #[error("matrix {0:?} is not a group element at level {1}")]
    NotAnElement([u64; 4], u64),
}

/// Element table for one group.  Elements are stored as `[a, b, c, d]`
/// (row-major) with entries reduced into `0..n`, enumerated in
/// lexicographic order so indices are reproducible.
#[derive(Debug)]
pub struct GroupTable {
    pub kind: GroupKind,
    pub n: u64,
    elems: Vec<[u64; 4]>,
    index: HashMap<[u64; 4], usize>,
    inv: Vec<usize>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl GroupTable {
    pub fn new(kind: GroupKind, n: u64) -> Result<GroupTable, GroupError> {
        if !(2..=MAX_LEVEL).contains(&n) {
            return Err(GroupError::BadLevel(n));
        }
        let mut elems = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let det = (a * d + n * n - (b * c) % (n * n)) % n;
                        let ok = match kind {
                            GroupKind::SL2 => det == 1,
                            GroupKind::GL2 => gcd(det, n) == 1,
                        };
                        if ok {
                            elems.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        let expected = match kind {
            GroupKind::SL2 => sl2_order(n),
            GroupKind::GL2 => gl2_order(n),
        };
        assert_eq!(
            elems.len() as u64,
            expected,
            "element count disagrees with the order formula"
        );
        let index: HashMap<[u64; 4], usize> =
            elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let inv = elems
            .iter()
            .map(|&e| {
                let inv_e = invert_entry(e, n);
                index[&inv_e]
            })
            .collect();
        Ok(GroupTable {
            kind,
            n,
            elems,
            index,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elem(&self, i: usize) -> [u64; 4] {
        self.elems[i]
    }

    pub fn index_of(&self, e: &[u64; 4]) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn identity(&self) -> usize {
        self.index[&[1, 0, 0, 1]]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let x = self.elems[i];
        let y = self.elems[j];
        self.index[&mul_entry(x, y, self.n)]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inv[i]
    }

    /// Reduce an integer matrix mod n and locate it in the table.
    pub fn reduce(&self, m: &[i64; 4]) -> Result<usize, GroupError> {
        let n = self.n as i64;
        let red = [
            m[0].rem_euclid(n) as u64,
            m[1].rem_euclid(n) as u64,
            m[2].rem_euclid(n) as u64,
            m[3].rem_euclid(n) as u64,
        ];
        self.index_of(&red)
            .ok_or(GroupError::NotAnElement(red, self.n))
    }

    /// The two standard torsion generators reduced to this level.
    pub fn standard_generators(&self) -> (usize, usize) {
        let s = self.reduce(&[0, 1, -1, 0]).expect("order-four generator");
        let u = self.reduce(&[0, 1, -1, 1]).expect("order-six generator");
        (s, u)
    }

    /// Subgroup generated by the given elements: breadth-first closure
    /// under right multiplication, returned as sorted element indices.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut stack = vec![self.identity()];
        seen[self.identity()] = true;
        while let Some(g) = stack.pop() {
            for &h in gens {
                let gh = self.mul(g, h);
                if !seen[gh] {
                    seen[gh] = true;
                    stack.push(gh);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    /// Partition of the group into left cosets gK of the subgroup with the
    /// given (closed) element set.  Returns, for each element, its coset id,
    /// together with one representative per coset (the smallest index).
    pub fn left_cosets(&self, subgroup: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset_of[g] == usize::MAX {
                let id = reps.len();
                reps.push(g);
                for &k in subgroup {
                    coset_of[self.mul(g, k)] = id;
                }
            }
        }
        assert!(coset_of.iter().all(|&c| c != usize::MAX));
        (coset_of, reps)
    }

    /// Number of orbits of the subgroup generated by `gens` acting by left
    /// translation (g maps to gamma * g).  Used as an independent count of
    /// fixed vectors in function modules.
    pub fn orbit_count_left_translation(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order()];
        let mut orbits = 0;
        for start in 0..self.order() {
            if seen[start] {
                continue;
            }
            orbits += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(g) = stack.pop() {
                for &h in gens {
                    let hg = self.mul(h, g);
                    if !seen[hg] {
                        seen[hg] = true;
                        stack.push(hg);
                    }
                }
            }
        }
        orbits
    }
}

fn mul_entry(x: [u64; 4], y: [u64; 4], n: u64) -> [u64; 4] {
    [
        (x[0] * y[0] + x[1] * y[2]) % n,
        (x[0] * y[1] + x[1] * y[3]) % n,
        (x[2] * y[0] + x[3] * y[2]) % n,
        (x[2] * y[1] + x[3] * y[3]) % n,
    ]
}

fn invert_entry(e: [u64; 4], n: u64) -> [u64; 4] {
    // Adjugate divided by determinant; the determinant is a unit mod n.
    let det = ((e[0] * e[3]) % n + n * n - (e[1] * e[2]) % n) % n;
    let det_inv = mod_inverse(det, n);
    let adj = [e[3] % n, (n - e[1] % n) % n, (n - e[2] % n) % n, e[0] % n];
    [
        adj[0] * det_inv % n,
        adj[1] * det_inv % n,
        adj[2] * det_inv % n,
        adj[3] * det_inv % n,
    ]
}

fn mod_inverse(a: u64, n: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (n as i64, (a % n) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "value is not a unit");
    t.rem_euclid(n as i64) as u64
}
