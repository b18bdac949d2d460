//! Bit-packed stabilizer tableaux on up to 64 qubits with destabilizer rows.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_QUBITS: usize = 64;

/// A Hermitian Pauli operator `(-1)^negative * prod X^x Z^z`, where a qubit
/// with both bits set carries a `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PauliRow {
    pub x: u64,
    pub z: u64,
    pub negative: bool,
}

impl PauliRow {
    pub fn x_on(q: usize) -> Self {
        PauliRow {
            x: 1 << q,
            ..Self::default()
        }
    }

    pub fn z_on(q: usize) -> Self {
        PauliRow {
            z: 1 << q,
            ..Self::default()
        }
    }

    pub fn anticommutes(&self, other: &PauliRow) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() & 1 == 1
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Replaces `self` with `other * self`, tracking the sign. Both operators
    /// must commute for the result to be Hermitian; otherwise the sign is
    /// meaningless (as for destabilizer bookkeeping).
    pub fn left_multiply(&mut self, other: &PauliRow) {
        let (x1, z1, x2, z2) = (other.x, other.z, self.x, self.z);
        // Exponent of i picked up per qubit when multiplying other * self.
        let pos = (x1 & z1 & z2 & !x2) | (x1 & !z1 & z2 & x2) | (!x1 & z1 & x2 & !z2);
        let neg = (x1 & z1 & x2 & !z2) | (x1 & !z1 & z2 & !x2) | (!x1 & z1 & x2 & z2);
        let phase = 2 * i32::from(self.negative) + 2 * i32::from(other.negative) + pos.count_ones() as i32
            - neg.count_ones() as i32;
        self.negative = phase.rem_euclid(4) == 2;
        self.x ^= x1;
        self.z ^= z1;
    }

    pub fn apply_h(&mut self, q: usize) {
        let xb = self.x >> q & 1;
        let zb = self.z >> q & 1;
        self.negative ^= xb & zb == 1;
        self.x = (self.x & !(1 << q)) | (zb << q);
        self.z = (self.z & !(1 << q)) | (xb << q);
    }

    pub fn apply_s(&mut self, q: usize) {
        let xb = self.x >> q & 1;
        let zb = self.z >> q & 1;
        self.negative ^= xb & zb == 1;
        self.z ^= xb << q;
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        let xa = self.x >> a & 1;
        let xb = self.x >> b & 1;
        let za = self.z >> a & 1;
        let zb = self.z >> b & 1;
        self.negative ^= xa & xb & (za ^ zb) == 1;
        self.z ^= (xb << a) | (xa << b);
    }

    /// Conjugation by a Pauli only changes the sign.
    pub fn apply_pauli(&mut self, p: &PauliRow) {
        self.negative ^= self.anticommutes(p);
    }
}

/// Outcome of a single-qubit measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measurement {
    /// `true` for the -1 eigenvalue.
    pub negative: bool,
    pub deterministic: bool,
}

/// Stabilizer state in Aaronson-Gottesman form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    destabilizers: Vec<PauliRow>,
    stabilizers: Vec<PauliRow>,
}

fn check_scale(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        Err(Error::OracleScale {
            qubits: n,
            limit: MAX_QUBITS,
        })
    } else {
        Ok(())
    }
}

impl Tableau {
    /// All qubits in |0>.
    pub fn zero_state(n: usize) -> Result<Self> {
        check_scale(n)?;
        Ok(Tableau {
            n,
            destabilizers: (0..n).map(PauliRow::x_on).collect(),
            stabilizers: (0..n).map(PauliRow::z_on).collect(),
        })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn stabilizers(&self) -> &[PauliRow] {
        &self.stabilizers
    }

    fn rows_mut(&mut self) -> impl Iterator<Item = &mut PauliRow> {
        self.destabilizers.iter_mut().chain(self.stabilizers.iter_mut())
    }

    pub fn h(&mut self, q: usize) {
        self.rows_mut().for_each(|r| r.apply_h(q));
    }

    pub fn s(&mut self, q: usize) {
        self.rows_mut().for_each(|r| r.apply_s(q));
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        self.rows_mut().for_each(|r| r.apply_cz(a, b));
    }

    pub fn apply_pauli(&mut self, p: &PauliRow) {
        self.rows_mut().for_each(|r| r.apply_pauli(p));
    }

    /// Measures Z on `q`; `choose` supplies the outcome when it is random.
    pub fn measure_z(&mut self, q: usize, choose: &mut dyn FnMut() -> bool) -> Measurement {
        let bit = 1u64 << q;
        let Some(p) = self.stabilizers.iter().position(|r| r.x & bit != 0) else {
            let mut acc = PauliRow::default();
            for i in 0..self.n {
                if self.destabilizers[i].x & bit != 0 {
                    acc.left_multiply(&self.stabilizers[i]);
                }
            }
            return Measurement {
                negative: acc.negative,
                deterministic: true,
            };
        };
        let pivot = self.stabilizers[p];
        for i in 0..self.n {
            if i != p && self.stabilizers[i].x & bit != 0 {
                self.stabilizers[i].left_multiply(&pivot);
            }
            if i != p && self.destabilizers[i].x & bit != 0 {
                self.destabilizers[i].left_multiply(&pivot);
            }
        }
        let negative = choose();
        self.destabilizers[p] = pivot;
        self.stabilizers[p] = PauliRow {
            x: 0,
            z: bit,
            negative,
        };
        Measurement {
            negative,
            deterministic: false,
        }
    }

    pub fn measure_x(&mut self, q: usize, choose: &mut dyn FnMut() -> bool) -> Measurement {
        self.h(q);
        let m = self.measure_z(q, choose);
        self.h(q);
        m
    }

    /// `Some(negative)` when `±p` is in the stabilizer group, `None` otherwise.
    pub fn expectation(&self, p: &PauliRow) -> Option<bool> {
        if self.stabilizers.iter().any(|s| s.anticommutes(p)) {
            return None;
        }
        let mut acc = PauliRow::default();
        for i in 0..self.n {
            if self.destabilizers[i].anticommutes(p) {
                acc.left_multiply(&self.stabilizers[i]);
            }
        }
        debug_assert_eq!((acc.x, acc.z), (p.x, p.z));
        Some(acc.negative ^ p.negative)
    }

    pub fn group(&self) -> StabilizerGroup {
        StabilizerGroup::from_generators(self.n, self.stabilizers.clone())
    }

    /// Stabilizer group of the state on `keep`, assuming the other qubits
    /// are in a product state with them (as after measuring them).
    /// Qubits are relabelled to their position in `keep`.
    pub fn restrict(&self, keep: &[usize]) -> StabilizerGroup {
        let keep_mask: u64 = keep.iter().fold(0, |m, &q| m | 1 << q);
        let drop_mask = full(self.n) & !keep_mask;
        let mut rows = self.stabilizers.clone();
        // Eliminate every dropped column; leftover rows live on `keep`.
        let mut cols = Vec::new();
        for q in 0..self.n {
            if drop_mask >> q & 1 == 1 {
                cols.push((q, true));
                cols.push((q, false));
            }
        }
        let rank = eliminate(&mut rows, &cols);
        let mut out = Vec::new();
        for r in &rows[rank..] {
            debug_assert_eq!((r.x | r.z) & drop_mask, 0);
            let mut row = PauliRow {
                negative: r.negative,
                ..PauliRow::default()
            };
            for (i, &q) in keep.iter().enumerate() {
                row.x |= (r.x >> q & 1) << i;
                row.z |= (r.z >> q & 1) << i;
            }
            out.push(row);
        }
        StabilizerGroup::from_generators(keep.len(), out)
    }
}

fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bit(row: &PauliRow, (q, is_x): (usize, bool)) -> bool {
    let word = if is_x { row.x } else { row.z };
    word >> q & 1 == 1
}

/// Row-reduces `rows` over the given columns in order, moving pivot rows to
/// the front. Returns the number of pivots.
fn eliminate(rows: &mut [PauliRow], cols: &[(usize, bool)]) -> usize {
    let mut rank = 0;
    for &col in cols {
        let Some(p) = (rank..rows.len()).find(|&i| bit(&rows[i], col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && bit(r, col) {
                r.left_multiply(&pivot);
            }
        }
        rank += 1;
    }
    rank
}

/// A stabilizer group in reduced row-echelon form, so that equal groups have
/// identical generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliRow>,
}

impl StabilizerGroup {
    pub fn from_generators(n: usize, mut rows: Vec<PauliRow>) -> Self {
        let mut cols = Vec::with_capacity(2 * n);
        for q in 0..n {
            cols.push((q, true));
        }
        for q in 0..n {
            cols.push((q, false));
        }
        let rank = eliminate(&mut rows, &cols);
        rows.truncate(rank);
        StabilizerGroup { n, generators: rows }
    }

    /// Generators `X_v prod Z_u` over the neighbours `u` of every vertex `v`.
    pub fn graph_state(g: &Graph) -> Result<Self> {
        check_scale(g.vertex_count())?;
        Ok(StabilizerGroup::from_generators(g.vertex_count(), graph_generators(g)))
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliRow] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Equality ignoring signs.
    pub fn same_up_to_signs(&self, other: &StabilizerGroup) -> bool {
        self.n == other.n
            && self.generators.len() == other.generators.len()
            && self
                .generators
                .iter()
                .zip(&other.generators)
                .all(|(a, b)| a.x == b.x && a.z == b.z)
    }

    /// `Some(negative)` when `±p` belongs to the group.
    pub fn contains_up_to_sign(&self, p: &PauliRow) -> Option<bool> {
        let mut rows = self.generators.clone();
        rows.push(*p);
        let reduced = StabilizerGroup::from_generators(self.n, rows);
        if reduced.rank() != self.rank() {
            return None;
        }
        // Reduce p by the generators to read off the sign.
        let mut acc = *p;
        let mut cols = Vec::new();
        for q in 0..self.n {
            cols.push((q, true));
        }
        for q in 0..self.n {
            cols.push((q, false));
        }
        let mut gi = 0;
        for col in cols {
            if gi < self.generators.len() && leading_col(&self.generators[gi], self.n) == Some(col) {
                if bit(&acc, col) {
                    acc.left_multiply(&self.generators[gi]);
                }
                gi += 1;
            }
        }
        debug_assert!(acc.is_identity());
        Some(acc.negative)
    }
}

fn leading_col(row: &PauliRow, n: usize) -> Option<(usize, bool)> {
    (0..n)
        .map(|q| (q, true))
        .chain((0..n).map(|q| (q, false)))
        .find(|&c| bit(row, c))
}

fn graph_generators(g: &Graph) -> Vec<PauliRow> {
    (0..g.vertex_count())
        .map(|v| PauliRow {
            x: 1 << v,
            z: g.neighbors(v).fold(0, |m, u| m | 1 << u),
            negative: false,
        })
        .collect()
}

/// Graph state of `g` with all generator signs positive.
pub fn build_graph_state(g: &Graph) -> Result<Tableau> {
    let n = g.vertex_count();
    check_scale(n)?;
    Ok(Tableau {
        n,
        destabilizers: (0..n).map(PauliRow::z_on).collect(),
        stabilizers: graph_generators(g),
    })
}
