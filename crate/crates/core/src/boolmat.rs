//! Boolean matrices, the `[[0,1],[1,0]]` pattern, and the monoid `D_n`.
//!
//! A matrix keeps one bitmask per row; column `i` of row `x` is bit `i - 1`
//! of `data[x - 1]`. The pattern occurs when rows `x < y` and columns `i < j`
//! carry `M_xi = 0, M_xj = 1, M_yi = 1, M_yj = 0`.
//!
//! For a column pair `i < j` that is exactly a failure of
//! `col_j.dominates(col_i)`, and for a row pair `x < y` a failure of
//! `row_y.dominates(row_x)`, so both axes prune the same way.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_INDEX};

/// Largest `n` for which `D_n` is enumerated (2^25 candidates at `n = 5`).
pub const DEFAULT_ENUMERATION_GUARD: usize = 5;
/// Largest `n` for the quadratic unit search used as a cross-check.
pub const EXHAUSTIVE_UNIT_GUARD: usize = 3;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u8>>", into = "Vec<Vec<u8>>")]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl BoolMatrix {
    /// From row bitmasks.
    pub fn new(rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        check_shape(rows, cols)?;
        if data.len() != rows {
            return Err(Error::ShapeMismatch(format!(
                "{} row masks for {rows} rows",
                data.len()
            )));
        }
        let full = Subset::full(cols).bits();
        if let Some(bad) = data.iter().find(|&&r| r & !full != 0) {
            return Err(Error::ShapeMismatch(format!(
                "row mask {bad:#b} exceeds {cols} columns"
            )));
        }
        Ok(BoolMatrix { rows, cols, data })
    }

    /// From rows of 0/1 entries.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(m);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            let mut mask = 0u32;
            for (i, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => mask |= 1 << i,
                    other => {
                        return Err(Error::ShapeMismatch(format!("entry {other} is not 0 or 1")))
                    }
                }
            }
            data.push(mask);
        }
        Self::new(m, n, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![0; rows])
    }

    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        check_shape(rows, cols)?;
        Self::new(rows, cols, vec![Subset::full(cols).bits(); rows])
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, n, (0..n).map(|x| 1u32 << x).collect())
    }

    /// The matrix with a 1 at `(x, perm[x-1])`; `perm` holds 1-based columns.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let data = perm
            .iter()
            .map(|&c| Subset::from_indices(n, [c]).map(Subset::bits))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, n, data)
    }

    /// Inverse of [`BoolMatrix::to_flat`].
    pub fn from_flat(rows: usize, cols: usize, flat: u64) -> Result<Self> {
        check_shape(rows, cols)?;
        if rows * cols > 64 {
            return Err(Error::ShapeMismatch("more than 64 entries".into()));
        }
        let data = (0..rows)
            .map(|x| {
                digits_to_mask(
                    ((flat >> ((rows - 1 - x) * cols)) & low_bits(cols)) as u32,
                    cols,
                )
            })
            .collect();
        Self::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row bitmasks.
    pub fn row_masks(&self) -> &[u32] {
        &self.data
    }

    /// Entry `M_{xi}`, 1-based.
    pub fn get(&self, x: usize, i: usize) -> bool {
        self.data[x - 1] & (1 << (i - 1)) != 0
    }

    /// Support of column `i` (1-based) as a set of row indices.
    pub fn column(&self, i: usize) -> Subset {
        let bit = 1u32 << (i - 1);
        Subset::from_bits(
            self.data
                .iter()
                .enumerate()
                .filter(|(_, r)| *r & bit != 0)
                .fold(0, |acc, (x, _)| acc | 1 << x),
        )
    }

    pub fn columns(&self) -> Vec<Subset> {
        (1..=self.cols).map(|i| self.column(i)).collect()
    }

    /// Builds a square matrix whose `i`-th column has support `cols[i-1]`.
    pub fn from_columns(cols: &[Subset]) -> Result<Self> {
        let n = cols.len();
        check_shape(n, n)?;
        let mut data = vec![0u32; n];
        for (i, c) in cols.iter().enumerate() {
            c.check_within(n)?;
            for x in c.iter() {
                data[x - 1] |= 1 << i;
            }
        }
        Self::new(n, n, data)
    }

    pub fn transpose(&self) -> BoolMatrix {
        let data = self.columns().into_iter().map(Subset::bits).collect();
        BoolMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Row-major flattening read as a binary number, `M_11` most significant.
    pub fn to_flat(&self) -> u64 {
        assert!(self.rows * self.cols <= 64);
        self.data.iter().fold(0u64, |acc, &r| {
            (acc << self.cols) | mask_to_digits(r, self.cols) as u64
        })
    }

    /// Row-major 0/1 digits, e.g. `1001` for the 2×2 identity.
    pub fn flat_digits(&self) -> String {
        let mut s = String::with_capacity(self.rows * self.cols);
        for x in 1..=self.rows {
            for i in 1..=self.cols {
                s.push(if self.get(x, i) { '1' } else { '0' });
            }
        }
        s
    }

    pub fn to_nested(&self) -> Vec<Vec<u8>> {
        (1..=self.rows)
            .map(|x| (1..=self.cols).map(|i| self.get(x, i) as u8).collect())
            .collect()
    }

    /// No rows `x < y` and columns `i < j` with `M_xi=0, M_xj=1, M_yi=1, M_yj=0`.
    pub fn avoids_pattern(&self) -> bool {
        let cols: Vec<u32> = self.columns().into_iter().map(Subset::bits).collect();
        columns_avoid_pattern(&cols)
    }

    pub fn is_in_dn(&self) -> bool {
        self.is_square() && self.avoids_pattern()
    }

    pub fn is_permutation_matrix(&self) -> bool {
        self.is_square()
            && self.data.iter().all(|r| r.count_ones() == 1)
            && self.data.iter().fold(0u32, |acc, r| acc | r) == Subset::full(self.cols).bits()
    }

    /// Boolean product: `C_xj = ⋁_k A_xk ∧ B_kj`.
    pub fn mul(&self, other: &BoolMatrix) -> Result<BoolMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} · {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &BoolMatrix) -> BoolMatrix {
        let data = self
            .data
            .iter()
            .map(|&row| {
                Subset::from_bits(row)
                    .iter()
                    .fold(0u32, |acc, k| acc | other.data[k - 1])
            })
            .collect();
        BoolMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }
}

impl PartialOrd for BoolMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Shape first, then the row-major flattening; this is ascending flat order
/// within a shape.
impl Ord for BoolMatrix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rows, self.cols)
            .cmp(&(other.rows, other.cols))
            .then_with(|| {
                let key = |m: &BoolMatrix| -> Vec<u32> {
                    m.data.iter().map(|&r| mask_to_digits(r, m.cols)).collect()
                };
                key(self).cmp(&key(other))
            })
    }
}

impl TryFrom<Vec<Vec<u8>>> for BoolMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<u8>>) -> Result<Self> {
        BoolMatrix::from_rows(&rows)
    }
}

impl From<BoolMatrix> for Vec<Vec<u8>> {
    fn from(m: BoolMatrix) -> Self {
        m.to_nested()
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (x, row) in self.to_nested().iter().enumerate() {
            if x > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_shape(rows: usize, cols: usize) -> Result<()> {
    for dim in [rows, cols] {
        if dim == 0 || dim > MAX_INDEX {
            return Err(Error::InvalidRank {
                n: dim,
                max: MAX_INDEX,
            });
        }
    }
    Ok(())
}

fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Row mask (column 1 in bit 0) to its digit value (column 1 most significant).
fn mask_to_digits(mask: u32, cols: usize) -> u32 {
    mask.reverse_bits() >> (32 - cols)
}

fn digits_to_mask(digits: u32, cols: usize) -> u32 {
    digits.reverse_bits() >> (32 - cols)
}

/// Columns `i < j` with supports `ci`, `cj` (bitmasks over rows) jointly
/// avoid the pattern.
#[inline]
pub fn columns_compatible(ci: u32, cj: u32) -> bool {
    Subset::from_bits(cj).dominates(Subset::from_bits(ci))
}

/// Pattern test on a list of column supports, earliest column first. Every
/// pair is checked; compatibility of adjacent columns is not enough.
pub fn columns_avoid_pattern(cols: &[u32]) -> bool {
    cols.iter()
        .enumerate()
        .all(|(i, &ci)| cols[i + 1..].iter().all(|&cj| columns_compatible(ci, cj)))
}

pub fn avoids_pattern(m: &BoolMatrix) -> bool {
    m.avoids_pattern()
}

pub fn bool_mul(a: &BoolMatrix, b: &BoolMatrix) -> Result<BoolMatrix> {
    a.mul(b)
}

pub fn identity_matrix(n: usize) -> Result<BoolMatrix> {
    BoolMatrix::identity(n)
}

pub fn is_permutation_matrix(m: &BoolMatrix) -> bool {
    m.is_permutation_matrix()
}

fn check_guard(n: usize, guard: usize, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidRank { n, max: MAX_INDEX });
    }
    if n > guard {
        return Err(Error::GuardExceeded {
            what,
            requested: n,
            limit: guard,
        });
    }
    Ok(())
}

/// All of `D_n` in ascending flattened order.
///
/// Rows are chosen top to bottom in ascending digit order; a row that clashes
/// with an earlier row rules out every completion of that prefix.
pub fn enumerate_dn(n: usize, guard: usize) -> Result<Vec<BoolMatrix>> {
    check_guard(n, guard, "D_n enumeration rank")?;
    let firsts: Vec<u32> = (0..1u32 << n).map(|d| digits_to_mask(d, n)).collect();
    let chunks: Vec<Vec<BoolMatrix>> = firsts
        .par_iter()
        .map(|&first| {
            let mut out = Vec::new();
            let mut prefix = vec![first];
            extend_rows(n, &mut prefix, &mut |rows| {
                out.push(BoolMatrix {
                    rows: n,
                    cols: n,
                    data: rows.to_vec(),
                })
            });
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// `|D_n|` without materialising the matrices.
pub fn count_dn(n: usize, guard: usize) -> Result<u64> {
    check_guard(n, guard, "D_n enumeration rank")?;
    Ok((0..1u32 << n)
        .into_par_iter()
        .map(|first| {
            let mut count = 0u64;
            extend_rows(n, &mut vec![first], &mut |_| count += 1);
            count
        })
        .sum())
}

fn extend_rows(n: usize, prefix: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
    if prefix.len() == n {
        emit(prefix);
        return;
    }
    for digits in 0..1u32 << n {
        let row = digits_to_mask(digits, n);
        let fits = prefix
            .iter()
            .all(|&upper| Subset::from_bits(row).dominates(Subset::from_bits(upper)));
        if fits {
            prefix.push(row);
            extend_rows(n, prefix, emit);
            prefix.pop();
        }
    }
}

/// All `n!` permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 1..=n {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                go(n, used, cur, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(
        n,
        &mut vec![false; n + 1],
        &mut Vec::with_capacity(n),
        &mut out,
    );
    out
}

/// The invertible elements of `D_n`.
///
/// Only permutation matrices are invertible over the boolean semiring, and a
/// permutation matrix's inverse is its transpose; so candidates are the `n!`
/// permutation matrices, kept when both they and their transpose lie in `D_n`.
pub fn find_units(n: usize, guard: usize) -> Result<Vec<BoolMatrix>> {
    check_guard(n, guard, "unit search rank")?;
    let id = BoolMatrix::identity(n)?;
    let mut units: Vec<BoolMatrix> = permutations(n)
        .iter()
        .map(|p| BoolMatrix::permutation(p))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|m| {
            let t = m.transpose();
            m.is_in_dn() && t.is_in_dn() && m.mul_unchecked(&t) == id && t.mul_unchecked(m) == id
        })
        .collect();
    units.sort();
    Ok(units)
}

/// Quadratic search over `D_n × D_n` for two-sided inverses.
pub fn find_units_exhaustive(n: usize) -> Result<Vec<BoolMatrix>> {
    check_guard(n, EXHAUSTIVE_UNIT_GUARD, "exhaustive unit search rank")?;
    let dn = enumerate_dn(n, EXHAUSTIVE_UNIT_GUARD)?;
    let id = BoolMatrix::identity(n)?;
    Ok(dn
        .iter()
        .filter(|m| {
            dn.iter()
                .any(|k| m.mul_unchecked(k) == id && k.mul_unchecked(m) == id)
        })
        .cloned()
        .collect())
}
