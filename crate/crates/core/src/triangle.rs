//! Generalised BZ triangles.
//!
//! A rank-`r` triangle is a stack of `r(r+1)/2` upward unit triangles in
//! `r` rows. The upward triangle at row `k`, column `c` (`0 ≤ c ≤ k < r`)
//! carries three entries:
//!
//! ```text
//!         top         = m_{1+k−c, N−c}
//! bottom-left         = n_{c+1, k+2}
//!         bottom-right = l_{r−k, r−k+c+1}
//! ```
//!
//! Three neighbouring upward triangles `(k,c)`, `(k+1,c)`, `(k+1,c+1)`
//! enclose a hexagon whose vertices are the two bottom entries of the upper
//! one, the tops of the lower two, and the two inner bottom entries of the
//! lower two. Opposite hexagon sides must have equal length, where a side's
//! length is the sum of its endpoint entries.
//!
//! Printed row by row, row `2k` holds the tops of row `k` and row `2k+1`
//! holds its bottom pairs, which is the familiar layout
//!
//! ```text
//!         m13
//!       n12  l23
//!     m23      m12
//!   n13  l12  n23  l13
//! ```

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    M,
    N,
    L,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::M => "m",
            Family::N => "n",
            Family::L => "l",
        })
    }
}

/// Name of a triangle entry, e.g. `m_{1,3}`; `1 ≤ i < j ≤ N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntryKey {
    pub family: Family,
    pub i: usize,
    pub j: usize,
}

impl EntryKey {
    pub const fn new(family: Family, i: usize, j: usize) -> Self {
        Self { family, i, j }
    }

    pub const fn m(i: usize, j: usize) -> Self {
        Self::new(Family::M, i, j)
    }

    pub const fn n(i: usize, j: usize) -> Self {
        Self::new(Family::N, i, j)
    }

    pub const fn l(i: usize, j: usize) -> Self {
        Self::new(Family::L, i, j)
    }
}

impl fmt::Display for EntryKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{{{},{}}}", self.family, self.i, self.j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Corner {
    Top,
    BottomLeft,
    BottomRight,
}

const CORNERS: [Corner; 3] = [Corner::Top, Corner::BottomLeft, Corner::BottomRight];

/// Where a hexagon sits, in the labelling used by the coefficient lattice:
/// `Eta(l)` for the hexagons along the right edge (`l = 1` at the bottom),
/// `D(i, j)` for the rest (`i` counts rows from the bottom, `j` columns
/// from the left, `i + j ≤ r − 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HexagonLabel {
    Eta(usize),
    D(usize, usize),
}

impl fmt::Display for HexagonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HexagonLabel::Eta(l) => write!(f, "eta_{l}"),
            HexagonLabel::D(i, j) => write!(f, "d_{i}_{j}"),
        }
    }
}

/// A hexagon, identified by the downward unit triangle at its centre:
/// row `k`, column `c`, with `0 ≤ c ≤ k ≤ r − 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HexagonId {
    row: usize,
    col: usize,
}

impl HexagonId {
    pub fn row(&self) -> usize {
        self.row
    }

    pub fn col(&self) -> usize {
        self.col
    }

    /// Row-major position among all hexagons (0-based).
    pub fn ordinal(&self) -> usize {
        self.row * (self.row + 1) / 2 + self.col
    }

    pub fn label(&self, shape: TriangleShape) -> HexagonLabel {
        let r = shape.rank();
        if self.col == self.row {
            HexagonLabel::Eta(r - 1 - self.row)
        } else {
            HexagonLabel::D(r - 1 - self.row, self.col + 1)
        }
    }

    pub fn from_label(shape: TriangleShape, label: HexagonLabel) -> Option<Self> {
        let r = shape.rank();
        match label {
            HexagonLabel::Eta(l) if (1..r).contains(&l) => Some(Self {
                row: r - 1 - l,
                col: r - 1 - l,
            }),
            HexagonLabel::D(i, j) if i >= 1 && j >= 1 && i + j < r => Some(Self {
                row: r - 1 - i,
                col: j - 1,
            }),
            _ => None,
        }
    }
}

/// The six entries around a hexagon in cyclic order, starting at the
/// upper-left vertex and going clockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HexagonVertices {
    pub upper_left: usize,
    pub upper_right: usize,
    pub right: usize,
    pub lower_right: usize,
    pub lower_left: usize,
    pub left: usize,
}

impl HexagonVertices {
    pub fn all(&self) -> [usize; 6] {
        [
            self.upper_left,
            self.upper_right,
            self.right,
            self.lower_right,
            self.lower_left,
            self.left,
        ]
    }

    /// The three opposite-side identities `a + b = c + d`, as
    /// `((a, b), (c, d))` entry indices. Any two of them imply the third.
    pub fn identities(&self) -> [((usize, usize), (usize, usize)); 3] {
        [
            (
                (self.upper_left, self.upper_right),
                (self.lower_right, self.lower_left),
            ),
            ((self.upper_right, self.right), (self.lower_left, self.left)),
            ((self.right, self.lower_right), (self.left, self.upper_left)),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriangleShape {
    rank: usize,
}

impl TriangleShape {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Self { rank })
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `N = r + 1`.
    #[inline]
    pub fn n(&self) -> usize {
        self.rank + 1
    }

    /// `E_r = 3r(r+1)/2`.
    pub fn entry_count(&self) -> usize {
        3 * self.rank * (self.rank + 1) / 2
    }

    /// `H_r = r(r−1)/2`.
    pub fn hexagon_count(&self) -> usize {
        self.rank * (self.rank - 1) / 2
    }

    #[inline]
    pub fn index(&self, row: usize, col: usize, corner: Corner) -> usize {
        debug_assert!(col <= row && row < self.rank);
        3 * (row * (row + 1) / 2 + col) + corner as usize
    }

    pub fn position(&self, index: usize) -> (usize, usize, Corner) {
        let cell = index / 3;
        let mut row = 0;
        while (row + 1) * (row + 2) / 2 <= cell {
            row += 1;
        }
        (row, cell - row * (row + 1) / 2, CORNERS[index % 3])
    }

    pub fn key_at(&self, index: usize) -> EntryKey {
        let (k, c, corner) = self.position(index);
        let (r, n) = (self.rank, self.n());
        match corner {
            Corner::Top => EntryKey::m(1 + k - c, n - c),
            Corner::BottomLeft => EntryKey::n(c + 1, k + 2),
            Corner::BottomRight => EntryKey::l(r - k, r - k + c + 1),
        }
    }

    pub fn index_of(&self, key: EntryKey) -> Option<usize> {
        let (r, n) = (self.rank, self.n());
        let EntryKey { family, i, j } = key;
        if !(1 <= i && i < j && j <= n) {
            return None;
        }
        let (k, c, corner) = match family {
            Family::M => {
                let c = n - j;
                (i - 1 + c, c, Corner::Top)
            }
            Family::N => (j - 2, i - 1, Corner::BottomLeft),
            Family::L => (r - i, j - i - 1, Corner::BottomRight),
        };
        Some(self.index(k, c, corner))
    }

    pub fn hexagons(&self) -> impl Iterator<Item = HexagonId> {
        let rows = self.rank.saturating_sub(1);
        (0..rows).flat_map(|row| (0..=row).map(move |col| HexagonId { row, col }))
    }

    pub fn hexagon_vertices(&self, h: HexagonId) -> HexagonVertices {
        let (k, c) = (h.row, h.col);
        HexagonVertices {
            upper_left: self.index(k, c, Corner::BottomLeft),
            upper_right: self.index(k, c, Corner::BottomRight),
            right: self.index(k + 1, c + 1, Corner::Top),
            lower_right: self.index(k + 1, c + 1, Corner::BottomLeft),
            lower_left: self.index(k + 1, c, Corner::BottomRight),
            left: self.index(k + 1, c, Corner::Top),
        }
    }

    /// Entry indices row by row in the printed layout.
    pub fn layout_rows(&self) -> Vec<Vec<usize>> {
        let mut rows = Vec::with_capacity(2 * self.rank);
        for k in 0..self.rank {
            rows.push((0..=k).map(|c| self.index(k, c, Corner::Top)).collect());
            rows.push(
                (0..=k)
                    .flat_map(|c| {
                        [
                            self.index(k, c, Corner::BottomLeft),
                            self.index(k, c, Corner::BottomRight),
                        ]
                    })
                    .collect(),
            );
        }
        rows
    }

    /// Entry indices whose sums give `λ_i`, `μ_i`, `ν_i`:
    /// `λ_i = m_{i,N} + n_{1,i+1}`, `μ_i = n_{i,N} + l_{1,i+1}`,
    /// `ν_i = l_{i,N} + m_{1,i+1}`.
    pub fn outer_pairs(&self) -> [Vec<(usize, usize)>; 3] {
        let r = self.rank;
        let lambda = (1..=r)
            .map(|i| {
                (
                    self.index(i - 1, 0, Corner::Top),
                    self.index(i - 1, 0, Corner::BottomLeft),
                )
            })
            .collect();
        let mu = (1..=r)
            .map(|i| {
                (
                    self.index(r - 1, i - 1, Corner::BottomLeft),
                    self.index(r - 1, i - 1, Corner::BottomRight),
                )
            })
            .collect();
        let nu = (1..=r)
            .map(|i| {
                (
                    self.index(r - i, r - i, Corner::BottomRight),
                    self.index(r - i, r - i, Corner::Top),
                )
            })
            .collect();
        [lambda, mu, nu]
    }
}

/// Two residuals per hexagon (upper/lower and upper-right/lower-left side
/// differences), in hexagon row-major order.
pub fn hexagon_residuals(shape: TriangleShape, entries: &[i64]) -> Vec<i64> {
    assert_eq!(entries.len(), shape.entry_count());
    let mut out = Vec::with_capacity(2 * shape.hexagon_count());
    for h in shape.hexagons() {
        let ids = shape.hexagon_vertices(h).identities();
        for &((a, b), (c, d)) in &ids[..2] {
            out.push(entries[a] + entries[b] - entries[c] - entries[d]);
        }
    }
    out
}

/// [`hexagon_residuals`] on a keyed map; every key of the shape must be
/// present.
pub fn hexagon_residuals_of_map(
    shape: TriangleShape,
    entries: &BTreeMap<EntryKey, i64>,
) -> Result<Vec<i64>> {
    let flat = flatten(shape, entries)?;
    Ok(hexagon_residuals(shape, &flat))
}

fn flatten(shape: TriangleShape, entries: &BTreeMap<EntryKey, i64>) -> Result<Vec<i64>> {
    if let Some(key) = entries.keys().find(|k| shape.index_of(**k).is_none()) {
        return Err(Error::UnknownEntry(*key, shape.rank()));
    }
    (0..shape.entry_count())
        .map(|idx| {
            let key = shape.key_at(idx);
            entries.get(&key).copied().ok_or(Error::MissingEntry(key))
        })
        .collect()
}

/// Dynkin-label triple read off a generalised triangle; labels may be
/// negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterWeights {
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub nu: Vec<i64>,
}

impl OuterWeights {
    pub fn zero(rank: usize) -> Self {
        Self {
            lambda: vec![0; rank],
            mu: vec![0; rank],
            nu: vec![0; rank],
        }
    }

    pub fn matches(&self, lambda: &[i64], mu: &[i64], nu: &[i64]) -> bool {
        self.lambda == lambda && self.mu == mu && self.nu == nu
    }
}

/// An integer triangle satisfying every hexagon condition. Entries may be
/// negative; see [`GeneralTriangle::is_true`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneralTriangle {
    rank: usize,
    entries: Vec<i64>,
}

impl GeneralTriangle {
    /// Builds a triangle from entries in index order (see
    /// [`TriangleShape::index`]), rejecting hexagon violations.
    pub fn new(shape: TriangleShape, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != shape.entry_count() {
            return Err(Error::EntryCount {
                expected: shape.entry_count(),
                found: entries.len(),
            });
        }
        if let Some(pos) = hexagon_residuals(shape, &entries)
            .iter()
            .position(|&r| r != 0)
        {
            return Err(Error::HexagonViolation { hexagon: pos / 2 });
        }
        Ok(Self {
            rank: shape.rank(),
            entries,
        })
    }

    pub fn from_map(shape: TriangleShape, entries: &BTreeMap<EntryKey, i64>) -> Result<Self> {
        Self::new(shape, flatten(shape, entries)?)
    }

    pub fn zero(shape: TriangleShape) -> Self {
        Self {
            rank: shape.rank(),
            entries: vec![0; shape.entry_count()],
        }
    }

    pub(crate) fn from_raw(shape: TriangleShape, entries: Vec<i64>) -> Self {
        debug_assert!(hexagon_residuals(shape, &entries).iter().all(|&r| r == 0));
        Self {
            rank: shape.rank(),
            entries,
        }
    }

    pub fn shape(&self) -> TriangleShape {
        TriangleShape { rank: self.rank }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, key: EntryKey) -> Option<i64> {
        self.shape().index_of(key).map(|i| self.entries[i])
    }

    pub fn at(&self, row: usize, col: usize, corner: Corner) -> i64 {
        self.entries[self.shape().index(row, col, corner)]
    }

    pub fn to_map(&self) -> BTreeMap<EntryKey, i64> {
        let shape = self.shape();
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &v)| (shape.key_at(i), v))
            .collect()
    }

    pub fn outer_weights(&self) -> OuterWeights {
        let [lambda, mu, nu] = self.shape().outer_pairs();
        let sum = |pairs: Vec<(usize, usize)>| -> Vec<i64> {
            pairs
                .into_iter()
                .map(|(a, b)| self.entries[a] + self.entries[b])
                .collect()
        };
        OuterWeights {
            lambda: sum(lambda),
            mu: sum(mu),
            nu: sum(nu),
        }
    }

    /// A true BZ triangle has no negative entry.
    pub fn is_true(&self) -> bool {
        self.entries.iter().all(|&e| e >= 0)
    }

    /// `self + factor·other`.
    pub fn add_scaled(&self, factor: i64, other: &GeneralTriangle) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::ShapeMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| {
                b.checked_mul(factor)
                    .and_then(|p| a.checked_add(p))
                    .ok_or(Error::Overflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rank: self.rank,
            entries,
        })
    }

    pub fn sub(&self, other: &GeneralTriangle) -> Result<Self> {
        self.add_scaled(-1, other)
    }

    /// Entry values row by row in the printed layout.
    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.shape()
            .layout_rows()
            .into_iter()
            .map(|row| row.into_iter().map(|i| self.entries[i]).collect())
            .collect()
    }
}

/// Geometric layout: row `2k` carries the tops of the upward triangles of
/// row `k`, row `2k+1` their bottom pairs. Negative entries print with a
/// minus sign.
impl fmt::Display for GeneralTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shape = self.shape();
        let r = shape.rank();
        let cell = self
            .entries
            .iter()
            .map(|e| {
                let mut w = if *e < 0 { 2 } else { 1 };
                let mut v = e.unsigned_abs();
                while v >= 10 {
                    v /= 10;
                    w += 1;
                }
                w
            })
            .max()
            .unwrap_or(1);
        // centre of upward triangle (k, c), in units of `cell` columns
        let centre = |k: usize, c: usize| 3 * (2 * c + r - 1 - k);
        for k in 0..r {
            let tops: Vec<(usize, i64)> = (0..=k)
                .map(|c| (centre(k, c) + 1, self.at(k, c, Corner::Top)))
                .collect();
            let bottoms: Vec<(usize, i64)> = (0..=k)
                .flat_map(|c| {
                    [
                        (centre(k, c), self.at(k, c, Corner::BottomLeft)),
                        (centre(k, c) + 2, self.at(k, c, Corner::BottomRight)),
                    ]
                })
                .collect();
            for (line, items) in [tops, bottoms].iter().enumerate() {
                if k > 0 || line > 0 {
                    writeln!(f)?;
                }
                let mut col = 0;
                for &(pos, v) in items {
                    let start = pos * cell;
                    write!(f, "{:pad$}{:>cell$}", "", v, pad = start - col)?;
                    col = start + cell;
                }
            }
        }
        Ok(())
    }
}
