//! Canonical enumeration of 2-planes in `F_q^7` and of points of `P^n(F_q)`.
//!
//! Planes are listed in RREF. The outer order is by pivot pair `(i, j)`,
//! lexicographic; inside a pivot block the free entries are read row-major
//! (free entries of the first row, then of the second) and counted like an
//! odometer with the last free entry varying fastest. Projective points are
//! normalized so the first nonzero coordinate is 1; they are ordered by the
//! position of that 1, then odometer-style over the later coordinates.
//!
//! Every stream supports random access by index, so callers can split work
//! into contiguous index ranges.

use std::ops::Range;

use crate::altform::{Plane2, Vec7, DIM, PAIRS};

pub(crate) fn pow(q: u64, e: usize) -> u64 {
    q.pow(e as u32)
}

/// Free coordinate positions of the two RREF rows for pivots `(i, j)`.
pub(crate) fn free_positions(i: usize, j: usize) -> (Vec<usize>, Vec<usize>) {
    let first = (i + 1..DIM).filter(|&k| k != j).collect();
    let second = (j + 1..DIM).collect();
    (first, second)
}

fn block_size(q: u64, i: usize, j: usize) -> u64 {
    pow(q, 11 - i - j)
}

/// Number of 2-planes in `F_q^7`, by summing pivot blocks.
pub fn plane_count(q: u64) -> u64 {
    PAIRS.iter().map(|&(i, j)| block_size(q, i, j)).sum()
}

/// Location of a plane index: pivot pair slot and offset inside the block.
pub(crate) fn locate_plane(q: u64, index: u64) -> Option<(usize, u64)> {
    let mut rem = index;
    for (slot, &(i, j)) in PAIRS.iter().enumerate() {
        let size = block_size(q, i, j);
        if rem < size {
            return Some((slot, rem));
        }
        rem -= size;
    }
    None
}

/// Writes base-`q` digits of `offset` into `positions` (last position least
/// significant).
pub(crate) fn spread_digits(q: u64, mut offset: u64, positions: &[usize], out: &mut Vec7) {
    for &pos in positions.iter().rev() {
        out[pos] = (offset % q) as u8;
        offset /= q;
    }
    debug_assert_eq!(offset, 0);
}

/// Canonical RREF rows for the plane in `slot` with the given free-entry
/// offset.
pub(crate) fn plane_rows(q: u64, slot: usize, offset: u64) -> [Vec7; 2] {
    let (i, j) = PAIRS[slot];
    let (f1, f2) = free_positions(i, j);
    let mut r1 = [0u8; DIM];
    let mut r2 = [0u8; DIM];
    r1[i] = 1;
    r2[j] = 1;
    let low = pow(q, f2.len());
    spread_digits(q, offset / low, &f1, &mut r1);
    spread_digits(q, offset % low, &f2, &mut r2);
    [r1, r2]
}

/// The plane at position `index` of the canonical stream.
pub fn plane_at(q: u64, index: u64) -> Option<Plane2> {
    let (slot, offset) = locate_plane(q, index)?;
    Some(Plane2::from_canonical(plane_rows(q, slot, offset), PAIRS[slot]))
}

/// Canonical plane stream restricted to an index range.
#[derive(Debug, Clone)]
pub struct Planes {
    q: u64,
    range: Range<u64>,
}

impl Planes {
    pub fn all(q: u64) -> Self {
        Self::range(q, 0..plane_count(q))
    }

    pub fn range(q: u64, range: Range<u64>) -> Self {
        let end = range.end.min(plane_count(q));
        Self {
            q,
            range: range.start.min(end)..end,
        }
    }
}

impl Iterator for Planes {
    type Item = Plane2;

    fn next(&mut self) -> Option<Plane2> {
        let idx = self.range.next()?;
        plane_at(self.q, idx)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.range.size_hint()
    }
}

impl ExactSizeIterator for Planes {}

/// `P^dim(F_q)` with normalized representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProjectiveSpace {
    q: u64,
    dim: usize,
}

impl ProjectiveSpace {
    pub fn new(q: u64, dim: usize) -> Self {
        assert!(dim < DIM, "coordinates are held in a 7-vector");
        Self { q, dim }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self) -> u64 {
        (0..=self.dim).map(|lead| pow(self.q, self.dim - lead)).sum()
    }

    /// Writes the point at `index` into `out[..=dim]`; the rest of `out` is
    /// zeroed. Panics if `index` is out of range.
    pub fn point_into(&self, index: u64, out: &mut Vec7) {
        *out = [0; DIM];
        let mut rem = index;
        for lead in 0..=self.dim {
            let size = pow(self.q, self.dim - lead);
            if rem < size {
                out[lead] = 1;
                let positions: Vec<usize> = (lead + 1..=self.dim).collect();
                spread_digits(self.q, rem, &positions, out);
                return;
            }
            rem -= size;
        }
        panic!("projective index {index} out of range");
    }

    pub fn point(&self, index: u64) -> Vec<u8> {
        let mut v = [0; DIM];
        self.point_into(index, &mut v);
        v[..=self.dim].to_vec()
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<u8>> + '_ {
        (0..self.count()).map(|i| self.point(i))
    }

    /// All points as 7-vectors (zero padded), in stream order.
    pub fn collect7(&self) -> Vec<Vec7> {
        (0..self.count())
            .map(|i| {
                let mut v = [0; DIM];
                self.point_into(i, &mut v);
                v
            })
            .collect()
    }
}
