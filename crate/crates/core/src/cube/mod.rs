//! The k-ary n-dimensional hypercube `Q_k^n`.
//!
//! Cells are identified with their *rank*: the mixed-radix value of the
//! coordinate vector with coordinate 0 least significant, so
//! `rank = sum coords[i] * k^i`. All iteration, serialization, and witness
//! ordering follow ascending rank.

mod cellset;
mod face;
mod graph;
mod line;

pub use cellset::CellSet;
pub use face::{faces, Face};
pub use graph::{color_components, Coloring, InducedGraph, OddCycle};
pub use line::{lines, Line};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on `k^n`. Guards against runaway allocations; raise it
/// explicitly with [`Params::with_cell_cap`] when a larger space is intended.
pub const DEFAULT_CELL_CAP: usize = 1 << 22;

/// Dimensions of a space `Q_k^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    k: u16,
    n: u16,
    cells: usize,
    cell_cap: usize,
}

impl Params {
    /// A space with `2 <= k <= 256`, `n >= 1`, and `k^n` within the default cap.
    pub fn new(k: u16, n: u16) -> Result<Self> {
        Self::with_cell_cap(k, n, DEFAULT_CELL_CAP)
    }

    /// Same as [`Params::new`] with an explicit cell cap.
    pub fn with_cell_cap(k: u16, n: u16, cell_cap: usize) -> Result<Self> {
        if !(2..=256).contains(&k) {
            return Err(Error::validation(format!("k must be in 2..=256, got {k}")));
        }
        if n == 0 {
            return Err(Error::validation("n must be at least 1"));
        }
        let mut cells = 1usize;
        for _ in 0..n {
            cells = cells
                .checked_mul(k as usize)
                .filter(|&c| c <= cell_cap)
                .ok_or_else(|| {
                    Error::validation(format!(
                        "space Q_{k}^{n} exceeds the cell cap {cell_cap}"
                    ))
                })?;
        }
        Ok(Params { k, n, cells, cell_cap })
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Total number of cells, `k^n`.
    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn cell_cap(&self) -> usize {
        self.cell_cap
    }

    /// Number of lines, `n * k^(n-1)`.
    pub fn line_count(&self) -> usize {
        self.n() * self.cells / self.k()
    }

    /// `k^i`, the rank weight of coordinate `i`.
    pub fn weight(&self, i: usize) -> usize {
        (self.k as usize).pow(i as u32)
    }

    fn check_coords(&self, coords: &[u8]) -> Result<()> {
        if coords.len() != self.n() {
            return Err(Error::validation(format!(
                "expected {} coordinates, got {}",
                self.n(),
                coords.len()
            )));
        }
        for (i, &c) in coords.iter().enumerate() {
            if c as usize >= self.k() {
                return Err(Error::validation(format!(
                    "coordinate {i} is {c}, outside 0..{}",
                    self.k()
                )));
            }
        }
        Ok(())
    }

    /// Rank of a point.
    pub fn rank(&self, p: &Point) -> Result<usize> {
        self.rank_coords(p.coords())
    }

    /// Rank of a coordinate vector.
    pub fn rank_coords(&self, coords: &[u8]) -> Result<usize> {
        self.check_coords(coords)?;
        let k = self.k();
        Ok(coords
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * k + c as usize))
    }

    /// Point with the given rank.
    pub fn unrank(&self, rank: usize) -> Result<Point> {
        if rank >= self.cells {
            return Err(Error::validation(format!(
                "rank {rank} outside 0..{}",
                self.cells
            )));
        }
        let k = self.k();
        let mut rest = rank;
        let mut coords = Vec::with_capacity(self.n());
        for _ in 0..self.n {
            coords.push((rest % k) as u8);
            rest /= k;
        }
        Ok(Point::new(coords))
    }

    /// All points in ascending rank order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.cells).map(move |r| self.unrank(r).expect("rank in range"))
    }
}

/// A cell of a hypercube: its coordinate vector.
///
/// Points do not carry their space; operations that need one take [`Params`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<u8>,
}

impl Point {
    pub fn new(coords: Vec<u8>) -> Self {
        Point { coords }
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<&[u8]> for Point {
    fn from(coords: &[u8]) -> Self {
        Point::new(coords.to_vec())
    }
}

impl<const N: usize> From<[u8; N]> for Point {
    fn from(coords: [u8; N]) -> Self {
        Point::new(coords.to_vec())
    }
}

/// Number of coordinates where `x` and `y` differ.
pub fn hamming_distance(x: &Point, y: &Point) -> Result<usize> {
    if x.dim() != y.dim() {
        return Err(Error::validation(format!(
            "dimension mismatch: {} vs {}",
            x.dim(),
            y.dim()
        )));
    }
    Ok(x.coords()
        .iter()
        .zip(y.coords())
        .filter(|(a, b)| a != b)
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_is_mixed_radix_with_coord_zero_least_significant() {
        let p = Params::new(3, 2).unwrap();
        assert_eq!(p.rank(&Point::from([0, 0])).unwrap(), 0);
        assert_eq!(p.rank(&Point::from([1, 0])).unwrap(), 1);
        assert_eq!(p.rank(&Point::from([0, 1])).unwrap(), 3);
        assert_eq!(p.rank(&Point::from([1, 2])).unwrap(), 7);
        assert_eq!(p.rank(&Point::from([2, 2])).unwrap(), 8);
    }

    #[test]
    fn unrank_inverts_rank_exhaustively() {
        let p = Params::new(3, 2).unwrap();
        for r in 0..p.cells() {
            assert_eq!(p.rank(&p.unrank(r).unwrap()).unwrap(), r);
        }
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(Params::new(1, 2).is_err());
        assert!(Params::new(257, 1).is_err());
        assert!(Params::new(2, 0).is_err());
        assert!(Params::new(2, 23).is_err());
        assert!(Params::with_cell_cap(2, 23, 1 << 23).is_ok());
    }

    #[test]
    fn rejects_bad_coordinates() {
        let p = Params::new(3, 2).unwrap();
        assert!(p.rank(&Point::from([3, 0])).is_err());
        assert!(p.rank(&Point::from([0, 0, 0])).is_err());
        assert!(p.unrank(9).is_err());
    }

    #[test]
    fn n_equal_one_is_supported() {
        let p = Params::new(4, 1).unwrap();
        assert_eq!(p.cells(), 4);
        assert_eq!(p.line_count(), 1);
        assert_eq!(p.unrank(3).unwrap(), Point::from([3]));
    }

    #[test]
    fn hamming_distance_counts_differing_coordinates() {
        let x = Point::from([0, 1, 2]);
        let y = Point::from([0, 2, 2]);
        assert_eq!(hamming_distance(&x, &y).unwrap(), 1);
        assert_eq!(hamming_distance(&x, &x).unwrap(), 0);
        assert!(hamming_distance(&x, &Point::from([0, 1])).is_err());
    }

    #[test]
    fn points_iterate_in_rank_order() {
        let p = Params::new(2, 3).unwrap();
        let pts: Vec<Point> = p.points().collect();
        assert_eq!(pts.len(), 8);
        assert_eq!(pts[0], Point::from([0, 0, 0]));
        assert_eq!(pts[1], Point::from([1, 0, 0]));
        assert_eq!(pts[7], Point::from([1, 1, 1]));
    }
}
