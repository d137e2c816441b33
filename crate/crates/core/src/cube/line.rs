//! Lines: maximal axis-parallel 1-faces.

use serde::{Deserialize, Serialize};

use crate::cube::{Params, Point};
use crate::error::{Error, Result};

/// A line of `Q_k^n`: the `k` cells that agree with `base` on every
/// coordinate except `direction`, where they take all values.
///
/// `base` lists the fixed coordinate values in increasing position order
/// (positions other than `direction`). The canonical line order is
/// direction-major, then ascending base rank, with the first fixed position
/// least significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Line {
    pub direction: u16,
    pub base: Vec<u8>,
}

impl Line {
    pub fn new(params: &Params, direction: u16, base: Vec<u8>) -> Result<Self> {
        if direction as usize >= params.n() {
            return Err(Error::validation(format!(
                "direction {direction} outside 0..{}",
                params.n()
            )));
        }
        if base.len() != params.n() - 1 {
            return Err(Error::validation(format!(
                "expected {} base coordinates, got {}",
                params.n() - 1,
                base.len()
            )));
        }
        for &c in &base {
            if c as usize >= params.k() {
                return Err(Error::validation(format!(
                    "base coordinate {c} outside 0..{}",
                    params.k()
                )));
            }
        }
        Ok(Line { direction, base })
    }

    /// Line with the given canonical index.
    pub fn from_index(params: &Params, index: usize) -> Result<Self> {
        if index >= params.line_count() {
            return Err(Error::validation(format!(
                "line index {index} outside 0..{}",
                params.line_count()
            )));
        }
        let per_direction = params.cells() / params.k();
        let direction = (index / per_direction) as u16;
        let mut rest = index % per_direction;
        let mut base = Vec::with_capacity(params.n() - 1);
        for _ in 0..params.n() - 1 {
            base.push((rest % params.k()) as u8);
            rest /= params.k();
        }
        Ok(Line { direction, base })
    }

    /// Canonical index: `direction * k^(n-1) + base rank`.
    pub fn index(&self, params: &Params) -> usize {
        let base_rank = self
            .base
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * params.k() + c as usize);
        self.direction as usize * (params.cells() / params.k()) + base_rank
    }

    /// Ranks of the line's cells, ascending (by the varying coordinate).
    pub fn cell_ranks(&self, params: &Params) -> Vec<usize> {
        let d = self.direction as usize;
        let step = params.weight(d);
        let mut origin = 0usize;
        let mut pos = 0usize;
        for i in 0..params.n() {
            if i == d {
                continue;
            }
            origin += self.base[pos] as usize * params.weight(i);
            pos += 1;
        }
        (0..params.k()).map(|v| origin + v * step).collect()
    }

    /// The line's cells as points, ascending by the varying coordinate.
    pub fn cells(&self, params: &Params) -> Vec<Point> {
        let d = self.direction as usize;
        (0..params.k() as u8)
            .map(|v| {
                let mut coords = Vec::with_capacity(params.n());
                let mut pos = 0usize;
                for i in 0..params.n() {
                    if i == d {
                        coords.push(v);
                    } else {
                        coords.push(self.base[pos]);
                        pos += 1;
                    }
                }
                Point::new(coords)
            })
            .collect()
    }
}

/// All lines in canonical order.
pub fn lines(params: &Params) -> impl Iterator<Item = Line> + '_ {
    (0..params.line_count()).map(move |i| Line::from_index(params, i).expect("index in range"))
}
