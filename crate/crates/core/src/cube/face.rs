//! Faces: axis-parallel subcubes of any dimension.

use serde::{Deserialize, Serialize};

use crate::cube::{Params, Point};
use crate::error::{Error, Result};

/// An m-dimensional face: `free` lists the m varying positions (ascending),
/// `fixed` the values of the remaining positions in increasing position order.
///
/// The canonical face order enumerates free-position subsets in lexicographic
/// order, then fixed values by ascending rank (first fixed position least
/// significant). For m = 1 this coincides with the canonical line order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    pub free: Vec<u16>,
    pub fixed: Vec<u8>,
}

impl Face {
    pub fn new(params: &Params, free: Vec<u16>, fixed: Vec<u8>) -> Result<Self> {
        if free.len() + fixed.len() != params.n() {
            return Err(Error::validation(format!(
                "free ({}) plus fixed ({}) positions must cover all {} coordinates",
                free.len(),
                fixed.len(),
                params.n()
            )));
        }
        if !free.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::validation("free positions must be strictly increasing"));
        }
        if free.iter().any(|&i| i as usize >= params.n()) {
            return Err(Error::validation("free position outside the space"));
        }
        if fixed.iter().any(|&c| c as usize >= params.k()) {
            return Err(Error::validation("fixed coordinate outside the alphabet"));
        }
        Ok(Face { free, fixed })
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// The face's `k^m` cells, ascending by rank.
    pub fn cells(&self, params: &Params) -> Vec<Point> {
        let m = self.free.len();
        let count = params.k().pow(m as u32);
        let mut template = vec![0u8; params.n()];
        let mut pos = 0usize;
        for i in 0..params.n() {
            if !self.free.contains(&(i as u16)) {
                template[i] = self.fixed[pos];
                pos += 1;
            }
        }
        (0..count)
            .map(|v| {
                let mut coords = template.clone();
                let mut rest = v;
                for &f in &self.free {
                    coords[f as usize] = (rest % params.k()) as u8;
                    rest /= params.k();
                }
                Point::new(coords)
            })
            .collect()
    }
}

/// All m-dimensional faces in canonical order: `C(n, m) * k^(n-m)` of them.
pub fn faces(params: &Params, m: usize) -> Result<impl Iterator<Item = Face> + '_> {
    if m > params.n() {
        return Err(Error::validation(format!(
            "face dimension {m} exceeds n = {}",
            params.n()
        )));
    }
    let combos = combinations(params.n(), m);
    let fixed_count = params.cells() / params.k().pow(m as u32);
    Ok(combos.into_iter().flat_map(move |free| {
        (0..fixed_count).map(move |v| {
            let mut fixed = Vec::with_capacity(params.n() - free.len());
            let mut rest = v;
            for _ in 0..params.n() - free.len() {
                fixed.push((rest % params.k()) as u8);
                rest /= params.k();
            }
            Face { free: free.clone(), fixed }
        })
    }))
}

/// m-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, m: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut current: Vec<u16> = (0..m as u16).collect();
    if m > n {
        return out;
    }
    loop {
        out.push(current.clone());
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < (n - m + i) as u16 {
                current[i] += 1;
                for j in i + 1..m {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}
