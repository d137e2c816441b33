//! Subsets of a hypercube, encoded as rank-indexed bitsets.

use std::cmp::Ordering;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cube::{Params, Point};
use crate::error::{Error, Result};

/// A set of cells of one space, stored as a bitset over ranks.
///
/// Membership tests are O(1); symmetric difference, union, and intersection
/// are word-parallel. Iteration and serialization are in ascending rank.
/// The JSON form is `{"k": .., "n": .., "cells": [[c0, .., c_{n-1}], ..]}`
/// with cells sorted by rank; on input, cells may come in any order but
/// duplicates are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellSet {
    params: Params,
    blocks: Vec<u64>,
}

impl CellSet {
    pub fn empty(params: Params) -> Self {
        let blocks = vec![0u64; params.cells().div_ceil(64)];
        CellSet { params, blocks }
    }

    pub fn full(params: Params) -> Self {
        let mut s = Self::empty(params);
        for b in &mut s.blocks {
            *b = u64::MAX;
        }
        s.clear_tail();
        s
    }

    pub fn from_ranks(params: Params, ranks: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(params);
        for r in ranks {
            s.insert_rank(r)?;
        }
        Ok(s)
    }

    pub fn from_points<'a>(
        params: Params,
        points: impl IntoIterator<Item = &'a Point>,
    ) -> Result<Self> {
        let mut s = Self::empty(params);
        for p in points {
            let r = params.rank(p)?;
            s.insert_rank(r)?;
        }
        Ok(s)
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Ensure bits past `cells()` stay zero after whole-word operations.
    fn clear_tail(&mut self) {
        let used = self.params.cells() % 64;
        if used != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }

    pub fn insert_rank(&mut self, rank: usize) -> Result<()> {
        if rank >= self.params.cells() {
            return Err(Error::validation(format!(
                "rank {rank} outside 0..{}",
                self.params.cells()
            )));
        }
        self.blocks[rank / 64] |= 1u64 << (rank % 64);
        Ok(())
    }

    pub fn remove_rank(&mut self, rank: usize) -> Result<()> {
        if rank >= self.params.cells() {
            return Err(Error::validation(format!(
                "rank {rank} outside 0..{}",
                self.params.cells()
            )));
        }
        self.blocks[rank / 64] &= !(1u64 << (rank % 64));
        Ok(())
    }

    pub fn contains_rank(&self, rank: usize) -> bool {
        rank < self.params.cells() && self.blocks[rank / 64] >> (rank % 64) & 1 == 1
    }

    pub fn contains(&self, p: &Point) -> bool {
        matches!(self.params.rank(p), Ok(r) if self.contains_rank(r))
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Member ranks in ascending order.
    pub fn iter_ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(w, &block)| {
            let mut bits = block;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    /// Member points in ascending rank order.
    pub fn iter_points(&self) -> impl Iterator<Item = Point> + '_ {
        self.iter_ranks()
            .map(|r| self.params.unrank(r).expect("member rank in range"))
    }

    pub(crate) fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    fn check_same_space(&self, other: &CellSet) -> Result<()> {
        if self.params.k() != other.params.k() || self.params.n() != other.params.n() {
            return Err(Error::validation(format!(
                "space mismatch: Q_{}^{} vs Q_{}^{}",
                self.params.k(),
                self.params.n(),
                other.params.k(),
                other.params.n()
            )));
        }
        Ok(())
    }

    fn zip_blocks(&self, other: &CellSet, f: impl Fn(u64, u64) -> u64) -> Result<CellSet> {
        self.check_same_space(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(CellSet { params: self.params, blocks })
    }

    pub fn symdiff(&self, other: &CellSet) -> Result<CellSet> {
        self.zip_blocks(other, |a, b| a ^ b)
    }

    pub fn union(&self, other: &CellSet) -> Result<CellSet> {
        self.zip_blocks(other, |a, b| a | b)
    }

    pub fn intersect(&self, other: &CellSet) -> Result<CellSet> {
        self.zip_blocks(other, |a, b| a & b)
    }

    pub fn complement(&self) -> CellSet {
        let mut s = CellSet {
            params: self.params,
            blocks: self.blocks.iter().map(|&b| !b).collect(),
        };
        s.clear_tail();
        s
    }

    pub fn is_subset_of(&self, other: &CellSet) -> Result<bool> {
        self.check_same_space(other)?;
        Ok(self
            .blocks
            .iter()
            .zip(&other.blocks)
            .all(|(&a, &b)| a & !b == 0))
    }

    pub fn is_disjoint_from(&self, other: &CellSet) -> Result<bool> {
        self.check_same_space(other)?;
        Ok(self
            .blocks
            .iter()
            .zip(&other.blocks)
            .all(|(&a, &b)| a & b == 0))
    }

    /// Cartesian product: cells of `self` over `Q_k^p` prefixed to cells of
    /// `other` over `Q_k^q`, giving a set in `Q_k^{p+q}`.
    pub fn cartesian_product(&self, other: &CellSet) -> Result<CellSet> {
        if self.params.k() != other.params.k() {
            return Err(Error::validation(format!(
                "alphabet mismatch: k={} vs k={}",
                self.params.k(),
                other.params.k()
            )));
        }
        let cap = self.params.cell_cap().max(other.params.cell_cap());
        let params = Params::with_cell_cap(
            self.params.k() as u16,
            (self.params.n() + other.params.n()) as u16,
            cap,
        )?;
        let stride = self.params.cells();
        let mut s = CellSet::empty(params);
        for rb in other.iter_ranks() {
            for ra in self.iter_ranks() {
                s.insert_rank(ra + rb * stride)?;
            }
        }
        Ok(s)
    }

    /// Same cells re-ranked in `target`, which must have the same `n` and an
    /// alphabet at least as large.
    pub fn reinterpret(&self, target: Params) -> Result<CellSet> {
        if target.n() != self.params.n() || target.k() < self.params.k() {
            return Err(Error::validation(format!(
                "cannot reinterpret Q_{}^{} cells in Q_{}^{}",
                self.params.k(),
                self.params.n(),
                target.k(),
                target.n()
            )));
        }
        let mut s = CellSet::empty(target);
        for p in self.iter_points() {
            let r = target.rank(&p)?;
            s.insert_rank(r)?;
        }
        Ok(s)
    }

    /// Total order: by (k, n), then by the sorted rank list, lexicographically.
    pub fn cmp_canonical(&self, other: &CellSet) -> Ordering {
        (self.params.k(), self.params.n())
            .cmp(&(other.params.k(), other.params.n()))
            .then_with(|| self.iter_ranks().cmp(other.iter_ranks()))
    }
}

#[derive(Serialize, Deserialize)]
struct CellSetRepr {
    k: u16,
    n: u16,
    cells: Vec<Vec<u8>>,
}

impl Serialize for CellSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = CellSetRepr {
            k: self.params.k() as u16,
            n: self.params.n() as u16,
            cells: self.iter_points().map(|p| p.coords().to_vec()).collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CellSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CellSetRepr::deserialize(deserializer)?;
        let params = Params::new(repr.k, repr.n).map_err(D::Error::custom)?;
        let mut s = CellSet::empty(params);
        for coords in &repr.cells {
            let r = params.rank_coords(coords).map_err(D::Error::custom)?;
            if s.contains_rank(r) {
                return Err(D::Error::custom(format!(
                    "duplicate cell {:?}",
                    coords
                )));
            }
            s.insert_rank(r).map_err(D::Error::custom)?;
        }
        Ok(s)
    }
}
