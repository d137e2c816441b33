//! Bitrade catalogs: the parity-extension enumeration for `Q_3^n` and an
//! independent brute-force oracle.

use crate::cube::{lines, CellSet, Params};
use crate::error::{Error, Result};
use crate::verify::is_latin_bitrade;

use super::engine::{search_all, LineRule, LineTable, Searcher};
use super::{SearchOptions, SearchReport};

/// All `2^(2^n)` latin bitrades of `Q_3^n`, in subset-rank order of the
/// generating sets `A` of the binary subcube. Every emitted set is distinct
/// and passes the bitrade check; member `a = 0` is the empty set.
///
/// Supported for `n <= 4` (65536 bitrades); larger n is refused.
pub fn enumerate_bitrades_q3(n: u16) -> Result<impl Iterator<Item = CellSet>> {
    if n == 0 || n > 4 {
        return Err(Error::refused(format!(
            "the catalog has 2^(2^n) members; n = {n} is outside 1..=4"
        )));
    }
    let params = Params::new(3, n)?;
    let binary_points = 1usize << n;

    // Parity extension of each singleton subset, as a bitmask over cell
    // ranks (3^4 = 81 cells at most, so u128 suffices).
    let mut singleton = vec![0u128; binary_points];
    for (m, mask) in singleton.iter_mut().enumerate() {
        for (rank, y) in params.points().enumerate() {
            let covered = y
                .coords()
                .iter()
                .enumerate()
                .all(|(i, &c)| c == 2 || (c == 1) == (m >> i & 1 == 1));
            if covered {
                *mask |= 1 << rank;
            }
        }
    }

    let cells = params.cells();
    Ok((0..1u64 << binary_points).map(move |a| {
        let mut bits = 0u128;
        for (m, &mask) in singleton.iter().enumerate() {
            if a >> m & 1 == 1 {
                bits ^= mask;
            }
        }
        let ranks = (0..cells).filter(|&r| bits >> r & 1 == 1);
        CellSet::from_ranks(params, ranks).expect("ranks below 3^n")
    }))
}

/// Strategy for [`brute_force_bitrades`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteStrategy {
    /// Subset scan for small spaces, backtracking otherwise.
    Auto,
    /// Scan all `2^(k^n)` subsets. Refused above 24 cells.
    Subsets,
    /// Line-consistency backtracking.
    Backtracking,
}

/// Find every latin bitrade of `Q_k^n`, by raw subset scan or by
/// backtracking. Both strategies count each bitrade exactly once and agree
/// on the result; the subset scan doubles as an oracle for the engine.
pub fn brute_force_bitrades(
    params: Params,
    opts: &SearchOptions,
    strategy: BruteStrategy,
) -> Result<SearchReport> {
    let use_subsets = match strategy {
        BruteStrategy::Auto => params.cells() <= 20,
        BruteStrategy::Subsets => {
            if params.cells() > 24 {
                return Err(Error::refused(format!(
                    "subset scan would visit 2^{} subsets",
                    params.cells()
                )));
            }
            true
        }
        BruteStrategy::Backtracking => false,
    };
    if use_subsets {
        subset_scan(params, opts)
    } else {
        backtracking_scan(params, opts)
    }
}

fn subset_scan(params: Params, opts: &SearchOptions) -> Result<SearchReport> {
    let cells = params.cells();
    let projected = 1u64 << cells;
    if projected > opts.node_budget {
        return Err(Error::refused(format!(
            "subset scan projects {projected} nodes, over the budget {}",
            opts.node_budget
        )));
    }
    let line_masks: Vec<u64> = lines(&params)
        .map(|line| {
            line.cell_ranks(&params)
                .into_iter()
                .fold(0u64, |acc, r| acc | 1 << r)
        })
        .collect();

    let mut report = SearchReport::new(
        params,
        format!(
            "latin bitrades of Q_{}^{} by subset scan",
            params.k(),
            params.n()
        ),
    );
    let mut objects = Vec::new();
    for mask in 0..projected {
        let good = line_masks.iter().all(|&lm| {
            let c = (mask & lm).count_ones();
            c == 0 || c == 2
        });
        if !good {
            continue;
        }
        report.count += 1;
        *report
            .histogram
            .entry(mask.count_ones() as usize)
            .or_insert(0) += 1;
        if opts.store_objects || opts.self_check {
            let ranks = (0..cells).filter(|&r| mask >> r & 1 == 1);
            let set = CellSet::from_ranks(params, ranks)?;
            if opts.self_check && !is_latin_bitrade(&set).verdict {
                return Err(Error::validation(
                    "self-check: an emitted object fails its defining verifier",
                ));
            }
            if opts.store_objects {
                if objects.len() >= opts.store_cap {
                    return Err(Error::refused(format!(
                        "object store cap {} exceeded",
                        opts.store_cap
                    )));
                }
                objects.push(set);
            }
        }
    }
    report.nodes = projected;
    if opts.store_objects {
        objects.sort_by(CellSet::cmp_canonical);
        report.objects = Some(objects);
    }
    Ok(report)
}

fn backtracking_scan(params: Params, opts: &SearchOptions) -> Result<SearchReport> {
    let table = LineTable::new(params);
    let root = Searcher::new(&table, LineRule::ZeroOrTwo, opts.node_budget);
    let check = |s: &CellSet| is_latin_bitrade(s).verdict;
    let collected = search_all(
        &root,
        opts,
        opts.self_check
            .then_some(&check as &(dyn Fn(&CellSet) -> bool + Sync)),
    )?;
    let mut report = SearchReport::new(
        params,
        format!(
            "latin bitrades of Q_{}^{} by backtracking",
            params.k(),
            params.n()
        ),
    );
    report.count = collected.count;
    report.histogram = collected.histogram;
    report.nodes = collected.nodes;
    if opts.store_objects {
        report.objects = Some(collected.objects);
    }
    Ok(report)
}
