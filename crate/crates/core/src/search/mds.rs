//! Exhaustive enumeration of t-fold MDS codes.

use crate::cube::{CellSet, Params};
use crate::error::{Error, Result};
use crate::verify::is_t_fold_mds;

use super::engine::{search_all, LineRule, LineTable, Searcher};
use super::{SearchOptions, SearchReport};

/// Every t-fold MDS code of `Q_k^n`, by most-constrained-line backtracking.
/// Stored objects come back in canonical order. The node budget is the
/// feasibility guard: spaces whose search tree outgrows it are refused.
pub fn enumerate_mds(params: Params, t: usize, opts: &SearchOptions) -> Result<SearchReport> {
    if t > params.k() {
        return Err(Error::validation(format!(
            "fold {t} exceeds the alphabet size {}",
            params.k()
        )));
    }
    let table = LineTable::new(params);
    let root = Searcher::new(&table, LineRule::Exact(t as u16), opts.node_budget);
    let check = |s: &CellSet| is_t_fold_mds(s, t).map_or(false, |c| c.verdict);
    let collected = search_all(
        &root,
        opts,
        opts.self_check
            .then_some(&check as &(dyn Fn(&CellSet) -> bool + Sync)),
    )?;
    let mut report = SearchReport::new(
        params,
        format!("{t}-fold mds codes of Q_{}^{}", params.k(), params.n()),
    );
    report.count = collected.count;
    report.histogram = collected.histogram;
    report.nodes = collected.nodes;
    if opts.store_objects {
        report.objects = Some(collected.objects);
    }
    Ok(report)
}
