//! Search for codes a given bitrade is embedded in.

use crate::cube::{color_components, CellSet, InducedGraph, Params};
use crate::error::{Error, Result};
use crate::verify::{is_embedded, is_latin_bitrade};

use super::engine::{search_first, LineRule, LineTable, Searcher};
use super::{SearchOptions, SearchReport};

/// Find a t-fold MDS code `M` of the target space with `b = M symdiff M'`
/// for another t-fold code `M'`.
///
/// Such an `M` contains exactly one endpoint of every edge of the bitrade's
/// induced graph, and which endpoint is consistent across each connected
/// component. The search therefore tries every per-component orientation
/// (the first component's choice is pinned: flipping all of them just swaps
/// `M` with `M'`), pins the chosen cells in and the others out, and
/// backtracks for a completion. The target space may use a larger alphabet
/// than the bitrade's, with the same dimension.
///
/// On success the report stores the found code as its single object. Runs
/// sequentially (it stops at the first find), so reports never depend on
/// the worker count.
pub fn embedding_search(
    b: &CellSet,
    target: Params,
    t: usize,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    let source = *b.params();
    if target.n() != source.n() {
        return Err(Error::validation(format!(
            "target dimension {} differs from the bitrade's {}",
            target.n(),
            source.n()
        )));
    }
    if target.k() < source.k() {
        return Err(Error::validation(format!(
            "target alphabet {} is smaller than the bitrade's {}",
            target.k(),
            source.k()
        )));
    }
    if t > target.k() {
        return Err(Error::validation(format!(
            "fold {t} exceeds the alphabet size {}",
            target.k()
        )));
    }
    if !is_latin_bitrade(b).verdict {
        return Err(Error::validation("input is not a latin bitrade"));
    }
    let graph = InducedGraph::build(b);
    let coloring = match color_components(b, &graph) {
        Ok(c) => c,
        Err(_) => return Err(Error::validation("input bitrade is not bipartite")),
    };
    let target_rank: Vec<usize> = (0..graph.vertex_count())
        .map(|v| {
            let p = source.unrank(graph.vertex_rank(v)).expect("vertex rank");
            target.rank(&p).expect("coordinates stay valid under a larger alphabet")
        })
        .collect();

    let table = LineTable::new(target);
    let components = coloring.components.len();
    let orientations = 1u64 << components.saturating_sub(1);
    let mut nodes = 0u64;
    let mut found: Option<CellSet> = None;
    for mask in 0..orientations {
        let mut keep = Vec::new();
        let mut drop = Vec::new();
        for (ci, component) in coloring.components.iter().enumerate() {
            let flip = ci > 0 && mask >> (ci - 1) & 1 == 1;
            for &v in component {
                if coloring.color[v as usize] == flip {
                    keep.push(target_rank[v as usize]);
                } else {
                    drop.push(target_rank[v as usize]);
                }
            }
        }
        let mut searcher = Searcher::new(&table, LineRule::Exact(t as u16), opts.node_budget);
        if searcher.seed(keep, true) && searcher.seed(drop, false) {
            let result = search_first(&mut searcher);
            nodes += searcher.nodes();
            if let Some(m) = result? {
                found = Some(m);
                break;
            }
        } else {
            nodes += searcher.nodes();
        }
    }

    let mut report = SearchReport::new(
        target,
        format!(
            "{t}-fold embedding of a {}-cell bitrade into Q_{}^{}",
            b.len(),
            target.k(),
            target.n()
        ),
    );
    report.nodes = nodes;
    if let Some(m) = found {
        let in_target = b.reinterpret(target)?;
        let cert = is_embedded(&in_target, &m, t)?;
        if !cert.verdict {
            return Err(Error::validation(
                "self-check: the found code does not realize the embedding",
            ));
        }
        report.count = 1;
        report.histogram.insert(m.len(), 1);
        report.objects = Some(vec![m]);
    }
    Ok(report)
}
