//! The line-completion backtracking engine.
//!
//! State is one of Free/Out/In per cell, with per-line counters of In and
//! Free cells. Propagation runs a worklist of touched lines to a fixpoint,
//! forcing cells whenever a line admits only one way to finish. Branching
//! picks the line with the fewest remaining completions (ties broken by
//! line index) and tries each completion in a canonical order, so the
//! solution sequence is deterministic.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::cube::{lines, CellSet, Params};
use crate::error::{Error, Result};

use super::SearchOptions;

const FREE: u8 = 0;
const OUT: u8 = 1;
const IN: u8 = 2;

/// What every line must satisfy in a finished assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum LineRule {
    /// Exactly this many In cells per line (t-fold MDS).
    Exact(u16),
    /// Zero or two In cells per line (latin bitrade).
    ZeroOrTwo,
}

/// Dense incidence between cells and the lines through them.
pub(crate) struct LineTable {
    params: Params,
    cells_of_line: Vec<Vec<u32>>,
    lines_of_cell: Vec<Vec<u32>>,
}

impl LineTable {
    pub(crate) fn new(params: Params) -> Self {
        let mut cells_of_line = Vec::with_capacity(params.line_count());
        let mut lines_of_cell = vec![Vec::with_capacity(params.n()); params.cells()];
        for (li, line) in lines(&params).enumerate() {
            let ranks = line.cell_ranks(&params);
            for &r in &ranks {
                lines_of_cell[r].push(li as u32);
            }
            cells_of_line.push(ranks.into_iter().map(|r| r as u32).collect());
        }
        LineTable {
            params,
            cells_of_line,
            lines_of_cell,
        }
    }
}

/// One search in progress. Cloneable so first-level subtrees can run on
/// independent copies.
#[derive(Clone)]
pub(crate) struct Searcher<'t> {
    table: &'t LineTable,
    rule: LineRule,
    budget: u64,
    state: Vec<u8>,
    ones: Vec<u16>,
    free: Vec<u16>,
    trail: Vec<u32>,
    queue: Vec<u32>,
    nodes: u64,
}

impl<'t> Searcher<'t> {
    pub(crate) fn new(table: &'t LineTable, rule: LineRule, budget: u64) -> Self {
        let line_count = table.cells_of_line.len();
        Searcher {
            table,
            rule,
            budget,
            state: vec![FREE; table.params.cells()],
            ones: vec![0; line_count],
            free: vec![table.params.k() as u16; line_count],
            trail: Vec::new(),
            queue: Vec::new(),
            nodes: 0,
        }
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Pin cells before the search starts. Returns false when the pins are
    /// already contradictory (then the search has no solutions).
    pub(crate) fn seed(
        &mut self,
        ranks: impl IntoIterator<Item = usize>,
        keep: bool,
    ) -> bool {
        let value = if keep { IN } else { OUT };
        for r in ranks {
            if !self.assign(r as u32, value) {
                return false;
            }
        }
        self.propagate()
    }

    fn assign(&mut self, rank: u32, value: u8) -> bool {
        let current = self.state[rank as usize];
        if current != FREE {
            return current == value;
        }
        self.state[rank as usize] = value;
        self.trail.push(rank);
        let table = self.table;
        for &l in &table.lines_of_cell[rank as usize] {
            self.free[l as usize] -= 1;
            if value == IN {
                self.ones[l as usize] += 1;
            }
            self.queue.push(l);
        }
        true
    }

    fn propagate(&mut self) -> bool {
        while let Some(l) = self.queue.pop() {
            if !self.enforce(l) {
                self.queue.clear();
                return false;
            }
        }
        true
    }

    fn enforce(&mut self, l: u32) -> bool {
        let ones = self.ones[l as usize];
        let free = self.free[l as usize];
        match self.rule {
            LineRule::Exact(t) => {
                if ones > t || ones + free < t {
                    return false;
                }
                if free == 0 {
                    true
                } else if ones == t {
                    self.fill_line(l, OUT)
                } else if ones + free == t {
                    self.fill_line(l, IN)
                } else {
                    true
                }
            }
            LineRule::ZeroOrTwo => match ones {
                0 => {
                    if free == 1 {
                        self.fill_line(l, OUT)
                    } else {
                        true
                    }
                }
                1 => match free {
                    0 => false,
                    1 => self.fill_line(l, IN),
                    _ => true,
                },
                2 => free == 0 || self.fill_line(l, OUT),
                _ => false,
            },
        }
    }

    fn fill_line(&mut self, l: u32, value: u8) -> bool {
        let table = self.table;
        for &c in &table.cells_of_line[l as usize] {
            if self.state[c as usize] == FREE && !self.assign(c, value) {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        let table = self.table;
        while self.trail.len() > mark {
            let rank = self.trail.pop().expect("trail above mark");
            let value = self.state[rank as usize];
            self.state[rank as usize] = FREE;
            for &l in &table.lines_of_cell[rank as usize] {
                self.free[l as usize] += 1;
                if value == IN {
                    self.ones[l as usize] -= 1;
                }
            }
        }
        self.queue.clear();
    }

    /// Upper estimate of the ways to finish line `l` (exact below overflow).
    fn completion_count(&self, l: usize) -> u64 {
        let ones = self.ones[l];
        let free = self.free[l] as u64;
        match self.rule {
            LineRule::Exact(t) => binomial(free, (t - ones) as u64),
            LineRule::ZeroOrTwo => match ones {
                0 => 1 + binomial(free, 2),
                1 => free,
                _ => 1,
            },
        }
    }

    fn pick_line(&self) -> Option<u32> {
        let mut best: Option<(u64, u32)> = None;
        for l in 0..self.free.len() {
            if self.free[l] == 0 {
                continue;
            }
            let count = self.completion_count(l);
            if best.map_or(true, |(b, _)| count < b) {
                best = Some((count, l as u32));
            }
        }
        best.map(|(_, l)| l)
    }

    /// Free cells of a line together with every admissible choice of which
    /// of them become In (the rest become Out), in canonical order.
    fn completions(&self, l: u32) -> (Vec<u32>, Vec<Vec<u32>>) {
        let free_cells: Vec<u32> = self.table.cells_of_line[l as usize]
            .iter()
            .copied()
            .filter(|&c| self.state[c as usize] == FREE)
            .collect();
        let sizes: Vec<usize> = match self.rule {
            LineRule::Exact(t) => vec![(t - self.ones[l as usize]) as usize],
            LineRule::ZeroOrTwo => match self.ones[l as usize] {
                0 => vec![0, 2],
                1 => vec![1],
                _ => vec![0],
            },
        };
        let mut picks = Vec::new();
        for size in sizes {
            k_subsets(&free_cells, size, &mut picks);
        }
        (free_cells, picks)
    }

    fn apply(&mut self, free_cells: &[u32], pick: &[u32]) -> bool {
        for &c in free_cells {
            let value = if pick.contains(&c) { IN } else { OUT };
            if !self.assign(c, value) {
                return false;
            }
        }
        self.propagate()
    }

    fn solution(&self) -> CellSet {
        let ranks = self
            .state
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s == IN)
            .map(|(r, _)| r);
        CellSet::from_ranks(self.table.params, ranks).expect("in-range ranks")
    }

    /// Depth-first search. `emit` returns Ok(true) to continue enumerating,
    /// Ok(false) to stop. The return value mirrors that; Err means the node
    /// budget ran out (or `emit` failed).
    fn dfs(&mut self, emit: &mut dyn FnMut(CellSet) -> Result<bool>) -> Result<bool> {
        let Some(l) = self.pick_line() else {
            return emit(self.solution());
        };
        let (free_cells, picks) = self.completions(l);
        for pick in &picks {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::refused(format!(
                    "node budget {} exhausted",
                    self.budget
                )));
            }
            let mark = self.trail.len();
            if self.apply(&free_cells, pick) {
                match self.dfs(emit) {
                    Ok(true) => {}
                    stop => {
                        self.undo_to(mark);
                        return stop;
                    }
                }
            }
            self.undo_to(mark);
        }
        Ok(true)
    }
}

/// Everything a full enumeration accumulates.
#[derive(Debug, Default)]
pub(crate) struct Collected {
    pub count: u64,
    pub histogram: BTreeMap<usize, u64>,
    pub objects: Vec<CellSet>,
    pub nodes: u64,
}

struct JobOut {
    collected: Collected,
    error: Option<Error>,
}

fn run_leaf(
    collected: &mut Collected,
    solution: CellSet,
    opts: &SearchOptions,
    check: Option<&(dyn Fn(&CellSet) -> bool + Sync)>,
) -> Result<bool> {
    if let Some(check) = check {
        if !check(&solution) {
            return Err(Error::validation(
                "self-check: an emitted object fails its defining verifier",
            ));
        }
    }
    collected.count += 1;
    *collected.histogram.entry(solution.len()).or_insert(0) += 1;
    if opts.store_objects {
        if collected.objects.len() >= opts.store_cap {
            return Err(Error::refused(format!(
                "object store cap {} exceeded",
                opts.store_cap
            )));
        }
        collected.objects.push(solution);
    }
    Ok(true)
}

fn run_job(
    root: &Searcher<'_>,
    free_cells: &[u32],
    pick: &[u32],
    opts: &SearchOptions,
    check: Option<&(dyn Fn(&CellSet) -> bool + Sync)>,
) -> JobOut {
    let mut searcher = root.clone();
    searcher.nodes = 1;
    let mut collected = Collected::default();
    let outcome = if searcher.apply(free_cells, pick) {
        searcher
            .dfs(&mut |solution| run_leaf(&mut collected, solution, opts, check))
            .map(|_| ())
    } else {
        Ok(())
    };
    collected.nodes = searcher.nodes;
    JobOut {
        collected,
        error: outcome.err(),
    }
}

/// Enumerate every solution reachable from a seeded searcher. Splits into
/// first-level subtrees, runs them (in parallel when `opts.workers > 1`),
/// and merges in branch order; stored objects come back canonically sorted.
pub(crate) fn search_all(
    root: &Searcher<'_>,
    opts: &SearchOptions,
    check: Option<&(dyn Fn(&CellSet) -> bool + Sync)>,
) -> Result<Collected> {
    let Some(l) = root.pick_line() else {
        let mut collected = Collected::default();
        run_leaf(&mut collected, root.solution(), opts, check)?;
        collected.nodes = root.nodes;
        return Ok(collected);
    };
    let (free_cells, picks) = root.completions(l);

    let jobs: Vec<JobOut> = if opts.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| Error::validation(format!("worker pool: {e}")))?;
        pool.install(|| {
            picks
                .par_iter()
                .map(|pick| run_job(root, &free_cells, pick, opts, check))
                .collect()
        })
    } else {
        picks
            .iter()
            .map(|pick| run_job(root, &free_cells, pick, opts, check))
            .collect()
    };

    let mut merged = Collected::default();
    merged.nodes = root.nodes;
    let mut first_error = None;
    for job in jobs {
        merged.count += job.collected.count;
        merged.nodes += job.collected.nodes;
        for (size, count) in job.collected.histogram {
            *merged.histogram.entry(size).or_insert(0) += count;
        }
        merged.objects.extend(job.collected.objects);
        if first_error.is_none() {
            first_error = job.error;
        }
    }
    if let Some(e) = first_error {
        return Err(match e {
            Error::Refused(_) => Error::refused(format!(
                "node budget {} exhausted; {} nodes spent across {} subtrees",
                opts.node_budget,
                merged.nodes,
                picks.len()
            )),
            other => other,
        });
    }
    if merged.objects.len() > opts.store_cap {
        return Err(Error::refused(format!(
            "object store cap {} exceeded",
            opts.store_cap
        )));
    }
    merged.objects.sort_by(CellSet::cmp_canonical);
    Ok(merged)
}

/// Stop at the first solution. Always sequential.
pub(crate) fn search_first(searcher: &mut Searcher<'_>) -> Result<Option<CellSet>> {
    let mut found = None;
    searcher.dfs(&mut |solution| {
        found = Some(solution);
        Ok(false)
    })?;
    Ok(found)
}

/// Visit solutions in order until `visit` returns Ok(false). Always
/// sequential. Returns true when the space was exhausted.
pub(crate) fn search_each(
    searcher: &mut Searcher<'_>,
    visit: &mut dyn FnMut(CellSet) -> Result<bool>,
) -> Result<bool> {
    searcher.dfs(visit)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        match acc.checked_mul(n - i) {
            Some(product) => acc = product / (i + 1),
            None => return u64::MAX,
        }
    }
    acc
}

/// Size-`size` subsets of `items` in lexicographic order, appended to `out`.
fn k_subsets(items: &[u32], size: usize, out: &mut Vec<Vec<u32>>) {
    let n = items.len();
    if size > n {
        return;
    }
    if size == 0 {
        out.push(Vec::new());
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let mut i = size;
        while i > 0 && idx[i - 1] == n - size + (i - 1) {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(30, 15), 155_117_520);
        assert!(binomial(64, 32) > 1 << 60);
    }

    #[test]
    fn k_subsets_are_lexicographic() {
        let mut out = Vec::new();
        k_subsets(&[10, 20, 30, 40], 2, &mut out);
        assert_eq!(
            out,
            vec![
                vec![10, 20],
                vec![10, 30],
                vec![10, 40],
                vec![20, 30],
                vec![20, 40],
                vec![30, 40]
            ]
        );
        let mut empty = Vec::new();
        k_subsets(&[1, 2], 0, &mut empty);
        assert_eq!(empty, vec![Vec::<u32>::new()]);
    }

    #[test]
    fn exact_rule_on_a_single_line_space() {
        let table = LineTable::new(Params::new(4, 1).unwrap());
        let root = Searcher::new(&table, LineRule::Exact(2), 1_000);
        let collected = search_all(&root, &SearchOptions::default(), None).unwrap();
        assert_eq!(collected.count, 6);
        assert_eq!(collected.histogram.get(&2), Some(&6));
    }

    #[test]
    fn zero_or_two_rule_on_a_single_line_space() {
        let table = LineTable::new(Params::new(4, 1).unwrap());
        let root = Searcher::new(&table, LineRule::ZeroOrTwo, 1_000);
        let collected = search_all(&root, &SearchOptions::default(), None).unwrap();
        assert_eq!(collected.count, 1 + 6);
    }

    #[test]
    fn seeding_prunes_and_propagates() {
        let params = Params::new(3, 2).unwrap();
        let table = LineTable::new(params);
        let mut root = Searcher::new(&table, LineRule::Exact(1), 1_000);
        assert!(root.seed([0usize], true));
        let mut opts = SearchOptions::default();
        opts.store_objects = true;
        let collected = search_all(&root, &opts, None).unwrap();
        assert_eq!(collected.count, 2);
        for m in &collected.objects {
            assert!(m.contains_rank(0));
        }
    }

    #[test]
    fn contradictory_seed_is_reported() {
        let params = Params::new(3, 2).unwrap();
        let table = LineTable::new(params);
        let mut root = Searcher::new(&table, LineRule::Exact(1), 1_000);
        assert!(root.seed([0usize], true));
        assert!(!root.seed([1usize], true));
    }

    #[test]
    fn budget_refusal() {
        let table = LineTable::new(Params::new(3, 3).unwrap());
        let root = Searcher::new(&table, LineRule::ZeroOrTwo, 10);
        let err = search_all(&root, &SearchOptions::default(), None).unwrap_err();
        assert!(matches!(err, Error::Refused(_)));
    }

    #[test]
    fn worker_counts_agree() {
        let table = LineTable::new(Params::new(3, 2).unwrap());
        let root = Searcher::new(&table, LineRule::Exact(1), 1_000_000);
        let mut opts = SearchOptions::default();
        opts.store_objects = true;
        let sequential = search_all(&root, &opts, None).unwrap();
        opts.workers = 3;
        let parallel = search_all(&root, &opts, None).unwrap();
        assert_eq!(sequential.count, parallel.count);
        assert_eq!(sequential.nodes, parallel.nodes);
        assert_eq!(sequential.histogram, parallel.histogram);
        assert_eq!(sequential.objects, parallel.objects);
    }
}
