//! Partial quasigroups and their backtracking completion.

use crate::cube::{lines, CellSet, Params, Point};
use crate::error::{Error, Result};

use super::engine::{search_first, LineRule, LineTable, Searcher};
use super::SearchOptions;

/// A partial map from `Q_k^n` to `Q_k` whose graph meets every line of
/// `Q_k^(n+1)` at most once. Total maps of this kind are n-ary quasigroups
/// of order k; for `n = 2` they are the Latin squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialQuasigroup {
    params: Params,
    values: Vec<Option<u8>>,
}

impl PartialQuasigroup {
    pub fn new(params: Params, values: Vec<Option<u8>>) -> Result<Self> {
        if values.len() != params.cells() {
            return Err(Error::validation(format!(
                "expected {} values, got {}",
                params.cells(),
                values.len()
            )));
        }
        for (rank, v) in values.iter().enumerate() {
            if let Some(v) = v {
                if *v as usize >= params.k() {
                    return Err(Error::validation(format!(
                        "value {v} at cell {rank} outside 0..{}",
                        params.k()
                    )));
                }
            }
        }
        let q = PartialQuasigroup { params, values };
        for line in lines(&params) {
            let mut seen = [false; 256];
            for r in line.cell_ranks(&params) {
                if let Some(v) = q.values[r] {
                    if seen[v as usize] {
                        return Err(Error::validation(format!(
                            "value {v} repeats along a direction-{} line",
                            line.direction
                        )));
                    }
                    seen[v as usize] = true;
                }
            }
        }
        Ok(q)
    }

    pub fn empty(params: Params) -> Self {
        let values = vec![None; params.cells()];
        PartialQuasigroup { params, values }
    }

    /// The domain `Q_k^n`.
    pub fn params(&self) -> Params {
        self.params
    }

    /// The order k: domain alphabet and value range.
    pub fn order(&self) -> usize {
        self.params.k()
    }

    pub fn values(&self) -> &[Option<u8>] {
        &self.values
    }

    pub fn value_at(&self, p: &Point) -> Result<Option<u8>> {
        Ok(self.values[self.params.rank(p)?])
    }

    pub fn defined_cells(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(|v| v.is_some())
    }

    /// The graph `{(x, f(x)) : f defined at x}` as a cell set of
    /// `Q_k^(n+1)`.
    pub fn graph(&self) -> Result<CellSet> {
        let out_params = Params::with_cell_cap(
            self.params.k() as u16,
            self.params.n() as u16 + 1,
            self.params.cell_cap(),
        )?;
        let stride = self.params.cells();
        let ranks = self
            .values
            .iter()
            .enumerate()
            .filter_map(|(r, v)| v.map(|v| r + v as usize * stride));
        CellSet::from_ranks(out_params, ranks)
    }

    /// Read a partial map back off a graph in `Q_k^(n+1)`.
    pub fn from_graph(cells: &CellSet) -> Result<Self> {
        let graph_params = cells.params();
        if graph_params.n() < 2 {
            return Err(Error::validation(
                "a graph needs at least two coordinates: arguments and value",
            ));
        }
        let params = Params::with_cell_cap(
            graph_params.k() as u16,
            graph_params.n() as u16 - 1,
            graph_params.cell_cap(),
        )?;
        let stride = params.cells();
        let mut values = vec![None; stride];
        for rank in cells.iter_ranks() {
            let (cell, v) = (rank % stride, rank / stride);
            if values[cell].is_some() {
                return Err(Error::validation(format!(
                    "two values for cell {cell}"
                )));
            }
            values[cell] = Some(v as u8);
        }
        PartialQuasigroup::new(params, values)
    }

    /// The same partial map over the larger domain `Q_m^n`, with every new
    /// cell undefined.
    pub fn extend_to_order(&self, m: usize) -> Result<PartialQuasigroup> {
        if m < self.order() {
            return Err(Error::validation(format!(
                "target order {m} is below the current order {}",
                self.order()
            )));
        }
        let params = Params::with_cell_cap(m as u16, self.params.n() as u16, self.params.cell_cap())?;
        let mut values = vec![None; params.cells()];
        for (rank, v) in self.values.iter().enumerate() {
            if v.is_some() {
                let p = self.params.unrank(rank)?;
                values[params.rank(&p)?] = *v;
            }
        }
        PartialQuasigroup::new(params, values)
    }
}

/// Complete a partial quasigroup to a total n-ary quasigroup of order `m`,
/// leaving the cells new to the larger order free. Returns the first
/// completion found, or None after exhausting the search at this order;
/// stepping `m` upward is the caller's move. Runs sequentially.
pub fn complete_partial_quasigroup(
    p: &PartialQuasigroup,
    m: usize,
    opts: &SearchOptions,
) -> Result<Option<PartialQuasigroup>> {
    let extended = p.extend_to_order(m)?;
    let graph = extended.graph()?;
    let table = LineTable::new(*graph.params());
    let mut searcher = Searcher::new(&table, LineRule::Exact(1), opts.node_budget);
    if !searcher.seed(graph.iter_ranks(), true) {
        return Ok(None);
    }
    match search_first(&mut searcher)? {
        Some(code) => Ok(Some(PartialQuasigroup::from_graph(&code)?)),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::is_t_fold_mds;

    fn partial(params: Params, cells: &[(&[u8], u8)]) -> PartialQuasigroup {
        let mut values = vec![None; params.cells()];
        for (coords, v) in cells {
            values[params.rank_coords(coords).unwrap()] = Some(*v);
        }
        PartialQuasigroup::new(params, values).unwrap()
    }

    #[test]
    fn empty_square_completes_to_a_latin_square() {
        let params = Params::new(3, 2).unwrap();
        let p = PartialQuasigroup::empty(params);
        let q = complete_partial_quasigroup(&p, 3, &SearchOptions::default())
            .unwrap()
            .unwrap();
        assert!(q.is_total());
        assert!(is_t_fold_mds(&q.graph().unwrap(), 1).unwrap().verdict);
        let again = complete_partial_quasigroup(&p, 3, &SearchOptions::default())
            .unwrap()
            .unwrap();
        assert_eq!(q, again);
    }

    #[test]
    fn total_identity_completes_to_itself() {
        let params = Params::new(3, 1).unwrap();
        let p = partial(params, &[(&[0], 0), (&[1], 1), (&[2], 2)]);
        let q = complete_partial_quasigroup(&p, 3, &SearchOptions::default())
            .unwrap()
            .unwrap();
        assert_eq!(q, p);
    }

    #[test]
    fn blocked_square_has_no_completion_at_its_own_order() {
        let params = Params::new(3, 2).unwrap();
        let p = partial(params, &[(&[0, 0], 0), (&[0, 1], 1), (&[1, 2], 2)]);
        assert_eq!(
            complete_partial_quasigroup(&p, 3, &SearchOptions::default()).unwrap(),
            None
        );
    }

    #[test]
    fn stepping_the_order_up_unblocks_a_completion() {
        let params = Params::new(2, 2).unwrap();
        let p = partial(params, &[(&[0, 0], 0), (&[1, 1], 1)]);
        assert_eq!(
            complete_partial_quasigroup(&p, 2, &SearchOptions::default()).unwrap(),
            None
        );
        let q = complete_partial_quasigroup(&p, 4, &SearchOptions::default())
            .unwrap()
            .unwrap();
        assert!(q.is_total());
        assert_eq!(q.order(), 4);
        assert_eq!(q.value_at(&Point::from([0, 0])).unwrap(), Some(0));
        assert_eq!(q.value_at(&Point::from([1, 1])).unwrap(), Some(1));
        assert!(is_t_fold_mds(&q.graph().unwrap(), 1).unwrap().verdict);
    }

    #[test]
    fn bipartition_part_of_the_six_cell_bitrade_is_a_permutation() {
        let params = Params::new(3, 1).unwrap();
        let p = partial(params, &[(&[0], 0), (&[1], 2), (&[2], 1)]);
        let q = complete_partial_quasigroup(&p, 3, &SearchOptions::default())
            .unwrap()
            .unwrap();
        assert_eq!(q, p);
        assert!(is_t_fold_mds(&q.graph().unwrap(), 1).unwrap().verdict);
    }

    #[test]
    fn graph_round_trip() {
        let params = Params::new(3, 2).unwrap();
        let p = partial(params, &[(&[0, 0], 2), (&[2, 1], 0)]);
        let g = p.graph().unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(PartialQuasigroup::from_graph(&g).unwrap(), p);
    }

    #[test]
    fn invalid_partial_maps_are_rejected() {
        let params = Params::new(3, 2).unwrap();
        let mut values = vec![None; 9];
        values[0] = Some(0);
        values[1] = Some(0);
        assert!(PartialQuasigroup::new(params, values).is_err());

        let graph_params = Params::new(3, 2).unwrap();
        let two_on_a_column = CellSet::from_ranks(graph_params, [0usize, 3]).unwrap();
        assert!(PartialQuasigroup::from_graph(&two_on_a_column).is_err());
    }

    #[test]
    fn shrinking_the_order_is_rejected() {
        let p = PartialQuasigroup::empty(Params::new(3, 2).unwrap());
        assert!(complete_partial_quasigroup(&p, 2, &SearchOptions::default()).is_err());
    }
}
