//! Splittability of multi-fold MDS codes.

use crate::cube::CellSet;
use crate::error::{Error, Result};
use crate::verify::{is_t_fold_mds, Certificate, Witness};

use super::engine::{search_each, LineRule, LineTable, Searcher};
use super::SearchOptions;

/// Is a t-fold MDS code the disjoint union of t codes of fold 1?
///
/// Backtracks over 1-fold sub-codes of `w`; what remains after removing one
/// meets every line `t - 1` times, so for `t = 2` any find settles the
/// question and for larger t the search recurses. A true verdict carries
/// the decomposition parts in discovery order; a false verdict carries the
/// total node count of the exhausted search. Runs sequentially (it stops at
/// the first success), so reports never depend on the worker count.
pub fn split_check(w: &CellSet, t: usize, opts: &SearchOptions) -> Result<Certificate> {
    if !is_t_fold_mds(w, t)?.verdict {
        return Err(Error::validation(format!(
            "input is not a {t}-fold mds code"
        )));
    }
    if t == 0 {
        return Ok(Certificate::holds(Witness::Decomposition { parts: vec![] }));
    }
    if t == 1 {
        return Ok(Certificate::holds(Witness::Decomposition {
            parts: vec![w.clone()],
        }));
    }
    let table = LineTable::new(*w.params());
    let mut nodes = 0u64;
    let parts = split_rec(&table, w, t, opts, &mut nodes)?;
    Ok(match parts {
        Some(parts) => {
            debug_assert!(decomposes(w, &parts));
            Certificate::holds(Witness::Decomposition { parts })
        }
        None => Certificate::fails(Witness::Exhaustion { nodes }),
    })
}

fn split_rec(
    table: &LineTable,
    w: &CellSet,
    t: usize,
    opts: &SearchOptions,
    nodes: &mut u64,
) -> Result<Option<Vec<CellSet>>> {
    let mut searcher = Searcher::new(table, LineRule::Exact(1), opts.node_budget);
    let outside = w.complement();
    if !searcher.seed(outside.iter_ranks(), false) {
        return Ok(None);
    }
    let mut found: Option<Vec<CellSet>> = None;
    let result = search_each(&mut searcher, &mut |m| {
        let rest = w.symdiff(&m)?;
        if t == 2 {
            debug_assert!(is_t_fold_mds(&rest, 1).map_or(false, |c| c.verdict));
            found = Some(vec![m, rest]);
            return Ok(false);
        }
        match split_rec(table, &rest, t - 1, opts, nodes)? {
            Some(mut parts) => {
                parts.insert(0, m);
                found = Some(parts);
                Ok(false)
            }
            None => Ok(true),
        }
    });
    *nodes += searcher.nodes();
    result?;
    Ok(found)
}

fn decomposes(w: &CellSet, parts: &[CellSet]) -> bool {
    let mut rest = w.clone();
    for part in parts {
        if !is_t_fold_mds(part, 1).map_or(false, |c| c.verdict)
            || !part.is_subset_of(&rest).unwrap_or(false)
        {
            return false;
        }
        rest = rest.symdiff(part).expect("same space");
    }
    rest.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{lift_pair_function, linear_mds_q3, pair_g, pair_h};
    use crate::cube::{CellSet, Params, Point};

    fn parts_of(cert: &Certificate) -> &[CellSet] {
        match &cert.witness {
            Witness::Decomposition { parts } => parts,
            w => panic!("expected a decomposition, got {w:?}"),
        }
    }

    #[test]
    fn union_of_two_permutation_codes_splits() {
        let params = Params::new(3, 2).unwrap();
        let a = linear_mds_q3(2).unwrap();
        let b = CellSet::from_points(
            params,
            &[Point::from([0, 1]), Point::from([1, 0]), Point::from([2, 2])],
        )
        .unwrap();
        let w = a.union(&b).unwrap();
        let cert = split_check(&w, 2, &SearchOptions::default()).unwrap();
        assert!(cert.verdict);
        let parts = parts_of(&cert);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].union(&parts[1]).unwrap(), w);
    }

    #[test]
    fn lifted_parity_function_splits() {
        let w = lift_pair_function(&pair_g(1).unwrap()).unwrap();
        let cert = split_check(&w, 2, &SearchOptions::default()).unwrap();
        assert!(cert.verdict);
        assert!(decomposes(&w, parts_of(&cert)));
    }

    #[test]
    fn one_dimensional_lift_of_h_still_splits() {
        let w = lift_pair_function(&pair_h(1, 1).unwrap()).unwrap();
        let cert = split_check(&w, 2, &SearchOptions::default()).unwrap();
        assert!(cert.verdict);
    }

    #[test]
    fn full_line_splits_into_singletons() {
        let params = Params::new(3, 1).unwrap();
        let w = CellSet::full(params);
        let cert = split_check(&w, 3, &SearchOptions::default()).unwrap();
        assert!(cert.verdict);
        let parts = parts_of(&cert);
        assert_eq!(parts.len(), 3);
        for (v, part) in parts.iter().enumerate() {
            assert_eq!(part.iter_ranks().collect::<Vec<_>>(), vec![v]);
        }
    }

    #[test]
    fn trivial_folds() {
        let params = Params::new(3, 2).unwrap();
        let empty = split_check(&CellSet::empty(params), 0, &SearchOptions::default()).unwrap();
        assert!(empty.verdict);
        assert!(parts_of(&empty).is_empty());
        let one = linear_mds_q3(2).unwrap();
        let cert = split_check(&one, 1, &SearchOptions::default()).unwrap();
        assert!(cert.verdict);
        assert_eq!(parts_of(&cert), &[one]);
    }

    #[test]
    fn non_mds_input_is_rejected() {
        let params = Params::new(3, 2).unwrap();
        let w = CellSet::from_ranks(params, [0usize, 1]).unwrap();
        assert!(split_check(&w, 2, &SearchOptions::default()).is_err());
    }

    #[test]
    fn budget_refusal() {
        let w = lift_pair_function(&pair_g(2).unwrap()).unwrap();
        let opts = SearchOptions {
            node_budget: 0,
            ..SearchOptions::default()
        };
        assert!(matches!(
            split_check(&w, 2, &opts),
            Err(Error::Refused(_))
        ));
    }
}
