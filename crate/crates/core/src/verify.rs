//! Certified predicates.
//!
//! Every check returns a [`Certificate`]: a verdict plus a witness. Failing
//! verdicts carry the canonically first violating object (line scans follow
//! the canonical line order); passing verdicts carry the object that proves
//! the property where one exists (a bipartition, a second code, a projection).

use serde::Serialize;

use crate::cube::{
    color_components, faces, lines, CellSet, InducedGraph, Line, Point,
};
use crate::error::{Error, Result};

/// Verdict plus witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub verdict: bool,
    pub witness: Witness,
}

impl Certificate {
    pub fn holds(witness: Witness) -> Self {
        Certificate { verdict: true, witness }
    }

    pub fn fails(witness: Witness) -> Self {
        Certificate { verdict: false, witness }
    }
}

/// Evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    None,
    /// A line whose intersection count breaks the property under test.
    ViolatingLine { line: Line, count: usize },
    /// An odd closed walk in the induced graph.
    OddCycle { cycle: Vec<Point> },
    /// A proper 2-colouring: the two colour classes, ascending by rank.
    Bipartition { color0: Vec<Point>, color1: Vec<Point> },
    /// Per-direction value pairs projecting the set onto the binary cube.
    ProjectionMap { levels: Vec<(u8, u8)> },
    /// A code completing the property (e.g. the second code of an embedding).
    FoundSubcode { code: CellSet },
    /// A full decomposition into disjoint 1-fold codes.
    Decomposition { parts: Vec<CellSet> },
    /// Exhaustive search ended without a find.
    Exhaustion { nodes: u64 },
}

/// Does every line meet `s` in 0 or 2 cells?
pub fn is_latin_bitrade(s: &CellSet) -> Certificate {
    let params = s.params();
    for line in lines(params) {
        let count = line
            .cell_ranks(params)
            .into_iter()
            .filter(|&r| s.contains_rank(r))
            .count();
        if count != 0 && count != 2 {
            return Certificate::fails(Witness::ViolatingLine { line, count });
        }
    }
    Certificate::holds(Witness::None)
}

/// Does every line meet `s` in exactly `t` cells? Requires `0 <= t <= k`.
pub fn is_t_fold_mds(s: &CellSet, t: usize) -> Result<Certificate> {
    let params = s.params();
    if t > params.k() {
        return Err(Error::validation(format!(
            "fold {t} exceeds k = {}",
            params.k()
        )));
    }
    for line in lines(params) {
        let count = line
            .cell_ranks(params)
            .into_iter()
            .filter(|&r| s.contains_rank(r))
            .count();
        if count != t {
            return Ok(Certificate::fails(Witness::ViolatingLine { line, count }));
        }
    }
    // A 1-fold code meets each of the k^(n-1) lines of one direction once.
    debug_assert!(t != 1 || s.len() == params.cells() / params.k());
    Ok(Certificate::holds(Witness::None))
}

/// Is the induced graph bipartite? True verdicts carry the 2-colouring
/// (least-rank vertex of every component in colour 0), false verdicts an
/// odd cycle.
pub fn bipartition(s: &CellSet) -> Certificate {
    let g = InducedGraph::build(s);
    match color_components(s, &g) {
        Ok(colouring) => {
            let params = s.params();
            let point = |v: usize| {
                params
                    .unrank(g.vertex_rank(v))
                    .expect("vertex rank in range")
            };
            let mut color0 = Vec::new();
            let mut color1 = Vec::new();
            for v in 0..g.vertex_count() {
                if colouring.color[v] {
                    color1.push(point(v));
                } else {
                    color0.push(point(v));
                }
            }
            Certificate::holds(Witness::Bipartition { color0, color1 })
        }
        Err(odd) => Certificate::fails(Witness::OddCycle { cycle: odd.cycle }),
    }
}

/// The four equivalent minimality conditions, evaluated independently.
///
/// For a nonempty latin bitrade `b` in `Q_k^n` these agree: `b` has the
/// minimum size `2^n` iff every m-face meets it in 0 or `2^m` cells iff it
/// meets exactly two hyperplanes of every direction iff its induced graph is
/// the binary n-cube.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimalityReport {
    /// (a) `|b| = 2^n`.
    pub size_is_minimum: bool,
    /// (b) every m-face intersection has size 0 or `2^m`.
    pub faces_are_dyadic: bool,
    /// (c) exactly two hyperplanes met per direction.
    pub meets_two_hyperplanes: bool,
    /// (d) the induced graph is isomorphic to the binary n-cube.
    pub graph_is_binary_cube: bool,
    /// The per-direction value pairs realising (d), when it holds.
    pub projection_levels: Option<Vec<(u8, u8)>>,
}

impl MinimalityReport {
    pub fn flags(&self) -> [bool; 4] {
        [
            self.size_is_minimum,
            self.faces_are_dyadic,
            self.meets_two_hyperplanes,
            self.graph_is_binary_cube,
        ]
    }

    pub fn is_minimal(&self) -> bool {
        self.flags().into_iter().all(|f| f)
    }

    /// Do the four conditions agree pairwise?
    pub fn flags_agree(&self) -> bool {
        let f = self.flags();
        f.iter().all(|&x| x == f[0])
    }
}

/// Evaluate the four minimality conditions on a nonempty latin bitrade.
///
/// Condition (d) is decided constructively: the two hyperplane values of
/// each direction (from (c)) define a coordinate-wise projection onto
/// `{0,1}^n`; the projection preserves Hamming distance exactly, so the
/// induced graph is the binary cube iff the projection is a bijection.
pub fn minimal_bitrade_check(b: &CellSet) -> Result<MinimalityReport> {
    let cert = is_latin_bitrade(b);
    if !cert.verdict {
        return Err(Error::validation(
            "minimality is only defined for latin bitrades",
        ));
    }
    if b.is_empty() {
        return Err(Error::validation(
            "minimality is only defined for nonempty bitrades",
        ));
    }
    let params = b.params();
    let n = params.n();

    let size_is_minimum = b.len() == 1usize << n;

    let mut faces_are_dyadic = true;
    'outer: for m in 0..=n {
        let quota = 1usize << m;
        for face in faces(params, m)? {
            let count = face
                .cells(params)
                .iter()
                .filter(|p| b.contains(p))
                .count();
            if count != 0 && count != quota {
                faces_are_dyadic = false;
                break 'outer;
            }
        }
    }

    let mut met: Vec<Vec<bool>> = vec![vec![false; params.k()]; n];
    for p in b.iter_points() {
        for (d, &c) in p.coords().iter().enumerate() {
            met[d][c as usize] = true;
        }
    }
    let meets_two_hyperplanes = met
        .iter()
        .all(|vals| vals.iter().filter(|&&m| m).count() == 2);

    let mut graph_is_binary_cube = false;
    let mut projection_levels = None;
    if meets_two_hyperplanes {
        let levels: Vec<(u8, u8)> = met
            .iter()
            .map(|vals| {
                let hit: Vec<u8> = (0..params.k() as u8)
                    .filter(|&v| vals[v as usize])
                    .collect();
                (hit[0], hit[1])
            })
            .collect();
        let mut seen = vec![false; 1usize << n];
        let mut injective = true;
        for p in b.iter_points() {
            let mut image = 0usize;
            for (d, &c) in p.coords().iter().enumerate() {
                if c == levels[d].1 {
                    image |= 1 << d;
                }
            }
            if seen[image] {
                injective = false;
                break;
            }
            seen[image] = true;
        }
        if injective && b.len() == 1usize << n {
            graph_is_binary_cube = true;
            projection_levels = Some(levels);
        }
    }

    Ok(MinimalityReport {
        size_is_minimum,
        faces_are_dyadic,
        meets_two_hyperplanes,
        graph_is_binary_cube,
        projection_levels,
    })
}

/// Is `b` embedded in the t-fold MDS code `m1`, i.e. is `m1 symdiff b` again
/// a t-fold MDS code? `m1` itself must pass the t-fold check.
pub fn is_embedded(b: &CellSet, m1: &CellSet, t: usize) -> Result<Certificate> {
    let m1_cert = is_t_fold_mds(m1, t)?;
    if !m1_cert.verdict {
        return Err(Error::validation(format!(
            "m1 is not a {t}-fold MDS code"
        )));
    }
    let m2 = b.symdiff(m1)?;
    let cert = is_t_fold_mds(&m2, t)?;
    if cert.verdict {
        debug_assert!(is_latin_bitrade(b).verdict);
        debug_assert!(bipartition(b).verdict);
        Ok(Certificate::holds(Witness::FoundSubcode { code: m2 }))
    } else {
        Ok(Certificate::fails(cert.witness))
    }
}

/// The part of `b` inside `m1`. Defined only when `b` is embedded in `m1`;
/// the result is one of the two colour classes of `b`.
pub fn component_of(b: &CellSet, m1: &CellSet, t: usize) -> Result<CellSet> {
    let cert = is_embedded(b, m1, t)?;
    if !cert.verdict {
        return Err(Error::validation("b is not embedded in m1"));
    }
    b.intersect(m1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{hamming_distance, Params};

    fn set(params: Params, cells: &[&[u8]]) -> CellSet {
        let pts: Vec<Point> = cells.iter().map(|c| Point::from(*c)).collect();
        CellSet::from_points(params, &pts).unwrap()
    }

    #[test]
    fn two_cells_of_one_line_form_a_bitrade() {
        let p = Params::new(3, 1).unwrap();
        assert!(is_latin_bitrade(&set(p, &[&[0], &[1]])).verdict);
        let cert = is_latin_bitrade(&set(p, &[&[0]]));
        assert!(!cert.verdict);
        match cert.witness {
            Witness::ViolatingLine { count, .. } => assert_eq!(count, 1),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn empty_set_is_a_bitrade() {
        let p = Params::new(4, 2).unwrap();
        assert!(is_latin_bitrade(&CellSet::empty(p)).verdict);
    }

    #[test]
    fn full_binary_cube_is_a_bitrade() {
        for n in 1..=4u16 {
            let p = Params::new(2, n).unwrap();
            assert!(is_latin_bitrade(&CellSet::full(p)).verdict);
        }
    }

    #[test]
    fn first_violating_line_is_canonical() {
        let p = Params::new(3, 2).unwrap();
        let s = set(p, &[&[0, 0], &[1, 0], &[0, 1], &[0, 2]]);
        // Line 0 (direction 0, base 0) holds two cells and passes; line 1
        // (direction 0, base 1) holds one and is the first violation.
        let cert = is_latin_bitrade(&s);
        match cert.witness {
            Witness::ViolatingLine { line, count } => {
                assert_eq!(line.index(&p), 1);
                assert_eq!(count, 1);
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn permutation_code_is_one_fold_mds() {
        let p = Params::new(3, 2).unwrap();
        let m = set(p, &[&[0, 0], &[1, 2], &[2, 1]]);
        assert!(is_t_fold_mds(&m, 1).unwrap().verdict);
        assert!(!is_t_fold_mds(&m, 2).unwrap().verdict);
    }

    #[test]
    fn empty_set_is_zero_fold_and_full_set_is_k_fold() {
        let p = Params::new(3, 2).unwrap();
        assert!(is_t_fold_mds(&CellSet::empty(p), 0).unwrap().verdict);
        assert!(is_t_fold_mds(&CellSet::full(p), 3).unwrap().verdict);
        assert!(is_t_fold_mds(&CellSet::empty(p), 4).is_err());
    }

    #[test]
    fn six_cycle_bipartitions_into_three_and_three() {
        let p = Params::new(3, 2).unwrap();
        let s = set(p, &[&[0, 0], &[0, 1], &[1, 0], &[1, 2], &[2, 1], &[2, 2]]);
        let cert = bipartition(&s);
        assert!(cert.verdict);
        match cert.witness {
            Witness::Bipartition { color0, color1 } => {
                assert_eq!(color0.len(), 3);
                assert_eq!(color1.len(), 3);
                assert_eq!(color0[0], Point::from([0, 0]));
                for a in &color0 {
                    for b in &color0 {
                        assert_ne!(hamming_distance(a, b).unwrap(), 1);
                    }
                }
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn odd_cycle_witness_is_checkable() {
        let p = Params::new(3, 1).unwrap();
        let cert = bipartition(&set(p, &[&[0], &[1], &[2]]));
        assert!(!cert.verdict);
        match cert.witness {
            Witness::OddCycle { cycle } => {
                assert_eq!(cycle.len() % 2, 1);
                assert!(cycle.len() >= 3);
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn binary_cube_is_minimal_in_itself() {
        let p = Params::new(2, 2).unwrap();
        let report = minimal_bitrade_check(&CellSet::full(p)).unwrap();
        assert!(report.is_minimal());
        assert!(report.flags_agree());
        assert_eq!(report.projection_levels, Some(vec![(0, 1), (0, 1)]));
    }

    #[test]
    fn six_cell_bitrade_fails_all_four_conditions() {
        let p = Params::new(3, 2).unwrap();
        let b = set(p, &[&[0, 0], &[0, 1], &[1, 0], &[1, 2], &[2, 1], &[2, 2]]);
        let report = minimal_bitrade_check(&b).unwrap();
        assert_eq!(report.flags(), [false; 4]);
        assert!(report.flags_agree());
        assert!(!report.is_minimal());
    }

    #[test]
    fn rectangle_bitrade_is_minimal() {
        let p = Params::new(4, 2).unwrap();
        let b = set(p, &[&[1, 0], &[1, 3], &[2, 0], &[2, 3]]);
        let report = minimal_bitrade_check(&b).unwrap();
        assert!(report.is_minimal());
        assert_eq!(report.projection_levels, Some(vec![(1, 2), (0, 3)]));
    }

    #[test]
    fn minimality_rejects_non_bitrades_and_empty_input() {
        let p = Params::new(3, 2).unwrap();
        assert!(minimal_bitrade_check(&set(p, &[&[0, 0]])).is_err());
        assert!(minimal_bitrade_check(&CellSet::empty(p)).is_err());
    }

    #[test]
    fn symdiff_of_permutation_codes_is_embedded_in_both() {
        let p = Params::new(3, 2).unwrap();
        let m1 = set(p, &[&[0, 0], &[1, 2], &[2, 1]]);
        let m2 = set(p, &[&[1, 0], &[2, 2], &[0, 1]]);
        let b = m1.symdiff(&m2).unwrap();
        let cert = is_embedded(&b, &m1, 1).unwrap();
        assert!(cert.verdict);
        match cert.witness {
            Witness::FoundSubcode { code } => assert_eq!(code, m2),
            w => panic!("unexpected witness {w:?}"),
        }
        assert_eq!(component_of(&b, &m1, 1).unwrap(), m1);
    }

    #[test]
    fn misaligned_pair_is_not_embedded() {
        let p = Params::new(3, 2).unwrap();
        let m1 = set(p, &[&[0, 0], &[1, 2], &[2, 1]]);
        let b = set(p, &[&[0, 0], &[0, 1]]);
        let cert = is_embedded(&b, &m1, 1).unwrap();
        assert!(!cert.verdict);
        assert!(matches!(cert.witness, Witness::ViolatingLine { .. }));
        assert!(component_of(&b, &m1, 1).is_err());
    }

    #[test]
    fn embedding_requires_a_valid_code() {
        let p = Params::new(3, 2).unwrap();
        let not_code = set(p, &[&[0, 0]]);
        assert!(is_embedded(&CellSet::empty(p), &not_code, 1).is_err());
    }

    #[test]
    fn empty_bitrade_embeds_everywhere() {
        let p = Params::new(3, 2).unwrap();
        let m1 = set(p, &[&[0, 0], &[1, 2], &[2, 1]]);
        let b = CellSet::empty(p);
        assert!(is_embedded(&b, &m1, 1).unwrap().verdict);
        assert!(component_of(&b, &m1, 1).unwrap().is_empty());
    }

    #[test]
    fn intercalate_component_has_size_four() {
        let p = Params::new(3, 2).unwrap();
        // Two permutation codes sharing the fixed point (0,0).
        let m1 = set(p, &[&[0, 0], &[1, 1], &[2, 2]]);
        let m2 = set(p, &[&[0, 0], &[1, 2], &[2, 1]]);
        let b = m1.symdiff(&m2).unwrap();
        assert_eq!(b.len(), 4);
        assert!(is_embedded(&b, &m1, 1).unwrap().verdict);
        assert_eq!(component_of(&b, &m1, 1).unwrap().len(), 2);
    }

    #[test]
    fn certificate_json_shape() {
        let p = Params::new(3, 1).unwrap();
        let cert = is_latin_bitrade(&set(p, &[&[0]]));
        let js = serde_json::to_value(&cert).unwrap();
        assert_eq!(js["verdict"], false);
        assert_eq!(js["witness"]["type"], "violating_line");
        assert_eq!(js["witness"]["count"], 1);
    }
}
