//! Explicit families of bitrades and MDS codes.
//!
//! Over `Q_3`, order the symbols by `0 < 2`, `1 < 2` with 0 and 1
//! incomparable. Any subset `A` of the binary subcube `{0,1}^n` extends to a
//! characteristic function on all of `Q_3^n` by parity over predecessor
//! boxes, and the support of that extension is a latin bitrade; distinct
//! subsets give distinct bitrades, which pins down the count `2^(2^n)`.
//!
//! Over `Q_4`, functions into 2-element symbol sets (*pair functions*) lift
//! to subsets of `Q_4^(n+1)`; the lift is a 2-fold MDS code exactly when
//! every line balances each value against its complement.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cube::{lines, CellSet, Params, Point};
use crate::error::{Error, Result};

/// Extend a subset of the binary subcube to a bitrade of `Q_3^n`.
///
/// The characteristic function of the result at `y` is the parity of
/// `|a ∩ box(y)|`, where `box(y)` is the set of binary points matching `y`
/// on every coordinate that is not 2. On binary points this restricts to the
/// characteristic function of `a`, so the input is recoverable; on each line
/// the three values XOR to zero, which forces intersections of size 0 or 2.
pub fn parity_extension_bitrade(a: &CellSet) -> Result<CellSet> {
    let source = a.params();
    if source.k() != 2 && source.k() != 3 {
        return Err(Error::validation(format!(
            "expected cells over the binary subcube (k = 2 or 3), got k = {}",
            source.k()
        )));
    }
    let members: Vec<Point> = a.iter_points().collect();
    for p in &members {
        if p.coords().iter().any(|&c| c > 1) {
            return Err(Error::validation(format!(
                "cell {p} has a coordinate outside {{0,1}}"
            )));
        }
    }
    let params = Params::with_cell_cap(3, source.n() as u16, source.cell_cap())?;
    let mut out = CellSet::empty(params);
    for (rank, y) in params.points().enumerate() {
        let mut parity = false;
        for x in &members {
            let covered = x
                .coords()
                .iter()
                .zip(y.coords())
                .all(|(&xc, &yc)| yc == 2 || xc == yc);
            parity ^= covered;
        }
        if parity {
            out.insert_rank(rank)?;
        }
    }
    Ok(out)
}

/// `{lo, hi}^n` as a cell set of `Q_3^n`.
fn two_symbol_box(params: Params, lo: u8, hi: u8) -> Result<CellSet> {
    let n = params.n();
    let mut out = CellSet::empty(params);
    for mask in 0..1usize << n {
        let coords: Vec<u8> = (0..n)
            .map(|i| if mask >> i & 1 == 1 { hi } else { lo })
            .collect();
        let r = params.rank_coords(&coords)?;
        out.insert_rank(r)?;
    }
    Ok(out)
}

/// The bipartite bitrade `B_s` of `Q_3^n` with `|B_s| = 2^(n+1) - 2^(s+1)`,
/// for `0 <= s <= n-1`:
/// `B_s = ({0,1}^(n-s) symdiff {1,2}^(n-s)) x {0,1}^s`.
pub fn b_s(n: u16, s: u16) -> Result<CellSet> {
    if n == 0 {
        return Err(Error::validation("n must be at least 1"));
    }
    if s >= n {
        return Err(Error::validation(format!(
            "s must satisfy 0 <= s <= n-1, got s = {s}, n = {n}"
        )));
    }
    let head = Params::new(3, n - s)?;
    let core = two_symbol_box(head, 0, 1)?.symdiff(&two_symbol_box(head, 1, 2)?)?;
    if s == 0 {
        return Ok(core);
    }
    let tail = Params::new(3, s)?;
    core.cartesian_product(&two_symbol_box(tail, 0, 1)?)
}

/// The linear MDS code of `Q_3^n`: cells whose coordinate sum is 0 mod 3.
pub fn linear_mds_q3(n: u16) -> Result<CellSet> {
    let params = Params::new(3, n)?;
    let mut out = CellSet::empty(params);
    for (rank, p) in params.points().enumerate() {
        let sum: u32 = p.coords().iter().map(|&c| c as u32).sum();
        if sum % 3 == 0 {
            out.insert_rank(rank)?;
        }
    }
    Ok(out)
}

/// The graph `{(x, f(x))}` of a total map `f: Q_k^n -> Q_k`, as a cell set
/// of `Q_k^(n+1)`. The graph is a 1-fold MDS code iff `f` is an n-ary
/// quasigroup; this function does not check that.
pub fn quasigroup_graph(base: Params, f: impl Fn(&Point) -> u8) -> Result<CellSet> {
    let params = Params::with_cell_cap(base.k() as u16, base.n() as u16 + 1, base.cell_cap())?;
    let stride = base.cells();
    let mut out = CellSet::empty(params);
    for (rank, p) in base.points().enumerate() {
        let v = f(&p);
        if v as usize >= base.k() {
            return Err(Error::validation(format!(
                "value {v} at {p} outside 0..{}",
                base.k()
            )));
        }
        out.insert_rank(rank + v as usize * stride)?;
    }
    Ok(out)
}

/// A 2-element subset of `Q_4 = {0,1,2,3}`, stored as a 4-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairValue(u8);

impl PairValue {
    /// The even symbols {0, 2}.
    pub const EVENS: PairValue = PairValue(0b0101);
    /// The odd symbols {1, 3}.
    pub const ODDS: PairValue = PairValue(0b1010);
    /// The middle symbols {1, 2}.
    pub const INNER: PairValue = PairValue(0b0110);
    /// The extreme symbols {0, 3}.
    pub const OUTER: PairValue = PairValue(0b1001);

    pub fn new(a: u8, b: u8) -> Result<Self> {
        if a > 3 || b > 3 || a == b {
            return Err(Error::validation(format!(
                "a pair value needs two distinct symbols in 0..4, got {a} and {b}"
            )));
        }
        Ok(PairValue(1 << a | 1 << b))
    }

    /// All six values, ordered by their two-character codes.
    pub fn all() -> [PairValue; 6] {
        [
            PairValue(0b0011), // 01
            PairValue(0b0101), // 02
            PairValue(0b1001), // 03
            PairValue(0b0110), // 12
            PairValue(0b1010), // 13
            PairValue(0b1100), // 23
        ]
    }

    /// The complementary pair: the other two symbols of `Q_4`.
    pub fn complement(self) -> PairValue {
        PairValue(!self.0 & 0b1111)
    }

    pub fn contains(self, symbol: u8) -> bool {
        symbol < 4 && self.0 >> symbol & 1 == 1
    }

    /// The two symbols, ascending.
    pub fn symbols(self) -> [u8; 2] {
        let lo = self.0.trailing_zeros() as u8;
        let hi = (7 - self.0.leading_zeros()) as u8;
        [lo, hi]
    }

    /// Two-character code, e.g. "02".
    pub fn code(self) -> String {
        let [a, b] = self.symbols();
        format!("{a}{b}")
    }

    pub fn from_code(code: &str) -> Result<Self> {
        let bytes = code.as_bytes();
        if bytes.len() != 2 || !bytes.iter().all(|b| (b'0'..=b'3').contains(b)) {
            return Err(Error::validation(format!(
                "pair code must be two digits in 0..4, got {code:?}"
            )));
        }
        let (a, b) = (bytes[0] - b'0', bytes[1] - b'0');
        if a >= b {
            return Err(Error::validation(format!(
                "pair code must be strictly ascending, got {code:?}"
            )));
        }
        PairValue::new(a, b)
    }
}

impl fmt::Display for PairValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// A total map from `Q_4^n` into the six pair values, stored in rank order.
///
/// The JSON form is `{"n": .., "values": ["02", "13", ..]}` with one code
/// per cell, in rank order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFunction {
    n: u16,
    values: Vec<PairValue>,
}

impl PairFunction {
    pub fn new(n: u16, values: Vec<PairValue>) -> Result<Self> {
        let params = Params::new(4, n)?;
        if values.len() != params.cells() {
            return Err(Error::validation(format!(
                "expected {} values for Q_4^{n}, got {}",
                params.cells(),
                values.len()
            )));
        }
        Ok(PairFunction { n, values })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// The domain `Q_4^n`.
    pub fn params(&self) -> Params {
        Params::new(4, self.n).expect("validated at construction")
    }

    pub fn values(&self) -> &[PairValue] {
        &self.values
    }

    pub fn value_at_rank(&self, rank: usize) -> PairValue {
        self.values[rank]
    }

    pub fn value_at(&self, p: &Point) -> Result<PairValue> {
        Ok(self.values[self.params().rank(p)?])
    }

    /// Does every line balance each value against its complement?
    ///
    /// This is exactly the condition under which [`lift_pair_function`]
    /// produces a 2-fold MDS code.
    pub fn balanced_on_lines(&self) -> bool {
        let params = self.params();
        for line in lines(&params) {
            let mut counts = [0u8; 16];
            for r in line.cell_ranks(&params) {
                counts[self.values[r].0 as usize] += 1;
            }
            for v in PairValue::all() {
                if counts[v.0 as usize] != counts[v.complement().0 as usize] {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Serialize, Deserialize)]
struct PairFunctionRepr {
    n: u16,
    values: Vec<String>,
}

impl Serialize for PairFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = PairFunctionRepr {
            n: self.n,
            values: self.values.iter().map(|v| v.code()).collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PairFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PairFunctionRepr::deserialize(deserializer)?;
        let values = repr
            .values
            .iter()
            .map(|c| PairValue::from_code(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        PairFunction::new(repr.n, values).map_err(D::Error::custom)
    }
}

/// The parity pair function on `Q_4^n`: even coordinate sums map to the even
/// symbols, odd sums to the odd symbols. Its lift is a splittable 2-fold
/// MDS code.
pub fn pair_g(n: u16) -> Result<PairFunction> {
    let params = Params::new(4, n)?;
    let values = params
        .points()
        .map(|p| {
            let sum: u32 = p.coords().iter().map(|&c| c as u32).sum();
            if sum % 2 == 0 {
                PairValue::EVENS
            } else {
                PairValue::ODDS
            }
        })
        .collect();
    PairFunction::new(n, values)
}

/// The parity pair function flipped on the box `{1,2}^n`: inside the box the
/// value is complemented. Line balance survives the flip, so the lift is
/// still a 2-fold MDS code.
pub fn pair_g_prime(n: u16) -> Result<PairFunction> {
    let params = Params::new(4, n)?;
    let g = pair_g(n)?;
    let values = params
        .points()
        .enumerate()
        .map(|(r, p)| {
            let inside = p.coords().iter().all(|&c| c == 1 || c == 2);
            if inside {
                g.value_at_rank(r).complement()
            } else {
                g.value_at_rank(r)
            }
        })
        .collect();
    PairFunction::new(n, values)
}

/// The flipped parity function with its values renamed on the set
/// `({0,1}^(n-s+1) symdiff {1,2}^(n-s+1)) x {1,2}^(s-1)`: there the even
/// pair becomes the middle pair and the odd pair the extreme pair. Valid for
/// `1 <= s <= n`. The `{1,2}` tail keeps the renamed cells paired one even
/// against one odd on every line, so the lift stays a 2-fold MDS code; it
/// loses splittability, and it differs from the lift of the flipped parity
/// function exactly on a bitrade of size `2^(n+2) - 2^(s+1)` (a relabelled
/// copy of the `b_s` bitrade one dimension up).
pub fn pair_h(n: u16, s: u16) -> Result<PairFunction> {
    if s == 0 || s > n {
        return Err(Error::validation(format!(
            "s must satisfy 1 <= s <= n, got s = {s}, n = {n}"
        )));
    }
    let params = Params::new(4, n)?;
    let gp = pair_g_prime(n)?;
    let head = Params::new(3, n - s + 1)?;
    let core = two_symbol_box(head, 0, 1)?.symdiff(&two_symbol_box(head, 1, 2)?)?;
    let modified = if s == 1 {
        core
    } else {
        let tail = Params::new(3, s - 1)?;
        core.cartesian_product(&two_symbol_box(tail, 1, 2)?)?
    };
    let values = params
        .points()
        .enumerate()
        .map(|(r, p)| {
            let v = gp.value_at_rank(r);
            if modified.contains(&p) {
                match v {
                    PairValue::EVENS => PairValue::INNER,
                    PairValue::ODDS => PairValue::OUTER,
                    other => other,
                }
            } else {
                v
            }
        })
        .collect();
    PairFunction::new(n, values)
}

/// Lift a pair function to the subset
/// `{(x, a) : a in g(x)}` of `Q_4^(n+1)`, of size `2 * 4^n`.
pub fn lift_pair_function(g: &PairFunction) -> Result<CellSet> {
    let base = g.params();
    let params = Params::new(4, g.n() as u16 + 1)?;
    let stride = base.cells();
    let mut out = CellSet::empty(params);
    for rank in 0..base.cells() {
        for a in g.value_at_rank(rank).symbols() {
            out.insert_rank(rank + a as usize * stride)?;
        }
    }
    Ok(out)
}
