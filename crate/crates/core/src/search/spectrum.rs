//! Size spectrum of pairwise symmetric differences of MDS codes.

use crate::cube::{lines, CellSet};
use crate::error::{Error, Result};
use crate::verify::{is_latin_bitrade, is_t_fold_mds};

use super::{SearchOptions, SearchReport};

/// For every unordered pair of codes, self-pairs included, form the
/// symmetric difference and test it for being a latin bitrade. The
/// histogram records the sizes of the bitrade differences (for `t = 1`
/// every difference qualifies); `count` totals them and `nodes` counts all
/// pairs examined, so distinct pairs are `nodes - codes.len()`.
///
/// The scan is cheap and always sequential, so reports never depend on the
/// worker count.
pub fn pairwise_symdiff_spectrum(
    codes: &[CellSet],
    t: usize,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    let Some(first) = codes.first() else {
        return Err(Error::validation("need at least one code"));
    };
    let params = *first.params();
    for (i, code) in codes.iter().enumerate() {
        if code.params() != &params {
            return Err(Error::validation(format!(
                "code {i} lives in a different space"
            )));
        }
        if !is_t_fold_mds(code, t)?.verdict {
            return Err(Error::validation(format!(
                "code {i} is not a {t}-fold mds code"
            )));
        }
    }

    let mut report = SearchReport::new(
        params,
        format!(
            "pairwise symdiffs of {} {t}-fold codes of Q_{}^{}",
            codes.len(),
            params.k(),
            params.n()
        ),
    );
    let mut objects = Vec::new();
    let mut record = |report: &mut SearchReport, diff: CellSet| -> Result<()> {
        report.count += 1;
        *report.histogram.entry(diff.len()).or_insert(0) += 1;
        if opts.store_objects {
            if objects.len() >= opts.store_cap {
                return Err(Error::refused(format!(
                    "object store cap {} exceeded",
                    opts.store_cap
                )));
            }
            objects.push(diff);
        }
        Ok(())
    };

    if params.cells() <= 64 {
        // Single-block sets: XOR and popcount per line.
        let words: Vec<u64> = codes.iter().map(|c| c.blocks()[0]).collect();
        let line_masks: Vec<u64> = lines(&params)
            .map(|line| {
                line.cell_ranks(&params)
                    .into_iter()
                    .fold(0u64, |acc, r| acc | 1 << r)
            })
            .collect();
        for i in 0..codes.len() {
            for j in i..codes.len() {
                report.nodes += 1;
                let x = words[i] ^ words[j];
                let bitrade = line_masks.iter().all(|&lm| {
                    let c = (x & lm).count_ones();
                    c == 0 || c == 2
                });
                if bitrade {
                    let ranks = (0..params.cells()).filter(|&r| x >> r & 1 == 1);
                    record(&mut report, CellSet::from_ranks(params, ranks)?)?;
                }
            }
        }
    } else {
        for i in 0..codes.len() {
            for j in i..codes.len() {
                report.nodes += 1;
                let diff = codes[i].symdiff(&codes[j])?;
                if is_latin_bitrade(&diff).verdict {
                    record(&mut report, diff)?;
                }
            }
        }
    }

    if opts.store_objects {
        objects.sort_by(CellSet::cmp_canonical);
        report.objects = Some(objects);
    }
    Ok(report)
}
