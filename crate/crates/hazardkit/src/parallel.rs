//! Multi-threaded versions of the exhaustive scans.
//!
//! The candidate space is cut into index ranges and scanned on the current
//! rayon pool. Results are merged in index order, so they match the
//! sequential functions in `hazardkit_core` whatever the worker count.

use std::ops::Range;

use hazardkit_core::detect::{confirm, HazardScanner};
use hazardkit_core::implicants::minimal_implicant_indices;
use hazardkit_core::oracle::SubcubeTable;
use hazardkit_core::{
    BooleanFunction, Circuit, DetectionMethod, Error, Hazard, HazardKind, HazardReport,
    ImplicantKind, ImplicantSet, PartialAssignment, Result, Ternary, TruthTable,
};
use rayon::prelude::*;

const MIN_CHUNK: usize = 1 << 12;

fn chunks(len: usize) -> Vec<Range<usize>> {
    let want = rayon::current_num_threads().max(1) * 8;
    let size = len.div_ceil(want).max(MIN_CHUNK).next_multiple_of(64);
    (0..len)
        .step_by(size)
        .map(|s| s..(s + size).min(len))
        .collect()
}

fn check_bound(what: &'static str, n: usize, bound: usize) -> Result<()> {
    if n > bound {
        return Err(Error::BoundExceeded { what, n, bound });
    }
    Ok(())
}

/// First hazard in canonical order, optionally of one kind only.
pub fn brute_force_hazard(
    c: &Circuit,
    kind: Option<HazardKind>,
    bound: usize,
) -> Result<HazardReport> {
    let scanner = HazardScanner::new(c, bound)?;
    let hit = chunks(scanner.len())
        .into_par_iter()
        .find_map_first(|r| scanner.first_in(r, kind));
    scanner.report(hit)
}

/// Every hazard in canonical order, each verified.
pub fn list_all_hazards(c: &Circuit, bound: usize) -> Result<Vec<HazardReport>> {
    let scanner = HazardScanner::new(c, bound)?;
    let parts: Vec<_> = chunks(scanner.len())
        .into_par_iter()
        .map(|r| scanner.all_in(r, None))
        .collect();
    parts
        .into_iter()
        .flatten()
        .map(|hit| scanner.report(Some(hit)))
        .collect()
}

fn implicant_indices(table: &SubcubeTable, kind: ImplicantKind) -> Vec<usize> {
    let parts: Vec<_> = chunks(table.len())
        .into_par_iter()
        .map(|r| minimal_implicant_indices(table, kind, r))
        .collect();
    parts.concat()
}

fn subcubes<F: BooleanFunction + ?Sized>(
    f: &F,
    what: &'static str,
    bound: usize,
) -> Result<SubcubeTable> {
    check_bound(what, f.num_vars(), bound)?;
    Ok(SubcubeTable::new(&TruthTable::from_function(f)?))
}

pub fn enumerate<F: BooleanFunction + ?Sized>(
    f: &F,
    kind: ImplicantKind,
    bound: usize,
) -> Result<ImplicantSet> {
    let n = f.num_vars();
    let table = subcubes(f, "minterm/maxterm enumeration", bound)?;
    let items = implicant_indices(&table, kind)
        .into_iter()
        .map(|i| PartialAssignment::from_index(n, i as u64).to_term(kind.connective()))
        .collect();
    ImplicantSet::new(n, kind, items)
}

/// Eichelberger's method: the first minterm, then the first maxterm, on
/// which the circuit evaluates to `U`.
pub fn eichelberger(c: &Circuit, bound: usize) -> Result<HazardReport> {
    let n = c.num_vars();
    let table = subcubes(c, "minterm/maxterm enumeration", bound)?;
    for kind in [ImplicantKind::One, ImplicantKind::Zero] {
        let hit = chunks(table.len()).into_par_iter().find_map_first(|r| {
            minimal_implicant_indices(&table, kind, r)
                .into_iter()
                .find_map(|i| {
                    let a = PartialAssignment::from_index(n, i as u64);
                    (c.eval_ternary(&a).ok()? == Ternary::U).then_some(a)
                })
        });
        if let Some(witness) = hit {
            let hazard = Hazard {
                kind: HazardKind::from_value(kind.forced_value()),
                witness,
            };
            return confirm(c, DetectionMethod::Eichelberger, hazard);
        }
    }
    Ok(HazardReport::none(DetectionMethod::Eichelberger))
}

/// Runs `f` on a pool with `jobs` workers, or on the global pool.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        None => f(),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(f),
    }
}
