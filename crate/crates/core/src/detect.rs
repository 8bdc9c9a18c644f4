//! Hazard detection.
//!
//! A circuit has a 1-hazard (0-hazard) at a partial assignment `a` when it
//! evaluates to `U` on `a` although every resolution of `a` evaluates to 1
//! (0). The brute-force scanner is the reference; the other detectors are
//! checked against it.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::assignment::PartialAssignment;
use crate::circuit::{Circuit, LaneEvaluator};
use crate::error::{Error, Result};
use crate::formula::{CnfFormula, DnfFormula};
use crate::implicants::{minimal_implicant_indices, ImplicantKind};
use crate::oracle::{SubcubeTable, TruthTable};
use crate::term::Term;
use crate::ternary::Ternary;

/// Default arity limit for the `3^n` brute-force scan.
pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 13;

/// Witnesses with more `U` positions than this are not re-verified by
/// resolution enumeration; the report says so.
pub const VERIFY_U_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HazardKind {
    /// Output `U` while every resolution gives 1.
    One,
    /// Output `U` while every resolution gives 0.
    Zero,
}

impl HazardKind {
    pub const fn resolved_value(self) -> bool {
        matches!(self, HazardKind::One)
    }

    pub const fn from_value(value: bool) -> Self {
        if value {
            HazardKind::One
        } else {
            HazardKind::Zero
        }
    }

    pub const fn as_str(self) -> &'static str {
        match self {
            HazardKind::One => "1-hazard",
            HazardKind::Zero => "0-hazard",
        }
    }
}

impl fmt::Display for HazardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DetectionMethod {
    Brute,
    Eichelberger,
    DnfPair,
    CnfDual,
}

impl DetectionMethod {
    pub const fn as_str(self) -> &'static str {
        match self {
            DetectionMethod::Brute => "brute",
            DetectionMethod::Eichelberger => "eichelberger",
            DetectionMethod::DnfPair => "dnf-pair",
            DetectionMethod::CnfDual => "cnf-dual",
        }
    }
}

impl fmt::Display for DetectionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hazard {
    pub kind: HazardKind,
    pub witness: PartialAssignment,
}

/// How thoroughly a reported witness was re-checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessCheck {
    /// Evaluated and all resolutions enumerated.
    Verified,
    /// Too many `U` positions to enumerate resolutions.
    Skipped,
    /// No witness to check.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HazardReport {
    pub method: DetectionMethod,
    pub hazard: Option<Hazard>,
    pub check: WitnessCheck,
}

impl HazardReport {
    pub fn found(&self) -> bool {
        self.hazard.is_some()
    }

    pub fn kind(&self) -> Option<HazardKind> {
        self.hazard.as_ref().map(|h| h.kind)
    }

    pub fn witness(&self) -> Option<&PartialAssignment> {
        self.hazard.as_ref().map(|h| &h.witness)
    }

    pub fn none(method: DetectionMethod) -> Self {
        HazardReport {
            method,
            hazard: None,
            check: WitnessCheck::NotApplicable,
        }
    }
}

/// Checks the hazard definition directly: the circuit outputs `U` on `a`
/// and every resolution of `a` gives the same stable value. Returns the
/// hazard kind, or `None` if `a` is not a hazard.
pub fn hazard_at(c: &Circuit, a: &PartialAssignment) -> Result<Option<HazardKind>> {
    if c.eval_ternary(a)? != Ternary::U {
        return Ok(None);
    }
    // resolutions 64 at a time; resolution k sets the j-th U position to bit j of k
    let free: Vec<usize> = (0..a.len()).filter(|&i| a[i] == Ternary::U).collect();
    let total = 1u128.checked_shl(free.len() as u32).unwrap_or(u128::MAX);
    let mut inputs: Vec<(u64, u64)> = (0..a.len())
        .map(|i| match a[i] {
            Ternary::Zero => (u64::MAX, 0),
            Ternary::One => (0, u64::MAX),
            Ternary::U => (0, 0),
        })
        .collect();
    let mut eval = LaneEvaluator::new(c);
    let mut value = None;
    let mut base = 0u128;
    while base < total {
        let lanes = (total - base).min(64) as u32;
        let mask = if lanes == 64 {
            u64::MAX
        } else {
            (1u64 << lanes) - 1
        };
        for (j, &v) in free.iter().enumerate() {
            let ones = if j < 6 {
                // bit j alternates in runs of 2^j lanes
                let run = 1u32 << j;
                (0..64u32)
                    .filter(|l| l / run % 2 == 1)
                    .fold(0u64, |m, l| m | 1 << l)
            } else if (base >> j) & 1 == 1 {
                u64::MAX
            } else {
                0
            };
            inputs[v] = (!ones, ones);
        }
        let (z, o) = eval.eval(&inputs);
        let (zeros, ones) = (z & !o & mask, o & !z & mask);
        let batch = if ones == mask {
            true
        } else if zeros == mask {
            false
        } else {
            return Ok(None);
        };
        if value.is_some_and(|v| v != batch) {
            return Ok(None);
        }
        value = Some(batch);
        base += 64;
    }
    Ok(value.map(HazardKind::from_value))
}

/// Re-checks a claimed hazard against the definition and wraps it in a
/// report. Witnesses with more than [`VERIFY_U_LIMIT`] unstable positions
/// are only checked to evaluate to `U`.
pub fn confirm(c: &Circuit, method: DetectionMethod, hazard: Hazard) -> Result<HazardReport> {
    let check = if hazard.witness.u_count() > VERIFY_U_LIMIT {
        if c.eval_ternary(&hazard.witness)? != Ternary::U {
            return Err(Error::InvalidAssignment(alloc::format!(
                "{method} produced witness {} where the circuit is stable",
                hazard.witness
            )));
        }
        WitnessCheck::Skipped
    } else {
        if hazard_at(c, &hazard.witness)? != Some(hazard.kind) {
            return Err(Error::InvalidAssignment(alloc::format!(
                "{method} produced witness {} that is not a {}",
                hazard.witness,
                hazard.kind
            )));
        }
        WitnessCheck::Verified
    };
    Ok(HazardReport {
        method,
        hazard: Some(hazard),
        check,
    })
}

fn check_bound(what: &'static str, n: usize, bound: usize) -> Result<()> {
    if n > bound {
        return Err(Error::BoundExceeded { what, n, bound });
    }
    Ok(())
}

/// Exhaustive scan over the `3^n` partial assignments of a circuit.
///
/// Candidates are identified by [`PartialAssignment::index`], so the space
/// can be split into ranges, scanned independently, and merged by taking
/// the smallest index.
#[derive(Clone, Debug)]
pub struct HazardScanner<'c> {
    circuit: &'c Circuit,
    table: SubcubeTable,
}

impl<'c> HazardScanner<'c> {
    pub fn new(circuit: &'c Circuit, bound: usize) -> Result<Self> {
        check_bound("brute-force hazard scan", circuit.num_vars(), bound)?;
        let table = SubcubeTable::new(&TruthTable::from_function(circuit)?);
        Ok(HazardScanner { circuit, table })
    }

    pub fn circuit(&self) -> &'c Circuit {
        self.circuit
    }

    /// Number of candidates, `3^n`.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Calls `visit(index, kind)` for every hazard in `range`, in order,
    /// until it returns `false`.
    pub fn scan(
        &self,
        range: Range<usize>,
        filter: Option<HazardKind>,
        mut visit: impl FnMut(usize, HazardKind) -> bool,
    ) {
        let n = self.circuit.num_vars();
        let mut eval = LaneEvaluator::new(self.circuit);
        let mut inputs = alloc::vec![(0u64, 0u64); n];
        let mut digits = alloc::vec![0u8; n];
        let end = range.end.min(self.len());
        let mut start = range.start;
        // digits of `start`; digit v belongs to variable v
        let mut t = start;
        for d in digits.iter_mut() {
            *d = (t % 3) as u8;
            t /= 3;
        }
        while start < end {
            let lanes = (end - start).min(64);
            let mut candidates = 0u64;
            for slot in inputs.iter_mut() {
                *slot = (0, 0);
            }
            for lane in 0..lanes {
                let idx = start + lane;
                let wanted = match self.table.constant_value(idx) {
                    Some(v) => filter.map_or(true, |k| k.resolved_value() == v),
                    None => false,
                };
                if wanted {
                    candidates |= 1 << lane;
                }
                let bit = 1u64 << lane;
                for (slot, &d) in inputs.iter_mut().zip(&digits) {
                    match d {
                        0 => {
                            slot.0 |= bit;
                            slot.1 |= bit;
                        }
                        1 => slot.0 |= bit,
                        _ => slot.1 |= bit,
                    }
                }
                // increment the base-3 counter
                for d in digits.iter_mut() {
                    if *d == 2 {
                        *d = 0;
                    } else {
                        *d += 1;
                        break;
                    }
                }
            }
            if candidates != 0 {
                let (z, o) = eval.eval(&inputs);
                let mut hits = z & o & candidates;
                while hits != 0 {
                    let lane = hits.trailing_zeros() as usize;
                    hits &= hits - 1;
                    let idx = start + lane;
                    let value = self
                        .table
                        .constant_value(idx)
                        .expect("candidate lanes have a constant value");
                    if !visit(idx, HazardKind::from_value(value)) {
                        return;
                    }
                }
            }
            start += lanes;
        }
    }

    /// The smallest-index hazard in `range`.
    pub fn first_in(
        &self,
        range: Range<usize>,
        filter: Option<HazardKind>,
    ) -> Option<(usize, HazardKind)> {
        let mut found = None;
        self.scan(range, filter, |idx, kind| {
            found = Some((idx, kind));
            false
        });
        found
    }

    /// Every hazard in `range`, in index order.
    pub fn all_in(
        &self,
        range: Range<usize>,
        filter: Option<HazardKind>,
    ) -> Vec<(usize, HazardKind)> {
        let mut out = Vec::new();
        self.scan(range, filter, |idx, kind| {
            out.push((idx, kind));
            true
        });
        out
    }

    /// Turns a scan result into a verified report.
    pub fn report(&self, hit: Option<(usize, HazardKind)>) -> Result<HazardReport> {
        match hit {
            None => Ok(HazardReport::none(DetectionMethod::Brute)),
            Some((idx, kind)) => confirm(
                self.circuit,
                DetectionMethod::Brute,
                Hazard {
                    kind,
                    witness: PartialAssignment::from_index(self.circuit.num_vars(), idx as u64),
                },
            ),
        }
    }
}

/// The reference detector: the first hazard in canonical order (see
/// [`PartialAssignment::index`]), or none.
pub fn brute_force_hazard(c: &Circuit, bound: usize) -> Result<HazardReport> {
    brute_force_hazard_of_kind(c, None, bound)
}

/// As [`brute_force_hazard`], considering only hazards of `kind` when
/// given.
pub fn brute_force_hazard_of_kind(
    c: &Circuit,
    kind: Option<HazardKind>,
    bound: usize,
) -> Result<HazardReport> {
    let scanner = HazardScanner::new(c, bound)?;
    scanner.report(scanner.first_in(0..scanner.len(), kind))
}

/// Every hazard of the circuit, each verified, in canonical order.
pub fn list_all_hazards(c: &Circuit, bound: usize) -> Result<Vec<HazardReport>> {
    let scanner = HazardScanner::new(c, bound)?;
    scanner
        .all_in(0..scanner.len(), None)
        .into_iter()
        .map(|hit| scanner.report(Some(hit)))
        .collect()
}

/// Eichelberger's method: evaluate the circuit on every minterm, then on
/// every maxterm, of the function it computes. A minterm evaluating to
/// `U` is a 1-hazard; a maxterm evaluating to `U` is a 0-hazard.
pub fn eichelberger(c: &Circuit, bound: usize) -> Result<HazardReport> {
    let n = c.num_vars();
    check_bound("minterm/maxterm enumeration", n, bound)?;
    let table = SubcubeTable::new(&TruthTable::from_function(c)?);
    for kind in [ImplicantKind::One, ImplicantKind::Zero] {
        for idx in minimal_implicant_indices(&table, kind, 0..table.len()) {
            let a = PartialAssignment::from_index(n, idx as u64);
            if c.eval_ternary(&a)? == Ternary::U {
                let hazard = Hazard {
                    kind: HazardKind::from_value(kind.forced_value()),
                    witness: a,
                };
                return confirm(c, DetectionMethod::Eichelberger, hazard);
            }
        }
    }
    Ok(HazardReport::none(DetectionMethod::Eichelberger))
}

/// Polynomial-time 1-hazard detection for a DNF.
///
/// For each variable `x` and each pair of consistent terms `S & x` and
/// `T & !x` with `S ∪ T` consistent, sets the literals of `S ∪ T` true and
/// everything else (including `x`) to `U`. If no term of the formula is
/// then 1, both terms of the pair are `U`, so the output is `U` while every
/// resolution makes one of them 1. Conversely every DNF with a 1-hazard has
/// one of this shape. Pairs are tried in (variable, term, term) order.
pub fn dnf_detect_1hazard(f: &DnfFormula) -> Result<HazardReport> {
    match find_pair_hazard(f) {
        None => Ok(HazardReport::none(DetectionMethod::DnfPair)),
        Some(witness) => confirm(
            &f.to_circuit(),
            DetectionMethod::DnfPair,
            Hazard {
                kind: HazardKind::One,
                witness,
            },
        ),
    }
}

fn find_pair_hazard(f: &DnfFormula) -> Option<PartialAssignment> {
    let n = f.num_vars();
    let terms = f.terms();
    let usable: Vec<bool> = terms.iter().map(|t| !t.is_contradictory()).collect();
    let mut alpha = PartialAssignment::all_unstable(n);
    for x in 0..n {
        let positive: Vec<usize> = (0..terms.len())
            .filter(|&i| usable[i] && terms[i].contains(crate::term::Literal::pos(x)))
            .collect();
        let negative: Vec<usize> = (0..terms.len())
            .filter(|&i| usable[i] && terms[i].contains(crate::term::Literal::neg(x)))
            .collect();
        for &i in &positive {
            for &j in &negative {
                if !set_pair(&mut alpha, &terms[i], &terms[j], x) {
                    continue;
                }
                if !f.has_true_term(&alpha) {
                    return Some(alpha);
                }
            }
        }
    }
    None
}

/// Writes into `alpha` the assignment making every literal of both terms
/// except those on `x` true, with all other variables `U`. Fails when the
/// two terms disagree outside `x`.
fn set_pair(alpha: &mut PartialAssignment, a: &Term, b: &Term, x: usize) -> bool {
    for i in 0..alpha.len() {
        alpha.set(i, Ternary::U);
    }
    for l in a.literals().iter().chain(b.literals()) {
        if l.var == x {
            continue;
        }
        let v = l.satisfying_value();
        match alpha[l.var] {
            Ternary::U => alpha.set(l.var, v),
            cur if cur != v => return false,
            _ => {}
        }
    }
    true
}

/// Drops every term containing a variable in both polarities. Such terms
/// are 0 on every stable input, and a DNF without them has no 0-hazards.
pub fn dnf_eliminate_0hazards(f: &DnfFormula) -> DnfFormula {
    let terms = f
        .terms()
        .iter()
        .filter(|t| !t.is_contradictory())
        .cloned()
        .collect();
    DnfFormula::new(f.num_vars(), terms).expect("subset of valid terms")
}

/// 0-hazards of a DNF, by brute force only.
pub fn dnf_detect_0hazard_brute(f: &DnfFormula, bound: usize) -> Result<HazardReport> {
    brute_force_hazard_of_kind(&f.to_circuit(), Some(HazardKind::Zero), bound)
}

/// 0-hazard detection for a CNF: the CNF has a 0-hazard at `a` exactly
/// when its De Morgan negation, a DNF, has a 1-hazard at `a`.
pub fn cnf_detect_0hazard(f: &CnfFormula) -> Result<HazardReport> {
    match find_pair_hazard(&f.negate()) {
        None => Ok(HazardReport::none(DetectionMethod::CnfDual)),
        Some(witness) => confirm(
            &f.to_circuit(),
            DetectionMethod::CnfDual,
            Hazard {
                kind: HazardKind::Zero,
                witness,
            },
        ),
    }
}

/// Drops every clause containing a variable in both polarities, which
/// removes all 1-hazards of a CNF.
pub fn cnf_eliminate_1hazards(f: &CnfFormula) -> CnfFormula {
    let clauses = f
        .clauses()
        .iter()
        .filter(|t| !t.is_contradictory())
        .cloned()
        .collect();
    CnfFormula::new(f.num_vars(), clauses).expect("subset of valid clauses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Literal;
    use alloc::string::{String, ToString};

    const B: usize = DEFAULT_BRUTE_FORCE_BOUND;

    fn example_f() -> DnfFormula {
        "(x1&x2)|(!x1&x2)|(!x1&!x2)".parse().unwrap()
    }

    fn witness(r: &HazardReport) -> String {
        r.witness().unwrap().to_string()
    }

    #[test]
    fn brute_force_on_example() {
        let r = brute_force_hazard(&example_f().to_circuit(), B).unwrap();
        assert_eq!(r.kind(), Some(HazardKind::One));
        assert_eq!(witness(&r), "0u");
        assert_eq!(r.check, WitnessCheck::Verified);
    }

    #[test]
    fn list_example_hazards() {
        let all = list_all_hazards(&example_f().to_circuit(), B).unwrap();
        let ws: Vec<String> = all.iter().map(witness).collect();
        assert_eq!(ws, ["0u", "u1"]);
        assert!(all.iter().all(|r| r.kind() == Some(HazardKind::One)));
    }

    #[test]
    fn huffman_form_is_hazard_free() {
        let f: DnfFormula = "(!x1)|(x2)".parse().unwrap();
        assert!(!brute_force_hazard(&f.to_circuit(), B).unwrap().found());
        assert!(!dnf_detect_1hazard(&f).unwrap().found());
        assert!(!eichelberger(&f.to_circuit(), B).unwrap().found());
    }

    #[test]
    fn single_literal_is_hazard_free() {
        let c = Circuit::literal(1, Literal::pos(0)).unwrap();
        assert!(!brute_force_hazard(&c, B).unwrap().found());
    }

    #[test]
    fn bound_exceeded() {
        let c = Circuit::literal(14, Literal::pos(0)).unwrap();
        assert!(matches!(
            brute_force_hazard(&c, B),
            Err(Error::BoundExceeded {
                n: 14,
                bound: 13,
                ..
            })
        ));
    }

    #[test]
    fn eichelberger_on_example_reports_first_minterm() {
        let r = eichelberger(&example_f().to_circuit(), B).unwrap();
        assert_eq!(r.kind(), Some(HazardKind::One));
        // minterms in order: !x1 ("0u"), x2 ("u1"); both are hazards
        assert_eq!(witness(&r), "0u");
    }

    #[test]
    fn eichelberger_constant_one() {
        let f: DnfFormula = "(x1)|(!x1)".parse().unwrap();
        let r = eichelberger(&f.to_circuit(), B).unwrap();
        assert_eq!(r.kind(), Some(HazardKind::One));
        assert_eq!(witness(&r), "u");
    }

    #[test]
    fn dnf_pair_detector_on_example() {
        let r = dnf_detect_1hazard(&example_f()).unwrap();
        assert_eq!(r.method, DetectionMethod::DnfPair);
        assert_eq!(witness(&r), "u1");
    }

    #[test]
    fn contradictory_terms_never_form_pairs() {
        let f: DnfFormula = "(x1&!x1)|(x1)".parse().unwrap();
        assert!(!dnf_detect_1hazard(&f).unwrap().found());
        assert!(!brute_force_hazard(&f.to_circuit(), B).unwrap().found());
    }

    #[test]
    fn eliminate_dnf_zero_hazards() {
        let f: DnfFormula = "(x1&!x1)|(x1)".parse().unwrap();
        assert_eq!(dnf_eliminate_0hazards(&f).to_string(), "(x1)");
        let g = example_f();
        assert_eq!(dnf_eliminate_0hazards(&g), g);
    }

    #[test]
    fn dnf_zero_hazard_gadget_shape() {
        // F = x1 falsified at x1 = 0, so (0, u) is a 0-hazard of F | (x2 & !x2)
        let g: DnfFormula = "(x1)|(x2&!x2)".parse().unwrap();
        let r = dnf_detect_0hazard_brute(&g, B).unwrap();
        assert_eq!(r.kind(), Some(HazardKind::Zero));
        assert_eq!(witness(&r), "0u");
    }

    #[test]
    fn cnf_dual_of_example() {
        let cnf = example_f().negate();
        let r = cnf_detect_0hazard(&cnf).unwrap();
        assert_eq!(r.kind(), Some(HazardKind::Zero));
        assert_eq!(witness(&r), "u1");
        let brute = brute_force_hazard(&cnf.to_circuit(), B).unwrap();
        assert_eq!(brute.kind(), Some(HazardKind::Zero));
    }

    #[test]
    fn single_clause_cnf_is_hazard_free() {
        let c: CnfFormula = "(x1|x2)".parse().unwrap();
        assert!(!cnf_detect_0hazard(&c).unwrap().found());
    }

    #[test]
    fn eliminate_cnf_one_hazards() {
        let c: CnfFormula = "(x1|!x1)&(x2)".parse().unwrap();
        assert_eq!(cnf_eliminate_1hazards(&c).to_string(), "(x2)");
    }

    #[test]
    fn scanner_ranges_merge_to_full_scan() {
        let c = example_f().to_circuit();
        let s = HazardScanner::new(&c, B).unwrap();
        let full = s.all_in(0..s.len(), None);
        let mut split = s.all_in(0..4, None);
        split.extend(s.all_in(4..s.len(), None));
        assert_eq!(full, split);
    }

    #[test]
    fn hazard_at_rejects_stable_outputs() {
        let c = example_f().to_circuit();
        assert_eq!(hazard_at(&c, &"1u".parse().unwrap()).unwrap(), None);
        assert_eq!(hazard_at(&c, &"00".parse().unwrap()).unwrap(), None);
        assert_eq!(
            hazard_at(&c, &"0u".parse().unwrap()).unwrap(),
            Some(HazardKind::One)
        );
    }
}
