//! Hazard-free DNF synthesis and selective hazard injection.
//!
//! Huffman's construction, the OR of all minterms, is hazard-free. Splitting
//! a minterm term `I` into `I & x` and `I & !x` (for a variable `x` not in
//! `I`) keeps the function and creates a 1-hazard exactly at `I`.
//!
//! The CM function on `s = 3t` variables is 1 iff at least `t` inputs are 1
//! and at least `t` are 0. ACM is the AND of CM over `n` disjoint blocks of
//! `s` variables.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::circuit::{Circuit, CircuitBuilder};
use crate::error::{Error, Result};
use crate::formula::DnfFormula;
use crate::implicants::{enumerate_minterms, ImplicantKind, ImplicantSet};
use crate::oracle::BooleanFunction;
use crate::term::{Connective, Literal, Term};
use crate::ternary::Ternary;
use crate::PartialAssignment;

/// Parameters of a CM function: `s` variables, threshold `s / 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CmSpec {
    s: usize,
}

impl CmSpec {
    pub fn new(s: usize) -> Result<Self> {
        if s < 3 || s % 3 != 0 {
            return Err(Error::InvalidCmSpec(s));
        }
        Ok(CmSpec { s })
    }

    pub fn num_vars(&self) -> usize {
        self.s
    }

    pub fn threshold(&self) -> usize {
        self.s / 3
    }
}

/// `n` disjoint CM blocks; block `j` holds variables `j*s .. (j+1)*s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AcmSpec {
    groups: usize,
    cm: CmSpec,
}

impl AcmSpec {
    pub fn new(groups: usize, s: usize) -> Result<Self> {
        if groups == 0 {
            return Err(Error::GroupOutOfRange {
                group: 0,
                groups: 0,
            });
        }
        Ok(AcmSpec {
            groups,
            cm: CmSpec::new(s)?,
        })
    }

    pub fn groups(&self) -> usize {
        self.groups
    }

    pub fn cm(&self) -> CmSpec {
        self.cm
    }

    pub fn total_vars(&self) -> usize {
        self.groups * self.cm.s
    }

    pub fn group_offset(&self, group: usize) -> usize {
        group * self.cm.s
    }

    fn check_group(&self, group: usize) -> Result<()> {
        if group >= self.groups {
            return Err(Error::GroupOutOfRange {
                group,
                groups: self.groups,
            });
        }
        Ok(())
    }
}

/// The CM function as an oracle.
#[derive(Clone, Copy, Debug)]
pub struct CmOracle {
    spec: CmSpec,
}

pub fn cm_oracle(spec: CmSpec) -> CmOracle {
    CmOracle { spec }
}

impl BooleanFunction for CmOracle {
    fn num_vars(&self) -> usize {
        self.spec.s
    }

    fn eval(&self, bits: &[bool]) -> bool {
        let ones = bits.iter().filter(|&&b| b).count();
        let zeros = bits.len() - ones;
        let t = self.spec.threshold();
        ones >= t && zeros >= t
    }
}

/// The ACM function as an oracle.
#[derive(Clone, Copy, Debug)]
pub struct AcmOracle {
    spec: AcmSpec,
}

pub fn acm_oracle(spec: AcmSpec) -> AcmOracle {
    AcmOracle { spec }
}

impl BooleanFunction for AcmOracle {
    fn num_vars(&self) -> usize {
        self.spec.total_vars()
    }

    fn eval(&self, bits: &[bool]) -> bool {
        let cm = cm_oracle(self.spec.cm);
        bits.chunks(self.spec.cm.s).all(|block| cm.eval(block))
    }
}

/// CM minterms built combinatorially: every assignment fixing exactly
/// `t` variables to 1 and `t` other variables to 0, in canonical order.
pub fn cm_minterms_direct(spec: CmSpec) -> ImplicantSet {
    let s = spec.s;
    let t = spec.threshold();
    let mut out = Vec::new();
    let mut values = alloc::vec![Ternary::U; s];
    fill_cm(&mut values, 0, t, t, &mut out);
    let mut assignments: Vec<PartialAssignment> =
        out.into_iter().map(PartialAssignment::new).collect();
    assignments.sort();
    let items = assignments
        .iter()
        .map(|a| a.to_term(Connective::Conjunction))
        .collect();
    ImplicantSet::new(s, ImplicantKind::One, items).expect("generated terms are consistent")
}

fn fill_cm(
    values: &mut Vec<Ternary>,
    pos: usize,
    ones_left: usize,
    zeros_left: usize,
    out: &mut Vec<Vec<Ternary>>,
) {
    let remaining = values.len() - pos;
    if ones_left + zeros_left > remaining {
        return;
    }
    if pos == values.len() {
        out.push(values.clone());
        return;
    }
    for v in Ternary::ALL {
        let (o, z) = match v {
            Ternary::U => (ones_left, zeros_left),
            Ternary::One if ones_left > 0 => (ones_left - 1, zeros_left),
            Ternary::Zero if zeros_left > 0 => (ones_left, zeros_left - 1),
            _ => continue,
        };
        values[pos] = v;
        fill_cm(values, pos + 1, o, z, out);
    }
    values[pos] = Ternary::U;
}

/// The OR of the given minterms, in their order.
pub fn huffman_from_minterms(minterms: &ImplicantSet) -> DnfFormula {
    DnfFormula::new(minterms.num_vars(), minterms.items().to_vec())
        .expect("minterms are conjunctions over num_vars")
}

/// Huffman's hazard-free DNF: the OR of every minterm of `f`.
pub fn huffman_dnf<F: BooleanFunction + ?Sized>(f: &F, bound: usize) -> Result<DnfFormula> {
    Ok(huffman_from_minterms(&enumerate_minterms(f, bound)?))
}

/// Huffman's DNF with a 1-hazard injected at each selected minterm.
///
/// Each selected minterm `I` is replaced in place by `I & x` and `I & !x`,
/// `x` being the lowest-index variable absent from `I`. A new term equal
/// to one already emitted is dropped, which leaves the ternary function
/// unchanged.
pub fn inject_hazards<F: BooleanFunction + ?Sized>(
    f: &F,
    selection: &[Term],
    bound: usize,
) -> Result<DnfFormula> {
    inject_into(&enumerate_minterms(f, bound)?, selection)
}

/// As [`inject_hazards`], starting from an already computed minterm set.
pub fn inject_into(minterms: &ImplicantSet, selection: &[Term]) -> Result<DnfFormula> {
    let n = minterms.num_vars();
    let known: BTreeSet<&Term> = minterms.items().iter().collect();
    let mut chosen = BTreeSet::new();
    for t in selection {
        let t = t.with_connective(Connective::Conjunction);
        if !known.contains(&t) {
            return Err(Error::NotAMinterm(alloc::format!("{t}")));
        }
        if t.len() >= n {
            return Err(Error::FullSizeMinterm(alloc::format!("{t}")));
        }
        chosen.insert(t);
    }
    let mut emitted: BTreeSet<Term> = BTreeSet::new();
    let mut terms = Vec::with_capacity(minterms.len() + chosen.len());
    let mut emit = |t: Term, terms: &mut Vec<Term>| {
        if emitted.insert(t.clone()) {
            terms.push(t);
        }
    };
    for m in minterms.items() {
        if chosen.contains(m) {
            let x = m.first_free_var(n).expect("size checked above");
            emit(m.with_literal(Literal::pos(x)), &mut terms);
            emit(m.with_literal(Literal::neg(x)), &mut terms);
        } else {
            emit(m.clone(), &mut terms);
        }
    }
    DnfFormula::new(n, terms)
}

/// The per-group DNFs of the ACM formula, over all `n * s` variables: a
/// hazard-free CM DNF for every group, except that `group` gets hazards
/// injected at `selection` (minterms of CM written over variables
/// `0 .. s`). An empty selection gives the hazard-free ACM formula.
pub fn acm_group_dnfs(spec: AcmSpec, group: usize, selection: &[Term]) -> Result<Vec<DnfFormula>> {
    spec.check_group(group)?;
    let minterms = cm_minterms_direct(spec.cm);
    let plain = huffman_from_minterms(&minterms);
    let injected = inject_into(&minterms, selection)?;
    let total = spec.total_vars();
    (0..spec.groups)
        .map(|j| {
            let local = if j == group { &injected } else { &plain };
            let offset = spec.group_offset(j);
            DnfFormula::new(
                total,
                local.terms().iter().map(|t| t.shifted(offset)).collect(),
            )
        })
        .collect()
}

/// Appends an AND over the group DNFs (each an OR of ANDs) and returns its
/// gate index.
pub(crate) fn append_acm(b: &mut CircuitBuilder, groups: &[DnfFormula]) -> usize {
    let mut tops = Vec::with_capacity(groups.len());
    for dnf in groups {
        let terms: Vec<usize> = dnf
            .terms()
            .iter()
            .map(|t| {
                let inputs = t.literals().iter().map(|&l| b.input(l)).collect();
                b.and(inputs)
            })
            .collect();
        tops.push(b.or(terms));
    }
    b.and(tops)
}

/// The AND-OR-AND formula for ACM whose hazards are exactly the ACM
/// minterms whose block `group` is one of `selection`. The selection is
/// a nonempty set of CM minterms over the block-local variables `0 .. s`.
pub fn acm_formula_with_hazards(
    spec: AcmSpec,
    group: usize,
    selection: &[Term],
) -> Result<Circuit> {
    if selection.is_empty() {
        return Err(Error::EmptySelection);
    }
    let groups = acm_group_dnfs(spec, group, selection)?;
    let mut b = CircuitBuilder::new(spec.total_vars());
    let out = append_acm(&mut b, &groups);
    b.finish(out)
}

/// The hazard-free AND-OR-AND formula for ACM.
pub fn acm_formula_hazard_free(spec: AcmSpec) -> Result<Circuit> {
    let groups = acm_group_dnfs(spec, 0, &[])?;
    let mut b = CircuitBuilder::new(spec.total_vars());
    let out = append_acm(&mut b, &groups);
    b.finish(out)
}
