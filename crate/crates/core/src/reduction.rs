//! Reduction from DNF falsifiability to hazard detection.
//!
//! The variables of a DNF `F` are split into `n` groups of `r`. Each group
//! is matched with a block of `s` fresh variables, and every assignment of
//! the group is associated with a distinct minterm of CM on that block (the
//! correspondence `beta`). Each literal occurrence of `F` becomes an ACM
//! formula with 1-hazards at the minterms of the assignments falsifying
//! the literal. The resulting formula computes ACM and has a hazard at the
//! product minterm `I_y` exactly when `F(y) = 0`.
//!
//! Built directly, the formula is OR-AND-(AND-OR-AND), depth 5. Merging
//! the two adjacent AND layers gives depth 4.

use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigUint;

use crate::assignment::PartialAssignment;
use crate::circuit::{Circuit, CircuitBuilder};
use crate::detect::dnf_eliminate_0hazards;
use crate::detect::{brute_force_hazard, hazard_at, HazardKind};
use crate::error::{Error, Result};
use crate::formula::DnfFormula;
use crate::implicants::cm_minterm_count;
use crate::synthesis::{
    acm_formula_with_hazards, acm_group_dnfs, append_acm, cm_minterms_direct, AcmSpec, CmSpec,
};
use crate::term::{Connective, Literal, Term};

/// Smallest multiple of 3 with `2^r <= C(s, s/3) * C(2s/3, s/3)`.
pub fn s_of_r(r: usize) -> Result<usize> {
    if r == 0 {
        return Err(Error::ZeroGroupWidth);
    }
    let needed = BigUint::from(1u8) << r;
    let mut t = 1u64;
    while cm_minterm_count(t) < needed {
        t += 1;
    }
    Ok(3 * t as usize)
}

/// Rank of a stable group assignment in lexicographic order, first
/// variable most significant.
fn rank(bits: &[bool]) -> usize {
    bits.iter()
        .fold(0usize, |acc, &b| acc << 1 | usize::from(b))
}

fn unrank(r: usize, i: usize) -> Vec<bool> {
    (0..r).map(|k| i >> (r - 1 - k) & 1 == 1).collect()
}

/// Injective map from `{0,1}^r` into the minterms of CM on `s` variables.
/// Entry `i` is the image of the `i`-th assignment in lexicographic order.
/// Minterms are written over the block-local variables `0 .. s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BetaBijection {
    r: usize,
    s: usize,
    table: Vec<Term>,
}

impl BetaBijection {
    /// The `i`-th assignment goes to the `i`-th minterm in canonical order.
    pub fn lexicographic(r: usize, s: usize) -> Result<Self> {
        let spec = CmSpec::new(s)?;
        let minterms = cm_minterms_direct(spec);
        let need = checked_pow2(r)?;
        if need > minterms.len() {
            return Err(Error::BetaTooSmall {
                r,
                s,
                available: minterms.len(),
            });
        }
        Ok(BetaBijection {
            r,
            s,
            table: minterms.into_items().into_iter().take(need).collect(),
        })
    }

    /// Validates an explicit table: `2^r` distinct CM minterms.
    pub fn from_table(r: usize, s: usize, table: Vec<Term>) -> Result<Self> {
        let spec = CmSpec::new(s)?;
        let need = checked_pow2(r)?;
        if table.len() != need {
            return Err(Error::InvalidBeta(alloc::format!(
                "expected {need} entries, got {}",
                table.len()
            )));
        }
        let minterms = cm_minterms_direct(spec);
        let mut seen = alloc::collections::BTreeSet::new();
        for t in &table {
            if !minterms.contains(t) {
                return Err(Error::InvalidBeta(alloc::format!(
                    "{t} is not a minterm of CM on {s} variables"
                )));
            }
            if !seen.insert(t) {
                return Err(Error::InvalidBeta(alloc::format!("{t} is used twice")));
            }
        }
        Ok(BetaBijection { r, s, table })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn table(&self) -> &[Term] {
        &self.table
    }

    /// The minterm of a group assignment, over block-local variables.
    pub fn image(&self, bits: &[bool]) -> &Term {
        &self.table[rank(bits)]
    }

    /// The minterm of a group assignment, relabeled into block `group`.
    pub fn image_in_group(&self, bits: &[bool], group: usize) -> Term {
        self.image(bits).shifted(group * self.s)
    }

    /// The group assignment mapped to `t`, if any.
    pub fn preimage(&self, t: &Term) -> Option<Vec<bool>> {
        self.table
            .iter()
            .position(|m| m == t)
            .map(|i| unrank(self.r, i))
    }
}

fn checked_pow2(r: usize) -> Result<usize> {
    if r >= usize::BITS as usize - 1 {
        return Err(Error::BoundExceeded {
            what: "group assignment table",
            n: r,
            bound: usize::BITS as usize - 2,
        });
    }
    Ok(1usize << r)
}

/// Shape of one reduction instance.
///
/// Group `j` (0-based) of the source covers variables `j*r .. (j+1)*r`,
/// padded with unused variables up to `r * n`; it corresponds to the block
/// `j*s .. (j+1)*s` of the output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionParams {
    r: usize,
    n: usize,
    s: usize,
    original_vars: usize,
    beta: BetaBijection,
}

impl ReductionParams {
    /// Parameters for a source over `num_vars` variables with the
    /// lexicographic `beta`.
    pub fn new(num_vars: usize, r: usize) -> Result<Self> {
        let s = s_of_r(r)?;
        Self::with_beta(num_vars, BetaBijection::lexicographic(r, s)?)
    }

    pub fn with_beta(num_vars: usize, beta: BetaBijection) -> Result<Self> {
        let r = beta.r;
        if r == 0 {
            return Err(Error::ZeroGroupWidth);
        }
        Ok(ReductionParams {
            r,
            n: num_vars.div_ceil(r).max(1),
            s: beta.s,
            original_vars: num_vars,
            beta,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn original_vars(&self) -> usize {
        self.original_vars
    }

    /// Source variables after padding, `r * n`.
    pub fn padded_vars(&self) -> usize {
        self.r * self.n
    }

    /// Output variables, `s * n`.
    pub fn output_vars(&self) -> usize {
        self.s * self.n
    }

    pub fn beta(&self) -> &BetaBijection {
        &self.beta
    }

    pub fn acm_spec(&self) -> AcmSpec {
        AcmSpec::new(self.n, self.s).expect("n >= 1 and s valid by construction")
    }

    pub fn source_group(&self, group: usize) -> Range<usize> {
        group * self.r..(group + 1) * self.r
    }

    pub fn output_group(&self, group: usize) -> Range<usize> {
        group * self.s..(group + 1) * self.s
    }

    /// The block-local minterms of the group assignments falsifying `lit`,
    /// in lexicographic order of the assignments.
    fn falsified_minterms(&self, lit: Literal) -> Vec<Term> {
        let pos = lit.var % self.r;
        (0..1usize << self.r)
            .map(|i| unrank(self.r, i))
            .filter(|bits| bits[pos] == lit.negated)
            .map(|bits| self.beta.image(&bits).clone())
            .collect()
    }

    fn check_var(&self, var: usize) -> Result<()> {
        if var >= self.padded_vars() {
            return Err(Error::VarOutOfRange {
                var,
                num_vars: self.padded_vars(),
            });
        }
        Ok(())
    }
}

/// The ACM formula standing in for one literal occurrence: hazards at the
/// product minterms whose block for the literal's group is the image of a
/// group assignment falsifying the literal.
pub fn literal_gadget(params: &ReductionParams, lit: Literal) -> Result<Circuit> {
    params.check_var(lit.var)?;
    acm_formula_with_hazards(
        params.acm_spec(),
        lit.var / params.r,
        &params.falsified_minterms(lit),
    )
}

/// Output of [`reduce_dnffalse_to_hazard`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub params: ReductionParams,
    /// OR over terms, AND over literal gadgets: depth 5.
    pub intermediate: Circuit,
    /// The intermediate with adjacent AND layers merged: depth 4.
    pub formula: Circuit,
}

/// Reduces `f` with the lexicographic correspondence.
pub fn reduce_dnffalse_to_hazard(f: &DnfFormula, r: usize) -> Result<Reduction> {
    reduce_with_params(f, ReductionParams::new(f.num_vars(), r)?)
}

/// Reduces `f` with the given parameters.
///
/// An empty term contributes a hazard-free ACM formula. A formula without
/// terms, which is falsified everywhere, becomes a single ACM formula with
/// hazards at every image of group 0.
pub fn reduce_with_params(f: &DnfFormula, params: ReductionParams) -> Result<Reduction> {
    if params.original_vars != f.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: params.original_vars,
            found: f.num_vars(),
        });
    }
    let spec = params.acm_spec();
    let mut b = CircuitBuilder::new(params.output_vars());
    let mut terms = Vec::with_capacity(f.len().max(1));
    if f.is_empty() {
        let groups = acm_group_dnfs(spec, 0, params.beta.table())?;
        let gadget = append_acm(&mut b, &groups);
        terms.push(b.and(alloc::vec![gadget]));
    }
    for t in f.terms() {
        let mut gadgets = Vec::with_capacity(t.len().max(1));
        if t.is_empty() {
            let groups = acm_group_dnfs(spec, 0, &[])?;
            gadgets.push(append_acm(&mut b, &groups));
        }
        for &lit in t.literals() {
            params.check_var(lit.var)?;
            let groups = acm_group_dnfs(spec, lit.var / params.r, &params.falsified_minterms(lit))?;
            gadgets.push(append_acm(&mut b, &groups));
        }
        terms.push(b.and(gadgets));
    }
    let top = b.or(terms);
    let intermediate = b.finish(top)?;
    let formula = intermediate.collapse_adjacent_gates()?;
    Ok(Reduction {
        params,
        intermediate,
        formula,
    })
}

/// `I_y`: the concatenation of the group images of `y`. Shorter inputs
/// are padded with 0s up to `r * n` variables.
pub fn map_assignment_to_minterm(
    params: &ReductionParams,
    y: &[bool],
) -> Result<PartialAssignment> {
    if y.len() > params.padded_vars() {
        return Err(Error::DimensionMismatch {
            expected: params.padded_vars(),
            found: y.len(),
        });
    }
    let mut padded = y.to_vec();
    padded.resize(params.padded_vars(), false);
    let mut out = PartialAssignment::default();
    for bits in padded.chunks(params.r) {
        let block = params
            .beta
            .image(bits)
            .to_assignment(params.s)
            .expect("minterms are consistent");
        out = out.concat(&block);
    }
    Ok(out)
}

/// `G = F | (x & !x)` on a fresh variable `x`, after dropping the
/// contradictory terms of `F`. `G` has a 0-hazard iff `F` is falsifiable.
pub fn zero_hazard_gadget(f: &DnfFormula) -> DnfFormula {
    let n = f.num_vars();
    let mut terms = dnf_eliminate_0hazards(f).into_terms();
    terms.push(Term::new_unchecked(
        Connective::Conjunction,
        [Literal::pos(n), Literal::neg(n)],
    ));
    DnfFormula::new(n + 1, terms).expect("fresh variable is in range")
}

/// Which of the two reduction outputs a check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    Intermediate,
    Collapsed,
}

/// A failed check in [`verify_reduction`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// Falsifiability of the source and presence of a hazard disagree.
    Equivalence {
        stage: Stage,
        falsifiable: bool,
        hazard_found: bool,
    },
    /// `F(y) = 0` but `I_y` is not a 1-hazard.
    MissingHazard {
        stage: Stage,
        y: PartialAssignment,
        witness: PartialAssignment,
    },
    /// `F(y) = 1` but `I_y` is a hazard.
    SpuriousHazard {
        stage: Stage,
        y: PartialAssignment,
        witness: PartialAssignment,
    },
    /// The output does not have the expected depth.
    Depth {
        stage: Stage,
        expected: usize,
        found: usize,
    },
}

/// Outcome of [`verify_reduction`].
#[derive(Clone, Debug)]
pub struct ReductionCheck {
    pub falsifiable: bool,
    /// Hazard presence in the depth-5 and depth-4 outputs.
    pub intermediate_hazard: bool,
    pub hazard_found: bool,
    pub depth: usize,
    pub intermediate_depth: usize,
    /// Number of source assignments whose `I_y` was checked.
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl ReductionCheck {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Reduces `f` and checks the result exhaustively. Needs `s * n <= bound`.
pub fn verify_reduction(f: &DnfFormula, r: usize, bound: usize) -> Result<ReductionCheck> {
    let red = reduce_dnffalse_to_hazard(f, r)?;
    verify_reduced(f, &red, &ReductionParams::new(f.num_vars(), r)?, bound)
}

/// Checks a reduction output against `f`, predicting hazard locations
/// with `expected` (normally the parameters the output was built with).
///
/// For every `y` over the padded source variables: when `F(y) = 0`, `I_y`
/// must be a 1-hazard of both outputs, and otherwise it must not be a
/// hazard. Hazard presence overall must match falsifiability, and the
/// depths must be 5 and 4.
pub fn verify_reduced(
    f: &DnfFormula,
    red: &Reduction,
    expected: &ReductionParams,
    bound: usize,
) -> Result<ReductionCheck> {
    let out_vars = expected.output_vars();
    if out_vars > bound {
        return Err(Error::BoundExceeded {
            what: "reduction verification",
            n: out_vars,
            bound,
        });
    }
    let padded = expected.padded_vars();
    let stages = [
        (Stage::Intermediate, &red.intermediate, 5),
        (Stage::Collapsed, &red.formula, 4),
    ];
    let mut counterexamples = Vec::new();
    let mut falsifiable = false;
    for row in 0..1u64 << padded {
        let y = PartialAssignment::from_row(padded, row);
        let bits = y.to_bools().expect("stable");
        let value = f.eval_bool(&bits[..f.num_vars()])?;
        falsifiable |= !value;
        let witness = map_assignment_to_minterm(expected, &bits)?;
        for &(stage, c, _) in &stages {
            let h = hazard_at(c, &witness)?;
            match (value, h) {
                (false, Some(HazardKind::One)) | (true, None) => {}
                (false, _) => counterexamples.push(Counterexample::MissingHazard {
                    stage,
                    y: y.clone(),
                    witness: witness.clone(),
                }),
                (true, Some(_)) => counterexamples.push(Counterexample::SpuriousHazard {
                    stage,
                    y: y.clone(),
                    witness: witness.clone(),
                }),
            }
        }
    }
    let mut found = [false; 2];
    for (slot, &(stage, c, want_depth)) in found.iter_mut().zip(&stages) {
        *slot = brute_force_hazard(c, bound)?.found();
        if *slot != falsifiable {
            counterexamples.push(Counterexample::Equivalence {
                stage,
                falsifiable,
                hazard_found: *slot,
            });
        }
        if c.depth() != want_depth {
            counterexamples.push(Counterexample::Depth {
                stage,
                expected: want_depth,
                found: c.depth(),
            });
        }
    }
    Ok(ReductionCheck {
        falsifiable,
        intermediate_hazard: found[0],
        hazard_found: found[1],
        depth: red.formula.depth(),
        intermediate_depth: red.intermediate.depth(),
        checked: 1 << padded,
        counterexamples,
    })
}
