//! Implicants, minterms and maxterms.
//!
//! A 1-implicant is a conjunction of literals that forces the function to
//! 1 on every stable input it covers; a 0-implicant is a disjunction that
//! forces 0. Minterms and maxterms are the containment-minimal ones.
//!
//! Enumeration scans all `3^n` partial assignments. For a constant-1
//! function the only minterm is the empty term and there are no maxterms;
//! dually for constant 0.

use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigUint;
use num_traits::One;

use crate::assignment::PartialAssignment;
use crate::error::{Error, Result};
use crate::oracle::{BooleanFunction, SubcubeTable, TruthTable};
use crate::term::{Connective, Term};

/// Default arity limit for `3^n` enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ImplicantKind {
    /// Conjunctions forcing 1.
    One,
    /// Disjunctions forcing 0.
    Zero,
}

impl ImplicantKind {
    pub const fn connective(self) -> Connective {
        match self {
            ImplicantKind::One => Connective::Conjunction,
            ImplicantKind::Zero => Connective::Disjunction,
        }
    }

    /// The function value an implicant of this kind forces.
    pub const fn forced_value(self) -> bool {
        matches!(self, ImplicantKind::One)
    }
}

/// Implicants of one kind over `num_vars` variables, sorted by the
/// canonical order of their assignment form (see
/// [`PartialAssignment::index`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ImplicantSet {
    num_vars: usize,
    kind: ImplicantKind,
    items: Vec<Term>,
}

impl ImplicantSet {
    /// Sorts the items; each must use the connective of `kind` and be
    /// consistent.
    pub fn new(num_vars: usize, kind: ImplicantKind, items: Vec<Term>) -> Result<Self> {
        let mut keyed = items
            .into_iter()
            .map(|t| {
                if t.connective() != kind.connective() {
                    return Err(Error::MalformedCircuit(alloc::format!(
                        "implicant {t} has the wrong connective"
                    )));
                }
                Ok((t.to_assignment(num_vars)?.index(), t))
            })
            .collect::<Result<Vec<_>>>()?;
        keyed.sort_by_key(|(k, _)| *k);
        keyed.dedup_by_key(|(k, _)| *k);
        Ok(ImplicantSet {
            num_vars,
            kind,
            items: keyed.into_iter().map(|(_, t)| t).collect(),
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn kind(&self) -> ImplicantKind {
        self.kind
    }

    pub fn items(&self) -> &[Term] {
        &self.items
    }

    pub fn into_items(self) -> Vec<Term> {
        self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.items.contains(t)
    }

    pub fn assignments(&self) -> Vec<PartialAssignment> {
        self.items
            .iter()
            .map(|t| {
                t.to_assignment(self.num_vars)
                    .expect("items are consistent and in range")
            })
            .collect()
    }
}

/// Checks the implicant property by visiting all `2^(n-|t|)` covered
/// stable inputs. The term is read with the connective of `kind`.
pub fn is_implicant<F: BooleanFunction + ?Sized>(
    t: &Term,
    f: &F,
    kind: ImplicantKind,
) -> Result<bool> {
    if t.is_contradictory() {
        return Err(Error::ContradictoryTerm);
    }
    let covered = t
        .with_connective(kind.connective())
        .to_assignment(f.num_vars())?;
    Ok(covered
        .resolutions()
        .all(|b| f.eval(&b.to_bools().expect("resolutions are stable")) == kind.forced_value()))
}

fn check_bound(n: usize, bound: usize) -> Result<()> {
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "implicant enumeration",
            n,
            bound,
        });
    }
    Ok(())
}

/// Indices (see [`PartialAssignment::index`]) of the minimal implicants of `kind`
/// whose index lies in `range`. Candidate ranges may be scanned
/// independently and concatenated in order.
pub fn minimal_implicant_indices(
    table: &SubcubeTable,
    kind: ImplicantKind,
    range: Range<usize>,
) -> Vec<usize> {
    let n = table.num_vars();
    let want = Some(kind.forced_value());
    let mut out = Vec::new();
    for idx in range {
        if table.constant_value(idx) != want {
            continue;
        }
        // minimal: unsetting any stable position loses the implicant property
        let mut rest = idx;
        let mut power = 1usize;
        let mut minimal = true;
        for _ in 0..n {
            let digit = rest % 3;
            if digit != 0 && table.constant_value(idx - digit * power) == want {
                minimal = false;
                break;
            }
            rest /= 3;
            power *= 3;
        }
        if minimal {
            out.push(idx);
        }
    }
    out
}

fn enumerate<F: BooleanFunction + ?Sized>(
    f: &F,
    kind: ImplicantKind,
    bound: usize,
) -> Result<ImplicantSet> {
    let n = f.num_vars();
    check_bound(n, bound)?;
    let table = SubcubeTable::new(&TruthTable::from_function(f)?);
    let items = minimal_implicant_indices(&table, kind, 0..table.len())
        .into_iter()
        .map(|idx| PartialAssignment::from_index(n, idx as u64).to_term(kind.connective()))
        .collect();
    Ok(ImplicantSet {
        num_vars: n,
        kind,
        items,
    })
}

/// All minterms (minimal 1-implicants), by scanning the `3^n` candidates.
pub fn enumerate_minterms<F: BooleanFunction + ?Sized>(
    f: &F,
    bound: usize,
) -> Result<ImplicantSet> {
    enumerate(f, ImplicantKind::One, bound)
}

/// All maxterms (minimal 0-implicants), by scanning the `3^n` candidates.
pub fn enumerate_maxterms<F: BooleanFunction + ?Sized>(
    f: &F,
    bound: usize,
) -> Result<ImplicantSet> {
    enumerate(f, ImplicantKind::Zero, bound)
}

/// Every minterm shares a literal with every maxterm. Equivalently, the
/// assignment forms of the two conflict on some variable.
pub fn check_cross_intersection(mins: &ImplicantSet, maxs: &ImplicantSet) -> Result<bool> {
    if mins.num_vars != maxs.num_vars {
        return Err(Error::DimensionMismatch {
            expected: mins.num_vars,
            found: maxs.num_vars,
        });
    }
    Ok(mins.items.iter().all(|s| {
        maxs.items
            .iter()
            .all(|t| s.literals().iter().any(|&l| t.contains(l)))
    }))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of minterms of the CM function on `3n` variables:
/// `C(3n, n) * C(2n, n)`.
pub fn cm_minterm_count(n: u64) -> BigUint {
    binomial(3 * n, n) * binomial(2 * n, n)
}
