use alloc::vec::Vec;
use core::fmt;

use crate::assignment::PartialAssignment;
use crate::error::{Error, Result};
use crate::ternary::Ternary;

/// A variable or its negation. Variables are 0-indexed; they print as
/// `x1`, `x2`, ...
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub const fn pos(var: usize) -> Self {
        Literal {
            var,
            negated: false,
        }
    }

    pub const fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    pub const fn new(var: usize, negated: bool) -> Self {
        Literal { var, negated }
    }

    #[must_use]
    pub const fn complement(self) -> Self {
        Literal {
            var: self.var,
            negated: !self.negated,
        }
    }

    /// Value of the literal when its variable takes `value`.
    #[inline]
    pub fn apply(self, value: Ternary) -> Ternary {
        if self.negated {
            !value
        } else {
            value
        }
    }

    #[inline]
    pub fn eval(self, a: &PartialAssignment) -> Ternary {
        self.apply(a[self.var])
    }

    /// The stable variable value that makes this literal true.
    pub const fn satisfying_value(self) -> Ternary {
        if self.negated {
            Ternary::Zero
        } else {
            Ternary::One
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "!x{}", self.var + 1)
        } else {
            write!(f, "x{}", self.var + 1)
        }
    }
}

/// How the literals of a [`Term`] are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connective {
    /// AND of literals: a DNF term or a 1-implicant. Empty means constant 1.
    Conjunction,
    /// OR of literals: a CNF clause or a 0-implicant. Empty means constant 0.
    Disjunction,
}

impl Connective {
    #[must_use]
    pub const fn dual(self) -> Self {
        match self {
            Connective::Conjunction => Connective::Disjunction,
            Connective::Disjunction => Connective::Conjunction,
        }
    }

    /// The value of the empty term, and the value an implicant of this
    /// kind forces on the function.
    pub const fn identity(self) -> bool {
        matches!(self, Connective::Conjunction)
    }
}

/// A set of literals read as a conjunction or a disjunction.
///
/// Literals are kept sorted by `(var, negated)` with no duplicates, so two
/// terms over the same literal set compare equal regardless of how they
/// were written.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    literals: Vec<Literal>,
    connective: Connective,
}

impl Term {
    /// Builds a consistent term. Duplicate literals are merged; a variable
    /// in both polarities is rejected.
    pub fn new(
        connective: Connective,
        literals: impl IntoIterator<Item = Literal>,
    ) -> Result<Self> {
        let term = Self::new_unchecked(connective, literals);
        if term.is_contradictory() {
            return Err(Error::ContradictoryTerm);
        }
        Ok(term)
    }

    /// Builds a term that may contain complementary literals such as
    /// `x & !x`.
    pub fn new_unchecked(
        connective: Connective,
        literals: impl IntoIterator<Item = Literal>,
    ) -> Self {
        let mut literals: Vec<Literal> = literals.into_iter().collect();
        literals.sort_unstable();
        literals.dedup();
        Term {
            literals,
            connective,
        }
    }

    pub fn conjunction(literals: impl IntoIterator<Item = Literal>) -> Result<Self> {
        Self::new(Connective::Conjunction, literals)
    }

    pub fn disjunction(literals: impl IntoIterator<Item = Literal>) -> Result<Self> {
        Self::new(Connective::Disjunction, literals)
    }

    pub fn empty(connective: Connective) -> Self {
        Term {
            literals: Vec::new(),
            connective,
        }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn connective(&self) -> Connective {
        self.connective
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.binary_search(&lit).is_ok()
    }

    pub fn mentions(&self, var: usize) -> bool {
        self.literals.iter().any(|l| l.var == var)
    }

    pub fn is_contradictory(&self) -> bool {
        // sorted by (var, negated): complementary literals are adjacent
        self.literals.windows(2).any(|w| w[0].var == w[1].var)
    }

    /// One past the largest variable index used, 0 for the empty term.
    pub fn var_bound(&self) -> usize {
        self.literals.last().map_or(0, |l| l.var + 1)
    }

    /// Same literals under the dual connective.
    #[must_use]
    pub fn with_connective(&self, connective: Connective) -> Self {
        Term {
            literals: self.literals.clone(),
            connective,
        }
    }

    /// De Morgan dual: every literal complemented and the connective flipped.
    #[must_use]
    pub fn negated(&self) -> Self {
        Term::new_unchecked(
            self.connective.dual(),
            self.literals.iter().map(|l| l.complement()),
        )
    }

    #[must_use]
    pub fn with_literal(&self, lit: Literal) -> Self {
        Term::new_unchecked(
            self.connective,
            self.literals.iter().copied().chain(core::iter::once(lit)),
        )
    }

    #[must_use]
    pub fn without_literal(&self, lit: Literal) -> Self {
        Term {
            literals: self
                .literals
                .iter()
                .copied()
                .filter(|&l| l != lit)
                .collect(),
            connective: self.connective,
        }
    }

    pub fn is_subset_of(&self, other: &Term) -> bool {
        self.literals.iter().all(|&l| other.contains(l))
    }

    pub fn eval(&self, a: &PartialAssignment) -> Ternary {
        let values = self.literals.iter().map(|l| l.eval(a));
        match self.connective {
            Connective::Conjunction => Ternary::all(values),
            Connective::Disjunction => Ternary::any(values),
        }
    }

    pub fn eval_bool(&self, a: &[bool]) -> bool {
        let lit = |l: &Literal| a[l.var] != l.negated;
        match self.connective {
            Connective::Conjunction => self.literals.iter().all(lit),
            Connective::Disjunction => self.literals.iter().any(lit),
        }
    }

    /// The partial assignment representing this implicant: variables in
    /// the term are set so that their literal is 1 (conjunction) or 0
    /// (disjunction); the rest are `U`.
    pub fn to_assignment(&self, num_vars: usize) -> Result<PartialAssignment> {
        if self.is_contradictory() {
            return Err(Error::ContradictoryTerm);
        }
        if self.var_bound() > num_vars {
            return Err(Error::VarOutOfRange {
                var: self.var_bound() - 1,
                num_vars,
            });
        }
        let mut values = alloc::vec![Ternary::U; num_vars];
        for l in &self.literals {
            let v = l.satisfying_value();
            values[l.var] = match self.connective {
                Connective::Conjunction => v,
                Connective::Disjunction => !v,
            };
        }
        Ok(PartialAssignment::new(values))
    }

    /// Lowest-index variable the term does not mention.
    pub fn first_free_var(&self, num_vars: usize) -> Option<usize> {
        (0..num_vars).find(|&v| !self.mentions(v))
    }

    /// Renumbers variables by adding `offset`.
    #[must_use]
    pub fn shifted(&self, offset: usize) -> Self {
        Term {
            literals: self
                .literals
                .iter()
                .map(|l| Literal::new(l.var + offset, l.negated))
                .collect(),
            connective: self.connective,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (sep, empty) = match self.connective {
            Connective::Conjunction => ("&", "1"),
            Connective::Disjunction => ("|", "0"),
        };
        if self.literals.is_empty() {
            return f.write_str(empty);
        }
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
