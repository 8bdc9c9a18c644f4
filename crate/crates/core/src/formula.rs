//! Depth-two formulas.
//!
//! Both formula types keep their terms in the order given: reports refer
//! to term positions. The textual forms accepted by [`str::parse`] are the
//! ones produced by `Display`: `(x1&!x2)|(x3)` for a DNF and
//! `(x1|!x2)&(x3)` for a CNF, with `1`/`0` for empty terms and empty
//! formulas.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::assignment::PartialAssignment;
use crate::circuit::{Circuit, CircuitBuilder, Node};
use crate::error::{Error, Result};
use crate::term::{Connective, Literal, Term};
use crate::ternary::Ternary;

fn check_terms(num_vars: usize, terms: &[Term], connective: Connective) -> Result<()> {
    for t in terms {
        if t.connective() != connective {
            return Err(Error::MalformedCircuit(format!(
                "term {t} has the wrong connective for this formula"
            )));
        }
        if t.var_bound() > num_vars {
            return Err(Error::VarOutOfRange {
                var: t.var_bound() - 1,
                num_vars,
            });
        }
    }
    Ok(())
}

/// An OR of conjunction terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DnfFormula {
    num_vars: usize,
    terms: Vec<Term>,
}

impl DnfFormula {
    pub fn new(num_vars: usize, terms: Vec<Term>) -> Result<Self> {
        check_terms(num_vars, &terms, Connective::Conjunction)?;
        Ok(DnfFormula { num_vars, terms })
    }

    /// Builds a formula from literal lists, allowing contradictory terms.
    pub fn from_literals<I, T>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: IntoIterator<Item = Literal>,
    {
        let terms = terms
            .into_iter()
            .map(|t| Term::new_unchecked(Connective::Conjunction, t))
            .collect();
        DnfFormula::new(num_vars, terms)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total number of literal occurrences.
    pub fn literal_count(&self) -> usize {
        self.terms.iter().map(Term::len).sum()
    }

    /// Same terms over `num_vars >= self.num_vars()` variables.
    pub fn widen(&self, num_vars: usize) -> Result<Self> {
        DnfFormula::new(num_vars, self.terms.clone())
    }

    pub fn to_circuit(&self) -> Circuit {
        two_level_circuit(self.num_vars, &self.terms, false)
    }

    pub fn eval_ternary(&self, a: &PartialAssignment) -> Result<Ternary> {
        check_len(self.num_vars, a.len())?;
        Ok(Ternary::any(self.terms.iter().map(|t| t.eval(a))))
    }

    pub fn eval_bool(&self, bits: &[bool]) -> Result<bool> {
        check_len(self.num_vars, bits.len())?;
        Ok(self.terms.iter().any(|t| t.eval_bool(bits)))
    }

    /// `F|_a`: terms with a literal valued 0 under `a` are dropped and
    /// literals valued 1 are deleted from the rest. A term that loses all
    /// its literals becomes the empty (constant 1) term. Variable indices
    /// are kept.
    pub fn restrict_simplify(&self, a: &PartialAssignment) -> Result<DnfFormula> {
        check_len(self.num_vars, a.len())?;
        let terms = self
            .terms
            .iter()
            .filter(|t| t.literals().iter().all(|l| l.eval(a) != Ternary::Zero))
            .map(|t| {
                Term::new_unchecked(
                    Connective::Conjunction,
                    t.literals()
                        .iter()
                        .copied()
                        .filter(|l| l.eval(a) != Ternary::One),
                )
            })
            .collect();
        Ok(DnfFormula {
            num_vars: self.num_vars,
            terms,
        })
    }

    /// Whether some term evaluates to 1 under `a`, which is stronger than
    /// the formula evaluating to 1.
    pub fn has_true_term(&self, a: &PartialAssignment) -> bool {
        self.terms.iter().any(|t| t.eval(a) == Ternary::One)
    }

    pub fn has_contradictory_terms(&self) -> bool {
        self.terms.iter().any(Term::is_contradictory)
    }

    /// De Morgan negation into a CNF over the same variables.
    pub fn negate(&self) -> CnfFormula {
        CnfFormula {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(Term::negated).collect(),
        }
    }

    /// Reads a circuit shaped as an OR of ANDs of input literals (a single
    /// AND or a single literal also qualify).
    pub fn from_circuit(c: &Circuit) -> Option<DnfFormula> {
        two_level_from_circuit(c, false).map(|terms| DnfFormula {
            num_vars: c.num_vars(),
            terms,
        })
    }
}

/// An AND of disjunction clauses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_vars: usize,
    terms: Vec<Term>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Term>) -> Result<Self> {
        check_terms(num_vars, &clauses, Connective::Disjunction)?;
        Ok(CnfFormula {
            num_vars,
            terms: clauses,
        })
    }

    pub fn from_literals<I, T>(num_vars: usize, clauses: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: IntoIterator<Item = Literal>,
    {
        let clauses = clauses
            .into_iter()
            .map(|t| Term::new_unchecked(Connective::Disjunction, t))
            .collect();
        CnfFormula::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_circuit(&self) -> Circuit {
        two_level_circuit(self.num_vars, &self.terms, true)
    }

    pub fn eval_ternary(&self, a: &PartialAssignment) -> Result<Ternary> {
        check_len(self.num_vars, a.len())?;
        Ok(Ternary::all(self.terms.iter().map(|t| t.eval(a))))
    }

    pub fn eval_bool(&self, bits: &[bool]) -> Result<bool> {
        check_len(self.num_vars, bits.len())?;
        Ok(self.terms.iter().all(|t| t.eval_bool(bits)))
    }

    pub fn has_tautological_clauses(&self) -> bool {
        self.terms.iter().any(Term::is_contradictory)
    }

    /// De Morgan negation into a DNF over the same variables.
    pub fn negate(&self) -> DnfFormula {
        DnfFormula {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(Term::negated).collect(),
        }
    }

    pub fn from_circuit(c: &Circuit) -> Option<CnfFormula> {
        two_level_from_circuit(c, true).map(|terms| CnfFormula {
            num_vars: c.num_vars(),
            terms,
        })
    }
}

fn check_len(num_vars: usize, len: usize) -> Result<()> {
    if num_vars != len {
        return Err(Error::DimensionMismatch {
            expected: num_vars,
            found: len,
        });
    }
    Ok(())
}

/// OR-of-ANDs (`cnf == false`) or AND-of-ORs, always with an explicit gate
/// per term so that the result has depth two.
fn two_level_circuit(num_vars: usize, terms: &[Term], cnf: bool) -> Circuit {
    let mut b = CircuitBuilder::new(num_vars);
    let mut tops = Vec::with_capacity(terms.len());
    for t in terms {
        let inputs: Vec<usize> = t.literals().iter().map(|&l| b.input(l)).collect();
        tops.push(if cnf { b.or(inputs) } else { b.and(inputs) });
    }
    let out = if cnf { b.and(tops) } else { b.or(tops) };
    b.finish(out)
        .expect("two-level construction only uses earlier gates and checked variables")
}

fn two_level_from_circuit(c: &Circuit, cnf: bool) -> Option<Vec<Term>> {
    let nodes = c.nodes();
    let connective = if cnf {
        Connective::Disjunction
    } else {
        Connective::Conjunction
    };
    let is_inner = |n: &Node| {
        if cnf {
            matches!(n, Node::Or(_))
        } else {
            matches!(n, Node::And(_))
        }
    };
    let is_outer = |n: &Node| {
        if cnf {
            matches!(n, Node::And(_))
        } else {
            matches!(n, Node::Or(_))
        }
    };
    let literal_list = |ids: &[usize]| -> Option<Vec<Literal>> {
        ids.iter()
            .map(|&i| match nodes[i] {
                Node::Input(l) => Some(l),
                _ => None,
            })
            .collect()
    };
    let term_of = |id: usize| -> Option<Term> {
        match &nodes[id] {
            Node::Input(l) => Some(Term::new_unchecked(connective, [*l])),
            n if is_inner(n) => {
                literal_list(n.children()).map(|ls| Term::new_unchecked(connective, ls))
            }
            _ => None,
        }
    };
    let out = &nodes[c.output()];
    match out {
        Node::Input(_) => Some(alloc::vec![term_of(c.output())?]),
        n if is_outer(n) => n.children().iter().map(|&i| term_of(i)).collect(),
        n if is_inner(n) => Some(alloc::vec![term_of(c.output())?]),
        _ => None,
    }
}

fn fmt_two_level(
    f: &mut fmt::Formatter<'_>,
    terms: &[Term],
    outer_sep: &str,
    empty: &str,
) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str(empty);
    }
    for (i, t) in terms.iter().enumerate() {
        if i > 0 {
            f.write_str(outer_sep)?;
        }
        write!(f, "({t})")?;
    }
    Ok(())
}

impl fmt::Display for DnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_two_level(f, &self.terms, "|", "0")
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_two_level(f, &self.terms, "&", "1")
    }
}

fn parse_literal(tok: &str) -> Result<Literal> {
    let bad = || Error::MalformedCircuit(format!("bad literal {tok:?}"));
    let (negated, rest) = match tok.strip_prefix('!') {
        Some(r) => (true, r.trim()),
        None => (false, tok),
    };
    let digits = rest.strip_prefix('x').ok_or_else(bad)?;
    let index: usize = digits.parse().map_err(|_| bad())?;
    if index == 0 {
        return Err(bad());
    }
    Ok(Literal::new(index - 1, negated))
}

/// Parses the two-level textual form; `num_vars` is the largest variable
/// mentioned.
fn parse_two_level(s: &str, outer: char, inner: char) -> Result<(usize, Vec<Vec<Literal>>)> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (empty_formula, empty_term) = if outer == '|' { ("0", "1") } else { ("1", "0") };
    if s == empty_formula {
        return Ok((0, Vec::new()));
    }
    let mut terms = Vec::new();
    let mut num_vars = 0;
    for part in s.split(outer) {
        let body = part
            .strip_prefix('(')
            .and_then(|p| p.strip_suffix(')'))
            .unwrap_or(part);
        if body.contains(['(', ')']) {
            return Err(Error::MalformedCircuit(format!(
                "unexpected parenthesis in {part:?}"
            )));
        }
        let mut lits = Vec::new();
        if body != empty_term {
            for tok in body.split(inner) {
                let lit = parse_literal(tok)?;
                num_vars = num_vars.max(lit.var + 1);
                lits.push(lit);
            }
        }
        terms.push(lits);
    }
    Ok((num_vars, terms))
}

impl FromStr for DnfFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, terms) = parse_two_level(s, '|', '&')?;
        DnfFormula::from_literals(n, terms)
    }
}

impl FromStr for CnfFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, clauses) = parse_two_level(s, '&', '|')?;
        CnfFormula::from_literals(n, clauses)
    }
}
