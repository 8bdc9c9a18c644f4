use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::term::{Connective, Literal, Term};
use crate::ternary::Ternary;

/// A vector over `{0, 1, u}`, one entry per variable.
///
/// Doubles as a circuit input, a hazard witness and the assignment form of
/// an implicant. Prints as a string such as `u1u0`, position `i` holding
/// variable `x(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PartialAssignment {
    values: Vec<Ternary>,
}

impl PartialAssignment {
    pub fn new(values: Vec<Ternary>) -> Self {
        PartialAssignment { values }
    }

    pub fn all_unstable(num_vars: usize) -> Self {
        PartialAssignment {
            values: alloc::vec![Ternary::U; num_vars],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        PartialAssignment {
            values: bits.iter().map(|&b| Ternary::from_bool(b)).collect(),
        }
    }

    /// The stable assignment whose big-endian binary value (x1 most
    /// significant) is `row`.
    pub fn from_row(num_vars: usize, row: u64) -> Self {
        PartialAssignment {
            values: (0..num_vars)
                .map(|i| Ternary::from_bool(row >> (num_vars - 1 - i) & 1 == 1))
                .collect(),
        }
    }

    /// Inverse of [`Self::index`].
    pub fn from_index(num_vars: usize, mut index: u64) -> Self {
        let mut values = alloc::vec![Ternary::U; num_vars];
        for slot in values.iter_mut() {
            *slot = Ternary::from_code((index % 3) as u8).unwrap_or(Ternary::U);
            index /= 3;
        }
        PartialAssignment { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Ternary] {
        &self.values
    }

    pub fn set(&mut self, var: usize, value: Ternary) {
        self.values[var] = value;
    }

    #[must_use]
    pub fn with(&self, var: usize, value: Ternary) -> Self {
        let mut out = self.clone();
        out.values[var] = value;
        out
    }

    pub fn stable_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_stable()).count()
    }

    pub fn u_count(&self) -> usize {
        self.values.len() - self.stable_count()
    }

    pub fn is_fully_stable(&self) -> bool {
        self.values.iter().all(|v| v.is_stable())
    }

    /// The Boolean vector, if no position is `U`.
    pub fn to_bools(&self) -> Option<Vec<bool>> {
        self.values.iter().map(|v| v.to_bool()).collect()
    }

    /// Rank in the canonical order: the base-3 number whose digits are the
    /// `U < 0 < 1` codes, with x1 as the least significant digit. This is
    /// the lexicographic order on the coded vector read from the last
    /// variable to the first, and it is the order of [`Ord`].
    pub fn index(&self) -> u64 {
        self.values
            .iter()
            .rev()
            .fold(0u64, |acc, v| acc * 3 + u64::from(v.code()))
    }

    /// Whether `other` is obtained from `self` by replacing some `U`
    /// positions with stable values (`self ⊑ other`).
    pub fn is_refined_by(&self, other: &PartialAssignment) -> bool {
        self.len() == other.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(&a, &b)| a == Ternary::U || a == b)
    }

    /// Every fully stable refinement, in lexicographic order of the `U`
    /// positions with 0 before 1.
    pub fn resolutions(&self) -> Resolutions {
        Resolutions {
            unstable: self
                .values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_stable())
                .map(|(i, _)| i)
                .collect(),
            current: Some(
                self.values
                    .iter()
                    .map(|v| v.to_bool().unwrap_or(false))
                    .collect(),
            ),
        }
    }

    /// The implicant this assignment represents: stable positions become
    /// literals that evaluate to 1 (conjunction) or to 0 (disjunction).
    pub fn to_term(&self, connective: Connective) -> Term {
        let literals = self
            .values
            .iter()
            .enumerate()
            .filter_map(|(var, v)| v.to_bool().map(|b| (var, b)))
            .map(|(var, b)| {
                let literal_true = match connective {
                    Connective::Conjunction => b,
                    Connective::Disjunction => !b,
                };
                Literal::new(var, !literal_true)
            });
        Term::new_unchecked(connective, literals)
    }

    /// Two assignments conflict when some variable is stable in both with
    /// different values.
    pub fn conflicts_with(&self, other: &PartialAssignment) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .any(|(a, b)| a.is_stable() && b.is_stable() && a != b)
    }

    /// Concatenation, used to build assignments over several variable
    /// groups.
    #[must_use]
    pub fn concat(&self, other: &PartialAssignment) -> Self {
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        PartialAssignment { values }
    }

    pub fn slice(&self, start: usize, len: usize) -> Self {
        PartialAssignment {
            values: self.values[start..start + len].to_vec(),
        }
    }
}

impl Ord for PartialAssignment {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.values
            .len()
            .cmp(&other.values.len())
            .then_with(|| self.values.iter().rev().cmp(other.values.iter().rev()))
    }
}

impl PartialOrd for PartialAssignment {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Index<usize> for PartialAssignment {
    type Output = Ternary;

    fn index(&self, var: usize) -> &Ternary {
        &self.values[var]
    }
}

impl From<Vec<Ternary>> for PartialAssignment {
    fn from(values: Vec<Ternary>) -> Self {
        PartialAssignment { values }
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.values.iter().try_for_each(|v| write!(f, "{v}"))
    }
}

impl FromStr for PartialAssignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| {
                Ternary::from_char(c).ok_or_else(|| {
                    let mut msg = String::new();
                    let _ = fmt::Write::write_fmt(
                        &mut msg,
                        format_args!("unexpected character {c:?} at position {}", i + 1),
                    );
                    Error::InvalidAssignment(msg)
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(PartialAssignment::new)
    }
}

/// Iterator over the resolutions of a partial assignment; see
/// [`PartialAssignment::resolutions`].
#[derive(Clone, Debug)]
pub struct Resolutions {
    unstable: Vec<usize>,
    current: Option<Vec<bool>>,
}

impl Iterator for Resolutions {
    type Item = PartialAssignment;

    fn next(&mut self) -> Option<PartialAssignment> {
        let bits = self.current.as_mut()?;
        let out = PartialAssignment::from_bools(bits);
        // odometer over the unstable positions, last position fastest
        let mut done = true;
        for &pos in self.unstable.iter().rev() {
            if bits[pos] {
                bits[pos] = false;
            } else {
                bits[pos] = true;
                done = false;
                break;
            }
        }
        if done {
            self.current = None;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn pa(s: &str) -> PartialAssignment {
        s.parse().unwrap()
    }

    #[test]
    fn resolutions_of_u1u0() {
        let got: Vec<String> = pa("u1u0").resolutions().map(|b| b.to_string()).collect();
        assert_eq!(got, ["0100", "0110", "1100", "1110"]);
    }

    #[test]
    fn resolutions_of_stable_input_is_itself() {
        let got: Vec<_> = pa("101").resolutions().collect();
        assert_eq!(got, [pa("101")]);
    }

    #[test]
    fn resolutions_count() {
        assert_eq!(pa("uu").resolutions().count(), 4);
        assert_eq!(pa("").resolutions().count(), 1);
        assert_eq!(pa("u0uu1u").resolutions().count(), 16);
    }

    #[test]
    fn index_roundtrip_and_order() {
        for n in 0..5 {
            let total = 3u64.pow(n as u32);
            let mut prev: Option<PartialAssignment> = None;
            for i in 0..total {
                let a = PartialAssignment::from_index(n, i);
                assert_eq!(a.index(), i);
                if let Some(p) = prev {
                    assert!(p < a);
                }
                prev = Some(a);
            }
        }
    }

    #[test]
    fn canonical_order_puts_0u_before_u1() {
        assert!(pa("0u") < pa("u1"));
        assert_eq!(pa("0u").index(), 1);
        assert_eq!(pa("u1").index(), 6);
    }

    #[test]
    fn rows_are_big_endian() {
        assert_eq!(PartialAssignment::from_row(3, 0b100).to_string(), "100");
        assert_eq!(PartialAssignment::from_row(3, 0b011).to_string(), "011");
    }

    #[test]
    fn parse_errors() {
        assert!("2u".parse::<PartialAssignment>().is_err());
        assert_eq!(pa("0U").to_string(), "0u");
    }

    #[test]
    fn term_roundtrip() {
        let a = pa("u10u");
        assert_eq!(a.to_term(Connective::Conjunction).to_string(), "x2&!x3");
        assert_eq!(a.to_term(Connective::Disjunction).to_string(), "!x2|x3");
        for c in [Connective::Conjunction, Connective::Disjunction] {
            assert_eq!(a.to_term(c).to_assignment(4).unwrap(), a);
        }
    }

    #[test]
    fn refinement() {
        assert!(pa("u1u").is_refined_by(&pa("011")));
        assert!(pa("u1u").is_refined_by(&pa("u1u")));
        assert!(!pa("u1u").is_refined_by(&pa("001")));
        assert!(pa("0u").conflicts_with(&pa("10")));
        assert!(!pa("0u").conflicts_with(&pa("u1")));
    }
}
