//! Boolean function oracles.
//!
//! Circuits, formulas and explicit truth tables all answer the same
//! question: the function value on a stable input. Enumeration and
//! detection code only sees [`BooleanFunction`].

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::assignment::PartialAssignment;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::formula::{CnfFormula, DnfFormula};

pub trait BooleanFunction {
    fn num_vars(&self) -> usize;

    /// Value on a stable input of length `num_vars()`.
    fn eval(&self, bits: &[bool]) -> bool;
}

impl BooleanFunction for Circuit {
    fn num_vars(&self) -> usize {
        Circuit::num_vars(self)
    }

    fn eval(&self, bits: &[bool]) -> bool {
        self.eval_bool(bits).expect("input length matches num_vars")
    }
}

impl BooleanFunction for DnfFormula {
    fn num_vars(&self) -> usize {
        DnfFormula::num_vars(self)
    }

    fn eval(&self, bits: &[bool]) -> bool {
        self.eval_bool(bits).expect("input length matches num_vars")
    }
}

impl BooleanFunction for CnfFormula {
    fn num_vars(&self) -> usize {
        CnfFormula::num_vars(self)
    }

    fn eval(&self, bits: &[bool]) -> bool {
        self.eval_bool(bits).expect("input length matches num_vars")
    }
}

impl<T: BooleanFunction + ?Sized> BooleanFunction for &T {
    fn num_vars(&self) -> usize {
        (**self).num_vars()
    }

    fn eval(&self, bits: &[bool]) -> bool {
        (**self).eval(bits)
    }
}

/// A closure viewed as a Boolean function.
#[derive(Clone, Copy)]
pub struct FnOracle<F> {
    num_vars: usize,
    f: F,
}

impl<F: Fn(&[bool]) -> bool> FnOracle<F> {
    pub fn new(num_vars: usize, f: F) -> Self {
        FnOracle { num_vars, f }
    }
}

impl<F: Fn(&[bool]) -> bool> BooleanFunction for FnOracle<F> {
    fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn eval(&self, bits: &[bool]) -> bool {
        (self.f)(bits)
    }
}

impl<F> fmt::Debug for FnOracle<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnOracle")
            .field("num_vars", &self.num_vars)
            .finish_non_exhaustive()
    }
}

/// The complete value table of a function.
///
/// Row `i` holds the value on the input whose big-endian binary value is
/// `i`, i.e. `x1` is the most significant bit. As text it is a string of
/// `2^n` characters `0`/`1`, row 0 first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    num_vars: usize,
    rows: Vec<bool>,
}

/// Largest arity for which a truth table is materialized.
pub const MAX_TABLE_VARS: usize = 30;

impl TruthTable {
    pub fn new(num_vars: usize, rows: Vec<bool>) -> Result<Self> {
        if num_vars > MAX_TABLE_VARS {
            return Err(Error::BoundExceeded {
                what: "truth table",
                n: num_vars,
                bound: MAX_TABLE_VARS,
            });
        }
        if rows.len() != 1usize << num_vars {
            return Err(Error::DimensionMismatch {
                expected: 1usize << num_vars,
                found: rows.len(),
            });
        }
        Ok(TruthTable { num_vars, rows })
    }

    pub fn from_function<F: BooleanFunction + ?Sized>(f: &F) -> Result<Self> {
        let n = f.num_vars();
        if n > MAX_TABLE_VARS {
            return Err(Error::BoundExceeded {
                what: "truth table",
                n,
                bound: MAX_TABLE_VARS,
            });
        }
        let mut bits = alloc::vec![false; n];
        let rows = (0..1u64 << n)
            .map(|row| {
                for (i, b) in bits.iter_mut().enumerate() {
                    *b = row >> (n - 1 - i) & 1 == 1;
                }
                f.eval(&bits)
            })
            .collect();
        Ok(TruthTable { num_vars: n, rows })
    }

    pub fn constant(num_vars: usize, value: bool) -> Result<Self> {
        TruthTable::new(num_vars, alloc::vec![value; 1usize << num_vars])
    }

    pub fn rows(&self) -> &[bool] {
        &self.rows
    }

    pub fn row(&self, row: usize) -> bool {
        self.rows[row]
    }

    pub fn row_of(bits: &[bool]) -> usize {
        bits.iter()
            .fold(0usize, |acc, &b| acc << 1 | usize::from(b))
    }

    pub fn count_ones(&self) -> usize {
        self.rows.iter().filter(|&&b| b).count()
    }

    /// Values of `f` on every resolution of `a` agree; returns that value.
    pub fn constant_on(&self, a: &PartialAssignment) -> Option<bool> {
        let mut it = a
            .resolutions()
            .map(|b| self.rows[Self::row_of(&b.to_bools().expect("resolutions are stable"))]);
        let first = it.next()?;
        it.all(|v| v == first).then_some(first)
    }
}

impl BooleanFunction for TruthTable {
    fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn eval(&self, bits: &[bool]) -> bool {
        self.rows[Self::row_of(bits)]
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rows
            .iter()
            .try_for_each(|&b| f.write_str(if b { "1" } else { "0" }))
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<bool> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidAssignment(alloc::format!(
                    "truth table character {c:?} is not 0 or 1"
                ))),
            })
            .collect::<Result<_>>()?;
        if !rows.len().is_power_of_two() {
            return Err(Error::InvalidAssignment(alloc::format!(
                "truth table length {} is not a power of two",
                rows.len()
            )));
        }
        TruthTable::new(rows.len().trailing_zeros() as usize, rows)
    }
}

/// For each of the `3^n` partial assignments, which stable values the
/// function takes over its resolutions.
///
/// Built bottom-up: the entry of an assignment with a `U` at some position
/// merges the entries obtained by setting that position to 0 and to 1.
/// Entries are indexed by [`PartialAssignment::index`].
#[derive(Clone, Debug)]
pub struct SubcubeTable {
    num_vars: usize,
    flags: Vec<u8>,
}

const TAKES_ZERO: u8 = 0b01;
const TAKES_ONE: u8 = 0b10;

impl SubcubeTable {
    pub fn new(table: &TruthTable) -> Self {
        let n = table.num_vars;
        let total = 3usize.pow(n as u32);
        let mut flags = alloc::vec![0u8; total];
        for idx in (0..total).rev() {
            let mut rest = idx;
            let mut power = 1usize;
            let mut digit_pos = 0;
            while digit_pos < n && rest % 3 != 0 {
                rest /= 3;
                power *= 3;
                digit_pos += 1;
            }
            flags[idx] = if digit_pos == n {
                let mut row = 0usize;
                let mut t = idx;
                // digit k belongs to variable k, which is row bit n-1-k
                for k in 0..n {
                    row |= ((t % 3) - 1) << (n - 1 - k);
                    t /= 3;
                }
                if table.rows[row] {
                    TAKES_ONE
                } else {
                    TAKES_ZERO
                }
            } else {
                flags[idx + power] | flags[idx + 2 * power]
            };
        }
        SubcubeTable { num_vars: n, flags }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    /// The common value of the function over all resolutions of the
    /// assignment with the given index, if there is one.
    #[inline]
    pub fn constant_value(&self, index: usize) -> Option<bool> {
        match self.flags[index] {
            TAKES_ZERO => Some(false),
            TAKES_ONE => Some(true),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn row_order_is_big_endian() {
        let f: DnfFormula = "(x1&x2)|(!x1&x2)|(!x1&!x2)".parse().unwrap();
        let t = TruthTable::from_function(&f).unwrap();
        assert_eq!(t.to_string(), "1101");
        assert_eq!("1101".parse::<TruthTable>().unwrap(), t);
    }

    #[test]
    fn bad_tables() {
        assert!("110".parse::<TruthTable>().is_err());
        assert!("11a1".parse::<TruthTable>().is_err());
        assert_eq!("1".parse::<TruthTable>().unwrap().num_vars(), 0);
    }

    #[test]
    fn subcube_agrees_with_resolutions() {
        let t: TruthTable = "1101001110010110".parse().unwrap();
        let s = SubcubeTable::new(&t);
        assert_eq!(s.len(), 81);
        for idx in 0..81u64 {
            let a = PartialAssignment::from_index(4, idx);
            assert_eq!(s.constant_value(idx as usize), t.constant_on(&a), "{a}");
        }
    }
}
