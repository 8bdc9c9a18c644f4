use core::fmt;
use core::ops::{BitAnd, BitOr, Not};

/// A value of Kleene's strong three-valued logic.
///
/// `U` stands for an unstable (or unknown) signal. It is absorbed by a
/// controlling stable input: `0 & U = 0` and `1 | U = 1`.
///
/// The derived ordering is `U < Zero < One`, which is the coding used for
/// every lexicographic listing of partial assignments in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ternary {
    U,
    Zero,
    One,
}

impl Ternary {
    pub const ALL: [Ternary; 3] = [Ternary::U, Ternary::Zero, Ternary::One];

    #[inline]
    pub const fn from_bool(b: bool) -> Self {
        if b {
            Ternary::One
        } else {
            Ternary::Zero
        }
    }

    /// The stable value, or `None` for `U`.
    #[inline]
    pub const fn to_bool(self) -> Option<bool> {
        match self {
            Ternary::U => None,
            Ternary::Zero => Some(false),
            Ternary::One => Some(true),
        }
    }

    #[inline]
    pub const fn is_stable(self) -> bool {
        !matches!(self, Ternary::U)
    }

    /// Position in the `U < 0 < 1` coding.
    #[inline]
    pub const fn code(self) -> u8 {
        match self {
            Ternary::U => 0,
            Ternary::Zero => 1,
            Ternary::One => 2,
        }
    }

    #[inline]
    pub const fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(Ternary::U),
            1 => Some(Ternary::Zero),
            2 => Some(Ternary::One),
            _ => None,
        }
    }

    pub const fn to_char(self) -> char {
        match self {
            Ternary::U => 'u',
            Ternary::Zero => '0',
            Ternary::One => '1',
        }
    }

    pub const fn from_char(c: char) -> Option<Self> {
        match c {
            'u' | 'U' => Some(Ternary::U),
            '0' => Some(Ternary::Zero),
            '1' => Some(Ternary::One),
            _ => None,
        }
    }

    /// Conjunction of an arbitrary number of values; `One` for no values.
    pub fn all<I: IntoIterator<Item = Ternary>>(values: I) -> Ternary {
        values.into_iter().fold(Ternary::One, |acc, v| acc & v)
    }

    /// Disjunction of an arbitrary number of values; `Zero` for no values.
    pub fn any<I: IntoIterator<Item = Ternary>>(values: I) -> Ternary {
        values.into_iter().fold(Ternary::Zero, |acc, v| acc | v)
    }
}

impl From<bool> for Ternary {
    fn from(b: bool) -> Self {
        Ternary::from_bool(b)
    }
}

impl Not for Ternary {
    type Output = Ternary;

    #[inline]
    fn not(self) -> Ternary {
        match self {
            Ternary::U => Ternary::U,
            Ternary::Zero => Ternary::One,
            Ternary::One => Ternary::Zero,
        }
    }
}

impl BitAnd for Ternary {
    type Output = Ternary;

    #[inline]
    fn bitand(self, rhs: Ternary) -> Ternary {
        match (self, rhs) {
            (Ternary::Zero, _) | (_, Ternary::Zero) => Ternary::Zero,
            (Ternary::One, Ternary::One) => Ternary::One,
            _ => Ternary::U,
        }
    }
}

impl BitOr for Ternary {
    type Output = Ternary;

    #[inline]
    fn bitor(self, rhs: Ternary) -> Ternary {
        match (self, rhs) {
            (Ternary::One, _) | (_, Ternary::One) => Ternary::One,
            (Ternary::Zero, Ternary::Zero) => Ternary::Zero,
            _ => Ternary::U,
        }
    }
}

impl fmt::Display for Ternary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use fmt::Write;
        f.write_char(self.to_char())
    }
}

#[cfg(test)]
mod tests {
    use super::Ternary::{self, *};

    #[test]
    fn and_table() {
        // rows/columns in the order u, 1, 0
        let order = [U, One, Zero];
        let expected = [[U, U, Zero], [U, One, Zero], [Zero, Zero, Zero]];
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate() {
                assert_eq!(a & b, expected[i][j], "{a} & {b}");
            }
        }
    }

    #[test]
    fn or_table() {
        // rows/columns in the order u, 0, 1
        let order = [U, Zero, One];
        let expected = [[U, U, One], [U, Zero, One], [One, One, One]];
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate() {
                assert_eq!(a | b, expected[i][j], "{a} | {b}");
            }
        }
    }

    #[test]
    fn not_table() {
        assert_eq!(!U, U);
        assert_eq!(!Zero, One);
        assert_eq!(!One, Zero);
    }

    #[test]
    fn folds_match_associativity() {
        assert_eq!(Ternary::all([One, U, Zero]), Zero);
        assert_eq!(Ternary::all([One, U, One]), U);
        assert_eq!(Ternary::all([]), One);
        assert_eq!(Ternary::any([Zero, U, One]), One);
        assert_eq!(Ternary::any([Zero, U]), U);
        assert_eq!(Ternary::any([]), Zero);
    }

    #[test]
    fn coding_order() {
        assert!(U < Zero && Zero < One);
        for v in Ternary::ALL {
            assert_eq!(Ternary::from_code(v.code()), Some(v));
            assert_eq!(Ternary::from_char(v.to_char()), Some(v));
        }
        assert_eq!(Ternary::from_char('2'), None);
    }
}
