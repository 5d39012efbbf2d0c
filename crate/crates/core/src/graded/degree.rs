use std::fmt;
use std::ops::Add;

/// An element `(a, b)` of Z2 x Z2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree {
    pub a: u8,
    pub b: u8,
}

impl Degree {
    pub const D00: Degree = Degree { a: 0, b: 0 };
    pub const D11: Degree = Degree { a: 1, b: 1 };
    pub const D10: Degree = Degree { a: 1, b: 0 };
    pub const D01: Degree = Degree { a: 0, b: 1 };

    pub fn new(a: u8, b: u8) -> Self {
        Degree { a: a & 1, b: b & 1 }
    }

    /// `n * self` in the additive group.
    pub fn times(self, n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Degree::D00
        } else {
            self
        }
    }

    /// True for the degrees whose elements anticommute with themselves.
    pub fn is_odd(self) -> bool {
        parity(self, self) == 1
    }
}

/// Scalar product `a1*a2 + b1*b2 (mod 2)`: 0 commutes, 1 anticommutes.
pub fn parity(d1: Degree, d2: Degree) -> u8 {
    (d1.a * d2.a + d1.b * d2.b) & 1
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        Degree { a: self.a ^ rhs.a, b: self.b ^ rhs.b }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [Degree; 4] = [Degree::D00, Degree::D11, Degree::D10, Degree::D01];

    #[test]
    fn parity_examples() {
        assert_eq!(parity(Degree::D10, Degree::D01), 0);
        assert_eq!(parity(Degree::D11, Degree::D10), 1);
        for d in ALL {
            assert_eq!(parity(Degree::D00, d), 0);
        }
    }

    #[test]
    fn parity_symmetric_and_bilinear() {
        for x in ALL {
            for y in ALL {
                assert_eq!(parity(x, y), parity(y, x));
                for w in ALL {
                    assert_eq!(parity(x + y, w), parity(x, w) ^ parity(y, w));
                }
            }
        }
    }

    #[test]
    fn group_law() {
        for x in ALL {
            assert_eq!(x + Degree::D00, x);
            assert_eq!(x + x, Degree::D00);
        }
        assert_eq!(Degree::D10 + Degree::D01, Degree::D11);
    }
}
