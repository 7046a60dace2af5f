use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Supported field orders. Only prime fields are implemented.
pub const SUPPORTED_ORDERS: [u8; 6] = [2, 3, 5, 7, 11, 13];

/// A prime-order finite field GF(q).
///
/// Elements are carried around as canonical residues `0..q` in a `u8`; the
/// raw helpers on `Field` (`add`, `mul`, ...) assume their inputs are already
/// reduced. [`FieldElement`] is the checked wrapper for callers that want the
/// field attached to the value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Field(u8);

impl Field {
    pub const GF2: Field = Field(2);
    pub const GF3: Field = Field(3);
    pub const GF5: Field = Field(5);
    pub const GF7: Field = Field(7);

    pub fn new(q: u8) -> Result<Self> {
        if SUPPORTED_ORDERS.contains(&q) {
            Ok(Field(q))
        } else {
            Err(Error::domain(format!(
                "unsupported field order {q}; expected one of {SUPPORTED_ORDERS:?}"
            )))
        }
    }

    #[inline]
    pub fn order(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn is_binary(self) -> bool {
        self.0 == 2
    }

    /// Bits of information per symbol, used by the enumeration guards.
    pub fn log2_order(self) -> f64 {
        (self.0 as f64).log2()
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.0 as i64) as u8
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        let s = a as u16 + b as u16;
        let q = self.0 as u16;
        (if s >= q { s - q } else { s }) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.0 as u16) as u8
    }

    /// Multiplicative inverse via Fermat, `a^(q-2)`. `None` for zero.
    pub fn inv(self, a: u8) -> Option<u8> {
        if a == 0 {
            return None;
        }
        let mut result = 1u8;
        let mut base = a;
        let mut e = self.0 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        Some(result)
    }

    pub fn elem(self, value: u8) -> Result<FieldElement> {
        FieldElement::new(self, value)
    }

    /// Checks that every value is a canonical residue.
    pub fn check_residues(self, values: &[u8]) -> Result<()> {
        match values.iter().find(|&&v| v >= self.0) {
            Some(v) => Err(Error::domain(format!(
                "residue {v} out of range for GF({})",
                self.0
            ))),
            None => Ok(()),
        }
    }
}

impl TryFrom<u8> for Field {
    type Error = Error;

    fn try_from(q: u8) -> Result<Self> {
        Field::new(q)
    }
}

impl From<Field> for u8 {
    fn from(f: Field) -> u8 {
        f.0
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A residue bound to its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u8,
    field: Field,
}

impl FieldElement {
    pub fn new(field: Field, value: u8) -> Result<Self> {
        if value >= field.order() {
            return Err(Error::domain(format!(
                "residue {value} out of range for {field}"
            )));
        }
        Ok(FieldElement { value, field })
    }

    pub fn value(self) -> u8 {
        self.value
    }

    pub fn field(self) -> Field {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn arith(self, other: FieldElement, op: ArithOp) -> Result<FieldElement> {
        if self.field != other.field {
            return Err(Error::domain(format!(
                "mixed fields {} and {}",
                self.field, other.field
            )));
        }
        let f = self.field;
        let value = match op {
            ArithOp::Add => f.add(self.value, other.value),
            ArithOp::Sub => f.sub(self.value, other.value),
            ArithOp::Mul => f.mul(self.value, other.value),
        };
        Ok(FieldElement { value, field: f })
    }

    pub fn inverse(self) -> Result<FieldElement> {
        self.field
            .inv(self.value)
            .map(|value| FieldElement {
                value,
                field: self.field,
            })
            .ok_or_else(|| Error::domain("zero has no multiplicative inverse"))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(q: u8, v: u8) -> FieldElement {
        Field::new(q).unwrap().elem(v).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(el(2, 1).arith(el(2, 1), ArithOp::Add).unwrap(), el(2, 0));
        assert_eq!(el(3, 2).arith(el(3, 2), ArithOp::Mul).unwrap(), el(3, 1));
        assert_eq!(el(5, 0).arith(el(5, 3), ArithOp::Sub).unwrap(), el(5, 2));
    }

    #[test]
    fn mismatched_fields_rejected() {
        assert!(matches!(
            el(2, 1).arith(el(3, 1), ArithOp::Add),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(el(2, 1).inverse().unwrap(), el(2, 1));
        assert_eq!(el(5, 2).inverse().unwrap(), el(5, 3));
        assert_eq!(el(7, 3).inverse().unwrap(), el(7, 5));
        assert!(el(7, 0).inverse().is_err());
    }

    #[test]
    fn inverse_is_involution_on_units() {
        for q in SUPPORTED_ORDERS {
            let f = Field::new(q).unwrap();
            for a in 1..q {
                let b = f.inv(a).unwrap();
                assert_eq!(f.mul(a, b), 1, "GF({q}) a={a}");
                assert_eq!(f.inv(b), Some(a));
            }
        }
    }

    #[test]
    fn raw_ops_match_integer_arithmetic() {
        for q in SUPPORTED_ORDERS {
            let f = Field::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..q {
                    let (ai, bi) = (a as i64, b as i64);
                    assert_eq!(f.add(a, b), f.reduce(ai + bi));
                    assert_eq!(f.sub(a, b), f.reduce(ai - bi));
                    assert_eq!(f.mul(a, b), f.reduce(ai * bi));
                }
            }
        }
    }

    #[test]
    fn unsupported_orders() {
        for q in [0, 1, 4, 6, 9, 17] {
            assert!(Field::new(q).is_err());
        }
    }
}
