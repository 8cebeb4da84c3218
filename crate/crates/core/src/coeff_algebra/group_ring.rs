use std::fmt;

use super::ring::Ring;

/// Element `a + b·ι` of F2[Z/2].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupRingElem {
    pub a: bool,
    pub b: bool,
}

impl GroupRingElem {
    pub const ZERO: GroupRingElem = GroupRingElem { a: false, b: false };
    pub const ONE: GroupRingElem = GroupRingElem { a: true, b: false };
    pub const IOTA: GroupRingElem = GroupRingElem { a: false, b: true };
    pub const NORM: GroupRingElem = GroupRingElem { a: true, b: true };

    pub fn new(a: bool, b: bool) -> Self {
        GroupRingElem { a, b }
    }

    /// Image under the augmentation ι ↦ 1.
    pub fn augment(&self) -> bool {
        self.a ^ self.b
    }

    /// Action of ι on the coefficient: swaps `a` and `b`.
    pub fn swap(&self) -> Self {
        GroupRingElem { a: self.b, b: self.a }
    }

    /// Parses `0`, `1`, `i`, `1+i` (also accepts `ι`).
    pub fn parse(s: &str) -> Result<Self, String> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = GroupRingElem::ZERO;
        for term in s.split('+') {
            match term {
                "0" => {}
                "1" => out.a ^= true,
                "i" | "ι" | "iota" => out.b ^= true,
                _ => return Err(format!("bad group-ring term '{term}' in '{s}'")),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match (self.a, self.b) {
            (false, false) => "0",
            (true, false) => "1",
            (false, true) => "i",
            (true, true) => "1+i",
        })
    }
}

impl Ring for GroupRingElem {
    const NAME: &'static str = "F2[Z/2]";

    fn zero() -> Self {
        Self::ZERO
    }
    fn one() -> Self {
        Self::ONE
    }
    fn is_zero(&self) -> bool {
        !self.a && !self.b
    }
    fn is_unit(&self) -> bool {
        self.a ^ self.b
    }
    fn plus(&self, o: &Self) -> Self {
        GroupRingElem { a: self.a ^ o.a, b: self.b ^ o.b }
    }
    fn times(&self, o: &Self) -> Self {
        GroupRingElem { a: (self.a & o.a) ^ (self.b & o.b), b: (self.a & o.b) ^ (self.b & o.a) }
    }
    fn homogeneous_degree(&self) -> Result<Option<i64>, ()> {
        Ok(if self.is_zero() { None } else { Some(0) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iota_relations() {
        let i = GroupRingElem::IOTA;
        assert_eq!(i.times(&i), GroupRingElem::ONE);
        assert!(GroupRingElem::NORM.times(&GroupRingElem::NORM).is_zero());
        assert!(!GroupRingElem::NORM.is_unit());
        for s in ["0", "1", "i", "1+i"] {
            assert_eq!(GroupRingElem::parse(s).unwrap().to_string(), s);
        }
    }
}
