use std::fmt;

/// Commutative coefficient ring with characteristic 2.
///
/// The Euclidean hooks return `None` for rings that are not principal ideal
/// domains (the group ring). Callers that need a PID check this at runtime.
pub trait Ring: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;

    /// `Ok(None)` for zero, `Ok(Some(k))` for a homogeneous element of degree
    /// `k` (deg t = 1, deg ι = 0), `Err(())` otherwise.
    fn homogeneous_degree(&self) -> Result<Option<i64>, ()>;

    fn euclid_size(&self) -> Option<u64> {
        None
    }

    /// Euclidean division. Panics on a zero divisor.
    fn div_rem(&self, _d: &Self) -> Option<(Self, Self)> {
        None
    }

    /// A unit `u` such that `self * u` is the normal representative of the
    /// associate class.
    fn normal_unit(&self) -> Self {
        Self::one()
    }

    fn is_pid() -> bool {
        Self::one().euclid_size().is_some()
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Self::one()
        } else {
            Self::zero()
        }
    }
}

/// An element of GF(2).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2(pub bool);

impl Gf2 {
    pub const ZERO: Gf2 = Gf2(false);
    pub const ONE: Gf2 = Gf2(true);
}

impl fmt::Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

impl Ring for Gf2 {
    const NAME: &'static str = "F2";

    fn zero() -> Self {
        Gf2(false)
    }
    fn one() -> Self {
        Gf2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn is_unit(&self) -> bool {
        self.0
    }
    fn plus(&self, other: &Self) -> Self {
        Gf2(self.0 ^ other.0)
    }
    fn times(&self, other: &Self) -> Self {
        Gf2(self.0 & other.0)
    }
    fn homogeneous_degree(&self) -> Result<Option<i64>, ()> {
        Ok(if self.0 { Some(0) } else { None })
    }
    fn euclid_size(&self) -> Option<u64> {
        Some(0)
    }
    fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        assert!(d.0, "division by zero in F2");
        Some((*self, Gf2(false)))
    }
}
