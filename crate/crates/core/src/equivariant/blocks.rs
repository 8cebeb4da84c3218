use std::fmt;
use std::str::FromStr;

use super::Z2FreeComplex;
use crate::coeff_algebra::{GroupRingElem, RingMatrix};
use crate::complexes::Window;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    B0,
    Bplus,
    Bminus,
    Binfty,
}

impl FromStr for BlockKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B0" => Ok(BlockKind::B0),
            "Bplus" | "B+" => Ok(BlockKind::Bplus),
            "Bminus" | "B-" => Ok(BlockKind::Bminus),
            "Binfty" | "Binf" => Ok(BlockKind::Binfty),
            _ => Err(Error::InvalidArgument(format!("unknown block kind '{s}'"))),
        }
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockKind::B0 => "B0",
            BlockKind::Bplus => "Bplus",
            BlockKind::Bminus => "Bminus",
            BlockKind::Binfty => "Binfty",
        })
    }
}

/// Generators `x_i` in degree `i` with `d x_i = (1+ι) x_(i+1)`:
/// `B0` is `x_0`; `Bplus` is `x_0 .. x_(N-1)`; `Bminus` is `x_(-N) .. x_(-1)`;
/// `Binfty` is `x_(-N) .. x_N`. `size` is ignored for `B0`.
pub fn finite_type_blocks(kind: BlockKind, size: usize) -> Result<Z2FreeComplex> {
    let n = size as i64;
    if kind != BlockKind::B0 && size < 1 {
        return Err(Error::InvalidArgument(format!("{kind} needs size at least 1")));
    }
    let (lo, hi, window) = match kind {
        BlockKind::B0 => (0, 0, Window::NONE),
        BlockKind::Bplus => (0, n - 1, Window::new(None, Some(n - 1))),
        BlockKind::Bminus => (-n, -1, Window::new(Some(-n), None)),
        BlockKind::Binfty => (-n, n, Window::both(-n, n)),
    };
    let len = (hi - lo + 1) as usize;
    let d = RingMatrix::from_fn(len, len, |i, j| if i == j + 1 { GroupRingElem::NORM } else { GroupRingElem::ZERO });
    let labels = (lo..=hi).map(|k| format!("x{k}")).collect();
    let grading = (lo..=hi).collect();
    Ok(Z2FreeComplex::graded(labels, grading, d)?.with_window(window))
}
