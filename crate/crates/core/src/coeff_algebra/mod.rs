//! Exact arithmetic over GF(2), F2[t], F2[t,t^-1] and F2[Z/2], with matrix
//! reduction and Smith normal form.

pub mod bits;
pub mod group_ring;
pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod snf;

pub use bits::{f2_rank, f2_rank_info, BitMatrix, BitVec, F2RankInfo};
pub use group_ring::GroupRingElem;
pub use laurent::F2Laurent;
pub use matrix::RingMatrix;
pub use poly::F2Poly;
pub use ring::{Gf2, Ring};
pub use snf::{invariant_factors, laurent_inverse_series, normalize_torsion, snf, snf_f2t, snf_laurent, Snf};
