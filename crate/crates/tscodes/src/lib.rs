//! Binary cyclic codes from trace sequences s_t = Tr(F(alpha^t + 1)) of
//! permutation monomials and trinomials over GF(2^m).
//!
//! The pipeline: pick a [`FamilyId`] and m, build the field, generate the
//! sequence, recover g_s(x) by Fourier expansion and by Berlekamp-Massey,
//! compare with the closed-form [`predict`]ion, then study the code g_s
//! generates with [`codes`].

pub mod codes;
pub mod cosets;
pub mod error;
pub mod expected;
pub mod families;
pub mod gf2m;
pub mod pipeline;
pub mod polyring;
pub mod predict;
pub mod sequence;


pub use cosets::{CosetTable, GammaMachinery};
pub use error::{Error, Result};
pub use families::{FamilyId, Validity};
pub use gf2m::{FieldElement, FieldSpec, PolyTable};
pub use polyring::BinaryPoly;
pub use codes::{BoundReport, CodeRecord, Distance, DistanceMethod, SphereVerdict};
pub use predict::{CrossCheck, Prediction};
pub use sequence::{SequenceAnalysis, TraceSequence};
