//! Factoring univariate polynomials modulo `p^k` for `k <= 4`, counting and
//! enumerating lifts of factors, and root finding over the local rings
//! `F_p[x]/(phi^n)` and `Z/p^n`.

pub mod arith;
pub mod cz;
pub mod error;
pub mod factor;
pub mod field;
pub mod hensel;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod reduction;
pub mod report;
pub mod rep_roots;
pub mod ring;
pub mod solver;
pub mod verify;
pub mod rng;

pub use error::{Error, Result};
pub use field::{FieldElem, Fq};
pub use poly::DensePoly;
pub use ring::{LocalRingCtx, PrimePower};
pub use rng::{seeded_rng, SeededRng};
