//! Factor-count parity and irreducibility of sparse binary polynomials.
//!
//! The class 2 pentanomial `X^n + X^(n-s) + X^(n-2s) + X^(n-3s) + 1` over
//! GF(2) is studied through the discriminant of its integer lift: for a
//! squarefree binary `f` with lift `F`, the number of irreducible factors of
//! `f` has the same parity as `deg f` exactly when `D(F) = 1 (mod 8)`.
//!
//! - [`gf2poly`]: packed GF(2)[X] arithmetic, Rabin's test, factor counting.
//! - [`zpoly`]: integer lifts, Newton power sums, resultants, `D(F) mod 8`.
//! - [`swan`]: closed-form parity and reducibility predicates.
//! - [`search`]: exhaustive enumeration and irreducibility survey.
//! - [`verify`]: oracle-agreement suites tying the closed forms to brute force.

pub mod gf2poly;
pub mod search;
pub mod swan;
pub mod verdict;
pub mod verify;
pub mod zpoly;

pub use gf2poly::{BitPoly, Gf2Error, PentShape};
pub use verdict::{Parity, ParityVerdict, VerdictSource};
pub use zpoly::IntPoly;
