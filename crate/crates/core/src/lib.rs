//! Effective non-existence certificates for rational points on Shimura curves
//! of Γ₀(p)-type over abelian number fields.
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`]: Kronecker symbols, resultants, primality and factorization;
//! * [`numfield`]: abelian number fields and their prime splitting;
//! * [`classgrp`]: class groups of quadratic fields via binary quadratic forms;
//! * [`quatalg`]: Hilbert symbols and splitting of rational quaternion algebras;
//! * [`badprimes`]: the explicit finite bad-prime set attached to a field;
//! * [`lemma`]: the Frobenius trace congruences behind the odd-degree argument;
//! * [`certify`]: hypothesis audit, auxiliary quadratic field search and
//!   certificate assembly.

pub mod arith;
pub mod badprimes;
pub mod certify;
pub mod classgrp;
pub mod error;
pub mod lemma;
pub mod numfield;
pub mod quatalg;

pub use error::{Error, Result};
