//! Exact arithmetic for rank-2 Drinfeld modules over F_q[T]: finite field
//! towers, skew polynomials, τ-modules over k ⊗ B, Frobenius characteristic
//! polynomials, class enumeration and traces of Hecke operators on cusp forms.

pub mod drinfeld;
pub mod error;
pub mod ffield;
pub mod funcfield;
pub mod hecke;
pub mod par;
pub mod pid;
pub mod poly;
pub mod ring;
pub mod skewpoly;
pub mod taumod;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
