//! Exact Tate cohomology of finite groups.
//!
//! Groups are multiplication tables, coefficients are finitely presented
//! abelian groups with a group action, and every computation is exact integer
//! arithmetic. The crate covers cochains in all integer degrees (homogeneous
//! and inhomogeneous), their conversion isomorphisms, differentials, cup
//! products in all six degree regimes, cohomology groups with canonical class
//! coordinates, and the closed-form cocycles of cyclic groups (the
//! fundamental-class model and the explicit torus cocycles).

pub mod cochain;
pub mod cohomology;
pub mod cup;
pub mod cyclic;
pub mod io;
pub mod problem;
pub mod verify;
pub mod error;
pub mod gmodule;
pub mod group;
pub mod linalg;

pub use error::{Result, TateError};
