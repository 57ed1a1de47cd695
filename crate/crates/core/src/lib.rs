//! Mod-p cohomology of finite p-groups from minimal resolutions, and the
//! central detection invariants built on top of it.

pub mod linalg;
pub mod group;
pub mod catalog;
pub mod resolution;
pub mod invariants;
pub mod verify;
