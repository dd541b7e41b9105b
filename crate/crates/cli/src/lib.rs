//! Text formats and the command runner behind the `hamlie` binary.

pub mod cocycle;
pub mod combo;
pub mod commands;
pub mod derivation;
pub mod element;
pub mod iso;
pub mod spec;
pub mod syntax;
