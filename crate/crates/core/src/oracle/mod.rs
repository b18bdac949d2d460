//! Independent stabilizer simulation of the repeater protocol.

pub mod circuit;
pub mod frame;
pub mod lc_search;
pub mod monte_carlo;
pub mod pauli;
pub mod protocol;
pub mod tableau;
