//! Real radical ideals via moment relaxations and Pommaret bases.

pub mod linalg;
pub mod moment;
pub mod polycore;
pub mod sdpsolve;
pub mod kernelbasis;
pub mod pommaret;
pub mod pipeline;
pub mod cli;
