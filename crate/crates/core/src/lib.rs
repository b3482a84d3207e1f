//! Exact computation of splitting types of direct images for covers of the projective
//! line cut out by m-secant curves on Hirzebruch surfaces, together with the symbolic
//! predictions they are checked against.

pub mod arith;
pub mod polymat;
pub mod birkhoff;
pub mod geometry;
pub mod funcfield;
pub mod instances;
pub mod pipeline;
