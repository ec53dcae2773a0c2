//! Gluing constructions: adjunction preposets, quotients, amalgams, mapping
//! cylinders, pullbacks, homotopy colimits and Hatcher maps.

mod adjunction;
mod cylinder;
mod hocolim;

pub use adjunction::{
    adjunction, adjunction_with_classes, amalgam, amalgam_with_classes, quotient, quotient_labeled,
    AdjunctionDatum, Glued,
};
pub use cylinder::{
    iterated_mc, lmc, mc, mc_projection, mc_star, pullback, tmc, tmc_retraction, Pullback, Tmc,
    TmcRetraction,
};
pub use hocolim::{
    fiber_poset, hatcher_map, hocolim, hocolim_offsets, hocolim_reconstruct, homma_factorization,
    DiagramOverPoset, Variance,
};
