//! Recognizers returning three-valued verdicts.

mod structure;
mod topology;
mod verdict;

pub use structure::{
    incompleteness_witness, is_codim_one, is_cubical, is_cubosimplicial, is_filtration_map,
    is_flag, is_nonsingular, is_pure, is_pure_codim_one, is_pure_filtration_map, is_simple,
    is_simplex_shape, is_simplicial,
};
pub use topology::{
    component_count, cross_polytope_boundary, is_ball, is_ball_with, is_cell_complex,
    is_cell_complex_with, is_manifold, is_manifold_with, is_pseudo_manifold,
    is_pseudo_manifold_with, is_semi_cell_complex, is_sphere, is_sphere_with,
};
pub use verdict::{Verdict, Witness};
