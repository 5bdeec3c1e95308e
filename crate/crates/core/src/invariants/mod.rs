//! Rephasing-invariant phase analysis.

pub mod closed_form;
pub mod omega;
pub mod panel;
pub mod plaquette;
pub mod texture;
pub mod triangle;

pub use closed_form::{closed_form_j_n3, closed_forms_n4, texture_j_pair};
pub use omega::{apply_symmetry, omega_from_params, OmegaSet, Symmetry};
pub use panel::{basis_solve_n4, panel_lattice, panel_relation_residuals, BasisSolution, PanelLattice};
pub use plaquette::{
    count_independent_phases, epsilon_pattern_residual, epsilon_sign_n3, index_pairs, plaquette, plaquette_table,
    reduce_sextet, Plaquette, PlaquetteIndex, PlaquetteTable,
};
pub use texture::{zero_texture_analysis, TextureChain, TextureClass, ZeroTextureReport};
pub use triangle::{polygon_area, triangle_areas, PairKind, UnitarityPolygon};
