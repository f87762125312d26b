//! Laplace inversion and semi-infinite oscillatory quadrature.

pub mod epsilon;
pub mod laplace;
pub mod quadrature;

pub use epsilon::{accelerate_sequence, Accelerated};
pub use laplace::{
    dehoog_from_values, invert_laplace_dehoog, invert_laplace_stehfest, stehfest_from_values, stehfest_nodes,
    stehfest_stable_from_values, stehfest_weights, LaplaceConfig,
};
pub use quadrature::{
    integrate_oscillatory, integrate_oscillatory_near_origin, integrate_oscillatory_with, GaussLegendre,
    OscillatoryQuadConfig, PanelRules, QuadOutcome,
};
