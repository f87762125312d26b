//! Drawdown in the aquifer, the underlying aquitard and the overlying
//! unsaturated zone.

pub mod confined;
pub mod coupling;
pub mod fields;
pub mod params;
pub mod vadose;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use confined::{ddbar_sc, hankel_round_trip, sbar_c, BoundaryTransforms, ModeSet, RoundTrip, SeriesSum};
pub use coupling::{aquitard_q1b, coupling_rho, coupling_rho_closed_base, AquitardLayer, Coupling, TransformPoint};
pub use fields::{
    averaged_drawdown, delayed_drawdown, drawdown, sbar_1, sbar_u, sigma_bar, Diagnostics, Drawdown, FieldModel,
    LaplaceValue, Medium, ModelControls, Target, TimeValue, STEHFEST_ORDERS,
};
pub use params::{to_dimensionless, Aquifer, Aquitard, DimensionlessGroups, PhysicalSystem, Vadose, WaterTable, Well};
pub use vadose::{vadose_chi, vadose_qd, VadoseSolution, VadoseZone};

/// Truncation of the cosine series over vertical modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SeriesControls {
    pub max_cosine_terms: usize,
    pub series_rel_tol: f64,
}

impl Default for SeriesControls {
    fn default() -> Self {
        Self {
            max_cosine_terms: 200,
            series_rel_tol: 1e-10,
        }
    }
}

impl SeriesControls {
    pub fn validate(&self) -> Result<()> {
        if self.max_cosine_terms < 10 {
            return Err(Error::Config("series.max_cosine_terms must be >= 10".into()));
        }
        if !(self.series_rel_tol > 0.0 && self.series_rel_tol < 1e-2) {
            return Err(Error::Config("series.series_rel_tol must be in (0, 1e-2)".into()));
        }
        Ok(())
    }
}

/// Parameters shared by the unit tests: the common figure setting with a
/// leaky isotropic aquitard.
#[cfg(test)]
pub(crate) fn test_groups() -> DimensionlessGroups {
    DimensionlessGroups {
        k_d: 1.0,
        r_kr: 1e-2,
        r_kz: 1e-2,
        r_ss: 1e-2,
        r_b: f64::INFINITY,
        rw_b: 0.02,
        c_wd: 1e2,
        d_d: 0.0,
        l_d: 0.6,
        a_kd: 10.0,
        a_cd: 10.0,
        psi_ad: 0.0,
        psi_kd: 0.0,
        s_d: 1e3,
        l_vadose: f64::INFINITY,
        water_table: WaterTable::Unsaturated,
        impermeable_base: false,
    }
}
