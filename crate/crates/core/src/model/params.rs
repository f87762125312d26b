//! Physical description of the aquifer system and its dimensionless groups.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper boundary condition of the saturated zone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum WaterTable {
    /// Flow and storage in an exponential-model unsaturated zone.
    #[default]
    Unsaturated,
    /// Free surface draining instantly (specific yield only).
    Instantaneous,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Aquifer {
    pub k_r: f64,
    pub k_z: f64,
    pub s_s: f64,
    pub s_y: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Aquitard {
    pub k_r1: f64,
    pub k_z1: f64,
    pub s_s1: f64,
    /// Thickness; `inf` for an unbounded layer.
    pub b_1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vadose {
    pub a_c: f64,
    pub a_k: f64,
    pub psi_a: f64,
    pub psi_k: f64,
    /// Thickness above the water table; `inf` for unbounded.
    pub l: f64,
    pub theta_r: f64,
    pub theta_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Well {
    pub q: f64,
    pub r_w: f64,
    pub c_w: f64,
    /// Depth of the top of the screen below the aquifer top.
    pub d: f64,
    /// Depth of the bottom of the screen below the aquifer top.
    pub l: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalSystem {
    pub aquifer: Aquifer,
    pub aquitard: Aquitard,
    pub vadose: Vadose,
    pub well: Well,
    #[serde(default)]
    pub water_table: WaterTable,
}

impl PhysicalSystem {
    pub fn validate(&self) -> Result<()> {
        let a = &self.aquifer;
        let w = &self.well;
        let v = &self.vadose;
        let t = &self.aquitard;
        positive("aquifer.k_r", a.k_r)?;
        positive("aquifer.k_z", a.k_z)?;
        positive("aquifer.s_s", a.s_s)?;
        positive("aquifer.b", a.b)?;
        positive("well.q", w.q)?;
        positive("well.r_w", w.r_w)?;
        non_negative("well.c_w", w.c_w)?;
        non_negative("aquitard.k_r1", t.k_r1)?;
        non_negative("aquitard.k_z1", t.k_z1)?;
        positive("aquitard.s_s1", t.s_s1)?;
        positive_or_inf("aquitard.b_1", t.b_1)?;
        non_negative("vadose.a_c", v.a_c)?;
        non_negative("vadose.a_k", v.a_k)?;
        positive_or_inf("vadose.l", v.l)?;
        if !(0.0 <= w.d && w.d < w.l && w.l <= a.b) {
            return Err(Error::Config(format!(
                "screen depths must satisfy 0 <= d < l <= b (d = {}, l = {}, b = {})",
                w.d, w.l, a.b
            )));
        }
        if !(a.s_y > 0.0 && a.s_y < 1.0) {
            return Err(Error::Config(format!("aquifer.s_y = {} must lie in (0, 1)", a.s_y)));
        }
        if ((v.theta_s - v.theta_r) - a.s_y).abs() > 1e-9 * a.s_y.max(1.0) {
            return Err(Error::Config(format!(
                "aquifer.s_y = {} must equal theta_s - theta_r = {}",
                a.s_y,
                v.theta_s - v.theta_r
            )));
        }
        Ok(())
    }

    pub fn transmissivity(&self) -> f64 {
        self.aquifer.k_r * self.aquifer.b
    }

    /// Drawdown scale Q/(4π K_r b) that maps s to s_D.
    pub fn drawdown_scale(&self) -> f64 {
        self.well.q / (4.0 * PI * self.transmissivity())
    }

    pub fn diffusivity(&self) -> f64 {
        self.aquifer.k_r / self.aquifer.s_s
    }
}

/// Dimensionless parameters of the model. Field names follow the usual
/// symbols; `rw_b` is the well radius over the aquifer thickness, from which
/// r_wD = r_w/r follows once the observation radius is known.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimensionlessGroups {
    #[serde(rename = "K_D")]
    pub k_d: f64,
    #[serde(rename = "R_Kr")]
    pub r_kr: f64,
    #[serde(rename = "R_Kz")]
    pub r_kz: f64,
    /// S_s1/S_s
    #[serde(rename = "R_Ss")]
    pub r_ss: f64,
    #[serde(rename = "R_b")]
    pub r_b: f64,
    pub rw_b: f64,
    #[serde(rename = "C_wD")]
    pub c_wd: f64,
    #[serde(rename = "d_D")]
    pub d_d: f64,
    #[serde(rename = "l_D")]
    pub l_d: f64,
    #[serde(rename = "a_kD")]
    pub a_kd: f64,
    #[serde(rename = "a_cD")]
    pub a_cd: f64,
    #[serde(rename = "psi_aD")]
    pub psi_ad: f64,
    #[serde(rename = "psi_kD")]
    pub psi_kd: f64,
    /// S_y/(S_s b)
    #[serde(rename = "S_D")]
    pub s_d: f64,
    #[serde(rename = "L_D")]
    pub l_vadose: f64,
    #[serde(default)]
    pub water_table: WaterTable,
    /// Replace the aquitard by a no-flow base.
    #[serde(default)]
    pub impermeable_base: bool,
}

impl DimensionlessGroups {
    pub fn validate(&self) -> Result<()> {
        positive("K_D", self.k_d)?;
        non_negative("R_Kr", self.r_kr)?;
        non_negative("R_Kz", self.r_kz)?;
        positive("R_Ss", self.r_ss)?;
        positive_or_inf("R_b", self.r_b)?;
        positive("rw_b", self.rw_b)?;
        non_negative("C_wD", self.c_wd)?;
        non_negative("a_kD", self.a_kd)?;
        non_negative("a_cD", self.a_cd)?;
        non_negative("S_D", self.s_d)?;
        positive_or_inf("L_D", self.l_vadose)?;
        finite("psi_aD", self.psi_ad)?;
        finite("psi_kD", self.psi_kd)?;
        if !(0.0 <= self.d_d && self.d_d < self.l_d && self.l_d <= 1.0) {
            return Err(Error::Config(format!(
                "screen must satisfy 0 <= d_D < l_D <= 1 (d_D = {}, l_D = {})",
                self.d_d, self.l_d
            )));
        }
        if self.rw_b >= 1.0 {
            return Err(Error::Config(format!("rw_b = {} must be below 1", self.rw_b)));
        }
        Ok(())
    }

    /// K_D1/K_D = R_Kz/R_Kr
    pub fn r_kd(&self) -> f64 {
        self.r_kz / self.r_kr
    }

    /// α_s1/α_s = R_Kr/R_Ss
    pub fn r_alpha_s(&self) -> f64 {
        self.r_kr / self.r_ss
    }

    /// λ_D = a_kD − a_cD
    pub fn lambda_d(&self) -> f64 {
        self.a_kd - self.a_cd
    }

    /// Common exponent of the equal-exponent case.
    pub fn kappa_d(&self) -> f64 {
        self.a_kd
    }

    /// r_wD = r_w/r at observation radius r_D = r/b.
    pub fn r_wd(&self, r_d: f64) -> f64 {
        self.rw_b / r_d
    }

    pub fn screen_length(&self) -> f64 {
        self.l_d - self.d_d
    }

    /// Storage coefficient of the unsaturated zone with the exponential
    /// constitutive factor folded in: S_D a_cD e^{a_kD(ψ_kD − ψ_aD)}.
    pub fn vadose_capacity(&self) -> f64 {
        self.s_d * self.a_cd * (self.a_kd * (self.psi_kd - self.psi_ad)).exp()
    }

    /// Whether the base is effectively closed (no leakage at all).
    pub fn closed_base(&self) -> bool {
        self.impermeable_base || self.r_kz == 0.0
    }

    /// Set a field by its configuration key; used by parameter sweeps.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if key == "impermeable_base" {
            self.impermeable_base = value != 0.0;
            return Ok(());
        }
        let slot = match key {
            "K_D" => &mut self.k_d,
            "R_Kr" => &mut self.r_kr,
            "R_Kz" => &mut self.r_kz,
            "R_Ss" => &mut self.r_ss,
            "R_b" => &mut self.r_b,
            "rw_b" => &mut self.rw_b,
            "C_wD" => &mut self.c_wd,
            "d_D" => &mut self.d_d,
            "l_D" => &mut self.l_d,
            "a_kD" => &mut self.a_kd,
            "a_cD" => &mut self.a_cd,
            "psi_aD" => &mut self.psi_ad,
            "psi_kD" => &mut self.psi_kd,
            "S_D" => &mut self.s_d,
            "L_D" => &mut self.l_vadose,
            _ => return Err(Error::Config(format!("unknown sweep key `{key}`"))),
        };
        *slot = value;
        Ok(())
    }

    pub const SWEEP_KEYS: [&'static str; 16] = [
        "K_D",
        "R_Kr",
        "R_Kz",
        "R_Ss",
        "R_b",
        "rw_b",
        "C_wD",
        "d_D",
        "l_D",
        "a_kD",
        "a_cD",
        "psi_aD",
        "psi_kD",
        "S_D",
        "L_D",
        "impermeable_base",
    ];
}

/// Dimensionless groups plus the observation radius r_D = r/b and time
/// t_s = α_s t/r².
pub fn to_dimensionless(sys: &PhysicalSystem, r: f64, t: f64) -> Result<(DimensionlessGroups, f64, f64)> {
    sys.validate()?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain(format!("radial distance {r} must be positive")));
    }
    if !(t >= 0.0) {
        return Err(Error::domain(format!("time {t} must be non-negative")));
    }
    let a = &sys.aquifer;
    let w = &sys.well;
    let v = &sys.vadose;
    let aq = &sys.aquitard;
    let groups = DimensionlessGroups {
        k_d: a.k_z / a.k_r,
        r_kr: aq.k_r1 / a.k_r,
        r_kz: aq.k_z1 / a.k_z,
        r_ss: aq.s_s1 / a.s_s,
        r_b: aq.b_1 / a.b,
        rw_b: w.r_w / a.b,
        c_wd: w.c_w / (PI * a.s_s * a.b * w.r_w * w.r_w),
        d_d: w.d / a.b,
        l_d: w.l / a.b,
        a_kd: v.a_k * a.b,
        a_cd: v.a_c * a.b,
        psi_ad: v.psi_a / a.b,
        psi_kd: v.psi_k / a.b,
        s_d: a.s_y / (a.s_s * a.b),
        l_vadose: v.l / a.b,
        water_table: sys.water_table,
        impermeable_base: false,
    };
    let r_d = r / a.b;
    let t_s = sys.diffusivity() * t / (r * r);
    Ok((groups, r_d, t_s))
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} = {v} must be finite")))
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} = {v} must be positive and finite")))
    }
}

fn non_negative(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} = {v} must be non-negative and finite")))
    }
}

fn positive_or_inf(name: &str, v: f64) -> Result<()> {
    if v > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} = {v} must be positive or inf")))
    }
}
