use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactIntegral,
    Asymptotic,
    LowerBound,
    UpperBound,
}

/// Which closed-form formula produced an asymptotic estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `6π/(h + λ_α ε h^((α+1)/2))`, roughness negligible.
    SmallBeta,
    /// Large-β power law with exponent set by α (α ≠ 1/3).
    LargeBetaPower,
    /// Large-β logarithmic law at α = 1/3.
    LargeBetaLog,
    /// `π(1/β_S + 1/β_P)|ln h|` for two slipping surfaces.
    Hocking,
    /// `6π/(h + εβ)` for a corrugated wall.
    ShiftedWall,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Regime {
    /// The dimensionless parameter that selects the formula: `β = ε h^((α−1)/2)`
    /// for rough solids, `max(h/β_S, h/β_P)` for slip, `ε/h` for corrugation.
    pub beta: f64,
    pub branch: Branch,
}

/// A drag value with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DragEstimate {
    pub value: f64,
    pub method: Method,
    pub regime: Option<Regime>,
    pub err_estimate: Option<f64>,
    /// Set when the inputs fall outside the regime where the formula applies.
    #[serde(default)]
    pub out_of_regime: bool,
}

impl DragEstimate {
    pub fn exact(value: f64, err_estimate: f64) -> Self {
        DragEstimate {
            value,
            method: Method::ExactIntegral,
            regime: None,
            err_estimate: Some(err_estimate),
            out_of_regime: false,
        }
    }

    pub fn asymptotic(value: f64, beta: f64, branch: Branch) -> Self {
        DragEstimate {
            value,
            method: Method::Asymptotic,
            regime: Some(Regime { beta, branch }),
            err_estimate: None,
            out_of_regime: false,
        }
    }

    pub fn bound(value: f64, method: Method, err_estimate: Option<f64>) -> Self {
        debug_assert!(matches!(method, Method::LowerBound | Method::UpperBound));
        DragEstimate {
            value,
            method,
            regime: None,
            err_estimate,
            out_of_regime: false,
        }
    }

    pub(crate) fn flag_out_of_regime(mut self, flag: bool) -> Self {
        self.out_of_regime = flag;
        self
    }
}
