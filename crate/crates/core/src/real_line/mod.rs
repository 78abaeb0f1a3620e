//! q-measures on `[0, 1]` and numerical q-integration.

mod function;
mod integrate;
mod interval;
mod measure;
pub mod quadrature;

pub use function::{Direction, Layered, LinearPiece, MonotonePiece, PiecewiseLinear, PiecewiseMonotone};
pub use integrate::{
    exp_integral_closed, layer_value, monomial_integral_closed, monotone_convergence_demo, mu_domination_check,
    pointwise_le_check, q_integral_layered, q_integral_piecewise_linear, q_integral_real, quantum_ftc_check,
    surprise_additivity_check, FtcPoint, FtcReport, MonotoneConvergence, FTC_QUAD_TOL, FTC_STEP, FTC_TOL,
};
pub use interval::IntervalUnion;
pub use measure::RealQMeasure;
pub use quadrature::QuadratureResult;
