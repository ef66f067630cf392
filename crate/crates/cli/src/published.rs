//! Published values that `tables` compares against.

use epl_core::competitors::Family;

use crate::commands::Model;

/// `(θ, mean, variance, cv)` at `β = 1`.
pub const TABLE_1: [(f64, f64, f64, f64); 4] = [
    (0.5, 0.4315028, 0.3923130, 2.107004),
    (1.0, 0.6158883, 0.5966291, 1.572898),
    (5.0, 0.9001530, 0.8989667, 1.109458),
    (10.0, 0.9494062, 0.9491146, 1.052966),
];

pub const TABLE_2_BETA: f64 = 0.1;
pub const TABLE_2_THETA: f64 = 0.5;
pub const TABLE_2_N: u32 = 20;

/// `E[X_{i:20}^r]`, `r = 1..4`, from the truncated series.
pub const TABLE_2_SERIES: [(u32, [f64; 4]); 3] = [
    (1, [0.1172126, 0.03121316, 0.01280193, 0.007203924]),
    (10, [2.279001, 4.940849, 13.43999, 42.12036]),
    (20, [22.10733, 621.2616, 21864.98, 944798.2]),
];

/// The same moments by numerical integration.
pub const TABLE_2_NUMERICAL: [(u32, [f64; 4]); 3] = [
    (1, [0.1260696, 0.03281421, 0.01323651, 0.007361332]),
    (10, [2.056653, 4.899393, 13.42872, 42.11641]),
    (20, [22.10734, 621.2616, 21864.98, 944798.2]),
];

#[derive(Debug, Clone, Copy)]
pub struct FitRow {
    pub model: Model,
    pub beta: f64,
    pub shape: f64,
    pub ks: f64,
    pub p_value: f64,
}

const fn row(model: Model, beta: f64, shape: f64, ks: f64, p_value: f64) -> FitRow {
    FitRow { model, beta, shape, ks, p_value }
}

/// Air conditioning failure times.
pub const TABLE_3: [FitRow; 6] = [
    row(Model::Epl, 0.0101, 0.9193, 0.1290, 0.6531),
    row(Model::Other(Family::ExpGeometric), 0.0102, 0.6148, 0.1262, 0.6793),
    row(Model::Other(Family::ExpPoisson), 0.0106, 1.7941, 0.1472, 0.4890),
    row(Model::Other(Family::ExpLogarithmic), 0.0111, 0.1932, 0.1288, 0.6555),
    row(Model::Other(Family::Weibull), 0.0183, 0.8533, 0.1531, 0.4394),
    row(Model::Other(Family::Gamma), 0.0136, 0.8135, 0.1694, 0.3187),
];

/// Vinyl chloride concentrations.
pub const TABLE_4: [FitRow; 6] = [
    row(Model::Epl, 0.4796, 5.0811, 0.0882, 0.9331),
    row(Model::Other(Family::ExpGeometric), 0.4818, 0.1771, 0.0876, 0.9360),
    row(Model::Other(Family::ExpPoisson), 0.4767, 0.4276, 0.0880, 0.9341),
    row(Model::Other(Family::ExpLogarithmic), 0.4867, 0.7022, 0.0870, 0.9394),
    row(Model::Other(Family::Weibull), 0.5296, 1.0101, 0.0918, 0.9116),
    row(Model::Other(Family::Gamma), 0.5654, 1.0626, 0.0973, 0.8733),
];
