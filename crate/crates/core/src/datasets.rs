//! The two reference failure-time data sets.

use crate::dist::DataSet;

/// Failure times of the air conditioning system of an airplane
/// (Linhart and Zucchini, 1986), in listed order.
pub const AIRCON: [f64; 30] = [
    23.0, 261.0, 87.0, 7.0, 120.0, 14.0, 62.0, 47.0, 225.0, 71.0, 246.0, 21.0, 42.0, 20.0, 5.0,
    12.0, 120.0, 11.0, 3.0, 14.0, 71.0, 11.0, 14.0, 11.0, 16.0, 90.0, 1.0, 16.0, 52.0, 95.0,
];

/// Vinyl chloride concentrations from clean upgradient monitoring wells,
/// in mg/L (Bhaumik et al., 2009), in listed order.
pub const VINYL_CHLORIDE: [f64; 34] = [
    5.1, 1.2, 1.3, 0.6, 0.5, 2.4, 0.5, 1.1, 8.0, 0.8, 0.4, 0.6, 0.9, 0.4, 2.0, 0.5, 5.3, 3.2, 2.7,
    2.9, 2.5, 2.3, 1.0, 0.2, 0.1, 0.1, 1.8, 0.9, 2.0, 4.0, 6.8, 1.2, 0.4, 0.2,
];

pub fn aircon() -> DataSet {
    DataSet::new(AIRCON.to_vec(), "aircon").expect("fixture values are positive")
}

pub fn vinyl_chloride() -> DataSet {
    DataSet::new(VINYL_CHLORIDE.to_vec(), "vinyl").expect("fixture values are positive")
}
