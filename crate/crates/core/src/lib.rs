pub mod cartier;
pub mod chern;
pub mod connections;
pub mod exact_arith;
pub mod format;
pub mod lambda_ring;
pub mod matrix;
pub mod ore;
pub mod parse;
pub mod power_series;
pub mod sample;
pub mod scalar;
pub mod verify;
