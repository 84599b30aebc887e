pub mod bwb;
pub mod chessboard;
pub mod cli;
pub mod collections;
pub mod error;
pub mod expr;
pub mod flagx;
pub mod report;
pub mod scripts;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
