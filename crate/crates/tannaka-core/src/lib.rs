#![no_std]
extern crate alloc;

pub mod aqg;
pub mod braid;
pub mod bundle;
pub mod category;
pub mod dual;
pub mod error;
pub mod examples;
pub mod group;
pub mod hopf;
pub mod legs;
pub mod linalg;
pub mod rep;
pub mod report;
pub mod sample;

pub use aqg::{reconstruct, Aqg, AqgElement, Multiplier, PairElement, Side};
pub use bundle::CategoryBundle;
pub use error::{Error, Result};
pub use linalg::{CMatrix, Tolerance, C64};
pub use report::Report;
