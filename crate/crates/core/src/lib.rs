pub mod atlas;
pub mod carrier;
pub mod decompose;
pub mod error;
pub mod linalg;
pub mod point;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod schemes;
pub mod stratify;
pub mod sylvester;
pub mod upoly;

pub use error::{Error, Result};
pub use scalar::Scalar;
