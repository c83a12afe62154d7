//! Quasi-cyclic LDPC parity-check matrices with certified girth.

pub mod alist;
pub mod block;
pub mod catalog;
pub mod circulant;
pub mod conditions;
pub mod decode;
pub mod error;
pub mod families;
pub mod gf2poly;
pub mod oracle;
pub mod sparse;

pub use block::BlockMatrix;
pub use circulant::CirculantSpec;
pub use error::{Error, Result};
pub use sparse::SparseBinaryMatrix;
