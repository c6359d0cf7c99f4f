pub mod cartan;
pub mod cg;
pub mod error;
pub mod exact;
pub mod groups;
pub mod linalg;
pub mod partition;
pub mod quiver;
pub mod qseries;
pub mod report;
pub mod symfun;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{Cyclo, Rational};
pub use groups::GroupModel;
pub use linalg::Matrix;
pub use partition::Partition;
pub use qseries::{QPoly, RatQ};
