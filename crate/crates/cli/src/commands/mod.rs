pub mod ck;
pub mod fit;
pub mod riesz;
pub mod sums;
pub mod verify;
pub mod zeros;
