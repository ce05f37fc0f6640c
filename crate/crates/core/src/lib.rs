pub mod catalog;
pub mod clifford;
pub mod g2;
pub mod lie;
pub mod linalg;
pub mod quadext;
pub mod report;
pub mod scalar;
