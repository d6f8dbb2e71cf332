pub mod algebra;
pub mod error;
pub mod series;
pub mod tensor;
pub mod hopf;
pub mod rmatrix;
pub mod star;
pub mod catalog;
pub mod contraction;
pub mod verify;
