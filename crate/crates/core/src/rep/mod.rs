pub mod ordering;
pub mod verma;
pub mod wedge;
