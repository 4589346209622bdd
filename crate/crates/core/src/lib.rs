pub mod arrangement;
pub mod catalog;
pub mod exactnum;
pub mod expr;
pub mod freeness;
pub mod linalg;
pub mod logderiv;
pub mod polymod;
