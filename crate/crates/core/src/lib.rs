pub mod smt;
pub mod typea;
pub mod linalg;
pub mod straighten;
pub mod multicone;
pub mod wonderful;
pub mod cli;
