//! Exact computations around the centralizer of osp(1|2) on threefold tensor
//! products: irreducible representations, Casimir and Bannai–Ito images, the
//! Brauer algebra B₃(η), matrix-algebra closures and Bratteli diagrams.

pub mod bratteli;
pub mod brauer;
pub mod closure;
pub mod linalg;
pub mod osp;
pub mod report;
pub mod tensor;
