pub mod detasym;
pub mod exactnum;
pub mod fit;
pub mod green;
pub mod lattice;
pub mod melon;
pub mod sampler;

pub use melon::BoundaryCondition;
