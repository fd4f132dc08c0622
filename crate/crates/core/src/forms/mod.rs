//! Finite quadratic forms of period 2 and integral lattices.

pub mod cyclotomic;
pub mod intmat;
pub mod lattice;
pub mod quadratic;

pub use cyclotomic::Z8;
pub use lattice::{van_der_blij_check, Discriminant, Eigenlattices, IntegralLattice, LatticeInvolution};
pub use quadratic::{
    brown_properties_check, quadratic_extensions, BilinearSpace2, Classification, Generator, Parity, QuadraticSpace,
};
