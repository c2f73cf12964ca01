pub mod charclass;
pub mod cli;
pub mod cones;
pub mod cxmat;
pub mod intalg;
pub mod obstruction;
pub mod symplectic;
