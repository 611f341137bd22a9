pub mod finset;
pub mod dblcat;
pub mod family;
pub mod universal;
pub mod theory;
pub mod dsl;
