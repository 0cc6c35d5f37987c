pub mod diagram;
pub mod invariants;
pub mod moves;
pub mod notation;
pub mod poly;
mod unionfind;
