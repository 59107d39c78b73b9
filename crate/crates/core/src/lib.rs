pub mod arith;
pub mod bsat;
pub mod glue;
pub mod line;
pub mod par;
pub mod weyl;
