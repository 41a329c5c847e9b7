pub mod checks;
pub mod cli;
pub mod interval;
pub mod oracle;
pub mod parabolic;
pub mod perm;
pub mod polytope;
pub mod rpoly;
