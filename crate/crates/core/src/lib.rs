pub mod admit;
pub mod algebra;
pub mod cli;
pub mod exactlin;
pub mod fixtures;
pub mod hodge;
pub mod isofun;
pub mod pelcheck;
pub mod repcalc;
