pub mod algebra;
pub mod embedding;
pub mod graph;
pub mod group;
pub mod instance;
pub mod labelled;
pub mod lp;
pub mod properness;
pub mod report;
