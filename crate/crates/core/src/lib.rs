pub mod canon;
pub mod cli;
pub mod coloring;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod fq;
pub mod graph;
pub mod graph6;
pub mod groupoid;
pub mod poly;
pub mod sets;
