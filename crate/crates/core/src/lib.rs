//! Treewidth-parameterized problems, their hardness gadgets, brute-force
//! oracles, and tree-decomposition solvers.

pub mod graph;
pub mod harness;
pub mod treewidth;
pub mod problems;
pub mod reductions;
pub mod solvers;
