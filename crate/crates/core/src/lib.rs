//! Exact resistance-distance invariants of graphs, the named bicyclic
//! families, the graph surgeries that compare them, and an exhaustive
//! search over bicyclic graphs for the smallest and largest degree resistance
//! distance.

pub mod enumeration;
pub mod families;
pub mod graph;
pub mod io;
pub mod rational;
pub mod resistance;
pub mod transforms;
pub mod verify;

pub use graph::{identify_vertices, BicyclicClass, Graph, GraphError, TwoCycleBase};
pub use rational::Rational;
