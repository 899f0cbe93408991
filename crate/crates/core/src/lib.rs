//! Planar rotation systems, wedge routing, meshes and the recursive host graph
//! into which every countable planar graph embeds as a topological minor.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cyclic;
pub mod embedder;
pub mod error;
pub mod flow;
pub mod graph;
pub mod host;
pub mod mesh;
pub mod planar;
pub mod verify;
pub mod wedge;

pub use error::{Error, Result};
pub use graph::Graph;
pub use planar::{FacialWalk, PlanarMap};
