pub mod algebra;
pub mod cohomology;
pub mod compare;
pub mod constructions;
pub mod demo;
pub mod dg;
pub mod envelope;
pub mod error;
pub mod finite;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod module;
pub mod parse;
pub mod presentation;
pub mod scalar;
