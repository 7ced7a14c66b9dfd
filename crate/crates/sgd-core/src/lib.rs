//! Core library for synthesizing and verifying short first-order
//! descriptions of finite groups: a formula AST with S-expression syntax,
//! finite group representations with Cayley-graph search, the generation and
//! describing-sentence builders, a brute-force model checker, and
//! automorphism/holomorph machinery.

pub mod aut;
pub mod check;
pub mod files;
pub mod formula;
pub mod group;
pub mod synth;
