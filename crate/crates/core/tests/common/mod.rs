#![allow(dead_code)]

pub mod clause_sets;
pub mod fixtures;
pub mod terms;
pub mod trees;
