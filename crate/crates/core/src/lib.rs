// SPDX-License-Identifier: Apache-2.0

//! Merge algebras, m-monoids, clone algebras, abstract clones and partial
//! infinitary clone algebras, the translations between them, and a bounded
//! equational checker for desk-scale instances.

pub mod seq;
pub mod verdict;
pub mod merge;
pub mod mmonoid;
pub mod finop;
pub mod clonealg;
pub mod absclone;
pub mod pica;
pub mod translate;
pub mod checker;
pub mod cli;
