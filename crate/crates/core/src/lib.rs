//! Exact invariants of weighted flag varieties and weighted cluster algebras:
//! root systems, Bruhat cells, weighted projective spaces, orbifold charts,
//! cluster mutation, weighted quivers and numeric Kähler checks.

#![allow(clippy::needless_range_loop)]

pub mod bruhat;
pub mod cartan;
pub mod cluster;
pub mod kahler;
pub mod rootsys;
pub mod symlaurent;
pub mod whs;
pub mod wps;
pub mod wquiver;
pub mod zlattice;
