//! Exact Chen–Ruan cohomology of the moduli stacks of stable genus-one
//! pointed curves.
//!
//! Everything here is `no_std` (with `alloc`) and uses exact rational
//! arithmetic. The layers are:
//!
//! * [`rational`], [`partition`], [`poly`], [`series`]: arithmetic and
//!   combinatorics.
//! * [`genus0`]: Betti numbers of genus-zero moduli spaces by point counting
//!   over stable trees.
//! * [`automorphism`], [`sector`], [`generating`], [`divisor`]: the twisted
//!   sectors, their ages and dimensions, and the generating-series identities.
//! * [`inertia2`]: double sectors and excess intersection bundles.
//! * [`crring`], [`presentation`], [`corollary`]: the orbifold product.
#![no_std]

extern crate alloc;

pub mod automorphism;
pub mod corollary;
pub mod crring;
pub mod divisor;
pub mod error;
pub mod generating;
pub mod genus0;
pub mod golden;
pub mod inertia2;
pub mod partition;
pub mod poly;
pub mod presentation;
pub mod rational;
pub mod sector;
pub mod series;

pub use automorphism::Automorphism;
pub use error::{Error, Result};
pub use partition::Partition;
pub use poly::Poly;
pub use rational::Rational;
pub use sector::{BaseType, Sector, Support};
pub use series::TruncatedSeries;
