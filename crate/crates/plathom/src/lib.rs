//! Homology of singular plat diagrams.

pub mod chain;
pub mod cycles;
pub mod diagram;
pub mod linalg;
pub mod rational;
pub mod homology;
pub mod khovanov;
pub mod sl1;
pub mod strands;

#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}
#[doc = include_str!("../../../book/src/diagrams.md")]
mod book_diagrams {}
#[doc = include_str!("../../../book/src/homology.md")]
mod book_homology {}
#[doc = include_str!("../../../book/src/checks.md")]
mod book_checks {}
#[doc = include_str!("../../../book/src/strands.md")]
mod book_strands {}
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
