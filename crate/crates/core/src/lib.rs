pub mod abelian;
pub mod bbcg;
pub mod classifier;
pub mod cli;
pub mod error;
pub mod formats;
pub mod graph_products;
pub mod homology;
pub mod poly_product;
pub mod simplicial;

pub use error::{Error, Result};
