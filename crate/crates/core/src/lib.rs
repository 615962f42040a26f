pub mod poly;
pub mod singularity;
pub mod toric;
pub mod link;
pub mod gallery;
