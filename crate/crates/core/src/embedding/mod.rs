//! Whole-graph embedding: each graph becomes a document of rooted-subtree
//! label tokens, and a document vector is trained against the token
//! vocabulary with negative sampling.

mod train;
mod wl;

pub use train::{
    pair_loss_and_grad, train, train_with_loss, EmbeddingConfig, EmbeddingError, EmbeddingMatrix,
};
pub use wl::{wl_document, WlDocument};
