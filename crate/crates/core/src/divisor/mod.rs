//! Formal divisor relations: symbols `Z(m, μ)` and `ω`, Borcherds relations,
//! pullbacks along `V → V ⊕ Λ`, the embedding trick and the modularity pairing.

mod expr;
mod relations;

pub use expr::{DivisorExpr, Symbol};
pub use relations::{
    borcherds_relation, embedding_trick, modularity_pairing, pullback, relation_ideal, split_form, symbol_values,
    EmbeddingData, PairingValue, RelationIdeal, RepresentationNumbers,
};
