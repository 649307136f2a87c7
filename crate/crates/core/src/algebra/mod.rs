//! The algebra of permutation-invariant operators on qubits, spanned by the
//! symmetrized Pauli monomials `A_i`.

mod monomial;
mod regular;
mod structure;

pub use monomial::{
    class_size, class_size_f64, enumerate_monomials, monomial_count, AlgebraElement, Coefficient, ComplexElement,
    MonomialIndex, SymmetricOperator,
};
pub use regular::{gse_regular, gse_regular_with, regular_rep, regular_rep_of, RegularRepMatrix, HERMITICITY_TOLERANCE};
pub use structure::{structure_constant, structure_products, StructureTensor};
