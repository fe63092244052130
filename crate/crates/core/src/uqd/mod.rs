//! Generic data, the algebras `U(𝒟)` and their PBW normal forms.

mod datum;
mod element;
mod expr;
mod hopf;
mod isom;
mod rewrite;

pub use datum::{validate_datum, DatumComponent, GenericDatum, ValidationReport, Violation};
pub use element::{PBWElement, PBWTensor, PbwMonomial};
pub use expr::{parse_expr, Expr};
pub use hopf::{
    coproduct, counit, counit_legs, filtration_degree, gk_dimension, gr_comparison, group_window,
    iterated_coproducts, skew_primitive_space, Coproduct, GkReport, GrSlice, SkewPrimitiveReport, Triple,
    WINDOW_RADIUS,
};
pub use isom::{
    check_isomorphism, datum_isomorphisms, diagram_isomorphisms, relation_exprs, smith_normal_form,
    solve_integer, transported_character, DatumIsomorphism, IsomConfig, IsomorphismSearch, Smith,
};
pub use rewrite::{build_rewrite_system, RewriteConfig, RewriteSystem, Rule, Strategy};
