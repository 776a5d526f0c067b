//! Resolution dual graphs and the invariants read off them.

mod blowup;
mod dual;
mod synthesis;

pub use blowup::{blowup_arrow_point, blowup_edge, blowup_free_point};
pub use dual::{
    acampo_zeta, alexander_polynomial, check_multiplicities, dead_end_totals, essential_points, euler_smooth_parts,
    multivariable_product, solve_multiplicities, Alexander, Arrow, DualGraph, GraphSpec, MultiplicityTable, Vertex,
};
pub use synthesis::{graph_from_char_exponents, resolve_branch};
