//! Sum-product bounds over prime fields.

mod construction;
mod falpha;
mod gauss;
mod intersect;
mod margin;
mod search;

pub use construction::{
    construct_extremal, polya_vinogradov_report, ConstructionParams, ConstructionReport, PolyaVinogradovReport,
};
pub use falpha::{
    crossing_ceil, ell_value, f_alpha, f_alpha_bruteforce, parse_rational, ratio_to_f64, small_alpha_asymptote,
    Branch, ExactInt, ThresholdProfile,
};
pub use gauss::gauss_orthogonality;
pub use intersect::{intersect_estimate, IntersectReport};
pub use margin::{theorem_main_margin, MarginReport, MarginRow};
pub use search::{
    exhaustive_search, lex_cmp, structured_search, SearchConfig, SearchMode, SearchRecord, DEFAULT_EXHAUSTIVE_LIMIT,
    MAX_EXHAUSTIVE_LIMIT,
};
