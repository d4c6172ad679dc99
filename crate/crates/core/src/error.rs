use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed rational literal `{0}` (expected `p` or `p/q`)")]
    BadRational(String),

    #[error("classes belong to different ring models ({left} vs {right})")]
    RingMismatch { left: String, right: String },

    #[error("exp_class requires a strictly positive-degree class (degree-0 part is nonzero)")]
    NonzeroConstantTerm,

    #[error("unknown genus series `{0}` (expected a-hat, todd or l)")]
    UnknownGenus(String),

    #[error("genus series `{name}` expanded to order {have} but order {need} is required")]
    InsufficientOrder { name: String, have: usize, need: usize },

    #[error("operation requires {expected}-mode characteristic data, got {got}")]
    CharModeMismatch { expected: &'static str, got: &'static str },

    #[error("{0} requires an even (L-type) genus series when evaluated on Pontryagin data")]
    OddSeriesOnPontryagin(String),

    #[error("manifold document invalid: {0}")]
    Schema(String),

    #[error("product ring basis would have {0} monomials, above the configured cap of {1}")]
    BasisOverflow(usize, usize),

    #[error("twist root order N must be >= 1")]
    ZeroRootOrder,

    #[error("model `{0}` is not complex; this formula needs complex tangent data")]
    NotComplex(String),

    #[error("Toeplitz cutoff K={k} too small: need K >= {need} for bandwidth {bandwidth}")]
    CutoffTooSmall { k: usize, need: usize, bandwidth: usize },

    #[error("trace window W={w} too large: need W <= {max} for K={k} and combined bandwidth {bandwidth}")]
    WindowTooLarge { w: usize, max: usize, k: usize, bandwidth: usize },

    #[error("symbol failed the ellipticity certificate: min |det a| = {min_det:.3e} after {depth} refinements")]
    NotElliptic { min_det: f64, depth: u32 },

    #[error("ellipticity lost along the homotopy at t = {t}")]
    PathNotElliptic { t: f64 },

    #[error("winding grid refinement hit the depth cap without certifying the argument track")]
    WindingUncertified,

    #[error("symbol sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("exact parametrix is only available for single-monomial symbols; this symbol has {0} Fourier modes")]
    NotMonomial(usize),

    #[error("coefficient matrix at frequency {0} is singular")]
    SingularCoefficient(i64),

    #[error("malformed symbol expression `{expr}`: {reason}")]
    BadSymbol { expr: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
