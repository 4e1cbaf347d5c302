use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is out of range (need 2 <= p < 2^31)")]
    PrimeOutOfRange(u64),
    #[error("p^k = {p}^{k} does not fit the 126-bit coefficient range")]
    PowerTooLarge { p: u64, k: u32 },
    #[error("exponent k must be at least 1")]
    ZeroExponent,
    #[error("unsupported exponent k = {0}; only k <= 4 is supported")]
    UnsupportedPower(u32),
    #[error("coefficient moduli differ: {0} vs {1}")]
    ModulusMismatch(u128, u128),
    #[error("coefficient {index} ({value}) is not divisible by p = {p}")]
    NotDivisibleByP { index: usize, value: u128, p: u64 },
    #[error("phi^{r} does not divide the given polynomial")]
    NotDivisibleByPhi { r: usize },
    #[error("division by zero in the residue field")]
    ZeroInverse,
    #[error("phi must be monic and irreducible modulo p")]
    BadPhi,
    #[error("precision ell must be at least 1")]
    ZeroPrecision,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("constant polynomials have no nontrivial factorization")]
    ConstantPolynomial,
    #[error("leading coefficient {lc} is divisible by p = {p}; normalize the input first")]
    LeadingCoefficientNotUnit { lc: u128, p: u64 },
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("g and h are not coprime modulo p")]
    NotCoprime,
    #[error("f is not congruent to g*h modulo p")]
    NotAFactorization,
    #[error("the given factor is not a factor of f modulo p")]
    NotAFactorModP,
    #[error("f is not a power of a single irreducible modulo p ({0} distinct factors); decompose it first")]
    NotPrimaryPower(usize),
    #[error("representative roots overlap: {0} and {1}")]
    OverlappingRepresentatives(String, String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("equal-degree splitting failed after {0} attempts")]
    SplittingFailed(usize),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
