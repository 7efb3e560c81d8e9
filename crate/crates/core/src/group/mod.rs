//! Free-group words, the involution κ, and the quotient backends realizing `Ψ_N : I* -> F_d/N`.

mod ball;
mod letter;
mod quotient;
mod word;

pub use ball::{Ball, OUTSIDE};
pub use letter::Letter;
pub use quotient::{
    FiniteGroup, FreeAbelianGroup, FreeQuotientGroup, GroupElem, QuotientGroup, QuotientSpec,
    DEFAULT_GROUP_ORDER_CAP,
};
pub use word::{concat_reduce, is_admissible, kappa, reduce, ReducedWord};
