//! Explicit asymptotic unitary representations from integer-valued 2-cocycles.
//!
//! The library builds, for a handful of concrete finitely generated groups
//! (`Z^2`, a rank-5 three-step nilpotent group, and `Z^2 ⋊ Z` twisted by
//! Arnold's cat map), the family of unitary-valued maps
//!
//! ```text
//! rho_n(g) (basis vector of h-bar)  =  exp(2*pi*i*sigma(g,h)/n) * (basis vector of gh-bar)
//! ```
//!
//! acting on `l^2` of a finite quotient `Q_n`. Each `rho_n` is almost
//! multiplicative in operator norm (the defect decays like `O(1/n)`), yet an
//! exact winding-number pairing — a normalized sum of traces of principal
//! logarithms of relator commutators against a 2-cycle — takes a nonzero
//! integer value on it. Since the same pairing vanishes on everything close to
//! a genuine representation, this certifies that `rho_n` cannot be perturbed
//! to one.
//!
//! Modules:
//! * [`exact`] — arbitrary-precision integer/rational/modular arithmetic and
//!   small integer matrix algebra (Kronecker products, the `S_k` partial
//!   geometric sums, orders of matrices mod `n`).
//! * [`groups`] — the example groups as exponent vectors with polynomial
//!   multiplication, their finite quotients, and quotient maps.
//! * [`homology`] — bar-resolution chains and cochains with exact
//!   coefficients, boundary/coboundary operators, the cochain/chain pairing,
//!   commutator-word 2-cycles, and exhaustive cocycle verification.
//! * [`numerics`] — dense complex matrices: operator norm, principal matrix
//!   logarithm via unitary diagonalization, Kronecker products, and a seeded
//!   harness for the analytic perturbation bounds the certificates rely on.
//! * [`reps`] — the representation families, defect scans, the winding
//!   pairing, and non-perturbability certificates.
//! * [`induced`] — finite central extensions of the `Z^2` quotients, induced
//!   representations of a central character, and the equivalence check
//!   against the cocycle formula.

pub mod exact;
pub mod groups;
pub mod homology;
pub mod induced;
pub mod numerics;
pub mod reps;

pub use exact::{binomial_poly, matrix_order_mod, rational_mod_reduce, s_k, IntMatrix, Rational, Residue};
pub use groups::{finite_quotient, make_catmap, make_nilpotent5, make_z2, GroupDescriptor, GroupElement, QuotientMap};
pub use homology::{
    boundary2, boundary3, coboundary1, coboundary2, hopf_cycle, is_cocycle, pair, sigma_catmap,
    sigma_nilpotent5, sigma_z2, Chain1, Chain2, Chain3, Cochain1, Cochain2,
};
pub use numerics::ComplexMatrix;
pub use reps::{AsymRepSpec, BuiltRep, PairingReport};
