//! Explicit width-bounded programs for the function families.

mod counters;
mod eqs;
mod fingerprint;
mod notpal;
mod primes;
mod quantum;


pub use counters::{build_det_mod, build_det_partialmod, counter};
pub use eqs::build_det_eqs;
pub use fingerprint::{
    build_nobdd_noteqs_fingerprint, build_nobdd_noto_fingerprint, noteqs_basis, noteqs_width_bound,
};
pub use notpal::build_det_notpal;
pub use primes::{primes_for_fingerprint, PrimeBasis};
pub use quantum::{build_quantum_nondet_noto, build_quantum_partialmod, noto_cutoff, noto_mode, rotation};
