//! Real continued fractions: expansion, convergents, the classical
//! approximation constant `c(x) = liminf q²|x − p/q|`, and the Markov values
//! at the bottom of its spectrum.

mod constant;
mod convergents;
mod expand;
mod markov;
mod word;

pub use constant::{approx_constant, brute_force_constant, period_lambdas, ApproxConstant, BruteForce};
pub use convergents::ConvergentSeq;
pub use expand::{expand, RealInput};
pub use markov::{markov_numbers, markov_value, markov_word};
pub use word::{CFWord, WordKind};

