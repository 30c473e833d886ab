//! High-precision periods, period matrices and the endomorphisms they reveal.

mod cmatrix;
mod hp;
mod matrix;
mod qm;
mod recognize;
mod special;
mod tau;

pub use cmatrix::CMatrix;
pub use hp::{decimal, HPComplex, Precision};
pub use matrix::{
    endomorphism_relations_check, period_matrix, EndomorphismReport, LatticeAction, MatrixShape, PeriodMatrix, PeriodRow,
    RelationCheck,
};
pub use special::{beta_fn, gamma_fn, hyp2f1};
pub use tau::{beta_quotient, check_lambda, check_period_family, gamma_ratio_check, period_tau, GammaRatioCheck, PeriodPair, PeriodSet};
pub use recognize::{recognize_algebraic, AlgebraicForm, AlgebraicGuess, RecognitionBounds};
pub use qm::{qm_check, PrimeEvidence, QmReport, QmVerdict};
