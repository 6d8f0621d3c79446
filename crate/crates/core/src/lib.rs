//! Exact evaluation of the binomial sums `S_r(n)` and `S(r,n)`,
//! nonintegrality certificates, and the range experiments built on them.

pub mod error;
pub mod exactnum;
pub mod experiments;
pub mod integrality;
pub mod ntkernel;
pub mod record;

pub use error::{Error, Result};
pub use exactnum::{ExactInteger, ExactRational};
pub use integrality::{Certificate, CertificateKind, Classification, ClassifyBudget, Instance, UndecidedReason};
pub use ntkernel::{Factorization, PrimeRecord};
pub use record::InstanceRecord;
