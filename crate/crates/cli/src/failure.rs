use std::fmt;

use ncfactor::error::{ClosureError, DivisorError, GraphError, HasseError, LabelError, LinalgError, PolyError, RootError};
use ncfactor::io::IoError;
use ncfactor::verify::VerifyError;

/// A command that could not produce a verdict.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or input files: exit 2.
    Input(String),
    /// A singular matrix or an inconsistent numeric invariant: exit 3.
    Numeric(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }

    pub fn input(msg: impl fmt::Display) -> Self {
        Failure::Input(msg.to_string())
    }

    fn classify(numeric: bool, msg: impl fmt::Display) -> Self {
        if numeric {
            Failure::Numeric(msg.to_string())
        } else {
            Failure::Input(msg.to_string())
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Numeric(m) => f.write_str(m),
        }
    }
}

fn linalg_numeric(e: &LinalgError) -> bool {
    matches!(e, LinalgError::Singular)
}

fn root_numeric(e: &RootError) -> bool {
    match e {
        RootError::SingularVandermonde(_)
        | RootError::SingularQuasidet(_)
        | RootError::OrderingDependence(_)
        | RootError::TableInvariant(_)
        | RootError::SamplingFailed(_) => true,
        RootError::Linalg(l) => linalg_numeric(l),
        _ => false,
    }
}

fn label_numeric(e: &LabelError) -> bool {
    matches!(e, LabelError::SingularDifference | LabelError::Blocked)
}

fn divisor_numeric(e: &DivisorError) -> bool {
    matches!(e, DivisorError::Invariant(_))
}

impl From<RootError> for Failure {
    fn from(e: RootError) -> Self {
        Failure::classify(root_numeric(&e), e)
    }
}

impl From<LabelError> for Failure {
    fn from(e: LabelError) -> Self {
        Failure::classify(label_numeric(&e), e)
    }
}

impl From<DivisorError> for Failure {
    fn from(e: DivisorError) -> Self {
        Failure::classify(divisor_numeric(&e), e)
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let numeric = match &e {
            IoError::Root(r) => root_numeric(r),
            IoError::Label(l) => label_numeric(l),
            IoError::Linalg(l) => linalg_numeric(l),
            _ => false,
        };
        Failure::classify(numeric, e)
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        let numeric = match &e {
            VerifyError::Root(r) => root_numeric(r),
            VerifyError::Label(l) => label_numeric(l),
            VerifyError::Divisor(d) => divisor_numeric(d),
            VerifyError::Poly(_) => true,
            _ => false,
        };
        Failure::classify(numeric, e)
    }
}

macro_rules! input_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::input(e)
            }
        }
    )*};
}

input_errors!(GraphError, HasseError, ClosureError, PolyError, std::io::Error);
