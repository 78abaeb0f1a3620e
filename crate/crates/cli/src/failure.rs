use std::fmt;

/// Exit codes: 0 success, 1 a check failed, 2 bad input, 3 a tolerance was
/// not met.
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_TOLERANCE: i32 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<qmeasure::Error> for Failure {
    fn from(e: qmeasure::Error) -> Self {
        let code = match e {
            qmeasure::Error::Quadrature { .. } => EXIT_TOLERANCE,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}
