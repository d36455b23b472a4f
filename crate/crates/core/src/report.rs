/// Outcome of checking a closed-form identity against a quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub name: String,
    /// The identity's free parameter (`a`, `A`, a time, ...).
    pub parameter: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub relative_error: f64,
    /// Quadrature error estimate attached to whichever side was integrated.
    pub error_estimate: f64,
}

impl IdentityReport {
    pub fn new(name: &str, parameter: f64, lhs: f64, rhs: f64, error_estimate: f64) -> Self {
        let diff = (lhs - rhs).abs();
        let relative_error = if rhs != 0.0 {
            diff / rhs.abs()
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        Self {
            name: name.to_string(),
            parameter,
            lhs,
            rhs,
            relative_error,
            error_estimate,
        }
    }

    pub fn absolute_error(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}
