use std::fmt;

/// Which route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Quadrature,
    HypSeries,
    LambdaSeries,
    Agm,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::HypSeries => "hyp-series",
            Method::LambdaSeries => "lambda-series",
            Method::Agm => "agm",
            Method::ClosedForm => "closed-form",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A computed value with the method that produced it and an a-posteriori
/// error estimate (absolute).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub method: Method,
    pub error_estimate: f64,
}

impl EvalResult {
    pub fn new(value: f64, method: Method, error_estimate: f64) -> Self {
        EvalResult { value, method, error_estimate: error_estimate.abs() }
    }

    pub fn exact(value: f64) -> Self {
        EvalResult { value, method: Method::ClosedForm, error_estimate: 0.0 }
    }

    /// Multiply value and error by a constant (exact prefactors).
    pub fn scaled(self, factor: f64) -> Self {
        EvalResult { value: self.value * factor, error_estimate: self.error_estimate * factor.abs(), ..self }
    }

    pub fn relative_error(&self) -> f64 {
        if self.value == 0.0 {
            self.error_estimate
        } else {
            self.error_estimate / self.value.abs()
        }
    }
}
