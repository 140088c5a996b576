use qimem::QiError;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error{}: {message}", field.as_ref().map(|f| format!(" at {f}")).unwrap_or_default())]
    Config { field: Option<String>, message: String },

    #[error("physics-domain error in {context}: {source}")]
    Physics {
        context: String,
        #[source]
        source: QiError,
    },

    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub fn config(field: Option<String>, message: String) -> Self {
        CliError::Config { field, message }
    }

    pub fn physics(context: impl Into<String>) -> impl FnOnce(QiError) -> CliError {
        let context = context.into();
        move |source| CliError::Physics { context, source }
    }

    /// 2 for configuration and I/O problems, 3 for physics-domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Output(_) => 2,
            CliError::Physics { .. } => 3,
        }
    }

    /// One-line JSON record for standard error.
    pub fn to_json(&self) -> String {
        let v = match self {
            CliError::Config { field, message } => json!({
                "error": "config",
                "field": field,
                "message": message,
                "exit_code": self.exit_code(),
            }),
            CliError::Physics { context, source } => json!({
                "error": "physics_domain",
                "context": context,
                "message": source.to_string(),
                "exit_code": self.exit_code(),
            }),
            CliError::Output(message) => json!({
                "error": "output",
                "message": message,
                "exit_code": self.exit_code(),
            }),
        };
        v.to_string()
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
