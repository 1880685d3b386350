//! File formats, report emission and the subcommands behind the `hypercx`
//! binary. Commands return a [`Report`] whose status is the process exit
//! code; errors map to codes through [`CliError::exit_status`].

pub mod commands;
pub mod formats;
pub mod report;

use hypercx_core::graph_products::GpError;
use hypercx_core::{ComplexError, GraphError, HomologyError, QmError};
use hypercx_harness::HarnessError;
use thiserror::Error;

pub use report::{ExitStatus, Report, Section};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Qm(#[from] QmError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Gp(#[from] GpError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
}

fn graph_guard(e: &GraphError) -> bool {
    matches!(e, GraphError::SizeGuard { .. })
}

fn qm_guard(e: &QmError) -> bool {
    matches!(e, QmError::Graph(g) if graph_guard(g))
}

impl CliError {
    pub fn is_guard(&self) -> bool {
        match self {
            CliError::Homology(HomologyError::FaceGuard { .. }) => true,
            CliError::Harness(HarnessError::Homology(HomologyError::FaceGuard { .. })) => true,
            CliError::Gp(GpError::SizeGuard { .. }) => true,
            CliError::Gp(GpError::Qm(e)) | CliError::Qm(e) | CliError::Complex(ComplexError::Qm(e)) => qm_guard(e),
            CliError::Gp(GpError::Graph(e)) | CliError::Graph(e) | CliError::Complex(ComplexError::Graph(e)) => graph_guard(e),
            _ => false,
        }
    }

    pub fn exit_status(&self) -> ExitStatus {
        if self.is_guard() {
            ExitStatus::GuardExceeded
        } else {
            ExitStatus::Usage
        }
    }
}
