use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("kernel evaluated at its singularity (x = 0)")]
    KernelSingularity,

    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    #[error("degenerate parametrization: Jacobian vanishes at {param:?} on patch {patch}")]
    DegenerateParametrization { patch: usize, param: [f64; 2] },

    #[error("point does not lie on the carrier set")]
    OffCarrier,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("scene error: {0}")]
    Scene(String),

    #[error("no data: {0}")]
    NoData(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
