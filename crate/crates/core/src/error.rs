use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("instance has no jobs")]
    NoJobs,
    #[error("instance needs at least one machine")]
    NoMachines,
    #[error("instance needs at least one slot per machine")]
    NoSlots,
    #[error("job {job} has non-positive processing time")]
    NonPositiveTime { job: usize },
    #[error("{times} processing times but {classes} class labels")]
    LengthMismatch { times: usize, classes: usize },
    #[error("{classes} classes cannot fit on {machines} machines with {slots} slots each")]
    NotEnoughSlots {
        classes: usize,
        machines: u64,
        slots: usize,
    },
    #[error("job {job} does not exist")]
    DanglingJob { job: usize },
    #[error("machine {machine} does not exist")]
    DanglingMachine { machine: u64 },
    #[error("not a number: {0:?}")]
    BadNumber(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
