//! Core model for class constrained scheduling: every machine may process
//! jobs of at most a fixed number of classes.

pub mod bounds;
pub mod error;
pub mod format;
pub mod greedy;
pub mod instance;
pub mod rational;
pub mod schedule;
pub mod stream;

pub use bounds::{lower_bound, Bounds};
pub use error::CoreError;
pub use format::{parse_instance, write_instance};
pub use greedy::{bin_loads, lpt, round_robin, Bins, GreedyError};
pub use instance::{class_loads, ClassLoad, Instance, Variant};
pub use rational::Rational;
pub use stream::JobStream;
pub use schedule::{
    CompactSchedule, NonPreemptiveSchedule, Piece, PreemptiveSchedule, Schedule,
    SplittableSchedule, TimedPiece, Verdict, Violation,
};
