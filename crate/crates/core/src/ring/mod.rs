//! Exact scalars, the metric and tensor index bookkeeping.

pub mod metric;
pub mod scalar;

pub use metric::{
    congruence_diagonalize, epsilon_component, index_move, BadIndexPosition, Direction, Linear,
    Mat4, Metric, MetricError,
};
pub use scalar::{gauss, q, qf, Gauss, Scalar, Q};
