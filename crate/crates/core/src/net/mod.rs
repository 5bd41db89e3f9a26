//! Digital nets and sequences: point generation from generating matrices,
//! t-value and elementary-interval checks, dual spaces, Walsh functions.

mod digits;
mod dual;
mod matrices;
mod points;
mod tvalue;
mod walsh;

pub use digits::{digit_vector_of_index, Coord, DigitVector};
pub(crate) use digits::digits_for_count;
pub use dual::{dual_space, DualSpace};
pub use matrices::{GeneratingMatrixSet, SequenceMatrices};
pub use points::{generate_net_points, generate_sequence_points, PointSet, Provenance};
pub use tvalue::{compute_t_value, geometric_net_check, is_tms_net};
pub use walsh::{char_property_sum, walsh_eval, walsh_exponent};
