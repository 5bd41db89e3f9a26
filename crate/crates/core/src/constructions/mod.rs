//! Explicit generator families.

mod chen_skriganov;
mod davenport;
mod higher_order;
mod interlace;
mod niederreiter;
mod trim;
mod van_der_corput;

pub use chen_skriganov::{cs_matrices, faure_matrices, CsParams};
pub use davenport::{davenport_symmetrized, ContinuedFraction};
pub use higher_order::{dp_finite_pointset, dp_net, dp_net_matrices, dp_sequence, dp_untrimmed_pointset};
pub use interlace::{interlace_matrices, interlace_point, interlace_points, InterlaceSpec, Interlaced};
pub use niederreiter::{
    niederreiter_matrix_entries, niederreiter_net_matrices, niederreiter_t_bound, NiedParams, Niederreiter,
};
pub use trim::{arbitrary_n_trim, first_coordinate_is_zero_m_one_net};
pub use van_der_corput::{van_der_corput, VanDerCorput};
