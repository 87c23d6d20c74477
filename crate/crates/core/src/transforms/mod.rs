//! Linear transforms behind the binding algebras: the fast Walsh-Hadamard
//! transform, the DFT and circular convolution, and the block-diagonal VTB
//! operator.

mod dft;
mod fwht;
pub(crate) mod vtb;

pub use dft::{circ_conv, circ_conv_naive, dft, idft, ComplexVector};
pub use fwht::{fwht, fwht_in_place, is_power_of_two};
pub use vtb::{vtb_operator, BlockDiagonalOperator};
