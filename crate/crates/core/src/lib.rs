pub mod analysis;
pub mod exact;
pub mod field;
pub mod grid;
pub mod initial;
pub mod interp;
pub mod method;
pub mod quadrature;
pub mod real;
pub mod semilag;
pub mod spectral;
pub mod splitting;
pub mod xprec;

mod error;

pub use error::{Error, Result};
pub use exact::{exact_advection, linf_error, Displacement};
pub use field::{project_modal, sample_nodal, Discretization, ModalField, NodalField};
pub use grid::Grid1D;
pub use initial::{IcKind, InitialCondition};
pub use real::Real;
pub use xprec::{DoubleWord, DwComplex};

pub type Grid = Grid1D<f64>;
pub type Nodal = NodalField<f64>;
pub type Modal = ModalField<f64>;
pub type Ic = InitialCondition<f64>;
pub type Dw = DoubleWord<f64>;
