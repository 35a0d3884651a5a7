//! Surface pencils through D-type special curves in the Galilean space G3.

pub mod expr;
pub mod g3;
pub mod curve;
pub mod pencil;
pub mod verify;
pub mod io;
