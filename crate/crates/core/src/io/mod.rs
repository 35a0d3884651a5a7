//! JSON configs, figure presets and mesh export.

mod config;
mod mesh;
pub mod presets;

pub use config::{
    load_config, pencil_category, write_config, BuiltinCurve, ConfigError, CurveConfig,
    DirectBlock, GridConfig, MarchingScaleConfig, PencilConfig, ProductBlock, SynthesisBlock,
    VerifyConfig, ISOPARAMETRIC_TOL,
};
pub use mesh::{
    curve_mesh, export_csv, export_obj, fmt_num, sample_grid, write_csv, write_obj, Mesh,
    MeshError,
};
pub use presets::Figure;
