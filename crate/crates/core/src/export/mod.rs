//! Data formats, embedding and assembly of global surfaces.

pub mod assembly;
pub mod formats;
pub mod grid;
pub mod mesh;

pub use assembly::{plan_assembly, AssemblyPlan, Piece};
pub use formats::{
    read_profile_csv, read_profile_json, write_json, write_profile_csv, ProfileDocument,
};
pub use grid::{parse_grid, GridSpec};
pub use mesh::{build_mesh, embed, EmbeddedPoint, Mesh};
