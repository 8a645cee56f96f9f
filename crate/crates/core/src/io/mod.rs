//! Configuration files, CSV tables and kymograph images.

mod config;
mod ppm;
mod tables;

pub use config::{
    load_config, parse_config, OutputConfig, OutputFormat, RunConfig, DEFAULT_LENGTH,
    DEFAULT_NX, DEFAULT_SNAPSHOT_STRIDE, DEFAULT_T_END,
};
pub use ppm::{kymograph_rgb, read_ppm, write_ppm, write_ppm_file};
pub use tables::{
    bifurcation_rows, dispersion_rows, dispersion_rows_for, format_f64, format_opt, g_curve_rows,
    profile_rows, read_csv_file, read_records, snapshot_rows, track_rows, write_csv_file,
    write_records, BifurcationRow, DispersionRow, GCurveRow, ProfileRow, Record, SnapshotRow,
    TrackRow,
};
