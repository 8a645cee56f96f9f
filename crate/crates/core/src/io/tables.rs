//! CSV tables: comma separated, header row, LF line endings, floats in
//! shortest round-trip exponent form, empty cells for missing values.

use crate::analysis::{admissible_set, big_h, g_value, Admissibility, Profiles};
use crate::error::{Error, Result};
use crate::experiments::{Regime, SweepResult, TrackRecord};
use crate::params::{PhysicalParams, Species};
use crate::solver::{Grid1D, SimState};
use std::io::{Read, Write};
use std::path::Path;

/// One CSV row type with a fixed header.
pub trait Record: Sized {
    const HEADER: &'static [&'static str];

    fn fields(&self) -> Vec<String>;

    fn parse(fields: &[&str]) -> Result<Self>;
}

pub fn format_f64(v: f64) -> String {
    format!("{v:e}")
}

pub fn format_opt(v: Option<f64>) -> String {
    v.map(format_f64).unwrap_or_default()
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidProfile(format!("`{s}` is not a number")))
}

fn parse_opt(s: &str) -> Result<Option<f64>> {
    if s.trim().is_empty() {
        Ok(None)
    } else {
        parse_f64(s).map(Some)
    }
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::InvalidProfile(format!("csv: {e}"))
}

pub fn write_records<W: Write, T: Record>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(T::HEADER).map_err(csv_err)?;
    for row in rows {
        w.write_record(row.fields()).map_err(csv_err)?;
    }
    w.flush().map_err(csv_err)
}

pub fn read_records<R: Read, T: Record>(input: R) -> Result<Vec<T>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = r.headers().map_err(csv_err)?;
    if !header.iter().eq(T::HEADER.iter().copied()) {
        return Err(Error::InvalidProfile(format!(
            "header {:?} does not match {:?}",
            header.iter().collect::<Vec<_>>(),
            T::HEADER
        )));
    }
    r.records()
        .map(|rec| {
            let rec = rec.map_err(csv_err)?;
            T::parse(&rec.iter().collect::<Vec<_>>())
        })
        .collect()
}

pub fn write_csv_file<T: Record>(path: &Path, rows: &[T]) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_records(std::io::BufWriter::new(file), rows).map_err(|e| Error::io(path, e))
}

pub fn read_csv_file<T: Record>(path: &Path) -> Result<Vec<T>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_records(std::io::BufReader::new(file)).map_err(|e| Error::io(path, e))
}

macro_rules! numeric_record {
    ($(#[$meta:meta])* $name:ident { $($field:ident => $col:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq)]
        pub struct $name {
            $(pub $field: f64,)+
        }

        impl Record for $name {
            const HEADER: &'static [&'static str] = &[$($col),+];

            fn fields(&self) -> Vec<String> {
                vec![$(format_f64(self.$field)),+]
            }

            fn parse(fields: &[&str]) -> Result<Self> {
                let mut it = fields.iter();
                let row = $name {
                    $($field: parse_f64(it.next().ok_or_else(|| short_row(Self::HEADER))?)?,)+
                };
                Ok(row)
            }
        }
    };
}

fn short_row(header: &[&str]) -> Error {
    Error::InvalidProfile(format!("row has fewer than {} columns", header.len()))
}

numeric_record!(
    /// One sample of `G` over the admissible set.
    GCurveRow { sigma => "sigma", g => "G" }
);

numeric_record!(
    /// Analytic profiles in the moving frame.
    ProfileRow { z => "z", rho1 => "rho1", rho2 => "rho2", s => "S" }
);

numeric_record!(
    /// One cell of one snapshot.
    SnapshotRow { t => "t", x => "x", rho1 => "rho1", rho2 => "rho2", s => "S", n => "N" }
);

/// Speed-relation terms at one candidate speed. `H` and `G` are empty where
/// undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionRow {
    pub sigma_candidate: f64,
    pub g1: f64,
    pub g2: f64,
    pub h: Option<f64>,
    pub g: Option<f64>,
}

impl Record for DispersionRow {
    const HEADER: &'static [&'static str] = &["sigma_candidate", "g1", "g2", "H", "G"];

    fn fields(&self) -> Vec<String> {
        vec![
            format_f64(self.sigma_candidate),
            format_f64(self.g1),
            format_f64(self.g2),
            format_opt(self.h),
            format_opt(self.g),
        ]
    }

    fn parse(f: &[&str]) -> Result<Self> {
        if f.len() < 5 {
            return Err(short_row(Self::HEADER));
        }
        Ok(Self {
            sigma_candidate: parse_f64(f[0])?,
            g1: parse_f64(f[1])?,
            g2: parse_f64(f[2])?,
            h: parse_opt(f[3])?,
            g: parse_opt(f[4])?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackRow {
    pub t: f64,
    pub species: Species,
    pub x_peak: f64,
    pub peak_height: f64,
}

impl Record for TrackRow {
    const HEADER: &'static [&'static str] = &["t", "species", "x_peak", "peak_height"];

    fn fields(&self) -> Vec<String> {
        vec![
            format_f64(self.t),
            self.species.label().to_string(),
            format_f64(self.x_peak),
            format_f64(self.peak_height),
        ]
    }

    fn parse(f: &[&str]) -> Result<Self> {
        if f.len() < 4 {
            return Err(short_row(Self::HEADER));
        }
        let species = match f[1].trim() {
            "1" => Species::One,
            "2" => Species::Two,
            other => return Err(Error::InvalidProfile(format!("unknown species `{other}`"))),
        };
        Ok(Self {
            t: parse_f64(f[0])?,
            species,
            x_peak: parse_f64(f[2])?,
            peak_height: parse_f64(f[3])?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BifurcationRow {
    pub phi_red: f64,
    pub speed_slow: Option<f64>,
    pub speed_fast: Option<f64>,
    pub regime: Regime,
    pub sigma_analytic: Option<f64>,
    pub phi_star: Option<f64>,
}

impl Record for BifurcationRow {
    const HEADER: &'static [&'static str] = &[
        "phi_red",
        "speed_slow",
        "speed_fast",
        "regime",
        "sigma_analytic",
        "phi_star",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            format_f64(self.phi_red),
            format_opt(self.speed_slow),
            format_opt(self.speed_fast),
            self.regime.to_string(),
            format_opt(self.sigma_analytic),
            format_opt(self.phi_star),
        ]
    }

    fn parse(f: &[&str]) -> Result<Self> {
        if f.len() < 6 {
            return Err(short_row(Self::HEADER));
        }
        Ok(Self {
            phi_red: parse_f64(f[0])?,
            speed_slow: parse_opt(f[1])?,
            speed_fast: parse_opt(f[2])?,
            regime: f[3].trim().parse().map_err(Error::InvalidProfile)?,
            sigma_analytic: parse_opt(f[4])?,
            phi_star: parse_opt(f[5])?,
        })
    }
}

/// `n` candidate speeds spanning the hull of both admissible intervals,
/// endpoints included.
pub fn dispersion_rows(params: &PhysicalParams, n: usize) -> Result<Vec<DispersionRow>> {
    let adm = admissible_set(params)?;
    Ok(dispersion_rows_for(&adm, n))
}

pub fn dispersion_rows_for(adm: &Admissibility, n: usize) -> Vec<DispersionRow> {
    let p = &adm.params;
    let lo = adm.i1.lo.min(adm.i2.lo);
    let hi = adm.i1.hi.max(adm.i2.hi);
    let n = n.max(2);
    let (s1, s2) = (p.species(Species::One), p.species(Species::Two));
    (0..n)
        .map(|k| {
            let sigma = if k == n - 1 {
                hi
            } else {
                lo + (hi - lo) * k as f64 / (n - 1) as f64
            };
            DispersionRow {
                sigma_candidate: sigma,
                g1: g_value(p, &s1, sigma),
                g2: g_value(p, &s2, sigma),
                h: big_h(p, sigma).ok(),
                g: if adm.hypothesis_holds() { adm.g(sigma).ok() } else { None },
            }
        })
        .collect()
}

pub fn g_curve_rows(adm: &Admissibility, n: usize) -> Vec<GCurveRow> {
    adm.scan(n)
        .into_iter()
        .map(|(sigma, g)| GCurveRow { sigma, g })
        .collect()
}

pub fn profile_rows(p: &Profiles) -> Vec<ProfileRow> {
    (0..p.z.len())
        .map(|k| ProfileRow {
            z: p.z[k],
            rho1: p.rho1[k],
            rho2: p.rho2[k],
            s: p.s[k],
        })
        .collect()
}

pub fn snapshot_rows(grid: &Grid1D, snapshots: &[SimState]) -> Vec<SnapshotRow> {
    let x = grid.centers();
    snapshots
        .iter()
        .flat_map(|s| {
            let x = &x;
            (0..s.nx()).map(move |k| SnapshotRow {
                t: s.t,
                x: x[k],
                rho1: s.rho1[k],
                rho2: s.rho2[k],
                s: s.s[k],
                n: s.n[k],
            })
        })
        .collect()
}

pub fn track_rows(record: &TrackRecord) -> Vec<TrackRow> {
    record
        .tracks
        .iter()
        .flatten()
        .flat_map(|track| {
            track.samples.iter().map(move |s| TrackRow {
                t: s.t,
                species: track.species,
                x_peak: s.x_peak,
                peak_height: s.peak_height,
            })
        })
        .collect()
}

pub fn bifurcation_rows(result: &SweepResult) -> Vec<BifurcationRow> {
    result
        .rows
        .iter()
        .map(|r| BifurcationRow {
            phi_red: r.phi_red,
            speed_slow: r.speed_slow,
            speed_fast: r.speed_fast,
            regime: r.regime,
            sigma_analytic: r.sigma_analytic,
            phi_star: result.phi_star,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip<T: Record + PartialEq + std::fmt::Debug>(rows: &[T]) -> Vec<u8> {
        let mut buf = Vec::new();
        write_records(&mut buf, rows).unwrap();
        let back: Vec<T> = read_records(buf.as_slice()).unwrap();
        assert_eq!(back, rows);
        buf
    }

    #[test]
    fn dispersion_round_trip() {
        let rows = dispersion_rows(&PhysicalParams::table1(), 101).unwrap();
        assert!(rows.iter().any(|r| r.g.is_some()) && rows.iter().any(|r| r.h.is_none()));
        let buf = round_trip(&rows);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("sigma_candidate,g1,g2,H,G\n"));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn awkward_floats_survive() {
        let rows = [SnapshotRow {
            t: 0.1 + 0.2,
            x: 5e-324,
            rho1: f64::MAX,
            rho2: -0.0,
            s: 1.0 / 3.0,
            n: 2.4467470579354796e-4,
        }];
        let back: Vec<SnapshotRow> = read_records(round_trip(&rows).as_slice()).unwrap();
        assert_eq!(back[0].rho2.to_bits(), (-0.0f64).to_bits());
    }

    #[test]
    fn bifurcation_round_trip() {
        let rows = [
            BifurcationRow {
                phi_red: 0.1,
                speed_slow: Some(2.4e-4),
                speed_fast: Some(2.4e-4),
                regime: Regime::Single,
                sigma_analytic: Some(2.5e-4),
                phi_star: Some(0.389),
            },
            BifurcationRow {
                phi_red: 0.9,
                speed_slow: None,
                speed_fast: Some(3.6e-4),
                regime: Regime::Split,
                sigma_analytic: None,
                phi_star: Some(0.389),
            },
        ];
        let text = String::from_utf8(round_trip(&rows)).unwrap();
        assert!(text.contains("9e-1,,3.6e-4,split,,3.89e-1\n"), "{text}");
    }

    #[test]
    fn track_round_trip() {
        round_trip(&[TrackRow {
            t: 10.0,
            species: Species::Two,
            x_peak: 0.25,
            peak_height: 3.0,
        }]);
    }

    #[test]
    fn wrong_header_is_rejected() {
        let r: Result<Vec<GCurveRow>> = read_records("sigma,H\n1,2\n".as_bytes());
        assert!(r.is_err());
    }
}
