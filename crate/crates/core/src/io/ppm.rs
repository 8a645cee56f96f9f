//! Binary portable pixmaps of kymographs.

use crate::error::{Error, Result};
use crate::experiments::Kymograph;
use image::codecs::pnm::{PnmDecoder, PnmEncoder, PnmSubtype, SampleEncoding};
use image::{ExtendedColorType, ImageDecoder, ImageEncoder};
use std::io::Write;
use std::path::Path;

fn to_byte(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0).round() as u8
}

/// Interleaved RGB bytes: red = species 2, green = species 1, blue = 0.
pub fn kymograph_rgb(k: &Kymograph) -> Vec<u8> {
    let mut out = Vec::with_capacity(3 * k.red.len());
    for (r, g) in k.red.iter().zip(&k.green) {
        out.extend_from_slice(&[to_byte(*r), to_byte(*g), 0]);
    }
    out
}

pub fn write_ppm<W: Write>(out: W, k: &Kymograph) -> Result<()> {
    let (w, h) = dims(k)?;
    PnmEncoder::new(out)
        .with_subtype(PnmSubtype::Pixmap(SampleEncoding::Binary))
        .write_image(&kymograph_rgb(k), w, h, ExtendedColorType::Rgb8)
        .map_err(|e| Error::InvalidProfile(format!("ppm: {e}")))
}

fn dims(k: &Kymograph) -> Result<(u32, u32)> {
    let conv = |v: usize| u32::try_from(v).map_err(|_| Error::InvalidProfile("kymograph too large".into()));
    Ok((conv(k.cols)?, conv(k.rows)?))
}

pub fn write_ppm_file(path: &Path, k: &Kymograph) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    write_ppm(&mut w, k).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

/// Decoded pixmap: `(width, height, rgb bytes)`.
pub fn read_ppm(bytes: &[u8]) -> Result<(u32, u32, Vec<u8>)> {
    let err = |e: image::ImageError| Error::InvalidProfile(format!("ppm: {e}"));
    let dec = PnmDecoder::new(bytes).map_err(err)?;
    let (w, h) = dec.dimensions();
    let mut buf = vec![0u8; dec.total_bytes() as usize];
    dec.read_image(&mut buf).map_err(err)?;
    Ok((w, h, buf))
}
