//! Sweep checkpoint files.
//!
//! Little-endian binary layout, version 1:
//!
//! ```text
//! magic        8 bytes   "PFTCCKPT"
//! version      u32       1
//! hash_len     u32       length of the grid hash (64)
//! hash         bytes     lowercase hex SHA-256 of the grid
//! cell_count   u32
//! per cell, in grid order:
//!   completed  u64       realizations 0..completed already folded
//!   if completed > 0:
//!     n        u32
//!     period   f64
//!     len      u64       number of recorded times
//!     times    len x u64
//!     has_qfi  u8
//!     channels magnetization, entanglement, coherence[, qfi],
//!              each len x (count u64, mean f64, m2 f64)
//!     lifetimes   completed x (tag u8: 0 reached / 1 capped, value u64)
//!     peak ratios completed x f64
//! ```
//!
//! Files are replaced atomically (write to a sibling, then rename).

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::observables::{EnsembleAccumulator, Lifetime, Welford};

pub const CHECKPOINT_MAGIC: &[u8; 8] = b"PFTCCKPT";
pub const CHECKPOINT_VERSION: u32 = 1;

/// Progress of a sweep: per cell, the accumulated prefix of realizations.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub grid_hash: String,
    pub cells: Vec<Option<EnsembleAccumulator>>,
}

impl Checkpoint {
    pub fn new(grid_hash: String, cell_count: usize) -> Self {
        Self { grid_hash, cells: vec![None; cell_count] }
    }

    pub fn completed(&self, cell: usize) -> u64 {
        self.cells[cell].as_ref().map_or(0, EnsembleAccumulator::count)
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut w = Writer(Vec::new());
        w.0.extend_from_slice(CHECKPOINT_MAGIC);
        w.u32(CHECKPOINT_VERSION);
        w.u32(self.grid_hash.len() as u32);
        w.0.extend_from_slice(self.grid_hash.as_bytes());
        w.u32(self.cells.len() as u32);
        for cell in &self.cells {
            match cell {
                Some(acc) if acc.count() > 0 => {
                    w.u64(acc.count());
                    encode_accumulator(&mut w, acc);
                }
                _ => w.u64(0),
            }
        }
        w.0
    }

    pub fn decode(bytes: &[u8], path: &Path) -> Result<Self> {
        let mut r = Reader { bytes, pos: 0, path };
        if r.take(8)? != CHECKPOINT_MAGIC {
            return Err(r.error("bad magic"));
        }
        let version = r.u32()?;
        if version != CHECKPOINT_VERSION {
            return Err(r.error(&format!("unsupported version {version}")));
        }
        let hash_len = r.u32()? as usize;
        let grid_hash = String::from_utf8(r.take(hash_len)?.to_vec()).map_err(|_| r.error("hash is not utf-8"))?;
        let cell_count = r.u32()? as usize;
        let mut cells = Vec::with_capacity(cell_count);
        for _ in 0..cell_count {
            let completed = r.u64()?;
            cells.push(if completed == 0 { None } else { Some(decode_accumulator(&mut r, completed)?) });
        }
        if r.pos != bytes.len() {
            return Err(r.error("trailing bytes"));
        }
        Ok(Self { grid_hash, cells })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        fs::write(&tmp, self.encode())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let bytes = fs::read(path)?;
        Self::decode(&bytes, path)
    }
}

fn encode_accumulator(w: &mut Writer, acc: &EnsembleAccumulator) {
    w.u32(acc.n as u32);
    w.f64(acc.period);
    w.u64(acc.times.len() as u64);
    acc.times.iter().for_each(|&t| w.u64(t));
    w.0.push(acc.qfi.is_some() as u8);
    let channels = [&acc.magnetization, &acc.entanglement, &acc.coherence].into_iter().chain(acc.qfi.as_ref());
    for channel in channels {
        for cell in channel {
            w.u64(cell.count);
            w.f64(cell.mean);
            w.f64(cell.m2);
        }
    }
    for lt in &acc.realization_lifetimes {
        let (tag, value) = match *lt {
            Lifetime::Reached(t) => (0u8, t),
            Lifetime::ExceededCap(t) => (1u8, t),
        };
        w.0.push(tag);
        w.u64(value);
    }
    acc.realization_peak_qfi_ratio.iter().for_each(|&x| w.f64(x));
}

fn decode_accumulator(r: &mut Reader, completed: u64) -> Result<EnsembleAccumulator> {
    let n = r.u32()? as usize;
    let period = r.f64()?;
    let len = r.u64()? as usize;
    let times = (0..len).map(|_| r.u64()).collect::<Result<Vec<_>>>()?;
    let has_qfi = match r.take(1)?[0] {
        0 => false,
        1 => true,
        _ => return Err(r.error("bad qfi flag")),
    };
    let channel = |r: &mut Reader| -> Result<Vec<Welford>> {
        (0..len).map(|_| Ok(Welford { count: r.u64()?, mean: r.f64()?, m2: r.f64()? })).collect()
    };
    let magnetization = channel(r)?;
    let entanglement = channel(r)?;
    let coherence = channel(r)?;
    let qfi = if has_qfi { Some(channel(r)?) } else { None };
    let realization_lifetimes = (0..completed)
        .map(|_| {
            let tag = r.take(1)?[0];
            let value = r.u64()?;
            match tag {
                0 => Ok(Lifetime::Reached(value)),
                1 => Ok(Lifetime::ExceededCap(value)),
                _ => Err(r.error("bad lifetime tag")),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let realization_peak_qfi_ratio = (0..completed).map(|_| r.f64()).collect::<Result<Vec<_>>>()?;
    Ok(EnsembleAccumulator {
        n,
        period,
        times,
        magnetization,
        entanglement,
        coherence,
        qfi,
        realization_lifetimes,
        realization_peak_qfi_ratio,
    })
}

struct Writer(Vec<u8>);

impl Writer {
    fn u32(&mut self, v: u32) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }

    fn u64(&mut self, v: u64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }

    fn f64(&mut self, v: f64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
    path: &'a Path,
}

impl<'a> Reader<'a> {
    fn error(&self, reason: &str) -> Error {
        Error::CheckpointFormat { path: self.path.to_path_buf(), reason: format!("{reason} at byte {}", self.pos) }
    }

    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.bytes.len()).ok_or_else(|| self.error("truncated"))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}
