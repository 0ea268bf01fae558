//! On-disk cache of reduced bases, keyed by a content hash of the inputs.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::{buchberger, GroebnerBasis};
use crate::error::Result;
use crate::multipoly::{parse::parse_poly, MPoly, MonOrder};

#[derive(Clone, Debug)]
pub struct GbCache {
    dir: PathBuf,
}

impl GbCache {
    pub fn new(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(GbCache {
            dir: dir.as_ref().to_path_buf(),
        })
    }

    pub fn key(gens: &[MPoly], order: MonOrder) -> String {
        let mut h = Sha256::new();
        if let Some(g) = gens.first() {
            h.update(g.ring().vars().join(",").as_bytes());
        }
        h.update(format!("{order:?}\n").as_bytes());
        for g in gens {
            h.update(g.to_string().as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }

    /// Computes the basis or loads it from disk.
    pub fn buchberger(&self, gens: &[MPoly], order: MonOrder) -> Result<GroebnerBasis> {
        let path = self.dir.join(format!("{}.gb", Self::key(gens, order)));
        if let Ok(text) = fs::read_to_string(&path) {
            if let Some(gb) = Self::load(&text, gens, order) {
                return Ok(gb);
            }
        }
        let gb = buchberger(gens, order)?;
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, gb.to_text())?;
        fs::rename(&tmp, &path)?;
        Ok(gb)
    }

    fn load(text: &str, gens: &[MPoly], order: MonOrder) -> Option<GroebnerBasis> {
        let base = gens.first()?.ring();
        let ring = if base.order() == order { base.clone() } else { base.with_order(order) };
        let polys: Option<Vec<MPoly>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| parse_poly(&ring, l).ok())
            .collect();
        let original = gens.iter().map(|g| g.reorder(&ring)).collect();
        let gb = GroebnerBasis::from_reduced(ring, polys?, original);
        // a stale or corrupted entry must still generate the input ideal
        let ok = gb
            .original_generators()
            .iter()
            .all(|g| gb.contains(g).unwrap_or(false));
        ok.then_some(gb)
    }
}
