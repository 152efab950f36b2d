//! JSON file formats: map tables, enumeration queries and replay files.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use matsemi_core::maps::MapTable;
use matsemi_core::search::EnumerationQuery;
use matsemi_core::witness::{CornerCertificate, DoublingTrace};
use matsemi_core::{Elem, RingSpec, RingTable};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{AppError, AppResult};

/// On-disk form of a map: `{"dom": spec, "cod": spec, "img": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub dom: RingSpec,
    pub cod: RingSpec,
    pub img: Vec<Elem>,
}

fn spec_of(ring: &RingTable) -> AppResult<RingSpec> {
    ring.label()
        .parse()
        .map_err(|_| AppError::Usage(format!("ring `{}` has no spec form", ring.label())))
}

impl MapFile {
    pub fn from_map(map: &MapTable) -> AppResult<Self> {
        Ok(MapFile { dom: spec_of(map.dom())?, cod: spec_of(map.cod())?, img: map.img().to_vec() })
    }

    pub fn build(&self, cap: usize) -> AppResult<MapTable> {
        let dom = self.dom.build(cap)?;
        let cod = if self.cod == self.dom { dom.clone() } else { self.cod.build(cap)? };
        self.build_with(dom, cod)
    }

    pub fn build_with(&self, dom: Arc<RingTable>, cod: Arc<RingTable>) -> AppResult<MapTable> {
        Ok(MapTable::new(dom, cod, self.img.clone())?)
    }
}

/// Self-contained replay input: the map plus what was derived from it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReplayFile {
    Doubling { map: MapFile, trace: DoublingTrace },
    Corner { map: MapFile, certificate: CornerCertificate },
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> AppResult<T> {
    let text = fs::read_to_string(path).map_err(|source| AppError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| AppError::Json { path: path.into(), source })
}

pub fn load_map(path: &Path, cap: usize) -> AppResult<MapTable> {
    read_json::<MapFile>(path)?.build(cap)
}

pub fn save_map(path: &Path, map: &MapTable) -> AppResult<()> {
    let text = serde_json::to_string(&MapFile::from_map(map)?).expect("map files serialize");
    fs::write(path, text + "\n").map_err(|source| AppError::Io { path: path.into(), source })
}

pub fn load_query(path: &Path) -> AppResult<EnumerationQuery> {
    let q: EnumerationQuery = read_json(path)?;
    q.validate()?;
    Ok(q)
}

/// One compact JSON document per line.
pub fn write_ndjson<T: Serialize>(out: &mut impl Write, items: impl IntoIterator<Item = T>) -> std::io::Result<()> {
    for item in items {
        serde_json::to_writer(&mut *out, &item)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
