use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use super::{MinimalResolution, ResolutionError};
use crate::group::{presentation_digest, Group, PcPresentation};
use crate::linalg::FpVector;

const HEADER: &str = "COHRES v1";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed cache file: {0}")]
    Format(String),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
}

/// Cache file for a presentation and degree bound inside `dir`.
pub fn cache_path(dir: &Path, pres: &PcPresentation, max_degree: usize) -> PathBuf {
    dir.join(format!("{}-N{}.cohres", presentation_digest(pres), max_degree))
}

fn encode(v: &FpVector) -> String {
    match v.words() {
        Some(words) => words.iter().map(|w| format!("{w:016x}")).collect(),
        None => hex::encode(v.entries().iter().map(|&x| x as u8).collect::<Vec<u8>>()),
    }
}

fn decode(p: u32, len: usize, s: &str) -> Result<FpVector, CacheError> {
    let bad = || CacheError::Format(format!("bad row `{s}`"));
    if p == 2 {
        let words = len.div_ceil(64);
        if s.len() != words * 16 {
            return Err(bad());
        }
        let ws = (0..words)
            .map(|i| u64::from_str_radix(&s[i * 16..(i + 1) * 16], 16).map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FpVector::from_words(len, ws))
    } else {
        let bytes = hex::decode(s).map_err(|_| bad())?;
        if bytes.len() != len || bytes.iter().any(|&b| b as u32 >= p) {
            return Err(bad());
        }
        Ok(FpVector::from_entries(p, &bytes.iter().map(|&b| b as u32).collect::<Vec<_>>()))
    }
}

/// Writes the differentials atomically (temporary file, then rename).
pub fn save_resolution(path: &Path, pres: &PcPresentation, res: &MinimalResolution) -> Result<(), CacheError> {
    let mut s = String::new();
    writeln!(s, "{HEADER}").unwrap();
    writeln!(s, "digest {}", presentation_digest(pres)).unwrap();
    writeln!(s, "p {} order {} degree {}", res.prime(), res.group().order(), res.max_degree()).unwrap();
    let betti: Vec<String> = res.hilbert_fragment().iter().map(|b| b.to_string()).collect();
    writeln!(s, "betti {}", betti.join(" ")).unwrap();
    for k in 1..=res.max_degree() {
        writeln!(s, "d {k}").unwrap();
        for v in res.differential(k) {
            writeln!(s, "{}", encode(v)).unwrap();
        }
    }
    let dir = path.parent().unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(s.as_bytes())?;
    tmp.persist(path).map_err(|e| CacheError::Io(e.error))?;
    Ok(())
}

/// Loads a cached resolution. Returns `Ok(None)` when the file belongs to a
/// different presentation; every invariant is rechecked on load.
pub fn load_resolution(
    path: &Path,
    pres: &PcPresentation,
    group: Arc<Group>,
) -> Result<Option<MinimalResolution>, CacheError> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let fmt = |m: &str| CacheError::Format(m.to_string());
    if lines.next() != Some(HEADER) {
        return Err(fmt("missing header"));
    }
    let digest = lines.next().and_then(|l| l.strip_prefix("digest ")).ok_or_else(|| fmt("missing digest"))?;
    if digest != presentation_digest(pres) {
        return Ok(None);
    }
    let meta: Vec<&str> = lines.next().ok_or_else(|| fmt("missing metadata"))?.split_whitespace().collect();
    let num = |i: usize| meta.get(i).and_then(|t| t.parse::<usize>().ok()).ok_or_else(|| fmt("bad metadata"));
    let (p, order, degree) = (num(1)? as u32, num(3)?, num(5)?);
    if p != group.prime() || order != group.order() {
        return Ok(None);
    }
    let betti: Vec<usize> = lines
        .next()
        .and_then(|l| l.strip_prefix("betti "))
        .ok_or_else(|| fmt("missing betti line"))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| fmt("bad betti number")))
        .collect::<Result<_, _>>()?;
    if betti.len() != degree + 1 {
        return Err(fmt("betti line has the wrong length"));
    }
    let mut differentials = vec![Vec::new()];
    for k in 1..=degree {
        if lines.next() != Some(format!("d {k}").as_str()) {
            return Err(fmt("missing degree marker"));
        }
        let len = betti[k - 1] * order;
        let rows = (0..betti[k])
            .map(|_| decode(p, len, lines.next().ok_or_else(|| fmt("truncated file"))?))
            .collect::<Result<Vec<_>, _>>()?;
        differentials.push(rows);
    }
    Ok(Some(MinimalResolution::from_differentials(group, differentials)?))
}
