//! Group catalog, `.pcp` files, reports and caches.

mod builtins;
mod pcp;

pub use builtins::{builtin, builtin_ids, external_expectation, CatalogEntry, Expected, Fingerprint};
pub use pcp::{load_pcp, parse_pcp, write_pcp, PcpError};

use crate::group::{GroupError, PcGroup, PcPresentation};

#[derive(Debug, Clone, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown group id `{0}`")]
    UnknownId(String),
    #[error("`{id}` failed self-identification: expected {expected:?}, computed {found:?}")]
    FingerprintMismatch { id: String, expected: Fingerprint, found: Fingerprint },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Pcp(#[from] PcpError),
}

/// Resolves a group id: a builtin name, a path to a `.pcp` file, `ID=PATH`
/// (a file identified against the stored data for ID), or a product
/// `A×B×…` of such ids.
pub fn resolve(id: &str) -> Result<CatalogEntry, CatalogError> {
    let parts: Vec<&str> = id.split('×').map(str::trim).collect();
    if parts.len() > 1 {
        let mut entries = parts.iter().map(|p| resolve(p)).collect::<Result<Vec<_>, _>>()?;
        let first = entries.remove(0);
        let mut pres = first.group.presentation.clone();
        let mut fp = first.fingerprint;
        for e in &entries {
            pres = PcPresentation::direct_product(&pres, &e.group.presentation)?;
            fp = Fingerprint::product(&fp, &e.fingerprint);
        }
        let group = PcGroup::new(pres)?;
        let found = Fingerprint::of(&group.group);
        if found != fp {
            return Err(CatalogError::FingerprintMismatch { id: id.to_string(), expected: fp, found });
        }
        let ids: Vec<String> = std::iter::once(first.id).chain(entries.into_iter().map(|e| e.id)).collect();
        return Ok(CatalogEntry { id: ids.join("×"), group, fingerprint: fp, expected: Expected::default() });
    }
    if let Some((name, path)) = id.split_once('=') {
        return identify_as(path.trim(), name.trim());
    }
    if id.ends_with(".pcp") || std::path::Path::new(id).is_file() {
        let group = load_pcp(id)?;
        let fingerprint = Fingerprint::of(&group.group);
        return Ok(CatalogEntry { id: id.to_string(), group, fingerprint, expected: Expected::default() });
    }
    builtin(id)
}

/// Loads a user-supplied presentation and checks it against the stored
/// expectations for `id` (for groups without a built-in presentation).
pub fn identify_as(path: &str, id: &str) -> Result<CatalogEntry, CatalogError> {
    let (fingerprint, expected) = external_expectation(id).ok_or_else(|| CatalogError::UnknownId(id.to_string()))?;
    let group = load_pcp(path)?;
    let found = Fingerprint::of(&group.group);
    if found != fingerprint {
        return Err(CatalogError::FingerprintMismatch { id: id.to_string(), expected: fingerprint, found });
    }
    Ok(CatalogEntry { id: id.to_string(), group, fingerprint, expected })
}
