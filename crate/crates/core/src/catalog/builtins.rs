use serde::Serialize;

use super::pcp::parse_pcp;
use super::CatalogError;
use crate::group::{Group, PcGroup, PcPresentation};

/// Cheap group-theoretic invariants used to identify a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub center_rank: usize,
    pub p_rank: usize,
    pub p_central: bool,
}

impl Fingerprint {
    pub fn of(g: &Group) -> Self {
        Fingerprint {
            order: g.order(),
            center_rank: g.omega1_center().rank(),
            p_rank: g.p_rank(),
            p_central: g.is_p_central(),
        }
    }

    pub fn product(a: &Fingerprint, b: &Fingerprint) -> Self {
        Fingerprint {
            order: a.order * b.order,
            center_rank: a.center_rank + b.center_rank,
            p_rank: a.p_rank + b.p_rank,
            p_central: a.p_central && b.p_central,
        }
    }
}

/// Published invariants for an entry, where known. `None` means not recorded.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub group_type: Option<Vec<u32>>,
    pub e: Option<i64>,
    pub h: Option<i64>,
    pub d0: Option<i64>,
    pub d1: Option<i64>,
    pub e_prime: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub group: PcGroup,
    pub fingerprint: Fingerprint,
    pub expected: Expected,
}

struct Spec {
    names: &'static [&'static str],
    fingerprint: Fingerprint,
    expected: Expected,
    build: fn() -> Result<PcGroup, CatalogError>,
}

fn fp(order: usize, center_rank: usize, p_rank: usize, p_central: bool) -> Fingerprint {
    Fingerprint { order, center_rank, p_rank, p_central }
}

fn pc_central(t: &[u32], e: i64, h: i64) -> Expected {
    Expected { group_type: Some(t.to_vec()), e: Some(e), h: Some(h), d0: Some(e), d1: Some(e + h), e_prime: Some(e) }
}

fn non_pc(t: &[u32], e: i64, e_prime: i64, d0: i64) -> Expected {
    Expected { group_type: Some(t.to_vec()), e: Some(e), h: None, d0: Some(d0), d1: None, e_prime: Some(e_prime) }
}

fn specs() -> Vec<Spec> {
    vec![
        Spec { names: &["Z2", "2#1"], fingerprint: fp(2, 1, 1, true), expected: pc_central(&[1], 0, 0), build: || cyclic(2, 1) },
        Spec { names: &["Z4", "4#2"], fingerprint: fp(4, 1, 1, true), expected: pc_central(&[2], 1, 1), build: || cyclic(2, 2) },
        Spec { names: &["Z8", "8#3"], fingerprint: fp(8, 1, 1, true), expected: pc_central(&[2], 1, 1), build: || cyclic(2, 3) },
        Spec { names: &["Z16", "16#5"], fingerprint: fp(16, 1, 1, true), expected: pc_central(&[2], 1, 1), build: || cyclic(2, 4) },
        Spec { names: &["Z32"], fingerprint: fp(32, 1, 1, true), expected: pc_central(&[2], 1, 1), build: || cyclic(2, 5) },
        Spec { names: &["Z64", "64#11"], fingerprint: fp(64, 1, 1, true), expected: pc_central(&[2], 1, 1), build: || cyclic(2, 6) },
        Spec { names: &["Z2^2"], fingerprint: fp(4, 2, 2, true), expected: pc_central(&[1, 1], 0, 0), build: || elementary(2) },
        Spec { names: &["Z2^3"], fingerprint: fp(8, 3, 3, true), expected: pc_central(&[1, 1, 1], 0, 0), build: || elementary(3) },
        Spec { names: &["Z2^4"], fingerprint: fp(16, 4, 4, true), expected: pc_central(&[1, 1, 1, 1], 0, 0), build: || elementary(4) },
        Spec { names: &["D8", "8#4"], fingerprint: fp(8, 1, 2, false), expected: non_pc(&[2], 1, -1, 0), build: || metacyclic(4, 4 - 1, false) },
        Spec { names: &["D16", "16#12"], fingerprint: fp(16, 1, 2, false), expected: non_pc(&[2], 1, -1, 0), build: || metacyclic(8, 8 - 1, false) },
        Spec { names: &["D32", "32#49"], fingerprint: fp(32, 1, 2, false), expected: non_pc(&[2], 1, -1, 0), build: || metacyclic(16, 16 - 1, false) },
        Spec { names: &["SD16", "16#13"], fingerprint: fp(16, 1, 2, false), expected: non_pc(&[4], 3, 2, 2), build: || metacyclic(8, 4 - 1, false) },
        Spec { names: &["SD32", "32#50"], fingerprint: fp(32, 1, 2, false), expected: non_pc(&[4], 3, 2, 2), build: || metacyclic(16, 8 - 1, false) },
        Spec { names: &["Q8", "8#5"], fingerprint: fp(8, 1, 1, true), expected: pc_central(&[4], 3, 2), build: || metacyclic(4, 4 - 1, true) },
        Spec { names: &["Q16", "16#14"], fingerprint: fp(16, 1, 1, true), expected: pc_central(&[4], 3, 2), build: || metacyclic(8, 8 - 1, true) },
        Spec { names: &["Q32", "32#51"], fingerprint: fp(32, 1, 1, true), expected: pc_central(&[4], 3, 2), build: || metacyclic(16, 16 - 1, true) },
        Spec { names: &["Q64", "64#267"], fingerprint: fp(64, 1, 1, true), expected: pc_central(&[4], 3, 2), build: || metacyclic(32, 32 - 1, true) },
        Spec { names: &["W2", "32#18"], fingerprint: fp(32, 3, 3, true), expected: pc_central(&[2, 2, 2], 3, 1), build: w2 },
        Spec { names: &["64#187", "SU3_4"], fingerprint: fp(64, 2, 2, true), expected: pc_central(&[8, 8], 14, 4), build: unitary_sylow },
        Spec { names: &["64#153", "Sz8"], fingerprint: fp(64, 3, 3, true), expected: pc_central(&[4, 4, 4], 9, 2), build: suzuki_sylow },
    ]
}

/// Fingerprint and invariants of groups the catalog knows but cannot build;
/// a user-supplied presentation must match before it is used under this id.
pub fn external_expectation(id: &str) -> Option<(Fingerprint, Expected)> {
    match id {
        "64#108" => Some((
            fp(64, 2, 3, false),
            Expected { group_type: Some(vec![8, 2]), e: Some(8), h: Some(4), d0: Some(7), d1: None, e_prime: Some(7) },
        )),
        _ => None,
    }
}

/// Names of all built-in entries (first name of each).
pub fn builtin_ids() -> Vec<&'static str> {
    specs().iter().map(|s| s.names[0]).collect()
}

pub fn builtin(id: &str) -> Result<CatalogEntry, CatalogError> {
    let spec = specs()
        .into_iter()
        .find(|s| s.names.contains(&id))
        .ok_or_else(|| CatalogError::UnknownId(id.to_string()))?;
    let group = (spec.build)()?;
    let fingerprint = Fingerprint::of(&group.group);
    if fingerprint != spec.fingerprint {
        return Err(CatalogError::FingerprintMismatch { id: id.to_string(), expected: spec.fingerprint, found: fingerprint });
    }
    Ok(CatalogEntry { id: spec.names[0].to_string(), group, fingerprint, expected: spec.expected })
}

fn from_table(g: &Group) -> Result<PcGroup, CatalogError> {
    let (pres, _) = PcPresentation::from_group(g)?;
    Ok(PcGroup::new(pres)?)
}

fn cyclic(p: u32, k: u32) -> Result<PcGroup, CatalogError> {
    let n = (p as usize).pow(k);
    from_table(&Group::from_elements(p, 0usize, &[1usize], |a, b| (a + b) % n)?)
}

fn elementary(n: usize) -> Result<PcGroup, CatalogError> {
    Ok(PcGroup::new(PcPresentation::elementary_abelian(2, n)?)?)
}

/// ⟨x, y | x^m, y x y⁻¹ = x^r, y² = x^{m/2} if `quaternion` else 1⟩, elements x^i y^j.
fn metacyclic(m: usize, r: usize, quaternion: bool) -> Result<PcGroup, CatalogError> {
    let mul = move |a: &(usize, usize), b: &(usize, usize)| {
        let twist = if a.1 == 1 { r } else { 1 };
        let mut i = (a.0 + twist * b.0) % m;
        let mut j = a.1 + b.1;
        if j == 2 {
            j = 0;
            if quaternion {
                i = (i + m / 2) % m;
            }
        }
        (i, j)
    };
    from_table(&Group::from_elements(2, (0, 0), &[(1, 0), (0, 1)], mul)?)
}

/// a, b with a², b², [b, a] central of order 2 generating a rank-3 center.
fn w2() -> Result<PcGroup, CatalogError> {
    Ok(parse_pcp("p 2\ngens 5\npow 1 = g3\npow 2 = g4\ncomm 2 1 = g5\n")?)
}

/// Multiplication in GF(2^deg) modulo `modulus` (including the top bit).
fn gf_mul(mut a: u32, mut b: u32, deg: u32, modulus: u32) -> u32 {
    let mut r = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & (1 << deg) != 0 {
            a ^= modulus;
        }
    }
    r
}

fn gf_pow(a: u32, k: u32, deg: u32, modulus: u32) -> u32 {
    (0..k).fold(1, |acc, _| gf_mul(acc, a, deg, modulus))
}

/// Sylow 2-subgroup of SU(3,4): (α, β) ∈ F16² with β + β⁴ = α⁵,
/// (α, β)(α', β') = (α + α', β + β' + α·α'⁴).
fn unitary_sylow() -> Result<PcGroup, CatalogError> {
    const M: u32 = 0b10011;
    let frob = |x: u32| gf_pow(x, 4, 4, M);
    let mul = move |a: &(u32, u32), b: &(u32, u32)| (a.0 ^ b.0, a.1 ^ b.1 ^ gf_mul(a.0, frob(b.0), 4, M));
    let mut gens = Vec::new();
    for alpha in 0..16u32 {
        let target = gf_pow(alpha, 5, 4, M);
        if let Some(beta) = (0..16u32).find(|&b| b ^ frob(b) == target) {
            gens.push((alpha, beta));
        }
    }
    for beta in 0..16u32 {
        if beta ^ frob(beta) == 0 {
            gens.push((0, beta));
        }
    }
    from_table(&Group::from_elements(2, (0, 0), &gens, mul)?)
}

/// Sylow 2-subgroup of Sz(8): (a, b) ∈ F8², (a, b)(c, d) = (a + c, b + d + a⁴c).
fn suzuki_sylow() -> Result<PcGroup, CatalogError> {
    const M: u32 = 0b1011;
    let mul = |x: &(u32, u32), y: &(u32, u32)| (x.0 ^ y.0, x.1 ^ y.1 ^ gf_mul(gf_pow(x.0, 4, 3, M), y.0, 3, M));
    let gens: Vec<(u32, u32)> = (0..8).flat_map(|a| (0..8).map(move |b| (a, b))).collect();
    from_table(&Group::from_elements(2, (0, 0), &gens, mul)?)
}
