use serde::{Deserialize, Serialize};

use super::{Bounded, GroupCohomology};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificationFlags {
    #[serde(rename = "type")]
    pub group_type: bool,
    pub e: bool,
    pub h: bool,
    pub d0: bool,
    pub d1: bool,
    pub e_prime: bool,
    pub e_double_prime: bool,
    pub cess_nonzero: bool,
}

impl CertificationFlags {
    pub fn all(&self) -> bool {
        self.group_type && self.e && self.h && self.d0 && self.d1 && self.e_prime && self.e_double_prime && self.cess_nonzero
    }
}

/// Every invariant of one group; `None` marks unavailable or failed fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub group_id: String,
    pub p: u32,
    pub order: usize,
    pub rank: usize,
    pub center_rank: usize,
    pub p_central: bool,
    #[serde(rename = "type")]
    pub group_type: Option<Vec<u32>>,
    pub e: Option<i64>,
    pub h: Option<i64>,
    pub d0: Option<i64>,
    pub d1: Option<i64>,
    pub e_prime: Option<i64>,
    pub e_double_prime: Option<i64>,
    pub cess_nonzero: Option<bool>,
    pub truncation_degree: usize,
    pub certified: CertificationFlags,
    /// Failures met while filling the report, one message per field.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
}

impl InvariantReport {
    /// Every applicable field is certified; d₁ is not defined off the p-central case.
    pub fn fully_certified(&self) -> bool {
        let f = &self.certified;
        let d1 = f.d1 || !self.p_central;
        f.group_type && f.e && f.h && f.d0 && d1 && f.e_prime && f.e_double_prime && f.cess_nonzero
    }
}

fn split(b: Option<Bounded>) -> (Option<i64>, bool) {
    match b {
        Some(b) => (Some(b.value), b.certified),
        None => (None, false),
    }
}

fn keep<T>(errors: &mut Vec<String>, name: &str, r: Result<T, super::InvariantError>) -> Option<T> {
    r.map_err(|e| errors.push(format!("{name}: {e}"))).ok()
}

/// Computes everything on demand; a failing field is left empty and uncertified.
pub fn report(ctx: &GroupCohomology) -> InvariantReport {
    let mut errors = Vec::new();
    let g = ctx.group();
    let p_central = ctx.is_p_central();
    let t = keep(&mut errors, "type", ctx.group_type());
    let type_ok = t.as_ref().is_some_and(|t| t.certified);
    let e = t.as_ref().map(super::e_of);
    let h = t.as_ref().map(|t| super::h_of(t, ctx.prime()));
    let mut flags = CertificationFlags { group_type: type_ok, e: type_ok, h: type_ok, ..Default::default() };
    let (d0, d1, e_prime, e_double_prime, cess_nonzero);
    if p_central {
        let pair = if type_ok { keep(&mut errors, "d0", ctx.d0_d1_p_central()) } else { None };
        d0 = pair.map(|x| x.0).or(e);
        d1 = pair.map(|x| x.1).or(e.zip(h).map(|(a, b)| a + b));
        e_prime = e;
        e_double_prime = e;
        cess_nonzero = Some(true);
        flags.d0 = type_ok;
        flags.d1 = type_ok;
        flags.e_prime = type_ok;
        flags.e_double_prime = type_ok;
        flags.cess_nonzero = true;
    } else {
        let ep = keep(&mut errors, "e_prime", ctx.e_prime());
        let epp = keep(&mut errors, "e_double_prime", ctx.e_double_prime());
        let dz = keep(&mut errors, "d0", ctx.d0_general());
        let cn = keep(&mut errors, "cess_nonzero", ctx.cess_nonzero());
        (e_prime, flags.e_prime) = split(ep);
        (e_double_prime, flags.e_double_prime) = split(epp);
        (d0, flags.d0) = split(dz);
        d1 = None;
        flags.d1 = false;
        cess_nonzero = cn.map(|x| x.0);
        flags.cess_nonzero = cn.is_some_and(|x| x.1);
    }
    InvariantReport {
        group_id: ctx.label().to_string(),
        p: ctx.prime(),
        order: g.order(),
        rank: ctx.p_rank(),
        center_rank: ctx.center().rank(),
        p_central,
        group_type: t.map(|t| t.entries),
        e,
        h,
        d0,
        d1,
        e_prime,
        e_double_prime,
        cess_nonzero,
        truncation_degree: ctx.max_degree(),
        certified: flags,
        errors,
    }
}
