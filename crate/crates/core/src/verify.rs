//! Acceptance runner shared by the `acceptance` test target and `pcoh verify`.
//! Each criterion returns a list of named checks and its wall-clock time.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{identify_as, parse_pcp, resolve, CatalogEntry, Expected};
use crate::group::{quotient_by_central, Group, PcGroup, Subgroup};
use crate::invariants::GroupCohomology;
use crate::linalg::FpVector;
use crate::resolution::{
    comodule_map, induced_map, inflation_map, restriction_map, CohomologyFragment, ComoduleMap, MinimalResolution,
    DEFAULT_BUDGET,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Criteria 1 to 7 at the default degree bounds.
    Quick,
    /// Quick plus the user-supplied 64#108 presentation when available.
    Full,
    /// Everything, including 64#187 at N = 16.
    Stretch,
}

impl Suite {
    pub fn criteria(self) -> Vec<u32> {
        match self {
            Suite::Quick => (1..=7).collect(),
            Suite::Full => vec![1, 2, 3, 4, 5, 6, 7, 9],
            Suite::Stretch => (1..=9).collect(),
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quick" => Ok(Suite::Quick),
            "full" => Ok(Suite::Full),
            "stretch" => Ok(Suite::Stretch),
            other => Err(format!("unknown suite `{other}` (quick, full or stretch)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub budget: usize,
    /// Presentation file for 64#108; criterion 9 is skipped without one.
    pub presentation_64_108: Option<PathBuf>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { budget: DEFAULT_BUDGET, presentation_64_108: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub number: u32,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed_secs: f64,
    pub limit_secs: Option<f64>,
    pub skipped: Option<String>,
}

impl CriterionOutcome {
    pub fn status(&self) -> Status {
        if self.skipped.is_some() {
            return Status::Skip;
        }
        let in_time = self.limit_secs.map_or(true, |l| self.elapsed_secs <= l);
        if in_time && self.checks.iter().all(|c| c.passed) {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    /// One summary line followed by an indented line per failing check.
    pub fn lines(&self) -> Vec<String> {
        let tag = match self.status() {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        let limit = self.limit_secs.map_or(String::new(), |l| format!(" (limit {l:.0} s)"));
        let ok = self.checks.iter().filter(|c| c.passed).count();
        let mut out = vec![format!(
            "criterion {}: {tag} {} [{ok}/{} checks, {:.2} s{limit}]",
            self.number,
            self.title,
            self.checks.len(),
            self.elapsed_secs
        )];
        if let Some(why) = &self.skipped {
            out.push(format!("    skipped: {why}"));
        }
        if self.limit_secs.is_some_and(|l| self.elapsed_secs > l) {
            out.push(format!("    over time: {:.2} s", self.elapsed_secs));
        }
        for c in self.checks.iter().filter(|c| !c.passed) {
            out.push(format!("    failed {}: {}", c.name, c.detail));
        }
        out
    }
}

/// Collects checks; computation errors become failed checks.
struct Checks(Vec<Check>);

impl Checks {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: impl Into<String>, got: T, want: T) {
        let passed = got == want;
        let detail = format!("computed {got:?}, expected {want:?}");
        self.0.push(Check { name: name.into(), passed, detail });
    }

    fn truth(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    fn run<F: FnOnce(&mut Checks) -> Result<(), String>>(&mut self, name: &str, f: F) {
        if let Err(e) = f(self) {
            self.truth(name, false, e);
        }
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn context(entry: &CatalogEntry, n: usize, budget: usize) -> Result<GroupCohomology, String> {
    GroupCohomology::new(entry.id.clone(), entry.group.group.clone(), n, budget).map_err(err)
}

fn cohomology(id: &str, n: usize, budget: usize) -> Result<(CatalogEntry, GroupCohomology), String> {
    let entry = resolve(id).map_err(err)?;
    let ctx = context(&entry, n, budget)?;
    Ok((entry, ctx))
}

/// Default truncation: 10 for order ≤ 32, 8 above.
pub fn default_degree(order: usize) -> usize {
    if order <= 32 {
        10
    } else {
        8
    }
}

fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    let n = a.len().min(b.len());
    (0..n).map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum()).collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficients of (1 + 2t + 2t² + t³)/(1 − t²)³ through t^n.
pub fn w2_betti_series(n: usize) -> Vec<usize> {
    let num = [1usize, 2, 2, 1];
    (0..=n)
        .map(|k| {
            num.iter()
                .enumerate()
                .filter(|&(i, _)| i <= k && (k - i) % 2 == 0)
                .map(|(i, &c)| c * binomial((k - i) / 2 + 2, 2))
                .sum()
        })
        .collect()
}

/// Anti-diagonal sums of the E_∞ page of 64#187 modulo (a⁸, b⁸), degrees 0 to 16.
pub const FIGURE_64_187: [usize; 17] = [1, 4, 8, 10, 12, 13, 16, 20, 16, 13, 12, 10, 8, 4, 1, 0, 0];

/// Depth column for the dihedral and semidihedral rows.
pub const TABLE_DEPTH: [(&str, usize); 5] = [("D8", 2), ("D16", 1), ("D32", 2), ("SD16", 1), ("SD32", 1)];

pub fn run_criterion(number: u32, opts: &VerifyOptions) -> CriterionOutcome {
    let start = Instant::now();
    let mut checks = Checks(Vec::new());
    let mut skipped = None;
    let (title, limit) = match number {
        1 => ("Q8 end to end at N = 8", Some(5.0)),
        2 => ("generalized quaternion and cyclic rows", Some(60.0)),
        3 => ("dihedral and semidihedral rows", Some(120.0)),
        4 => ("W(2) = 32#18", Some(120.0)),
        5 => ("product laws for Q8 × Z4", None),
        6 => ("property suites", None),
        7 => ("Carlson consistency against the depth column", None),
        8 => ("stretch: 64#187 at N = 16 and 64#153", None),
        9 => ("64#108 from a supplied presentation", None),
        _ => ("unknown criterion", None),
    };
    match number {
        1 => criterion_1(&mut checks, opts),
        2 => criterion_2(&mut checks, opts),
        3 => criterion_3(&mut checks, opts),
        4 => criterion_4(&mut checks, opts),
        5 => criterion_5(&mut checks, opts),
        6 => criterion_6(&mut checks, opts),
        7 => criterion_7(&mut checks, opts),
        8 => criterion_8(&mut checks, opts),
        9 => match &opts.presentation_64_108 {
            Some(path) => criterion_9(&mut checks, opts, path),
            None => skipped = Some("no presentation for 64#108 supplied".to_string()),
        },
        n => checks.truth("criterion", false, format!("no criterion numbered {n}")),
    }
    CriterionOutcome {
        number,
        title,
        checks: checks.0,
        elapsed_secs: start.elapsed().as_secs_f64(),
        limit_secs: limit,
        skipped,
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<CriterionOutcome> {
    suite.criteria().into_iter().map(|n| run_criterion(n, opts)).collect()
}

/// Type, d₀ and d₁ of a p-central group against the catalog.
fn p_central_row(c: &mut Checks, id: &str, ctx: &GroupCohomology, want: &Expected) -> Result<(), String> {
    let t = ctx.group_type().map_err(err)?;
    c.truth(format!("{id} type certified"), t.certified, format!("type {t} at N = {}", ctx.max_degree()));
    c.eq(format!("{id} type"), Some(t.entries), want.group_type.clone());
    let (d0, d1) = ctx.d0_d1_p_central().map_err(err)?;
    c.eq(format!("{id} d0"), Some(d0), want.d0);
    c.eq(format!("{id} d1"), Some(d1), want.d1);
    Ok(())
}

fn criterion_1(c: &mut Checks, opts: &VerifyOptions) {
    c.run("Q8", |c| {
        let (entry, ctx) = cohomology("Q8", 8, opts.budget)?;
        let t = ctx.group_type().map_err(err)?;
        c.eq("Q8 type", t.entries, vec![4]);
        c.eq("Q8 e", ctx.e().map_err(err)?, 3);
        c.eq("Q8 h", ctx.h().map_err(err)?, 2);
        c.eq("Q8 (d0, d1)", ctx.d0_d1_p_central().map_err(err)?, (3, 5));
        c.eq("Q8 catalog d1", entry.expected.d1, Some(5));
        Ok(())
    });
}

fn criterion_2(c: &mut Checks, opts: &VerifyOptions) {
    for id in ["Z4", "Z8", "Z16", "Q8", "Q16", "Q32", "Q64"] {
        c.run(id, |c| {
            let entry = resolve(id).map_err(err)?;
            let ctx = context(&entry, default_degree(entry.fingerprint.order), opts.budget)?;
            p_central_row(c, id, &ctx, &entry.expected)
        });
    }
}

fn criterion_3(c: &mut Checks, opts: &VerifyOptions) {
    for id in ["D8", "D16", "D32", "SD16", "SD32"] {
        c.run(id, |c| {
            let entry = resolve(id).map_err(err)?;
            let ctx = context(&entry, default_degree(entry.fingerprint.order), opts.budget)?;
            let want = &entry.expected;
            let t = ctx.group_type().map_err(err)?;
            c.eq(format!("{id} type"), Some(t.entries), want.group_type.clone());
            c.eq(format!("{id} e"), Some(ctx.e().map_err(err)?), want.e);
            let ep = ctx.e_prime().map_err(err)?;
            c.eq(format!("{id} e'"), Some(ep.value), want.e_prime);
            c.truth(format!("{id} e' certified"), ep.certified, format!("{ep:?}"));
            let d0 = ctx.d0_general().map_err(err)?;
            c.eq(format!("{id} d0"), Some(d0.value), want.d0);
            c.truth(format!("{id} d0 certified"), d0.certified, format!("{d0:?}"));
            c.eq(format!("{id} rank"), ctx.p_rank(), 2);
            c.eq(format!("{id} center rank"), ctx.center().rank(), 1);
            c.truth(format!("{id} not p-central"), !ctx.is_p_central(), "");
            Ok(())
        });
    }
    c.run("SD16 d0 via equalizer", |c| {
        let (_, sd) = cohomology("SD16", 8, opts.budget)?;
        c.eq("SD16 d0 from the R̄_d equalizer", sd.d0_from_rd().map_err(err)?, 2);
        Ok(())
    });
}

fn criterion_4(c: &mut Checks, opts: &VerifyOptions) {
    c.run("W2", |c| {
        let (entry, ctx) = cohomology("W2", 10, opts.budget)?;
        p_central_row(c, "W2", &ctx, &entry.expected)?;
        c.eq("W2 d0, d1", ctx.d0_d1_p_central().map_err(err)?, (3, 4));
        let qa = ctx.qa_cohomology().map_err(err)?;
        c.eq("W2 Q_A dims", qa.dims[..4].to_vec(), vec![1, 2, 2, 1]);
        c.truth("W2 Q_A vanishes above 3", qa.dims[4..].iter().all(|&d| d == 0), format!("{:?}", qa.dims));
        c.eq("W2 Betti numbers", ctx.betti().to_vec(), w2_betti_series(10));
        let (deg, z) = ctx.top_primitive_class().map_err(err)?;
        c.eq("W2 top primitive degree", deg, 3);
        c.truth("W2 top class essential", ctx.is_essential(deg, &z).map_err(err)?, "restricts to zero on index-2 subgroups");
        c.truth("W2 Q_A duality", qa.is_palindromic(3), format!("{:?}", qa.dims));
        let pc = ctx.pc_primitive_dims(false).map_err(err)?;
        c.truth("W2 P_C vanishes above e", pc.dims[4..].iter().all(|&d| d == 0), format!("{:?}", pc.dims));
        let m = ctx.comodule().map_err(err)?;
        let b2 = ctx.betti()[2];
        let moved = (0..b2).map(|i| FpVector::unit(2, b2, i)).find(|u| !m.primitives(2).contains(u));
        match moved {
            Some(u) => {
                let terms = m.terms(2, &u);
                let mixed = terms.iter().any(|(a, _)| a.iter().sum::<usize>() > 0);
                c.truth("W2 class u with m*(u) ≠ 1⊗u", mixed, format!("coaction terms {terms:?}"));
            }
            None => c.truth("W2 class u with m*(u) ≠ 1⊗u", false, "every degree-2 class is primitive"),
        }
        Ok(())
    });
}

fn criterion_5(c: &mut Checks, opts: &VerifyOptions) {
    c.run("Q8×Z4", |c| {
        let n = 8;
        let (_, a) = cohomology("Q8", n, opts.budget)?;
        let (_, b) = cohomology("Z4", n, opts.budget)?;
        let (_, ab) = cohomology("Q8×Z4", n, opts.budget)?;
        c.eq("type", ab.group_type().map_err(err)?.entries, vec![4, 2]);
        c.eq("e", ab.e().map_err(err)?, 4);
        c.eq("h", ab.h().map_err(err)?, 2);
        c.eq("e additive", ab.e().map_err(err)?, a.e().map_err(err)? + b.e().map_err(err)?);
        c.eq("h is the max", ab.h().map_err(err)?, a.h().map_err(err)?.max(b.h().map_err(err)?));
        let (d0a, d1a) = a.d0_d1_p_central().map_err(err)?;
        let (d0b, d1b) = b.d0_d1_p_central().map_err(err)?;
        let got = ab.d0_d1_p_central().map_err(err)?;
        c.eq("(d0, d1)", got, (4, 6));
        c.eq("product formulas", got, (d0a + d0b, (d1a + d0b).max(d0a + d1b)));
        c.eq("Betti convolution", ab.betti().to_vec(), convolve(a.betti(), b.betti()));
        let qa = |g: &GroupCohomology| g.qa_cohomology().map(|q| q.dims).map_err(err);
        c.eq("Q_A convolution", qa(&ab)?, convolve(&qa(&a)?, &qa(&b)?));
        Ok(())
    });
}

fn random_vec(rng: &mut ChaCha8Rng, p: u32, len: usize) -> FpVector {
    FpVector::from_entries(p, &(0..len).map(|_| rng.gen_range(0..p)).collect::<Vec<_>>())
}

fn build(g: &Arc<Group>, n: usize, budget: usize) -> Result<Arc<MinimalResolution>, String> {
    MinimalResolution::build(g.clone(), n, budget).map(Arc::new).map_err(err)
}

fn sub_resolution(g: &Group, s: &Subgroup, n: usize, budget: usize) -> Result<(Arc<MinimalResolution>, Vec<usize>), String> {
    let (h, emb) = s.as_group(g).map_err(err)?;
    Ok((build(&Arc::new(h), n, budget)?, emb))
}

fn property_resolutions(c: &mut Checks, budget: usize) -> Result<(), String> {
    let z3 = parse_pcp("p 3\ngens 2\n").map_err(err)?;
    let mut groups: Vec<(String, Arc<Group>)> = Vec::new();
    for id in ["Z4", "Z2^2", "D8", "Q8", "SD16", "W2", "Q8×Z4"] {
        groups.push((id.to_string(), resolve(id).map_err(err)?.group.group));
    }
    groups.push(("Z3^2".to_string(), z3.group));
    for (id, g) in &groups {
        let r = build(g, 5, budget)?;
        c.truth(format!("{id} d∘d = 0 and minimality"), r.check().is_ok(), format!("{:?}", r.check().err()));
        c.truth(format!("{id} rank-nullity and exactness"), r.check_exact().is_ok(), format!("{:?}", r.check_exact().err()));
    }
    Ok(())
}

fn property_products(c: &mut Checks, budget: usize, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let z3 = parse_pcp("p 3\ngens 2\n").map_err(err)?.group;
    let cases = [
        ("D8", resolve("D8").map_err(err)?.group.group, 6),
        ("Q8", resolve("Q8").map_err(err)?.group.group, 6),
        ("W2", resolve("W2").map_err(err)?.group.group, 4),
        ("Z3^2", z3, 4),
    ];
    for (id, g, n) in cases {
        let p = g.prime();
        let r = build(&g, n, budget)?;
        let ring = CohomologyFragment::new(r.clone()).map_err(err)?;
        let mut commutes = true;
        let mut associative = true;
        for m in 1..n {
            for k in 1..=n - m {
                let u = random_vec(rng, p, r.hilbert_fragment()[m]);
                let v = random_vec(rng, p, r.hilbert_fragment()[k]);
                let uv = ring.product(&u, m, &v, k).map_err(err)?;
                let mut vu = ring.product(&v, k, &u, m).map_err(err)?;
                if (m * k) % 2 == 1 {
                    vu.scale(p - 1);
                }
                commutes &= uv == vu;
                for l in 1..=n - m - k {
                    let w = random_vec(rng, p, r.hilbert_fragment()[l]);
                    let left = ring.product(&uv, m + k, &w, l).map_err(err)?;
                    let vw = ring.product(&v, k, &w, l).map_err(err)?;
                    let right = ring.product(&u, m, &vw, k + l).map_err(err)?;
                    associative &= left == right;
                }
            }
        }
        c.truth(format!("{id} cup products graded-commutative"), commutes, "random classes");
        c.truth(format!("{id} cup products associative"), associative, "random classes");
    }
    Ok(())
}

fn property_restriction(c: &mut Checks, budget: usize, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = 5;
    let d16 = resolve("D16").map_err(err)?.group.group;
    let r = build(&d16, n, budget)?;
    let ring_g = CohomologyFragment::new(r.clone()).map_err(err)?;
    let d8 = d16
        .maximal_subgroups()
        .into_iter()
        .find(|s| s.as_group(&d16).is_ok_and(|h| h.0.p_rank() == 2))
        .ok_or("D16 has no rank-2 maximal subgroup")?;
    let (r8, emb8) = sub_resolution(&d16, &d8, n, budget)?;
    let g8 = r8.group().clone();
    let v4 = g8.elementary_abelian_subgroups(None).into_iter().find(|v| v.rank() == 2).ok_or("no Klein four")?;
    let (r4, emb4) = sub_resolution(&g8, v4.subgroup(), n, budget)?;
    let res_8 = restriction_map(&r, r8.as_ref(), &emb8, n).map_err(err)?;
    let res_48 = restriction_map(&r8, r4.as_ref(), &emb4, n).map_err(err)?;
    let direct: Vec<usize> = emb4.iter().map(|&x| emb8[x]).collect();
    let res_4 = restriction_map(&r, r4.as_ref(), &direct, n).map_err(err)?;
    let composed = res_48.compose(&res_8);
    c.truth("restriction functorial D16 > D8 > V4", (0..=n).all(|k| composed.matrix(k) == res_4.matrix(k)), "");
    let ring_8 = CohomologyFragment::new(r8.clone()).map_err(err)?;
    let mut hom = true;
    for m in 1..n {
        for k in 1..=n - m {
            let u = random_vec(rng, 2, r.hilbert_fragment()[m]);
            let v = random_vec(rng, 2, r.hilbert_fragment()[k]);
            let lhs = res_8.apply(m + k, &ring_g.product(&u, m, &v, k).map_err(err)?);
            let rhs = ring_8.product(&res_8.apply(m, &u), m, &res_8.apply(k, &v), k).map_err(err)?;
            hom &= lhs == rhs;
        }
    }
    c.truth("restriction D16 → D8 is a ring map", hom, "random classes");
    Ok(())
}

fn property_inflation(c: &mut Checks, budget: usize, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = 4;
    let pg: PcGroup = resolve("Q8×Z4").map_err(err)?.group;
    let g = pg.group.clone();
    let r = build(&g, n, budget)?;
    // G → G/Z1 → (G/Z1)/Z2 against the composite quotient map
    let z1 = g.omega1_center();
    let (q1p, q1) = quotient_by_central(&pg, z1.subgroup()).map_err(err)?;
    let q1g = PcGroup::new(q1p).map_err(err)?;
    let z2 = q1g.group.omega1_center();
    let (q2p, q2) = quotient_by_central(&q1g, z2.subgroup()).map_err(err)?;
    let q2g = Arc::new(q2p.to_group().map_err(err)?);
    let r1 = build(&q1g.group, n, budget)?;
    let r2 = build(&q2g, n, budget)?;
    let inf1 = inflation_map(&r, &q1, &r1, n).map_err(err)?;
    let inf2 = inflation_map(&r1, &q2, &r2, n).map_err(err)?;
    let composite: Vec<usize> = (0..g.order()).map(|x| q2.apply(q1.apply(x))).collect();
    let direct = induced_map(r.as_ref(), &composite, &r2, n).map_err(err)?;
    let chained = inf1.compose(&inf2);
    c.truth("inflation functorial", (0..=n).all(|k| chained.matrix(k) == direct.matrix(k)), "");
    let ring_g = CohomologyFragment::new(r.clone()).map_err(err)?;
    let ring_q = CohomologyFragment::new(r1.clone()).map_err(err)?;
    let mut hom = true;
    for m in 1..n {
        for k in 1..=n - m {
            let u = random_vec(rng, 2, r1.hilbert_fragment()[m]);
            let v = random_vec(rng, 2, r1.hilbert_fragment()[k]);
            let lhs = inf1.apply(m + k, &ring_q.product(&u, m, &v, k).map_err(err)?);
            let rhs = ring_g.product(&inf1.apply(m, &u), m, &inf1.apply(k, &v), k).map_err(err)?;
            hom &= lhs == rhs;
        }
    }
    c.truth("inflation is a ring map", hom, "random classes");
    Ok(())
}

fn lucas(a: usize, b: usize) -> bool {
    b & !a == 0
}

fn subexponents(alpha: &[usize]) -> Vec<Vec<usize>> {
    alpha.iter().fold(vec![vec![]], |acc, &a| {
        acc.into_iter().flat_map(|v| (0..=a).map(move |x| [v.clone(), vec![x]].concat())).collect()
    })
}

/// (Δ ⊗ 1)∘m* = (1 ⊗ m*)∘m* at p = 2, with Δ(x^α) = Σ binom(α, β) x^β ⊗ x^{α−β}.
fn coassociative(m: &ComoduleMap, betti: &[usize]) -> bool {
    type Key = (Vec<usize>, Vec<usize>, usize);
    for (k, &b) in betti.iter().enumerate() {
        for i in 0..b {
            let u = FpVector::unit(2, b, i);
            let mut lhs: HashMap<Key, u32> = HashMap::new();
            let mut rhs: HashMap<Key, u32> = HashMap::new();
            for (alpha, coords) in m.terms(k, &u) {
                let deg = k - alpha.iter().sum::<usize>();
                for (beta, inner) in m.terms(deg, &FpVector::from_entries(2, &coords)) {
                    for (j, _) in inner.iter().enumerate().filter(|(_, &x)| x != 0) {
                        *rhs.entry((alpha.clone(), beta.clone(), j)).or_default() ^= 1;
                    }
                }
                for beta in subexponents(&alpha) {
                    if alpha.iter().zip(&beta).all(|(&a, &bb)| lucas(a, bb)) {
                        let rest: Vec<usize> = alpha.iter().zip(&beta).map(|(a, bb)| a - bb).collect();
                        for (j, _) in coords.iter().enumerate().filter(|(_, &x)| x != 0) {
                            *lhs.entry((beta.clone(), rest.clone(), j)).or_default() ^= 1;
                        }
                    }
                }
            }
            lhs.retain(|_, v| *v != 0);
            rhs.retain(|_, v| *v != 0);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn property_comodule(c: &mut Checks, budget: usize) -> Result<(), String> {
    for id in ["Q8", "W2", "Q8×Z4"] {
        let g = resolve(id).map_err(err)?.group.group;
        let r = build(&g, 4, budget)?;
        let m = comodule_map(&r, &g.omega1_center(), 4).map_err(err)?;
        c.truth(format!("{id} comodule counit"), (0..=4).all(|k| m.counit_holds(k)), "");
        c.truth(format!("{id} comodule coassociative"), coassociative(&m, r.hilbert_fragment()), "");
    }
    Ok(())
}

fn property_invariants(c: &mut Checks, budget: usize) -> Result<(), String> {
    let n = 7;
    for id in ["Z4", "Q8", "Q16", "W2", "Q8×Z4", "D8", "D16", "SD16"] {
        let (_, g) = cohomology(id, n, budget)?;
        let (qa, qa_c) = match (g.qa_cohomology(), g.qa_cess_dims()) {
            (Ok(a), Ok(b)) => (a, b),
            (a, b) => {
                let why = format!("{:?} / {:?}", a.err(), b.err());
                c.truth(format!("{id} Hilbert freeness of H and Cess over A"), false, why);
                continue;
            }
        };
        c.truth(format!("{id} Hilbert freeness of H and Cess over A"), true, "checked through N");
        let pc = g.pc_primitive_dims(false).map_err(err)?;
        let pc_c = g.pc_primitive_dims(true).map_err(err)?;
        let embeds = (0..=n).all(|k| pc.dims[k] <= qa.dims[k] && pc_c.dims[k] <= qa_c.dims[k]);
        c.truth(format!("{id} P_C ↪ Q_A degreewise"), embeds, format!("P_C {:?}, Q_A {:?}", pc.dims, qa.dims));
        let (e1, e2) = (g.e_prime().map_err(err)?.value, g.e_double_prime().map_err(err)?.value);
        c.truth(format!("{id} e'' ≤ e'"), e2 <= e1, format!("e' = {e1}, e'' = {e2}"));
        if g.is_p_central() {
            let e = g.e().map_err(err)?;
            c.truth(format!("{id} Q_A palindrome"), e >= 0 && qa.is_palindromic(e as usize), format!("{:?}", qa.dims));
            c.eq(format!("{id} Q_A top degree"), qa.top_degree(), e);
            c.eq(format!("{id} LF = P_C"), g.lf_dims().map_err(err)?.dims, pc.dims.clone());
            let rank_c = g.center().rank();
            let mut rd_ok = true;
            for d in 0..=n {
                let rd = g.bar_rd_dims(d).map_err(err)?;
                let want: Vec<usize> = (0..=n).map(|k| binomial(k + rank_c - 1, rank_c - 1) * pc.dims[d]).collect();
                rd_ok &= rd.dims == want;
            }
            c.truth(format!("{id} R̄_d = H(C) ⊗ P_C H^d"), rd_ok, "");
        }
    }
    let (_, sd) = cohomology("SD16", 8, budget)?;
    let q = sd.qa_cess_dims().map_err(err)?;
    let e = sd.e().map_err(err)?;
    c.truth("SD16 Q_A Cess palindrome about e", q.total() > 0 && q.is_palindromic(e as usize), format!("{:?}", q.dims));
    Ok(())
}

fn criterion_6(c: &mut Checks, opts: &VerifyOptions) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    c.run("resolutions", |c| property_resolutions(c, opts.budget));
    c.run("cup products", |c| property_products(c, opts.budget, &mut rng));
    c.run("restriction", |c| property_restriction(c, opts.budget, &mut rng));
    c.run("inflation", |c| property_inflation(c, opts.budget, &mut rng));
    c.run("comodule", |c| property_comodule(c, opts.budget));
    c.run("invariants", |c| property_invariants(c, opts.budget));
}

fn criterion_7(c: &mut Checks, opts: &VerifyOptions) {
    for (id, depth) in TABLE_DEPTH {
        c.run(id, |c| {
            let entry = resolve(id).map_err(err)?;
            let ctx = context(&entry, default_degree(entry.fingerprint.order), opts.budget)?;
            let (nonzero, certified) = ctx.cess_nonzero().map_err(err)?;
            let rank_c = ctx.center().rank();
            c.truth(format!("{id} Cess certified"), certified, "");
            c.truth(
                format!("{id} Cess ≠ 0 iff depth = rank C"),
                nonzero == (depth == rank_c),
                format!("Cess ≠ 0 is {nonzero}, depth {depth}, rank C {rank_c}"),
            );
            Ok(())
        });
    }
}

fn criterion_8(c: &mut Checks, opts: &VerifyOptions) {
    c.run("64#187", |c| {
        let (entry, ctx) = cohomology("64#187", 16, opts.budget)?;
        p_central_row(c, "64#187", &ctx, &entry.expected)?;
        c.eq("64#187 (d0, d1)", ctx.d0_d1_p_central().map_err(err)?, (14, 18));
        c.eq("64#187 Q_A dims", ctx.qa_cohomology().map_err(err)?.dims, FIGURE_64_187.to_vec());
        Ok(())
    });
    c.run("64#153", |c| {
        let (entry, ctx) = cohomology("64#153", 8, opts.budget)?;
        p_central_row(c, "64#153", &ctx, &entry.expected)?;
        c.eq("64#153 (d0, d1)", ctx.d0_d1_p_central().map_err(err)?, (9, 11));
        Ok(())
    });
}

fn criterion_9(c: &mut Checks, opts: &VerifyOptions, path: &std::path::Path) {
    c.run("64#108", |c| {
        let entry = identify_as(&path.to_string_lossy(), "64#108").map_err(err)?;
        c.truth("64#108 fingerprint gate", true, format!("{:?}", entry.fingerprint));
        let ctx = context(&entry, 8, opts.budget)?;
        let t = ctx.group_type().map_err(err)?;
        c.eq("64#108 type", t.entries, vec![8, 2]);
        c.eq("64#108 e", ctx.e().map_err(err)?, 8);
        let q = ctx.qa_cess_dims().map_err(err)?;
        c.eq("64#108 Q_A Cess in degrees 1 to 7", q.dims[1..8].to_vec(), vec![1, 3, 5, 6, 5, 3, 1]);
        c.eq("64#108 e'", ctx.e_prime().map_err(err)?.value, 7);
        c.eq("64#108 e''", ctx.e_double_prime().map_err(err)?.value, 7);
        let d0 = ctx.d0_general().map_err(err)?;
        c.eq("64#108 d0", d0.value, 7);
        c.eq("64#108 d0 via R̄_d", ctx.d0_from_rd().map_err(err)?, 7);
        Ok(())
    });
}
