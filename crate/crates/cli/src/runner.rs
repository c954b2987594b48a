use std::fmt::Write as _;

use holo24::affine::{
    acts_nontrivially, integral_spectrum_table, min_root_pairing, product_twisted_lowest,
    shift_not_a_weight, spectrum_half_integral, HVector, ProductLabel,
};
use holo24::lattice;
use holo24::orbifold::{assemble_root_subsystem, fixed_subalgebra, identify, twisted_sector_roots, SemisimpleShape};
use holo24::qseries::{character_fit, dimension_identities};
use holo24::rational::{qi, Q};
use holo24::rootsys::SimpleType;
use serde::Serialize;

use crate::scenario::{Model, ScenarioFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub step: String,
    pub expected: String,
    pub actual: String,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub path: String,
    pub ambient: String,
    pub dim_v1: u64,
    pub checks: Vec<Check>,
    pub assumptions: Vec<String>,
    pub notes: Vec<String>,
    pub first_failure: Option<String>,
    pub fixed_shape: Option<String>,
    pub fixed_dim: Option<usize>,
    pub result_shape: Option<String>,
    pub result_dim: Option<i64>,
    /// Leading coefficients `(exponent in half-units, value)` of the fitted
    /// fixed-point character.
    pub series: Vec<(i64, String)>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Truncation of the fitted character, in half-units of the exponent.
    pub trunc: i64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { trunc: 8 }
    }
}

struct Ctx {
    report: ScenarioReport,
}

impl Ctx {
    /// Records a check; returns `false` on failure so the caller can stop.
    fn check(&mut self, step: &str, expected: impl ToString, actual: impl ToString, ok: bool) -> bool {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.report.checks.push(Check {
            step: step.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            status,
        });
        if !ok && self.report.first_failure.is_none() {
            self.report.first_failure = Some(step.into());
        }
        ok
    }

    fn error(&mut self, step: &str, expected: impl ToString, e: impl ToString) {
        self.check(step, expected, format!("error: {}", e.to_string()), false);
    }
}

macro_rules! step {
    ($ctx:expr, $step:expr, $expected:expr, $res:expr) => {
        match $res {
            Ok(v) => v,
            Err(e) => {
                $ctx.error($step, $expected, e);
                return $ctx.report;
            }
        }
    };
}

fn shape_of(ideals: &[(SimpleType, u32)]) -> String {
    SemisimpleShape::new(ideals.to_vec(), 0).to_string()
}

fn neg(h: &HVector) -> HVector {
    HVector(h.0.iter().map(|w| w.neg()).collect())
}

pub fn run_scenario(f: &ScenarioFile, opts: RunOptions) -> ScenarioReport {
    let sc = &f.scenario;
    let a = &sc.ambient;
    let h = &sc.h;
    let mut c = Ctx {
        report: ScenarioReport {
            name: sc.name.clone(),
            path: f.path.display().to_string(),
            ambient: a.to_string(),
            dim_v1: f.dim_v1,
            checks: Vec::new(),
            assumptions: f.assumptions.clone(),
            notes: f.notes.clone(),
            first_failure: None,
            fixed_shape: None,
            fixed_dim: None,
            result_shape: None,
            result_dim: None,
            series: Vec::new(),
        },
    };

    if !c.check("dim-v1", f.dim_v1, a.dim(), a.dim() as u64 == f.dim_v1) {
        return c.report;
    }

    let table = match &f.spectrum {
        Some((rows, filter)) => Some((*rows, step!(c, "spectrum-table", rows, integral_spectrum_table(a, filter)))),
        None => None,
    };
    let labels: Vec<ProductLabel> = table.iter().flat_map(|t| t.1.iter().map(|r| r.0.clone())).collect();

    let half = step!(c, "half-integrality", true, spectrum_half_integral(a, h, &labels));
    let nontrivial = step!(c, "half-integrality", true, acts_nontrivially(a, h));
    let min_pair = step!(c, "half-integrality", true, min_root_pairing(a, h));
    let ok = half && nontrivial && min_pair >= qi(-1);
    let actual = format!("half-integral {half}, order 2 on V_1 {nontrivial}, min (h|α) = {min_pair}");
    if !c.check("half-integrality", "half-integral, order 2, min (h|α) >= -1", actual, ok) {
        return c.report;
    }

    let hh = step!(c, "hh", &f.hh, a.hh(h));
    if !c.check("hh", &f.hh, &hh, hh == f.hh) {
        return c.report;
    }

    if let Some((rows, t)) = &table {
        if !c.check("spectrum-table", rows, t.len(), t.len() == *rows) {
            return c.report;
        }
    }

    let (fixed, seeds) = step!(c, "fixed-subalgebra", &sc.expected_fixed, fixed_subalgebra(a, h));
    c.report.fixed_shape = Some(fixed.to_string());
    c.report.fixed_dim = Some(fixed.dim());
    if !c.check("fixed-subalgebra", &sc.expected_fixed, &fixed, fixed == sc.expected_fixed) {
        return c.report;
    }

    let mut id_seeds: Vec<(SimpleType, u32)> = Vec::new();
    match f.model {
        Model::Affine => {
            let mut pool: Vec<(SimpleType, u32)> = seeds.iter().map(|s| (s.ty, s.level)).collect();
            for &want in &f.fixed_seeds {
                match pool.iter().position(|&p| p == want) {
                    Some(i) => {
                        pool.remove(i);
                        id_seeds.push(want);
                    }
                    None => {
                        c.check("seeds", shape_of(&f.fixed_seeds), format!("{} is not an ideal of {fixed}", shape_of(&[want])), false);
                        return c.report;
                    }
                }
            }
        }
        Model::Lattice => {
            let n = step!(c, "lattice-fixed", &sc.expected_fixed, lattice::build_niemeier());
            let lf = step!(c, "lattice-fixed", &sc.expected_fixed, lattice::fixed_shape_a45(&lattice::h_vector()));
            if !c.check("lattice-fixed", &sc.expected_fixed, &lf, lf == sc.expected_fixed) {
                return c.report;
            }
            id_seeds.extend(lf.ideals().iter().copied());
            let lw = step!(c, "twisted-lowest-weight", 1, lattice::lowest_weights(&n, &lattice::h_vector()));
            let tw: Vec<String> = lw.twisted.iter().map(|(_, w)| w.to_string()).collect();
            let actual = format!("untwisted {}, twisted [{}], bound {}", lw.untwisted, tw.join(", "), lw.half_integral_min);
            let ok = lw.half_integral_min >= qi(1) && lw.untwisted >= qi(1);
            if !c.check("twisted-lowest-weight", "lowest L(0)-weight >= 1", actual, ok) {
                return c.report;
            }
        }
    }

    if let Some(t) = &f.twisted {
        let mut tw = twisted_sector_roots(a, h, &t.base);
        if t.negatives {
            let n: Vec<HVector> = tw.iter().map(neg).collect();
            tw.extend(n);
        }
        let expect = shape_of(&[t.expect]);
        let s = step!(c, "twisted-roots", &expect, assemble_root_subsystem(a, &t.fixed_roots, &tw));
        let got = shape_of(&[(s.ty, s.level)]);
        let simple: Vec<String> = s.simple_roots.iter().map(|r| r.to_string()).collect();
        let actual = format!("{got} with {} roots, simple roots {}", s.roots.len(), simple.join(" "));
        if !c.check("twisted-roots", &expect, actual, (s.ty, s.level) == t.expect) {
            return c.report;
        }
        id_seeds.push((s.ty, s.level));
    }

    if f.model == Model::Affine {
        let mut min: Option<Q> = None;
        for m in &labels {
            let w = step!(c, "twisted-lowest-weight", 1, product_twisted_lowest(a, m, h));
            if min.as_ref().is_none_or(|x| w < *x) {
                min = Some(w);
            }
        }
        let shift = step!(c, "twisted-lowest-weight", 1, shift_not_a_weight(a, h, &labels));
        let min = min.unwrap_or_else(|| qi(0));
        let actual = format!("min {min} over {} modules, -Σk_ih_i not a weight {shift}", labels.len());
        if !c.check("twisted-lowest-weight", "lowest L(0)-weight >= 1", actual, min >= qi(1) && shift) {
            return c.report;
        }
    }

    let dim_g1 = fixed.dim() as u64;
    let fit = step!(c, "character-fit", dim_g1, character_fit(dim_g1, f.dim_half, opts.trunc.max(1)));
    c.report.series = fit.series.terms().into_iter().map(|(n, v)| (n, v.to_string())).collect();
    let constant = step!(c, "character-fit", dim_g1, fit.series.coeff(0));
    if !c.check("character-fit", dim_g1, &constant, constant == qi(dim_g1 as i64)) {
        return c.report;
    }

    let d = step!(c, "dimension-identities", f.dim_tilde1, dimension_identities(f.dim_v1, dim_g1, f.dim_half));
    c.report.result_dim = Some(d.dim_tilde1);
    let expected = format!("dim Ṽ_1 = {}, dim (V^g)_2 = {}", f.dim_tilde1, f.dim_g2);
    let actual = format!(
        "dim Ṽ_1 = {} (series {}), dim (V^g)_2 = {} (series {})",
        d.dim_tilde1, d.dim_tilde1_series, d.dim_g2, d.dim_g2_series
    );
    if !c.check("dimension-identities", expected, actual, d.dim_tilde1 == f.dim_tilde1 && d.dim_g2 == f.dim_g2) {
        return c.report;
    }

    c.check("seeds", "-", shape_of(&id_seeds), true);
    let dim = usize::try_from(d.dim_tilde1).unwrap_or(0);
    let shapes = step!(c, "identification", &sc.expected_result, identify(sc.rank, dim, &id_seeds));
    let names: Vec<String> = shapes.iter().map(|s| s.to_string()).collect();
    if shapes.len() == 1 {
        c.report.result_shape = Some(names[0].clone());
    }
    c.check(
        "identification",
        &sc.expected_result,
        names.join(" | "),
        shapes.len() == 1 && shapes[0] == sc.expected_result,
    );
    c.report
}

pub fn render_text(r: &ScenarioReport, verbose: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "== {} ({})", r.name, r.ambient);
    for a in &r.assumptions {
        let _ = writeln!(s, "  ASSUMPTION: {a}");
    }
    for c in &r.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        if verbose || c.status == Status::Fail {
            let _ = writeln!(s, "  [{tag}] {}: expected {}; actual {}", c.step, c.expected, c.actual);
        } else {
            let _ = writeln!(s, "  [{tag}] {}: {}", c.step, c.actual);
        }
    }
    if verbose {
        for (n, v) in &r.series {
            let _ = writeln!(s, "  character-fit: q^({n}/2) {v}");
        }
    }
    for n in &r.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    match &r.first_failure {
        None => {
            let _ = writeln!(s, "  result: PASS");
        }
        Some(step) => {
            let _ = writeln!(s, "  result: FAIL at {step}");
        }
    }
    s
}

/// One row per scenario: ambient, dim V_1, fixed shape and dim, result
/// shape and dim, status.
pub fn render_summary(reports: &[ScenarioReport]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<12} {:<26} {:>6}  {:<36} {:>5}  {:<26} {:>5}  status",
        "scenario", "V_1", "dim", "(V^g)_1", "dim", "Ṽ_1", "dim"
    );
    let opt = |x: &Option<String>| x.clone().unwrap_or_else(|| "-".into());
    for r in reports {
        let _ = writeln!(
            s,
            "{:<12} {:<26} {:>6}  {:<36} {:>5}  {:<26} {:>5}  {}",
            r.name,
            r.ambient,
            r.dim_v1,
            opt(&r.fixed_shape),
            r.fixed_dim.map_or("-".into(), |d| d.to_string()),
            opt(&r.result_shape),
            r.result_dim.map_or("-".into(), |d| d.to_string()),
            if r.passed() { "PASS" } else { "FAIL" }
        );
    }
    s
}
