use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::json;
use sumset_core::adele::AdeleClassElement;
use sumset_core::dynsys::{
    efs_search_with_budget, empirical_average, remark_counterexample_check, vdc_diagnostic, weyl_sum, AverageMode,
    CharacterObservable, EfsOutcome, OpenBox, OrbitPoint, SkewSystem, SkewVariant, DEFAULT_NODE_BUDGET,
};
use sumset_core::folner::{count, folner_defect};
use sumset_core::{BinomPoly, Rational};

use super::{family, generic, primes};
use crate::parse::{class_box, config_err, json_input, list, range, rational_set, value, CliResult};
use crate::report::{Cell, Check, Outcome, Table};

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct WeylArgs {
    /// JSON list of adele classes (inline or a file); entry j multiplies q^(j+1).
    #[arg(long)]
    pub betas: Option<String>,
    /// Without --betas: a generic coefficient at q^degree, zero below.
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    #[arg(long, default_value = "2,3,5")]
    pub primes: String,
    #[arg(long, default_value_t = 64)]
    pub precision: u32,
    #[arg(long, default_value = "factorial")]
    pub family: String,
    /// Single value, list or inclusive range such as 3..6.
    #[arg(long = "N", default_value = "6")]
    #[serde(rename = "N")]
    pub n: String,
    /// The N = 3..6 sweep as CSV.
    #[arg(long)]
    pub demo: bool,
    /// Fail unless |S_N| is below this bound at every N.
    #[arg(long)]
    pub max_abs: Option<f64>,
    /// Fail unless |S_N| at the last N is below its value at the first N.
    #[arg(long)]
    pub assert_decay: bool,
}

impl WeylArgs {
    pub fn run(&self, seed: u64) -> CliResult<Outcome> {
        let betas: Vec<AdeleClassElement> = match &self.betas {
            Some(b) => json_input(b, "betas")?,
            None => {
                if self.degree == 0 {
                    return Err(config_err("degree must be at least 1"));
                }
                let mut b = vec![AdeleClassElement::zero(); self.degree];
                b[self.degree - 1] = generic(&primes(&self.primes)?, self.precision, seed, 0)?;
                b
            }
        };
        let family = family(&self.family)?;
        let ns = if self.demo { (3..=6).collect() } else { range(&self.n)? };
        let mut table = Table::new(vec!["N", "phi_size", "re", "im", "abs"]);
        let mut norms = Vec::new();
        for &n in &ns {
            let s = weyl_sum(&betas, family, n)?;
            norms.push((n, s.norm()));
            table.push(vec![
                Cell::int(n),
                Cell::count(family.raw_count(n)),
                Cell::Approx(s.re),
                Cell::Approx(s.im),
                Cell::Approx(s.norm()),
            ]);
        }
        let mut checks = Vec::new();
        if let Some(bound) = self.max_abs {
            for &(n, a) in &norms {
                checks.push(Check::new(format!("abs_below_bound_N{n}"), a < bound, Cell::Approx(a), Cell::Approx(bound)));
            }
        }
        if self.assert_decay {
            let ok = norms.len() >= 2 && norms.last().unwrap().1 < norms[0].1;
            let (first, last) = (norms.first().map_or(0.0, |x| x.1), norms.last().map_or(0.0, |x| x.1));
            checks.push(Check::new("decay", ok, Cell::Approx(last), Cell::Approx(first)));
        }
        Ok(Outcome { results: json!({ "betas": betas, "family": family }), checks, table: Some(table) })
    }
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct RotationAvgArgs {
    #[arg(long = "P", default_value = "x^2")]
    #[serde(rename = "P")]
    pub p: String,
    /// Character g on the base rotation, one rational per coordinate.
    #[arg(long, default_value = "1")]
    pub w: String,
    /// Character f on the orbit; trivial when absent.
    #[arg(long)]
    pub f: Option<String>,
    #[arg(long, default_value = "2,3,5")]
    pub primes: String,
    #[arg(long, default_value_t = 64)]
    pub precision: u32,
    #[arg(long, default_value = "factorial")]
    pub family: String,
    #[arg(long = "N", default_value = "6")]
    #[serde(rename = "N")]
    pub n: String,
    /// lambda (base rotated by P(q)) or sigma (by P(q) + q).
    #[arg(long, default_value = "lambda")]
    pub mode: String,
    /// Fail unless |average| is below this bound at every N.
    #[arg(long)]
    pub threshold: Option<f64>,
}

impl RotationAvgArgs {
    pub fn run(&self, seed: u64) -> CliResult<Outcome> {
        let p: BinomPoly = value(&self.p, "polynomial")?;
        let w: Vec<Rational> = list(&self.w, "character coefficient")?;
        if w.is_empty() {
            return Err(config_err("w needs at least one coefficient"));
        }
        let l = w.len();
        let f: Vec<Rational> = match &self.f {
            Some(s) => list(s, "character coefficient")?,
            None => vec![Rational::zero(); l],
        };
        if f.len() != l {
            return Err(config_err("f and w must have the same length"));
        }
        let mode = match self.mode.as_str() {
            "lambda" => AverageMode::Lambda,
            "sigma" => AverageMode::Sigma,
            m => return Err(config_err(format!("unknown mode {m:?}"))),
        };
        let ps = primes(&self.primes)?;
        let alpha = (0..l).map(|i| generic(&ps, self.precision, seed, i as u64)).collect::<CliResult<Vec<_>>>()?;
        let sys = SkewSystem::rotation(alpha)?;
        let fc = CharacterObservable { w: vec![f] };
        let gc = CharacterObservable { w: vec![w] };
        let family = family(&self.family)?;
        let mut table = Table::new(vec!["N", "phi_size", "re", "im", "abs"]);
        let mut checks = Vec::new();
        for n in range(&self.n)? {
            let z = empirical_average(&sys, &p, &fc, &gc, &sys.origin(), family, n, mode)?;
            table.push(vec![
                Cell::int(n),
                Cell::count(family.raw_count(n)),
                Cell::Approx(z.re),
                Cell::Approx(z.im),
                Cell::Approx(z.norm()),
            ]);
            if let Some(t) = self.threshold {
                checks.push(Check::new(format!("abs_below_threshold_N{n}"), z.norm() < t, Cell::Approx(z.norm()), Cell::Approx(t)));
            }
        }
        Ok(Outcome { results: json!({ "system": sys, "P": p }), checks, table: Some(table) })
    }
}

#[derive(Deserialize)]
struct SystemSpec {
    variant: SkewVariant,
    k: usize,
    alpha: Vec<AdeleClassElement>,
}

/// Boxes per coordinate separated by `;`, each `whole` or `lo,hi`; or OpenBox JSON.
fn open_box(spec: &str) -> CliResult<OpenBox> {
    if spec.trim_start().starts_with('{') {
        return json_input(spec, "box");
    }
    Ok(OpenBox::new(spec.split(';').map(class_box).collect::<CliResult<Vec<_>>>()?))
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct EfsArgs {
    /// System JSON {"variant","k","alpha"}; defaults to the quadratic
    /// counterexample system with a generic α.
    #[arg(long)]
    pub system: Option<String>,
    /// Starting point JSON {"coords": [[…]]}; defaults to the origin.
    #[arg(long)]
    pub x0: Option<String>,
    #[arg(long = "P", default_value = "x^2")]
    #[serde(rename = "P")]
    pub p: String,
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    #[arg(long, default_value = "0,1/8;1/2,5/8")]
    pub u: String,
    #[arg(long, default_value = "0,1/8;1/2,5/8")]
    pub v: String,
    #[arg(long, default_value = "2,3,5")]
    pub primes: String,
    #[arg(long, default_value_t = 64)]
    pub precision: u32,
    #[arg(long, default_value = "factorial")]
    pub family: String,
    #[arg(long = "N", default_value = "4")]
    #[serde(rename = "N")]
    pub n: u32,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// found or not-found; fail when the outcome differs.
    #[arg(long)]
    pub expect: Option<String>,
}

impl EfsArgs {
    pub fn run(&self, seed: u64) -> CliResult<Outcome> {
        let sys = match &self.system {
            Some(s) => {
                let spec: SystemSpec = json_input(s, "system")?;
                SkewSystem::new(spec.variant, spec.k, spec.alpha)?
            }
            None => SkewSystem::remark(generic(&primes(&self.primes)?, self.precision, seed, 0)?)?,
        };
        let x0: OrbitPoint = match &self.x0 {
            Some(s) => json_input(s, "x0")?,
            None => sys.origin(),
        };
        let p: BinomPoly = value(&self.p, "polynomial")?;
        let (u, v) = (open_box(&self.u)?, open_box(&self.v)?);
        let out = efs_search_with_budget(&sys, &x0, &p, &u, &v, self.depth, family(&self.family)?, self.n, self.budget)?;
        let found = matches!(out, EfsOutcome::Found { .. });
        let mut checks = Vec::new();
        if let Some(e) = &self.expect {
            let want = match e.as_str() {
                "found" => true,
                "not-found" => false,
                _ => return Err(config_err("expect must be found or not-found")),
            };
            checks.push(Check::new("outcome", found == want, Cell::text(if found { "found" } else { "not-found" }), Cell::text(e)));
        }
        let mut table = Table::new(vec!["outcome", "chain", "nodes", "budget_hit"]);
        table.push(match &out {
            EfsOutcome::Found { chain } => {
                let c: Vec<String> = chain.iter().map(Rational::to_string).collect();
                vec![Cell::text("found"), Cell::text(c.join(" ")), Cell::Empty, Cell::Empty]
            }
            EfsOutcome::NotFound { nodes, budget_hit } => {
                vec![Cell::text("not_found"), Cell::Empty, Cell::int(*nodes), Cell::text(budget_hit.to_string())]
            }
        });
        Ok(Outcome { results: json!({ "system": sys, "outcome": out }), checks, table: Some(table) })
    }
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct RemarkCheckArgs {
    /// Real-angle arc for U.
    #[arg(long, default_value = "0,1/8")]
    pub u: String,
    #[arg(long, default_value = "1/2,5/8")]
    pub v: String,
    #[arg(long, default_value = "2,3,5")]
    pub primes: String,
    #[arg(long, default_value_t = 64)]
    pub precision: u32,
    #[arg(long, default_value = "factorial")]
    pub family: String,
    #[arg(long = "N", default_value = "1..6")]
    #[serde(rename = "N")]
    pub n: String,
}

impl RemarkCheckArgs {
    pub fn run(&self, seed: u64) -> CliResult<Outcome> {
        let alpha = generic(&primes(&self.primes)?, self.precision, seed, 0)?;
        let (u, v) = (class_box(&self.u)?, class_box(&self.v)?);
        let family = family(&self.family)?;
        let mut table = Table::new(vec!["N", "a_size", "pairs_checked", "violations"]);
        let mut checks = Vec::new();
        let mut reports = Vec::new();
        for n in range(&self.n)? {
            let r = remark_counterexample_check(&alpha, &u, &v, family, n)?;
            table.push(vec![
                Cell::int(n),
                Cell::int(r.a_size as u64),
                Cell::int(r.pairs_checked as u64),
                Cell::int(r.violations.len() as u64),
            ]);
            checks.push(Check::new(format!("no_violations_N{n}"), r.passed, Cell::int(r.violations.len() as u64), Cell::int(0)));
            reports.push(json!({ "N": n, "report": r }));
        }
        Ok(Outcome { results: json!({ "alpha": alpha, "reports": reports }), checks, table: Some(table) })
    }
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct DensityArgs {
    #[arg(long, default_value = "factorial")]
    pub family: String,
    #[arg(long = "N", default_value = "6")]
    #[serde(rename = "N")]
    pub n: String,
    /// Sets, comma separated: delta:<δ>, integers or all.
    #[arg(long, default_value = "delta:1/4")]
    pub set: String,
    /// Fail unless |density − 2δ| ≤ 2/N for every delta set.
    #[arg(long)]
    pub check_two_delta: bool,
}

impl DensityArgs {
    pub fn run(&self) -> CliResult<Outcome> {
        let family = family(&self.family)?;
        let specs: Vec<&str> = self.set.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let sets = specs.iter().map(|s| rational_set(s)).collect::<CliResult<Vec<_>>>()?;
        let mut table = Table::new(vec!["N", "phi_size", "count", "density", "set"]);
        let mut checks = Vec::new();
        for n in range(&self.n)? {
            for (spec, set) in specs.iter().zip(&sets) {
                let (hits, total) = count(set, family, n)?;
                let d = Rational::new(hits as i64, total as i64);
                table.push(vec![Cell::int(n), Cell::int(total as u64), Cell::int(hits as u64), Cell::rational(&d), Cell::text(*spec)]);
                if let (true, Some(delta)) = (self.check_two_delta, spec.strip_prefix("delta:")) {
                    let delta: Rational = value(delta, "delta")?;
                    let gap = (&d - &(&delta * &Rational::from(2))).abs();
                    let tol = Rational::new(2, n as i64);
                    checks.push(Check::new(format!("two_delta_{spec}_N{n}"), gap <= tol, Cell::rational(&gap), Cell::rational(&tol)));
                }
            }
        }
        Ok(Outcome { results: json!({ "family": family }), checks, table: Some(table) })
    }
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct DefectArgs {
    #[arg(long, default_value = "factorial")]
    pub family: String,
    #[arg(long = "N", default_value = "2..6")]
    #[serde(rename = "N")]
    pub n: String,
    #[arg(long, default_value = "1")]
    pub x: String,
    /// Fail unless the defect is non-increasing in N.
    #[arg(long)]
    pub assert_monotone: bool,
}

impl DefectArgs {
    pub fn run(&self) -> CliResult<Outcome> {
        let family = family(&self.family)?;
        let x: Rational = value(&self.x, "translation")?;
        let mut table = Table::new(vec!["N", "phi_size", "defect"]);
        let mut values = Vec::new();
        for n in range(&self.n)? {
            let d = folner_defect(family, n, &x)?;
            table.push(vec![Cell::int(n), Cell::count(family.raw_count(n)), Cell::rational(&d)]);
            values.push(d);
        }
        let mut checks = Vec::new();
        if self.assert_monotone {
            for w in values.windows(2) {
                checks.push(Check::new("non_increasing", w[1] <= w[0], Cell::rational(&w[1]), Cell::rational(&w[0])));
            }
        }
        Ok(Outcome { results: json!({ "family": family, "x": x }), checks, table: Some(table) })
    }
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct VdcReportArgs {
    /// u(q) = e(P(q)·α) for a generic α.
    #[arg(long = "P", default_value = "x^2")]
    #[serde(rename = "P")]
    pub p: String,
    #[arg(long, default_value = "2,3,5")]
    pub primes: String,
    #[arg(long, default_value_t = 64)]
    pub precision: u32,
    #[arg(long, default_value = "factorial")]
    pub family: String,
    #[arg(long = "N", default_value = "4")]
    #[serde(rename = "N")]
    pub n: String,
    #[arg(long = "R", default_value_t = 2)]
    #[serde(rename = "R")]
    pub r: u32,
}

impl VdcReportArgs {
    pub fn run(&self, seed: u64) -> CliResult<Outcome> {
        let p: BinomPoly = value(&self.p, "polynomial")?;
        let alpha = generic(&primes(&self.primes)?, self.precision, seed, 0)?;
        let family = family(&self.family)?;
        let u = |q: &Rational| Ok(alpha.scalar_mul(&p.eval(q))?.e_q().to_complex());
        let mut table = Table::new(vec!["N", "R", "mean_norm_sq", "mean_abs_correlation"]);
        for n in range(&self.n)? {
            let r = vdc_diagnostic(u, family, n, self.r)?;
            table.push(vec![Cell::int(n), Cell::int(self.r), Cell::Approx(r.mean_norm_sq), Cell::Approx(r.mean_abs_correlation)]);
        }
        Ok(Outcome { results: json!({ "alpha": alpha, "P": p }), checks: Vec::new(), table: Some(table) })
    }
}
