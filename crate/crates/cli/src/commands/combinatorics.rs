use std::collections::BTreeSet;

use clap::Args;
use rand::Rng;
use serde::Serialize;
use serde_json::json;
use sumset_core::ramseycomb::{
    corners_count, delta_set_search, greedy_sumset_builder, is_delta_set, markov_level_set, measure_ramsey_bound_check_with,
    ordered_ramsey_number_with_budget, CornersInstance, FiniteProbabilitySpace, RamseyOutcome, SumsetOutcome, Table as PhiTable,
    DEFAULT_PREFIX_CAP, DEFAULT_RAMSEY_BUDGET,
};
use sumset_core::{Error, Rational};

use super::{random_unit, rng};
use crate::parse::{config_err, hypergraph, integer_set, list, range, value, CliResult};
use crate::report::{Cell, Check, Outcome, Table};

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct BuildSumsetArgs {
    /// evens, all, mod:<m>:<r1>,<r2>… or syndetic:<gap> (random, seeded).
    #[arg(long, default_value = "evens")]
    pub set: String,
    /// Shifts t ∈ 0..=k are allowed.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub horizon: u64,
    #[arg(long, default_value_t = DEFAULT_PREFIX_CAP)]
    pub prefix_cap: usize,
}

impl BuildSumsetArgs {
    pub fn run(&self, seed: u64) -> CliResult<Outcome> {
        if self.horizon > 100_000_000 {
            return Err(config_err("horizon above 10^8"));
        }
        let a = integer_set(&self.set, seed, self.horizon)?;
        let out = greedy_sumset_builder(|x| a.contains(x), self.horizon, self.k, self.m, self.prefix_cap)?;
        let mut table = Table::new(vec!["outcome", "b", "t", "prefix_len"]);
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        let mut checks = Vec::new();
        match &out {
            SumsetOutcome::Found { b, t, prefix } => {
                // membership rechecked here, outside the builder
                let mut bad = 0u64;
                let mut total = 0u64;
                for i in 0..b.len() {
                    for j in (i + 1)..b.len() {
                        total += 1;
                        bad += u64::from(!a.contains(b[i] * b[i] + b[j] + *t as u64));
                    }
                }
                checks.push(Check::new("inclusions_reverified", bad == 0, Cell::int(total - bad), Cell::int(total)));
                table.push(vec![Cell::text("found"), Cell::text(join(b)), Cell::int(*t), Cell::int(prefix.len() as u64)]);
            }
            SumsetOutcome::Exhausted { prefix } => {
                table.push(vec![Cell::text("exhausted"), Cell::Empty, Cell::Empty, Cell::int(prefix.len() as u64)]);
            }
        }
        Ok(Outcome { results: json!({ "set": a.name, "outcome": out }), checks, table: Some(table) })
    }
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct DeltaFindArgs {
    /// The finite set A, comma separated rationals.
    #[arg(long, default_value = "1,2,3")]
    pub a: String,
    #[arg(long, default_value_t = 3)]
    pub size: usize,
    /// Candidate grid: an integer range such as 0..3, or a list of rationals.
    #[arg(long, default_value = "0..3")]
    pub grid: String,
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
}

impl DeltaFindArgs {
    pub fn run(&self) -> CliResult<Outcome> {
        let a: BTreeSet<Rational> = list::<Rational>(&self.a, "element")?.into_iter().collect();
        let grid: Vec<Rational> = if self.grid.contains("..") {
            range(&self.grid)?.into_iter().map(Rational::from).collect()
        } else {
            list(&self.grid, "grid point")?
        };
        let found = delta_set_search(&a, self.size, &grid, self.budget)?;
        let mut checks = Vec::new();
        let mut table = Table::new(vec!["outcome", "b"]);
        match &found {
            Some(b) => {
                checks.push(Check::new("differences_in_a", is_delta_set(&a, b), Cell::int(b.len() as u64), Cell::int(self.size as u64)));
                let s: Vec<String> = b.iter().map(Rational::to_string).collect();
                table.push(vec![Cell::text("found"), Cell::text(s.join(" "))]);
            }
            None => table.push(vec![Cell::text("not_found"), Cell::Empty]),
        }
        Ok(Outcome { results: json!({ "a": a, "b": found }), checks, table: Some(table) })
    }
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct RamseyArgs {
    /// path<m>, edge:<l>, efs:<d>, complete:<m>:<l>, or hypergraph JSON.
    #[arg(long = "H", default_value = "path3")]
    #[serde(rename = "H")]
    pub h: String,
    #[arg(long, default_value_t = 2)]
    pub r: u8,
    #[arg(long, default_value_t = 8)]
    pub cap: usize,
    #[arg(long, default_value_t = DEFAULT_RAMSEY_BUDGET)]
    pub budget: u64,
}

fn ramsey_cell(out: &RamseyOutcome) -> Cell {
    match out {
        RamseyOutcome::Exact { n } => Cell::int(*n as u64),
        RamseyOutcome::AboveCap { cap } => Cell::text(format!(">{cap}")),
    }
}

impl RamseyArgs {
    pub fn run(&self) -> CliResult<Outcome> {
        let h = hypergraph(&self.h)?;
        let out = ordered_ramsey_number_with_budget(&h, self.r, self.cap, self.budget)?;
        let mut table = Table::new(vec!["H", "r", "cap", "ramsey"]);
        table.push(vec![Cell::text(&self.h), Cell::int(self.r), Cell::int(self.cap as u64), ramsey_cell(&out)]);
        Ok(Outcome { results: json!({ "H": h, "outcome": out }), checks: Vec::new(), table: Some(table) })
    }
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct MeasureRamseyArgs {
    #[arg(long = "H", default_value = "path3")]
    #[serde(rename = "H")]
    pub h: String,
    /// Number of functions φ_k.
    #[arg(long, default_value_t = 2)]
    pub r: u8,
    /// Maximum |X|; each instance draws |X| uniformly from 1..=size.
    #[arg(long, default_value_t = 4)]
    pub size: usize,
    #[arg(long, default_value_t = 1)]
    pub instances: u32,
    #[arg(long, default_value_t = 8)]
    pub cap: usize,
}

impl MeasureRamseyArgs {
    pub fn run(&self, seed: u64) -> CliResult<Outcome> {
        if self.r == 0 || self.size == 0 || self.size > 6 {
            return Err(config_err("need r ≥ 1 and 1 ≤ size ≤ 6"));
        }
        let h = hypergraph(&self.h)?;
        let ramsey = ordered_ramsey_number_with_budget(&h, self.r, self.cap, DEFAULT_RAMSEY_BUDGET)?;
        let mut rng = rng(seed);
        let mut table = Table::new(vec!["instance", "size", "lhs", "rhs", "passed"]);
        let mut checks = Vec::new();
        for i in 0..self.instances {
            let n = rng.gen_range(1..=self.size);
            let raw: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
            let total: i64 = raw.iter().sum();
            let space = FiniteProbabilitySpace::new(raw.iter().map(|&w| Rational::new(w, total)).collect())?;
            let cells = n.pow(h.l() as u32);
            // r − 1 random tables, the last one completes the partition of unity
            let mut tables: Vec<Vec<Rational>> = Vec::new();
            let mut left = vec![Rational::one(); cells];
            for _ in 1..self.r {
                let t: Vec<Rational> = left.iter().map(|rem| rem * &random_unit(&mut rng, 4)).collect();
                for (l, v) in left.iter_mut().zip(&t) {
                    *l -= v;
                }
                tables.push(t);
            }
            tables.push(left);
            let phis: Vec<PhiTable> = tables.into_iter().map(|values| PhiTable { l: h.l(), values }).collect();
            let rep = measure_ramsey_bound_check_with(&space, &phis, &h, ramsey)?;
            let rhs = rep.rhs.as_ref().map_or(Cell::Empty, Cell::rational);
            let passed = rep.passed.map_or("undetermined".to_string(), |p| p.to_string());
            table.push(vec![Cell::int(i), Cell::int(n as u64), Cell::rational(&rep.lhs), rhs.clone(), Cell::text(passed)]);
            checks.push(Check::new(format!("bound_{i}"), rep.passed == Some(true), Cell::rational(&rep.lhs), rhs));
        }
        Ok(Outcome { results: json!({ "H": h, "ramsey": ramsey }), checks, table: Some(table) })
    }
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct CornersArgs {
    #[arg(long, default_value_t = 12)]
    pub n: usize,
    /// Each cell of F is 1 with this probability, else 0.
    #[arg(long, default_value = "1/2")]
    pub density: String,
    /// Markov threshold; defaults to mean(F).
    #[arg(long)]
    pub epsilon: Option<String>,
}

impl CornersArgs {
    pub fn run(&self, seed: u64) -> CliResult<Outcome> {
        if self.n == 0 || self.n > 64 {
            return Err(config_err("n must be in 1..=64"));
        }
        let p: Rational = value(&self.density, "density")?;
        if p.is_negative() || p > Rational::one() {
            return Err(config_err("density must lie in [0, 1]"));
        }
        let (num, den) = (p.numer().clone(), p.denom().clone());
        let den_u: u64 = den.try_into().map_err(|_| config_err("density denominator too large"))?;
        let mut rng = rng(seed);
        let f: Vec<Rational> = (0..self.n * self.n)
            .map(|_| Rational::from(u32::from(num > rng.gen_range(0..den_u).into())))
            .collect();
        let inst = CornersInstance::new(self.n, f)?;
        let mean = inst.mean();
        let c = corners_count(&inst);
        let eps = match &self.epsilon {
            Some(e) => Some(value::<Rational>(e, "epsilon")?),
            None => (!mean.is_zero()).then(|| mean.clone()),
        };
        let mut checks = Vec::new();
        let markov = match &eps {
            Some(e) => match markov_level_set(&inst, e) {
                Ok(r) => {
                    checks.push(Check::new("level_density", r.density_ok, Cell::rational(&r.level_density), Cell::rational(&(e / &Rational::from(2)))));
                    checks.push(Check::new("level_corners", r.corners_ok, Cell::rational(&r.corners_f), Cell::rational(&r.corners_level)));
                    Some(r)
                }
                Err(Error::MeanTooSmall { .. }) => {
                    checks.push(Check::info("mean_below_epsilon", Cell::rational(&mean), Cell::rational(e)));
                    None
                }
                Err(e) => return Err(e.into()),
            },
            None => None,
        };
        let mut table = Table::new(vec!["n", "mean", "corners", "corners_approx"]);
        table.push(vec![Cell::int(self.n as u64), Cell::rational(&mean), Cell::rational(&c), Cell::Approx(c.to_f64())]);
        Ok(Outcome { results: json!({ "f": inst, "corners": c, "markov": markov }), checks, table: Some(table) })
    }
}
