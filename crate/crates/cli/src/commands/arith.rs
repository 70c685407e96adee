use clap::Args;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use sumset_core::adele::{AdeleClassElement, CircleValue};
use sumset_core::colorings::{bergelson_triple_search, color_check, five_color};
use sumset_core::dynsys::{CharacterObservable, OrbitPoint, SkewSystem, SkewVariant};
use sumset_core::exactq::factorial;
use sumset_core::phasepoly::{multilinearize, PhasePolynomial};
use sumset_core::{BinomPoly, Error, Rational};

use super::{generic, random_rational, rng};
use crate::parse::{config_err, list, value, CliResult};
use crate::report::{Cell, Check, Outcome, Table};

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct ColorCheckArgs {
    #[arg(long, default_value_t = 300)]
    pub max: u64,
    /// Set sizes, comma separated.
    #[arg(long, default_value = "2,3")]
    pub sizes: String,
    /// Largest exponent e for the doubling pairs (x, 2^e).
    #[arg(long, default_value_t = 20)]
    pub doubling_exp: u32,
}

impl ColorCheckArgs {
    pub fn run(&self) -> CliResult<Outcome> {
        let sizes: Vec<usize> = list(&self.sizes, "size")?;
        if sizes.iter().any(|&s| !(2..=3).contains(&s)) {
            return Err(config_err("sizes must be 2 or 3"));
        }
        let r = color_check(self.max, &sizes, self.doubling_exp);
        let mut table = Table::new(vec![
            "max",
            "sets_checked",
            "sets_applicable",
            "violations",
            "equal_valuation_pairs",
            "doubling_pairs",
            "mechanism_failures",
        ]);
        table.push(vec![
            Cell::int(r.max),
            Cell::int(r.sets_checked),
            Cell::int(r.sets_applicable),
            Cell::int(r.violations.len() as u64),
            Cell::int(r.equal_valuation_pairs),
            Cell::int(r.doubling_pairs),
            Cell::int(r.mechanism_failures.len() as u64),
        ]);
        let checks = vec![
            Check::new("pattern_violations", r.violations.is_empty(), Cell::int(r.violations.len() as u64), Cell::int(0)),
            Check::new(
                "mechanism_failures",
                r.mechanism_failures.is_empty(),
                Cell::int(r.mechanism_failures.len() as u64),
                Cell::int(0),
            ),
        ];
        Ok(Outcome { results: serde_json::to_value(&r).expect("report serializes"), checks, table: Some(table) })
    }
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct BergelsonArgs {
    #[arg(long, default_value_t = 100)]
    pub bound: u64,
    /// five, parity or constant.
    #[arg(long, default_value = "five")]
    pub coloring: String,
}

impl BergelsonArgs {
    pub fn run(&self) -> CliResult<Outcome> {
        if self.bound < 2 {
            return Err(config_err("bound must be at least 2"));
        }
        let found = match self.coloring.as_str() {
            "five" => bergelson_triple_search(five_color, self.bound),
            "parity" => bergelson_triple_search(|n| n % 2, self.bound),
            "constant" => bergelson_triple_search(|_| 0u8, self.bound),
            c => return Err(config_err(format!("unknown coloring {c:?}"))),
        };
        let mut table = Table::new(vec!["coloring", "bound", "b1", "b2", "b1^2+b2"]);
        let triple = found.map(|(a, b)| [a, b, a * a + b]);
        let cells = match triple {
            Some(t) => t.iter().map(|&x| Cell::int(x)).collect(),
            None => vec![Cell::Empty; 3],
        };
        let mut row = vec![Cell::text(&self.coloring), Cell::int(self.bound)];
        row.extend(cells);
        table.push(row);
        Ok(Outcome {
            results: json!({ "coloring": self.coloring, "bound": self.bound, "triple": triple }),
            checks: vec![Check::info("triple_found", Cell::text(triple.is_some().to_string()), Cell::Empty)],
            table: Some(table),
        })
    }
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct PhaseCheckArgs {
    /// Random phase instances per identity.
    #[arg(long, default_value_t = 1000)]
    pub instances: u32,
    #[arg(long, default_value_t = 5)]
    pub max_degree: usize,
    /// Random skew-system instances for the character derivative.
    #[arg(long, default_value_t = 100)]
    pub skew_instances: u32,
}

fn random_adele(rng: &mut ChaCha8Rng) -> CliResult<AdeleClassElement> {
    let real = AdeleClassElement::from_real(random_rational(rng, 30, 24));
    if rng.gen_bool(0.3) {
        return Ok(real);
    }
    let g = generic(&[2, 3, 5], 48, rng.gen_range(0..64), 0)?;
    Ok(g.scalar_mul(&random_rational(rng, 6, 5))?.add(&real)?)
}

fn random_phase(rng: &mut ChaCha8Rng, degree: usize) -> CliResult<PhasePolynomial> {
    let c = CircleValue::new(random_rational(rng, 50, 60));
    let coeffs = (0..degree).map(|_| random_adele(rng)).collect::<CliResult<Vec<_>>>()?;
    Ok(PhasePolynomial::new(c, coeffs))
}

fn times(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_rational(rng, 40, 12)).collect()
}

impl PhaseCheckArgs {
    pub fn run(&self, seed: u64) -> CliResult<Outcome> {
        if self.max_degree == 0 || self.max_degree > 8 {
            return Err(config_err("max-degree must be in 1..=8"));
        }
        let mut rng = rng(seed);
        let k_max = self.max_degree;
        let mut passed = [0u32; 4];
        for _ in 0..self.instances {
            // derivative recurrence against pointwise differences
            let deg = rng.gen_range(0..=k_max);
            let phi = random_phase(&mut rng, deg)?;
            let (q, t) = (random_rational(&mut rng, 40, 12), random_rational(&mut rng, 40, 12));
            let direct = &phi.eval(&(&t + &q))? - &phi.eval(&t)?;
            passed[0] += u32::from(phi.derivative(&q)?.eval(&t)? == direct);

            // symmetry under a random transposition
            let k = rng.gen_range(1..=k_max);
            let phi = random_phase(&mut rng, k)?;
            let mut qs = times(&mut rng, k);
            let before = multilinearize(&phi, &qs)?;
            let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
            qs.swap(i, j);
            passed[1] += u32::from(multilinearize(&phi, &qs)? == before);

            // deg ≤ k − 1 forces D^k ≡ 1
            let deg = rng.gen_range(0..k);
            let phi = random_phase(&mut rng, deg)?;
            passed[2] += u32::from(multilinearize(&phi, &times(&mut rng, k))?.is_one());

            // top derivative is the leading form
            let phi = random_phase(&mut rng, k)?;
            let qs = times(&mut rng, phi.degree());
            let top = multilinearize(&phi, &qs)?;
            passed[3] += u32::from(phi.degree() == 0 || phi.leading_coefficient().eval(&qs)? == top);
        }

        let mut skew_passed = 0u32;
        for _ in 0..self.skew_instances {
            let (k, l) = (rng.gen_range(1..=4), rng.gen_range(1..=2));
            let alpha = (0..l).map(|_| random_adele(&mut rng)).collect::<CliResult<Vec<_>>>()?;
            let sys = SkewSystem::new(SkewVariant::QAdelic, k, alpha)?;
            let mut point = || -> CliResult<OrbitPoint> {
                let coords = (0..k)
                    .map(|_| (0..l).map(|_| random_adele(&mut rng)).collect::<CliResult<Vec<_>>>())
                    .collect::<CliResult<Vec<_>>>()?;
                Ok(OrbitPoint { coords })
            };
            let (x, y) = (point()?, point()?);
            let g = CharacterObservable {
                w: (0..k).map(|_| (0..l).map(|_| random_rational(&mut rng, 6, 4)).collect()).collect(),
            };
            let q = random_rational(&mut rng, 30, 12);
            match sys.char_derivative_identity(&g, &q, &x) {
                Ok((c, derived)) => {
                    let lhs = &g.eval(&sys.apply(&q, &y)?)? - &g.eval(&y)?;
                    skew_passed += u32::from(lhs == &c + &derived.eval(&y)?);
                }
                Err(Error::IdentityViolated(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }

        let names = ["derivative_recurrence", "multilinear_symmetry", "kernel", "leading_coefficient"];
        let mut table = Table::new(vec!["identity", "instances", "passed"]);
        let mut checks = Vec::new();
        for (name, &p) in names.iter().zip(&passed) {
            table.push(vec![Cell::text(*name), Cell::int(self.instances), Cell::int(p)]);
            checks.push(Check::new(*name, p == self.instances, Cell::int(p), Cell::int(self.instances)));
        }
        table.push(vec![Cell::text("char_derivative"), Cell::int(self.skew_instances), Cell::int(skew_passed)]);
        checks.push(Check::new(
            "char_derivative",
            skew_passed == self.skew_instances,
            Cell::int(skew_passed),
            Cell::int(self.skew_instances),
        ));
        Ok(Outcome { results: serde_json::Value::Null, checks, table: Some(table) })
    }
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct DerivedSeqArgs {
    /// Power-basis polynomial with zero constant term, e.g. "x^3+x".
    #[arg(long = "P", default_value = "x^2")]
    #[serde(rename = "P")]
    pub p: String,
}

impl DerivedSeqArgs {
    pub fn run(&self) -> CliResult<Outcome> {
        let p: BinomPoly = value(&self.p, "polynomial")?;
        let seq = match p.derived_sequence() {
            Ok(s) => s,
            Err(e @ (Error::ConstantPolynomial | Error::NonzeroConstantTerm)) => return Err(config_err(e.to_string())),
            Err(e) => return Err(e.into()),
        };
        let mut table = Table::new(vec!["j", "degree", "power_form", "binomial_coeffs"]);
        for (j, pj) in seq.iter().enumerate() {
            let coeffs: Vec<String> = pj.coeffs().iter().map(Rational::to_string).collect();
            table.push(vec![Cell::int(j as u64), Cell::int(pj.degree() as u64), Cell::text(pj.to_string()), Cell::text(coeffs.join(" "))]);
        }
        let d = p.degree();
        let expected = factorial(d) * p.leading_power_coeff();
        let last = seq.last().expect("nonempty").to_power();
        let slope = last.get(1).cloned().unwrap_or_else(Rational::zero);
        let checks = vec![Check::new("linear_tail", slope == expected, Cell::rational(&slope), Cell::rational(&expected))];
        Ok(Outcome { results: json!({ "P": p, "sequence": seq }), checks, table: Some(table) })
    }
}
