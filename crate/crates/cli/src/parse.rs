//! Parameter parsing: ranges, lists, set and hypergraph specs, JSON inputs.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use sumset_core::dynsys::ClassBox;
use sumset_core::folner::{return_time_set, RationalSetPredicate};
use sumset_core::ramseycomb::OrderedHypergraph;
use sumset_core::{Error, Rational};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, parameters or config files.
    Config(String),
    Module(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "{m}"),
            CliError::Module(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) | Error::InvalidInput(m) => CliError::Config(m),
            e => CliError::Module(e),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

pub fn value<T: FromStr>(s: &str, what: &str) -> CliResult<T>
where
    T::Err: fmt::Display,
{
    s.trim().parse().map_err(|e| config_err(format!("bad {what} {s:?}: {e}")))
}

pub fn list<T: FromStr>(s: &str, what: &str) -> CliResult<Vec<T>>
where
    T::Err: fmt::Display,
{
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|p| value(p, what)).collect()
}

/// `"3..6"` (inclusive, empty when reversed), `"3"` or `"3,5,6"`.
pub fn range(s: &str) -> CliResult<Vec<u32>> {
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (u32, u32) = (value(a, "range start")?, value(b, "range end")?);
        return Ok((a..=b).collect());
    }
    list(s, "range value")
}

/// Inline JSON when the argument starts with `{` or `[`, otherwise a file path.
pub fn json_input<T: DeserializeOwned>(arg: &str, what: &str) -> CliResult<T> {
    let t = arg.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| config_err(format!("cannot read {what} file {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| config_err(format!("bad {what} JSON: {e}")))
}

/// `delta:<δ>`, `integers` or `all`.
pub fn rational_set(spec: &str) -> CliResult<RationalSetPredicate> {
    match spec.split_once(':') {
        Some(("delta", d)) => Ok(return_time_set(&value(d, "delta")?)?),
        None if spec == "integers" => Ok(RationalSetPredicate::from_fn("integers", Rational::is_integer)),
        None if spec == "all" => Ok(RationalSetPredicate::all()),
        _ => Err(config_err(format!("unknown set {spec:?} (expected delta:<δ>, integers or all)"))),
    }
}

/// `whole` or an open real-angle arc `lo,hi`.
pub fn class_box(spec: &str) -> CliResult<ClassBox> {
    if spec == "whole" {
        return Ok(ClassBox::whole());
    }
    let ends: Vec<Rational> = list(spec, "box end")?;
    let [lo, hi] = <[Rational; 2]>::try_from(ends).map_err(|_| config_err(format!("box {spec:?} needs lo,hi")))?;
    Ok(ClassBox::arc(lo, hi)?)
}

/// `path<m>`, `edge:<l>`, `efs:<d>`, `complete:<m>:<l>`, or hypergraph JSON.
pub fn hypergraph(spec: &str) -> CliResult<OrderedHypergraph> {
    if let Some(m) = spec.strip_prefix("path") {
        if let Ok(m) = m.parse::<usize>() {
            if m < 2 {
                return Err(config_err("a path needs at least 2 vertices"));
            }
            return Ok(OrderedHypergraph::monotone_path(m));
        }
    }
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["edge", l] => Ok(OrderedHypergraph::single_edge(value(l, "uniformity")?)),
        ["efs", d] => Ok(OrderedHypergraph::efs(value(d, "d")?)?),
        ["complete", m, l] => Ok(OrderedHypergraph::complete(value(m, "m")?, value(l, "l")?)?),
        _ => json_input(spec, "hypergraph"),
    }
}

/// A predicate on positive integers together with the name it was built from.
pub struct IntegerSet {
    pub name: String,
    member: Box<dyn Fn(u64) -> bool>,
}

impl IntegerSet {
    pub fn contains(&self, x: u64) -> bool {
        (self.member)(x)
    }
}

/// `evens`, `all`, `mod:<m>:<r1>,<r2>…`, or `syndetic:<gap>` (random, from `seed`).
pub fn integer_set(spec: &str, seed: u64, horizon: u64) -> CliResult<IntegerSet> {
    let name = spec.to_string();
    let parts: Vec<&str> = spec.splitn(3, ':').collect();
    let member: Box<dyn Fn(u64) -> bool> = match parts.as_slice() {
        ["evens"] => Box::new(|x| x % 2 == 0),
        ["all"] => Box::new(|_| true),
        ["mod", m, rs] => {
            let m: u64 = value(m, "modulus")?;
            if m == 0 {
                return Err(config_err("modulus must be positive"));
            }
            let rs: Vec<u64> = list(rs, "residue")?;
            Box::new(move |x| rs.contains(&(x % m)))
        }
        ["syndetic", gap] => {
            let members = random_syndetic(value(gap, "gap")?, seed, horizon)?;
            Box::new(move |x| members.get(x as usize).copied().unwrap_or(false))
        }
        _ => return Err(config_err(format!("unknown integer set {spec:?}"))),
    };
    Ok(IntegerSet { name, member })
}

/// Membership flags for `0..=horizon`: after each member the next one is
/// `1..=gap` further on, uniformly.
pub fn random_syndetic(gap: u64, seed: u64, horizon: u64) -> CliResult<Vec<bool>> {
    if gap == 0 {
        return Err(config_err("gap must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut flags = vec![false; horizon as usize + 1];
    let mut x = rng.gen_range(0..gap);
    while x <= horizon {
        flags[x as usize] = true;
        x += rng.gen_range(1..=gap);
    }
    Ok(flags)
}
