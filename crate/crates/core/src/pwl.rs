//! Piecewise-linear paths given by breakpoints: discrete areas, trapezoid
//! integrals, Chen signatures and CSV loading.

use std::io::Read;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::tensor::TensorElem;
use crate::trees::AreaTree;
use crate::word::Letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarMode {
    ExactRational,
    Float64,
}

impl ScalarMode {
    fn join(self, other: ScalarMode) -> ScalarMode {
        if self == ScalarMode::Float64 || other == ScalarMode::Float64 {
            ScalarMode::Float64
        } else {
            ScalarMode::ExactRational
        }
    }
}

/// Values `v₀ = 0, v₁, …, vₙ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarSeries {
    mode: ScalarMode,
    values: Vec<Scalar>,
}

impl ScalarSeries {
    pub fn new(mode: ScalarMode, values: Vec<Scalar>) -> Result<Self> {
        match values.first() {
            Some(v) if v.is_zero() => Ok(ScalarSeries { mode, values }),
            Some(_) => Err(Error::Precondition("series must start at 0".into())),
            None => Err(Error::Precondition("series must be nonempty".into())),
        }
    }

    pub fn exact(values: Vec<Scalar>) -> Result<Self> {
        Self::new(ScalarMode::ExactRational, values)
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn last(&self) -> &Scalar {
        self.values.last().expect("nonempty")
    }

    fn check_len(&self, other: &ScalarSeries) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(())
    }

    /// `{"mode": …, "values": […]}`; exact values are strings, float values numbers.
    pub fn to_json(&self) -> String {
        let values: Vec<serde_json::Value> = match self.mode {
            ScalarMode::ExactRational => self.values.iter().map(|v| scalar::format(v).into()).collect(),
            ScalarMode::Float64 => self.values.iter().map(|v| v.to_f64().unwrap_or(f64::NAN).into()).collect(),
        };
        serde_json::json!({ "mode": self.mode, "values": values }).to_string()
    }
}

/// Breakpoints `x₀ = 0, x₁, …, xₙ` in `ℝ^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeSeries {
    d: u32,
    mode: ScalarMode,
    points: Vec<Vec<Scalar>>,
    prepended_origin: bool,
}

impl TimeSeries {
    /// Points must start at the origin.
    pub fn new(d: u32, points: Vec<Vec<Scalar>>) -> Result<Self> {
        Self::build(d, ScalarMode::ExactRational, points, false)
    }

    /// Prepends the origin unless the first point already is the origin.
    pub fn anchored(d: u32, mode: ScalarMode, mut points: Vec<Vec<Scalar>>) -> Result<Self> {
        let prepend = points.first().is_none_or(|p| p.iter().any(|x| !x.is_zero()));
        if prepend {
            points.insert(0, vec![Scalar::zero(); d as usize]);
        }
        Self::build(d, mode, points, prepend)
    }

    fn build(d: u32, mode: ScalarMode, points: Vec<Vec<Scalar>>, prepended_origin: bool) -> Result<Self> {
        if d == 0 {
            return Err(Error::Precondition("dimension must be positive".into()));
        }
        for p in &points {
            if p.len() != d as usize {
                return Err(Error::LengthMismatch { left: p.len(), right: d as usize });
            }
        }
        match points.first() {
            Some(p) if p.iter().all(Zero::is_zero) => Ok(TimeSeries { d, mode, points, prepended_origin }),
            _ => Err(Error::Precondition("time series must start at the origin".into())),
        }
    }

    pub fn dimension(&self) -> u32 {
        self.d
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn points(&self) -> &[Vec<Scalar>] {
        &self.points
    }

    pub fn prepended_origin(&self) -> bool {
        self.prepended_origin
    }

    pub fn segments(&self) -> usize {
        self.points.len() - 1
    }

    /// The series of the `i`-th coordinate, `1 ≤ i ≤ d`.
    pub fn coordinate(&self, i: Letter) -> Result<ScalarSeries> {
        if i == 0 || i as u32 > self.d {
            return Err(Error::LetterOutOfRange { letter: i as u32, d: self.d });
        }
        ScalarSeries::new(self.mode, self.points.iter().map(|p| p[i as usize - 1].clone()).collect())
    }

    pub fn increments(&self) -> Vec<Vec<Scalar>> {
        self.points.windows(2).map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| b - a).collect()).collect()
    }

    /// Breakpoints `0..=k` and the remainder re-anchored at the origin.
    pub fn split(&self, k: usize) -> Result<(TimeSeries, TimeSeries)> {
        if k > self.segments() {
            return Err(Error::Precondition(format!("split point {k} beyond {} segments", self.segments())));
        }
        let head = self.points[..=k].to_vec();
        let base = &self.points[k];
        let tail = self.points[k..].iter().map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        Ok((
            TimeSeries { d: self.d, mode: self.mode, points: head, prepended_origin: false },
            TimeSeries { d: self.d, mode: self.mode, points: tail, prepended_origin: false },
        ))
    }
}

/// `DiscreteArea(a,b)_ℓ = Σ_{i<ℓ} (aᵢ bᵢ₊₁ − aᵢ₊₁ bᵢ)`.
pub fn discrete_area(a: &ScalarSeries, b: &ScalarSeries) -> Result<ScalarSeries> {
    a.check_len(b)?;
    let mut acc = Scalar::zero();
    let mut values = vec![acc.clone()];
    for i in 0..a.len() - 1 {
        acc += &a.values[i] * &b.values[i + 1] - &a.values[i + 1] * &b.values[i];
        values.push(acc.clone());
    }
    ScalarSeries::new(a.mode.join(b.mode), values)
}

/// `Σ_{i<ℓ} ½(aᵢ + aᵢ₊₁)(bᵢ₊₁ − bᵢ)`.
pub fn discrete_integral(a: &ScalarSeries, b: &ScalarSeries) -> Result<ScalarSeries> {
    a.check_len(b)?;
    let half = scalar::q(1, 2);
    let mut acc = Scalar::zero();
    let mut values = vec![acc.clone()];
    for i in 0..a.len() - 1 {
        acc += &half * (&a.values[i] + &a.values[i + 1]) * (&b.values[i + 1] - &b.values[i]);
        values.push(acc.clone());
    }
    ScalarSeries::new(a.mode.join(b.mode), values)
}

/// Bracketing of coordinate series along `tree` with [`discrete_area`].
pub fn discrete_area_tree(tree: &AreaTree, x: &TimeSeries) -> Result<ScalarSeries> {
    match tree {
        AreaTree::Leaf(i) => x.coordinate(*i),
        AreaTree::Node(l, r) => discrete_area(&discrete_area_tree(l, x)?, &discrete_area_tree(r, x)?),
    }
}

/// `Σ cᵢ DiscreteArea(τᵢ, x)` plus the constant, for an expansion produced
/// by [`crate::span::area_tree_expansion`].
pub fn discrete_expansion_series(constant: &Scalar, terms: &[(AreaTree, Scalar)], x: &TimeSeries) -> Result<ScalarSeries> {
    let mut values = vec![constant.clone(); x.points.len()];
    for (tree, c) in terms {
        for (v, s) in values.iter_mut().zip(discrete_area_tree(tree, x)?.values) {
            *v += c * s;
        }
    }
    Ok(ScalarSeries { mode: x.mode, values })
}

fn segment_signature(d: u32, inc: &[Scalar], level: usize) -> Result<TensorElem> {
    let step = TensorElem::from_terms(d, inc.iter().enumerate().map(|(j, c)| (crate::word::Word::letter(j as Letter + 1), c.clone())))?;
    step.exp_conc(level)
}

/// Signatures `S(X)_{0,tₖ}` at every breakpoint, truncated at `level`.
pub fn signature_prefixes(x: &TimeSeries, level: usize) -> Result<Vec<TensorElem>> {
    if level == 0 {
        return Err(Error::Precondition("signature level must be at least 1".into()));
    }
    let mut acc = TensorElem::unit(x.d);
    let mut out = vec![acc.clone()];
    for inc in x.increments() {
        acc = acc.concat(&segment_signature(x.d, &inc, level)?)?.truncate(level);
        out.push(acc.clone());
    }
    Ok(out)
}

/// Truncated signature of the piecewise-linear interpolation of `x`.
pub fn signature_pwl(x: &TimeSeries, level: usize) -> Result<TensorElem> {
    Ok(signature_prefixes(x, level)?.pop().expect("origin present"))
}

/// A path on which the iterated trapezoid integral misses `⟨123, S⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationWitness {
    pub path: TimeSeries,
    pub iterated: Scalar,
    pub signature: Scalar,
}

/// `DiscreteIntegral(DiscreteIntegral(x¹,x²),x³)` at the final breakpoint.
pub fn iterated_discrete_integral(x: &TimeSeries) -> Result<Scalar> {
    let inner = discrete_integral(&x.coordinate(1)?, &x.coordinate(2)?)?;
    Ok(discrete_integral(&inner, &x.coordinate(3)?)?.last().clone())
}

/// Exhaustive search over two-segment paths in `ℝ³` with increments in
/// `{-1,0,1}³`, returning the first path where iteration fails.
pub fn find_iteration_witness() -> Result<Option<IterationWitness>> {
    let word = TensorElem::from_word(3, crate::word::Word::new(vec![1, 2, 3]))?;
    let incs: Vec<Vec<Scalar>> = (0..27)
        .map(|k: i64| vec![scalar::int(k % 3 - 1), scalar::int(k / 3 % 3 - 1), scalar::int(k / 9 - 1)])
        .collect();
    for u in &incs {
        for v in &incs {
            let p1 = u.clone();
            let p2: Vec<Scalar> = u.iter().zip(v).map(|(a, b)| a + b).collect();
            let path = TimeSeries::new(3, vec![vec![Scalar::zero(); 3], p1, p2])?;
            let iterated = iterated_discrete_integral(&path)?;
            let signature = signature_pwl(&path, 3)?.pairing(&word)?;
            if iterated != signature {
                return Ok(Some(IterationWitness { path, iterated, signature }));
            }
        }
    }
    Ok(None)
}

/// Reads breakpoints from CSV, one row per point. A first row that does not
/// parse as numbers is taken as a header. All tokens are read as exact
/// rationals when possible, otherwise every token is read as `f64`.
pub fn load_timeseries(source: impl Read) -> Result<TimeSeries> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(source);
    let mut rows: Vec<Vec<String>> = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::Csv(e.to_string()))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        rows.push(rec.iter().map(str::to_owned).collect());
    }
    let numeric = |t: &str| scalar::parse(t).is_ok() || t.parse::<f64>().is_ok_and(f64::is_finite);
    if rows.first().is_some_and(|r| !r.iter().all(|t| numeric(t))) {
        rows.remove(0);
    }
    let Some(first) = rows.first() else {
        return Err(Error::Csv("no data rows".into()));
    };
    let d = first.len();
    if let Some((k, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != d) {
        return Err(Error::Csv(format!("row {} has {} fields, expected {d}", k + 1, r.len())));
    }
    let exact = rows.iter().flatten().all(|t| scalar::parse(t).is_ok());
    let (mode, points) = if exact {
        let pts = rows.iter().map(|r| r.iter().map(|t| scalar::parse(t)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        (ScalarMode::ExactRational, pts)
    } else {
        let float = |t: &String| {
            t.parse::<f64>()
                .ok()
                .and_then(BigRational::from_float)
                .ok_or_else(|| Error::Csv(format!("unparseable token {t:?}")))
        };
        let pts = rows.iter().map(|r| r.iter().map(float).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        (ScalarMode::Float64, pts)
    };
    TimeSeries::anchored(d as u32, mode, points)
}
