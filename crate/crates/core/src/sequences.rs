//! Grade sequences driving the recursive constructions.
//!
//! A grade sequence `0 = n_1 < ... < n_k = t` fixes how many heavy vertices
//! each grade's block gets. All inequality checks run in exact rational
//! arithmetic; floors in the recurrences are integer floors of exact values.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{c_r, ceil_u64, floor_u64, int, pow, ratio, to_f64};

/// How a sequence came about; generated sequences carry extra checkable
/// growth guarantees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceOrigin {
    Recurrence,
    Simple,
    Explicit,
}

/// One failed invariant of a sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// 1-based grade index `j` the check refers to, if any.
    pub index: Option<usize>,
    pub message: String,
}

impl Violation {
    fn at(j: usize, message: impl Into<String>) -> Self {
        Violation {
            index: Some(j),
            message: message.into(),
        }
    }

    fn global(message: impl Into<String>) -> Self {
        Violation {
            index: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(j) => write!(f, "j={j}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeSequence {
    pub t: u64,
    pub epsilon: BigRational,
    pub delta: BigRational,
    pub values: Vec<u64>,
    pub origin: SequenceOrigin,
}

impl GradeSequence {
    /// A user-supplied sequence checked against `epsilon`.
    pub fn explicit(t: u64, values: Vec<u64>, epsilon: BigRational) -> Self {
        let delta = &epsilon / int(2);
        GradeSequence {
            t,
            epsilon,
            delta,
            values,
            origin: SequenceOrigin::Explicit,
        }
    }

    /// A user-supplied sequence paired with the smallest epsilon it satisfies.
    pub fn with_minimal_epsilon(t: u64, values: Vec<u64>) -> Self {
        let eps = minimal_epsilon(t, &values);
        Self::explicit(t, values, eps)
    }

    pub fn with_epsilon(mut self, epsilon: BigRational) -> Self {
        self.delta = &epsilon / int(2);
        self.epsilon = epsilon;
        self
    }

    /// Number of grades `k`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Average degree of the grade-(j+1) block, `(n_{j+1}(t-n_j) + (t-n_{j+1}))/t`,
    /// for 1-based `j`.
    pub fn block_average(&self, j: usize) -> BigRational {
        grade_block_average(self.t, self.values[j - 1], self.values[j])
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = structural_violations(self.t, &self.values);
        if !out.is_empty() {
            return out;
        }
        let t = self.t;
        let bound = (ratio(1, 4) + &self.epsilon) * int(t);
        for j in 1..self.values.len() {
            let lhs = self.block_average(j);
            if lhs > bound {
                out.push(Violation::at(
                    j,
                    format!("block average {lhs} exceeds (1/4 + {})·{t} = {bound}", self.epsilon),
                ));
            }
        }
        if self.origin == SequenceOrigin::Recurrence {
            let half = &self.delta / int(2);
            for j in 1..self.values.len() {
                let (nj, next) = (self.values[j - 1], self.values[j]);
                if next < t {
                    // n_{j+1}/t >= (1/4 + delta/2) / (1 - n_j/t)
                    let lower = (ratio(1, 4) + &half) * int(t) * int(t) / int(t - nj);
                    if int(next) < lower {
                        out.push(Violation::at(j, format!("growth step {next} below {lower}")));
                    }
                }
            }
        }
        out
    }
}

/// `(n_{j+1}(t-n_j) + (t-n_{j+1}))/t`.
pub(crate) fn grade_block_average(t: u64, nj: u64, next: u64) -> BigRational {
    ratio(next * (t - nj) + (t - next), t)
}

fn structural_violations(t: u64, values: &[u64]) -> Vec<Violation> {
    let mut out = Vec::new();
    if values.first() != Some(&0) {
        out.push(Violation::global("sequence must start with 0"));
    }
    if values.last() != Some(&t) {
        out.push(Violation::global(format!("sequence must end with t = {t}")));
    }
    for (j, w) in values.windows(2).enumerate() {
        if w[1] <= w[0] {
            out.push(Violation::at(j + 1, format!("{} is not above {}", w[1], w[0])));
        }
    }
    out
}

/// Smallest epsilon with `max_j block_average(j) <= (1/4 + epsilon) t`.
pub fn minimal_epsilon(t: u64, values: &[u64]) -> BigRational {
    let worst = values
        .windows(2)
        .filter(|w| w[0] <= t && w[1] <= t)
        .map(|w| grade_block_average(t, w[0], w[1]))
        .max()
        .unwrap_or_else(BigRational::zero);
    worst / int(t) - ratio(1, 4)
}

/// Smallest admissible `t` for the grade recurrence with `delta = epsilon/2`.
pub fn lemma_min_t(epsilon: &BigRational) -> u64 {
    let a = ceil_u64(&(int(2) / epsilon));
    let b = floor_u64(&(int(4) / epsilon)) + 1;
    a.max(b)
}

/// Iterates `n <- min(floor((1/4+delta) t / (1 - n/t)), t)` from `start`
/// until `n >= 3t/4`, then closes with `t`.
pub(crate) fn lemma_recurrence(t: u64, delta: &BigRational, start: u64) -> Result<Vec<u64>> {
    let mut values = vec![start];
    let coef = ratio(1, 4) + delta;
    while let Some(&n) = values.last() {
        if n >= t {
            break;
        }
        let next = if 4 * n >= 3 * t {
            t
        } else {
            floor_u64(&(&coef * int(t) * int(t) / int(t - n))).min(t)
        };
        if next <= n {
            return Err(Error::parameter(format!(
                "recurrence stalls at {n} for t = {t}, delta = {delta}"
            )));
        }
        values.push(next);
    }
    Ok(values)
}

/// Grade sequence produced by the recurrence with `delta = epsilon/2`.
pub fn lemma_n_sequence(t: u64, epsilon: &BigRational) -> Result<GradeSequence> {
    if *epsilon <= BigRational::zero() {
        return Err(Error::parameter("epsilon must be positive"));
    }
    let min_t = lemma_min_t(epsilon);
    if t < min_t {
        return Err(Error::Parameter {
            message: format!("t = {t} is below the admissible minimum {min_t} for epsilon = {epsilon}"),
            min_t: Some(min_t),
        });
    }
    let delta = epsilon / int(2);
    let values = lemma_recurrence(t, &delta, 0)?;
    Ok(GradeSequence {
        t,
        epsilon: epsilon.clone(),
        delta,
        values,
        origin: SequenceOrigin::Recurrence,
    })
}

/// `0, 1, ..., t`, stored with the smallest epsilon it satisfies.
pub fn simple_sequence(t: u64) -> Result<GradeSequence> {
    if t < 2 {
        return Err(Error::parameter("simple sequence needs t >= 2"));
    }
    let values: Vec<u64> = (0..=t).collect();
    let mut seq = GradeSequence::with_minimal_epsilon(t, values);
    seq.origin = SequenceOrigin::Simple;
    Ok(seq)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergraphGradeSequence {
    pub t: u64,
    pub r: usize,
    pub epsilon: BigRational,
    pub delta: BigRational,
    pub values: Vec<u64>,
    /// The last grade was created by the termination rule.
    pub terminal: bool,
    pub origin: SequenceOrigin,
}

impl HypergraphGradeSequence {
    /// A user-supplied sequence paired with the smallest epsilon it satisfies.
    pub fn with_minimal_epsilon(t: u64, r: usize, values: Vec<u64>) -> Self {
        let scale = c_r(r) * pow(&int(t), r as u32);
        let worst = values
            .windows(2)
            .filter(|w| w[0] <= t && w[1] <= t)
            .map(|w| hyper_block_load(t, r, w[0], w[1]))
            .max()
            .unwrap_or_default();
        let epsilon = int(worst) / scale - BigRational::one();
        let delta = &epsilon * ratio(5, 6);
        HypergraphGradeSequence {
            t,
            r,
            epsilon,
            delta,
            values,
            terminal: false,
            origin: SequenceOrigin::Explicit,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Stretched edges meeting a grade-(j+1) block, for 1-based `j`.
    pub fn block_load(&self, j: usize) -> BigInt {
        hyper_block_load(self.t, self.r, self.values[j - 1], self.values[j])
    }

    /// `ceil(log_{1+eps/3}(2/eps + 2)) + 2`.
    pub fn grade_count_bound(&self) -> usize {
        let e = to_f64(&self.epsilon);
        ((2.0 / e + 2.0).ln() / (1.0 + e / 3.0).ln()).ceil() as usize + 2
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = structural_violations(self.t, &self.values);
        if !out.is_empty() {
            return out;
        }
        let (t, r) = (self.t, self.r);
        let cr = c_r(r);
        let bound = (BigRational::one() + &self.epsilon) * &cr * pow(&int(t), r as u32);
        for j in 1..self.values.len() {
            let load = int(self.block_load(j));
            if load > bound {
                out.push(Violation::at(
                    j,
                    format!("block load {load} exceeds (1+ε)c_r t^r = {bound}"),
                ));
            }
        }
        let k = self.values.len();
        if self.terminal {
            let last = self.values[k - 2];
            if pow(&int(t - last), r as u32 - 1) > &cr * pow(&int(t), r as u32 - 1) {
                out.push(Violation::at(k - 1, "termination rule fired too early"));
            }
        }
        for i in 1..100u64 {
            let x = ratio(i, 100);
            if pow(&(BigRational::one() - &x), r as u32 - 1) * &x > cr {
                out.push(Violation::global(format!("(1-x)^(r-1) x exceeds c_r at x = {x}")));
            }
        }
        if self.origin == SequenceOrigin::Recurrence {
            if k >= 2 && int(self.values[1]) < &self.epsilon * int(t) / int(2) {
                out.push(Violation::at(1, format!("n_2 = {} is below εt/2", self.values[1])));
            }
            let growth = BigRational::one() + &self.delta / int(2);
            for j in 2..k {
                let (nj, next) = (self.values[j - 1], self.values[j]);
                if next < t && int(next) < &growth * int(nj) {
                    out.push(Violation::at(
                        j,
                        format!("n_{} = {next} grew by less than 1+δ/2", j + 1),
                    ));
                }
            }
            if k > self.grade_count_bound() {
                out.push(Violation::global(format!(
                    "{k} grades exceed the bound {}",
                    self.grade_count_bound()
                )));
            }
        }
        out
    }
}

/// `n_{j+1}(t-n_j)^{r-1} + (t-n_{j+1})^{r-1}`.
pub(crate) fn hyper_block_load(t: u64, r: usize, nj: u64, next: u64) -> BigInt {
    let e = r as u32 - 1;
    BigInt::from(next) * BigInt::from(t - nj).pow(e) + BigInt::from(t - next).pow(e)
}

/// Smallest `t` with `t^{r-1} + (1+δ)c_r t^r <= (1+ε)c_r t^r` for `δ = 5ε/6`.
pub fn hypergraph_min_t(r: usize, epsilon: &BigRational) -> u64 {
    let delta = epsilon * ratio(5, 6);
    ceil_u64(&(BigRational::one() / ((epsilon - delta) * c_r(r))))
}

/// Recurrence `n <- min(floor((1+δ) c_r t^r / (t-n)^{r-1}), t)` with the
/// termination rule `(t-n)^{r-1} <= c_r t^{r-1}`. Returns values and
/// whether the termination rule produced the last grade.
pub(crate) fn hypergraph_recurrence(t: u64, r: usize, delta: &BigRational, start: u64) -> Result<(Vec<u64>, bool)> {
    let cr = c_r(r);
    let e = r as u32 - 1;
    let tr = pow(&int(t), r as u32);
    let threshold = &cr * pow(&int(t), e);
    let coef = (BigRational::one() + delta) * &cr;
    let mut values = vec![start];
    let mut terminal = false;
    while let Some(&n) = values.last() {
        if n >= t {
            break;
        }
        if pow(&int(t - n), e) <= threshold {
            values.push(t);
            terminal = true;
            break;
        }
        let next = floor_u64(&(&coef * &tr / pow(&int(t - n), e))).min(t);
        if next <= n {
            return Err(Error::parameter(format!(
                "hypergraph recurrence stalls at {n} for t = {t}, r = {r}"
            )));
        }
        values.push(next);
    }
    Ok((values, terminal))
}

pub fn hypergraph_sequence(t: u64, r: usize, epsilon: &BigRational) -> Result<HypergraphGradeSequence> {
    if r < 2 {
        return Err(Error::parameter("uniformity must be at least 2"));
    }
    let cr = c_r(r);
    if *epsilon <= BigRational::zero() || *epsilon >= &cr / int(2) {
        return Err(Error::parameter(format!(
            "epsilon must lie in (0, c_r/2) = (0, {})",
            &cr / int(2)
        )));
    }
    let min_t = hypergraph_min_t(r, epsilon);
    if t < min_t {
        return Err(Error::Parameter {
            message: format!("t = {t} is below the admissible minimum {min_t} for r = {r}, epsilon = {epsilon}"),
            min_t: Some(min_t),
        });
    }
    let delta = epsilon * ratio(5, 6);
    let (values, terminal) = hypergraph_recurrence(t, r, &delta, 0)?;
    Ok(HypergraphGradeSequence {
        t,
        r,
        epsilon: epsilon.clone(),
        delta,
        values,
        terminal,
        origin: SequenceOrigin::Recurrence,
    })
}

/// Either kind of grade sequence, for [`validate_sequence`].
pub enum AnySequence<'a> {
    Graph(&'a GradeSequence),
    Hypergraph(&'a HypergraphGradeSequence),
}

impl<'a> From<&'a GradeSequence> for AnySequence<'a> {
    fn from(s: &'a GradeSequence) -> Self {
        AnySequence::Graph(s)
    }
}

impl<'a> From<&'a HypergraphGradeSequence> for AnySequence<'a> {
    fn from(s: &'a HypergraphGradeSequence) -> Self {
        AnySequence::Hypergraph(s)
    }
}

/// Empty iff every invariant of the sequence holds exactly.
pub fn validate_sequence<'a>(seq: impl Into<AnySequence<'a>>) -> Vec<Violation> {
    match seq.into() {
        AnySequence::Graph(s) => s.violations(),
        AnySequence::Hypergraph(s) => s.violations(),
    }
}

/// `ceil(n t / (2(n-1)))`, the largest maximum degree that forces an
/// independent transversal for every t-thick partition into `n` blocks.
pub fn haxell_threshold(n: u64, t: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::parameter("haxell_threshold needs n >= 2"));
    }
    Ok(ceil_u64(&ratio(n * t, 2 * (n - 1))))
}
