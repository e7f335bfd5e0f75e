use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, RootedBall};

/// Return probabilities `p_{2n}(o, o)` for `2n = 2, 4, .., 2N`.
#[derive(Debug, Clone, Serialize)]
pub struct ReturnSeries {
    pub origin: String,
    pub half_steps: usize,
    /// Exact values, when the rational dynamic program was used.
    #[serde(serialize_with = "ser_exact")]
    pub exact: Option<Vec<BigRational>>,
    pub values: Vec<f64>,
    /// `p_{2n}^{1/(2n)}`.
    pub estimates: Vec<f64>,
}

fn ser_exact<S: Serializer>(v: &Option<Vec<BigRational>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(xs) => s.collect_seq(xs.iter().map(|x| x.to_string())),
        None => s.serialize_none(),
    }
}

impl ReturnSeries {
    /// `p_{2n}` as a float, `n` from 1.
    pub fn p(&self, n: usize) -> f64 {
        self.values[n - 1]
    }

    pub fn exact_p(&self, n: usize) -> Option<&BigRational> {
        self.exact.as_ref().map(|v| &v[n - 1])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("return series JSON serialization")
    }

    /// `two_n,p,estimate` rows for plotting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("two_n,p,estimate\n");
        for (i, (p, e)) in self.values.iter().zip(&self.estimates).enumerate() {
            out.push_str(&format!("{},{},{}\n", 2 * (i + 1), p, e));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkOptions {
    /// Try exact rational arithmetic.
    pub exact: bool,
    /// Above this many ball vertices, use floats.
    pub exact_vertex_cap: usize,
}

impl Default for WalkOptions {
    fn default() -> Self {
        WalkOptions { exact: true, exact_vertex_cap: 250_000 }
    }
}

impl WalkOptions {
    pub fn floats() -> Self {
        WalkOptions { exact: false, ..Self::default() }
    }
}

/// Denominators beyond `2^EXACT_BITS` switch the dynamic program to floats.
const EXACT_BITS: f64 = 1024.0;

/// Return probabilities of the simple random walk on a finite graph.
pub fn return_probabilities_graph(
    g: &MultiGraph,
    root: usize,
    half_steps: usize,
    options: WalkOptions,
) -> Result<ReturnSeries> {
    g.require_vertex(root)?;
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) == 0) {
        return Err(Error::ZeroDegree(v));
    }
    let dist = g.distances_from(root);
    let degrees = g.degrees();
    run(g, root, &degrees, &dist, half_steps, options, format!("graph vertex {root}"))
}

/// Return probabilities at the root of a ball. A returning walk of length
/// `2n` stays within distance `n`, so a ball of radius at least `N` gives
/// exact values; boundary vertices use their ambient degrees.
pub fn return_probabilities_ball(ball: &RootedBall, half_steps: usize, options: WalkOptions) -> Result<ReturnSeries> {
    if ball.radius < half_steps && !ball.is_complete() {
        return Err(Error::invalid(format!("ball radius {} is smaller than {} half-steps", ball.radius, half_steps)));
    }
    if let Some(v) = ball.ambient_degree.iter().position(|&d| d == 0) {
        if ball.vertex_count() > 1 || half_steps > 0 {
            return Err(Error::ZeroDegree(v));
        }
    }
    run(
        &ball.graph,
        ball.root,
        &ball.ambient_degree,
        &ball.dist,
        half_steps,
        options,
        format!("ball root (radius {})", ball.radius),
    )
}

fn run(
    g: &MultiGraph,
    root: usize,
    degrees: &[usize],
    dist: &[usize],
    half_steps: usize,
    options: WalkOptions,
    origin: String,
) -> Result<ReturnSeries> {
    if half_steps == 0 {
        return Err(Error::invalid("need at least one half-step"));
    }
    let steps = 2 * half_steps;
    let lcm = degrees.iter().fold(1u64, |acc, &d| lcm(acc, d as u64));
    let bits = steps as f64 * (lcm as f64).log2();
    let exact = options.exact && g.vertex_count() <= options.exact_vertex_cap && bits <= EXACT_BITS;
    let exact_values = if !exact {
        None
    } else if bits < 126.0 {
        Some(integer_dp::<u128>(g, root, degrees, dist, steps, lcm))
    } else {
        Some(integer_dp::<BigUint>(g, root, degrees, dist, steps, lcm))
    };
    let values: Vec<f64> = match &exact_values {
        Some(xs) => xs.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect(),
        None => float_dp(g, root, degrees, dist, steps),
    };
    let estimates = values.iter().enumerate().map(|(i, p)| p.powf(1.0 / (2 * (i + 1)) as f64)).collect();
    Ok(ReturnSeries { origin, half_steps, exact: exact_values, values, estimates })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        a / gcd(a, b) * b
    }
}

trait Count: Clone + Zero {
    fn unit() -> Self;
    fn add_scaled(&mut self, x: &Self, c: u64);
    fn into_big(self) -> BigUint;
}

impl Count for u128 {
    fn unit() -> Self {
        1
    }
    fn add_scaled(&mut self, x: &Self, c: u64) {
        *self += x * c as u128;
    }
    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl Count for BigUint {
    fn unit() -> Self {
        BigUint::one()
    }
    fn add_scaled(&mut self, x: &Self, c: u64) {
        *self += x * c;
    }
    fn into_big(self) -> BigUint {
        self
    }
}

/// Walk counts weighted so that the mass at step `k` is an integer over
/// `lcm^k`. Mass that can no longer return by the final step is dropped.
fn integer_dp<T: Count>(
    g: &MultiGraph,
    root: usize,
    degrees: &[usize],
    dist: &[usize],
    steps: usize,
    lcm: u64,
) -> Vec<BigRational> {
    let n = g.vertex_count();
    let weight: Vec<u64> = degrees.iter().map(|&d| if d == 0 { 0 } else { lcm / d as u64 }).collect();
    let mut cur = vec![T::zero(); n];
    let mut next = vec![T::zero(); n];
    cur[root] = T::unit();
    let mut out = Vec::with_capacity(steps / 2);
    let mut denominator = BigUint::one();
    for k in 0..steps {
        next.iter_mut().for_each(|x| *x = T::zero());
        let horizon = steps - (k + 1);
        for v in 0..n {
            if cur[v].is_zero() {
                continue;
            }
            for w in g.neighbors(v) {
                if dist[w] <= horizon {
                    next[w].add_scaled(&cur[v], weight[v]);
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
        denominator *= lcm;
        if (k + 1) % 2 == 0 {
            let numerator = cur[root].clone().into_big();
            out.push(BigRational::new(numerator.into(), denominator.clone().into()));
        }
    }
    out
}

fn float_dp(g: &MultiGraph, root: usize, degrees: &[usize], dist: &[usize], steps: usize) -> Vec<f64> {
    let n = g.vertex_count();
    let inv_degree: Vec<f64> = degrees.iter().map(|&d| if d == 0 { 0.0 } else { 1.0 / d as f64 }).collect();
    let mut cur = vec![0.0; n];
    let mut next = vec![0.0; n];
    cur[root] = 1.0;
    let mut out = Vec::with_capacity(steps / 2);
    for k in 0..steps {
        next.iter_mut().for_each(|x| *x = 0.0);
        let horizon = steps - (k + 1);
        for v in 0..n {
            let m = cur[v];
            if m == 0.0 {
                continue;
            }
            let share = m * inv_degree[v];
            for w in g.neighbors(v) {
                if dist[w] <= horizon {
                    next[w] += share;
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
        if (k + 1) % 2 == 0 {
            out.push(cur[root]);
        }
    }
    out
}
