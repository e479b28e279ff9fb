//! Exact word densities of regular languages.
//!
//! For a language `L` over `A` and `n ≥ 0`:
//!
//! * `μₙ  = |L ∩ Aⁿ| / |Aⁿ|`
//! * `μ*ₙ = |L ∩ A^{<n}| / |A^{<n}|`, with `μ*₀ = 0`
//! * `δₙ  = (μ₀ + … + μₙ₋₁) / n`, with `δ₀ = 0`
//!
//! All values are exact reduced rationals.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::analysis::{reachable_states, sccs};
use crate::automata::Dfa;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_HORIZON: usize = 2000;

/// Largest structural period tried by [`residue_probe`].
pub const MAX_PERIOD: usize = 64;

/// Number of accepted words of length `n`, by iterating the per-state count
/// vector `n` times.
pub fn count_words(d: &Dfa, n: usize) -> BigUint {
    let mut counts = CountVector::new(d);
    for _ in 0..n {
        counts.step(d);
    }
    counts.accepted(d)
}

struct CountVector {
    v: Vec<BigUint>,
}

impl CountVector {
    fn new(d: &Dfa) -> Self {
        let mut v = vec![BigUint::zero(); d.state_count()];
        v[d.initial()] = BigUint::from(1u8);
        CountVector { v }
    }

    fn step(&mut self, d: &Dfa) {
        let mut next = vec![BigUint::zero(); self.v.len()];
        for (q, c) in self.v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for a in 0..d.alphabet().len() {
                next[d.next(q, a)] += c;
            }
        }
        self.v = next;
    }

    fn accepted(&self, d: &Dfa) -> BigUint {
        d.accepting_states().map(|q| &self.v[q]).sum()
    }
}

/// Densities of one language for every length `0..=horizon`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub alphabet_size: usize,
    pub horizon: usize,
    pub counts: Vec<BigUint>,
    pub mu: Vec<BigRational>,
    pub mu_star: Vec<BigRational>,
    pub delta: Vec<BigRational>,
}

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// Computes `μₙ`, `μ*ₙ` and `δₙ` for `n = 0..=horizon`.
pub fn profile(d: &Dfa, horizon: usize, max_horizon: usize) -> Result<DensityProfile> {
    if horizon == 0 {
        return Err(Error::InvalidInput("horizon must be at least 1".into()));
    }
    if horizon > max_horizon {
        return Err(Error::LimitExceeded {
            what: "density horizon",
            limit: max_horizon as u64,
            actual: horizon as u64,
        });
    }
    let k = BigUint::from(d.alphabet().len());
    let mut counts = Vec::with_capacity(horizon + 1);
    let mut mu = Vec::with_capacity(horizon + 1);
    let mut mu_star = Vec::with_capacity(horizon + 1);
    let mut delta = Vec::with_capacity(horizon + 1);

    let mut vector = CountVector::new(d);
    let mut words = BigUint::from(1u8); // |A|^n
    let mut below_count = BigUint::zero(); // |L ∩ A^{<n}|
    let mut below_words = BigUint::zero(); // |A^{<n}|
    let mut mu_sum = BigRational::zero();
    for n in 0..=horizon {
        if n > 0 {
            vector.step(d);
            words *= &k;
        }
        let c = vector.accepted(d);
        let m = ratio(&c, &words);
        mu_star.push(if n == 0 {
            BigRational::zero()
        } else {
            ratio(&below_count, &below_words)
        });
        delta.push(if n == 0 {
            BigRational::zero()
        } else {
            &mu_sum / BigInt::from(n)
        });
        below_count += &c;
        below_words += &words;
        mu_sum += &m;
        counts.push(c);
        mu.push(m);
    }
    Ok(DensityProfile {
        alphabet_size: d.alphabet().len(),
        horizon,
        counts,
        mu,
        mu_star,
        delta,
    })
}

impl DensityProfile {
    /// CSV with one row per length. Rationals are written reduced; the last
    /// column is a floating point rendering of `μₙ` for convenience.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "n,count,mu_num,mu_den,mu_star_num,mu_star_den,delta_num,delta_den,mu_float\n",
        );
        for n in 0..=self.horizon {
            let (m, s, d) = (&self.mu[n], &self.mu_star[n], &self.delta[n]);
            writeln!(
                out,
                "{n},{},{},{},{},{},{},{},{}",
                self.counts[n],
                m.numer(),
                m.denom(),
                s.numer(),
                s.denom(),
                d.numer(),
                d.denom(),
                m.to_f64().unwrap_or(f64::NAN)
            )
            .expect("writing to a string");
        }
        out
    }
}

/// Outcome of [`residue_probe`].
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueProbe {
    /// Candidate period `a`.
    pub period: usize,
    /// The structural period exceeded [`MAX_PERIOD`] and `period` was chosen
    /// empirically from the density sequence instead.
    pub fallback: bool,
    /// `μ` at the largest sampled length congruent to `b` modulo `period`.
    pub estimates: Vec<BigRational>,
    /// Spread (max − min) of the last four samples of each residue class.
    pub oscillation: Vec<BigRational>,
}

/// Period of one strongly connected component: gcd of all cycle lengths,
/// computed from breadth-first levels as the gcd of `level(u) + 1 − level(v)`
/// over internal edges `u → v`.
fn component_period(d: &Dfa, members: &[usize], component: &[Option<usize>], id: usize) -> usize {
    let mut level = vec![usize::MAX; d.state_count()];
    let root = members[0];
    level[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut g = 0usize;
    while let Some(u) = queue.pop_front() {
        for a in 0..d.alphabet().len() {
            let v = d.next(u, a);
            if component[v] != Some(id) {
                continue;
            }
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            } else {
                g = g.gcd(&(level[u] + 1).abs_diff(level[v]));
            }
        }
    }
    g
}

/// Structural candidate for the residue period: lcm over reachable cyclic
/// components of their periods.
pub fn structural_period(d: &Dfa) -> usize {
    let scc = sccs(d);
    let mut period = 1usize;
    for (id, members) in scc.components.iter().enumerate() {
        if scc.is_cyclic[id] {
            let p = component_period(d, members, &scc.component, id).max(1);
            period = period.lcm(&p);
            if period > MAX_PERIOD {
                return period;
            }
        }
    }
    period
}

fn spread(samples: &[&BigRational]) -> BigRational {
    let max = samples.iter().max().expect("non-empty");
    let min = samples.iter().min().expect("non-empty");
    *max - *min
}

fn residue_stats(mu: &[BigRational], period: usize) -> (Vec<BigRational>, Vec<BigRational>) {
    let horizon = mu.len() - 1;
    let mut estimates = Vec::with_capacity(period);
    let mut oscillation = Vec::with_capacity(period);
    for b in 0..period {
        // largest n ≤ horizon with n ≡ b (mod period), then the three before it
        let last = horizon - (horizon + period - b) % period;
        let samples: Vec<&BigRational> = (0..4)
            .filter_map(|i| last.checked_sub(i * period))
            .map(|n| &mu[n])
            .collect();
        estimates.push(mu[last].clone());
        oscillation.push(spread(&samples));
    }
    (estimates, oscillation)
}

/// Estimates the limits of `μ` along residue classes.
///
/// The period is [`structural_period`] when it is at most [`MAX_PERIOD`];
/// otherwise the smallest `p ≤ MAX_PERIOD` whose worst per-residue
/// oscillation is minimal is used and `fallback` is set.
pub fn residue_probe(d: &Dfa, horizon: usize, max_horizon: usize) -> Result<ResidueProbe> {
    let structural = structural_period(d);
    let (period, fallback) = if structural <= MAX_PERIOD {
        (structural, false)
    } else {
        (0, true)
    };
    let needed = if fallback { 4 * MAX_PERIOD } else { 4 * period };
    if horizon < needed {
        return Err(Error::InvalidInput(format!(
            "horizon {horizon} is below 4 × period ({needed})"
        )));
    }
    let mu = profile(d, horizon, max_horizon)?.mu;
    if !fallback {
        let (estimates, oscillation) = residue_stats(&mu, period);
        return Ok(ResidueProbe {
            period,
            fallback,
            estimates,
            oscillation,
        });
    }
    let mut best: Option<(BigRational, usize)> = None;
    for p in 1..=MAX_PERIOD {
        let (_, osc) = residue_stats(&mu, p);
        let worst = osc.into_iter().max().expect("p ≥ 1");
        if best.as_ref().is_none_or(|(b, _)| worst < *b) {
            best = Some((worst, p));
        }
    }
    let period = best.expect("at least one period").1;
    let (estimates, oscillation) = residue_stats(&mu, period);
    Ok(ResidueProbe {
        period,
        fallback,
        estimates,
        oscillation,
    })
}

/// Number of reachable states; the size used in density bounds is the full
/// state count, but reports often want both.
pub fn reachable_count(d: &Dfa) -> usize {
    reachable_states(d).len()
}
