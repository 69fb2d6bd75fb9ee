use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::floquet::{prepare_initial_state, AcFieldParams, DerivativePair, FloquetPropagator, StateVector};
use crate::observables::{coherence, entanglement_entropy, lifetime_of_series, magnetization, qfi, TrajectoryRecord};
use crate::spin_ops::{ChainParams, DisorderRealization};

/// When, within a period, observables are sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampling {
    /// Right after the kick that closes the period.
    #[default]
    AfterKick,
    /// After the free evolution, just before the kick.
    BeforeKick,
}

/// Everything about a run that is not a chain coupling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSettings {
    /// Number of periods to simulate.
    pub t_max: u64,
    /// Record every `stride`-th period (plus `t = 0` and the final period).
    pub stride: u64,
    /// Polar angle of every spin in the initial product state.
    pub initial_theta: f64,
    /// Lifetime threshold on the rectified magnetization.
    pub epsilon: f64,
    pub sampling: Sampling,
    /// AC field; when present the QFI with respect to its amplitude is tracked.
    pub ac: Option<AcFieldParams>,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self {
            t_max: 500,
            stride: 1,
            initial_theta: PI / 16.0,
            epsilon: 1e-2,
            sampling: Sampling::AfterKick,
            ac: None,
        }
    }
}

impl RunSettings {
    pub fn validate(&self) -> Result<()> {
        if self.t_max < 1 {
            return Err(Error::InvalidParameter { name: "t_max", reason: "must be at least 1".into() });
        }
        if self.stride < 1 {
            return Err(Error::InvalidParameter { name: "stride", reason: "must be at least 1".into() });
        }
        if !self.epsilon.is_finite() || self.epsilon <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                reason: format!("must be positive and finite, got {}", self.epsilon),
            });
        }
        if !self.initial_theta.is_finite() {
            return Err(Error::InvalidParameter { name: "initial_theta", reason: "not finite".into() });
        }
        if let Some(ac) = &self.ac {
            ac.validate()?;
        }
        Ok(())
    }
}

/// Recorded period counts: `0, stride, 2 stride, ...` and always `t_max`.
pub fn record_times(t_max: u64, stride: u64) -> Vec<u64> {
    let mut times: Vec<u64> = (0..=t_max).step_by(stride.max(1) as usize).collect();
    if times.last() != Some(&t_max) {
        times.push(t_max);
    }
    times
}

enum Evolving {
    Plain(StateVector),
    Tracked(DerivativePair, AcFieldParams),
}

impl Evolving {
    fn state(&self) -> &StateVector {
        match self {
            Evolving::Plain(s) => s,
            Evolving::Tracked(p, _) => &p.psi,
        }
    }

    fn free(&mut self, prop: &FloquetPropagator, period: u64) -> Result<()> {
        match self {
            Evolving::Plain(s) => prop.free_evolve(None, period, s),
            Evolving::Tracked(p, ac) => prop.free_evolve_with_derivative(ac, period, p),
        }
    }

    fn kick(&mut self, prop: &FloquetPropagator) -> Result<()> {
        match self {
            Evolving::Plain(s) => prop.kick(s),
            Evolving::Tracked(p, _) => prop.kick_pair(p),
        }
    }
}

struct Recorder {
    cut: usize,
    times: Vec<u64>,
    next: usize,
    magnetization: Vec<f64>,
    entanglement: Vec<f64>,
    coherence: Vec<f64>,
    qfi: Option<Vec<f64>>,
}

impl Recorder {
    fn wants(&self, t: u64) -> bool {
        self.times.get(self.next) == Some(&t)
    }

    fn record(&mut self, evolving: &Evolving) -> Result<()> {
        let psi = evolving.state();
        self.magnetization.push(magnetization(psi));
        self.entanglement.push(if psi.n() > 1 { entanglement_entropy(psi, self.cut)? } else { 0.0 });
        self.coherence.push(coherence(psi));
        if let (Some(series), Evolving::Tracked(pair, _)) = (self.qfi.as_mut(), evolving) {
            series.push(qfi(pair)?);
        }
        self.next += 1;
        Ok(())
    }
}

/// Simulate one disorder realization for `settings.t_max` periods.
pub fn run_trajectory(
    params: &ChainParams,
    disorder: &DisorderRealization,
    settings: &RunSettings,
) -> Result<TrajectoryRecord> {
    settings.validate()?;
    let prop = FloquetPropagator::new(params, disorder)?;
    run_with_propagator(&prop, params, disorder, settings)
}

pub(crate) fn run_with_propagator(
    prop: &FloquetPropagator,
    params: &ChainParams,
    disorder: &DisorderRealization,
    settings: &RunSettings,
) -> Result<TrajectoryRecord> {
    let psi0 = prepare_initial_state(&vec![settings.initial_theta; params.n])?;
    let mut evolving = match settings.ac {
        Some(ac) => Evolving::Tracked(DerivativePair::new(psi0), ac),
        None => Evolving::Plain(psi0),
    };
    let times = record_times(settings.t_max, settings.stride);
    let capacity = times.len();
    let mut rec = Recorder {
        cut: params.n / 2,
        times,
        next: 0,
        magnetization: Vec::with_capacity(capacity),
        entanglement: Vec::with_capacity(capacity),
        coherence: Vec::with_capacity(capacity),
        qfi: settings.ac.map(|_| Vec::with_capacity(capacity)),
    };
    rec.record(&evolving)?;
    for period in 0..settings.t_max {
        let t = period + 1;
        evolving.free(prop, period)?;
        if settings.sampling == Sampling::BeforeKick && rec.wants(t) {
            rec.record(&evolving)?;
        }
        evolving.kick(prop)?;
        if settings.sampling == Sampling::AfterKick && rec.wants(t) {
            rec.record(&evolving)?;
        }
    }
    let lifetime = lifetime_of_series(&rec.times, &rec.magnetization, settings.epsilon)?;
    Ok(TrajectoryRecord {
        params: *params,
        seed: disorder.seed,
        index: disorder.index,
        times: rec.times,
        magnetization: rec.magnetization,
        entanglement: rec.entanglement,
        coherence: rec.coherence,
        qfi: rec.qfi,
        lifetime,
        cap: settings.t_max,
    })
}
