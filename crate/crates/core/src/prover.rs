//! Prefix campaigns: find optimal-depth sorting networks and prove depth
//! lower bounds by solving one formula per two-layer representative prefix.

use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::encode::{build, decode_network, EncodeOptions};
use crate::error::{Error, Result};
use crate::network::{first_layer, unsorted_inputs, windows, FirstLayerStyle, Network};
use crate::solver::{run_solver, SolverConfig, Verdict};
use crate::words::{generate_sentences, net_of, SetKind};

/// Label recorded in reports for the prefix numbering in use.
pub const PREFIX_ORDERING: &str = "canonical-sentence-order";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// No fixed prefix.
    Free,
    /// First layer fixed to `(i, n-i+1)`.
    Layer1,
    /// One instance per representative two-layer prefix.
    TwoLayer,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free" => Ok(Mode::Free),
            "layer1" => Ok(Mode::Layer1),
            "two-layer" | "two_layer" => Ok(Mode::TwoLayer),
            _ => Err(Error::InvalidArgument(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "depth", rename_all = "snake_case")]
pub enum Claim {
    /// A sorting network of this depth exists: `T(n) <= d`.
    AtMost(usize),
    /// No sorting network of this depth exists: `T(n) > d`.
    GreaterThan(usize),
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceResult {
    /// 1-based index into the representative prefix list, when one is used.
    pub prefix_id: Option<usize>,
    /// Sentence or description of the fixed prefix.
    pub prefix: Option<String>,
    pub depth: usize,
    pub pad: usize,
    pub verdict: Verdict,
    pub encode_secs: f64,
    pub solve_secs: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Network>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignResult {
    pub n: usize,
    pub depth: usize,
    pub claim: Claim,
    pub ordering: String,
    pub instances: Vec<InstanceResult>,
    pub wall_secs: f64,
    pub cpu_secs: f64,
}

impl CampaignResult {
    pub fn empty(n: usize, depth: usize) -> Self {
        CampaignResult {
            n,
            depth,
            claim: Claim::Inconclusive,
            ordering: PREFIX_ORDERING.to_string(),
            instances: Vec::new(),
            wall_secs: 0.0,
            cpu_secs: 0.0,
        }
    }

    /// Witness of the first satisfiable pad-0 instance.
    pub fn witness(&self) -> Option<&Network> {
        self.instances.iter().find(|r| r.verdict == Verdict::Sat && r.pad == 0).and_then(|r| r.witness.as_ref())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Parses a report and re-verifies every stored witness.
    pub fn from_json(text: &str) -> Result<Self> {
        let r: CampaignResult = serde_json::from_str(text)?;
        r.validate()?;
        Ok(r)
    }

    pub fn export(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn import(path: &Path) -> Result<Self> {
        CampaignResult::from_json(&std::fs::read_to_string(path)?)
    }

    fn validate(&self) -> Result<()> {
        for (k, inst) in self.instances.iter().enumerate() {
            let at = |msg: String| Error::InvalidReport(format!("instance {k}: {msg}"));
            match (inst.verdict, &inst.witness) {
                (Verdict::Sat, None) => return Err(at("SAT without witness".into())),
                (Verdict::Unsat | Verdict::Timeout, Some(_)) => return Err(at("witness on a non-SAT verdict".into())),
                (Verdict::Sat, Some(w)) => {
                    if w.channels() != self.n || w.depth() != inst.depth {
                        return Err(at(format!("witness has {} channels and depth {}", w.channels(), w.depth())));
                    }
                    if !sorts_window(w, inst.pad)? {
                        return Err(at("witness does not sort its inputs".into()));
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// A network extending any prefix sorts `B^n_un(prefix)` windowed by `pad`
/// iff it sorts the windowed unsorted inputs, since sorted vectors stay
/// sorted.
fn sorts_window(w: &Network, pad: usize) -> Result<bool> {
    if pad == 0 {
        return Ok(w.is_sorting_network());
    }
    let inputs = windows(&unsorted_inputs(w.channels(), None)?, pad)?;
    Ok(w.sorts_all(&inputs))
}

#[derive(Clone, Debug)]
pub struct ProverConfig {
    pub solver: SolverConfig,
    /// Parallel solver processes.
    pub workers: usize,
    pub sigma1: bool,
    pub sigma2: bool,
    pub sigma3: bool,
}

impl ProverConfig {
    pub fn new(solver: SolverConfig) -> Self {
        let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
        ProverConfig { solver, workers, sigma1: true, sigma2: true, sigma3: true }
    }
}

/// `[n-4, n-6, 0]`, clipped at 0, without duplicates.
pub fn default_pads(n: usize) -> Vec<usize> {
    normalize_pads(n, &[n.saturating_sub(4), n.saturating_sub(6), 0])
}

/// Descending pads below `n`, always ending in 0.
pub fn normalize_pads(n: usize, pads: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = pads.iter().copied().filter(|&p| p < n.max(1)).collect();
    out.push(0);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out.dedup();
    out
}

#[derive(Clone, Debug)]
pub struct Prefix {
    pub id: Option<usize>,
    pub label: Option<String>,
    pub network: Option<Network>,
}

/// Prefixes for a campaign at depth `d`.
pub fn prefixes(n: usize, d: usize, mode: Mode) -> Result<Vec<Prefix>> {
    let none = || vec![Prefix { id: None, label: None, network: None }];
    if n < 2 || d == 0 {
        return Ok(none());
    }
    let single = |style: FirstLayerStyle, label: &str| -> Result<Vec<Prefix>> {
        let net = Network::from_layers(n, vec![first_layer(n, style)])?;
        Ok(vec![Prefix { id: None, label: Some(label.to_string()), network: Some(net) }])
    };
    match mode {
        Mode::Free => Ok(none()),
        Mode::Layer1 => single(FirstLayerStyle::Crossing, "crossing first layer"),
        Mode::TwoLayer if d == 1 || n == 2 => single(FirstLayerStyle::Adjacent, "adjacent first layer"),
        Mode::TwoLayer => Ok(generate_sentences(n, SetKind::Rn)?
            .into_iter()
            .enumerate()
            .map(|(k, s)| Prefix { id: Some(k + 1), label: Some(s.to_string()), network: Some(net_of(&s)) })
            .collect()),
    }
}

/// Looks for a depth-`d` sorting network; returns the first witness in
/// prefix order.
pub fn find_network(n: usize, d: usize, mode: Mode, cfg: &ProverConfig) -> Result<(Option<Network>, CampaignResult)> {
    let campaign = run_campaign(n, d, prefixes(n, d, mode)?, &[0], cfg)?;
    Ok((campaign.witness().cloned(), campaign))
}

/// Tries to show that no depth-`d` sorting network exists. Each prefix is
/// tried at decreasing pads until one is unsatisfiable; satisfiable padded
/// instances fall through to smaller pads and pad 0 decides.
pub fn prove_lower_bound(n: usize, d: usize, pads: &[usize], cfg: &ProverConfig) -> Result<CampaignResult> {
    run_campaign(n, d, prefixes(n, d, Mode::TwoLayer)?, &normalize_pads(n, pads), cfg)
}

/// `T(n)` together with the campaigns that establish it: the lower leg is
/// an all-unsatisfiable campaign at depth `T-1`, the upper leg holds the
/// witness at depth `T`.
#[derive(Clone, Debug)]
pub struct DepthResult {
    pub n: usize,
    pub value: Option<usize>,
    pub lower: Option<CampaignResult>,
    pub upper: Option<CampaignResult>,
}

pub fn compute_t(n: usize, cfg: &ProverConfig) -> Result<DepthResult> {
    let log2 = if n <= 1 { 0 } else { (usize::BITS - (n - 1).leading_zeros()) as usize };
    let mut lower = None;
    for d in log2.saturating_sub(1)..=n {
        let c = prove_lower_bound(n, d, &default_pads(n), cfg)?;
        match c.claim {
            Claim::GreaterThan(_) => lower = Some(c),
            Claim::AtMost(_) => return Ok(DepthResult { n, value: Some(d), lower, upper: Some(c) }),
            Claim::Inconclusive => return Ok(DepthResult { n, value: None, lower, upper: Some(c) }),
        }
    }
    Ok(DepthResult { n, value: None, lower, upper: None })
}

struct Outcome {
    results: Vec<InstanceResult>,
    sat: bool,
    decided: bool,
}

fn run_campaign(n: usize, d: usize, prefixes: Vec<Prefix>, pads: &[usize], cfg: &ProverConfig) -> Result<CampaignResult> {
    let start = Instant::now();
    let count = prefixes.len();
    let cancel: Vec<AtomicBool> = (0..count).map(|_| AtomicBool::new(false)).collect();
    let first_sat = AtomicUsize::new(usize::MAX);
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<Outcome>>>> = Mutex::new((0..count).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..cfg.workers.clamp(1, count.max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= count {
                    break;
                }
                if i > first_sat.load(Ordering::SeqCst) {
                    continue;
                }
                let outcome = run_prefix(n, d, &prefixes[i], pads, cfg, &cancel[i]);
                if matches!(&outcome, Ok(o) if o.sat) || outcome.is_err() {
                    let prev = first_sat.fetch_min(i, Ordering::SeqCst);
                    for flag in cancel.iter().skip(i.min(prev) + 1) {
                        flag.store(true, Ordering::SeqCst);
                    }
                }
                slots.lock().expect("no worker panics while holding the lock")[i] = Some(outcome);
            });
        }
    });
    let cutoff = first_sat.load(Ordering::SeqCst);
    let mut campaign = CampaignResult::empty(n, d);
    let mut all_unsat = true;
    let mut sat = false;
    for (i, slot) in slots.into_inner().expect("workers finished").into_iter().enumerate() {
        if i > cutoff {
            break;
        }
        let outcome = slot.expect("every prefix up to the first witness ran")?;
        all_unsat &= outcome.decided && !outcome.sat;
        sat |= outcome.sat;
        campaign.instances.extend(outcome.results);
    }
    campaign.claim = if sat {
        Claim::AtMost(d)
    } else if all_unsat {
        Claim::GreaterThan(d)
    } else {
        Claim::Inconclusive
    };
    campaign.wall_secs = start.elapsed().as_secs_f64();
    campaign.cpu_secs = campaign.instances.iter().map(|r| r.encode_secs + r.solve_secs).sum();
    Ok(campaign)
}

fn run_prefix(n: usize, d: usize, prefix: &Prefix, pads: &[usize], cfg: &ProverConfig, cancel: &AtomicBool) -> Result<Outcome> {
    let inputs = unsorted_inputs(n, prefix.network.as_ref())?;
    let mut results = Vec::new();
    for &pad in pads {
        if cancel.load(Ordering::Relaxed) {
            break;
        }
        let t0 = Instant::now();
        let opts = EncodeOptions {
            sigma1: cfg.sigma1,
            sigma2: cfg.sigma2,
            sigma3: cfg.sigma3,
            pad,
            prefix: prefix.network.clone(),
        };
        let (vm, cnf) = build(n, d, &inputs, &opts)?;
        let encode_secs = t0.elapsed().as_secs_f64();
        let run = run_solver(&cnf, &cfg.solver, Some(cancel))?;
        let mut result = InstanceResult {
            prefix_id: prefix.id,
            prefix: prefix.label.clone(),
            depth: d,
            pad,
            verdict: run.verdict,
            encode_secs,
            solve_secs: run.elapsed.as_secs_f64(),
            witness: None,
            note: run.note,
        };
        match run.verdict {
            Verdict::Unsat => {
                results.push(result);
                return Ok(Outcome { results, sat: false, decided: true });
            }
            Verdict::Sat => {
                let model = run.model.expect("SAT runs carry a model");
                let net = decode_network(&vm, &model)?;
                verify_witness(&net, prefix.network.as_ref(), pad)?;
                result.witness = Some(net);
                results.push(result);
                if pad == 0 {
                    return Ok(Outcome { results, sat: true, decided: true });
                }
            }
            Verdict::Timeout => results.push(result),
        }
    }
    Ok(Outcome { results, sat: false, decided: false })
}

fn verify_witness(net: &Network, prefix: Option<&Network>, pad: usize) -> Result<()> {
    if let Some(p) = prefix {
        if net.layers()[..p.depth()] != *p.layers() {
            return Err(Error::WitnessRejected(format!("{net} does not start with the prefix {p}")));
        }
    }
    if !sorts_window(net, pad)? {
        return Err(Error::WitnessRejected(format!("{net} fails to sort its inputs at pad {pad}")));
    }
    Ok(())
}
