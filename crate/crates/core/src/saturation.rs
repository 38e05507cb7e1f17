//! Redundancy, forbidden patterns, saturation and subsumption for two-layer
//! networks.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::network::{BoolSet, Comparator, Layer, Network};
use crate::words::{generate_sentences, net_of, SetKind};

/// Largest channel count for semantic saturation and conjecture checks.
pub const MAX_SEMANTIC_CHANNELS: usize = 8;

/// Largest channel count for permutation search.
pub const MAX_SUBSUMPTION_CHANNELS: usize = 10;

/// Forbidden two-layer patterns. `a < b` and `c < d` name the min and max
/// channels of first-layer comparators; "open" means unused in layer 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternId {
    /// Open free channel, comparator with open max and used min.
    P1a,
    /// Open free channel, comparator with open min and used max.
    P1b,
    /// Open free channel, comparator with both ends open.
    P1c,
    /// An open min and an open max on different comparators.
    P2,
    /// Two mins joined in layer 2, both maxes open.
    P3a,
    /// Two maxes joined in layer 2, both mins open.
    P3b,
}

impl PatternId {
    pub const ALL: [PatternId; 6] =
        [PatternId::P1a, PatternId::P1b, PatternId::P1c, PatternId::P2, PatternId::P3a, PatternId::P3b];
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A permutation `pi` with `outputs(Cb) ⊆ pi(outputs(Ca))`; `pi[i-1] = pi(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsumptionWitness {
    pub permutation: Vec<usize>,
}

struct Roles {
    first: Vec<Comparator>,
    free: Option<usize>,
    second: Layer,
    used: Vec<bool>,
}

impl Roles {
    fn new(net: &Network) -> Result<Self> {
        if net.depth() != 2 {
            return Err(Error::NotTwoLayer(net.depth()));
        }
        let n = net.channels();
        let first: Vec<Comparator> = net.layers()[0].comparators().to_vec();
        let mut in_first = vec![false; n + 1];
        for c in &first {
            in_first[c.low] = true;
            in_first[c.high] = true;
        }
        let free_channels: Vec<usize> = (1..=n).filter(|&ch| !in_first[ch]).collect();
        let second = net.layers()[1].clone();
        let mut used = vec![false; n + 1];
        for c in second.comparators() {
            used[c.low] = true;
            used[c.high] = true;
        }
        let free = if free_channels.len() == 1 { Some(free_channels[0]) } else { None };
        Ok(Roles { first, free, second, used })
    }

    fn open(&self, ch: usize) -> bool {
        !self.used[ch]
    }

    fn partner2(&self, ch: usize) -> Option<usize> {
        self.second.partner(ch)
    }

    /// The comparator that removes an occurrence of `p`, if one exists.
    fn fix(&self, p: PatternId) -> Option<Comparator> {
        let link = |x: usize, y: usize| Some(Comparator::new(x.min(y), x.max(y)));
        match p {
            PatternId::P1a | PatternId::P1b | PatternId::P1c => {
                let c = self.free.filter(|&c| self.open(c))?;
                self.first.iter().find_map(|k| {
                    let (a, b) = (k.low, k.high);
                    match p {
                        PatternId::P1a if self.open(b) && !self.open(a) => link(b, c),
                        PatternId::P1b if self.open(a) && !self.open(b) => link(a, c),
                        PatternId::P1c if self.open(a) && self.open(b) => link(a, c),
                        _ => None,
                    }
                })
            }
            PatternId::P2 => self.first.iter().filter(|k| self.open(k.low)).find_map(|k1| {
                self.first.iter().filter(|k2| *k2 != k1 && self.open(k2.high)).find_map(|k2| link(k1.low, k2.high))
            }),
            PatternId::P3a | PatternId::P3b => self.first.iter().find_map(|k1| {
                let (joined, open) = if p == PatternId::P3a { (k1.low, k1.high) } else { (k1.high, k1.low) };
                let other = self.partner2(joined)?;
                let k2 = self.first.iter().find(|k| if p == PatternId::P3a { k.low == other } else { k.high == other })?;
                let open2 = if p == PatternId::P3a { k2.high } else { k2.low };
                if self.open(open) && self.open(open2) {
                    link(open, open2)
                } else {
                    None
                }
            }),
        }
    }

    fn has_repeat(&self) -> bool {
        self.second.comparators().iter().any(|c| self.first.iter().any(|k| k.span() == c.span()))
    }
}

/// A partially specified network on `channels` channels: comparators
/// `(layer, min, max)` between pattern channels and external comparators
/// `(layer, channel)` leaving the pattern. Layers are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub channels: usize,
    pub depth: usize,
    pub comparators: Vec<(usize, usize, usize)>,
    pub externals: Vec<(usize, usize)>,
}

impl Pattern {
    /// Whether some injective channel map embeds the pattern into the first
    /// `depth` layers of `net`, with no further comparators touching the
    /// image channels there.
    pub fn occurs_in(&self, net: &Network) -> bool {
        if net.depth() < self.depth || self.channels > net.channels() {
            return false;
        }
        let mut image = vec![0usize; self.channels];
        let mut taken = vec![false; net.channels() + 1];
        self.assign(net, 0, &mut image, &mut taken)
    }

    fn assign(&self, net: &Network, k: usize, image: &mut [usize], taken: &mut [bool]) -> bool {
        if k == self.channels {
            return self.matches(net, image);
        }
        for ch in 1..=net.channels() {
            if !taken[ch] {
                taken[ch] = true;
                image[k] = ch;
                let found = self.assign(net, k + 1, image, taken);
                taken[ch] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }

    fn matches(&self, net: &Network, image: &[usize]) -> bool {
        for layer in 1..=self.depth {
            let l = &net.layers()[layer - 1];
            for (i, &ch) in image.iter().enumerate() {
                let i = i + 1;
                let internal = self.comparators.iter().find(|&&(k, a, b)| k == layer && (a == i || b == i));
                let external = self.externals.contains(&(layer, i));
                let ok = match (l.comparator_on(ch), internal) {
                    (None, None) => !external,
                    (Some(c), Some(&(_, a, b))) => c.low == image[a - 1] && c.high == image[b - 1],
                    (Some(c), None) => external && !image.contains(&c.partner(ch).expect("touches ch")),
                    (None, Some(_)) => false,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

impl PatternId {
    /// The pattern as a partial network; channel 1 is the topmost min channel.
    pub fn template(self) -> Pattern {
        let (channels, comparators, externals) = match self {
            PatternId::P1a => (3, vec![(1, 1, 2)], vec![(2, 1)]),
            PatternId::P1b => (3, vec![(1, 1, 2)], vec![(2, 2)]),
            PatternId::P1c => (3, vec![(1, 1, 2)], vec![]),
            PatternId::P2 => (4, vec![(1, 1, 2), (1, 3, 4)], vec![(2, 2), (2, 3)]),
            PatternId::P3a => (4, vec![(1, 1, 2), (1, 3, 4), (2, 1, 3)], vec![]),
            PatternId::P3b => (4, vec![(1, 1, 2), (1, 3, 4), (2, 2, 4)], vec![]),
        };
        Pattern { channels, depth: 2, comparators, externals }
    }
}

/// Whether pattern `p` occurs in a two-layer network.
pub fn contains_pattern(net: &Network, p: PatternId) -> Result<bool> {
    Ok(Roles::new(net)?.fix(p).is_some())
}

/// Patterns occurring in a two-layer network.
pub fn patterns(net: &Network) -> Result<Vec<PatternId>> {
    let roles = Roles::new(net)?;
    Ok(PatternId::ALL.into_iter().filter(|&p| roles.fix(p).is_some()).collect())
}

/// Two-layer redundancy: some second-layer comparator repeats a first-layer
/// one, i.e. the sentence contains `12_c`.
pub fn is_redundant(net: &Network) -> Result<bool> {
    Ok(Roles::new(net)?.has_repeat())
}

/// Redundancy by definition: removing one comparator leaves an output set
/// equal to a permutation of the original.
pub fn is_redundant_semantic(net: &Network) -> Result<bool> {
    check_semantic_size(net.channels())?;
    let outs = net.outputs()?;
    for (k, layer) in net.layers().iter().enumerate() {
        for c in layer.comparators() {
            let reduced = replace_layer(net, k, layer.comparators().iter().filter(|x| *x != c).copied().collect());
            let ro = reduced.outputs()?;
            if ro.len() == outs.len() && embedding(&ro, &outs).is_some() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn check_semantic_size(n: usize) -> Result<()> {
    if n > MAX_SEMANTIC_CHANNELS {
        return Err(Error::TooLarge { what: "semantic check", n, limit: MAX_SEMANTIC_CHANNELS });
    }
    Ok(())
}

fn replace_layer(net: &Network, k: usize, comparators: Vec<Comparator>) -> Network {
    let mut layers = net.layers().to_vec();
    layers[k] = Layer::new(comparators);
    Network::from_layers(net.channels(), layers).expect("subsets and extensions of valid layers stay valid")
}

fn require_maximal(net: &Network) -> Result<()> {
    if net.depth() != 2 {
        return Err(Error::NotTwoLayer(net.depth()));
    }
    if !net.layers()[0].is_maximal(net.channels()) {
        return Err(Error::FirstLayerNotMaximal);
    }
    Ok(())
}

/// Syntactic saturation: not redundant and free of every pattern.
pub fn is_saturated(net: &Network) -> Result<bool> {
    require_maximal(net)?;
    let roles = Roles::new(net)?;
    Ok(!roles.has_repeat() && PatternId::ALL.iter().all(|&p| roles.fix(p).is_none()))
}

/// Second-layer comparators that can be added without repeating a
/// first-layer comparator.
fn addable(net: &Network) -> Vec<Comparator> {
    let n = net.channels();
    let (l1, l2) = (&net.layers()[0], &net.layers()[1]);
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if l2.comparator_on(i).is_none() && l2.comparator_on(j).is_none() && !l1.contains_pair(i, j) {
                out.push(Comparator::new(i, j));
            }
        }
    }
    out
}

/// Saturation by definition: non-redundant, and every network obtained by
/// adding a second-layer comparator has outputs that embed in no
/// permutation of the original outputs.
pub fn is_saturated_semantic(net: &Network) -> Result<bool> {
    require_maximal(net)?;
    check_semantic_size(net.channels())?;
    if is_redundant_semantic(net)? {
        return Ok(false);
    }
    let outs = net.outputs()?;
    for c in addable(net) {
        let mut l2 = net.layers()[1].comparators().to_vec();
        l2.push(c);
        let extended = replace_layer(net, 1, l2);
        if embedding(&extended.outputs()?, &outs).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Cb ⪯ Ca`: some permutation maps the outputs of `Ca` onto a superset of
/// the outputs of `Cb`.
pub fn subsumes(cb: &Network, ca: &Network) -> Result<Option<SubsumptionWitness>> {
    let n = ca.channels();
    if cb.channels() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: cb.channels() });
    }
    if n > MAX_SUBSUMPTION_CHANNELS {
        return Err(Error::TooLarge { what: "subsumption", n, limit: MAX_SUBSUMPTION_CHANNELS });
    }
    Ok(subsumes_outputs(&cb.outputs()?, &ca.outputs()?))
}

/// [`subsumes`] on precomputed output sets.
pub fn subsumes_outputs(ob: &BoolSet, oa: &BoolSet) -> Option<SubsumptionWitness> {
    let sigma = embedding(ob, oa)?;
    // sigma maps ob into oa; the witness is its inverse
    let mut pi = vec![0; sigma.len()];
    for (i, &j) in sigma.iter().enumerate() {
        pi[j] = i + 1;
    }
    Some(SubsumptionWitness { permutation: pi })
}

/// A channel map `sigma` (0-based) with `sigma(x) ∈ to` for every `x ∈ from`.
fn embedding(from: &BoolSet, to: &BoolSet) -> Option<Vec<usize>> {
    let n = from.channels();
    if to.channels() != n || from.len() > to.len() {
        return None;
    }
    // vectors of each weight with a given channel set, per weight
    let profile = |set: &BoolSet, ch: usize| {
        let mut counts = vec![0u32; n + 1];
        for &x in set.bits() {
            if (x >> ch) & 1 == 1 {
                counts[x.count_ones() as usize] += 1;
            }
        }
        counts
    };
    let weights = |set: &BoolSet| {
        let mut counts = vec![0u32; n + 1];
        for &x in set.bits() {
            counts[x.count_ones() as usize] += 1;
        }
        counts
    };
    if weights(from).iter().zip(weights(to).iter()).any(|(a, b)| a > b) {
        return None;
    }
    let pf: Vec<Vec<u32>> = (0..n).map(|c| profile(from, c)).collect();
    let pt: Vec<Vec<u32>> = (0..n).map(|c| profile(to, c)).collect();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| pf[i].iter().zip(&pt[j]).all(|(a, b)| a <= b)).collect())
        .collect();
    // assign the most constrained source channels first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| candidates[i].len());
    let mut sigma = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    let mut search = Search { from, to, order: &order, candidates: &candidates };
    if search.extend(0, 0, 0, &mut sigma, &mut taken) {
        Some(sigma)
    } else {
        None
    }
}

struct Search<'a> {
    from: &'a BoolSet,
    to: &'a BoolSet,
    order: &'a [usize],
    candidates: &'a [Vec<usize>],
}

impl Search<'_> {
    fn extend(&mut self, depth: usize, src_mask: u64, dst_mask: u64, sigma: &mut [usize], taken: &mut [bool]) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let i = self.order[depth];
        for &j in &self.candidates[i] {
            if taken[j] {
                continue;
            }
            sigma[i] = j;
            taken[j] = true;
            let (sm, dm) = (src_mask | 1 << i, dst_mask | 1 << j);
            if self.projection_fits(sm, dm, sigma) && self.extend(depth + 1, sm, dm, sigma, taken) {
                return true;
            }
            taken[j] = false;
            sigma[i] = usize::MAX;
        }
        false
    }

    /// Every source vector restricted to assigned channels, moved by
    /// `sigma`, must agree with some target vector on the image channels.
    fn projection_fits(&self, src_mask: u64, dst_mask: u64, sigma: &[usize]) -> bool {
        let allowed: HashSet<u64> = self.to.bits().iter().map(|&y| y & dst_mask).collect();
        let mut checked: HashSet<u64> = HashSet::new();
        for &x in self.from.bits() {
            let xs = x & src_mask;
            if !checked.insert(xs) {
                continue;
            }
            let mut y = 0u64;
            let mut bits = xs;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                y |= 1 << sigma[i];
                bits &= bits - 1;
            }
            if !allowed.contains(&y) {
                return false;
            }
        }
        true
    }
}

/// Removes repeated comparators and adds pattern fixes until the network is
/// saturated. Patterns are scanned in the order of [`PatternId::ALL`].
pub fn saturate(net: &Network) -> Result<Network> {
    require_maximal(net)?;
    let l1 = net.layers()[0].clone();
    let mut l2: Vec<Comparator> =
        net.layers()[1].comparators().iter().filter(|c| !l1.contains_pair(c.low, c.high)).copied().collect();
    loop {
        let current = Network::from_layers(net.channels(), vec![l1.clone(), Layer::new(l2.clone())])?;
        let roles = Roles::new(&current)?;
        match PatternId::ALL.iter().find_map(|&p| roles.fix(p)) {
            Some(c) => l2.push(c),
            None => return Ok(current),
        }
    }
}

/// Checks that no member of `R(S_n)` subsumes a different member.
pub fn verify_conjecture(n: usize) -> Result<bool> {
    Ok(conjecture_table(n)?.iter().all(|row| !row.2))
}

/// `(class A, class B, A ⪯ B)` for every ordered pair of distinct classes.
pub fn conjecture_table(n: usize) -> Result<Vec<(String, String, bool)>> {
    check_semantic_size(n)?;
    let classes = generate_sentences(n, SetKind::RSn)?;
    let outputs: Vec<BoolSet> = classes.iter().map(|s| net_of(s).outputs()).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for (i, a) in classes.iter().enumerate() {
        for (j, b) in classes.iter().enumerate() {
            if i != j {
                rows.push((a.to_string(), b.to_string(), subsumes_outputs(&outputs[i], &outputs[j]).is_some()));
            }
        }
    }
    Ok(rows)
}
