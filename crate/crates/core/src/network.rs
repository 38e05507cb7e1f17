//! Comparator networks over Boolean inputs.
//!
//! Channels are 1-based in the public API. A [`BoolVec`] stores channel `k`
//! at bit `k - 1`, so channel 1 is the least significant bit and a vector is
//! sorted when its ones occupy the highest channels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest channel count for which output sets are enumerated.
pub const MAX_ENUM_CHANNELS: usize = 24;

/// Largest channel count representable by a [`BoolVec`].
pub const MAX_CHANNELS: usize = 64;

/// A comparator writes the minimum of its two inputs to `low` and the maximum
/// to `high`. In a generalized network `low > high` is allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Comparator {
    pub low: usize,
    pub high: usize,
}

impl Comparator {
    pub const fn new(low: usize, high: usize) -> Self {
        Comparator { low, high }
    }

    pub fn is_reversed(&self) -> bool {
        self.low > self.high
    }

    /// The two channels in increasing order.
    pub fn span(&self) -> (usize, usize) {
        (self.low.min(self.high), self.low.max(self.high))
    }

    pub fn touches(&self, channel: usize) -> bool {
        self.low == channel || self.high == channel
    }

    /// Same comparator with standard orientation.
    pub fn oriented(&self) -> Self {
        let (low, high) = self.span();
        Comparator { low, high }
    }

    /// The other channel of this comparator, if `channel` is one of its ends.
    pub fn partner(&self, channel: usize) -> Option<usize> {
        if self.low == channel {
            Some(self.high)
        } else if self.high == channel {
            Some(self.low)
        } else {
            None
        }
    }
}

impl fmt::Display for Comparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.low, self.high)
    }
}

/// A set of channel-disjoint comparators, kept ordered by their smaller channel.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Layer {
    comparators: Vec<Comparator>,
}

impl Layer {
    /// Builds a layer without validation; [`Network`] constructors validate.
    pub fn new(mut comparators: Vec<Comparator>) -> Self {
        comparators.sort_by_key(|c| c.span());
        Layer { comparators }
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        Layer::new(pairs.iter().map(|&(i, j)| Comparator::new(i, j)).collect())
    }

    pub fn comparators(&self) -> &[Comparator] {
        &self.comparators
    }

    pub fn len(&self) -> usize {
        self.comparators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comparators.is_empty()
    }

    pub fn comparator_on(&self, channel: usize) -> Option<&Comparator> {
        self.comparators.iter().find(|c| c.touches(channel))
    }

    pub fn partner(&self, channel: usize) -> Option<usize> {
        self.comparators.iter().find_map(|c| c.partner(channel))
    }

    pub fn contains_pair(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.comparators.iter().any(|c| c.span() == key)
    }

    /// A layer is maximal when it holds `floor(n/2)` comparators.
    pub fn is_maximal(&self, channels: usize) -> bool {
        self.comparators.len() == channels / 2
    }

    fn validate(&self, channels: usize, index: usize) -> Result<()> {
        let mut used = vec![false; channels + 1];
        for c in &self.comparators {
            for ch in [c.low, c.high] {
                if ch == 0 || ch > channels {
                    return Err(Error::ChannelOutOfRange { channel: ch, channels });
                }
            }
            if c.low == c.high {
                return Err(Error::DegenerateComparator(c.low));
            }
            for ch in [c.low, c.high] {
                if used[ch] {
                    return Err(Error::ChannelReused { layer: index + 1, channel: ch });
                }
                used[ch] = true;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, c) in self.comparators.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// Style of a maximal first layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FirstLayerStyle {
    /// `F_n = {(2i-1, 2i)}`
    Adjacent,
    /// `F'_n = {(i, n-i+1)}`
    Crossing,
}

pub fn first_layer(n: usize, style: FirstLayerStyle) -> Layer {
    let pairs = (1..=n / 2).map(|i| match style {
        FirstLayerStyle::Adjacent => Comparator::new(2 * i - 1, 2 * i),
        FirstLayerStyle::Crossing => Comparator::new(i, n - i + 1),
    });
    Layer::new(pairs.collect())
}

/// A comparator network on a fixed number of channels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "NetworkJson", into = "NetworkJson")]
pub struct Network {
    channels: usize,
    layers: Vec<Layer>,
    generalized: bool,
}

impl Network {
    pub fn empty(channels: usize) -> Self {
        Network { channels, layers: Vec::new(), generalized: false }
    }

    /// Validates channel ranges and disjointness; reversed comparators mark the
    /// network as generalized.
    pub fn from_layers(channels: usize, layers: Vec<Layer>) -> Result<Self> {
        if channels > MAX_CHANNELS {
            return Err(Error::TooLarge { what: "network", n: channels, limit: MAX_CHANNELS });
        }
        for (k, layer) in layers.iter().enumerate() {
            layer.validate(channels, k)?;
        }
        let generalized = layers.iter().flat_map(|l| &l.comparators).any(|c| c.is_reversed());
        Ok(Network { channels, layers, generalized })
    }

    pub fn from_pairs(channels: usize, layers: &[&[(usize, usize)]]) -> Result<Self> {
        Network::from_layers(channels, layers.iter().map(|l| Layer::from_pairs(l)).collect())
    }

    /// Like [`Network::from_layers`] but rejects reversed comparators.
    pub fn standard(channels: usize, layers: Vec<Layer>) -> Result<Self> {
        let net = Network::from_layers(channels, layers)?;
        if let Some(c) = net.comparators().find(|c| c.is_reversed()) {
            return Err(Error::ReversedComparator { low: c.low, high: c.high });
        }
        Ok(net)
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer(&self, index: usize) -> Option<&Layer> {
        self.layers.get(index)
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn size(&self) -> usize {
        self.layers.iter().map(Layer::len).sum()
    }

    pub fn is_generalized(&self) -> bool {
        self.generalized
    }

    pub fn comparators(&self) -> impl Iterator<Item = &Comparator> {
        self.layers.iter().flat_map(|l| l.comparators.iter())
    }

    pub fn push_layer(&mut self, layer: Layer) -> Result<()> {
        layer.validate(self.channels, self.layers.len())?;
        self.generalized |= layer.comparators.iter().any(Comparator::is_reversed);
        self.layers.push(layer);
        Ok(())
    }

    /// The first `depth` layers.
    pub fn prefix(&self, depth: usize) -> Network {
        let layers = self.layers[..depth.min(self.layers.len())].to_vec();
        let generalized = layers.iter().flat_map(|l| &l.comparators).any(|c| c.is_reversed());
        Network { channels: self.channels, layers, generalized }
    }

    fn check_width(&self, n: usize) -> Result<()> {
        if n != self.channels {
            return Err(Error::DimensionMismatch { expected: self.channels, actual: n });
        }
        Ok(())
    }

    fn bit_pairs(&self) -> Vec<(u32, u32)> {
        self.comparators().map(|c| ((c.low - 1) as u32, (c.high - 1) as u32)).collect()
    }

    /// Applies the network to a packed input; no width check.
    pub fn apply_bits(&self, mut x: u64) -> u64 {
        for c in self.comparators() {
            x = apply_comparator(x, (c.low - 1) as u32, (c.high - 1) as u32);
        }
        x
    }

    pub fn evaluate(&self, x: &BoolVec) -> Result<BoolVec> {
        self.check_width(x.len())?;
        Ok(BoolVec { n: x.n, bits: self.apply_bits(x.bits) })
    }

    /// Channel values after every layer; element `k` is the state after layer `k`.
    pub fn trace(&self, x: &BoolVec) -> Result<Vec<BoolVec>> {
        self.check_width(x.len())?;
        let mut state = x.bits;
        let mut out = vec![*x];
        for layer in &self.layers {
            for c in &layer.comparators {
                state = apply_comparator(state, (c.low - 1) as u32, (c.high - 1) as u32);
            }
            out.push(BoolVec { n: x.n, bits: state });
        }
        Ok(out)
    }

    /// Evaluation on arbitrary ordered values (documentation and tests).
    pub fn evaluate_values<T: Ord + Clone>(&self, input: &[T]) -> Result<Vec<T>> {
        self.check_width(input.len())?;
        let mut v = input.to_vec();
        for c in self.comparators() {
            let (i, j) = (c.low - 1, c.high - 1);
            if v[i] > v[j] {
                v.swap(i, j);
            }
        }
        Ok(v)
    }

    /// `C(x)` for every `x` in `0..2^n`, indexed by the packed input.
    pub fn images(&self) -> Result<Vec<u64>> {
        let n = self.channels;
        if n > MAX_ENUM_CHANNELS {
            return Err(Error::TooLarge { what: "output enumeration", n, limit: MAX_ENUM_CHANNELS });
        }
        if n <= 12 {
            let pairs = self.bit_pairs();
            return Ok((0..1u64 << n)
                .map(|x| pairs.iter().fold(x, |x, &(i, j)| apply_comparator(x, i, j)))
                .collect());
        }
        Ok(self.images_bit_parallel())
    }

    /// One bitset column per channel over all `2^n` inputs; a comparator is an
    /// AND on its min channel and an OR on its max channel.
    fn images_bit_parallel(&self) -> Vec<u64> {
        const LOW_MASKS: [u64; 6] = [
            0xAAAA_AAAA_AAAA_AAAA,
            0xCCCC_CCCC_CCCC_CCCC,
            0xF0F0_F0F0_F0F0_F0F0,
            0xFF00_FF00_FF00_FF00,
            0xFFFF_0000_FFFF_0000,
            0xFFFF_FFFF_0000_0000,
        ];
        let n = self.channels;
        let rows = 1usize << n;
        let words = rows.div_ceil(64);
        let mut cols: Vec<Vec<u64>> = (0..n)
            .map(|k| {
                (0..words)
                    .map(|w| {
                        if k < 6 {
                            LOW_MASKS[k]
                        } else if (w >> (k - 6)) & 1 == 1 {
                            u64::MAX
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        for (i, j) in self.bit_pairs() {
            let (i, j) = (i as usize, j as usize);
            for w in 0..words {
                let (a, b) = (cols[i][w], cols[j][w]);
                cols[i][w] = a & b;
                cols[j][w] = a | b;
            }
        }
        let mut out = vec![0u64; rows];
        for (k, col) in cols.iter().enumerate() {
            for (w, &word) in col.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let t = bits.trailing_zeros() as usize;
                    let x = w * 64 + t;
                    if x < rows {
                        out[x] |= 1 << k;
                    }
                    bits &= bits - 1;
                }
            }
        }
        out
    }

    /// `outputs(C) = { C(x) | x in B^n }`.
    pub fn outputs(&self) -> Result<BoolSet> {
        let images = self.images()?;
        Ok(BoolSet::from_bits(self.channels, images))
    }

    /// True iff every Boolean input is sorted. Networks wider than the
    /// enumeration limit are checked input by input.
    pub fn is_sorting_network(&self) -> bool {
        let n = self.channels;
        if n <= MAX_ENUM_CHANNELS {
            return self.images().map(|v| v.iter().all(|&y| bits_sorted(y, n))).unwrap_or(false);
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        (0..=full).all(|x| bits_sorted(self.apply_bits(x), n))
    }

    /// True iff the network sorts every member of `inputs`.
    pub fn sorts_all(&self, inputs: &BoolSet) -> bool {
        inputs.n == self.channels && inputs.members.iter().all(|&x| bits_sorted(self.apply_bits(x), inputs.n))
    }

    /// `pi(C)`: comparator `(i,j)` becomes `(pi(i), pi(j))`. `perm[i-1] = pi(i)`.
    pub fn permute(&self, perm: &[usize]) -> Result<Network> {
        check_permutation(perm, self.channels)?;
        let layers = self
            .layers
            .iter()
            .map(|l| {
                Layer::new(
                    l.comparators.iter().map(|c| Comparator::new(perm[c.low - 1], perm[c.high - 1])).collect(),
                )
            })
            .collect();
        Network::from_layers(self.channels, layers)
    }

    /// Turns a generalized network into a standard one of the same depth and
    /// size. Layers are scanned left to right; a reversed comparator `(j,i)`
    /// is oriented forward and channels `i` and `j` are exchanged in all
    /// later layers. Leading standard layers are untouched.
    pub fn untangle(&self) -> Network {
        let mut relabel: Vec<usize> = (0..=self.channels).collect();
        let mut layers = Vec::with_capacity(self.layers.len());
        for layer in &self.layers {
            let mut out = Vec::with_capacity(layer.len());
            for c in &layer.comparators {
                let (a, b) = (relabel[c.low], relabel[c.high]);
                if a < b {
                    out.push(Comparator::new(a, b));
                } else {
                    out.push(Comparator::new(b, a));
                    for label in relabel.iter_mut() {
                        if *label == a {
                            *label = b;
                        } else if *label == b {
                            *label = a;
                        }
                    }
                }
            }
            layers.push(Layer::new(out));
        }
        Network { channels: self.channels, layers, generalized: false }
    }

    /// `C^R`: comparator `(i,j)` becomes `(n-j+1, n-i+1)`.
    pub fn reflect(&self) -> Network {
        let n = self.channels;
        let layers = self
            .layers
            .iter()
            .map(|l| Layer::new(l.comparators.iter().map(|c| Comparator::new(n + 1 - c.high, n + 1 - c.low)).collect()))
            .collect();
        Network { channels: n, layers, generalized: self.generalized }
    }

    /// Appends the layers of `other`.
    pub fn concat(&self, other: &Network) -> Result<Network> {
        self.check_width(other.channels)?;
        let mut layers = self.layers.clone();
        layers.extend(other.layers.iter().cloned());
        Network::from_layers(self.channels, layers)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("network serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Network> {
        Ok(serde_json::from_str(text)?)
    }
}

impl fmt::Display for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.layers.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct NetworkJson {
    n: usize,
    layers: Vec<Vec<[usize; 2]>>,
}

impl TryFrom<NetworkJson> for Network {
    type Error = Error;

    fn try_from(j: NetworkJson) -> Result<Self> {
        let layers = j
            .layers
            .into_iter()
            .map(|l| Layer::new(l.into_iter().map(|[i, k]| Comparator::new(i, k)).collect()))
            .collect();
        Network::from_layers(j.n, layers)
    }
}

impl From<Network> for NetworkJson {
    fn from(net: Network) -> Self {
        NetworkJson {
            n: net.channels,
            layers: net.layers.iter().map(|l| l.comparators.iter().map(|c| [c.low, c.high]).collect()).collect(),
        }
    }
}

#[inline]
fn apply_comparator(x: u64, i: u32, j: u32) -> u64 {
    let a = (x >> i) & 1;
    let b = (x >> j) & 1;
    if a > b {
        x ^ ((1 << i) | (1 << j))
    } else {
        x
    }
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Ascending along channel index: no `1` on channel `k` followed by `0` on `k+1`.
#[inline]
pub fn bits_sorted(x: u64, n: usize) -> bool {
    if n <= 1 {
        return true;
    }
    x & !(x >> 1) & low_mask(n - 1) == 0
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation(format!("length {} for {n} channels", perm.len())));
    }
    let mut seen = vec![false; n + 1];
    for &p in perm {
        if p == 0 || p > n || seen[p] {
            return Err(Error::InvalidPermutation(format!("{perm:?} is not a bijection on 1..={n}")));
        }
        seen[p] = true;
    }
    Ok(())
}

/// A Boolean vector of fixed length `n`; channel `k` is bit `k-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolVec {
    n: usize,
    bits: u64,
}

impl BoolVec {
    pub fn new(n: usize, bits: u64) -> Result<Self> {
        if n > MAX_CHANNELS {
            return Err(Error::TooLarge { what: "boolean vector", n, limit: MAX_CHANNELS });
        }
        if bits & !low_mask(n) != 0 {
            return Err(Error::DimensionMismatch { expected: n, actual: 64 - bits.leading_zeros() as usize });
        }
        Ok(BoolVec { n, bits })
    }

    pub fn from_channels(values: &[bool]) -> Self {
        let bits = values.iter().enumerate().fold(0u64, |acc, (k, &v)| acc | ((v as u64) << k));
        BoolVec { n: values.len(), bits }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Value on 1-based channel `k`.
    pub fn get(&self, channel: usize) -> bool {
        (self.bits >> (channel - 1)) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_sorted(&self) -> bool {
        bits_sorted(self.bits, self.n)
    }

    /// The sorted vector with the same number of ones.
    pub fn sorted(&self) -> BoolVec {
        BoolVec { n: self.n, bits: sorted_bits(self.bits, self.n) }
    }

    /// Reverses channel order and complements every bit.
    pub fn reverse_complement(&self) -> BoolVec {
        let rev = if self.n == 0 { 0 } else { self.bits.reverse_bits() >> (64 - self.n) };
        BoolVec { n: self.n, bits: !rev & low_mask(self.n) }
    }
}

pub(crate) fn sorted_bits(bits: u64, n: usize) -> u64 {
    let ones = bits.count_ones() as usize;
    low_mask(n) & !low_mask(n - ones)
}

impl fmt::Display for BoolVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 1..=self.n {
            f.write_str(if self.get(k) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BoolVec {
    type Err = Error;

    /// Parses `"0101"` with channel 1 first.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::MalformedWord { word: s.to_string(), reason: "expected 0/1".into() }),
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() > MAX_CHANNELS {
            return Err(Error::TooLarge { what: "boolean vector", n: values.len(), limit: MAX_CHANNELS });
        }
        Ok(BoolVec::from_channels(&values))
    }
}

/// A duplicate-free set of Boolean vectors of common length, kept sorted by
/// packed value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BoolSet {
    n: usize,
    members: Vec<u64>,
}

pub type InputSet = BoolSet;
pub type OutputSet = BoolSet;

impl BoolSet {
    pub fn from_bits(n: usize, bits: impl IntoIterator<Item = u64>) -> Self {
        let mask = low_mask(n);
        let mut members: Vec<u64> = bits.into_iter().map(|b| b & mask).collect();
        members.sort_unstable();
        members.dedup();
        BoolSet { n, members }
    }

    pub fn from_vecs<'a>(n: usize, vecs: impl IntoIterator<Item = &'a BoolVec>) -> Result<Self> {
        let mut bits = Vec::new();
        for v in vecs {
            if v.n != n {
                return Err(Error::DimensionMismatch { expected: n, actual: v.n });
            }
            bits.push(v.bits);
        }
        Ok(BoolSet::from_bits(n, bits))
    }

    /// All of `B^n`.
    pub fn all(n: usize) -> Result<Self> {
        if n > MAX_ENUM_CHANNELS {
            return Err(Error::TooLarge { what: "input enumeration", n, limit: MAX_ENUM_CHANNELS });
        }
        Ok(BoolSet { n, members: (0..1u64 << n).collect() })
    }

    pub fn channels(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn bits(&self) -> &[u64] {
        &self.members
    }

    pub fn contains_bits(&self, bits: u64) -> bool {
        self.members.binary_search(&bits).is_ok()
    }

    pub fn contains(&self, v: &BoolVec) -> bool {
        v.n == self.n && self.contains_bits(v.bits)
    }

    pub fn iter(&self) -> impl Iterator<Item = BoolVec> + '_ {
        self.members.iter().map(move |&bits| BoolVec { n: self.n, bits })
    }

    pub fn is_subset(&self, other: &BoolSet) -> bool {
        self.n == other.n && self.members.iter().all(|&b| other.contains_bits(b))
    }

    pub fn filter(&self, mut keep: impl FnMut(u64) -> bool) -> BoolSet {
        BoolSet { n: self.n, members: self.members.iter().copied().filter(|&b| keep(b)).collect() }
    }
}

/// `B^n_un` without a prefix, or `B^n_un(C)`: inputs left unsorted by `C`.
pub fn unsorted_inputs(n: usize, prefix: Option<&Network>) -> Result<InputSet> {
    if n > MAX_ENUM_CHANNELS {
        return Err(Error::TooLarge { what: "input enumeration", n, limit: MAX_ENUM_CHANNELS });
    }
    match prefix {
        None => Ok(BoolSet { n, members: (0..1u64 << n).filter(|&x| !bits_sorted(x, n)).collect() }),
        Some(c) => {
            c.check_width(n)?;
            let images = c.images()?;
            Ok(BoolSet {
                n,
                members: images
                    .iter()
                    .enumerate()
                    .filter(|(_, &y)| !bits_sorted(y, n))
                    .map(|(x, _)| x as u64)
                    .collect(),
            })
        }
    }
}

/// Members of `inputs` of the form `0^l1 . m . 1^l2` with `l1 + l2 = pad`.
/// `pad = 0` returns the set unchanged.
pub fn windows(inputs: &InputSet, pad: usize) -> Result<InputSet> {
    let n = inputs.n;
    if pad >= n {
        return Err(Error::PadTooLarge { pad, n });
    }
    if pad == 0 {
        return Ok(inputs.clone());
    }
    Ok(inputs.filter(|b| {
        (0..=pad).any(|zeros| {
            let ones = pad - zeros;
            let zero_mask = low_mask(zeros);
            let one_mask = low_mask(n) & !low_mask(n - ones);
            b & zero_mask == 0 && b & one_mask == one_mask
        })
    }))
}
