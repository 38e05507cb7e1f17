//! Words and sentences: canonical names for two-layer networks whose first
//! layer is maximal.
//!
//! A channel is tagged `1` (min output of its first-layer comparator), `2`
//! (max output) or `0` (the free channel when `n` is odd). Each connected
//! component of the first two layers is a path or a cycle; reading the tags
//! along it gives a word. Symbols come in pairs `12` or `21`, one pair per
//! first-layer comparator, in the order (entry channel, exit channel).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::network::{first_layer, Comparator, FirstLayerStyle, Layer, Network, MAX_CHANNELS};

/// Largest channel count for sentence generation.
pub const MAX_GEN_CHANNELS: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Head,
    Stick,
    Cycle,
}

impl Tag {
    pub fn letter(self) -> char {
        match self {
            Tag::Head => 'h',
            Tag::Stick => 's',
            Tag::Cycle => 'c',
        }
    }
}

/// A tagged word; ordering is by tag (`h < s < c`) then by symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    tag: Tag,
    symbols: Vec<u8>,
}

/// Pair sequence packed most-significant-first: pair `k` of `m` sits at bit
/// `m - 1 - k`, with `0` for `12` and `1` for `21`. Numeric order then
/// agrees with lexicographic order on symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Pairs {
    pub m: u32,
    pub bits: u64,
}

impl Pairs {
    fn mask(self) -> u64 {
        if self.m == 64 {
            u64::MAX
        } else {
            (1u64 << self.m) - 1
        }
    }

    fn with(self, bits: u64) -> Pairs {
        Pairs { m: self.m, bits: bits & self.mask() }
    }

    /// Swap `1` and `2` in every pair.
    pub fn complement(self) -> Pairs {
        self.with(!self.bits)
    }

    /// Reading the symbol string backwards: pairs reversed and flipped.
    pub fn reversed(self) -> Pairs {
        if self.m == 0 {
            return self;
        }
        let rev = self.bits.reverse_bits() >> (64 - self.m);
        self.with(!rev)
    }

    pub fn rotate(self, r: u32) -> Pairs {
        if r == 0 || self.m == 0 {
            return self;
        }
        self.with((self.bits << r) | (self.bits >> (self.m - r)))
    }

    pub fn stick_canonical(self) -> Pairs {
        self.min(self.reversed())
    }

    pub fn cycle_canonical(self) -> Pairs {
        let rev = self.reversed();
        (0..self.m.max(1)).flat_map(|r| [self.rotate(r), rev.rotate(r)]).min().unwrap_or(self)
    }

    /// Symmetries of a cycle word: rotations and reversed rotations fixing it.
    pub fn cycle_symmetries(self) -> u64 {
        let rev = self.reversed();
        (0..self.m).map(|r| (self.rotate(r) == self) as u64 + (rev.rotate(r) == self) as u64).sum()
    }

    fn symbols(self) -> impl Iterator<Item = u8> {
        (0..self.m).flat_map(move |k| {
            if (self.bits >> (self.m - 1 - k)) & 1 == 0 {
                [1, 2]
            } else {
                [2, 1]
            }
        })
    }
}

impl Word {
    /// Checks the pair structure: a head is `0` followed by pairs, sticks and
    /// cycles are one or more pairs. Canonical form is not required.
    pub fn new(tag: Tag, symbols: Vec<u8>) -> Result<Self> {
        let text = || symbols.iter().map(|s| char::from(b'0' + s)).collect::<String>() + "_" + &tag.letter().to_string();
        let bad = |reason: &str| Err(Error::MalformedWord { word: text(), reason: reason.to_string() });
        if symbols.len() > MAX_CHANNELS {
            return bad("too long");
        }
        let body = match tag {
            Tag::Head => {
                if symbols.first() != Some(&0) {
                    return bad("a head starts with 0");
                }
                &symbols[1..]
            }
            Tag::Stick | Tag::Cycle => {
                if symbols.is_empty() {
                    return bad("empty");
                }
                &symbols[..]
            }
        };
        if body.len() % 2 != 0 {
            return bad("odd number of paired symbols");
        }
        if !body.chunks(2).all(|p| p == [1, 2] || p == [2, 1]) {
            return bad("pairs must be 12 or 21");
        }
        Ok(Word { tag, symbols })
    }

    pub(crate) fn from_pairs(tag: Tag, p: Pairs) -> Word {
        let mut symbols = Vec::with_capacity(2 * p.m as usize + 1);
        if tag == Tag::Head {
            symbols.push(0);
        }
        symbols.extend(p.symbols());
        Word { tag, symbols }
    }

    pub(crate) fn pairs(&self) -> Pairs {
        let body = if self.tag == Tag::Head { &self.symbols[1..] } else { &self.symbols[..] };
        let bits = body.chunks(2).fold(0u64, |acc, p| (acc << 1) | (p[0] == 2) as u64);
        Pairs { m: (body.len() / 2) as u32, bits }
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Number of channels covered.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// First-layer comparators covered.
    pub fn pair_count(&self) -> usize {
        self.symbols.len() / 2
    }

    pub fn is_trivial_head(&self) -> bool {
        self.tag == Tag::Head && self.symbols.len() == 1
    }

    pub fn is_trivial_stick(&self) -> bool {
        self.tag == Tag::Stick && self.symbols == [1, 2]
    }

    /// `12_c`: a second-layer comparator repeating a first-layer one.
    pub fn is_repeat_cycle(&self) -> bool {
        self.tag == Tag::Cycle && self.symbols == [1, 2]
    }

    pub fn first_symbol(&self) -> u8 {
        self.symbols[0]
    }

    pub fn last_symbol(&self) -> u8 {
        *self.symbols.last().expect("words are non-empty")
    }

    pub fn canonical(&self) -> Word {
        let p = self.pairs();
        match self.tag {
            Tag::Head => self.clone(),
            Tag::Stick => Word::from_pairs(Tag::Stick, p.stick_canonical()),
            Tag::Cycle => Word::from_pairs(Tag::Cycle, p.cycle_canonical()),
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{s}")?;
        }
        write!(f, "_{}", self.tag.letter())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `01221_h`, `121221_s`, `1221_c`.
    fn from_str(s: &str) -> Result<Self> {
        let malformed = |reason: &str| Error::MalformedWord { word: s.to_string(), reason: reason.to_string() };
        let (body, tag) = s.trim().rsplit_once('_').ok_or_else(|| malformed("missing tag"))?;
        let tag = match tag {
            "h" => Tag::Head,
            "s" => Tag::Stick,
            "c" => Tag::Cycle,
            _ => return Err(malformed("tag must be h, s or c")),
        };
        let symbols = body
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                '2' => Ok(2),
                _ => Err(malformed("symbols must be 0, 1 or 2")),
            })
            .collect::<Result<Vec<u8>>>()?;
        Word::new(tag, symbols)
    }
}

/// Canonical form of a cycle word.
pub fn cycle_canonical(w: &Word) -> Result<Word> {
    if w.tag != Tag::Cycle {
        return Err(Error::NotACycle(w.to_string()));
    }
    Ok(w.canonical())
}

/// A cycle is asymmetric when its reflection is not equivalent to it.
pub fn is_asymmetric(w: &Word) -> Result<bool> {
    if w.tag != Tag::Cycle {
        return Err(Error::NotACycle(w.to_string()));
    }
    let p = w.pairs();
    Ok(p.complement().cycle_canonical() != p.cycle_canonical())
}

/// Word of the reflected network: swap `1` and `2`, then re-canonicalize.
pub fn reflect_word(w: &Word) -> Word {
    let p = w.pairs().complement();
    match w.tag {
        Tag::Head => Word::from_pairs(Tag::Head, p),
        Tag::Stick => Word::from_pairs(Tag::Stick, p.stick_canonical()),
        Tag::Cycle => Word::from_pairs(Tag::Cycle, p.cycle_canonical()),
    }
}

/// A multiset of words kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sentence {
    words: Vec<Word>,
}

impl Sentence {
    /// Sorts the words; at most one head is allowed.
    pub fn new(mut words: Vec<Word>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::MalformedSentence(String::new()));
        }
        if words.iter().filter(|w| w.tag == Tag::Head).count() > 1 {
            let text = words.iter().map(Word::to_string).collect::<Vec<_>>().join(";");
            return Err(Error::MalformedSentence(text));
        }
        words.sort();
        Ok(Sentence { words })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn channels(&self) -> usize {
        self.words.iter().map(Word::len).sum()
    }

    pub fn head(&self) -> Option<&Word> {
        self.words.iter().find(|w| w.tag == Tag::Head)
    }

    pub fn is_canonical(&self) -> bool {
        self.words.iter().all(Word::is_canonical)
    }

    /// Contains `12_c`.
    pub fn is_redundant(&self) -> bool {
        self.words.iter().any(Word::is_repeat_cycle)
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, w) in self.words.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for Sentence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let words = s.trim().split(';').map(str::parse).collect::<Result<Vec<Word>>>()?;
        Sentence::new(words)
    }
}

pub fn reflect_sentence(s: &Sentence) -> Sentence {
    Sentence::new(s.words.iter().map(reflect_word).collect()).expect("reflection keeps the head count")
}

/// Channel roles of a two-layer network.
struct TwoLayer {
    n: usize,
    symbol: Vec<u8>,
    l1: Vec<Option<usize>>,
    l2: Vec<Option<usize>>,
}

impl TwoLayer {
    fn new(net: &Network) -> Result<Self> {
        if net.depth() == 0 || net.depth() > 2 {
            return Err(Error::NotTwoLayer(net.depth()));
        }
        let n = net.channels();
        if !net.layers()[0].is_maximal(n) {
            return Err(Error::FirstLayerNotMaximal);
        }
        let mut symbol = vec![0u8; n + 1];
        let mut l1 = vec![None; n + 1];
        let mut l2 = vec![None; n + 1];
        for c in net.layers()[0].comparators() {
            symbol[c.low] = 1;
            symbol[c.high] = 2;
            l1[c.low] = Some(c.high);
            l1[c.high] = Some(c.low);
        }
        if let Some(layer) = net.layers().get(1) {
            for c in layer.comparators() {
                l2[c.low] = Some(c.high);
                l2[c.high] = Some(c.low);
            }
        }
        Ok(TwoLayer { n, symbol, l1, l2 })
    }

    /// Reads tags starting at `start`; a first-layer step is taken first
    /// unless `start` is free. Stops at a dead end or on returning to `start`.
    fn walk(&self, start: usize) -> (Vec<u8>, Vec<usize>) {
        let mut symbols = vec![self.symbol[start]];
        let mut seen = vec![start];
        let mut cur = start;
        if let Some(p) = self.l1[start] {
            symbols.push(self.symbol[p]);
            seen.push(p);
            cur = p;
        }
        while let Some(next) = self.l2[cur] {
            if next == start {
                break;
            }
            let p = self.l1[next].expect("only the free channel lacks a first-layer partner");
            symbols.extend([self.symbol[next], self.symbol[p]]);
            seen.extend([next, p]);
            cur = p;
        }
        (symbols, seen)
    }

    fn component(&self, start: usize) -> Vec<usize> {
        let mut comp = vec![start];
        let mut stack = vec![start];
        let mut seen = vec![false; self.n + 1];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for y in [self.l1[x], self.l2[x]].into_iter().flatten() {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                    stack.push(y);
                }
            }
        }
        comp
    }

    fn word(&self, comp: &[usize]) -> Word {
        if let Some(&free) = comp.iter().find(|&&c| self.l1[c].is_none()) {
            return Word { tag: Tag::Head, symbols: self.walk(free).0 };
        }
        let ends: Vec<usize> = comp.iter().copied().filter(|&c| self.l2[c].is_none()).collect();
        let (tag, starts) = if ends.is_empty() { (Tag::Cycle, comp.to_vec()) } else { (Tag::Stick, ends) };
        let symbols = starts.iter().map(|&s| self.walk(s).0).min().expect("components are non-empty");
        Word { tag, symbols }
    }

    fn words(&self) -> Vec<Word> {
        let mut done = vec![false; self.n + 1];
        let mut out = Vec::new();
        for ch in 1..=self.n {
            if done[ch] {
                continue;
            }
            let comp = self.component(ch);
            for &c in &comp {
                done[c] = true;
            }
            out.push(self.word(&comp));
        }
        out
    }
}

/// Word of a connected two-layer network with a maximal first layer. A
/// network with only the first layer is read as having an empty second one.
pub fn word_of(net: &Network) -> Result<Word> {
    let t = TwoLayer::new(net)?;
    let words = t.words();
    if words.len() != 1 {
        return Err(Error::Disconnected);
    }
    Ok(words.into_iter().next().expect("one word"))
}

pub fn sentence_of(net: &Network) -> Result<Sentence> {
    Sentence::new(TwoLayer::new(net)?.words())
}

/// Builds the two-layer network of a sentence on first layer `F_n`.
///
/// Pairs are laid out on consecutive channels in sentence order, so pair `k`
/// uses channels `2k+1` (min) and `2k+2` (max), and the symbol `x` of pair
/// `k` names channel `2k+x`. The second layer joins each exit to the next
/// entry, closing cycles; a head's free channel is channel `n`.
pub fn net_of(s: &Sentence) -> Network {
    let n = s.channels();
    let mut l2 = Vec::new();
    let mut k = 0usize;
    let channel = |k: usize, sym: u8| 2 * k + sym as usize;
    for w in &s.words {
        let body = if w.tag == Tag::Head { &w.symbols[1..] } else { &w.symbols[..] };
        let pairs: Vec<(usize, usize)> =
            body.chunks(2).enumerate().map(|(i, p)| (channel(k + i, p[0]), channel(k + i, p[1]))).collect();
        if w.tag == Tag::Head && !pairs.is_empty() {
            l2.push(link(n, pairs[0].0));
        }
        for win in pairs.windows(2) {
            l2.push(link(win[0].1, win[1].0));
        }
        if w.tag == Tag::Cycle {
            l2.push(link(pairs[pairs.len() - 1].1, pairs[0].0));
        }
        k += pairs.len();
    }
    Network::from_layers(n, vec![first_layer(n, FirstLayerStyle::Adjacent), Layer::new(l2)])
        .expect("sentence layouts are valid two-layer networks")
}

fn link(a: usize, b: usize) -> Comparator {
    Comparator::new(a.min(b), a.max(b))
}

/// All canonical words of `tag` with `len` symbols.
pub fn canonical_words(tag: Tag, len: usize) -> Vec<Word> {
    let m = match tag {
        Tag::Head if len % 2 == 1 => (len - 1) / 2,
        Tag::Stick | Tag::Cycle if len % 2 == 0 && len > 0 => len / 2,
        _ => return Vec::new(),
    };
    assert!(m <= 32, "word length {len} exceeds the supported range");
    let m = m as u32;
    let mut out = Vec::new();
    let top = if tag == Tag::Cycle { 1u64 << m.saturating_sub(1) } else { 1u64 << m };
    for bits in 0..top {
        let p = Pairs { m, bits };
        let keep = match tag {
            Tag::Head => true,
            Tag::Stick => p.stick_canonical() == p,
            Tag::Cycle => p.cycle_canonical() == p,
        };
        if keep {
            out.push(Word::from_pairs(tag, p));
        }
    }
    out
}

/// Number of asymmetric canonical cycle words on `n` channels, modulo reflection.
pub fn asymmetric_cycle_count(n: usize) -> u64 {
    if n % 2 == 1 || n < 2 {
        return 0;
    }
    let m = (n / 2) as u32;
    assert!(m <= 32, "cycle length {n} exceeds the supported range");
    let mut count = 0u64;
    // canonical cycles start with pair 12, i.e. a clear top bit
    for bits in 0..1u64 << (m - 1) {
        let p = Pairs { m, bits };
        if p.cycle_canonical() == p && p.complement().cycle_canonical() != p {
            count += 1;
        }
    }
    count / 2
}

/// The prefix families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetKind {
    /// All second layers over `F_n`.
    Gn,
    /// Classes of `Gn`.
    RGn,
    /// Saturated second layers over `F_n`.
    Sn,
    /// Classes of `Sn`.
    RSn,
    /// Classes of `Sn` modulo reflection.
    Rn,
}

impl FromStr for SetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gn" => Ok(SetKind::Gn),
            "rgn" => Ok(SetKind::RGn),
            "sn" => Ok(SetKind::Sn),
            "rsn" => Ok(SetKind::RSn),
            "rn" => Ok(SetKind::Rn),
            _ => Err(Error::MalformedSentence(format!("unknown set `{s}`"))),
        }
    }
}

/// Visits every multiset of words from `pool` with total length `n` and at
/// most one head. `pool` must be sorted.
fn for_each_multiset(pool: &[Word], n: usize, visit: &mut dyn FnMut(&[Word])) {
    fn go(pool: &[Word], start: usize, left: usize, head: bool, acc: &mut Vec<Word>, visit: &mut dyn FnMut(&[Word])) {
        if left == 0 {
            visit(acc);
            return;
        }
        for i in start..pool.len() {
            let w = &pool[i];
            if w.len() > left || (head && w.tag == Tag::Head) {
                continue;
            }
            acc.push(w.clone());
            // a head may not repeat, so move past it
            let next = if w.tag == Tag::Head { i + 1 } else { i };
            go(pool, next, left - w.len(), head || w.tag == Tag::Head, acc, visit);
            acc.pop();
        }
    }
    go(pool, 0, n, false, &mut Vec::new(), visit);
}

fn word_pool(n: usize, keep: impl Fn(&Word) -> bool) -> Vec<Word> {
    let mut pool = Vec::new();
    for tag in [Tag::Head, Tag::Stick, Tag::Cycle] {
        for len in 1..=n {
            pool.extend(canonical_words(tag, len).into_iter().filter(|w| keep(w)));
        }
    }
    pool.sort();
    pool
}

/// Word-level rules for saturated classes: any head, the stick `12` or a
/// stick of at least three pairs that begins and ends with the same symbol,
/// and cycles of at least two pairs.
pub fn is_saturated_word(w: &Word) -> bool {
    match w.tag {
        Tag::Head => true,
        Tag::Stick => w.is_trivial_stick() || (w.len() >= 6 && w.first_symbol() == w.last_symbol()),
        Tag::Cycle => w.len() >= 4,
    }
}

/// The open end of a non-trivial head or stick: `1` when it is a min
/// channel, `2` when it is a max channel.
fn open_end(w: &Word) -> Option<u8> {
    match w.tag {
        Tag::Head if !w.is_trivial_head() => Some(w.last_symbol()),
        Tag::Stick if !w.is_trivial_stick() => Some(w.last_symbol()),
        _ => None,
    }
}

/// Syntactic saturation of a sentence.
pub fn is_saturated_sentence(s: &Sentence) -> bool {
    if !s.words.iter().all(|w| is_saturated_word(w) && w.is_canonical()) {
        return false;
    }
    let trivial = s.words.iter().filter(|w| w.is_trivial_head() || w.is_trivial_stick()).count();
    if trivial > 1 || (trivial == 1 && s.words.iter().filter(|w| w.tag != Tag::Cycle).count() > 1) {
        return false;
    }
    let mut ends = s.words.iter().filter_map(open_end);
    match ends.next() {
        Some(first) => ends.all(|e| e == first),
        None => true,
    }
}

/// Membership in the reflection-reduced representative set.
pub fn is_representative(s: &Sentence) -> bool {
    if !is_saturated_sentence(s) {
        return false;
    }
    if let Some(h) = s.head().filter(|h| !h.is_trivial_head()) {
        // a non-trivial head must leave a min channel open; sticks then agree
        return h.last_symbol() == 1;
    }
    if s.words.iter().any(|w| open_end(w).is_some()) {
        // only sticks are open: they must leave max channels open
        return s.words.iter().filter_map(open_end).all(|e| e == 2);
    }
    asymmetric_tie_break(s)
}

/// For the shortest length at which exactly one distinct asymmetric cycle
/// occurs, that cycle must be smaller than its reflection.
fn asymmetric_tie_break(s: &Sentence) -> bool {
    let mut by_len: std::collections::BTreeMap<usize, Vec<&Word>> = Default::default();
    for w in s.words.iter().filter(|w| w.tag == Tag::Cycle) {
        if is_asymmetric(w).expect("cycle") {
            let entry = by_len.entry(w.len()).or_default();
            if !entry.contains(&w) {
                entry.push(w);
            }
        }
    }
    match by_len.values().find(|ws| ws.len() == 1) {
        Some(ws) => *ws[0] < reflect_word(ws[0]),
        None => true,
    }
}

/// Canonical sentences of one family, in sorted order. `Gn` and `Sn` are
/// families of layers, not classes; see [`for_each_second_layer`].
pub fn generate_sentences(n: usize, kind: SetKind) -> Result<Vec<Sentence>> {
    if !(1..=MAX_GEN_CHANNELS).contains(&n) {
        return Err(Error::Unsupported { what: "sentence generation", n });
    }
    let mut out = Vec::new();
    match kind {
        SetKind::RGn => {
            let pool = word_pool(n, |_| true);
            for_each_multiset(&pool, n, &mut |ws| out.push(Sentence { words: ws.to_vec() }));
        }
        SetKind::RSn | SetKind::Rn => {
            let pool = word_pool(n, is_saturated_word);
            for_each_multiset(&pool, n, &mut |ws| {
                let s = Sentence { words: ws.to_vec() };
                let keep = if kind == SetKind::RSn { is_saturated_sentence(&s) } else { is_representative(&s) };
                if keep {
                    out.push(s);
                }
            });
        }
        SetKind::Gn | SetKind::Sn => return Err(Error::Unsupported { what: "sentence generation of layer families", n }),
    }
    out.sort();
    Ok(out)
}

/// Visits every second layer over `F_n`, i.e. every matching on `1..=n`.
pub fn for_each_second_layer(n: usize, visit: &mut dyn FnMut(&Layer)) {
    fn go(free: &mut Vec<usize>, acc: &mut Vec<Comparator>, visit: &mut dyn FnMut(&Layer)) {
        let Some(a) = free.pop() else {
            visit(&Layer::new(acc.clone()));
            return;
        };
        go(free, acc, visit);
        for i in 0..free.len() {
            let b = free.remove(i);
            acc.push(Comparator::new(a.min(b), a.max(b)));
            go(free, acc, visit);
            acc.pop();
            free.insert(i, b);
        }
        free.push(a);
    }
    let mut free: Vec<usize> = (1..=n).rev().collect();
    go(&mut free, &mut Vec::new(), visit);
}

/// `|G_n|`: involutions on `n` points.
pub fn count_second_layers(n: usize) -> u128 {
    let (mut a, mut b) = (1u128, 1u128);
    for k in 2..=n as u128 {
        let c = b + (k - 1) * a;
        a = b;
        b = c;
    }
    if n == 0 {
        1
    } else {
        b
    }
}

/// Number of second layers over `F_n` whose network has sentence `s`.
pub fn class_size(s: &Sentence) -> u128 {
    let pairs = s.words.iter().map(Word::pair_count).sum::<usize>();
    let mut denom = 1u128;
    let mut i = 0;
    while i < s.words.len() {
        let j = (i..s.words.len()).find(|&j| s.words[j] != s.words[i]).unwrap_or(s.words.len());
        let k = (j - i) as u128;
        let w = &s.words[i];
        let aut: u128 = match w.tag {
            Tag::Head => 1,
            Tag::Stick => 1 + (w.pairs().reversed() == w.pairs()) as u128,
            Tag::Cycle => w.pairs().cycle_symmetries() as u128,
        };
        denom *= factorial(k) * aut.pow(k as u32);
        i = j;
    }
    factorial(pairs as u128) / denom
}

fn factorial(k: u128) -> u128 {
    (1..=k).product::<u128>().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeMap, BTreeSet};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn sent(s: &str) -> Sentence {
        s.parse().unwrap()
    }

    fn two_layer(n: usize, l2: &[(usize, usize)]) -> Network {
        Network::from_layers(n, vec![first_layer(n, FirstLayerStyle::Adjacent), Layer::from_pairs(l2)]).unwrap()
    }

    #[test]
    fn parse_and_display() {
        for s in ["01221_h", "0_h", "12_s", "21121212_s", "121221_c", "12_c"] {
            assert_eq!(w(s).to_string(), s);
        }
        for bad in ["1221", "0122_h", "11_s", "_c", "013_s", "012_x", "1_s"] {
            assert!(bad.parse::<Word>().is_err(), "{bad}");
        }
        assert!("012_h;0_h".parse::<Sentence>().is_err());
    }

    #[test]
    fn fig4a_head() {
        let net = Network::from_pairs(5, &[&[(1, 2), (3, 4)], &[(2, 4), (1, 5)]]).unwrap();
        assert_eq!(word_of(&net).unwrap(), w("01221_h"));
    }

    #[test]
    fn fig4b_stick() {
        let net = two_layer(8, &[(1, 4), (5, 7), (3, 8)]);
        assert_eq!(word_of(&net).unwrap(), w("21121212_s"));
    }

    #[test]
    fn fig4c_cycle() {
        let net = two_layer(6, &[(1, 3), (4, 6), (2, 5)]);
        assert_eq!(word_of(&net).unwrap(), w("121221_c"));
    }

    #[test]
    fn fig4d_sentence_and_regeneration() {
        let net = Network::from_pairs(
            10,
            &[&[(1, 6), (2, 7), (3, 8), (4, 9), (5, 10)], &[(1, 4), (6, 9), (2, 5), (7, 10)]],
        )
        .unwrap();
        let s = sentence_of(&net).unwrap();
        assert_eq!(s.to_string(), "12_s;1221_c;1221_c");
        let d_prime = net_of(&s);
        assert_eq!(d_prime, two_layer(10, &[(4, 6), (3, 5), (8, 10), (7, 9)]));
        assert_eq!(sentence_of(&d_prime).unwrap(), s);
    }

    #[test]
    fn first_layer_only() {
        let f4 = Network::from_layers(4, vec![first_layer(4, FirstLayerStyle::Adjacent)]).unwrap();
        assert_eq!(sentence_of(&f4).unwrap().to_string(), "12_s;12_s");
        let f3 = Network::from_layers(3, vec![first_layer(3, FirstLayerStyle::Adjacent)]).unwrap();
        assert_eq!(sentence_of(&f3).unwrap().to_string(), "0_h;12_s");
    }

    #[test]
    fn word_of_rejects_bad_input() {
        assert!(matches!(word_of(&two_layer(4, &[])), Err(Error::Disconnected)));
        let partial = Network::from_pairs(4, &[&[(1, 2)], &[(2, 3)]]).unwrap();
        assert!(matches!(word_of(&partial), Err(Error::FirstLayerNotMaximal)));
        let deep = Network::from_pairs(2, &[&[(1, 2)], &[], &[]]).unwrap();
        assert!(matches!(sentence_of(&deep), Err(Error::NotTwoLayer(3))));
    }

    #[test]
    fn trivial_head_net() {
        let net = net_of(&sent("0_h"));
        assert_eq!(net.channels(), 1);
        assert_eq!(net.size(), 0);
    }

    #[test]
    fn reflection_of_words() {
        assert_eq!(reflect_word(&w("211212_s")), w("121221_s"));
        assert_eq!(reflect_word(&w("121221_s")), w("211212_s"));
        assert_eq!(reflect_word(&w("1221_c")), w("1221_c"));
        assert_eq!(reflect_word(&w("01221_h")), w("02112_h"));
    }

    #[test]
    fn fig5_words_match_networks() {
        let a = two_layer(6, &[(2, 3), (4, 6)]);
        let b = two_layer(6, &[(1, 3), (4, 5)]);
        assert_eq!(sentence_of(&a).unwrap().to_string(), "121221_s");
        assert_eq!(sentence_of(&b).unwrap().to_string(), "211212_s");
        assert_eq!(a.reflect(), b);
    }

    #[test]
    fn asymmetric_cycles() {
        let twelve: Vec<Word> = canonical_words(Tag::Cycle, 12).into_iter().filter(|c| is_asymmetric(c).unwrap()).collect();
        assert_eq!(twelve.len(), 2);
        assert_eq!(reflect_word(&twelve[0]), twelve[1]);
        assert!(is_asymmetric(&w("12_s")).is_err());
        assert!(cycle_canonical(&w("0_h")).is_err());
        for len in (2..12).step_by(2) {
            for c in canonical_words(Tag::Cycle, len) {
                assert!(!is_asymmetric(&c).unwrap(), "{c}");
            }
        }
        assert_eq!(asymmetric_cycle_count(12), 1);
        assert_eq!(asymmetric_cycle_count(16), 4);
    }

    #[test]
    fn cycle_canonical_matches_network_word() {
        let c = w("211212_c");
        let canon = cycle_canonical(&c).unwrap();
        let net = net_of(&Sentence::new(vec![c]).unwrap());
        assert_eq!(word_of(&net).unwrap(), canon);
    }

    /// Brute-force classes: sentence of every second layer over `F_n`.
    fn brute_classes(n: usize) -> BTreeMap<Sentence, u128> {
        let f = first_layer(n, FirstLayerStyle::Adjacent);
        let mut map = BTreeMap::new();
        for_each_second_layer(n, &mut |l2| {
            let net = Network::from_layers(n, vec![f.clone(), l2.clone()]).unwrap();
            *map.entry(sentence_of(&net).unwrap()).or_insert(0) += 1;
        });
        map
    }

    #[test]
    fn generated_classes_match_brute_force() {
        for n in 2..=8 {
            let brute = brute_classes(n);
            let generated = generate_sentences(n, SetKind::RGn).unwrap();
            let gen_set: BTreeSet<_> = generated.iter().cloned().collect();
            assert_eq!(gen_set.len(), generated.len());
            assert_eq!(brute.keys().cloned().collect::<BTreeSet<_>>(), gen_set, "n = {n}");
            for (s, count) in &brute {
                assert_eq!(class_size(s), *count, "{s}");
            }
            assert_eq!(brute.values().sum::<u128>(), count_second_layers(n));
        }
    }

    #[test]
    fn net_word_round_trip() {
        for n in 3..=10 {
            for s in generate_sentences(n, SetKind::RGn).unwrap() {
                assert_eq!(sentence_of(&net_of(&s)).unwrap(), s);
            }
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(generate_sentences(3, SetKind::RGn).unwrap().len(), 4);
        assert_eq!(generate_sentences(4, SetKind::RGn).unwrap().len(), 8);
        assert_eq!(count_second_layers(3), 4);
        assert_eq!(count_second_layers(4), 10);
        assert_eq!(generate_sentences(3, SetKind::RSn).unwrap().len(), 2);
        assert_eq!(generate_sentences(3, SetKind::Rn).unwrap().len(), 1);
        assert!(generate_sentences(41, SetKind::RGn).is_err());
    }

    #[test]
    fn representatives_are_one_per_reflection_pair() {
        for n in 3..=10 {
            let rs: BTreeSet<_> = generate_sentences(n, SetKind::RSn).unwrap().into_iter().collect();
            let rn: BTreeSet<_> = generate_sentences(n, SetKind::Rn).unwrap().into_iter().collect();
            assert!(rn.is_subset(&rs));
            for s in &rs {
                let r = reflect_sentence(s);
                assert!(rs.contains(&r));
                assert!(rn.contains(s) || rn.contains(&r), "{s} unrepresented");
                if r != *s {
                    assert!(!(rn.contains(s) && rn.contains(&r)), "{s} and its reflection both kept");
                }
            }
        }
    }

    #[test]
    fn reflected_sentence_matches_reflected_network() {
        for n in 3..=9 {
            for s in generate_sentences(n, SetKind::RGn).unwrap() {
                let r = sentence_of(&net_of(&s).reflect()).unwrap();
                assert_eq!(r, reflect_sentence(&s), "{s}");
            }
        }
    }
}
