//! CNF encoding of "some depth-`d` network on `n` channels sorts every input
//! in `X`", with optional symmetry-breaking clauses and a fixed prefix.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::network::{sorted_bits, windows, BoolSet, Comparator, InputSet, Layer, Network};

pub type Clause = Vec<i32>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: u32,
    pub clauses: Vec<Clause>,
}

impl Cnf {
    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Vec::is_empty)
    }

    /// True iff `assignment[v]` (1-based) satisfies every clause.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| lit_value(assignment, l)))
    }
}

fn lit_value(assignment: &[bool], lit: i32) -> bool {
    let v = assignment.get(lit.unsigned_abs() as usize).copied().unwrap_or(false);
    if lit > 0 {
        v
    } else {
        !v
    }
}

/// Variable numbering. Comparator variables come first (layer-major, pairs in
/// lexicographic order), then usage variables, then value variables for
/// the inner levels `1..d` of each input in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarMap {
    n: usize,
    d: usize,
    inputs: Vec<u64>,
}

impl VarMap {
    pub fn new(n: usize, d: usize, inputs: &InputSet) -> Self {
        VarMap { n, d, inputs: inputs.bits().to_vec() }
    }

    pub fn channels(&self) -> usize {
        self.n
    }

    pub fn depth(&self) -> usize {
        self.d
    }

    pub fn inputs(&self) -> &[u64] {
        &self.inputs
    }

    fn pairs(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i < j && j <= self.n);
        // pairs (1,2),(1,3),...,(1,n),(2,3),...
        (i - 1) * (2 * self.n - i) / 2 + (j - i - 1)
    }

    /// `c(layer, i, j)` for `1 <= layer <= d`, `i < j`.
    pub fn comparator(&self, layer: usize, i: usize, j: usize) -> i32 {
        assert!((1..=self.d).contains(&layer));
        (1 + (layer - 1) * self.pairs() + self.pair_index(i, j)) as i32
    }

    /// `u(layer, k)`: channel `k` is used in `layer`.
    pub fn used(&self, layer: usize, k: usize) -> i32 {
        assert!((1..=self.d).contains(&layer) && (1..=self.n).contains(&k));
        (1 + self.d * self.pairs() + (layer - 1) * self.n + (k - 1)) as i32
    }

    /// `x(input, level, k)` for inner levels `1 <= level < d`.
    pub fn value(&self, input: usize, level: usize, k: usize) -> i32 {
        assert!(level >= 1 && level < self.d && (1..=self.n).contains(&k) && input < self.inputs.len());
        let base = self.d * self.pairs() + self.d * self.n;
        (1 + base + input * (self.d - 1) * self.n + (level - 1) * self.n + (k - 1)) as i32
    }

    pub fn num_vars(&self) -> u32 {
        let inner = self.d.saturating_sub(1);
        (self.d * self.pairs() + self.d * self.n + self.inputs.len() * inner * self.n) as u32
    }

    pub fn comparator_vars(&self) -> usize {
        self.d * self.pairs()
    }

    pub fn used_vars(&self) -> usize {
        self.d * self.n
    }

    fn level_literal(&self, input: usize, level: usize, k: usize) -> Lit {
        let b = self.inputs[input];
        if level == 0 {
            Lit::Const((b >> (k - 1)) & 1 == 1)
        } else if level == self.d {
            Lit::Const((sorted_bits(b, self.n) >> (k - 1)) & 1 == 1)
        } else {
            Lit::Var(self.value(input, level, k))
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Lit {
    Var(i32),
    Const(bool),
}

impl Lit {
    fn neg(self) -> Lit {
        match self {
            Lit::Var(v) => Lit::Var(-v),
            Lit::Const(b) => Lit::Const(!b),
        }
    }
}

/// Collects clauses, folding constants and dropping duplicates.
struct Fragment {
    clauses: Vec<Clause>,
    seen: HashSet<Clause>,
}

impl Fragment {
    fn new() -> Self {
        Fragment { clauses: Vec::new(), seen: HashSet::new() }
    }

    fn push(&mut self, lits: &[Lit]) {
        let mut clause = Vec::with_capacity(lits.len());
        for l in lits {
            match *l {
                Lit::Const(true) => return,
                Lit::Const(false) => {}
                Lit::Var(v) => {
                    if clause.contains(&-v) {
                        return;
                    }
                    if !clause.contains(&v) {
                        clause.push(v);
                    }
                }
            }
        }
        if self.seen.insert(clause.clone()) {
            self.clauses.push(clause);
        }
    }

    fn push_vars(&mut self, vars: &[i32]) {
        let lits: Vec<Lit> = vars.iter().map(|&v| Lit::Var(v)).collect();
        self.push(&lits);
    }
}

/// Switches for the optional clause groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodeOptions {
    /// No comparator repeated in consecutive layers.
    pub sigma1: bool,
    /// A comparator cannot be moved to the previous layer.
    pub sigma2: bool,
    /// Every adjacent comparator `(i, i+1)` occurs somewhere.
    pub sigma3: bool,
    /// Window padding; 0 keeps the input set.
    pub pad: usize,
    pub prefix: Option<Network>,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        EncodeOptions { sigma1: true, sigma2: true, sigma3: true, pad: 0, prefix: None }
    }
}

impl EncodeOptions {
    pub fn plain() -> Self {
        EncodeOptions { sigma1: false, sigma2: false, sigma3: false, pad: 0, prefix: None }
    }
}

fn incident(vm: &VarMap, layer: usize, k: usize) -> Vec<i32> {
    (1..=vm.n).filter(|&m| m != k).map(|m| vm.comparator(layer, k.min(m), k.max(m))).collect()
}

/// Usage definitions and pairwise at-most-one per channel and layer.
pub fn encode_structure(vm: &VarMap) -> Vec<Clause> {
    let mut f = Fragment::new();
    for layer in 1..=vm.d {
        for k in 1..=vm.n {
            let u = vm.used(layer, k);
            let inc = incident(vm, layer, k);
            let mut def = vec![-u];
            def.extend(&inc);
            f.push_vars(&def);
            for &c in &inc {
                f.push_vars(&[-c, u]);
            }
            f.clauses.extend(at_most_one(&inc));
        }
    }
    f.clauses
}

/// Pairwise at-most-one.
pub fn at_most_one(vars: &[i32]) -> Vec<Clause> {
    let mut out = Vec::new();
    for (a, &x) in vars.iter().enumerate() {
        for &y in &vars[a + 1..] {
            out.push(vec![-x, -y]);
        }
    }
    out
}

/// Clauses forcing input number `input` of `vm` through the network into
/// its sorted form.
pub fn encode_input_sort(vm: &VarMap, input: usize) -> Vec<Clause> {
    let mut f = Fragment::new();
    if vm.d == 0 {
        let b = vm.inputs[input];
        if b != sorted_bits(b, vm.n) {
            f.clauses.push(Vec::new());
        }
        return f.clauses;
    }
    for layer in 1..=vm.d {
        let x = |k| vm.level_literal(input, layer - 1, k);
        let y = |k| vm.level_literal(input, layer, k);
        for i in 1..=vm.n {
            for j in i + 1..=vm.n {
                let nc = Lit::Var(-vm.comparator(layer, i, j));
                // min on channel i
                f.push(&[nc, y(i).neg(), x(i)]);
                f.push(&[nc, y(i).neg(), x(j)]);
                f.push(&[nc, y(i), x(i).neg(), x(j).neg()]);
                // max on channel j
                f.push(&[nc, y(j), x(i).neg()]);
                f.push(&[nc, y(j), x(j).neg()]);
                f.push(&[nc, y(j).neg(), x(i), x(j)]);
            }
        }
        for k in 1..=vm.n {
            let u = Lit::Var(vm.used(layer, k));
            f.push(&[u, x(k).neg(), y(k)]);
            f.push(&[u, x(k), y(k).neg()]);
        }
    }
    f.clauses
}

/// Symmetry-breaking clauses. Eager placement is only required from the
/// second free layer on, since moving a comparator into a fixed prefix
/// layer would change the prefix.
pub fn encode_symmetry(vm: &VarMap, opts: &EncodeOptions) -> Vec<Clause> {
    let mut f = Fragment::new();
    let fixed = opts.prefix.as_ref().map_or(0, Network::depth);
    if opts.sigma1 {
        for layer in 1..vm.d {
            for i in 1..=vm.n {
                for j in i + 1..=vm.n {
                    f.push_vars(&[-vm.comparator(layer, i, j), -vm.comparator(layer + 1, i, j)]);
                }
            }
        }
    }
    if opts.sigma2 {
        for layer in (fixed + 2).max(2)..=vm.d {
            for i in 1..=vm.n {
                for j in i + 1..=vm.n {
                    f.push_vars(&[-vm.comparator(layer, i, j), vm.used(layer - 1, i), vm.used(layer - 1, j)]);
                }
            }
        }
    }
    if opts.sigma3 && vm.d >= 1 {
        for i in 1..vm.n {
            let clause: Vec<i32> = (1..=vm.d).map(|l| vm.comparator(l, i, i + 1)).collect();
            f.push_vars(&clause);
        }
    }
    f.clauses
}

/// Unit clauses pinning the first layers to `prefix`.
pub fn encode_fixed_prefix(vm: &VarMap, prefix: &Network) -> Result<Vec<Clause>> {
    if prefix.depth() > vm.d {
        return Err(Error::PrefixTooDeep { prefix: prefix.depth(), depth: vm.d });
    }
    if prefix.channels() != vm.n {
        return Err(Error::DimensionMismatch { expected: vm.n, actual: prefix.channels() });
    }
    if let Some(c) = prefix.comparators().find(|c| c.is_reversed()) {
        return Err(Error::ReversedComparator { low: c.low, high: c.high });
    }
    let mut out = Vec::new();
    for (k, layer) in prefix.layers().iter().enumerate() {
        for i in 1..=vm.n {
            for j in i + 1..=vm.n {
                let v = vm.comparator(k + 1, i, j);
                out.push(vec![if layer.contains_pair(i, j) { v } else { -v }]);
            }
        }
    }
    Ok(out)
}

/// The full formula. When `opts.pad > 0` the inputs are windowed first.
pub fn build(n: usize, d: usize, inputs: &InputSet, opts: &EncodeOptions) -> Result<(VarMap, Cnf)> {
    if inputs.channels() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: inputs.channels() });
    }
    let windowed;
    let inputs = if opts.pad > 0 {
        windowed = windows(inputs, opts.pad)?;
        &windowed
    } else {
        inputs
    };
    let vm = VarMap::new(n, d, inputs);
    let mut clauses = Vec::new();
    if let Some(prefix) = &opts.prefix {
        clauses.extend(encode_fixed_prefix(&vm, prefix)?);
    }
    clauses.extend(encode_structure(&vm));
    clauses.extend(encode_symmetry(&vm, opts));
    for b in 0..vm.inputs.len() {
        clauses.extend(encode_input_sort(&vm, b));
    }
    let cnf = Cnf { num_vars: vm.num_vars(), clauses };
    Ok((vm, cnf))
}

/// DIMACS text. An empty clause is written as a bare `0`.
pub fn to_dimacs(cnf: &Cnf) -> String {
    let mut out = String::with_capacity(cnf.clauses.len() * 12 + 32);
    writeln!(out, "p cnf {} {}", cnf.num_vars, cnf.clauses.len()).expect("write to string");
    for c in &cnf.clauses {
        for l in c {
            write!(out, "{l} ").expect("write to string");
        }
        out.push_str("0\n");
    }
    out
}

/// Outcome of a solver run, parsed from its standard output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverOutput {
    /// Model as a 1-based truth table (index 0 unused).
    Sat(Vec<bool>),
    Unsat,
    Unknown(String),
}

/// Reads an `s` status line and `v` value lines.
pub fn parse_solver_output(text: &str) -> SolverOutput {
    let mut status = None;
    let mut lits: Vec<i64> = Vec::new();
    let mut terminated = false;
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("v ").or_else(|| (line == "v").then_some("")) {
            for tok in rest.split_whitespace() {
                match tok.parse::<i64>() {
                    Ok(0) => terminated = true,
                    Ok(l) => lits.push(l),
                    Err(_) => return SolverOutput::Unknown(format!("bad value token `{tok}`")),
                }
            }
        }
    }
    match status.as_deref() {
        Some("SATISFIABLE") => {
            if !terminated {
                return SolverOutput::Unknown("model not terminated by 0".into());
            }
            let max = lits.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0) as usize;
            let mut model = vec![false; max + 1];
            for l in lits {
                model[l.unsigned_abs() as usize] = l > 0;
            }
            SolverOutput::Sat(model)
        }
        Some("UNSATISFIABLE") => SolverOutput::Unsat,
        Some(other) => SolverOutput::Unknown(format!("status `{other}`")),
        None => SolverOutput::Unknown("no status line".into()),
    }
}

/// Reads the comparator variables of a model into a network.
pub fn decode_network(vm: &VarMap, model: &[bool]) -> Result<Network> {
    let mut layers = Vec::with_capacity(vm.d);
    for layer in 1..=vm.d {
        let mut comps = Vec::new();
        for i in 1..=vm.n {
            for j in i + 1..=vm.n {
                if lit_value(model, vm.comparator(layer, i, j)) {
                    comps.push(Comparator::new(i, j));
                }
            }
        }
        layers.push(Layer::new(comps));
    }
    Network::from_layers(vm.n, layers)
}

/// Inputs of `inputs` not sorted by `net`.
pub fn unsorted_by(net: &Network, inputs: &BoolSet) -> Vec<u64> {
    let n = inputs.channels();
    inputs.bits().iter().copied().filter(|&x| !crate::network::bits_sorted(net.apply_bits(x), n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{first_layer, unsorted_inputs, FirstLayerStyle};

    /// A satisfying assignment built from a network that sorts every input.
    fn assignment_for(vm: &VarMap, net: &Network) -> Vec<bool> {
        let mut a = vec![false; vm.num_vars() as usize + 1];
        for (k, layer) in net.layers().iter().enumerate() {
            for c in layer.comparators() {
                a[vm.comparator(k + 1, c.low, c.high) as usize] = true;
                a[vm.used(k + 1, c.low) as usize] = true;
                a[vm.used(k + 1, c.high) as usize] = true;
            }
        }
        for (b, &x) in vm.inputs().iter().enumerate() {
            let input = crate::network::BoolVec::new(vm.channels(), x).unwrap();
            let trace = net.trace(&input).unwrap();
            for level in 1..vm.depth() {
                for k in 1..=vm.channels() {
                    a[vm.value(b, level, k) as usize] = trace[level].get(k);
                }
            }
        }
        a
    }

    #[test]
    fn variable_census() {
        let un = unsorted_inputs(2, None).unwrap();
        let vm = VarMap::new(2, 1, &un);
        assert_eq!(vm.comparator_vars(), 1);
        assert_eq!(vm.used_vars(), 2);
        assert_eq!(vm.num_vars(), 3);
        let un4 = unsorted_inputs(4, None).unwrap();
        let vm = VarMap::new(4, 3, &un4);
        let mut all: Vec<i32> = Vec::new();
        for l in 1..=3 {
            for i in 1..=4 {
                for j in i + 1..=4 {
                    all.push(vm.comparator(l, i, j));
                }
                all.push(vm.used(l, i));
            }
        }
        for b in 0..un4.len() {
            for l in 1..3 {
                for k in 1..=4 {
                    all.push(vm.value(b, l, k));
                }
            }
        }
        all.sort();
        let expected: Vec<i32> = (1..=vm.num_vars() as i32).collect();
        assert_eq!(all, expected);
    }

    #[test]
    fn at_most_one_pairs() {
        assert_eq!(at_most_one(&[1, 2, 3]), vec![vec![-1, -2], vec![-1, -3], vec![-2, -3]]);
    }

    #[test]
    fn incident_sets_for_three_channels() {
        let vm = VarMap::new(3, 1, &BoolSet::from_bits(3, []));
        let c = |i, j| vm.comparator(1, i, j);
        assert_eq!(incident(&vm, 1, 1), vec![c(1, 2), c(1, 3)]);
        assert_eq!(incident(&vm, 1, 2), vec![c(1, 2), c(2, 3)]);
        assert_eq!(incident(&vm, 1, 3), vec![c(1, 3), c(2, 3)]);
    }

    #[test]
    fn two_channel_input_forces_the_comparator() {
        let x: crate::network::BoolVec = "10".parse().unwrap();
        let inputs = BoolSet::from_vecs(2, [&x]).unwrap();
        let vm = VarMap::new(2, 1, &inputs);
        let frag = encode_input_sort(&vm, 0);
        assert_eq!(frag, vec![vec![vm.used(1, 1)], vec![vm.used(1, 2)]]);
        // with the usage definition this leaves exactly one model
        let (_, cnf) = build(2, 1, &inputs, &EncodeOptions::plain()).unwrap();
        let sat: Vec<Vec<bool>> = (0..8u32)
            .map(|m| (0..4).map(|v| v > 0 && (m >> (v - 1)) & 1 == 1).collect())
            .filter(|a: &Vec<bool>| cnf.is_satisfied_by(a))
            .collect();
        assert_eq!(sat.len(), 1);
        assert!(sat[0][vm.comparator(1, 1, 2) as usize]);
    }

    #[test]
    fn guard_expansion_shape() {
        let un = unsorted_inputs(3, None).unwrap();
        let vm = VarMap::new(3, 3, &un);
        let c = vm.comparator(2, 1, 2);
        let frag = encode_input_sort(&vm, 0);
        let guarded: Vec<&Clause> = frag.iter().filter(|cl| cl.contains(&-c)).collect();
        assert_eq!(guarded.len(), 6);
        assert_eq!(guarded.iter().filter(|cl| cl.len() == 3).count(), 4);
        assert_eq!(guarded.iter().filter(|cl| cl.len() == 4).count(), 2);
    }

    #[test]
    fn sorted_input_is_harmless() {
        let inputs = BoolSet::from_bits(3, [0b110]);
        for d in 0..3 {
            let vm = VarMap::new(3, d, &inputs);
            let frag = encode_input_sort(&vm, 0);
            assert!(frag.iter().all(|c| !c.is_empty()));
            let a = assignment_for(&vm, &Network::from_layers(3, vec![Layer::default(); d]).unwrap());
            let cnf = Cnf { num_vars: vm.num_vars(), clauses: frag };
            assert!(cnf.is_satisfied_by(&a));
        }
    }

    #[test]
    fn symmetry_counts() {
        let un = unsorted_inputs(3, None).unwrap();
        let only = |s1, s2, s3| EncodeOptions { sigma1: s1, sigma2: s2, sigma3: s3, pad: 0, prefix: None };
        let vm = VarMap::new(3, 2, &un);
        assert_eq!(encode_symmetry(&vm, &only(true, false, false)).len(), 3);
        let vm1 = VarMap::new(3, 1, &un);
        assert!(encode_symmetry(&vm1, &only(false, true, false)).is_empty());
        let un4 = unsorted_inputs(4, None).unwrap();
        let vm4 = VarMap::new(4, 3, &un4);
        let s3 = encode_symmetry(&vm4, &only(false, false, true));
        assert_eq!(s3.len(), 3);
        for (i, clause) in s3.iter().enumerate() {
            let i = i + 1;
            assert_eq!(*clause, (1..=3).map(|l| vm4.comparator(l, i, i + 1)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn fixed_prefix_units() {
        let un = unsorted_inputs(4, None).unwrap();
        let vm = VarMap::new(4, 2, &un);
        let f4 = Network::from_layers(4, vec![first_layer(4, FirstLayerStyle::Adjacent)]).unwrap();
        let units = encode_fixed_prefix(&vm, &f4).unwrap();
        let c = |i, j| vm.comparator(1, i, j);
        let mut expected = vec![
            vec![c(1, 2)],
            vec![-c(1, 3)],
            vec![-c(1, 4)],
            vec![-c(2, 3)],
            vec![-c(2, 4)],
            vec![c(3, 4)],
        ];
        expected.sort();
        let mut got = units;
        got.sort();
        assert_eq!(got, expected);
        assert!(encode_fixed_prefix(&vm, &Network::empty(4)).unwrap().is_empty());
        let vm5 = VarMap::new(5, 3, &unsorted_inputs(5, None).unwrap());
        let two = Network::from_pairs(5, &[&[(1, 2), (3, 4)], &[(2, 3)]]).unwrap();
        assert_eq!(encode_fixed_prefix(&vm5, &two).unwrap().len(), 20);
        let vm1 = VarMap::new(5, 1, &unsorted_inputs(5, None).unwrap());
        assert!(matches!(encode_fixed_prefix(&vm1, &two), Err(Error::PrefixTooDeep { .. })));
    }

    #[test]
    fn known_sorter_satisfies_the_formula() {
        let net = Network::from_pairs(4, &[&[(1, 2), (3, 4)], &[(1, 3), (2, 4)], &[(2, 3)]]).unwrap();
        let un = unsorted_inputs(4, None).unwrap();
        let opts = EncodeOptions { prefix: Some(net.prefix(1)), ..EncodeOptions::default() };
        let (vm, cnf) = build(4, 3, &un, &opts).unwrap();
        let a = assignment_for(&vm, &net);
        assert!(cnf.is_satisfied_by(&a));
        assert_eq!(decode_network(&vm, &a).unwrap(), net);
    }

    #[test]
    fn non_sorter_violates_the_formula() {
        let net = Network::from_pairs(4, &[&[(1, 2), (3, 4)], &[(1, 3), (2, 4)], &[]]).unwrap();
        let un = unsorted_inputs(4, None).unwrap();
        let (vm, cnf) = build(4, 3, &un, &EncodeOptions::plain()).unwrap();
        assert!(!cnf.is_satisfied_by(&assignment_for(&vm, &net)));
    }

    #[test]
    fn depth_zero() {
        let un = unsorted_inputs(3, None).unwrap();
        let (_, cnf) = build(3, 0, &un, &EncodeOptions::default()).unwrap();
        assert!(cnf.has_empty_clause());
        assert_eq!(to_dimacs(&cnf).lines().nth(1), Some("0"));
        let (_, none) = build(3, 0, &BoolSet::from_bits(3, []), &EncodeOptions::default()).unwrap();
        assert!(none.clauses.is_empty());
    }

    #[test]
    fn dimacs_format() {
        let cnf = Cnf { num_vars: 2, clauses: vec![vec![1, -2], vec![2]] };
        assert_eq!(to_dimacs(&cnf), "p cnf 2 2\n1 -2 0\n2 0\n");
    }

    #[test]
    fn solver_output_parsing() {
        assert_eq!(parse_solver_output("c hello\ns UNSATISFIABLE\n"), SolverOutput::Unsat);
        let sat = parse_solver_output("s SATISFIABLE\nv 1 -2\nv 3 0\n");
        assert_eq!(sat, SolverOutput::Sat(vec![false, true, false, true]));
        assert!(matches!(parse_solver_output("garbage"), SolverOutput::Unknown(_)));
        assert!(matches!(parse_solver_output("s SATISFIABLE\nv 1 x 0"), SolverOutput::Unknown(_)));
        assert!(matches!(parse_solver_output("s UNKNOWN\n"), SolverOutput::Unknown(_)));
    }

    #[test]
    fn decode_single_comparator() {
        let un = unsorted_inputs(2, None).unwrap();
        let (vm, _) = build(2, 1, &un, &EncodeOptions::default()).unwrap();
        let net = decode_network(&vm, &[false, true, true, true]).unwrap();
        assert_eq!(net, Network::from_pairs(2, &[&[(1, 2)]]).unwrap());
    }

    #[test]
    fn windowed_build_uses_a_subset_of_sort_clauses() {
        let un = unsorted_inputs(5, None).unwrap();
        let w = windows(&un, 2).unwrap();
        assert!(w.len() < un.len());
        let opts = EncodeOptions { pad: 2, ..EncodeOptions::default() };
        let (vm, cnf) = build(5, 3, &un, &opts).unwrap();
        assert_eq!(vm.inputs(), w.bits());
        let (_, direct) = build(5, 3, &w, &EncodeOptions::default()).unwrap();
        assert_eq!(cnf, direct);
    }
}
