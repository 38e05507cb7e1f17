use proptest::prelude::*;
use sortnet::graph::{find_isomorphism, graph_of};
use sortnet::network::{first_layer, unsorted_inputs, windows, FirstLayerStyle};
use sortnet::saturation::{is_saturated, saturate, subsumes};
use sortnet::words::{generate_sentences, net_of, reflect_sentence, reflect_word, sentence_of};
use sortnet::words::canonical_words;
use sortnet::{BoolSet, BoolVec, Layer, Network, Sentence, SetKind, Tag, Word};

fn layer(n: usize) -> impl Strategy<Value = Layer> {
    (Just((1..=n).collect::<Vec<usize>>()).prop_shuffle(), 0..=n / 2).prop_map(|(chans, k)| {
        let pairs: Vec<(usize, usize)> =
            chans.chunks(2).take(k).map(|p| (p[0].min(p[1]), p[0].max(p[1]))).collect();
        Layer::from_pairs(&pairs)
    })
}

fn network(max_n: usize, max_depth: usize) -> impl Strategy<Value = Network> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(layer(n), 0..=max_depth).prop_map(move |ls| Network::from_layers(n, ls).unwrap())
    })
}

fn two_layer(min_n: usize, max_n: usize) -> impl Strategy<Value = Network> {
    (min_n..=max_n).prop_flat_map(|n| {
        layer(n).prop_map(move |l2| {
            Network::from_layers(n, vec![first_layer(n, FirstLayerStyle::Adjacent), l2]).unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn reflection_is_an_involution(net in network(8, 5)) {
        prop_assert_eq!(net.reflect().reflect(), net);
    }

    #[test]
    fn reflection_maps_outputs_by_reverse_complement(net in network(7, 5)) {
        let mapped: Vec<BoolVec> = net.outputs().unwrap().iter().map(|v| v.reverse_complement()).collect();
        prop_assert_eq!(BoolSet::from_vecs(net.channels(), &mapped).unwrap(), net.reflect().outputs().unwrap());
    }

    #[test]
    fn outputs_are_images_of_all_inputs(net in network(7, 4)) {
        let outs = net.outputs().unwrap();
        for x in 0..1u64 << net.channels() {
            prop_assert!(outs.contains_bits(net.apply_bits(x)));
        }
    }

    #[test]
    fn boolean_and_integer_evaluation_agree(net in network(6, 5), values in prop::collection::vec(0u8..4, 6)) {
        let n = net.channels();
        let out = net.evaluate_values(&values[..n]).unwrap();
        // thresholding commutes with comparators
        for t in 0..4u8 {
            let bits: Vec<bool> = values[..n].iter().map(|&v| v > t).collect();
            let expected: Vec<bool> = out.iter().map(|&v| v > t).collect();
            prop_assert_eq!(net.evaluate(&BoolVec::from_channels(&bits)).unwrap(), BoolVec::from_channels(&expected));
        }
    }

    #[test]
    fn untangling_preserves_sorting_ability(net in network(6, 6), perm in permutation(6)) {
        let n = net.channels();
        let perm: Vec<usize> = perm.into_iter().filter(|&p| p <= n).collect();
        let moved = net.permute(&perm).unwrap();
        let untangled = moved.untangle();
        prop_assert!(!untangled.is_generalized());
        prop_assert_eq!(untangled.depth(), net.depth());
        prop_assert_eq!(untangled.size(), net.size());
        if net.is_sorting_network() {
            prop_assert!(untangled.is_sorting_network());
        }
    }

    #[test]
    fn network_json_round_trip(net in network(9, 5)) {
        prop_assert_eq!(Network::from_json(&net.to_json()).unwrap(), net);
    }

    #[test]
    fn windows_are_subsets(n in 2usize..=9, pad in 0usize..5) {
        let inputs = unsorted_inputs(n, None).unwrap();
        match windows(&inputs, pad) {
            Ok(w) => prop_assert!(w.is_subset(&inputs)),
            Err(_) => prop_assert!(pad >= n),
        }
    }

    #[test]
    fn relabelled_networks_have_isomorphic_graphs(net in network(5, 3), perm in permutation(5)) {
        let n = net.channels();
        let perm: Vec<usize> = perm.into_iter().filter(|&p| p <= n).collect();
        let other = net.permute(&perm).unwrap();
        prop_assert!(find_isomorphism(&graph_of(&net), &graph_of(&other)).unwrap().is_some());
    }

    #[test]
    fn sentence_ignores_pair_relabelling(net in two_layer(2, 12), order in permutation(6), flips in prop::collection::vec(any::<bool>(), 6)) {
        let n = net.channels();
        // move first-layer pairs around and swap channels inside pairs,
        // then restore a standard first layer by untangling
        let m = n / 2;
        let order: Vec<usize> = order.into_iter().filter(|&p| p <= m).collect();
        let mut perm: Vec<usize> = (1..=n).collect();
        for (k, &target) in order.iter().enumerate() {
            let (a, b) = (2 * target - 1, 2 * target);
            let (a, b) = if flips[k] { (b, a) } else { (a, b) };
            perm[2 * k] = a;
            perm[2 * k + 1] = b;
        }
        let moved = net.permute(&perm).unwrap().untangle();
        prop_assert_eq!(sentence_of(&moved).unwrap(), sentence_of(&net).unwrap());
    }

    #[test]
    fn reflected_sentence_matches_reflected_network(net in two_layer(2, 12)) {
        let s = sentence_of(&net).unwrap();
        prop_assert_eq!(sentence_of(&net.reflect().untangle()).unwrap(), reflect_sentence(&s));
    }

    #[test]
    fn sentence_round_trip(net in two_layer(2, 14)) {
        let s = sentence_of(&net).unwrap();
        prop_assert!(s.is_canonical());
        prop_assert_eq!(sentence_of(&net_of(&s)).unwrap(), s.clone());
        prop_assert_eq!(s.to_string().parse::<Sentence>().unwrap(), s);
    }

    #[test]
    fn saturation_result_is_saturated_and_subsumed(net in two_layer(3, 8)) {
        let sat = saturate(&net).unwrap();
        prop_assert!(is_saturated(&sat).unwrap());
        prop_assert!(subsumes(&sat, &net).unwrap().is_some());
    }

    #[test]
    fn subsumption_witness_is_valid(a in two_layer(4, 7)) {
        let n = a.channels();
        let b = net_of(&sentence_of(&a).unwrap());
        let w = subsumes(&b, &a).unwrap();
        prop_assert!(w.is_some(), "a network and its canonical form subsume each other");
        let pi = w.unwrap().permutation;
        let image = BoolSet::from_bits(n, a.outputs().unwrap().bits().iter().map(|&x| {
            (0..n).filter(|&i| (x >> i) & 1 == 1).fold(0u64, |y, i| y | 1 << (pi[i] - 1))
        }));
        prop_assert!(b.outputs().unwrap().is_subset(&image));
    }

    #[test]
    fn word_reflection_is_an_involution(len in 1usize..=8, pick in any::<prop::sample::Index>()) {
        let words: Vec<Word> = [Tag::Head, Tag::Stick, Tag::Cycle]
            .into_iter()
            .flat_map(|t| canonical_words(t, 2 * len).into_iter().chain(canonical_words(t, 2 * len - 1)))
            .collect();
        prop_assume!(!words.is_empty());
        let w = pick.get(&words);
        prop_assert!(w.is_canonical());
        prop_assert_eq!(reflect_word(&reflect_word(w)), w.clone());
    }

    #[test]
    fn representatives_are_saturated_classes(n in 3usize..=12, pick in any::<prop::sample::Index>()) {
        let reps = generate_sentences(n, SetKind::Rn).unwrap();
        let all = generate_sentences(n, SetKind::RSn).unwrap();
        let s = pick.get(&reps);
        prop_assert!(all.contains(s));
        prop_assert!(is_saturated(&net_of(s)).unwrap());
    }
}
