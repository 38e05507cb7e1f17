use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sortnet::network::{first_layer, FirstLayerStyle};
use sortnet::saturation::{is_saturated, saturate, subsumes, subsumes_outputs, verify_conjecture};
use sortnet::words::{for_each_second_layer, generate_sentences, net_of, sentence_of};
use sortnet::{BoolSet, Layer, Network, SetKind};

fn second_layers(n: usize) -> Vec<Network> {
    let f = first_layer(n, FirstLayerStyle::Adjacent);
    let mut out = Vec::new();
    for_each_second_layer(n, &mut |l2| out.push(Network::from_layers(n, vec![f.clone(), l2.clone()]).unwrap()));
    out
}

#[test]
fn conjecture_up_to_eight_channels() {
    for n in 3..=8 {
        assert!(verify_conjecture(n).unwrap(), "n={n}");
    }
}

#[test]
fn minimal_classes_are_the_saturated_ones() {
    for n in 3..=6 {
        let classes: Vec<_> = generate_sentences(n, SetKind::RGn)
            .unwrap()
            .into_iter()
            .filter(|s| !s.is_redundant())
            .collect();
        let outs: Vec<BoolSet> = classes.iter().map(|s| net_of(s).outputs().unwrap()).collect();
        let strictly_better = |d: usize, c: usize| {
            subsumes_outputs(&outs[d], &outs[c]).is_some() && subsumes_outputs(&outs[c], &outs[d]).is_none()
        };
        let minimal: Vec<_> = (0..classes.len())
            .filter(|&c| !(0..classes.len()).any(|d| strictly_better(d, c)))
            .map(|c| classes[c].clone())
            .collect();
        assert_eq!(minimal, generate_sentences(n, SetKind::RSn).unwrap(), "n={n}");
    }
}

#[test]
fn saturate_lands_in_a_subsumed_saturated_class() {
    for n in 3..=8 {
        let saturated = generate_sentences(n, SetKind::RSn).unwrap();
        for net in second_layers(n) {
            let s = saturate(&net).unwrap();
            assert!(is_saturated(&s).unwrap(), "{net}");
            assert!(saturated.contains(&sentence_of(&s).unwrap()), "{net}");
            if n <= 7 {
                assert!(subsumes(&s, &net).unwrap().is_some(), "{net}");
            }
        }
    }
}

#[test]
fn subsumption_is_reflexive_and_transitive() {
    let mut rng = StdRng::seed_from_u64(7);
    let nets = second_layers(6);
    let mut chains = 0;
    for _ in 0..400 {
        let [a, b, c] = [0; 3].map(|_| &nets[rng.gen_range(0..nets.len())]);
        assert!(subsumes(a, a).unwrap().is_some());
        if subsumes(a, b).unwrap().is_some() && subsumes(b, c).unwrap().is_some() {
            chains += 1;
            assert!(subsumes(a, c).unwrap().is_some(), "{a} {b} {c}");
        }
    }
    assert!(chains > 0);
}

#[test]
fn ten_channel_prefix_is_saturated() {
    let net = Network::from_layers(
        10,
        vec![
            Layer::from_pairs(&[(1, 6), (2, 7), (3, 8), (4, 9), (5, 10)]),
            Layer::from_pairs(&[(1, 4), (6, 9), (2, 5), (7, 10)]),
        ],
    )
    .unwrap();
    let s = sentence_of(&net).unwrap();
    assert!(generate_sentences(10, SetKind::RSn).unwrap().contains(&s));
    assert!(is_saturated(&net).unwrap());
    assert!(is_saturated(&net_of(&s)).unwrap());
}
