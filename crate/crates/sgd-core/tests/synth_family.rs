//! Monotone-family check: describing sentences for A_k, k = 4..7, from one
//! fixed presentation scheme (3-cycle generators x_i with relators x_i³ and
//! (x_i x_j)², i < j) stay within the published D·(v+ℓ)+E ledger.

use sgd_core::formula::symbol_count;
use sgd_core::group::{alternating, Permutation, Presentation, Word};
use sgd_core::synth::{describing_sentence, DescriptionJob, Variant};

fn carmichael_presentation(k: usize) -> Presentation {
    let gens = k - 2;
    let mut relators = Vec::new();
    for i in 0..gens {
        relators.push(Word(vec![(i, 1)]).pow(3));
    }
    for i in 0..gens {
        for j in i + 1..gens {
            relators.push(Word(vec![(i, 1), (j, 1)]).pow(2));
        }
    }
    Presentation::new(gens, relators).unwrap()
}

#[test]
fn alternating_family_stays_within_the_length_ledger() {
    let mut previous_bound = 0;
    for k in 4..=7usize {
        let group = alternating(k).unwrap();
        let assignment: Vec<usize> = (0..k - 2)
            .map(|j| {
                group
                    .element_index(&Permutation::from_cycles(k, &[vec![0, 1, j + 2]]).unwrap())
                    .unwrap()
            })
            .collect();
        let presentation = carmichael_presentation(k);
        // Start from the exact diameter for this generating set.
        let verify =
            sgd_core::synth::verify_presentation(&presentation, &group, &assignment, 63).unwrap();
        assert!(verify.relators_ok && verify.generates, "A{k} fixture");
        let v = sgd_core::synth::ceil_log2(u64::from(verify.diameter));
        let job = DescriptionJob {
            presentation,
            target: group,
            assignment,
            v,
            variant: Variant::Simple,
            allow_nonsimple: k == 4,
        };
        let (psi, report) = describing_sentence(&job).unwrap();
        assert!(
            symbol_count(&psi) <= report.length_bound,
            "A{k} breaks the ledger"
        );
        assert!(
            report.length_bound > previous_bound,
            "D·(v+ℓ)+E grows along the family"
        );
        previous_bound = report.length_bound;
        println!(
            "A{k}: l={} diameter={} v={v} symbols={} bound={}",
            report.presentation_length,
            report.diameter,
            symbol_count(&psi),
            report.length_bound
        );
    }
}
