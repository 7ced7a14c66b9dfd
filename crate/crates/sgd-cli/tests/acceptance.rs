//! Acceptance suite: one test per numbered criterion, each printing a
//! PASS/FAIL line (run with `--nocapture` to see them all).
//!
//! Two checks are expected to fail and are kept as honest documentation of
//! mathematical facts rather than weakened:
//!
//! * `c3_describing_sentence_uniqueness`: S4 maps onto S3 (kill the Klein
//!   four-group), so any sentence of this shape — relators satisfied, an
//!   at-least-3-elements guard, and a generation bound — is also satisfied
//!   by S3 under the images of the generators. No presentation or guard
//!   choice in this family can separate S4 from its quotient S3.
//! * `c6_normaliser_proposition`: the normaliser N of the regular image
//!   equals the holomorph, of order |G|·|Aut(G)|, so |N|/|G| = |Aut(G)|.
//!   That equals |Out(G)| only when G is abelian: the centraliser of the
//!   left-regular image (the right-regular copy of G) also maps into the
//!   inner automorphisms under R. See `note_normaliser_corrected_quotient`
//!   for the quotient that is isomorphic to Out(G).

use sgd_cli::catalog::{default_catalog, tables_up_to, CatalogEntry};
use sgd_core::aut::{
    automorphisms, brute_normalizer, centre_bound_report, holomorph, r_map, regular_representation,
};
use sgd_core::check::{describes_uniquely, CheckOptions, Environment, Evaluator, MemoPolicy};
use sgd_core::files;
use sgd_core::formula::symbol_count;
use sgd_core::group::{
    alternating, bfs_words, cayley_diameter, express_three_cycle, is_three_cycle, psl, Group,
    Permutation,
};
use sgd_core::synth::{
    ceil_log2, delta_formula, delta_length_bound, describing_sentence, psl_row_reduction_check,
    DescriptionJob, Variant, SYNTH_CONSTANTS,
};
use std::path::PathBuf;

fn opts() -> CheckOptions {
    CheckOptions {
        budget: u64::MAX,
        memo: MemoPolicy::Auto,
        jobs: 1,
    }
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load_job(stem: &str) -> DescriptionJob<files::LoadedGroup> {
    let path = fixtures().join("jobs").join(format!("{stem}.json"));
    files::read_job(&path)
        .unwrap_or_else(|e| panic!("loading {stem}: {e}"))
        .1
}

fn entry(name: &str) -> &'static CatalogEntry {
    default_catalog().iter().find(|e| e.name == name).unwrap()
}

/// Fixture generating tuples for a catalog entry: the construction's own
/// generators, plus hand-picked extras for a few groups.
fn fixture_tuples(entry: &CatalogEntry) -> Vec<Vec<usize>> {
    let perm = entry
        .perm()
        .expect("catalog entries are permutation groups");
    let mut tuples = vec![perm.generator_indices()];
    let idx = |cycles: &[Vec<usize>]| {
        perm.element_index(&Permutation::from_cycles(perm.degree(), cycles).unwrap())
            .unwrap()
    };
    match entry.name.as_str() {
        "S3" => tuples.push(vec![idx(&[vec![0, 1]]), idx(&[vec![0, 1, 2]])]),
        "A4" => tuples.push(vec![idx(&[vec![0, 1, 2]]), idx(&[vec![0, 1], vec![2, 3]])]),
        "A5" => tuples.push(vec![idx(&[vec![0, 1], vec![2, 3]]), idx(&[vec![0, 2, 4]])]),
        "C6" => tuples.push(vec![idx(&[vec![0, 5, 4, 3, 2, 1]])]),
        _ => {}
    }
    tuples
}

/// Criterion 1: for every catalog group of order ≤ 60, every fixture
/// generating tuple, every element, and every v ≤ ⌈log₂|G|⌉+1, the model
/// checker's verdict on δ_{v,k}(g; x̄) equals "BFS distance of g ≤ 2^v".
#[test]
fn c1_delta_semantics_oracle_equivalence() {
    let mut checked = 0u64;
    for entry in default_catalog().iter().filter(|e| e.order() <= 60) {
        let table = entry.table();
        let n = table.order();
        for tuple in fixture_tuples(entry) {
            let bfs = bfs_words(table, &tuple).expect("fixture tuples generate");
            assert!(
                bfs.reached_all(n),
                "{}: fixture tuple does not generate",
                entry.name
            );
            let k = tuple.len() as u32;
            for v in 0..=ceil_log2(n as u64) + 1 {
                let delta = delta_formula(v, k);
                let mut evaluator = Evaluator::new(&delta, table, opts());
                for g in 0..n {
                    let mut env = Environment::new();
                    env.bind(0, g);
                    for (j, &x) in tuple.iter().enumerate() {
                        env.bind(j as u32 + 1, x);
                    }
                    let holds = evaluator.eval(&env).unwrap().value;
                    let dist = u64::from(bfs.distance(g).unwrap());
                    let expected = v >= 63 || dist <= (1u64 << v);
                    assert_eq!(
                        holds, expected,
                        "{}: g={g} v={v} dist={dist} disagrees",
                        entry.name
                    );
                    checked += 1;
                }
            }
        }
    }
    println!("ACCEPT C1 delta-semantics oracle equivalence: PASS ({checked} instances)");
}

/// Criterion 2: measured symbol counts are exactly A·k + B·v + C for all
/// 1 ≤ k ≤ 8, 0 ≤ v ≤ 12, and the per-level increment is the constant B.
#[test]
fn c2_delta_length_linearity() {
    for k in 1..=8u32 {
        for v in 0..=12u32 {
            let measured = symbol_count(&delta_formula(v, k));
            assert!(measured <= delta_length_bound(v, k), "k={k} v={v}");
            assert_eq!(measured, delta_length_bound(v, k), "the bound is exact");
            if v > 0 {
                let below = symbol_count(&delta_formula(v - 1, k));
                assert_eq!(measured - below, SYNTH_CONSTANTS.b, "constant increment");
            }
        }
    }
    println!(
        "ACCEPT C2 delta length linearity: PASS (A={} B={} C={})",
        SYNTH_CONSTANTS.a, SYNTH_CONSTANTS.b, SYNTH_CONSTANTS.c
    );
}

/// Criterion 3: the describing sentence of each fixture target is true on
/// the target and false on every non-isomorphic catalog group of order
/// ≤ 2·|target| (≤ 168 for PSL(2,7)).
///
/// Expected to FAIL for S4: S3 = S4/V4 satisfies the sentence (see the
/// module docs). All other targets pass.
#[test]
fn c3_describing_sentence_uniqueness() {
    let targets = ["c2", "c3", "c5", "a4", "a5", "s3", "s4", "psl2_7"];
    let mut failures = Vec::new();
    for stem in targets {
        let job = load_job(stem);
        let (psi, _) = describing_sentence(&job).unwrap_or_else(|e| panic!("{stem}: {e}"));
        let target_table = job.target.to_table();
        let scope = if stem == "psl2_7" {
            168
        } else {
            2 * target_table.order()
        };
        let catalog = tables_up_to(scope);
        let report = describes_uniquely(&psi, &target_table, &catalog, opts()).unwrap();
        assert!(report.target_in_catalog, "{stem}: target must be in the swept catalog");
        let verdict = if report.unique() { "PASS" } else { "FAIL" };
        println!(
            "  C3 {stem}: {verdict} (scope ≤ {scope}, {} groups, violators {:?})",
            catalog.len(),
            report.violators
        );
        if !report.unique() {
            failures.push(format!("{stem}: violators {:?}", report.violators));
        }
    }
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("ACCEPT C3 describing-sentence uniqueness: {verdict}");
    assert!(
        failures.is_empty(),
        "uniqueness failed for: {failures:?} (the S4 case is a mathematical impossibility for \
         this sentence shape: S3 is a quotient of S4 with more than 2 elements)"
    );
}

/// Criterion 4: every bench job's sentence satisfies symbol_count ≤
/// D·(v+ℓ)+E, and at least one job is within a factor 2 of the bound.
#[test]
fn c4_psi_length_ledger() {
    let jobs = [
        "c2",
        "c3",
        "c5",
        "a4",
        "a5",
        "s3",
        "s4",
        "a6",
        "psl2_7",
        "c3_padded",
    ];
    let mut witness = None;
    for stem in jobs {
        let job = load_job(stem);
        let (psi, report) = describing_sentence(&job).unwrap_or_else(|e| panic!("{stem}: {e}"));
        let measured = symbol_count(&psi);
        assert_eq!(measured, report.length.symbol_count);
        assert!(
            measured <= report.length_bound,
            "{stem}: {measured} > bound {}",
            report.length_bound
        );
        if 2 * measured >= report.length_bound {
            witness = Some((stem, measured, report.length_bound));
        }
        println!(
            "  C4 {stem}: {} symbols ≤ {} = D(v+l)+E (v={}, l={})",
            measured, report.length_bound, report.v, report.presentation_length
        );
    }
    let (stem, measured, bound) = witness.expect("at least one job within factor 2 of the bound");
    println!(
        "ACCEPT C4 psi length ledger: PASS (D={} E={}; tightness witness {stem}: {measured} ≥ {bound}/2)",
        SYNTH_CONSTANTS.d, SYNTH_CONSTANTS.e
    );
}

/// Criterion 5: for k = 4..7, with generating sets containing (0 1 2),
/// every 3-cycle is expressed by a word of length ≤ c₁·k³ that re-evaluates
/// to its target, and the exact Cayley diameter is ≤ c₂·k⁴ (c₁ = c₂ = 1).
#[test]
fn c5_alternating_diameter_and_three_cycle_words() {
    const C1: usize = 1;
    const C2: u32 = 1;
    for k in 4..=7usize {
        let g = alternating(k).unwrap();
        assert!(g.generators().iter().any(is_three_cycle));
        let gens: Vec<Permutation> = g.generators().to_vec();
        let mut max_word = 0;
        let mut cycles = 0;
        for target in g.elements().iter().filter(|p| is_three_cycle(p)) {
            let word = express_three_cycle(target, &gens).unwrap();
            assert_eq!(
                &word.eval_perms(&gens).unwrap(),
                target,
                "A{k}: word must re-evaluate"
            );
            assert!(
                word.len() <= C1 * k * k * k,
                "A{k}: word length {}",
                word.len()
            );
            max_word = max_word.max(word.len());
            cycles += 1;
        }
        let diameter = cayley_diameter(&g, &g.generator_indices()).unwrap();
        assert!(
            diameter <= C2 * (k * k * k * k) as u32,
            "A{k} diameter {diameter}"
        );
        println!(
            "  C5 A{k}: {cycles} 3-cycles, max word {max_word} ≤ {}, diameter {diameter} ≤ {}",
            C1 * k * k * k,
            C2 * (k * k * k * k) as u32
        );
    }
    println!("ACCEPT C5 A_k diameter and 3-cycle bounds: PASS (c1={C1}, c2={C2})");
}

/// Criterion 6: for every catalog group of order ≤ 8 in regular
/// representation: brute normaliser = holomorph as element sets,
/// |N|/|G| = |Out(G)|, R is a surjective homomorphism, and R(τ_u) is inner
/// for every u.
///
/// Expected to FAIL on the |N|/|G| = |Out| clause for the nonabelian
/// entries: |N| = |G|·|Aut(G)| exactly (verified here), so the quotient is
/// |Aut|, which exceeds |Out| whenever inner automorphisms are nontrivial.
#[test]
fn c6_normaliser_proposition() {
    let mut failures = Vec::new();
    for entry in default_catalog().iter().filter(|e| e.order() <= 8) {
        let table = entry.table();
        let aut = automorphisms(table, false).unwrap();
        let rep = regular_representation(table);
        let hol = holomorph(table, &aut).unwrap();
        let norm = brute_normalizer(&rep.image).unwrap();

        // brute normaliser = holomorph, as element sets
        assert_eq!(
            norm.elements(),
            hol.elements(),
            "{}: brute normaliser differs from holomorph",
            entry.name
        );

        // R is a homomorphism on N, surjective onto Aut, with R(τ_u) inner.
        let n_elements = norm.elements();
        let r_images: Vec<Permutation> = n_elements
            .iter()
            .map(|phi| r_map(phi, &rep).unwrap())
            .collect();
        let mut image_set: Vec<&Permutation> = r_images.iter().collect();
        image_set.sort_unstable();
        image_set.dedup();
        assert_eq!(
            image_set.len(),
            aut.order(),
            "{}: R is not surjective onto Aut",
            entry.name
        );
        for (i, phi) in n_elements.iter().enumerate() {
            for (j, psi) in n_elements.iter().enumerate() {
                let product = phi * psi;
                let idx = norm.element_index(&product).expect("N is closed");
                assert_eq!(
                    r_images[idx],
                    &r_images[i] * &r_images[j],
                    "{}: R(φψ) ≠ R(φ)R(ψ)",
                    entry.name
                );
            }
        }
        let inner_set: Vec<&Permutation> =
            aut.inner.iter().map(|&i| &aut.automorphisms[i]).collect();
        for u in 0..table.order() {
            let r_tau = r_map(&rep.tau(u), &rep).unwrap();
            assert!(
                inner_set.contains(&&r_tau),
                "{}: R(τ_{u}) is not inner",
                entry.name
            );
        }

        // |N|/|G| vs |Out|.
        let quotient = norm.order() / table.order();
        let ok = quotient == aut.out_order;
        println!(
            "  C6 {}: |N|={} |N|/|G|={} |Aut|={} |Out|={} {}",
            entry.name,
            norm.order(),
            quotient,
            aut.order(),
            aut.out_order,
            if ok { "PASS" } else { "FAIL" }
        );
        assert_eq!(
            norm.order(),
            table.order() * aut.order(),
            "{}: |N| = |G|·|Aut| must hold",
            entry.name
        );
        if !ok {
            failures.push(format!(
                "{}: |N|/|G| = {} = |Aut| but |Out| = {}",
                entry.name, quotient, aut.out_order
            ));
        }
    }
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("ACCEPT C6 normaliser proposition at finite scale: {verdict}");
    assert!(
        failures.is_empty(),
        "|N|/|G| = |Out| fails exactly on the nonabelian entries (it equals |Aut|): {failures:?}"
    );
}

/// Criterion 7: |centre| ≤ ∏ k₂(G, rᵢ) over 1-orbit representatives for
/// every catalog permutation group of degree ≤ 12, with equality on the
/// regular C4.
#[test]
fn c7_centre_bound() {
    let mut checked = 0;
    for entry in default_catalog() {
        let Some(perm) = entry.perm() else { continue };
        if perm.degree() > 12 {
            continue;
        }
        let report = centre_bound_report(perm);
        assert!(
            report.holds,
            "{}: centre {} exceeds bound {}",
            entry.name, report.centre_order, report.bound
        );
        checked += 1;
    }
    let c4 = centre_bound_report(entry("C4").perm().unwrap());
    assert_eq!(c4.centre_order, 4);
    assert_eq!(c4.bound, 4, "equality witnessed on regular C4");
    for m in 2..=4 {
        let report = centre_bound_report(entry(&format!("C2wrS{m}")).perm().unwrap());
        assert_eq!(report.centre_order, 2);
        assert!(report.holds);
    }
    println!("ACCEPT C7 centre bound: PASS ({checked} permutation groups, equality on C4)");
}

/// Criterion 8: for n = 2 and q ∈ {2,3,5,7}, every element of PSL(2,q) is a
/// product of at most n² = 4 elementary transvection images (exhaustive).
#[test]
fn c8_psl_row_reduction() {
    // Maxima frozen from the exhaustive BFS.
    let expected_max = [(2usize, 3u32), (3, 3), (5, 4), (7, 4)];
    for (q, expected) in expected_max {
        let p = psl(2, q).unwrap();
        let report = psl_row_reduction_check(&p).unwrap();
        assert!(
            report.within_bound,
            "PSL(2,{q}): {} > 4",
            report.max_factors
        );
        assert_eq!(report.max_factors, expected, "PSL(2,{q}) frozen maximum");
        println!(
            "  C8 PSL(2,{q}): max factors {} ≤ 4 over {} elements",
            report.max_factors, report.group_order
        );
    }
    println!("ACCEPT C8 PSL row reduction: PASS");
}

/// Criterion 9 (stretch, not in default CI): Out(S6) has 2 elements, by
/// exhaustive generator-image search over the 720-element table.
/// Run with: cargo test -p sgd-cli --release --test acceptance -- --ignored
#[test]
#[ignore = "stretch target: 720-element automorphism search (~minutes)"]
fn c9_out_s6_stretch() {
    let s6 = entry("S6").table();
    let aut = automorphisms(s6, true).unwrap();
    assert_eq!(aut.order(), 1440);
    assert_eq!(aut.out_order, 2);
    println!("ACCEPT C9 Out(S6) = 2: PASS");
}

// ---------------------------------------------------------------------------
// Documentation tests: green checks recording why the red criteria above
// fail, and the corrected statements that do hold.
// ---------------------------------------------------------------------------

/// Bypassing the simplicity precondition is safe for A4 only because its
/// involution generator dies in the C3 quotient. Presenting A4 with the
/// order-3 generator first makes the quotient C3 a model of the sentence:
/// the uniqueness sweep catches exactly that violator. This is why the
/// precondition exists.
#[test]
fn note_a4_bypass_quotient_violator() {
    use sgd_core::group::{Presentation, Word};
    let a4 = entry("A4");
    let perm = a4.perm().unwrap();
    let b = perm
        .element_index(&Permutation::from_cycles(4, &[vec![0, 1, 2]]).unwrap())
        .unwrap();
    let a = perm
        .element_index(&Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap())
        .unwrap();
    // ⟨b, a | b³, a², (ba)³⟩ with x₁ = b of order 3.
    let presentation = Presentation::new(
        2,
        vec![
            Word(vec![(0, 1)]).pow(3),
            Word(vec![(1, 1)]).pow(2),
            Word(vec![(0, 1), (1, 1)]).pow(3),
        ],
    )
    .unwrap();
    let job = DescriptionJob {
        presentation,
        target: perm.clone(),
        assignment: vec![b, a],
        v: 2,
        variant: Variant::Simple,
        allow_nonsimple: true,
    };
    let (psi, report) = describing_sentence(&job).unwrap();
    assert!(report.simplicity_bypassed);
    let sweep = describes_uniquely(&psi, a4.table(), &tables_up_to(24), opts()).unwrap();
    assert!(
        sweep.violators.iter().any(|v| v == "C3" || v == "A3"),
        "expected the proper-quotient witness C3, got {:?}",
        sweep.violators
    );
}

/// The quotient that *is* isomorphic to Out(G): R maps N onto Aut(G) with
/// kernel the centraliser of the regular image, and the preimage of Inn(G)
/// is τ(G)·C. Counting: |N| = |G|·|Aut| and |R⁻¹(Inn)| = |G|·|Inn|, so
/// N / R⁻¹(Inn) has exactly |Out| elements — for every catalog group of
/// order ≤ 8, abelian or not.
#[test]
fn note_normaliser_corrected_quotient() {
    for entry in default_catalog().iter().filter(|e| e.order() <= 8) {
        let table = entry.table();
        let aut = automorphisms(table, false).unwrap();
        let rep = regular_representation(table);
        let hol = holomorph(table, &aut).unwrap();
        let inner_set: Vec<&Permutation> =
            aut.inner.iter().map(|&i| &aut.automorphisms[i]).collect();
        let preimage_of_inn = hol
            .elements()
            .iter()
            .filter(|phi| inner_set.contains(&&r_map(phi, &rep).unwrap()))
            .count();
        assert_eq!(
            preimage_of_inn,
            table.order() * aut.inner_order(),
            "{}",
            entry.name
        );
        assert_eq!(
            hol.order() / preimage_of_inn,
            aut.out_order,
            "{}: N/R⁻¹(Inn) realizes Out",
            entry.name
        );
    }
}

/// R-homomorphism coverage beyond the brute range: over the holomorph of
/// every catalog group of order ≤ 12.
#[test]
fn note_r_homomorphism_up_to_order_12() {
    for entry in default_catalog()
        .iter()
        .filter(|e| e.order() > 8 && e.order() <= 12)
    {
        let table = entry.table();
        let aut = automorphisms(table, false).unwrap();
        let rep = regular_representation(table);
        let hol = holomorph(table, &aut).unwrap();
        let elements = hol.elements();
        let images: Vec<Permutation> = elements.iter().map(|p| r_map(p, &rep).unwrap()).collect();
        for (i, phi) in elements.iter().enumerate() {
            for (j, psi) in elements.iter().enumerate() {
                let idx = hol.element_index(&(phi * psi)).unwrap();
                assert_eq!(images[idx], &images[i] * &images[j], "{}", entry.name);
            }
        }
        // Every automorphism is a fixpoint of R under the identification.
        for alpha in &aut.automorphisms {
            assert_eq!(&r_map(alpha, &rep).unwrap(), alpha, "{}", entry.name);
        }
    }
}
