//! One line per acceptance criterion, printed straight to stdout so it shows
//! up without `--nocapture`.

use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use scat_core::category::scat;
use scat_core::oracle::scat_oracle;
use scat_core::scomplex::enumerate_corpus;
use scat_core::suite::{run_suite, Section, Status, SuiteConfig, SuiteReport};
use scat_core::{SearchLimits, SimplicialComplex};

fn line(n: usize, ok: bool, what: &str, detail: &str) -> bool {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let text = format!("criterion {n}: {verdict} {what} ({detail})\n");
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
    ok
}

fn simplex(n: usize) -> Arc<SimplicialComplex> {
    Arc::new(SimplicialComplex::from_facets(&[(0..=n).collect()]).unwrap())
}

fn boundary(n: usize) -> Arc<SimplicialComplex> {
    let facets: Vec<Vec<usize>> = (0..=n).map(|skip| (0..=n).filter(|&v| v != skip).collect()).collect();
    Arc::new(SimplicialComplex::from_facets(&facets).unwrap())
}

fn cycle(n: usize) -> Arc<SimplicialComplex> {
    let facets: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    Arc::new(SimplicialComplex::from_facets(&facets).unwrap())
}

/// Oracle and optimized values must both equal `expected`.
fn exact_values() -> (bool, String) {
    let lim = SearchLimits::default();
    let mut named: Vec<(String, Arc<SimplicialComplex>, usize)> = Vec::new();
    for n in 0..=3 {
        named.push((format!("simplex {n}"), simplex(n), 0));
    }
    for n in 3..=8 {
        named.push((format!("C{n}"), cycle(n), 1));
    }
    named.push(("boundary of the 2-simplex".into(), boundary(2), 1));
    named.push(("boundary of the 3-simplex".into(), boundary(3), 1));
    let corpus = enumerate_corpus(5, 10).unwrap();
    let n_cones = corpus.complexes.len();
    for (i, k) in corpus.complexes.iter().enumerate() {
        named.push((format!("cone of corpus member {i}"), Arc::new(k.cone().unwrap()), 0));
    }
    let mut wrong = Vec::new();
    for (name, k, expected) in &named {
        let oracle = scat_oracle(k, &lim);
        let fast = scat(k, &lim).map(|(v, _)| v);
        if oracle.as_ref().ok() != Some(expected) || fast.as_ref().ok() != Some(expected) {
            wrong.push(format!("{name}: oracle {oracle:?}, optimized {fast:?}, expected {expected}"));
        }
    }
    let detail = if wrong.is_empty() {
        format!("{} complexes including {n_cones} cones", named.len())
    } else {
        wrong.join("; ")
    };
    (wrong.is_empty(), detail)
}

/// All named properties passed, decided at least one instance, and logged a
/// reason for every skip.
fn properties_hold(report: &SuiteReport, wanted: &[(Section, &str)]) -> (bool, String) {
    let mut bad = Vec::new();
    let mut checked = 0;
    for &(section, name) in wanted {
        match report.property(section, name) {
            None => bad.push(format!("{section}/{name} missing")),
            Some(p) => {
                let reasons: usize = p.tally.skip_reasons.values().sum();
                checked += p.tally.checked;
                if p.status != Status::Pass {
                    bad.push(format!("{section}/{name} {:?}, first counterexample {:?}", p.status, p.tally.counterexample));
                } else if p.tally.checked == 0 {
                    bad.push(format!("{section}/{name} decided nothing"));
                } else if reasons != p.tally.skipped {
                    bad.push(format!("{section}/{name} has skips without a reason"));
                }
            }
        }
    }
    let skipped: usize = wanted.iter().filter_map(|&(s, n)| report.property(s, n)).map(|p| p.tally.skipped).sum();
    if bad.is_empty() {
        (true, format!("{} properties, {checked} instances checked, {skipped} skipped with reasons", wanted.len()))
    } else {
        (false, bad.join("; "))
    }
}

#[test]
fn acceptance_criteria() {
    let mut all = true;

    let t = Instant::now();
    let (ok, detail) = exact_values();
    let took = t.elapsed();
    all &= line(
        1,
        ok && took <= Duration::from_secs(300),
        "exact values agree with the brute-force oracle",
        &format!("{detail}; {:.1}s", took.as_secs_f64()),
    );

    let cfg = SuiteConfig::default();
    let t = Instant::now();
    let first = run_suite(&cfg).expect("suite runs");
    let took = t.elapsed();

    let category = [
        (Section::Category, "scat_of_identity_is_scat"),
        (Section::Category, "composition_bound"),
        (Section::Category, "map_bounded_by_domain_and_codomain"),
        (Section::Category, "contiguity_invariance"),
        (Section::Category, "zero_iff_null_class"),
        (Section::Category, "cone_has_category_zero"),
        (Section::Category, "strong_equivalence_preserves_category"),
        (Section::Category, "subspace_category_is_inclusion_category"),
        (Section::Category, "scat_below_gscat"),
        (Section::Products, "diagonal_has_category_of_space"),
        (Section::Products, "projection_has_category_of_factor"),
        (Section::Products, "product_complex_bound"),
        (Section::Products, "product_map_bound"),
        (Section::Factorization, "factorization_round_trip"),
    ];
    let (ok, detail) = properties_hold(&first, &category);
    all &= line(
        2,
        ok && took <= Duration::from_secs(1800),
        "category theorem suite over the corpus on at most 5 vertices",
        &format!("{detail}; full suite {:.0}s", took.as_secs_f64()),
    );

    let (ok, detail) = properties_hold(
        &first,
        &[
            (Section::Factorization, "factorization_round_trip"),
            (Section::Factorization, "factorization_converse"),
            (Section::Factorization, "certificates_revalidate"),
        ],
    );
    all &= line(3, ok, "factorization witnesses build and re-validate", &detail);

    let (ok, detail) = properties_hold(
        &first,
        &[
            (Section::FiniteSpaces, "chi_sends_chains_to_fences"),
            (Section::FiniteSpaces, "order_complex_sends_fences_to_chains"),
            (Section::FiniteSpaces, "cat_of_chi_below_scat"),
            (Section::FiniteSpaces, "scat_of_order_complex_map_below_cat"),
        ],
    );
    all &= line(4, ok, "finite-space comparisons", &detail);

    let (ok, detail) = properties_hold(
        &first,
        &[
            (Section::Fibrations, "projections_verified"),
            (Section::Fibrations, "projection_fibers_equivalent"),
            (Section::Fibrations, "fibration_inequalities"),
        ],
    );
    let ok = ok && cfg.fibration_universe == 3;
    all &= line(5, ok, "projections are fibrations over the 3-vertex universe", &detail);

    let (ok, detail) = properties_hold(
        &first,
        &[
            (Section::Es, "unbounded_iff_null_class"),
            (Section::Es, "es_below_category_of_domain"),
            (Section::Es, "es_characterizations_agree"),
        ],
    );
    all &= line(6, ok, "bounded essential category", &detail);

    let (ok, detail) = properties_hold(
        &first,
        &[
            (Section::Contiguity, "class_decision_matches_naive"),
            (Section::Contiguity, "null_decision_matches_naive"),
        ],
    );
    all &= line(7, ok, "core-reduced class decisions match naive search", &detail);

    let second = run_suite(&cfg).expect("suite runs");
    let (certs, _) = properties_hold(&first, &[(Section::Factorization, "certificates_revalidate")]);
    let same = first.digest == second.digest;
    all &= line(
        8,
        same && certs && first.all_pass,
        "two full runs give the same digest",
        &format!("{} and {}", &first.digest[..16], &second.digest[..16]),
    );

    assert!(all, "some acceptance criteria failed; see the lines above");
}
