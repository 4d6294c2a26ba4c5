//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Golden values come from the worked examples; distribution-level
//! claims are checked against exhaustive enumeration; the stated time
//! budgets are asserted where given.

use moonfill::encoding;
use moonfill::filling::{collect_fillings, ColSubset, RowSubset};
use moonfill::fixtures;
use moonfill::poly::{self, BivarPoly};
use moonfill::verify::{self, Config, Theorem};
use std::sync::Arc;
use std::time::{Duration, Instant};

fn conclude(criterion: usize, name: &str, pass: bool, elapsed: Duration) {
    println!(
        "criterion {criterion} {}: {name} ({:.1} ms)",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64() * 1e3
    );
    assert!(pass, "criterion {criterion} failed: {name}");
}

fn suites_pass(theorems: &[Theorem], config: &Config) -> (bool, String) {
    let mut all = true;
    let mut detail = String::new();
    for &t in theorems {
        let suite = verify::run(t, config);
        for check in &suite.checks {
            if !check.pass {
                all = false;
                detail.push_str(&format!("[{} / {}: {}] ", suite.theorem, check.name, check.detail));
            }
        }
    }
    (all, detail)
}

#[test]
fn criterion_1_worked_statistics() {
    let f = fixtures::reference_filling();
    let s = RowSubset::new(7, &[2, 4]).unwrap();
    let t = ColSubset::new(6, &[1, 3]).unwrap();
    let started = Instant::now();
    let got = (
        f.ne_se(),
        f.top_mixed(&s),
        f.top_mixed(&s.complement()),
        f.bottom_mixed(&s),
        f.bottom_mixed(&s.complement()),
        f.left_mixed(&t),
        f.left_mixed(&t.complement()),
        f.right_mixed(&t),
        f.right_mixed(&t.complement()),
    );
    let elapsed = started.elapsed();
    let pass = got == ((6, 1), 5, 2, 1, 6, 4, 3, 2, 5) && elapsed < Duration::from_millis(1);
    conclude(1, "worked example statistics, under one millisecond", pass, elapsed);
}

#[test]
fn criterion_2_worked_coloring() {
    let started = Instant::now();
    let f = fixtures::reference_filling();
    let coloring = encoding::coloring(&f);
    let mut expect = fixtures::reference_colored_cells();
    expect.sort_by_key(|&(r, c)| (c, r));
    let pass = coloring.cells_of(f.shape()) == expect
        && encoding::auc(&f, (5, 1)).unwrap() == 1
        && encoding::buc(&f, (5, 1)).unwrap() == 1
        && encoding::auc(&f, (4, 5)).unwrap() == 0
        && encoding::buc(&f, (4, 5)).unwrap() == 2;
    conclude(2, "worked coloring and auc/buc values", pass, started.elapsed());
}

#[test]
fn criterion_3_mixed_distributions_at_desk_scale() {
    let shape = Arc::new(fixtures::reference_shape());
    let e = fixtures::reference_row_sums();
    let s = fixtures::reference_col_sums();
    let started = Instant::now();
    let fillings = collect_fillings(&shape, &e, &s).unwrap();
    let mut reference = BivarPoly::zero();
    for f in &fillings {
        let (ne, se) = f.ne_se();
        reference.add_term(se as u32, ne as u32, 1u32.into());
    }
    let mut pass = reference.is_symmetric();
    for subset in RowSubset::all(7) {
        let mut top = BivarPoly::zero();
        let mut bottom = BivarPoly::zero();
        for f in &fillings {
            let (a, ab) = (f.top_mixed(&subset), f.top_mixed(&subset.complement()));
            top.add_term(a as u32, ab as u32, 1u32.into());
            let (b, bb) = (f.bottom_mixed(&subset), f.bottom_mixed(&subset.complement()));
            bottom.add_term(b as u32, bb as u32, 1u32.into());
        }
        pass &= top == reference && bottom == reference;
    }
    for subset in ColSubset::all(6) {
        let mut left = BivarPoly::zero();
        let mut right = BivarPoly::zero();
        for f in &fillings {
            let (g, gb) = (f.left_mixed(&subset), f.left_mixed(&subset.complement()));
            left.add_term(g as u32, gb as u32, 1u32.into());
            let (d, db) = (f.right_mixed(&subset), f.right_mixed(&subset.complement()));
            right.add_term(d as u32, db as u32, 1u32.into());
        }
        pass &= left == reference && right == reference;
    }
    let elapsed = started.elapsed();
    pass &= elapsed < Duration::from_secs(10);
    conclude(
        3,
        "all 128 row and 64 column subsets share the symmetric (se, ne) distribution, under 10 s",
        pass,
        elapsed,
    );
}

#[test]
fn criterion_4_product_formula_on_random_shapes() {
    let started = Instant::now();
    let config = Config::default();
    let (pass, detail) = suites_pass(&[Theorem::Product], &config);
    let elapsed = started.elapsed();
    let in_time = elapsed < Duration::from_secs(30);
    conclude(
        4,
        &format!("twenty seeded random shapes match the Gaussian product, under 30 s {detail}"),
        pass && in_time,
        elapsed,
    );
}

#[test]
fn criterion_5_composition_encoding() {
    let started = Instant::now();
    let config = Config::default();
    let (mut pass, detail) = suites_pass(&[Theorem::Psi], &config);
    pass &= encoding::psi(&fixtures::reference_filling()).comps == fixtures::reference_compositions();
    let elapsed = started.elapsed();
    pass &= elapsed < Duration::from_secs(10);
    conclude(
        5,
        &format!("encode/decode, sums, prefix formulas, and cell counts, under 10 s {detail}"),
        pass,
        elapsed,
    );
}

#[test]
fn criterion_6_bijection_transport() {
    let started = Instant::now();
    let config = Config::default();
    let (mut pass, detail) = suites_pass(&[Theorem::Theta, Theorem::Sigma, Theorem::Rho], &config);
    let f = fixtures::gamma_example_input();
    pass &= moonfill::bijections::phi_gamma(&f).cells() == fixtures::gamma_example_output_cells();
    conclude(
        6,
        &format!("pointwise transport and bijectivity for every map {detail}"),
        pass,
        started.elapsed(),
    );
}

#[test]
fn criterion_7_rearrangement_invariance() {
    let started = Instant::now();
    let config = Config::default();
    let (pass, detail) =
        suites_pass(&[Theorem::HTransport, Theorem::Invariance], &config);
    conclude(
        7,
        &format!("row transport and permutation invariance {detail}"),
        pass,
        started.elapsed(),
    );
}

#[test]
fn criterion_8_word_statistics() {
    let started = Instant::now();
    let config = Config::default();
    let (mut pass, detail) = suites_pass(&[Theorem::Words], &config);
    pass &= poly::pq_binomial(4, 2).unwrap().to_string()
        == "1 p^4 q^0 + 1 p^3 q^1 + 2 p^2 q^2 + 1 p^1 q^3 + 1 p^0 q^4";
    pass &= {
        let expect = poly::pq_multinomial(4, &[2, 1, 1]).unwrap();
        let mut dist = BivarPoly::zero();
        for w in moonfill::words::rearrangements(&[2, 1, 1]) {
            dist.add_term(w.inv() as u32, w.coinv() as u32, 1u32.into());
        }
        dist == expect
    };
    conclude(
        8,
        &format!("rearrangement classes carry the Gaussian multinomial {detail}"),
        pass,
        started.elapsed(),
    );
}

#[test]
fn criterion_9_matching_statistics() {
    let started = Instant::now();
    let config = Config::default();
    let (pass, detail) =
        suites_pass(&[Theorem::Matchings, Theorem::Catalan], &config);
    conclude(
        9,
        &format!("endpoint-class products, unique zeros, and Catalan counts {detail}"),
        pass,
        started.elapsed(),
    );
}
