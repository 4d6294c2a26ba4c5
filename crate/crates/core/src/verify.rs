//! Executable verification suites: each suite exercises one family of
//! identities over exhaustively enumerated filling sets and reports one
//! check per claim, carrying a counterexample dump on failure. Random
//! instances come from a seeded generator so every report can be replayed.

use crate::bijections as bij;
use crate::encoding;
use crate::filling::{collect_fillings, distribution_par, ColSubset, Filling, RowSubset, StatKind};
use crate::fixtures;
use crate::matchings::{self, Matching};
use crate::poly::{self, BivarPoly};
use crate::shape::{MoonPolyomino, RowInterval};
use crate::words;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::Arc;

pub const DEFAULT_SEED: u64 = 7;

/// Scale knobs for the randomized parts of the suites.
#[derive(Debug, Clone)]
pub struct Config {
    pub seed: u64,
    pub shapes: usize,
    pub max_rows: usize,
    pub max_cols: usize,
    pub threads: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: DEFAULT_SEED, shapes: 20, max_rows: 5, max_cols: 5, threads: 1 }
    }
}

/// One verified claim.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// The outcome of one suite run.
#[derive(Debug, Clone)]
pub struct Suite {
    pub theorem: &'static str,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Suite {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

struct Ctx {
    checks: Vec<Check>,
}

impl Ctx {
    fn new() -> Ctx {
        Ctx { checks: Vec::new() }
    }

    fn check(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(Check { name: name.to_string(), pass, detail });
    }

    /// Records a claim verified over many instances: pass with the instance
    /// count, or fail with the first counterexample.
    fn bulk(&mut self, name: &str, count: usize, counterexample: Option<String>) {
        match counterexample {
            None => self.check(name, true, format!("{count} instances")),
            Some(dump) => self.check(name, false, dump),
        }
    }
}

fn dump_instance(shape: &MoonPolyomino, e: &[usize], s: &[usize], f: Option<&Filling>, subset: &[usize]) -> String {
    let rows: Vec<String> = shape.rows().iter().map(|r| format!("({},{})", r.left, r.right)).collect();
    let mut out = format!("shape=[{}] e={:?} s={:?}", rows.join(" "), e, s);
    if let Some(f) = f {
        out.push_str(&format!(" filling={:?}", f.cells()));
    }
    out.push_str(&format!(" subset={:?}", subset));
    out
}

/// The suites, named after what they verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    RowMixed,
    ColMixed,
    Product,
    Psi,
    Rho,
    Theta,
    Sigma,
    HTransport,
    Invariance,
    Words,
    Matchings,
    Catalan,
}

impl Theorem {
    pub const ALL: [Theorem; 12] = [
        Theorem::RowMixed,
        Theorem::ColMixed,
        Theorem::Product,
        Theorem::Psi,
        Theorem::Rho,
        Theorem::Theta,
        Theorem::Sigma,
        Theorem::HTransport,
        Theorem::Invariance,
        Theorem::Words,
        Theorem::Matchings,
        Theorem::Catalan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::RowMixed => "row-mixed",
            Theorem::ColMixed => "col-mixed",
            Theorem::Product => "product",
            Theorem::Psi => "psi",
            Theorem::Rho => "rho",
            Theorem::Theta => "theta",
            Theorem::Sigma => "sigma",
            Theorem::HTransport => "h-transport",
            Theorem::Invariance => "invariance",
            Theorem::Words => "words",
            Theorem::Matchings => "matchings",
            Theorem::Catalan => "catalan",
        }
    }

    pub fn parse(name: &str) -> Option<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.name() == name)
    }
}

pub fn run(theorem: Theorem, config: &Config) -> Suite {
    let mut ctx = Ctx::new();
    match theorem {
        Theorem::RowMixed => row_mixed(&mut ctx, config),
        Theorem::ColMixed => col_mixed(&mut ctx, config),
        Theorem::Product => product(&mut ctx, config),
        Theorem::Psi => psi(&mut ctx, config),
        Theorem::Rho => rho(&mut ctx, config),
        Theorem::Theta => theta(&mut ctx, config),
        Theorem::Sigma => sigma(&mut ctx, config),
        Theorem::HTransport => h_transport(&mut ctx, config),
        Theorem::Invariance => invariance(&mut ctx, config),
        Theorem::Words => words_suite(&mut ctx, config),
        Theorem::Matchings => matchings_suite(&mut ctx, config),
        Theorem::Catalan => catalan_suite(&mut ctx, config),
    }
    Suite { theorem: theorem.name(), seed: config.seed, checks: ctx.checks }
}

/// Random moon polyomino: a unimodal arrangement of a nested chain of row
/// intervals. Row lengths are biased upward so filling classes carry some
/// slack.
pub fn random_moon(rng: &mut impl Rng, max_rows: usize, max_cols: usize) -> MoonPolyomino {
    let n = rng.random_range(max_rows.max(2) / 2..=max_rows.max(1));
    let lo = max_cols.max(2).div_ceil(2);
    let mut lengths: Vec<usize> =
        (0..n).map(|_| rng.random_range(lo.min(max_cols)..=max_cols.max(1))).collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    let mut chain: Vec<RowInterval> = Vec::with_capacity(n);
    chain.push(RowInterval::new(1, lengths[0]));
    for &len in &lengths[1..] {
        let prev = *chain.last().unwrap();
        let offset = rng.random_range(0..=(prev.len() - len));
        chain.push(RowInterval::new(prev.left + offset, prev.left + offset + len - 1));
    }
    let mut rows = std::collections::VecDeque::new();
    for iv in chain {
        if rows.is_empty() || rng.random_bool(0.5) {
            rows.push_back(iv);
        } else {
            rows.push_front(iv);
        }
    }
    MoonPolyomino::new(rows.into_iter().collect()).expect("nested unimodal rows are a moon polyomino")
}

/// Random filling: each row independently empty or holding a 1 at a uniform
/// column of its interval.
pub fn random_filling(rng: &mut impl Rng, shape: &Arc<MoonPolyomino>, fill_prob: f64) -> Filling {
    let ones = (1..=shape.n())
        .map(|i| {
            let iv = shape.row(i);
            rng.random_bool(fill_prob).then(|| rng.random_range(iv.left..=iv.right))
        })
        .collect();
    Filling::from_rows(Arc::clone(shape), ones).expect("cells drawn from row intervals")
}

/// Random sum vectors: a 01 row-sum vector and a matching column-sum vector
/// drawn as a capped composition. The pair respects the column capacities
/// but may still be infeasible for the shape; callers retry on that.
pub fn random_sum_vectors(
    rng: &mut impl Rng,
    shape: &MoonPolyomino,
    fill_prob: f64,
) -> (Vec<usize>, Vec<usize>) {
    let e: Vec<usize> = (0..shape.n()).map(|_| usize::from(rng.random_bool(fill_prob))).collect();
    let total: usize = e.iter().sum();
    let mut s = vec![0usize; shape.m()];
    for _ in 0..total {
        let open: Vec<usize> =
            (1..=shape.m()).filter(|&j| s[j - 1] < shape.col_len(j)).collect();
        let j = open[rng.random_range(0..open.len())];
        s[j - 1] += 1;
    }
    (e, s)
}

fn capped_compositions(total: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; caps.len()];
    fn go(j: usize, left: usize, caps: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if j == caps.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let tail: usize = caps[j + 1..].iter().sum();
        let lo = left.saturating_sub(tail);
        for v in lo..=left.min(caps[j]) {
            cur[j] = v;
            go(j + 1, left - v, caps, cur, out);
        }
        cur[j] = 0;
    }
    go(0, total, caps, &mut cur, &mut out);
    out
}

/// Every (e, s) pair with matching totals and per-column caps; exhaustive,
/// so intended for small shapes only.
pub fn all_sum_vectors(shape: &MoonPolyomino) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = shape.n();
    let caps: Vec<usize> = (1..=shape.m()).map(|j| shape.col_len(j)).collect();
    let mut out = Vec::new();
    for bits in 0u64..(1 << n) {
        let e: Vec<usize> = (0..n).map(|i| ((bits >> i) & 1) as usize).collect();
        let total = e.iter().sum();
        for s in capped_compositions(total, &caps) {
            out.push((e.clone(), s));
        }
    }
    out
}

fn reference_data() -> (Arc<MoonPolyomino>, Vec<usize>, Vec<usize>) {
    (Arc::new(fixtures::reference_shape()), fixtures::reference_row_sums(), fixtures::reference_col_sums())
}

/// Small (shape, e, s) triples with every sum vector enumerated.
fn exhaustive_triples() -> Vec<(Arc<MoonPolyomino>, Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for shape in fixtures::fixture_shapes() {
        if shape.n() > 3 || shape.m() > 3 {
            continue;
        }
        let shape = Arc::new(shape);
        for (e, s) in all_sum_vectors(&shape) {
            out.push((Arc::clone(&shape), e, s));
        }
    }
    out
}

fn row_mixed(ctx: &mut Ctx, config: &Config) {
    let mut cases = vec![reference_data()];
    for (shape, e, s) in exhaustive_triples() {
        cases.push((shape, e, s));
    }
    let mut counter: Option<String> = None;
    let mut instances = 0usize;
    let mut symmetric = true;
    let mut matches_plain = true;
    for (shape, e, s) in &cases {
        let reference = distribution_par(shape, e, s, StatKind::Top, &[], config.threads)
            .expect("fixture sums are feasible");
        if !reference.is_symmetric() {
            symmetric = false;
        }
        let plain: BivarPoly = {
            let mut p = BivarPoly::zero();
            for f in collect_fillings(shape, e, s).unwrap() {
                let (ne, se) = f.ne_se();
                p.add_term(se as u32, ne as u32, 1u32.into());
            }
            p
        };
        if reference != plain {
            matches_plain = false;
        }
        for subset in RowSubset::all(shape.n()) {
            let indices = subset.indices();
            for kind in [StatKind::Top, StatKind::Bottom] {
                instances += 1;
                let dist = distribution_par(shape, e, s, kind, &indices, config.threads).unwrap();
                if dist != reference && counter.is_none() {
                    counter = Some(dump_instance(shape, e, s, None, &indices));
                }
            }
        }
    }
    ctx.bulk("top/bottom-mixed distribution independent of the row subset", instances, counter);
    ctx.check("distribution symmetric under swapping p and q", symmetric, String::new());
    ctx.check(
        "subset distribution equals the plain (se, ne) distribution",
        matches_plain,
        String::new(),
    );
    row_column_constrained_corollary(ctx);
}

/// The same equidistribution over the fillings with at most one 1 per row
/// and per column, obtained by filtering the enumeration stream.
fn row_column_constrained_corollary(ctx: &mut Ctx) {
    let shape = Arc::new(fixtures::fixture_shapes()[4].clone());
    let e = vec![1, 1, 1];
    let mut union: Vec<Filling> = Vec::new();
    for s in capped_compositions(3, &[1, 1, 1]) {
        union.extend(collect_fillings(&shape, &e, &s).unwrap());
    }
    let filtered: Vec<Filling> = capped_compositions(3, &[3, 3, 3])
        .into_iter()
        .flat_map(|s| collect_fillings(&shape, &e, &s).unwrap())
        .filter(|f| f.col_sums().iter().all(|&x| x <= 1))
        .collect();
    let key = |fs: &[Filling]| {
        let mut v: Vec<_> = fs.iter().map(|f| f.cells()).collect();
        v.sort();
        v
    };
    let mut pass = key(&union) == key(&filtered);
    let reference: BivarPoly = {
        let mut p = BivarPoly::zero();
        for f in &union {
            let (ne, se) = f.ne_se();
            p.add_term(se as u32, ne as u32, 1u32.into());
        }
        p
    };
    for subset in RowSubset::all(3) {
        let mut dist = BivarPoly::zero();
        for f in &union {
            let (a, b) = (f.top_mixed(&subset), f.top_mixed(&subset.complement()));
            dist.add_term(a as u32, b as u32, 1u32.into());
        }
        if dist != reference {
            pass = false;
        }
    }
    ctx.check(
        "row-and-column-constrained fillings keep the equidistribution",
        pass,
        format!("{} fillings of the square", union.len()),
    );
}

fn col_mixed(ctx: &mut Ctx, config: &Config) {
    let mut cases = vec![reference_data()];
    for (shape, e, s) in exhaustive_triples() {
        cases.push((shape, e, s));
    }
    let mut counter: Option<String> = None;
    let mut instances = 0usize;
    let mut symmetric = true;
    for (shape, e, s) in &cases {
        let reference = distribution_par(shape, e, s, StatKind::Left, &[], config.threads).unwrap();
        if !reference.is_symmetric() {
            symmetric = false;
        }
        for subset in ColSubset::all(shape.m()) {
            let indices = subset.indices();
            for kind in [StatKind::Left, StatKind::Right] {
                instances += 1;
                let dist = distribution_par(shape, e, s, kind, &indices, config.threads).unwrap();
                if dist != reference && counter.is_none() {
                    counter = Some(dump_instance(shape, e, s, None, &indices));
                }
            }
        }
    }
    ctx.bulk("left/right-mixed distribution independent of the column subset", instances, counter);
    ctx.check("distribution symmetric under swapping p and q", symmetric, String::new());
}

fn product(ctx: &mut Ctx, config: &Config) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut counter: Option<String> = None;
    let mut done = 0usize;
    let mut attempts = 0usize;
    while done < config.shapes && attempts < config.shapes * 50 {
        attempts += 1;
        let shape = Arc::new(random_moon(&mut rng, config.max_rows, config.max_cols));
        let (e, s) = random_sum_vectors(&mut rng, &shape, 0.5);
        let formula = match poly::product_formula(&shape, &e, &s) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if formula.eval_at_one() > 20000u32.into() {
            continue;
        }
        let exhaustive =
            distribution_par(&shape, &e, &s, StatKind::Top, &[], config.threads).unwrap();
        if exhaustive != formula && counter.is_none() {
            counter = Some(dump_instance(&shape, &e, &s, None, &[]));
        }
        done += 1;
    }
    ctx.bulk(
        "exhaustive (se, ne) distribution equals the Gaussian-binomial product",
        done,
        counter,
    );
    ctx.check(
        "requested number of random shapes verified",
        done >= config.shapes,
        format!("{done} of {} shapes (seed {})", config.shapes, config.seed),
    );

    let (shape, e, s) = reference_data();
    let formula = poly::product_formula(&shape, &e, &s).unwrap();
    let exhaustive = distribution_par(&shape, &e, &s, StatKind::Top, &[], config.threads).unwrap();
    ctx.check(
        "reference shape matches its product formula",
        formula == exhaustive && formula.eval_at_one() == 54u32.into(),
        format!("{formula}"),
    );

    // Systematic sweep: every sum vector of the small fixture shapes, with
    // infeasible vectors required to enumerate to nothing.
    let mut sweep_counter: Option<String> = None;
    let mut swept = 0usize;
    for (shape, e, s) in exhaustive_triples() {
        swept += 1;
        let fillings = collect_fillings(&shape, &e, &s).unwrap();
        match poly::product_formula(&shape, &e, &s) {
            Ok(formula) => {
                let exhaustive =
                    distribution_par(&shape, &e, &s, StatKind::Top, &[], config.threads).unwrap();
                if exhaustive != formula && sweep_counter.is_none() {
                    sweep_counter = Some(dump_instance(&shape, &e, &s, None, &[]));
                }
            }
            Err(_) => {
                if !fillings.is_empty() && sweep_counter.is_none() {
                    sweep_counter = Some(dump_instance(&shape, &e, &s, None, &[]));
                }
            }
        }
    }
    ctx.bulk("every small sum vector matches the product or is empty", swept, sweep_counter);
}

fn psi_cases() -> Vec<(Arc<MoonPolyomino>, Vec<usize>, Vec<usize>)> {
    let mut cases = vec![reference_data()];
    cases.extend(exhaustive_triples());
    let host = Arc::new(fixtures::gamma_example_shape());
    let f = fixtures::gamma_example_input();
    cases.push((host, f.row_sums(), f.col_sums()));
    cases
}

/// A few seeded random cases with nontrivial filling classes, capped so
/// exhaustive transports over the whole class stay fast.
fn random_cases(
    config: &Config,
    count: usize,
) -> Vec<(Arc<MoonPolyomino>, Vec<usize>, Vec<usize>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0xb11e);
    let mut cases = Vec::new();
    let mut attempts = 0;
    while cases.len() < count && attempts < count * 60 {
        attempts += 1;
        let shape = Arc::new(random_moon(&mut rng, config.max_rows, config.max_cols));
        let (e, s) = random_sum_vectors(&mut rng, &shape, 0.6);
        let Ok(size) = poly::product_formula(&shape, &e, &s).map(|p| p.eval_at_one()) else {
            continue;
        };
        if size < 2u32.into() || size > 150u32.into() {
            continue;
        }
        cases.push((shape, e, s));
    }
    cases
}

fn psi(ctx: &mut Ctx, _config: &Config) {
    let mut round_trip: Option<String> = None;
    let mut sums: Option<String> = None;
    let mut formulas: Option<String> = None;
    let mut prop_cells: Option<String> = None;
    let mut totals: Option<String> = None;
    let mut instances = 0usize;
    for (shape, e, s) in psi_cases() {
        let scheme = encoding::ColumnScheme::standard(&shape);
        for f in collect_fillings(&shape, &e, &s).unwrap() {
            instances += 1;
            let cs = encoding::psi(&f);
            if cs.validate(&shape, &e, &s, &scheme).is_err() && sums.is_none() {
                sums = Some(dump_instance(&shape, &e, &s, Some(&f), &[]));
            }
            match encoding::psi_inv(&shape, &e, &s, &cs) {
                Ok(back) if back == f => {}
                _ => {
                    if round_trip.is_none() {
                        round_trip = Some(dump_instance(&shape, &e, &s, Some(&f), &[]));
                    }
                }
            }
            let (ne, se) = f.ne_se();
            if encoding::ne_se_from_compositions(&shape, &e, &s, &cs) != Ok((ne, se))
                && formulas.is_none()
            {
                formulas = Some(dump_instance(&shape, &e, &s, Some(&f), &[]));
            }
            let coloring = encoding::coloring(&f);
            let mut ne_sum = 0usize;
            let mut se_sum = 0usize;
            for cell in f.cells() {
                let a = encoding::auc_with(&f, cell, &coloring).unwrap();
                let b = encoding::buc_with(&f, cell, &coloring).unwrap();
                if encoding::auc_buc_chain_counts(&f, cell) != (a, b) && prop_cells.is_none() {
                    prop_cells = Some(dump_instance(&shape, &e, &s, Some(&f), &[cell.1]));
                }
                if scheme.is_left[cell.1 - 1] {
                    ne_sum += a;
                    se_sum += b;
                } else {
                    ne_sum += b;
                    se_sum += a;
                }
            }
            if (ne_sum, se_sum) != (ne, se) && totals.is_none() {
                totals = Some(dump_instance(&shape, &e, &s, Some(&f), &[]));
            }
        }
    }
    ctx.bulk("decode inverts encode on every filling", instances, round_trip);
    ctx.bulk("composition lengths and sums obey the h-vector", instances, sums);
    ctx.bulk("prefix-sum formulas reproduce (ne, se)", instances, formulas);
    ctx.bulk("auc/buc equal their rectangle chain counts, cell by cell", instances, prop_cells);
    ctx.bulk("auc/buc totals split (ne, se) across the column parts", instances, totals);

    let f = fixtures::reference_filling();
    ctx.check(
        "reference coloring matches the worked example",
        encoding::coloring(&f).cells_of(f.shape())
            == {
                let mut cells = fixtures::reference_colored_cells();
                cells.sort_by_key(|&(r, c)| (c, r));
                cells
            },
        String::new(),
    );
    ctx.check(
        "reference auc/buc values",
        encoding::auc(&f, (5, 1)).unwrap() == 1
            && encoding::buc(&f, (5, 1)).unwrap() == 1
            && encoding::auc(&f, (4, 5)).unwrap() == 0
            && encoding::buc(&f, (4, 5)).unwrap() == 2,
        String::new(),
    );
    ctx.check(
        "reference composition sequence",
        encoding::psi(&f).comps == fixtures::reference_compositions(),
        String::new(),
    );
}

fn rectangle_cases() -> Vec<(Arc<MoonPolyomino>, Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for (n, m) in [(1usize, 1usize), (2, 2), (2, 3), (3, 3)] {
        let shape = Arc::new(
            MoonPolyomino::new((0..n).map(|_| RowInterval::new(1, m)).collect()).unwrap(),
        );
        for (e, s) in all_sum_vectors(&shape) {
            out.push((Arc::clone(&shape), e, s));
        }
    }
    out
}

fn rho(ctx: &mut Ctx, _config: &Config) {
    let mut involution: Option<String> = None;
    let mut transport: Option<String> = None;
    let mut permutation: Option<String> = None;
    let mut instances = 0usize;
    for (shape, e, s) in rectangle_cases() {
        let fillings = collect_fillings(&shape, &e, &s).unwrap();
        let one = ColSubset::new(shape.m(), &[1]).unwrap();
        let mut images = Vec::new();
        for f in &fillings {
            instances += 1;
            let image = bij::rho(f).unwrap();
            if bij::rho(&image).unwrap() != *f && involution.is_none() {
                involution = Some(dump_instance(&shape, &e, &s, Some(f), &[]));
            }
            let (ne, se) = image.ne_se();
            if (f.left_mixed(&one), f.left_mixed(&one.complement())) != (se, ne)
                && transport.is_none()
            {
                transport = Some(dump_instance(&shape, &e, &s, Some(f), &[1]));
            }
            images.push(image);
        }
        if !same_filling_set(&fillings, &images) && permutation.is_none() {
            permutation = Some(dump_instance(&shape, &e, &s, None, &[]));
        }
    }
    ctx.bulk("reversal is an involution", instances, involution);
    ctx.bulk("reversal transports (left-mixed {1}, rest) to (se, ne)", instances, transport);
    ctx.bulk("reversal permutes each filling set", instances, permutation);
    ctx.check(
        "non-rectangles are rejected",
        bij::rho(&fixtures::reference_filling()).is_err(),
        String::new(),
    );
}

fn same_filling_set(a: &[Filling], b: &[Filling]) -> bool {
    let mut ka: Vec<_> = a.iter().map(|f| f.cells()).collect();
    let mut kb: Vec<_> = b.iter().map(|f| f.cells()).collect();
    ka.sort();
    kb.sort();
    ka == kb
}

fn subset_selection(rng: &mut impl Rng, n: usize, extra: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = vec![vec![], (1..=n).collect()];
    for i in 1..=n {
        subsets.push(vec![i]);
    }
    for _ in 0..extra {
        let subset: Vec<usize> = (1..=n).filter(|_| rng.random_bool(0.5)).collect();
        subsets.push(subset);
    }
    subsets.sort();
    subsets.dedup();
    subsets
}

fn bijection_cases(config: &Config) -> Vec<(Arc<MoonPolyomino>, Vec<usize>, Vec<usize>)> {
    let mut cases = psi_cases();
    cases.extend(random_cases(config, 4));
    cases
}

fn theta(ctx: &mut Ctx, config: &Config) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut phi_pointwise: Option<String> = None;
    let mut phi_bijective: Option<String> = None;
    let mut pivot: Option<String> = None;
    let mut theta_step: Option<String> = None;
    let mut theta_pointwise: Option<String> = None;
    let mut theta_bijective: Option<String> = None;
    let mut inverse: Option<String> = None;
    let mut beta_pointwise: Option<String> = None;
    let mut instances = 0usize;
    for (shape, e, s) in bijection_cases(config) {
        let n = shape.n();
        let fillings = collect_fillings(&shape, &e, &s).unwrap();
        let one = RowSubset::new(n, &[1]).unwrap();
        let mut images = Vec::new();
        for f in &fillings {
            let image = bij::phi_alpha(f);
            let (ne, se) = image.ne_se();
            if (f.top_mixed(&one), f.top_mixed(&one.complement())) != (se, ne)
                && phi_pointwise.is_none()
            {
                phi_pointwise = Some(dump_instance(&shape, &e, &s, Some(f), &[1]));
            }
            if let Some(t) = f.one_in_row(1) {
                if bij::recover_pivot(&image) != Ok(t) && pivot.is_none() {
                    pivot = Some(dump_instance(&shape, &e, &s, Some(f), &[t]));
                }
            }
            if bij::phi_alpha_inv(&image).ok().as_ref() != Some(f) && inverse.is_none() {
                inverse = Some(dump_instance(&shape, &e, &s, Some(f), &[]));
            }
            images.push(image);
        }
        if !same_filling_set(&fillings, &images) && phi_bijective.is_none() {
            phi_bijective = Some(dump_instance(&shape, &e, &s, None, &[]));
        }
        for subset in subset_selection(&mut rng, n, 3) {
            instances += 1;
            let s_set = RowSubset::new(n, &subset).unwrap();
            if let Some(&r) = subset.iter().max() {
                let stripped: Vec<usize> =
                    subset.iter().copied().filter(|&x| x != r).collect();
                let s_stripped = RowSubset::new(n, &stripped).unwrap();
                for f in &fillings {
                    let image = bij::theta_r(f, r).unwrap();
                    let want = (f.top_mixed(&s_set), f.top_mixed(&s_set.complement()));
                    let got =
                        (image.top_mixed(&s_stripped), image.top_mixed(&s_stripped.complement()));
                    if want != got && theta_step.is_none() {
                        theta_step = Some(dump_instance(&shape, &e, &s, Some(f), &subset));
                    }
                    if bij::theta_r_inv(&image, r).ok().as_ref() != Some(f) && inverse.is_none() {
                        inverse = Some(dump_instance(&shape, &e, &s, Some(f), &subset));
                    }
                }
            }
            let mut theta_images = Vec::new();
            for f in &fillings {
                let image = bij::theta_alpha(f, &s_set).unwrap();
                let (ne, se) = image.ne_se();
                if (f.top_mixed(&s_set), f.top_mixed(&s_set.complement())) != (se, ne)
                    && theta_pointwise.is_none()
                {
                    theta_pointwise = Some(dump_instance(&shape, &e, &s, Some(f), &subset));
                }
                if bij::theta_alpha_inv(&image, &s_set).ok().as_ref() != Some(f)
                    && inverse.is_none()
                {
                    inverse = Some(dump_instance(&shape, &e, &s, Some(f), &subset));
                }
                let beta = bij::beta_variant(f, &s_set).unwrap();
                let (bne, bse) = beta.ne_se();
                if (f.bottom_mixed(&s_set), f.bottom_mixed(&s_set.complement())) != (bse, bne)
                    && beta_pointwise.is_none()
                {
                    beta_pointwise = Some(dump_instance(&shape, &e, &s, Some(f), &subset));
                }
                theta_images.push(image);
            }
            if !same_filling_set(&fillings, &theta_images) && theta_bijective.is_none() {
                theta_bijective = Some(dump_instance(&shape, &e, &s, None, &subset));
            }
        }
    }
    ctx.bulk("first-row map transports (top-mixed {1}, rest) to (se, ne)", instances, phi_pointwise);
    ctx.bulk("first-row map permutes each filling set", instances, phi_bijective);
    ctx.bulk("pivot recovery returns the forward pivot", instances, pivot);
    ctx.bulk("row-indexed step strips the largest anchor row", instances, theta_step);
    ctx.bulk("composite transports (top-mixed S, rest) to (se, ne)", instances, theta_pointwise);
    ctx.bulk("composite permutes each filling set", instances, theta_bijective);
    ctx.bulk("constructive inverses undo every map", instances, inverse);
    ctx.bulk("reflected composite handles the bottom-mixed pair", instances, beta_pointwise);
}

fn sigma(ctx: &mut Ctx, config: &Config) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5163);
    let mut gamma_pointwise: Option<String> = None;
    let mut gamma_bijective: Option<String> = None;
    let mut xi_step: Option<String> = None;
    let mut sigma_pointwise: Option<String> = None;
    let mut sigma_bijective: Option<String> = None;
    let mut inverse: Option<String> = None;
    let mut delta_pointwise: Option<String> = None;
    let mut instances = 0usize;
    for (shape, e, s) in bijection_cases(config) {
        let m = shape.m();
        let fillings = collect_fillings(&shape, &e, &s).unwrap();
        let one = ColSubset::new(m, &[1]).unwrap();
        let mut images = Vec::new();
        for f in &fillings {
            let image = bij::phi_gamma(f);
            let (ne, se) = image.ne_se();
            if (f.left_mixed(&one), f.left_mixed(&one.complement())) != (se, ne)
                && gamma_pointwise.is_none()
            {
                gamma_pointwise = Some(dump_instance(&shape, &e, &s, Some(f), &[1]));
            }
            if bij::phi_gamma_inv(&image) != *f && inverse.is_none() {
                inverse = Some(dump_instance(&shape, &e, &s, Some(f), &[]));
            }
            images.push(image);
        }
        if !same_filling_set(&fillings, &images) && gamma_bijective.is_none() {
            gamma_bijective = Some(dump_instance(&shape, &e, &s, None, &[]));
        }
        for subset in subset_selection(&mut rng, m, 3) {
            instances += 1;
            let t_set = ColSubset::new(m, &subset).unwrap();
            if let Some(&c) = subset.iter().max() {
                let stripped: Vec<usize> =
                    subset.iter().copied().filter(|&x| x != c).collect();
                let t_stripped = ColSubset::new(m, &stripped).unwrap();
                for f in &fillings {
                    let image = bij::xi_c(f, c).unwrap();
                    let want = (f.left_mixed(&t_set), f.left_mixed(&t_set.complement()));
                    let got =
                        (image.left_mixed(&t_stripped), image.left_mixed(&t_stripped.complement()));
                    if want != got && xi_step.is_none() {
                        xi_step = Some(dump_instance(&shape, &e, &s, Some(f), &subset));
                    }
                    if bij::xi_c_inv(&image, c).ok().as_ref() != Some(f) && inverse.is_none() {
                        inverse = Some(dump_instance(&shape, &e, &s, Some(f), &subset));
                    }
                }
            }
            let mut sigma_images = Vec::new();
            for f in &fillings {
                let image = bij::sigma_gamma(f, &t_set).unwrap();
                let (ne, se) = image.ne_se();
                if (f.left_mixed(&t_set), f.left_mixed(&t_set.complement())) != (se, ne)
                    && sigma_pointwise.is_none()
                {
                    sigma_pointwise = Some(dump_instance(&shape, &e, &s, Some(f), &subset));
                }
                if bij::sigma_gamma_inv(&image, &t_set).ok().as_ref() != Some(f)
                    && inverse.is_none()
                {
                    inverse = Some(dump_instance(&shape, &e, &s, Some(f), &subset));
                }
                let delta = bij::delta_variant(f, &t_set).unwrap();
                let (dne, dse) = delta.ne_se();
                if (f.right_mixed(&t_set), f.right_mixed(&t_set.complement())) != (dse, dne)
                    && delta_pointwise.is_none()
                {
                    delta_pointwise = Some(dump_instance(&shape, &e, &s, Some(f), &subset));
                }
                sigma_images.push(image);
            }
            if !same_filling_set(&fillings, &sigma_images) && sigma_bijective.is_none() {
                sigma_bijective = Some(dump_instance(&shape, &e, &s, None, &subset));
            }
        }
    }
    ctx.bulk("left-mixed map transports (left-mixed {1}, rest) to (se, ne)", instances, gamma_pointwise);
    ctx.bulk("left-mixed map permutes each filling set", instances, gamma_bijective);
    ctx.bulk("column-indexed step strips the largest anchor column", instances, xi_step);
    ctx.bulk("composite transports (left-mixed T, rest) to (se, ne)", instances, sigma_pointwise);
    ctx.bulk("composite permutes each filling set", instances, sigma_bijective);
    ctx.bulk("constructive inverses undo every map", instances, inverse);
    ctx.bulk("reflected composite handles the right-mixed pair", instances, delta_pointwise);

    let f = fixtures::gamma_example_input();
    let trace = bij::phi_gamma_trace(&f);
    ctx.check(
        "worked left-mixed example reproduces exactly",
        trace[2].cells() == fixtures::gamma_example_middle_cells()
            && trace.last().unwrap().cells() == fixtures::gamma_example_output_cells(),
        format!("image {:?}", trace.last().unwrap().cells()),
    );
}

fn h_transport(ctx: &mut Ctx, config: &Config) {
    let mut pointwise: Option<String> = None;
    let mut onto: Option<String> = None;
    let mut inverse: Option<String> = None;
    let mut instances = 0usize;
    for (shape, e, s) in bijection_cases(config) {
        let fillings = collect_fillings(&shape, &e, &s).unwrap();
        if fillings.is_empty() {
            continue;
        }
        let (target, _) = shape.rearrange_top_aligned();
        let target = Arc::new(target);
        let mut images = Vec::new();
        for f in &fillings {
            instances += 1;
            let image = bij::h_transport(f);
            if (image.ne_se() != f.ne_se()
                || image.col_sums() != f.col_sums()
                || image.shape() != target.as_ref())
                && pointwise.is_none()
            {
                pointwise = Some(dump_instance(&shape, &e, &s, Some(f), &[]));
            }
            if bij::h_transport_inv(&image, &shape).ok().as_ref() != Some(f) && inverse.is_none() {
                inverse = Some(dump_instance(&shape, &e, &s, Some(f), &[]));
            }
            images.push(image);
        }
        let e_image = images[0].row_sums();
        let full = collect_fillings(&target, &e_image, &s).unwrap();
        if !(images.iter().all(|g| g.row_sums() == e_image) && same_filling_set(&images, &full))
            && onto.is_none()
        {
            onto = Some(dump_instance(&shape, &e, &s, None, &[]));
        }
    }
    ctx.bulk("row rearrangement preserves (se, ne) and column sums", instances, pointwise);
    ctx.bulk("transport is onto the top-aligned filling set", instances, onto);
    ctx.bulk("reverse replay undoes the transport", instances, inverse);
}

/// Row permutations of a shape that stay moon polyominoes, deduplicated.
fn valid_row_permutations(shape: &MoonPolyomino) -> Vec<MoonPolyomino> {
    let n = shape.n();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (1..=n).collect();
    loop {
        if let Ok(candidate) = shape.permute_rows(&perm) {
            if seen.insert(candidate.rows().to_vec()) {
                out.push(candidate);
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn valid_column_permutations(shape: &MoonPolyomino) -> Vec<(MoonPolyomino, Vec<usize>)> {
    let m = shape.m();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (1..=m).collect();
    loop {
        if let Ok(candidate) = shape.permute_columns(&perm) {
            if seen.insert(candidate.rows().to_vec()) {
                out.push((candidate, perm.clone()));
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

fn invariance(ctx: &mut Ctx, config: &Config) {
    // Row permutations: the composite carries fillings across while fixing
    // the whole top-mixed pair, pointwise.
    let (shape, e, s) = reference_data();
    let fillings = collect_fillings(&shape, &e, &s).unwrap();
    let targets = valid_row_permutations(&shape);
    let mut pointwise: Option<String> = None;
    let mut bijective: Option<String> = None;
    let mut instances = 0usize;
    for target in &targets {
        let target = Arc::new(target.clone());
        for subset in [vec![], vec![2, 4], (1..=7).collect::<Vec<_>>()] {
            instances += 1;
            let s_set = RowSubset::new(7, &subset).unwrap();
            let mut images = BTreeSet::new();
            for f in &fillings {
                let image = bij::lambda_alpha(f, &s_set, &target).unwrap();
                let want = (f.top_mixed(&s_set), f.top_mixed(&s_set.complement()));
                let got = (image.top_mixed(&s_set), image.top_mixed(&s_set.complement()));
                if want != got && pointwise.is_none() {
                    pointwise = Some(dump_instance(&shape, &e, &s, Some(f), &subset));
                }
                images.insert(image.cells());
            }
            if images.len() != fillings.len() && bijective.is_none() {
                bijective = Some(dump_instance(&shape, &e, &s, None, &subset));
            }
        }
    }
    ctx.check(
        "row-permutation targets found",
        targets.len() > 1,
        format!("{} valid row permutations", targets.len()),
    );
    ctx.bulk("row-permutation composite preserves the top-mixed pair", instances, pointwise);
    ctx.bulk("row-permutation composite is injective", instances, bijective);

    // Column permutations: equality at distribution level.
    let mut dist_counter: Option<String> = None;
    let mut dist_instances = 0usize;
    let mut cases = exhaustive_triples();
    cases.push(reference_data());
    for (shape, e, s) in &cases {
        for (permuted, perm) in valid_column_permutations(shape) {
            let permuted = Arc::new(permuted);
            let s_permuted: Vec<usize> = perm.iter().map(|&old| s[old - 1]).collect();
            for subset in [vec![], vec![1]] {
                if subset.iter().any(|&i| i > shape.n()) {
                    continue;
                }
                dist_instances += 1;
                let a = distribution_par(shape, e, s, StatKind::Top, &subset, config.threads)
                    .unwrap();
                let b =
                    distribution_par(&permuted, e, &s_permuted, StatKind::Top, &subset, config.threads)
                        .unwrap();
                if a != b && dist_counter.is_none() {
                    dist_counter = Some(dump_instance(shape, e, s, None, &subset));
                }
            }
            dist_instances += 1;
            let a = distribution_par(shape, e, s, StatKind::Left, &[1], config.threads).unwrap();
            let b = distribution_par(&permuted, e, &s_permuted, StatKind::Left, &[1], config.threads)
                .unwrap();
            if a != b && dist_counter.is_none() {
                dist_counter = Some(dump_instance(shape, e, s, None, &[1]));
            }
        }
    }
    ctx.bulk(
        "column permutations leave every mixed distribution unchanged",
        dist_instances,
        dist_counter,
    );
}

fn words_suite(ctx: &mut Ctx, _config: &Config) {
    let counts = [2usize, 1, 1];
    let all = words::rearrangements(&counts);
    let expect = poly::pq_multinomial(4, &counts).unwrap();
    let mut counter: Option<String> = None;
    let mut instances = 0usize;
    let n = 4usize;
    for bits in 0..1usize << n {
        let rows: Vec<usize> = (1..=n).filter(|i| bits >> (i - 1) & 1 == 1).collect();
        let subset = RowSubset::new(n, &rows).unwrap();
        for kind in 0..2 {
            instances += 1;
            let mut dist = BivarPoly::zero();
            for w in &all {
                let (a, b) = if kind == 0 {
                    (w.alpha_rows(&subset), w.alpha_rows(&subset.complement()))
                } else {
                    (w.beta_rows(&subset), w.beta_rows(&subset.complement()))
                };
                dist.add_term(a as u32, b as u32, 1u32.into());
            }
            if dist != expect && counter.is_none() {
                counter = Some(format!("row subset {rows:?}, kind {kind}"));
            }
        }
    }
    for bits in 0..1usize << 3 {
        let cols: Vec<usize> = (1..=3).filter(|j| bits >> (j - 1) & 1 == 1).collect();
        let subset = ColSubset::new(3, &cols).unwrap();
        for kind in 0..2 {
            instances += 1;
            let mut dist = BivarPoly::zero();
            for w in &all {
                let (a, b) = if kind == 0 {
                    (w.gamma(&subset), w.gamma(&subset.complement()))
                } else {
                    (w.delta(&subset), w.delta(&subset.complement()))
                };
                dist.add_term(a as u32, b as u32, 1u32.into());
            }
            if dist != expect && counter.is_none() {
                counter = Some(format!("letter subset {cols:?}, kind {kind}"));
            }
        }
    }
    ctx.bulk(
        "every mixed distribution over the rearrangement class is the Gaussian multinomial",
        instances,
        counter,
    );
    ctx.check(
        "inversion enumeration reproduces the Gaussian binomial",
        {
            let mut dist = BivarPoly::zero();
            for w in words::rearrangements(&[2, 2]) {
                dist.add_term(w.inv() as u32, w.coinv() as u32, 1u32.into());
            }
            dist == poly::pq_binomial(4, 2).unwrap()
        },
        poly::pq_binomial(4, 2).unwrap().to_string(),
    );
    let mut agree: Option<String> = None;
    let mut checked = 0usize;
    for w in all.iter().chain(words::rearrangements(&[1, 1, 2]).iter()) {
        checked += 1;
        let f = w.to_filling();
        let (ne, se) = f.ne_se();
        if (w.inv(), w.coinv()) != (se, ne) && agree.is_none() {
            agree = Some(format!("word {:?}", w.letters()));
        }
    }
    ctx.bulk("inversions and co-inversions equal (se, ne) of the filling", checked, agree);
}

fn matchings_suite(ctx: &mut Ctx, _config: &Config) {
    let mut formula: Option<String> = None;
    let mut unique_zero: Option<String> = None;
    let mut chain_match: Option<String> = None;
    let mut instances = 0usize;
    for n in 1..=4usize {
        for (a, b) in matchings::endpoint_classes(n) {
            let class = matchings::enumerate_matchings(&a, &b).unwrap();
            let h = matchings::class_h_vector(&a, &b).unwrap();
            let mut expect = BivarPoly::one();
            for &hi in &h {
                expect = &expect * &poly::pq_integer(hi);
            }
            for bits in 0..1usize << n {
                instances += 1;
                let subset: Vec<usize> = a
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .map(|(_, &l)| l)
                    .collect();
                let mut dist = BivarPoly::zero();
                let mut zeros = 0usize;
                for pi in &class {
                    let alpha = pi.alpha(&subset).unwrap();
                    let co = pi.alpha(
                        &a.iter().copied().filter(|l| !subset.contains(l)).collect::<Vec<_>>(),
                    )
                    .unwrap();
                    dist.add_term(alpha as u32, co as u32, 1u32.into());
                    if alpha == 0 {
                        zeros += 1;
                    }
                }
                if dist != expect && formula.is_none() {
                    formula = Some(format!("class A={a:?} B={b:?} S={subset:?}"));
                }
                if zeros != 1 && unique_zero.is_none() {
                    unique_zero = Some(format!("class A={a:?} B={b:?} S={subset:?}: {zeros} zeros"));
                }
            }
            for pi in &class {
                if pi.to_filling().ne_se() != (pi.crossings(), pi.nestings())
                    && chain_match.is_none()
                {
                    chain_match = Some(format!("matching {:?}", pi.arcs()));
                }
            }
        }
    }
    ctx.bulk(
        "mixed crossing-nesting distribution is the product of (p,q)-integers",
        instances,
        formula,
    );
    ctx.bulk("each endpoint class has exactly one zero of the mixed statistic", instances, unique_zero);
    ctx.bulk("crossings and nestings equal (ne, se) of the Ferrers filling", instances, chain_match);

    let m = Matching::new(fixtures::matching_example_arcs()).unwrap();
    let f = m.to_filling();
    ctx.check(
        "worked matching maps to the pictured filling",
        f.cells() == fixtures::matching_example_cells()
            && f.shape().rows()
                == &fixtures::matching_example_ferrers_rows()
                    .iter()
                    .map(|&(l, r)| RowInterval::new(l, r))
                    .collect::<Vec<_>>()[..],
        String::new(),
    );
}

fn catalan_suite(ctx: &mut Ctx, _config: &Config) {
    let mut counter: Option<String> = None;
    let mut instances = 0usize;
    for n in 1..=5usize {
        let expect = matchings::catalan(n);
        let all = matchings::all_matchings(n);
        for rule in 0..3usize {
            instances += 1;
            let zeros = all
                .iter()
                .filter(|pi| {
                    let lefts = pi.left_endpoints();
                    let subset: Vec<usize> = match rule {
                        0 => vec![],
                        1 => lefts.iter().copied().filter(|&l| l == 1).collect(),
                        _ => lefts.iter().copied().filter(|&l| l % 2 == 0).collect(),
                    };
                    pi.alpha(&subset).unwrap() == 0
                })
                .count() as u64;
            if zeros != expect && counter.is_none() {
                counter = Some(format!("n={n}, rule {rule}: {zeros} != {expect}"));
            }
        }
    }
    ctx.bulk(
        "zeros of the mixed statistic over all matchings count the Catalan numbers",
        instances,
        counter,
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_shapes_are_valid_and_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let shapes: Vec<MoonPolyomino> = (0..50).map(|_| random_moon(&mut rng, 6, 6)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let again: Vec<MoonPolyomino> = (0..50).map(|_| random_moon(&mut rng, 6, 6)).collect();
        assert_eq!(shapes, again);
        for shape in &shapes {
            assert!(shape.n() <= 6 && shape.m() <= 6);
        }
    }

    #[test]
    fn sum_vector_enumeration_matches_feasibility() {
        let shape = fixtures::fixture_shapes()[7].clone();
        let pairs = all_sum_vectors(&shape);
        for (e, s) in &pairs {
            assert_eq!(e.iter().sum::<usize>(), s.iter().sum::<usize>());
        }
        let shape = Arc::new(shape);
        // Every pair enumerates without error (possibly to zero fillings).
        for (e, s) in pairs {
            let _ = collect_fillings(&shape, &e, &s).unwrap();
        }
    }

    #[test]
    fn every_suite_passes_at_reduced_scale() {
        let config = Config { shapes: 3, max_rows: 4, max_cols: 4, ..Config::default() };
        for theorem in Theorem::ALL {
            let suite = run(theorem, &config);
            for check in &suite.checks {
                assert!(check.pass, "{}: {} ({})", suite.theorem, check.name, check.detail);
            }
        }
    }

    #[test]
    fn theorem_names_round_trip() {
        for theorem in Theorem::ALL {
            assert_eq!(Theorem::parse(theorem.name()), Some(theorem));
        }
        assert_eq!(Theorem::parse("nope"), None);
    }
}
