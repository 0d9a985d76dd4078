//! Seeded verification suites over a built-in corpus.
//!
//! Every suite returns one [`CheckReport`] per case. Engine errors inside a
//! case are reported as a failed case rather than aborting the suite.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::dsl::{eval, parse, OperatorExpr, SeqLit, SymExpr};
use crate::engine::{
    punctured_scan, verify_fedosov, verify_ideal_perturbation, verify_log_law, verify_power_law, verify_well_defined,
    CheckReport, Classification,
};
use crate::error::EngineError;
use crate::finite_rank::FiniteRankOperator;
use crate::matrix::ExactMatrix;
use crate::operator::{Block, BlockOperator};
use crate::random;
use crate::scalar::{rat, GaussianRational as GR};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Fedosov,
    Welldefined,
    Punctured,
    Loglaw,
    Ideal,
    Powerlaw,
    Traceaxioms,
    Drazin,
    Windows,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Fedosov,
        Suite::Welldefined,
        Suite::Punctured,
        Suite::Loglaw,
        Suite::Ideal,
        Suite::Powerlaw,
        Suite::Traceaxioms,
        Suite::Drazin,
        Suite::Windows,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format!("{self:?}").to_lowercase();
        f.write_str(&s)
    }
}

/// Symbols of the corpus with the Fredholm index of `T(f)`.
pub const CORPUS_SYMBOLS: [(&str, i64); 13] = [
    ("z", -1),
    ("z^2", -2),
    ("z^3", -3),
    ("z^4", -4),
    ("z^5", -5),
    ("z^-1", 1),
    ("z^-2", 2),
    ("z^-3", 3),
    ("z - 1/2", -1),
    ("(z - 1/2)(z - 3)", -1),
    ("(z - 1/2)^2/(z - 3)", -2),
    // not in the acceptance list, but cheap and with complex roots
    ("(z - 1/2i)/(z + 2 - i)", -1),
    ("2 + z^-1", 0),
];

const NILPOTENTS: [&str; 3] = ["", " (++) M[[0,1],[0,0]]", " (++) M[[0,1,0],[0,0,1],[0,0,0]]"];

/// Zero symbol next to a nilpotent block: B-Fredholm but not Fredholm.
pub const B_FREDHOLM_ONLY: [&str; 2] = ["T(0) (++) M[[0,1],[0,0]]", "T(0) (++) M[[0,1,0],[0,0,1],[0,0,0]]"];

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub op: BlockOperator,
    pub expected_index: i64,
}

/// Each corpus symbol, optionally with a nilpotent Jordan block and
/// optionally plus a seeded rank-≤2 ideal element.
pub fn corpus(seed: u64) -> Vec<CorpusEntry> {
    let mut rng = random::rng(seed);
    let mut out = Vec::new();
    for (sym, idx) in CORPUS_SYMBOLS {
        for nil in NILPOTENTS {
            let label = format!("T({sym}){nil}");
            let op = eval(&parse(&label).expect("corpus parses")).expect("corpus evaluates");
            let j = random::ideal_element(&mut rng, &op.signature(), 2);
            let perturbed = op.add(&j).expect("same signature");
            out.push(CorpusEntry { label: label.clone(), op, expected_index: idx });
            out.push(CorpusEntry { label: format!("{label} + j"), op: perturbed, expected_index: idx });
        }
    }
    out
}

fn case(name: impl Into<String>, result: Result<CheckReport, EngineError>) -> CheckReport {
    match result {
        Ok(r) => r,
        Err(e) => CheckReport { name: name.into(), passed: false, details: vec![format!("FAILED: {e}")] },
    }
}

fn single(name: impl Into<String>, checks: Vec<(bool, String)>) -> CheckReport {
    let passed = checks.iter().all(|(ok, _)| *ok);
    let details = checks.into_iter().map(|(ok, d)| if ok { d } else { format!("FAILED: {d}") }).collect();
    CheckReport { name: name.into(), passed, details }
}

pub fn run_suite(suite: Suite, seed: u64, trials: usize) -> Vec<CheckReport> {
    match suite {
        Suite::Fedosov => fedosov(seed),
        Suite::Welldefined => well_defined(seed, trials),
        Suite::Punctured => punctured(seed),
        Suite::Loglaw => log_law(),
        Suite::Ideal => ideal(seed, trials),
        Suite::Powerlaw => power_law(seed),
        Suite::Traceaxioms => trace_axioms(seed),
        Suite::Drazin => matrix_drazin(seed),
        Suite::Windows => windows(seed, 100),
        Suite::All => Suite::EACH.iter().flat_map(|s| run_suite(*s, seed, trials)).collect(),
    }
}

pub fn fedosov(seed: u64) -> Vec<CheckReport> {
    corpus(seed)
        .into_iter()
        .map(|e| {
            let mut r = case(&e.label, verify_fedosov(&e.op));
            if r.passed {
                let got = crate::engine::index_winding(&e.op);
                let ok = got.as_ref().is_ok_and(|g| *g == e.expected_index);
                r.passed &= ok;
                r.details.push(format!("{}expected index {}, got {got:?}", if ok { "" } else { "FAILED: " }, e.expected_index));
            }
            r.name = format!("fedosov {}", e.label);
            r
        })
        .collect()
}

pub fn well_defined(seed: u64, trials: usize) -> Vec<CheckReport> {
    corpus(seed)
        .iter()
        .enumerate()
        .map(|(k, e)| case(format!("well-defined {}", e.label), verify_well_defined(&e.op, trials, seed ^ (k as u64 + 1) << 8)))
        .collect()
}

/// Radii `1/8, 1/16, 1/32` in eight directions around each corpus operator.
pub fn punctured(seed: u64) -> Vec<CheckReport> {
    let radii = [rat(1, 8), rat(1, 16), rat(1, 32)];
    let mut out = Vec::new();
    for e in corpus(seed) {
        let name = format!("punctured {}", e.label);
        let table = match punctured_scan(&e.op, &radii, 8) {
            Ok(t) => t,
            Err(err) => {
                out.push(case(name, Err(err)));
                continue;
            }
        };
        let mut checks = vec![
            (table.samples.len() == 24, format!("{} samples", table.samples.len())),
            (table.r_star.is_some(), format!("r* = {:?}", table.r_star.as_ref().map(GR::to_string))),
        ];
        for s in &table.samples {
            let ok = s.classification.is_fredholm()
                && s.index == table.index_at_zero
                && s.index_trace.is_none_or(|t| Some(t) == table.index_at_zero);
            if ok {
                checks.push((true, format!("lambda {}: {} index {:?}", s.lambda, s.classification, s.index)));
                continue;
            }
            // outside the class only where f - λ provably vanishes on the circle
            match circle_zero(&e.op.scalar_shift(&s.lambda)) {
                Some(zeta) if s.classification == Classification::NotInClass => checks.push((
                    true,
                    format!("lambda {}: NotInClass, symbol vanishes at {zeta} on the circle", s.lambda),
                )),
                _ => checks.push((false, format!("lambda {}: {} index {:?}", s.lambda, s.classification, s.index))),
            }
        }
        out.push(single(name, checks));
    }
    for src in B_FREDHOLM_ONLY {
        let a = eval(&parse(src).expect("parses")).expect("evaluates");
        let name = format!("punctured {src}");
        match punctured_scan(&a, &radii, 8) {
            Ok(table) => {
                let mut checks = vec![(
                    table.classification_at_zero == Classification::BFredholm,
                    format!("lambda 0: {}", table.classification_at_zero),
                )];
                for s in &table.samples {
                    let ok = s.classification.is_fredholm() && s.index == Some(0);
                    checks.push((ok, format!("lambda {}: {} index {:?}", s.lambda, s.classification, s.index)));
                }
                out.push(single(name, checks));
            }
            Err(err) => out.push(case(name, Err(err))),
        }
    }
    out
}

/// An exact point `ζ` with `|ζ| = 1` where some Toeplitz symbol of `a` vanishes.
pub fn circle_zero(a: &BlockOperator) -> Option<GR> {
    a.blocks().iter().find_map(|b| {
        let Block::Toeplitz(t) = b else { return None };
        let num = t.symbol.num();
        let roots = crate::roots::gaussian_roots(num, &[])?;
        roots
            .into_iter()
            .map(|(r, _)| r)
            .find(|r| r.abs2() == rat(1, 1) && num.eval(r).is_zero() && !t.symbol.den().eval(r).is_zero())
    })
}

fn op(src: &str) -> BlockOperator {
    eval(&parse(src).expect("parses")).expect("evaluates")
}

pub fn log_law() -> Vec<CheckReport> {
    let mut out = vec![
        case("log law T(z), T(z - 1/2)", verify_log_law(&op("T(z)"), &op("T(z - 1/2)"), &op("2 * I"), &op("(-2) * I"))),
        case(
            "log law T(z), T(z - 2)",
            verify_log_law(&op("T(z)"), &op("T(z - 2)"), &op("1/2 * I"), &op("(-1/2) * I")),
        ),
        case("log law 3e, T(z)", verify_log_law(&op("3 * I"), &op("T(z)"), &op("1/3 * I"), &op("T(0)"))),
    ];
    let rejected = verify_log_law(&op("T(z)"), &op("T(z - 2)"), &op("I"), &op("I"));
    out.push(single(
        "log law rejects a non-Bezout pair",
        vec![(matches!(rejected, Err(EngineError::NotBezout)), format!("{:?}", rejected.map(|r| r.passed)))],
    ));
    let rejected = verify_log_law(&op("T(z)"), &op("T(z) + FR{e0|e1}"), &op("I"), &op("I"));
    out.push(single(
        "log law rejects a noncommuting pair",
        vec![(matches!(rejected, Err(EngineError::NotCommuting(_))), format!("{:?}", rejected.map(|r| r.passed)))],
    ));
    out
}

pub fn ideal(seed: u64, trials: usize) -> Vec<CheckReport> {
    let mut rng = random::rng(seed.wrapping_add(0x1dea));
    let mut out = Vec::new();
    for e in corpus(seed) {
        let sig = e.op.signature();
        let mut checks = Vec::new();
        for k in 0..trials {
            let j = random::ideal_element(&mut rng, &sig, 2);
            let r = case("", verify_ideal_perturbation(&e.op, &j));
            checks.push((r.passed, format!("trial {k}: {}", r.details.join("; "))));
        }
        out.push(single(format!("ideal {}", e.label), checks));
    }
    out
}

pub fn power_law(seed: u64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for e in corpus(seed) {
        for p in 2..=4 {
            out.push(case(format!("power law {} p={p}", e.label), verify_power_law(&e.op, p)));
        }
    }
    out
}

pub fn trace_axioms(seed: u64) -> Vec<CheckReport> {
    let mut rng = random::rng(seed.wrapping_add(0x7ace));
    let mut out = Vec::new();

    let shift_commutator = op("T(z) * T(z^-1) - T(z^-1) * T(z)");
    let t = shift_commutator.ideal_trace().map_err(EngineError::from);
    out.push(single(
        "trace of SS* - S*S",
        vec![(t.as_ref().is_ok_and(|t| *t == GR::from_int(-1)), format!("{t:?}"))],
    ));

    for k in 0..10 {
        let (u, v) = loop {
            let u = random::tailed_sequence(&mut rng);
            let v = random::tailed_sequence(&mut rng);
            let s = v.pairing(&u);
            if !s.is_zero() {
                break (u, v.scale(&s.inv()));
            }
        };
        let p = FiniteRankOperator::rank_one(u, v);
        out.push(single(
            format!("idempotent {k}"),
            vec![(p.compose(&p) == p, "P^2 = P".into()), (p.trace().is_one(), format!("trace {}", p.trace()))],
        ));
    }

    for k in 0..50 {
        let a = random_ideal_with_tails(&mut rng);
        let b = random_ideal_with_tails(&mut rng);
        let c = random::small_scalar(&mut rng);
        let (ta, tb) = (a.trace(), b.trace());
        out.push(single(
            format!("linearity {k}"),
            vec![
                (a.add(&b).trace() == &ta + &tb, "trace(A+B) = trace A + trace B".into()),
                (a.scale(&c).trace() == &c * &ta, format!("trace(cA) = c trace A, c = {c}")),
            ],
        ));
    }

    for k in 0..25 {
        let f = BlockOperator::finite_rank(random_ideal_with_tails(&mut rng));
        let b = BlockOperator::toeplitz_with(random::split_symbol(&mut rng), random::finite_rank(&mut rng, 2, 3));
        let result = (|| -> Result<(GR, GR), EngineError> {
            Ok((f.mul(&b)?.ideal_trace()?, b.mul(&f)?.ideal_trace()?))
        })();
        let (ok, detail) = match &result {
            Ok((x, y)) => (x == y, format!("trace(FB) = {x}, trace(BF) = {y}")),
            Err(e) => (false, e.to_string()),
        };
        out.push(single(format!("cyclicity {k}"), vec![(ok, detail)]));
    }
    out
}

fn random_ideal_with_tails(rng: &mut impl Rng) -> FiniteRankOperator {
    let k = rng.gen_range(1..=2);
    FiniteRankOperator::from_terms(
        (0..k).map(|_| (random::tailed_sequence(rng), random::tailed_sequence(rng))).collect(),
    )
}

/// `A = P · diag(C, N) · P⁻¹` with `C` invertible and `N` nilpotent of a
/// chosen index `k`; returns `A` and `k`.
pub fn drazin_test_matrix(rng: &mut impl Rng, n: usize) -> (ExactMatrix, usize) {
    let r = rng.gen_range(0..=n);
    let m = n - r;
    let mut nil: Option<ExactMatrix> = None;
    let mut k = 0;
    let mut left = m;
    while left > 0 {
        let size = rng.gen_range(1..=left);
        k = k.max(size);
        left -= size;
        let j = ExactMatrix::jordan_block(size, &GR::zero());
        nil = Some(match nil {
            None => j,
            Some(acc) => ExactMatrix::block_diag(&acc, &j),
        });
    }
    let core = (r > 0).then(|| random::invertible_matrix(rng, r));
    let d = match (core, nil) {
        (Some(c), Some(z)) => ExactMatrix::block_diag(&c, &z),
        (Some(c), None) => c,
        (None, Some(z)) => z,
        (None, None) => unreachable!("n >= 1"),
    };
    let p = random::invertible_matrix(rng, n);
    let p_inv = p.inverse().expect("invertible by construction");
    (p.mul(&d).and_then(|x| x.mul(&p_inv)).expect("square"), k)
}

pub fn matrix_drazin(seed: u64) -> Vec<CheckReport> {
    let mut rng = random::rng(seed.wrapping_add(0xd7a2));
    (0..50)
        .map(|c| {
            let n = 2 + c % 7;
            let (a, k) = drazin_test_matrix(&mut rng, n);
            let name = format!("drazin {n}x{n} case {c}");
            let result = (|| -> Result<Vec<(bool, String)>, crate::error::MatrixError> {
                let (d, got) = a.drazin()?;
                let ak = a.pow(k as u32)?;
                Ok(vec![
                    (got == k, format!("index {got}, constructed {k}")),
                    (a.mul(&d)? == d.mul(&a)?, "AD = DA".into()),
                    (d.mul(&a)?.mul(&d)? == d, "DAD = D".into()),
                    (ak.mul(&a)?.mul(&d)? == ak, "A^(k+1) D = A^k".into()),
                    (a.spectral_trace_check()?, "spectral trace check".into()),
                ])
            })();
            match result {
                Ok(checks) => single(name, checks),
                Err(e) => single(name, vec![(false, e.to_string())]),
            }
        })
        .collect()
}

// ---- brute-force window oracle ----

type Laurent = BTreeMap<i64, GR>;

fn laurent(e: &SymExpr) -> Option<Laurent> {
    let mono = |k: i64, c: GR| Laurent::from([(k, c)]);
    let combine = |a: Laurent, b: Laurent, sign: &GR| {
        let mut out = a;
        for (k, c) in b {
            let v = out.remove(&k).unwrap_or_else(GR::zero) + (sign * &c);
            if !v.is_zero() {
                out.insert(k, v);
            }
        }
        out
    };
    let product = |a: &Laurent, b: &Laurent| {
        let mut out = Laurent::new();
        for (i, x) in a {
            for (j, y) in b {
                let v = out.remove(&(i + j)).unwrap_or_else(GR::zero) + (x * y);
                if !v.is_zero() {
                    out.insert(i + j, v);
                }
            }
        }
        out
    };
    Some(match e {
        SymExpr::Z => mono(1, GR::one()),
        SymExpr::Const(c) if c.is_zero() => Laurent::new(),
        SymExpr::Const(c) => mono(0, c.clone()),
        SymExpr::Neg(x) => combine(Laurent::new(), laurent(x)?, &-GR::one()),
        SymExpr::Add(a, b) => combine(laurent(a)?, laurent(b)?, &GR::one()),
        SymExpr::Sub(a, b) => combine(laurent(a)?, laurent(b)?, &-GR::one()),
        SymExpr::Mul(a, b) => product(&laurent(a)?, &laurent(b)?),
        SymExpr::Pow(x, k) => {
            let base = laurent(x)?;
            if *k < 0 {
                // only monomials have Laurent-polynomial inverses
                let (d, c) = base.iter().next().filter(|_| base.len() == 1)?;
                return Some(mono(d * k, c.pow(*k)));
            }
            (0..*k).fold(mono(0, GR::one()), |acc, _| product(&acc, &base))
        }
        SymExpr::Div(..) => return None,
    })
}

fn seq_values(s: &SeqLit) -> Option<Vec<GR>> {
    match s {
        SeqLit::Fin(v) => Some(v.clone()),
        SeqLit::Unit(k) => {
            let mut v = vec![GR::zero(); k + 1];
            v[*k] = GR::one();
            Some(v)
        }
        SeqLit::Geo(..) => None,
    }
}

/// Entries `(i, j)` vanish unless `|i - j| < reach` or both are below it.
fn reach(e: &OperatorExpr) -> Option<usize> {
    Some(match e {
        OperatorExpr::Toeplitz(s) => {
            laurent(s)?.keys().map(|k| k.unsigned_abs() as usize + 1).max().unwrap_or(0)
        }
        OperatorExpr::Identity => 1,
        OperatorExpr::FiniteRank(pairs) => {
            let mut r = 0;
            for (u, v) in pairs {
                r = r.max(seq_values(u)?.len()).max(seq_values(v)?.len());
            }
            r
        }
        OperatorExpr::Scale(_, x) | OperatorExpr::Neg(x) => reach(x)?,
        OperatorExpr::Add(a, b) | OperatorExpr::Sub(a, b) => reach(a)?.max(reach(b)?),
        OperatorExpr::Mul(a, b) => reach(a)? + reach(b)?,
        OperatorExpr::Matrix(_) | OperatorExpr::DirectSum(_) => return None,
    })
}

/// Truncation size at which the brute-force product is exact on a `w × w` window.
fn needed(e: &OperatorExpr, w: usize) -> usize {
    match e {
        OperatorExpr::Scale(_, x) | OperatorExpr::Neg(x) => needed(x, w),
        OperatorExpr::Add(a, b) | OperatorExpr::Sub(a, b) => needed(a, w).max(needed(b, w)),
        OperatorExpr::Mul(a, b) => {
            let w2 = w + reach(a).unwrap_or(0);
            needed(a, w2).max(needed(b, w2))
        }
        _ => w,
    }
}

type Dense = Vec<Vec<GR>>;

fn dense(e: &OperatorExpr, n: usize) -> Option<Dense> {
    let zero = || vec![vec![GR::zero(); n]; n];
    Some(match e {
        OperatorExpr::Toeplitz(s) => {
            let f = laurent(s)?;
            let mut m = zero();
            for (i, row) in m.iter_mut().enumerate() {
                for (j, x) in row.iter_mut().enumerate() {
                    if let Some(c) = f.get(&(i as i64 - j as i64)) {
                        *x = c.clone();
                    }
                }
            }
            m
        }
        OperatorExpr::Identity => {
            let mut m = zero();
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = GR::one();
            }
            m
        }
        OperatorExpr::FiniteRank(pairs) => {
            let mut m = zero();
            for (u, v) in pairs {
                let (u, v) = (seq_values(u)?, seq_values(v)?);
                for (i, a) in u.iter().enumerate().take(n) {
                    for (j, b) in v.iter().enumerate().take(n) {
                        m[i][j] = &m[i][j] + &(a * b);
                    }
                }
            }
            m
        }
        OperatorExpr::Scale(c, x) => map(dense(x, n)?, |v| c * v),
        OperatorExpr::Neg(x) => map(dense(x, n)?, |v| -v.clone()),
        OperatorExpr::Add(a, b) => zip(dense(a, n)?, dense(b, n)?, |x, y| x + y),
        OperatorExpr::Sub(a, b) => zip(dense(a, n)?, dense(b, n)?, |x, y| x - y),
        OperatorExpr::Mul(a, b) => {
            let (a, b) = (dense(a, n)?, dense(b, n)?);
            let mut m = zero();
            for i in 0..n {
                for k in 0..n {
                    if a[i][k].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        if !b[k][j].is_zero() {
                            m[i][j] = &m[i][j] + &(&a[i][k] * &b[k][j]);
                        }
                    }
                }
            }
            m
        }
        OperatorExpr::Matrix(_) | OperatorExpr::DirectSum(_) => return None,
    })
}

fn map(m: Dense, f: impl Fn(&GR) -> GR) -> Dense {
    m.iter().map(|r| r.iter().map(&f).collect()).collect()
}

fn zip(a: Dense, b: Dense, f: impl Fn(&GR, &GR) -> GR) -> Dense {
    a.iter().zip(&b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| f(p, q)).collect()).collect()
}

/// Compares the `w × w` window of an expression against plain truncated
/// matrix arithmetic. `None` when the expression is outside the oracle's
/// reach (rational symbols, geometric sequences, matrix blocks).
pub fn window_check(e: &OperatorExpr, w: usize) -> Option<Result<bool, String>> {
    let n = needed(e, w);
    let brute = dense(e, n)?;
    let op = match eval(e) {
        Ok(op) => op,
        Err(err) => return Some(Err(err.to_string())),
    };
    for (i, row) in brute.iter().enumerate().take(w) {
        for (j, want) in row.iter().enumerate().take(w) {
            match op.entry(0, i, j) {
                Ok(got) if got == *want => {}
                Ok(got) => return Some(Err(format!("entry ({i},{j}): {got} vs brute force {want}"))),
                Err(err) => return Some(Err(err.to_string())),
            }
        }
    }
    Some(Ok(true))
}

pub fn windows(seed: u64, count: usize) -> Vec<CheckReport> {
    let mut rng = random::rng(seed.wrapping_add(0x3132));
    (0..count)
        .map(|k| {
            let e = random::operator_expr(&mut rng, 4, true);
            let name = format!("window {k}: {e}");
            match window_check(&e, 32) {
                Some(Ok(_)) => single(name, vec![(true, "32x32 window matches".into())]),
                Some(Err(msg)) => single(name, vec![(false, msg)]),
                None => single(name, vec![(false, "expression outside the brute-force oracle".into())]),
            }
        })
        .collect()
}
