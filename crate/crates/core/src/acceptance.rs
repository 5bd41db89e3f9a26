//! End-to-end acceptance checks, shared by the `selftest` command and the
//! `acceptance` test target.

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{
    cs_matrices, davenport_symmetrized, dp_finite_pointset, dp_net, dp_net_matrices,
    dp_sequence, dp_untrimmed_pointset, faure_matrices, interlace_matrices, interlace_points,
    niederreiter_net_matrices, van_der_corput, ContinuedFraction, CsParams, NiedParams,
};
use crate::discrepancy::{
    l2_exact_rational, l2_prefix_profile, l2_squared, lemma6_inequality_check, lq_estimate, roth_constant,
    sequence_profile, LqOptions, SequenceFamily,
};
use crate::error::Result;
use crate::field::{FieldMatrix, PrimeField};
use crate::metrics::{min_dual_weight, nrt_identity_holds, t_alpha, verify_order_alpha, WeightKind};
use crate::net::{char_property_sum, compute_t_value, generate_net_points, Coord, DualSpace, GeneratingMatrixSet, PointSet};

const DUAL_CAP: u64 = 1 << 24;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<28} {:>9.3}s / {:>4}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub budget: Duration,
    check: fn() -> Result<(bool, String)>,
}

impl Criterion {
    pub fn run(&self) -> CriterionResult {
        let start = Instant::now();
        let outcome = (self.check)();
        let elapsed = start.elapsed();
        let (passed, detail) = match outcome {
            Ok((ok, detail)) => (ok, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let over = elapsed > self.budget;
        CriterionResult {
            id: self.id,
            name: self.name,
            passed: passed && !over,
            detail: if over { format!("{detail}; over time budget") } else { detail },
            elapsed,
            budget: self.budget,
        }
    }
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "cs-example-matrices", budget: secs(1), check: cs_example },
        Criterion { id: 2, name: "cs-structure", budget: secs(10), check: cs_structure },
        Criterion { id: 3, name: "dual-nrt-identity", budget: secs(30), check: nrt_identity },
        Criterion { id: 4, name: "order-alpha", budget: secs(60), check: order_alpha },
        Criterion { id: 5, name: "l2-oracle-equivalence", budget: secs(10), check: oracle_equivalence },
        Criterion { id: 6, name: "roth-validity", budget: secs(120), check: roth_validity },
        Criterion { id: 7, name: "character-property", budget: secs(30), check: character_property },
        Criterion { id: 8, name: "interlaced-net-shape", budget: secs(300), check: interlaced_net_shape },
        Criterion { id: 9, name: "trim-inequality", budget: secs(120), check: trim_inequality },
        Criterion { id: 10, name: "sequence-digit-sum-shape", budget: secs(300), check: sequence_shape },
        Criterion { id: 11, name: "davenport-shape", budget: secs(60), check: davenport_shape },
        Criterion { id: 12, name: "interlacing-paths", budget: secs(10), check: interlacing_paths },
        Criterion { id: 13, name: "lq-calibration", budget: secs(120), check: lq_calibration },
    ]
}

pub fn run_all() -> Vec<CriterionResult> {
    criteria().iter().map(Criterion::run).collect()
}

fn cs_example() -> Result<(bool, String)> {
    let p = CsParams::new(5, 2, 2, 2, Some(vec![vec![0, 1], vec![2, 3]]))?;
    let c = cs_matrices(&p);
    let c1 = vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 1, 1, 1], vec![0, 1, 2, 3]];
    let c2 = vec![vec![1, 2, 4, 3], vec![0, 1, 4, 2], vec![1, 3, 4, 2], vec![0, 1, 1, 2]];
    let ok = c.matrix(0).to_rows() == c1 && c.matrix(1).to_rows() == c2;
    Ok((ok, if ok { "both matrices equal".into() } else { format!("{:?}", c.matrices()) }))
}

fn cs_structure() -> Result<(bool, String)> {
    let mut notes = Vec::new();
    let mut ok = true;
    for (b, m, s) in [(5, 1, 2), (5, 2, 2), (11, 1, 2), (11, 1, 3)] {
        let c = cs_matrices(&CsParams::new(b, 2, m, s, None)?);
        let t = compute_t_value(&c);
        let dual = DualSpace::new(&c, DUAL_CAP)?;
        let w = min_dual_weight(&dual, WeightKind::Hamming, u64::MAX);
        let good = t == 0 && w.min.map_or(true, |v| v >= 3);
        ok &= good;
        notes.push(format!("b={b} m={m} s={s}: t={t} min_hamming={:?} |D|={}", w.min, w.dual_size));
    }
    Ok((ok, notes.join("; ")))
}

fn random_full_rank(b: u32, m: usize, s: usize, seed: u64) -> Result<GeneratingMatrixSet> {
    let f = PrimeField::new(b)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mats = Vec::with_capacity(s);
    while mats.len() < s {
        let rows: Vec<Vec<u32>> = (0..m).map(|_| (0..m).map(|_| rng.gen_range(0..b)).collect()).collect();
        let c = FieldMatrix::from_rows(f, &rows)?;
        if c.rank() == m {
            mats.push(c);
        }
    }
    GeneratingMatrixSet::new(mats)
}

fn nrt_identity() -> Result<(bool, String)> {
    let nets: Vec<(String, GeneratingMatrixSet)> = vec![
        ("faure b=3 m=3 s=2".into(), faure_matrices(3, 3, 2)?),
        ("faure b=5 m=2 s=3".into(), faure_matrices(5, 2, 3)?),
        ("faure b=7 m=2 s=4".into(), faure_matrices(7, 2, 4)?),
        ("cs b=5 a=2 m=1 s=2".into(), cs_matrices(&CsParams::new(5, 2, 1, 2, None)?)),
        ("cs b=5 a=2 m=2 s=2".into(), cs_matrices(&CsParams::new(5, 2, 2, 2, None)?)),
        ("cs b=11 a=2 m=1 s=3".into(), cs_matrices(&CsParams::new(11, 2, 1, 3, None)?)),
        ("dp-net a=2 m=3 s=1".into(), dp_net_matrices(2, 3, 1)?),
        ("dp-net a=2 m=4 s=2".into(), dp_net_matrices(2, 4, 2)?),
        ("dp-net a=3 m=3 s=2".into(), dp_net_matrices(3, 3, 2)?),
        ("niederreiter m=6 s=3".into(), niederreiter_net_matrices(&NiedParams::new(3)?, 6)),
        ("random b=2 m=5 s=3".into(), random_full_rank(2, 5, 3, 1)?),
        ("random b=3 m=3 s=3".into(), random_full_rank(3, 3, 3, 2)?),
    ];
    let mut failed = Vec::new();
    for (name, c) in &nets {
        let (holds, t, w) = nrt_identity_holds(c, DUAL_CAP)?;
        if !holds {
            failed.push(format!("{name}: t={t} min_mu1={w:?}"));
        }
    }
    let detail = if failed.is_empty() { format!("{} nets", nets.len()) } else { failed.join("; ") };
    Ok((failed.is_empty(), detail))
}

fn order_alpha() -> Result<(bool, String)> {
    let mut failed = Vec::new();
    let mut count = 0;
    for alpha in [2usize, 3] {
        for s in [1usize, 2] {
            for m in 1..=4usize {
                let base = niederreiter_net_matrices(&NiedParams::new(alpha * s)?, m);
                let t = compute_t_value(&base) as u32;
                let c = interlace_matrices(&base, alpha)?;
                count += 1;
                if !verify_order_alpha(&c, alpha as u32, m as u32, t, DUAL_CAP)? {
                    failed.push(format!("alpha={alpha} s={s} m={m} t={t} t_alpha={}", t_alpha(alpha as u32, t, s as u32)));
                }
            }
        }
    }
    let detail = if failed.is_empty() { format!("{count} nets") } else { failed.join("; ") };
    Ok((failed.is_empty(), detail))
}

fn rational_set(rng: &mut ChaCha8Rng, n: usize, s: usize) -> Result<PointSet> {
    let rows = (0..n)
        .map(|_| {
            (0..s)
                .map(|_| {
                    let den = rng.gen_range(1..=97u128);
                    Coord::rational(rng.gen_range(0..den), den)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(2, s, rows)
}

fn oracle_equivalence() -> Result<(bool, String)> {
    let origin = PointSet::new(2, 1, vec![vec![Coord::rational(0, 1)?]])?;
    let two = van_der_corput(2, 1)?;
    let closed = (l2_squared(&origin) - 1.0 / 3.0).abs() <= 1e-12 && (l2_squared(&two) - 1.0 / 12.0).abs() <= 1e-12;
    let mut sets = vec![origin, two];
    sets.push(van_der_corput(2, 6)?);
    sets.push(van_der_corput(3, 3)?);
    sets.push(generate_net_points(&faure_matrices(3, 3, 3)?)?.prefix(27));
    sets.push(dp_net(2, 5, 2)?);
    sets.push(dp_net(3, 4, 3)?);
    sets.push(dp_finite_pointset(13, 2)?);
    sets.push(dp_finite_pointset(45, 3)?);
    sets.push(davenport_symmetrized(&ContinuedFraction::golden_ratio(), 16)?);
    sets.push(dp_sequence(2, 37)?);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    while sets.len() < 50 {
        let n = rng.gen_range(1..=64);
        let s = rng.gen_range(1..=3);
        sets.push(rational_set(&mut rng, n, s)?);
    }
    let mut worst = 0.0f64;
    for p in &sets {
        let exact = l2_exact_rational(p)?.to_f64().unwrap_or(f64::NAN);
        worst = worst.max((l2_squared(p).sqrt() - exact.sqrt()).abs()).max((l2_squared(p) - exact).abs());
    }
    let ok = closed && worst <= 1e-12;
    Ok((ok, format!("{} sets, max abs deviation {worst:.2e}", sets.len())))
}

fn roth_holds(n: usize, s: usize, l2: f64) -> bool {
    if n < 2 {
        return true;
    }
    let nf = n as f64;
    nf * l2 >= roth_constant(s) * nf.ln().powf((s as f64 - 1.0) / 2.0) - 1e-9
}

fn roth_validity() -> Result<(bool, String)> {
    let mut sets: Vec<(String, PointSet)> = vec![
        ("van-der-corput b=2 m=12".into(), van_der_corput(2, 12)?),
        ("van-der-corput b=3 m=7".into(), van_der_corput(3, 7)?),
        ("faure b=3 m=7 s=3".into(), generate_net_points(&faure_matrices(3, 7, 3)?)?),
        ("faure b=5 m=5 s=5".into(), generate_net_points(&faure_matrices(5, 5, 5)?)?),
        ("cs b=5 a=2 m=2 s=2".into(), generate_net_points(&cs_matrices(&CsParams::new(5, 2, 2, 2, None)?))?),
        ("cs b=7 a=2 m=2 s=3".into(), generate_net_points(&cs_matrices(&CsParams::new(7, 2, 2, 3, None)?))?),
        ("niederreiter m=12 s=3".into(), generate_net_points(&niederreiter_net_matrices(&NiedParams::new(3)?, 12))?),
        ("dp-net a=2 m=12 s=2".into(), dp_net(2, 12, 2)?),
        ("dp-net a=3 m=12 s=3".into(), dp_net(3, 12, 3)?),
        ("dp-finite N=1000 s=2".into(), dp_finite_pointset(1000, 2)?),
        ("dp-finite N=3001 s=3".into(), dp_finite_pointset(3001, 3)?),
    ];
    for k in 1..=11 {
        sets.push((format!("davenport M=2^{k}"), davenport_symmetrized(&ContinuedFraction::golden_ratio(), 1 << k)?));
    }
    let mut failed = Vec::new();
    let mut checked = 0usize;
    for (name, p) in &sets {
        checked += 1;
        if !roth_holds(p.len(), p.dim(), l2_squared(p).sqrt()) {
            failed.push(name.clone());
        }
    }
    // every prefix of the sequences
    for s in 1..=3 {
        let p = dp_sequence(s, 4096)?;
        for (i, v) in l2_prefix_profile(&p).into_iter().enumerate() {
            checked += 1;
            if !roth_holds(i + 1, s, v) {
                failed.push(format!("dp-sequence s={s} N={}", i + 1));
            }
        }
    }
    let detail = if failed.is_empty() { format!("{checked} sets") } else { failed.join("; ") };
    Ok((failed.is_empty(), detail))
}

fn character_property() -> Result<(bool, String)> {
    let nets = [
        ("cs b=5", cs_matrices(&CsParams::new(5, 2, 2, 2, None)?)),
        ("dp-net a=2 m=4 s=2", dp_net_matrices(2, 4, 2)?),
    ];
    let mut worst = 0.0f64;
    let mut dual_checked = 0u64;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (_, c) in &nets {
        let points = generate_net_points(c)?;
        let dual = DualSpace::new(c, DUAL_CAP)?;
        let mut err = None;
        dual.for_each(|k| {
            match char_property_sum(&points, k) {
                Ok(v) => worst = worst.max((v - 1.0).norm()),
                Err(e) => err = Some(e),
            }
            dual_checked += 1;
        });
        if let Some(e) = err {
            return Err(e);
        }
        let limit = u64::from(c.base()).pow(c.precision() as u32);
        let mut drawn = 0;
        while drawn < 100 {
            let k: Vec<u64> = (0..c.dim()).map(|_| rng.gen_range(0..limit)).collect();
            if dual.contains(&k) {
                continue;
            }
            drawn += 1;
            worst = worst.max(char_property_sum(&points, &k)?.norm());
        }
    }
    Ok((worst <= 1e-9, format!("{dual_checked} dual + 200 non-dual, max deviation {worst:.2e}")))
}

fn spread(values: &[f64]) -> f64 {
    let hi = values.iter().cloned().fold(0.0f64, f64::max);
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    hi / lo
}

fn interlaced_net_shape() -> Result<(bool, String)> {
    let mut ratios = Vec::new();
    for m in 6..=13usize {
        let p = dp_net(3, m, 2)?;
        ratios.push(p.len() as f64 * l2_squared(&p).sqrt() / (m as f64).sqrt());
    }
    let r = spread(&ratios);
    let list: Vec<String> = ratios.iter().map(|v| format!("{v:.4}")).collect();
    Ok((r <= 4.0, format!("max/min {r:.3} over [{}]", list.join(" "))))
}

fn trim_inequality() -> Result<(bool, String)> {
    let mut checked = 0;
    let mut failed = Vec::new();
    for m in 1..=5usize {
        let full = van_der_corput(2, m)?;
        for n in (1usize << (m - 1)) + 1..=1 << m {
            checked += 1;
            if !lemma6_inequality_check(&full, n)? {
                failed.push(format!("vdc m={m} N={n}"));
            }
        }
    }
    for m in 1..=6usize {
        let full = dp_untrimmed_pointset(m, 2)?;
        for n in (1usize << (m - 1)) + 1..=1 << m {
            checked += 1;
            if !lemma6_inequality_check(&full, n)? {
                failed.push(format!("dp s=2 m={m} N={n}"));
            }
        }
    }
    let detail = if failed.is_empty() { format!("{checked} cases") } else { failed.join("; ") };
    Ok((failed.is_empty(), detail))
}

fn sequence_shape() -> Result<(bool, String)> {
    let prof = sequence_profile(SequenceFamily::DpSequence, 1, 4096, 2.0, LqOptions::default())?;
    let r = prof.ratio_spread();
    let has_worst_case = (1..12).all(|m| prof.rows.iter().any(|row| row.n == (2usize << m) - 1));
    Ok((r <= 8.0 && has_worst_case, format!("max/min {r:.3} over {} grid points", prof.rows.len())))
}

fn davenport_shape() -> Result<(bool, String)> {
    let mut ratios = Vec::new();
    for k in 2..=10 {
        let p = davenport_symmetrized(&ContinuedFraction::golden_ratio(), 1 << k)?;
        let n = p.len() as f64;
        ratios.push(n * l2_squared(&p).sqrt() / n.ln().sqrt());
    }
    let r = spread(&ratios);
    let list: Vec<String> = ratios.iter().map(|v| format!("{v:.4}")).collect();
    Ok((r <= 4.0, format!("max/min {r:.3} over [{}]", list.join(" "))))
}

fn interlacing_paths() -> Result<(bool, String)> {
    let mut failed = Vec::new();
    let mut count = 0;
    for alpha in 1..=3usize {
        for s in 1..=2usize {
            for m in 1..=6usize {
                let base = niederreiter_net_matrices(&NiedParams::new(alpha * s)?, m);
                let by_points = interlace_points(&generate_net_points(&base)?, alpha)?;
                let by_matrices = generate_net_points(&interlace_matrices(&base, alpha)?)?;
                count += 1;
                if by_points.points() != by_matrices.points() {
                    failed.push(format!("alpha={alpha} s={s} m={m}"));
                }
            }
        }
    }
    let detail = if failed.is_empty() { format!("{count} cases identical") } else { failed.join("; ") };
    Ok((failed.is_empty(), detail))
}

fn lq_calibration() -> Result<(bool, String)> {
    let p = dp_net(2, 5, 2)?;
    let exact = l2_squared(&p).sqrt();
    let mut hits = 0;
    for seed in 0..100u64 {
        let r = lq_estimate(&p, 2.0, 4096, seed)?;
        let se = r.stderr.unwrap_or(0.0);
        if (r.value - exact).abs() <= 3.0 * se {
            hits += 1;
        }
    }
    Ok((hits >= 95, format!("{hits}/100 within 3 standard errors")))
}
