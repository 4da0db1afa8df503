use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::factor::{factor_demo, MIN_FACTOR_SAMPLES};
use super::report::{digest, Check, Report};
use crate::coinduction::{Coinduction, CoinductionConfig, ZPoint};
use crate::doubling::{self, DoublingConfig, Which};
use crate::error::{Error, Result};
use crate::free_group::{ball, GroupOracle, Word};
use crate::ow_tower::{check_radius, kernel_basis, level_dependence, ow_map, p_support, q_support, tower_map};
use crate::pattern::{Alphabet, Pattern};
use crate::skew::{all_triples, cocycle_check, Beta0Cocycle, CocycleReport, DeltaCocycle, GammaCocycle, KeyBetaCocycle};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    OwFibers,
    OwEquivariance,
    Cocycles,
    Transversal,
    Pipeline,
    Doubling,
    KernelGroup,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::OwFibers,
        Suite::OwEquivariance,
        Suite::Cocycles,
        Suite::Transversal,
        Suite::Pipeline,
        Suite::Doubling,
        Suite::KernelGroup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OwFibers => "ow-fibers",
            Suite::OwEquivariance => "ow-equivariance",
            Suite::Cocycles => "cocycles",
            Suite::Transversal => "transversal",
            Suite::Pipeline => "pipeline",
            Suite::Doubling => "doubling",
            Suite::KernelGroup => "kernel-group",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dump {
    Delta,
    Gamma,
    Transversal,
}

/// Command-line knobs; each suite picks its own defaults for unset values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub radius: Option<usize>,
    pub levels: Option<usize>,
    pub depth: Option<usize>,
}

impl Params {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(e, Error::Config(_) | Error::ResourceGuard { .. } | Error::KernelTooLarge { .. } | Error::ParseWord(_))
}

struct Runner {
    checks: Vec<Check>,
    timings: BTreeMap<String, f64>,
}

impl Runner {
    fn new() -> Runner {
        Runner { checks: Vec::new(), timings: BTreeMap::new() }
    }

    /// Runs one check; errors other than usage errors become a failed check.
    fn check(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, Value)>) -> Result<()> {
        let start = Instant::now();
        let check = match f() {
            Ok((pass, details)) => Check::new(name, pass, details),
            Err(e) if is_usage_error(&e) => return Err(e),
            Err(e) => Check::new(name, false, json!({ "error": e.to_string() })),
        };
        self.timings.insert(name.into(), start.elapsed().as_secs_f64() * 1e3);
        self.checks.push(check);
        Ok(())
    }

    fn skip(&mut self, name: &str, reason: &str) {
        self.checks.push(Check::skipped(name, reason));
    }

    fn finish(mut self, command: String, config_digest: String, seed: u64, start: Instant) -> Report {
        self.timings.insert("total".into(), start.elapsed().as_secs_f64() * 1e3);
        Report { command, config_digest, checks: self.checks, timings: self.timings, seed }
    }
}

fn random_bits<'a>(cells: impl IntoIterator<Item = &'a Word>, rng: &mut impl Rng) -> Pattern {
    Pattern::from_cells(Alphabet::Bits, cells.into_iter().map(|w| (w.clone(), rng.gen_range(0..2)))).expect("bits")
}

fn coinduction_config(config: Option<&str>) -> Result<(CoinductionConfig, String)> {
    match config {
        Some(text) => Ok((CoinductionConfig::from_json(text)?, digest(text.as_bytes()))),
        None => {
            let c = CoinductionConfig::singleton();
            let d = digest(c.to_json().as_bytes());
            Ok((c, d))
        }
    }
}

fn doubling_config(config: Option<&str>) -> Result<(DoublingConfig, String)> {
    match config {
        Some(text) => Ok((DoublingConfig::from_json(text)?, digest(text.as_bytes()))),
        None => {
            let c = DoublingConfig::left_translation();
            let d = digest(c.to_json().as_bytes());
            Ok((c, d))
        }
    }
}

fn report_details(r: &CocycleReport) -> Value {
    json!({ "checked": r.checked, "failures": r.failures.len(), "first_failures": &r.failures[..r.failures.len().min(5)] })
}

/// Runs a verification suite. `Err` signals a usage or configuration error.
pub fn run_verify(suite: Suite, config: Option<&str>, params: &Params) -> Result<Report> {
    let start = Instant::now();
    let mut runner = Runner::new();
    let seed = params.seed();
    let digest = match suite {
        Suite::Doubling => {
            let (c, d) = doubling_config(config)?;
            verify_doubling(&mut runner, &c, params)?;
            d
        }
        Suite::OwFibers | Suite::OwEquivariance | Suite::KernelGroup => {
            let d = coinduction_config(config)?.1;
            match suite {
                Suite::OwFibers => verify_fibers(&mut runner)?,
                Suite::OwEquivariance => verify_equivariance(&mut runner, params)?,
                _ => verify_kernel(&mut runner, params.radius.unwrap_or(1), params.levels, params)?,
            }
            d
        }
        _ => {
            let (cfg, d) = coinduction_config(config)?;
            let c = Coinduction::new(&cfg)?;
            match suite {
                Suite::Cocycles => verify_cocycles(&mut runner, &c, params)?,
                Suite::Transversal => verify_transversal(&mut runner, &cfg, &c, params)?,
                _ => verify_pipeline(&mut runner, &c, params)?,
            }
            d
        }
    };
    Ok(runner.finish(format!("verify {}", suite.name()), digest, seed, start))
}

/// `kernel --radius r --levels L`.
pub fn run_kernel(params: &Params) -> Result<Report> {
    let start = Instant::now();
    let mut runner = Runner::new();
    let r = params.radius.unwrap_or(1);
    verify_kernel(&mut runner, r, params.levels, params)?;
    let d = digest(format!("kernel r={r} L={:?}", params.levels).as_bytes());
    Ok(runner.finish("kernel".into(), d, params.seed(), start))
}

/// `factor-demo --samples N --seed S`, with the biased negative control.
pub fn run_factor_demo(params: &Params) -> Result<Report> {
    let start = Instant::now();
    let mut runner = Runner::new();
    let samples = params.samples.unwrap_or(100_000);
    if samples < MIN_FACTOR_SAMPLES {
        return Err(Error::Config(format!("factor-demo needs --samples >= {MIN_FACTOR_SAMPLES}")));
    }
    let seed = params.seed();
    let fair = factor_demo(samples, seed, 0.5)?;
    let fair_details = serde_json::to_value(&fair).expect("stats serialize");
    runner.check("marginal-uniform", || Ok((fair.marginal_test.p_value > 0.001, json!(fair.marginal_test))))?;
    runner.check("independence-1-a", || Ok((fair.independence_test.p_value > 0.001, json!(fair.independence_test))))?;
    runner.check("entropy-log4", || {
        let gap = (fair.entropy - 4f64.ln()).abs();
        Ok((gap < 0.01, json!({ "entropy": fair.entropy, "log4": 4f64.ln(), "gap": gap })))
    })?;
    runner.check("negative-control-p0.9", || {
        let biased = factor_demo(samples, seed, 0.9)?;
        let rejected = biased.marginal_test.p_value <= 0.001;
        Ok((rejected, json!({ "marginal_test": biased.marginal_test, "marginal": biased.marginal })))
    })?;
    runner.check("counts", || Ok((true, fair_details)))?;
    let d = digest(format!("factor-demo samples={samples}").as_bytes());
    Ok(runner.finish("factor-demo".into(), d, seed, start))
}

/// `dump delta|gamma|transversal` as a JSON value.
pub fn run_dump(which: Dump, config: Option<&str>, params: &Params) -> Result<Value> {
    let (cfg, _) = coinduction_config(config)?;
    let c = Coinduction::new(&cfg)?;
    let z = c.base_point();
    Ok(match which {
        Dump::Transversal => json!(c.transversal_table(params.samples.unwrap_or(16), &z)?),
        Dump::Delta | Dump::Gamma => {
            let rows = c.cocycle_table(params.radius.unwrap_or(2), params.samples.unwrap_or(8), &z)?;
            let rows: Vec<Value> = rows
                .into_iter()
                .map(|r| match which {
                    Dump::Delta => json!([r.g, r.n, r.delta]),
                    _ => json!([r.g, r.n, r.gamma]),
                })
                .collect();
            json!(rows)
        }
    })
}

fn verify_fibers(runner: &mut Runner) -> Result<()> {
    let window: BTreeSet<Word> = ball(2).into_iter().collect();
    let (ps, qs) = (p_support(&window), q_support(&window));
    let inner = ball(1);
    let mut inner_counts = vec![0u32; 1 << (2 * inner.len())];
    let mut full_counts: BTreeMap<u32, u32> = BTreeMap::new();
    runner.check("ball1-pair-fibers", || {
        for mask in 0..1u128 << 17 {
            let y = ow_map(&Pattern::from_mask(2, mask))?;
            let mut key = 0usize;
            for (i, f) in inner.iter().enumerate() {
                key |= (y.p.value(f)? as usize) << (2 * i) | (y.q.value(f)? as usize) << (2 * i + 1);
            }
            inner_counts[key] += 1;
            let mut full = 0u32;
            for (i, f) in ps.iter().chain(qs.iter()).enumerate() {
                let bit = if i < ps.len() { y.p.value(f)? } else { y.q.value(f)? };
                full |= bit << i;
            }
            *full_counts.entry(full).or_default() += 1;
        }
        let hit = inner_counts.iter().filter(|&&c| c > 0).count();
        let sizes: BTreeSet<u32> = inner_counts.iter().copied().collect();
        Ok((hit == 1024 && sizes == BTreeSet::from([128]), json!({ "inputs": 1u32 << 17, "targets": hit, "fiber_sizes": sizes })))
    })?;
    runner.check("full-support-fibers", || {
        let sizes: BTreeSet<u32> = full_counts.values().copied().collect();
        let bits = ps.len() + qs.len();
        Ok((
            full_counts.len() == 1 << bits && sizes == BTreeSet::from([2]),
            json!({ "p_cells": ps.len(), "q_cells": qs.len(), "targets": full_counts.len(), "fiber_sizes": sizes }),
        ))
    })
}

/// `ow_map` and `tower_map` commute with every shift in `shifts` on `x`.
/// `moved` agrees with `f · orig` wherever both are defined.
fn agrees_shifted(moved: &Pattern, orig: &Pattern, f: &Word) -> bool {
    orig.cells().all(|(w, s)| moved.get(&f.mul(w)).is_none_or(|t| t == s))
}

fn equivariant_at(x: &Pattern, shifts: &[Word], levels: usize) -> Result<bool> {
    let y = ow_map(x)?;
    let t = tower_map(x, levels);
    for f in shifts {
        let moved = x.shift(f);
        let ys = ow_map(&moved)?;
        if !(agrees_shifted(&ys.p, &y.p, f) && agrees_shifted(&ys.q, &y.q, f)) {
            return Ok(false);
        }
        // Level 0 of the moved tower is `ys.p`; the rest is the tower of `ys.q`.
        let rest = tower_map(&ys.q, levels.saturating_sub(1));
        let moved_levels = std::iter::once(&ys.p).chain(rest.levels());
        if !t.levels().iter().zip(moved_levels).all(|(a, b)| agrees_shifted(b, a, f)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn verify_equivariance(runner: &mut Runner, params: &Params) -> Result<()> {
    let r = params.radius.unwrap_or(3);
    let levels = params.levels.unwrap_or(2);
    let shifts = ball(params.depth.unwrap_or(2));
    let samples = params.samples.unwrap_or(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed());
    let cells = ball(r);
    runner.check("random-windows", || {
        let mut bad = 0;
        for _ in 0..samples {
            bad += usize::from(!equivariant_at(&random_bits(&cells, &mut rng), &shifts, levels)?);
        }
        Ok((bad == 0, json!({ "radius": r, "patterns": samples, "shifts": shifts.len(), "levels": levels, "failures": bad })))
    })?;
    runner.check("exhaustive-ball2", || {
        let one = |mask: u128| equivariant_at(&Pattern::from_mask(2, mask), &shifts, levels).map(|ok| usize::from(!ok));
        #[cfg(feature = "parallel")]
        let bad: usize = {
            use rayon::prelude::*;
            (0..1u128 << 17).into_par_iter().map(one).sum::<Result<usize>>()?
        };
        #[cfg(not(feature = "parallel"))]
        let bad: usize = (0..1u128 << 17).map(one).sum::<Result<usize>>()?;
        Ok((bad == 0, json!({ "patterns": 1u32 << 17, "shifts": shifts.len(), "levels": levels, "failures": bad })))
    })
}

fn verify_cocycles<O: GroupOracle<Elem = Word>>(runner: &mut Runner, c: &Coinduction<O>, params: &Params) -> Result<()> {
    let depth = params.depth.unwrap_or(2);
    let levels = params.levels.unwrap_or(2);
    let components = params.samples.unwrap_or(8);
    let gs = ball(depth);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed());
    let z = c.base_point();
    let zs: Vec<ZPoint> = ball(1).iter().map(|g| c.act_z(g, &z)).collect::<BTreeSet<_>>().into_iter().collect();

    let y = tower_map(&random_bits(&ball(2 * depth + levels + 1), &mut rng), levels);
    runner.check("beta0", || {
        let r = cocycle_check(&Beta0Cocycle, all_triples(&gs, &[y]));
        Ok((r.passed() && r.checked == gs.len().pow(2), report_details(&r)))
    })?;
    runner.check("delta", || {
        let r = cocycle_check(&DeltaCocycle { system: c, components }, all_triples(&gs, &zs));
        Ok((r.passed() && r.checked == gs.len().pow(2) * zs.len(), report_details(&r)))
    })?;
    runner.check("gamma", || {
        let xs: Vec<(usize, ZPoint)> = zs.iter().flat_map(|z| (0..components).map(move |n| (n, z.clone()))).collect();
        let r = cocycle_check(&GammaCocycle { system: c }, all_triples(&gs, &xs));
        Ok((r.passed() && r.checked == gs.len().pow(2) * xs.len(), report_details(&r)))
    })?;
    runner.check("key-beta", || {
        let g1 = ball(1);
        let window = c.image_window(&z, 4, params.radius.unwrap_or(5))?;
        let out = c.key_pipeline(&random_bits(&window, &mut rng), &z, levels)?;
        let r = cocycle_check(&KeyBetaCocycle { system: c }, all_triples(&g1, &[(out.levels, z.clone())]));
        Ok((r.passed() && r.checked == g1.len().pow(2), report_details(&r)))
    })
}

fn verify_transversal<O: GroupOracle<Elem = Word>>(
    runner: &mut Runner,
    cfg: &CoinductionConfig,
    c: &Coinduction<O>,
    params: &Params,
) -> Result<()> {
    let depth = params.depth.unwrap_or(3);
    let components = params.samples.unwrap_or(8);
    let z = c.base_point();
    let fs = ball(depth);
    let prefix = c.transversal(3, &z)?;
    if *cfg == CoinductionConfig::singleton() {
        runner.check("c(0..2)", || {
            let expected = vec![Word::identity(), Word::a(), Word::b()];
            Ok((prefix == expected, json!(prefix)))
        })?;
    } else {
        runner.check("c(0)", || Ok((prefix[0].is_identity(), json!(prefix))))?;
    }
    runner.check("psi-distinct", || {
        let mut seen = BTreeSet::new();
        for n in 0..components {
            for f in &fs {
                seen.insert(c.psi(f, n, &z)?);
            }
        }
        Ok((seen.len() == fs.len() * components, json!({ "values": fs.len() * components, "distinct": seen.len() })))
    })?;
    runner.check("psi-round-trip", || {
        let mut bad = 0;
        for n in 0..components {
            for f in &fs {
                bad += usize::from(c.psi_inverse(&c.psi(f, n, &z)?, &z)? != (f.clone(), n));
            }
        }
        Ok((bad == 0, json!({ "checked": fs.len() * components, "failures": bad })))
    })?;
    runner.check("psi-at-zero", || {
        let mut bad = 0;
        for f in &fs {
            let expected = c.group().inv(&c.alpha(&c.iota().image(f).inv(), &z));
            bad += usize::from(c.psi(f, 0, &z)? != expected);
        }
        Ok((bad == 0, json!({ "checked": fs.len(), "failures": bad })))
    })?;
    runner.check("psi-equivariance", || {
        let mut checked = 0;
        let mut bad = 0;
        for g in ball(1) {
            let g_inv = c.group().inv(&g);
            let gz = c.act_z(&g, &z);
            for n in 0..components {
                let (k, u) = c.delta_gamma(&g_inv, n, &gz)?;
                for f in &fs {
                    let lhs = c.group().mul(&g_inv, &c.psi(f, n, &gz)?);
                    checked += 1;
                    bad += usize::from(lhs != c.psi(&u.mul(f), k, &z)?);
                }
            }
        }
        Ok((bad == 0, json!({ "checked": checked, "failures": bad })))
    })
}

fn family_overlap(a: &Pattern, b: &Pattern) -> Option<usize> {
    a.agrees_with(b).then(|| a.support().filter(|w| b.contains(w)).count())
}

fn verify_pipeline<O: GroupOracle<Elem = Word>>(runner: &mut Runner, c: &Coinduction<O>, params: &Params) -> Result<()> {
    let r = params.radius.unwrap_or(5);
    let levels = params.levels.unwrap_or(2);
    let samples = params.samples.unwrap_or(1000);
    let z = c.base_point();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed());
    let cells = ball(r);
    runner.check("round-trip", || {
        let (mut bad, mut recovered) = (0, 0);
        for _ in 0..samples {
            let x = random_bits(&cells, &mut rng);
            let back = c.key_pipeline_inverse(&c.key_pipeline(&x, &z, levels)?)?;
            recovered += back.len();
            bad += usize::from(back.is_empty() || !back.support().all(|w| x.contains(w)) || !back.agrees_with(&x));
        }
        Ok((bad == 0, json!({ "radius": r, "levels": levels, "windows": samples, "failures": bad, "bits_recovered": recovered, "bits_in": samples * cells.len() })))
    })?;
    runner.check("equivariance", || {
        let window = c.image_window(&z, 4, r)?;
        let x = random_bits(&window, &mut rng);
        let out = c.key_pipeline(&x, &z, levels)?;
        let (mut bad, mut level_bits, mut kernel_bits) = (0, 0, 0);
        for g in ball(1) {
            let lhs = c.key_pipeline(&c.g_shift(&g, &x), &c.act_z(&g, &z), levels)?;
            let rhs = c.key_action(&g, &out)?;
            for (a, b) in lhs.levels.iter().zip(&rhs.levels) {
                match family_overlap(a, b) {
                    Some(n) => level_bits += n,
                    None => bad += 1,
                }
            }
            for (n, w) in &rhs.kernel {
                match lhs.kernel.get(n).map(|l| family_overlap(l, w)) {
                    Some(Some(k)) => kernel_bits += k,
                    Some(None) => bad += 1,
                    None => {}
                }
            }
        }
        Ok((bad == 0 && level_bits > 0 && kernel_bits > 0, json!({ "failures": bad, "level_bits": level_bits, "kernel_bits": kernel_bits })))
    })?;
    runner.check("pi-certificate", || {
        let window = c.image_window(&z, 2, r)?;
        let x = random_bits(&window, &mut rng);
        let one = Word::identity();
        let base = c.key_pi(&x, &z, levels)?;
        let mut certs = Vec::new();
        let mut ok = true;
        for m in 0..levels.min(2) {
            let cert = c.pi_certificate(&one, m, &z)?;
            let mut formula: Vec<Word> = level_dependence(m)
                .iter()
                .map(|d| c.group().inv(&c.alpha(&c.iota().image(d).inv(), &z)))
                .collect();
            formula.sort();
            ok &= cert.inputs == formula;
            let bit = |p: &Pattern| p.get(&one);
            for cell in window.iter().take(64) {
                let mut flipped = x.clone();
                flipped.insert(cell.clone(), 1 - x.get(cell).expect("in window"))?;
                let changed = bit(&c.key_pi(&flipped, &z, levels)?[m]) != bit(&base[m]);
                ok &= changed == cert.inputs.contains(cell);
            }
            certs.push(cert);
        }
        Ok((ok, json!(certs)))
    })
}

fn verify_doubling(runner: &mut Runner, config: &DoublingConfig, params: &Params) -> Result<()> {
    let depth = params.depth.unwrap_or(3);
    let radius = params.radius.unwrap_or(6);
    let samples = params.samples.unwrap_or(1000);
    let seed = params.seed();
    let window = ball(radius);
    let encoded = config.encode_action(&window)?;
    if config.s.iter().all(|s| encoded.contains(s)) {
        runner.check("encoding-z0", || {
            let checks = doubling::z_checks(config, &encoded, depth)?;
            Ok((checks.z0 && checks.z1.failures.is_empty(), json!(checks)))
        })?;
    } else {
        runner.skip("encoding-z0", "the action table must contain S⁻¹ to encode the cells S");
    }
    if *config == DoublingConfig::left_translation() {
        runner.check("decorated-z0-z2", || {
            let x = doubling::decorated_pattern(radius, seed);
            let checks = doubling::z_checks(config, &x, depth)?;
            Ok((checks.z0 && checks.z2, json!(checks)))
        })?;
    } else {
        runner.skip("decorated-z0-z2", "decorated pattern is built for S = {a, b}");
    }
    runner.check("z0-local-vs-preimages", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cells = ball(3);
        let symbols = config.alphabet().size();
        let mut bad = 0;
        for _ in 0..samples {
            let x = Pattern::from_cells(config.alphabet(), cells.iter().map(|w| (w.clone(), rng.gen_range(0..symbols))))?;
            let local = doubling::preimage_counts(config, &x)?;
            let brute = |which| -> Result<usize> {
                let mut n = 0;
                for s in &config.s {
                    let y = x.shift(&s.inv());
                    n += usize::from(doubling::t_map(config, which, &y)?.agrees_with(&x));
                }
                Ok(n)
            };
            bad += usize::from(local != (brute(Which::A)?, brute(Which::B)?));
        }
        Ok((bad == 0, json!({ "patterns": samples, "mismatches": bad })))
    })
}

fn verify_kernel(runner: &mut Runner, r: usize, levels: Option<usize>, params: &Params) -> Result<()> {
    check_radius(r)?;
    let levels = levels.unwrap_or(r + 1);
    let basis = kernel_basis(r, levels)?;
    let elements: Vec<Pattern> = basis.enumerate()?.into_iter().map(|k| k.into_pattern()).collect();
    let set: BTreeSet<&Pattern> = elements.iter().collect();
    runner.check("count", || {
        let expected = match r {
            0 => Some(2),
            1 => Some(8),
            _ => None,
        };
        let pass = expected.is_none_or(|e| e == elements.len()) && set.len() == elements.len();
        Ok((pass, json!({ "radius": r, "levels": levels, "dim": basis.dim(), "count": elements.len() })))
    })?;
    if r <= 2 {
        runner.check("brute-force-count", || {
            let n = ball(r).len();
            let count = (0..1u128 << n).filter(|&m| tower_map(&Pattern::from_mask(r, m), levels).is_zero()).count();
            Ok((count == elements.len(), json!({ "brute_force": count, "basis": elements.len() })))
        })?;
    } else {
        runner.skip("brute-force-count", "exhaustive oracle limited to r <= 2");
    }
    runner.check("closure", || {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed());
        let pairs = if elements.len() <= 256 { elements.len().pow(2) } else { 10_000 };
        let mut bad = 0;
        for i in 0..pairs {
            let (a, b) = if elements.len() <= 256 {
                (&elements[i / elements.len()], &elements[i % elements.len()])
            } else {
                (&elements[rng.gen_range(0..elements.len())], &elements[rng.gen_range(0..elements.len())])
            };
            bad += usize::from(!set.contains(&a.xor(b)?));
        }
        Ok((bad == 0, json!({ "pairs": pairs, "failures": bad })))
    })?;
    runner.check("all-ones", || {
        let ones = Pattern::constant(Alphabet::Bits, &ball(r), 1);
        Ok((set.contains(&ones), json!({ "contains_all_ones": set.contains(&ones) })))
    })
}
