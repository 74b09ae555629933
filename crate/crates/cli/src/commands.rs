//! One function per command, each returning a [`Table`].

use crate::config::{Command, Output, Quantity, RunConfig};
use crate::output::{num, Table};
use crate::Failure;
use fracstable::sampling::{sample_isotropic_stable_vector, RngStream};
use fracstable::spectral::*;
use fracstable::subordinator::*;
use fracstable::verify::{check_normalization, sample_mean};
use rand::RngCore;
use rayon::prelude::*;
use serde_json::{json, Value};

pub fn run(config: &RunConfig) -> Result<Table, Failure> {
    config.validate()?;
    match config.command {
        Some(Command::Sample) => sample(config),
        Some(Command::Solve) => solve(config),
        Some(Command::Telegraph) => telegraph(config),
        Some(Command::Limit) => limit(config),
        Some(Command::Verify) => verify(config),
        None => Err(Failure::Validation("no command given".into())),
    }
}

fn depth(config: &RunConfig) -> Result<Option<IterationDepth>, Failure> {
    Ok(config.depth.map(IterationDepth::new).transpose()?)
}

/// The subordinator that drives the solution: the spec itself, or its
/// iterated version (equal in law to the spec with exponents `nu^r`).
fn driving_spec(config: &RunConfig) -> Result<SubordinatorSpec, Failure> {
    let spec = SubordinatorSpec::new(&config.spec)?;
    Ok(match depth(config)? {
        Some(d) => spec.iterated(d),
        None => spec,
    })
}

fn params(config: &RunConfig) -> Result<ModelParams, Failure> {
    Ok(ModelParams::new(driving_spec(config)?, config.beta, config.c, config.n)?)
}

/// Draw `i` uses substream `i` of the seed, so results do not depend on the
/// worker count.
fn per_sample<T, F>(config: &RunConfig, stream: u64, f: F) -> Result<Vec<T>, Failure>
where
    T: Send,
    F: Fn(&mut dyn RngCore) -> Result<T, Failure> + Sync,
{
    let base = RngStream::new(config.seed, stream);
    (0..config.n_samples as u64).into_par_iter().map(|i| f(&mut base.substream(&[i]).generator())).collect()
}

fn min_time(config: &RunConfig) -> f64 {
    config.times.iter().copied().fold(f64::INFINITY, f64::min)
}

/// `H` at every entry of `times` (any order), read off one path.
fn h_at_times(spec: &SubordinatorSpec, times: &[f64], rng: &mut dyn RngCore) -> Result<Vec<f64>, Failure> {
    let mut sorted = times.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    let mut grid = vec![0.0];
    grid.extend(&sorted);
    let path = simulate_h_path(spec, &grid, rng)?;
    Ok(times.iter().map(|t| path.values[1 + sorted.partition_point(|s| s < t)]).collect())
}

fn sample(config: &RunConfig) -> Result<Table, Failure> {
    let spec = SubordinatorSpec::new(&config.spec)?;
    let depth = depth(config)?;
    let driving = driving_spec(config)?;
    let times = &config.times;
    let tol = config.refine_tol * min_time(config);
    let (n, beta, c) = (config.n, config.beta, config.c);
    if config.quantity == Quantity::X {
        // fail before the workers start
        ModelParams::new(driving.clone(), beta, c, n)?;
    }
    let draws = per_sample(config, 0, |g| -> Result<Vec<Vec<f64>>, Failure> {
        Ok(match config.quantity {
            Quantity::H => match depth {
                Some(d) => times.iter().map(|&t| sample_iterated_h(&spec, d, t, g).map(|v| vec![v])).collect::<Result<_, _>>()?,
                None => h_at_times(&spec, times, g)?.into_iter().map(|v| vec![v]).collect(),
            },
            Quantity::L => sample_l_levels(&driving, times, tol, g)?.into_iter().map(|v| vec![v]).collect(),
            Quantity::X => {
                let ls = sample_l_levels(&driving, times, tol, g)?;
                let mut out = Vec::with_capacity(ls.len());
                for l in ls {
                    out.push(if l > 0.0 { sample_isotropic_stable_vector(n, beta, c * c * l, g)? } else { vec![0.0; n] });
                }
                out
            }
        })
    })?;
    let mut header = vec!["sample".to_string(), "t".to_string()];
    if config.quantity == Quantity::X {
        header.extend((1..=n).map(|k| format!("x{k}")));
    } else {
        header.push("value".into());
    }
    let mut table = Table { header, ..Default::default() };
    for (i, per_t) in draws.iter().enumerate() {
        for (t, v) in times.iter().zip(per_t) {
            let mut row = vec![i.to_string(), num(*t)];
            row.extend(v.iter().map(|x| num(*x)));
            table.rows.push(row);
        }
    }
    let quantity = match config.quantity {
        Quantity::H => "H",
        Quantity::L => "L",
        Quantity::X => "X",
    };
    table.details.insert("quantity".into(), json!(quantity));
    if config.quantity != Quantity::X && draws.len() >= 2 {
        let means: Vec<Value> = (0..times.len())
            .map(|k| {
                let v: Vec<f64> = draws.iter().map(|d| d[k][0]).collect();
                let m = sample_mean(&v).expect("at least two draws");
                json!({ "t": times[k], "mean": m.mean, "std_error": m.std_error })
            })
            .collect();
        table.details.insert("means".into(), Value::Array(means));
    }
    table.summary = format!("{} draws of {quantity} at {} time(s)\n", config.n_samples, times.len());
    Ok(table)
}

fn solve(config: &RunConfig) -> Result<Table, Failure> {
    let p = params(config)?;
    let mut per_time = Vec::new();
    let mut table;
    match config.output {
        Output::Cf => {
            table = Table::new(&["t", "xi", "cf", "err_est"]);
            for &t in &config.times {
                let cf = CfTimeTable::new(&p, t)?;
                for &xi in &config.xi {
                    let (v, e) = cf.eval(xi);
                    if !(e <= config.tol) {
                        return Err(fracstable::Error::AccuracyFailure { context: format!("cf at xi={xi}, t={t}"), estimate: v.into(), error_bound: e }.into());
                    }
                    table.rows.push(vec![num(t), num(xi), num(v), num(e)]);
                }
            }
        }
        Output::Density if p.n == 1 => {
            table = Table::new(&["t", "x", "density"]);
            let opts = FftOptions { points: config.fft_points, ..FftOptions::default() };
            for &t in &config.times {
                let g = density_1d(&p, t, opts)?;
                for (x, v) in g.abscissae.iter().zip(&g.values) {
                    if x.abs() <= config.x_max {
                        table.rows.push(vec![num(t), num(*x), num(*v)]);
                    }
                }
                per_time.push(json!({ "t": t, "mass": g.mass, "err_est": g.err_est, "method": g.method.tag() }));
            }
        }
        Output::Density => {
            table = Table::new(&["t", "r", "density"]);
            for &t in &config.times {
                let g = density_radial(&p, RadialMode::Time(t), &config.radii)?;
                for (r, v) in g.abscissae.iter().zip(&g.values) {
                    table.rows.push(vec![num(t), num(*r), num(*v)]);
                }
                per_time.push(json!({ "t": t, "shell_mass": g.mass, "err_est": g.err_est, "method": g.method.tag() }));
            }
        }
    }
    table.summary = format!("{} rows\n", table.rows.len());
    table.details.insert("per_time".into(), Value::Array(per_time));
    Ok(table)
}

/// Closed form and inversion reference for the two-term equation.
struct Telegraph {
    k: u32,
    lambda: f64,
    nu: f64,
    c: f64,
    beta: f64,
    /// Parameters of the equivalent multi-term problem, when its orders fit
    /// in `(0, 1]`.
    reference: Option<ModelParams>,
}

impl Telegraph {
    fn new(config: &RunConfig) -> Result<Self, Failure> {
        let tc = &config.telegraph;
        let (k, lambda, nu) = (tc.k, tc.lambda, tc.nu);
        match k {
            2 if config.beta != 1.0 => return Err(Failure::Validation("the k = 2 closed form needs beta = 1".into())),
            2 | 3 => {}
            _ => return Err(Failure::Validation(format!("telegraph.k must be 2 or 3, got {k}"))),
        }
        if !(lambda > 0.0) {
            return Err(Failure::Validation("lambda must be positive".into()));
        }
        let reference = if nu > 0.0 && k as f64 * nu <= 1.0 {
            let spec = SubordinatorSpec::new(&[(1.0, k as f64 * nu), (2.0 * lambda, nu)])?;
            Some(ModelParams::new(spec, config.beta, config.c, 1)?)
        } else {
            None
        };
        Ok(Telegraph { k, lambda, nu, c: config.c, beta: config.beta, reference })
    }

    fn closed_form(&self, xi: f64, t: f64) -> Result<f64, Failure> {
        Ok(match self.k {
            2 => cf_telegraph_k2(self.lambda, self.c, self.nu, xi, t)?,
            _ => cf_telegraph_k3(self.lambda, self.c, self.beta, self.nu, xi, t)?,
        })
    }

    fn inversion(&self, xi: f64, t: f64, tol: f64) -> Result<Option<f64>, Failure> {
        self.reference.as_ref().map(|p| cf_time(p, &SpectralQuery::time(xi, t), tol)).transpose().map_err(Into::into)
    }
}

fn telegraph(config: &RunConfig) -> Result<Table, Failure> {
    let tg = Telegraph::new(config)?;
    let mut table = Table::new(&["xi", "t", "closed_form", "inversion", "abs_diff"]);
    let mut worst: f64 = 0.0;
    for &xi in &config.xi {
        for &t in &config.times {
            let a = tg.closed_form(xi, t)?;
            let row = match tg.inversion(xi, t, config.tol)? {
                Some(b) => {
                    worst = worst.max((a - b).abs());
                    vec![num(xi), num(t), num(a), num(b), num((a - b).abs())]
                }
                None => vec![num(xi), num(t), num(a), String::new(), String::new()],
            };
            table.rows.push(row);
        }
    }
    table.details.insert("k".into(), json!(tg.k));
    if tg.reference.is_some() {
        table.details.insert("max_abs_diff".into(), json!(worst));
        table.summary = format!("k = {}: largest closed-form/inversion gap {worst:e}\n", tg.k);
    } else {
        table.summary = format!("k = {}: no inversion reference for nu = {}\n", tg.k, tg.nu);
    }
    Ok(table)
}

fn limit(config: &RunConfig) -> Result<Table, Failure> {
    let spec = SubordinatorSpec::new(&config.spec)?;
    let lsum = spec.lambda_sum();
    let p = ModelParams::new(spec, config.beta, config.c, config.n)?;
    let hankel = density_radial(&p, RadialMode::Limit, &config.radii)?;
    let mut table = Table::new(&["r", "closed_form", "hankel", "rel_diff"]);
    for (r, h) in config.radii.iter().zip(&hankel.values) {
        // the Bessel-K closed form is the beta = 1 law
        let row = if config.beta == 1.0 {
            let w = limit_density_radial(lsum, config.c, config.n, *r)?;
            vec![num(*r), num(w), num(*h), num(((h - w) / w).abs())]
        } else {
            vec![num(*r), String::new(), num(*h), String::new()]
        };
        table.rows.push(row);
    }
    table.details.insert("lambda_sum".into(), json!(lsum));
    table.details.insert("hankel_err_est".into(), json!(hankel.err_est));
    table.summary = format!("limit law in {} dimension(s) at {} radii\n", config.n, config.radii.len());
    Ok(table)
}

/// Pass counts per check, printed as an aligned table.
#[derive(Default)]
struct Tally(Vec<(String, usize, usize)>);

impl Tally {
    fn add(&mut self, check: &str, pass: bool) {
        match self.0.iter_mut().find(|e| e.0 == check) {
            Some(e) => {
                e.1 += pass as usize;
                e.2 += 1;
            }
            None => self.0.push((check.to_string(), pass as usize, 1)),
        }
    }

    fn finish(self, suite: &str, mut table: Table) -> Table {
        let passed: usize = self.0.iter().map(|e| e.1).sum();
        let total: usize = self.0.iter().map(|e| e.2).sum();
        let width = self.0.iter().map(|e| e.0.len()).max().unwrap_or(0).max(5);
        let mut s = format!("suite {suite}\n{:<width$}  {:>6}  {:>5}\n", "check", "passed", "total");
        for (name, p, t) in &self.0 {
            s.push_str(&format!("{name:<width$}  {p:>6}  {t:>5}\n"));
        }
        s.push_str(&format!("{:<width$}  {passed:>6}  {total:>5}\n", "all"));
        table.summary = s;
        table.verdict = Some(passed == total);
        table.details.insert("suite".into(), json!(suite));
        table.details.insert("passed".into(), json!(passed));
        table.details.insert("total".into(), json!(total));
        table
    }
}

fn verify(config: &RunConfig) -> Result<Table, Failure> {
    match config.suite.as_str() {
        "telegraph" => verify_telegraph(config),
        "laplace" => verify_laplace(config),
        "inverse" => verify_inverse(config),
        "limit" => verify_limit(config),
        other => Err(Failure::Validation(format!("unknown suite '{other}' (telegraph, laplace, inverse, limit)"))),
    }
}

fn verdict(pass: bool) -> String {
    if pass { "true" } else { "false" }.into()
}

/// k = 2 closed form against inversion on a 5 x 5 grid straddling
/// `c xi = lambda`, and its `nu = 1` case against the telegraph process.
fn verify_telegraph(config: &RunConfig) -> Result<Table, Failure> {
    let mut cfg = config.clone();
    cfg.telegraph.k = 2;
    let tg = Telegraph::new(&cfg)?;
    if tg.reference.is_none() {
        return Err(Failure::Validation("the telegraph suite needs 0 < nu <= 1/2".into()));
    }
    let (lambda, c) = (tg.lambda, tg.c);
    let edge = lambda / c;
    let xis = [0.2, 0.6, 0.99, 1.5, 3.0].map(|f| f * edge);
    let ts = [0.2, 0.5, 1.0, 2.0, 5.0];
    let mut table = Table::new(&["check", "xi", "t", "closed_form", "reference", "abs_diff", "pass"]);
    let mut tally = Tally::default();
    for &xi in &xis {
        for &t in &ts {
            let a = tg.closed_form(xi, t)?;
            let b = tg.inversion(xi, t, config.tol)?.expect("reference exists");
            let pass = (a - b).abs() <= config.check_tol;
            let check = if lambda > c * xi { "lambda > c xi" } else { "lambda < c xi" };
            tally.add(check, pass);
            table.rows.push(vec![check.into(), num(xi), num(t), num(a), num(b), num((a - b).abs()), verdict(pass)]);
        }
    }
    for &xi in &xis {
        for &t in &ts {
            let a = cf_telegraph_k2(lambda, c, 1.0, xi, t)?;
            let b = telegraph_process_cf(lambda, c, xi, t);
            let pass = (a - b).abs() <= 1e-10;
            tally.add("nu = 1 vs telegraph process", pass);
            table.rows.push(vec!["nu = 1".into(), num(xi), num(t), num(a), num(b), num((a - b).abs()), verdict(pass)]);
        }
    }
    Ok(tally.finish("telegraph", table))
}

/// `E exp(-mu H(t))` by Monte Carlo against `exp(-t sum lambda mu^nu)`.
fn verify_laplace(config: &RunConfig) -> Result<Table, Failure> {
    let spec = SubordinatorSpec::new(&config.spec)?;
    let depth = depth(config)?;
    let exponent_spec = driving_spec(config)?;
    let t = config.times[0];
    let h = per_sample(config, 1, |g| {
        Ok(match depth {
            Some(d) => sample_iterated_h(&spec, d, t, g)?,
            None => sample_h(&spec, t, g)?,
        })
    })?;
    let mut table = Table::new(&["mu", "estimate", "std_error", "exact", "z", "pass"]);
    let mut tally = Tally::default();
    for mu in [0.5, 1.0, 2.0, 4.0, 8.0] {
        let v: Vec<f64> = h.iter().map(|x| (-mu * x).exp()).collect();
        let est = sample_mean(&v)?;
        let exact = (-t * exponent_spec.laplace_exponent_real(mu)).exp();
        let pass = est.within(exact, config.se_band);
        tally.add("Laplace transform of H", pass);
        table.rows.push(vec![num(mu), num(est.mean), num(est.std_error), num(exact), num(est.z_score(exact)), verdict(pass)]);
    }
    Ok(tally.finish("laplace", table))
}

/// `P(L(t) < x)` against `P(H(x) > t)` with `x` and `t` from `times`.
fn verify_inverse(config: &RunConfig) -> Result<Table, Failure> {
    let spec = driving_spec(config)?;
    let grid = &config.times;
    let tol = config.refine_tol * min_time(config);
    let l = per_sample(config, 2, |g| Ok(sample_l_levels(&spec, grid, tol, g)?))?;
    let h = per_sample(config, 3, |g| h_at_times(&spec, grid, g))?;
    let n = config.n_samples as f64;
    let mut table = Table::new(&["t", "x", "p_l_below_x", "p_h_above_t", "z", "pass"]);
    let mut tally = Tally::default();
    for (ti, &t) in grid.iter().enumerate() {
        for (xi, &x) in grid.iter().enumerate() {
            let p1 = l.iter().filter(|v| v[ti] < x).count() as f64 / n;
            let p2 = h.iter().filter(|v| v[xi] > t).count() as f64 / n;
            let se = ((p1 * (1.0 - p1) + p2 * (1.0 - p2)) / n).sqrt();
            let z = if se > 0.0 { (p1 - p2) / se } else if p1 == p2 { 0.0 } else { f64::INFINITY };
            let pass = z.abs() <= config.se_band;
            tally.add("P(L(t) < x) = P(H(x) > t)", pass);
            table.rows.push(vec![num(t), num(x), num(p1), num(p2), num(z), verdict(pass)]);
        }
    }
    Ok(tally.finish("inverse", table))
}

/// Normalisation of the limit law for `n = 1..4` and the equation it solves.
fn verify_limit(config: &RunConfig) -> Result<Table, Failure> {
    let spec = SubordinatorSpec::new(&config.spec)?;
    let (lsum, c) = (spec.lambda_sum(), config.c);
    let mut table = Table::new(&["check", "n", "r", "value", "pass"]);
    let mut tally = Tally::default();
    for n in 1..=4usize {
        let area = sphere_area(n);
        let shell = |r: f64| if r > 0.0 { area * r.powi(n as i32 - 1) * limit_density_radial(lsum, c, n, r).unwrap_or(f64::NAN) } else { 0.0 };
        let (mass, pass) = check_normalization(shell, &[0.0, 1.0, f64::INFINITY], 1e-8)?;
        tally.add("unit mass", pass);
        table.rows.push(vec!["mass".into(), n.to_string(), String::new(), num(mass), verdict(pass)]);
        for &r in &config.radii {
            if !(r > 0.0) {
                return Err(Failure::Validation("radii must be positive".into()));
            }
            let w = |r: f64| limit_density_radial(lsum, c, n, r);
            let h = 2e-4 * r;
            let (wm, w0, wp) = (w(r - h)?, w(r)?, w(r + h)?);
            let lap = (wp - 2.0 * w0 + wm) / (h * h) + (n as f64 - 1.0) / r * (wp - wm) / (2.0 * h);
            let rel = (lsum * w0 - c * c * lap).abs() / (lsum * w0);
            let pass = rel <= config.check_tol;
            tally.add("sum(lambda) w = c^2 Laplacian w", pass);
            table.rows.push(vec!["pde".into(), n.to_string(), num(r), num(rel), verdict(pass)]);
        }
    }
    Ok(tally.finish("limit", table))
}
