//! The `oscint` command-line front end: phase analysis subcommands with
//! machine-readable JSON/CSV output.
//!
//! Every artifact records the seeds that produced it, and no timestamps are
//! embedded, so identical configurations give byte-identical outputs. Exit
//! codes: 0 ok, 1 validation failure, 2 soft-fail (an unresolved sweep under
//! `--strict`).

use crate::binres::BinaryForm;
use crate::corpus;
use crate::cubic22;
use crate::newton;
use crate::normest::{self, AmplitudeSpec, BumpKind, GridPolicy};
use crate::pencil;
use crate::poly::{parse_phase, phase_from_json, phase_to_json, rat_string, PhasePoly, Rat};
use crate::predict::{self, ConditionStatus, PredictOptions};
use crate::ratmat::RatMat;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "oscint",
    about = "Analyze oscillatory integral operators with homogeneous polynomial phases",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PhaseInput {
    /// Phase JSON file ({"nx":..,"nz":..,"m":..,"terms":[..]})
    #[arg(long, value_name = "FILE")]
    phase: Option<PathBuf>,
    /// Inline expression, e.g. "x1^2*z1 + 2*x1*z2^2" (needs --nx/--nz)
    #[arg(long, value_name = "EXPR", conflicts_with = "phase")]
    expr: Option<String>,
    /// Built-in phase name (see `oscint examples`)
    #[arg(long, value_name = "NAME", conflicts_with_all = ["phase", "expr"])]
    builtin: Option<String>,
    #[arg(long, requires = "expr")]
    nx: Option<usize>,
    #[arg(long, requires = "expr")]
    nz: Option<usize>,
}

impl PhaseInput {
    fn load(&self) -> Result<PhasePoly, String> {
        if let Some(path) = &self.phase {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            return phase_from_json(&text).map_err(|e| format!("{}: {e}", path.display()));
        }
        if let Some(expr) = &self.expr {
            let nx = self.nx.ok_or("--expr needs --nx")?;
            let nz = self.nz.ok_or("--expr needs --nz")?;
            return parse_phase(expr, nx, nz).map_err(|e| e.to_string());
        }
        if let Some(name) = &self.builtin {
            return corpus::by_name(name).ok_or_else(|| {
                format!(
                    "unknown builtin {name:?}; available: {}",
                    corpus::all()
                        .iter()
                        .map(|(n, _, _)| *n)
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            });
        }
        Err("one of --phase, --expr, --builtin is required".into())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the (2+2)-cubic decay-theorem hypotheses and classify the
    /// critical-variety geometry
    Check {
        #[command(flatten)]
        input: PhaseInput,
        /// Write the JSON report here instead of stdout
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Newton distance (exact LP), optionally the modified-distance search
    Newton {
        #[command(flatten)]
        input: PhaseInput,
        /// Also search over linear changes of x and z
        #[arg(long)]
        modified: bool,
        /// Random transform samples for the modified search
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Predict the decay rate of ‖T_λ‖ with the full hypothesis ledger
    Predict {
        #[command(flatten)]
        input: PhaseInput,
        /// Run interval certification in the standalone condition checks
        #[arg(long)]
        certify: bool,
        /// Sphere sample count for non-exact checks
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Analyze a pencil phase x1*phi1(z) + x2*phi2(z)
    Pencil {
        /// First form: expression in z1, z2 or coefficient list "1,0,-1"
        #[arg(long)]
        phi1: String,
        /// Second form
        #[arg(long)]
        phi2: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Sweep ‖T_λ‖ over a geometric λ grid and fit the log-log slope
    Sweep {
        #[command(flatten)]
        input: PhaseInput,
        #[arg(long, value_name = "F")]
        lambda_min: f64,
        #[arg(long, value_name = "F")]
        lambda_max: f64,
        #[arg(long, default_value_t = 8)]
        points: usize,
        /// Grid policy: "auto" (oscillation rule) or a fixed points-per-axis
        #[arg(long, default_value = "auto")]
        grid: String,
        /// Per-axis cap for the auto grid
        #[arg(long, default_value_t = 2048)]
        cap: usize,
        /// Power-iteration relative tolerance
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 500)]
        max_iter: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Amplitude kind: "smooth" or "constant"
        #[arg(long, default_value = "smooth")]
        amp: String,
        /// Fraction of the smallest λ values dropped from the fit
        #[arg(long, default_value_t = 0.25)]
        drop_frac: f64,
        /// Exclude under-resolved rows from the fit and soft-fail on them
        #[arg(long)]
        strict: bool,
        /// CSV output: lambda,norm,grid_n,iters,residual,resolved
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Optional two-column (log lambda, log norm) plot data
        #[arg(long, value_name = "FILE")]
        plot_out: Option<PathBuf>,
    },
    /// Fit a log-log slope to a sweep CSV
    Fit {
        /// CSV produced by `oscint sweep`
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, default_value_t = 0.25)]
        drop_frac: f64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Sample random phases and measure how often the genericity conditions hold
    Genericity {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        nz: usize,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// List the built-in phase corpus (optionally emit one as JSON)
    Examples {
        /// Write this builtin's phase JSON to --out
        #[arg(long, value_name = "NAME")]
        emit: Option<String>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn rat_json(r: &Rat) -> Value {
    Value::String(rat_string(r))
}

fn opt_rat_json(r: &Option<Rat>) -> Value {
    match r {
        Some(v) => rat_json(v),
        None => Value::Null,
    }
}

fn mat_json(m: &RatMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| rat_json(m.get(i, j))).collect()))
            .collect(),
    )
}

fn status_json(s: &ConditionStatus) -> Value {
    match s {
        ConditionStatus::Holds { method, detail } => json!({
            "status": "holds",
            "method": method.to_string(),
            "detail": detail,
        }),
        ConditionStatus::Fails { method, witness } => json!({
            "status": "fails",
            "method": method.to_string(),
            "witness": witness,
        }),
        ConditionStatus::Undetermined { reason } => json!({
            "status": "undetermined",
            "reason": reason,
        }),
    }
}

fn emit(value: &Value, out: &Option<PathBuf>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).expect("json");
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Check { input, out } => {
            let s = input.load()?;
            let rep = cubic22::check_thm14(&s).map_err(|e| e.to_string())?;
            let geometry = match cubic22::classify_geometry(&s) {
                Ok(g) => json!({
                    "phi_signature": [g.phi_signature.0, g.phi_signature.1, g.phi_signature.2],
                    "sigma_empty": g.sigma_empty,
                    "note": if g.sigma_empty { "critical variety empty off the origin; nondegenerate route applies" } else { "critical variety is a nontrivial cone" },
                    "gamma_r": format!("{:?}", g.gamma_r),
                    "gamma_l": format!("{:?}", g.gamma_l),
                    "p_schur": mat_json(&g.p_schur),
                    "r_schur": mat_json(&g.r_schur),
                    "null_dirs_p": g.null_dirs_p,
                    "null_dirs_r": g.null_dirs_r,
                    "null_dirs_p_schur": g.null_dirs_p_schur,
                    "null_dirs_r_schur": g.null_dirs_r_schur,
                }),
                Err(e) => json!({ "unavailable": e.to_string() }),
            };
            let cond = |c: cubic22::ConditionOutcome| json!({ "holds": c.holds, "evaluable": c.evaluable });
            let report = json!({
                "phase": serde_json::from_str::<Value>(&phase_to_json(&s)).unwrap(),
                "blocks": {
                    "p": mat_json(&rep.blocks.p),
                    "q": mat_json(&rep.blocks.q),
                    "r": mat_json(&rep.blocks.r),
                },
                "conditions": {
                    "pr_nonsingular": cond(rep.pr_nonsingular),
                    "schur_nonsingular": cond(rep.schur_nonsingular),
                    "cross_resultants_nonzero": cond(rep.cross_resultants_nonzero),
                    "indefinite_resultants_nonzero": cond(rep.indefinite_resultants_nonzero),
                    "indefinite_case_applicable": rep.indefinite_case_applicable,
                },
                "witnesses": {
                    "det_p": rat_json(&rep.det_p),
                    "det_r": rat_json(&rep.det_r),
                    "det_p_schur": opt_rat_json(&rep.det_p_schur),
                    "det_r_schur": opt_rat_json(&rep.det_r_schur),
                    "res_cross_x": opt_rat_json(&rep.res_cross_x),
                    "res_cross_z": opt_rat_json(&rep.res_cross_z),
                    "res_p_x": opt_rat_json(&rep.res_p_x),
                    "res_r_z": opt_rat_json(&rep.res_r_z),
                },
                "passes": rep.passes(),
                "geometry": geometry,
            });
            emit(&report, &out)?;
            Ok(0)
        }
        Command::Newton {
            input,
            modified,
            samples,
            seed,
            out,
        } => {
            let s = input.load()?;
            let value = if modified {
                let m = newton::modified_newton_distance(&s, samples, seed)
                    .map_err(|e| e.to_string())?;
                json!({
                    "delta": rat_string(&m.delta),
                    "exact": m.exact,
                    "transform_A": m.transform_a.as_ref().map(mat_json).unwrap_or(Value::Null),
                    "transform_B": m.transform_b.as_ref().map(mat_json).unwrap_or(Value::Null),
                    "certificate": m.certificate.as_ref().map(|c| json!({
                        "support": c.support.iter().map(|p| p.point()).collect::<Vec<_>>(),
                        "weights": c.certificate.iter().map(rat_json).collect::<Vec<_>>(),
                    })).unwrap_or(Value::Null),
                    "kind": format!("{:?}", m.kind),
                    "modified": true,
                    "samples": samples,
                    "seed": seed,
                })
            } else {
                let nd = newton::newton_distance(&s).map_err(|e| e.to_string())?;
                json!({
                    "delta": rat_string(&nd.delta),
                    "exact": true,
                    "certificate": {
                        "support": nd.support.iter().map(|p| p.point()).collect::<Vec<_>>(),
                        "weights": nd.certificate.iter().map(rat_json).collect::<Vec<_>>(),
                    },
                    "modified": false,
                })
            };
            emit(&value, &out)?;
            Ok(0)
        }
        Command::Predict {
            input,
            certify,
            grid,
            seed,
            out,
        } => {
            let s = input.load()?;
            let opts = PredictOptions {
                grid,
                certify,
                seed,
            };
            let p = predict::predict_decay(&s, &opts).map_err(|e| e.to_string())?;
            let value = json!({
                "r": opt_rat_json(&p.rate),
                "p": p.log_power,
                "source": p.source.tag(),
                "lower_bound_r": rat_json(&p.lower_bound_rate),
                "delta_mod": opt_rat_json(&p.delta_mod),
                "sharp_lower_bound": p.sharp_lower_bound,
                "hypotheses": p.hypotheses.iter().map(|h| json!({
                    "condition": h.condition,
                    "check": status_json(&h.status),
                })).collect::<Vec<_>>(),
                "seed": seed,
                "certify": certify,
                "grid": grid,
            });
            emit(&value, &out)?;
            Ok(0)
        }
        Command::Pencil { phi1, phi2, out } => {
            let f1 = BinaryForm::parse(&phi1).map_err(|e| format!("--phi1: {e}"))?;
            let f2 = BinaryForm::parse(&phi2).map_err(|e| format!("--phi2: {e}"))?;
            if f1.is_zero() || f2.is_zero() {
                return Err("pencil forms must be nonzero".into());
            }
            if f1.degree() != f2.degree() {
                return Err(format!(
                    "degree mismatch: {} vs {}",
                    f1.degree(),
                    f2.degree()
                ));
            }
            let ps = crate::binres::pencil_s(&f1, &f2).map_err(|e| e.to_string())?;
            let phase = pencil::PencilPhase {
                d: f1.degree() as u32,
                phi1: f1,
                phi2: f2,
                s: ps.s,
                direction: ps.direction.clone(),
            };
            let pred = pencil::pencil_rate(&phase);
            let direction = match &ps.direction {
                Some(crate::binres::Direction::Exact(a, b)) => {
                    json!([rat_string(a), rat_string(b)])
                }
                Some(crate::binres::Direction::Approx(a, b)) => json!([a, b]),
                None => Value::Null,
            };
            let value = json!({
                "d": phase.d,
                "s": phase.s,
                "r": opt_rat_json(&pred.rate),
                "log_power": pred.log_power,
                "delta_mod": opt_rat_json(&pred.delta_mod),
                "direction": direction,
                "sharp_lower_bound": pred.sharp_lower_bound,
            });
            emit(&value, &out)?;
            Ok(0)
        }
        Command::Sweep {
            input,
            lambda_min,
            lambda_max,
            points,
            grid,
            cap,
            tol,
            max_iter,
            seed,
            amp,
            drop_frac,
            strict,
            out,
            plot_out,
        } => {
            let s = input.load()?;
            if !(lambda_min > 0.0 && lambda_max > lambda_min) {
                return Err("need 0 < lambda-min < lambda-max".into());
            }
            if points < 4 {
                return Err("need at least 4 sweep points".into());
            }
            let kind = match amp.as_str() {
                "smooth" => BumpKind::SmoothCompact,
                "constant" => BumpKind::ConstantOnBox,
                other => return Err(format!("unknown amplitude kind {other:?}")),
            };
            let amp = AmplitudeSpec::new(vec![(-1.0, 1.0); s.n_x() + s.n_z()], kind);
            let policy = match grid.as_str() {
                "auto" => GridPolicy::Auto { cap },
                fixed => GridPolicy::Fixed(
                    fixed
                        .parse::<usize>()
                        .map_err(|_| format!("bad --grid {fixed:?}"))?,
                ),
            };
            let lambdas = normest::geometric_lambdas(lambda_min, lambda_max, points);
            for &l in &lambdas {
                let (n, resolved) = policy.choose(&s, &amp, l);
                eprintln!(
                    "lambda {l:.4}: grid {n}/axis{}",
                    if resolved { "" } else { " (under-resolved)" }
                );
            }
            let sweep = normest::sweep_and_fit(
                &s, &lambdas, &amp, policy, tol, max_iter, seed, drop_frac, strict,
            )
            .map_err(|e| e.to_string())?;
            let mut csv = String::from("lambda,norm,grid_n,iters,residual,resolved\n");
            for r in &sweep.rows {
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.lambda, r.norm, r.grid_n, r.iterations, r.residual, r.resolved
                ));
            }
            std::fs::write(&out, csv)
                .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
            if let Some(plot) = &plot_out {
                let mut data = String::new();
                for r in &sweep.rows {
                    data.push_str(&format!("{} {}\n", r.lambda.ln(), r.norm.ln()));
                }
                std::fs::write(plot, data)
                    .map_err(|e| format!("cannot write {}: {e}", plot.display()))?;
            }
            let summary = json!({
                "slope": sweep.fit.slope,
                "stderr": sweep.fit.stderr,
                "window": [sweep.fit.window.0, sweep.fit.window.1],
                "points_used": sweep.fit.points_used,
                "rows": sweep.rows.len(),
                "unresolved": sweep.rows.iter().filter(|r| !r.resolved).count(),
                "seed": seed,
                "tol": tol,
                "out": out.display().to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&summary).unwrap());
            let soft_fail = strict && sweep.rows.iter().any(|r| !r.resolved);
            Ok(if soft_fail { 2 } else { 0 })
        }
        Command::Fit {
            input,
            drop_frac,
            out,
        } => {
            let text = std::fs::read_to_string(&input)
                .map_err(|e| format!("cannot read {}: {e}", input.display()))?;
            let mut points = Vec::new();
            for (i, line) in text.lines().enumerate() {
                if i == 0 && line.starts_with("lambda") {
                    continue;
                }
                if line.trim().is_empty() {
                    continue;
                }
                let cols: Vec<&str> = line.split(',').collect();
                if cols.len() < 2 {
                    return Err(format!(
                        "{}:{}: expected CSV columns",
                        input.display(),
                        i + 1
                    ));
                }
                let l: f64 = cols[0]
                    .trim()
                    .parse()
                    .map_err(|_| format!("line {}: bad lambda", i + 1))?;
                let n: f64 = cols[1]
                    .trim()
                    .parse()
                    .map_err(|_| format!("line {}: bad norm", i + 1))?;
                points.push((l, n));
            }
            let fit =
                normest::fit_loglog(&points, drop_frac).ok_or("not enough usable rows to fit")?;
            let value = json!({
                "slope": fit.slope,
                "stderr": fit.stderr,
                "window": [fit.window.0, fit.window.1],
                "points_used": fit.points_used,
            });
            emit(&value, &out)?;
            Ok(0)
        }
        Command::Genericity {
            nx,
            nz,
            m,
            trials,
            seed,
            out,
        } => {
            if nx == 0 || nz == 0 || m < 2 || trials == 0 {
                return Err("need nx, nz >= 1, m >= 2, trials >= 1".into());
            }
            let opts = PredictOptions::default();
            let rep = predict::genericity(nx, nz, m, trials, seed, &opts);
            let value = json!({
                "nx": nx,
                "nz": nz,
                "m": m,
                "trials": rep.trials,
                "seed": rep.seed,
                "rank_one_passes": rep.rank_one_passes,
                "rank_one_fraction": rep.rank_one_passes as f64 / rep.trials as f64,
                "cubic_passes": rep.cubic_passes,
                "cubic_fraction": rep.cubic_passes.map(|c| c as f64 / rep.trials as f64),
            });
            emit(&value, &out)?;
            Ok(0)
        }
        Command::Examples {
            emit: emit_name,
            out,
        } => {
            if let Some(name) = emit_name {
                let phase =
                    corpus::by_name(&name).ok_or_else(|| format!("unknown builtin {name:?}"))?;
                let value: Value = serde_json::from_str(&phase_to_json(&phase)).unwrap();
                emit(&value, &out)?;
                return Ok(0);
            }
            let mut stdout = std::io::stdout().lock();
            for (name, desc, phase) in corpus::all() {
                writeln!(stdout, "{name}: {desc}").map_err(|e| e.to_string())?;
                writeln!(stdout, "    {phase}").map_err(|e| e.to_string())?;
                writeln!(stdout, "    {}", phase_to_json(&phase)).map_err(|e| e.to_string())?;
            }
            Ok(0)
        }
    }
}

/// Entry point used by the `oscint` binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version with success exits
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

pub fn cli_main() -> i32 {
    main_with_args(std::env::args_os())
}
