//! The `dtorus` command line.
//!
//! Every command prints one JSON document. Exit status is 0 when every
//! requested check passes, 1 when one fails and 2 for configuration errors.
//!
//! A config file holds `key = JSON` lines; `#` starts a comment. Flags given
//! on the command line win over the file.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::builders::{
    action_table, build_lie_elements, build_rep_window, check_unitary_commutators,
    double_torus_sequence, dual_w, finite_fibration, kac_paljutkin, w_subalgebra, z3_sequence,
    DeltaWindow, DtWindow,
};
use crate::cohomology::{
    flip_family, lift_commutator_form, solve_cocycles, z3_family, BilinearForm, CocycleDocument,
    CocycleFamily,
};
use crate::duality::{find_hopf_isomorphism, kac_paljutkin_duality};
use crate::hopf::{
    verify_action, verify_hopf, ActionMap, AxiomReport, HopfPresentation, Tensor2, VerifyMode,
};
use crate::scalar::{rat, CycloScalar};
use crate::structure::{wedderburn, Algebra};
use crate::symmetry::{Lattice, PermGroup};

#[derive(Parser, Debug)]
#[command(
    name = "dtorus",
    version,
    about = "Build and verify quantum double tori and their finite fibrations"
)]
pub struct Cli {
    /// Config file of `key = JSON` lines.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Shared {
    /// Root of unity order, `q = zeta_N`.
    #[arg(long = "N")]
    pub n_root: Option<i64>,
    /// Symmetry group: `Z2`, `Z3`, `trivial` or a JSON list of permutations.
    #[arg(long)]
    pub group: Option<String>,
    /// Rank of `Z^n`.
    #[arg(long)]
    pub n: Option<usize>,
    /// Cocycle: `flip`, `z3:a,b`, or JSON forms, one per generator.
    #[arg(long)]
    pub theta: Option<String>,
    /// Lattice basis as JSON rows; defaults to `N Z^n`.
    #[arg(long)]
    pub lattice: Option<String>,
    /// Window degree `D`.
    #[arg(long)]
    pub degree: Option<i64>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rational basis of the cocycle families of a permutation group.
    SolveCocycle {
        #[command(flatten)]
        shared: Shared,
        #[arg(long)]
        antisym: bool,
    },
    /// Emit a presentation or window summary as JSON.
    Build {
        kind: BuildKind,
        #[command(flatten)]
        shared: Shared,
    },
    /// Run one family of exact checks.
    Verify {
        kind: VerifyKind,
        /// Presentation file for `hopf`.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[command(flatten)]
        shared: Shared,
    },
    /// Wedderburn blocks of a presentation file.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        shared: Shared,
    },
    /// Every acceptance criterion.
    ReportAll,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum BuildKind {
    Kp,
    DualW,
    Fibration,
    WSub,
    DtWindow,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum VerifyKind {
    Hopf,
    Action,
    Morphism,
    Sequence,
    Multiplier,
    Pairing,
    Rep,
    Lie,
    Commutators,
}

/// Result of one invocation.
pub struct Outcome {
    pub passed: bool,
    pub report: Value,
}

fn ok(report: Value) -> Outcome {
    Outcome {
        passed: true,
        report,
    }
}

fn checked<T: Serialize>(passed: bool, report: &T) -> anyhow::Result<Outcome> {
    Ok(Outcome {
        passed,
        report: serde_json::to_value(report)?,
    })
}

/// Parse `key = JSON` lines.
pub fn parse_config(text: &str) -> anyhow::Result<BTreeMap<String, Value>> {
    let mut out = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected `key = value`", no + 1))?;
        let v = v.trim();
        // bare words are read as strings
        let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
        out.insert(k.trim().to_string(), value);
    }
    Ok(out)
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Shared {
    fn fill(&mut self, cfg: &BTreeMap<String, Value>) -> anyhow::Result<()> {
        for (k, v) in cfg {
            let bad = || anyhow!("config key {k}: unexpected value {v}");
            match k.as_str() {
                "N" => self.n_root = self.n_root.or(Some(v.as_i64().ok_or_else(bad)?)),
                "n" => self.n = self.n.or(Some(v.as_u64().ok_or_else(bad)? as usize)),
                "group" => self.group = self.group.clone().or(Some(text(v))),
                "theta" => self.theta = self.theta.clone().or(Some(text(v))),
                "lattice" => self.lattice = self.lattice.clone().or(Some(text(v))),
                "degree" => self.degree = self.degree.or(Some(v.as_i64().ok_or_else(bad)?)),
                "tolerance" => {
                    self.tolerance = self.tolerance.or(Some(v.as_f64().ok_or_else(bad)?))
                }
                "seed" => self.seed = self.seed.or(Some(v.as_u64().ok_or_else(bad)?)),
                "out" | "command" => {}
                _ => bail!("unknown config key {k}"),
            }
        }
        Ok(())
    }

    fn root(&self) -> anyhow::Result<i64> {
        let n = self.n_root.ok_or_else(|| anyhow!("--N is required"))?;
        if n < 2 {
            bail!("--N must be at least 2, got {n}");
        }
        Ok(n)
    }

    fn degree_or(&self, d: i64) -> i64 {
        self.degree.unwrap_or(d)
    }

    fn group(&self) -> anyhow::Result<PermGroup> {
        let spec = self
            .group
            .as_deref()
            .ok_or_else(|| anyhow!("--group is required"))?;
        Ok(match spec {
            "Z2" => PermGroup::flip(),
            "Z3" => PermGroup::cyclic(self.n.unwrap_or(3)),
            "trivial" => PermGroup::trivial(
                self.n
                    .ok_or_else(|| anyhow!("--n is required for the trivial group"))?,
            ),
            json => {
                let gens: Vec<Vec<usize>> =
                    serde_json::from_str(json).context("group generators")?;
                let n = self
                    .n
                    .or(gens.first().map(Vec::len))
                    .ok_or_else(|| anyhow!("--n is required"))?;
                PermGroup::from_generators(n, &gens)?
            }
        })
    }

    /// The cocycle together with the lattice it is integral on.
    fn fibration_data(&self) -> anyhow::Result<(CocycleFamily, Lattice)> {
        let n = self.root()?;
        let theta = self.theta.as_deref().unwrap_or("flip");
        let family = if theta == "flip" {
            flip_family(&rat(1, n))
        } else if let Some(ab) = theta.strip_prefix("z3:") {
            let (a, b) = ab
                .split_once(',')
                .ok_or_else(|| anyhow!("expected z3:a,b"))?;
            let (a, b): (i64, i64) = (a.trim().parse()?, b.trim().parse()?);
            let lattice = self.lattice(3, n)?;
            return Ok((
                lift_commutator_form(&z3_family(&rat(a, n), &rat(-b, n)), &lattice)?,
                lattice,
            ));
        } else if theta.trim_start().starts_with('{') {
            let doc: CocycleDocument = serde_json::from_str(theta).context("cocycle document")?;
            CocycleFamily::from_document(&doc)?
        } else {
            let forms: Vec<Vec<Vec<String>>> =
                serde_json::from_str(theta).context("theta forms")?;
            let forms = forms
                .iter()
                .map(|f| BilinearForm::from_strings(f))
                .collect::<Result<Vec<_>, _>>()?;
            CocycleFamily::from_generator_forms(&self.group()?, &forms)
        };
        family.validate()?;
        let rank = family.rank();
        Ok((family, self.lattice(rank, n)?))
    }

    fn lattice(&self, rank: usize, n: i64) -> anyhow::Result<Lattice> {
        match &self.lattice {
            None => Ok(Lattice::scaled(rank, n)),
            Some(s) => Ok(Lattice::new(
                serde_json::from_str(s).context("lattice basis")?,
            )?),
        }
    }
}

fn read_presentation(path: &PathBuf) -> anyhow::Result<HopfPresentation<CycloScalar>> {
    let s = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(HopfPresentation::from_json(&s)?)
}

fn presentation_json(h: &HopfPresentation<CycloScalar>) -> anyhow::Result<Value> {
    Ok(serde_json::to_value(h.to_document()?)?)
}

fn report_outcome(r: &AxiomReport) -> anyhow::Result<Outcome> {
    checked(r.passed(), r)
}

fn build(kind: BuildKind, s: &Shared) -> anyhow::Result<Outcome> {
    Ok(ok(match kind {
        BuildKind::Kp => presentation_json(&kac_paljutkin(s.root()?)?)?,
        BuildKind::DualW => presentation_json(&dual_w(s.root()?)?)?,
        BuildKind::Fibration => {
            let (theta, lattice) = s.fibration_data()?;
            presentation_json(&finite_fibration(&theta, &lattice)?)?
        }
        BuildKind::WSub => {
            let (theta, lattice) = s.fibration_data()?;
            presentation_json(&w_subalgebra(&theta, &lattice)?)?
        }
        BuildKind::DtWindow => {
            let q = match s.n_root {
                Some(n) => CycloScalar::root_of_unity(n as u32, 1),
                None => num_traits::One::one(),
            };
            let w = DtWindow::new(q, s.degree_or(3))?;
            let checks = [
                w.check_commutator_identity(),
                w.check_generator_coproducts(),
                w.check_matrix_coproduct(),
                w.check_commutative(),
            ];
            json!({ "q": w.q(), "degree": w.degree(), "dim": crate::hopf::HopfAlgebra::dim(&w), "checks": checks })
        }
    }))
}

fn verify(kind: VerifyKind, input: Option<&PathBuf>, s: &Shared) -> anyhow::Result<Outcome> {
    match kind {
        VerifyKind::Hopf => {
            let h = match input {
                Some(p) => read_presentation(p)?,
                None => kac_paljutkin(s.root()?)?,
            };
            report_outcome(&verify_hopf(&h, VerifyMode::Full))
        }
        VerifyKind::Action => {
            let n = s.root()?;
            let (w, t) = (dual_w(n)?, kac_paljutkin(n)?);
            let table = action_table(&w, &t)?;
            report_outcome(&verify_action(
                &ActionMap::new(&w, &t, table),
                VerifyMode::Full,
            ))
        }
        VerifyKind::Morphism => {
            let n = s.root()?;
            let r = crate::builders::check_flip_identifications(n)?;
            checked(r.values().all(AxiomReport::passed), &r)
        }
        VerifyKind::Sequence => {
            let d = s.degree_or(4);
            let r = match s.theta.as_deref() {
                None | Some("flip") => double_torus_sequence(s.root()?, d)?.verify(),
                Some(_) => {
                    let (theta, lattice) = s.fibration_data()?;
                    z3_sequence(&theta, &lattice, d)?.verify()
                }
            };
            checked(r.passed(), &r)
        }
        VerifyKind::Multiplier => {
            let d = s.degree_or(6);
            let seed = s.seed.unwrap_or(0);
            let w = match s.theta.as_deref() {
                None | Some("flip") => DeltaWindow::dual_c(s.root()?, d)?,
                Some(_) => DeltaWindow::crossed(&s.fibration_data()?.0, d)?,
            };
            let coassoc = w.sample_coassociativity(64, seed);
            let closed = closed_form_check(&w);
            checked(
                coassoc.passed() && closed.as_ref().is_none_or(|c| c.passed()),
                &json!({ "coassociativity": coassoc, "closed_form": closed }),
            )
        }
        VerifyKind::Pairing => {
            let n = s.root()?;
            let r = kac_paljutkin_duality(n)?;
            let mut passed = r.passed();
            let mut out = serde_json::to_value(&r)?;
            if n == 2 {
                let iso =
                    find_hopf_isomorphism(&kac_paljutkin(2)?, &dual_w(2)?, s.seed.unwrap_or(7));
                passed &= iso.found;
                out["self_duality"] = serde_json::to_value(&iso)?;
            }
            Ok(Outcome {
                passed,
                report: out,
            })
        }
        VerifyKind::Rep => report_outcome(&build_rep_window(s.root()?, s.degree_or(6))?.verify()),
        VerifyKind::Lie => {
            let (_, r) = build_lie_elements(&dual_w(s.root()?)?)?;
            checked(r.passed(), &r)
        }
        VerifyKind::Commutators => {
            let (theta, lattice) = s.fibration_data()?;
            let r = check_unitary_commutators(&theta, &lattice)?;
            checked(r.passed(), &r)
        }
    }
}

/// `Δ(c+(i,j))(1 ⊗ c-(k,l)) = c+(i-l, j-k) ⊗ c-(k,l)` on the dual of the double torus.
fn closed_form_check(w: &DeltaWindow) -> Option<crate::hopf::AxiomCheck> {
    if w.group().order() != 2 || w.label(0).symbol != "c" {
        return None;
    }
    let r = w.degree() / 2;
    let c = |s: usize, i: i64, j: i64| w.index(&(s, vec![i, j])).ok();
    let mut bad = None;
    let mut count = 0;
    for (i, j, k, l) in quadruples(r) {
        let (Some(b), Some(cc), Some(x)) = (c(0, i, j), c(1, k, l), c(0, i - l, j - k)) else {
            continue;
        };
        count += 1;
        if bad.is_none() && w.multiplier_right(b, cc).ok() != Some(Tensor2::basis((x, cc))) {
            bad = Some(format!("c+({i},{j}), c-({k},{l})"));
        }
    }
    let name = "Δ(c+)(1 ⊗ c-) closed form";
    Some(crate::hopf::AxiomCheck::from_bool(
        name,
        bad.is_none(),
        count,
        || crate::hopf::Witness {
            tuple: vec![bad.clone().unwrap_or_default()],
            residual: "mismatch".into(),
        },
    ))
}

fn quadruples(r: i64) -> impl Iterator<Item = (i64, i64, i64, i64)> {
    (-r..=r).flat_map(move |i| {
        (-r..=r).flat_map(move |j| (-r..=r).flat_map(move |k| (-r..=r).map(move |l| (i, j, k, l))))
    })
}

fn decompose(input: &PathBuf, s: &Shared) -> anyhow::Result<Outcome> {
    let h = read_presentation(input)?;
    let r = wedderburn(
        &Algebra::from(&h),
        s.tolerance.unwrap_or(1e-8),
        s.seed.unwrap_or(0),
    )?;
    let mut v = serde_json::to_value(&r)?;
    v["summary"] = Value::String(r.describe());
    Ok(Outcome {
        passed: r.passed(),
        report: v,
    })
}

fn solve(s: &Shared, antisym: bool) -> anyhow::Result<Outcome> {
    let g = s.group()?;
    let basis = solve_cocycles(&g, antisym);
    let docs: Vec<CocycleDocument> = basis.iter().map(CocycleFamily::to_document).collect();
    Ok(ok(
        json!({ "dimension": basis.len(), "antisymmetric": antisym, "basis": docs }),
    ))
}

fn dispatch(cli: &Cli, cfg: &BTreeMap<String, Value>) -> anyhow::Result<Outcome> {
    let fill = |s: &Shared| -> anyhow::Result<Shared> {
        let mut s = s.clone();
        s.fill(cfg)?;
        Ok(s)
    };
    match &cli.command {
        Command::SolveCocycle { shared, antisym } => solve(&fill(shared)?, *antisym),
        Command::Build { kind, shared } => build(*kind, &fill(shared)?),
        Command::Verify {
            kind,
            input,
            shared,
        } => verify(*kind, input.as_ref(), &fill(shared)?),
        Command::Decompose { input, shared } => decompose(input, &fill(shared)?),
        Command::ReportAll => {
            let all = crate::acceptance::run_all();
            checked(all.iter().all(|c| c.passed), &json!({ "criteria": all }))
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("DTORUS_THREADS") {
        let n: usize = v.parse().with_context(|| format!("DTORUS_THREADS={v}"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

/// Run with explicit arguments and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = (|| {
        configure_threads()?;
        let cfg = match &cli.config {
            Some(p) => parse_config(
                &std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            )?,
            None => BTreeMap::new(),
        };
        let outcome = dispatch(&cli, &cfg)?;
        let out = cli
            .out
            .clone()
            .or_else(|| cfg.get("out").map(|v| PathBuf::from(text(v))));
        Ok::<_, anyhow::Error>((outcome, out))
    })();
    match result {
        Ok((outcome, out)) => {
            let body =
                serde_json::to_string_pretty(&outcome.report).expect("reports serialize") + "\n";
            let written = match out {
                Some(p) => {
                    std::fs::write(&p, body).with_context(|| format!("writing {}", p.display()))
                }
                None => {
                    print!("{body}");
                    Ok(())
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e:#}");
                    2
                }
                Ok(()) if outcome.passed => 0,
                Ok(()) => 1,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_lines() {
        let cfg =
            parse_config("# job\nN = 3\ntheta = z3:1,1\nlattice = [[3,0,0],[0,3,0],[0,0,3]]\n")
                .unwrap();
        assert_eq!(cfg["N"], json!(3));
        assert_eq!(cfg["theta"], json!("z3:1,1"));
        assert!(parse_config("N 3").is_err());
        let mut s = Shared {
            n_root: Some(2),
            ..Shared::default()
        };
        s.fill(&cfg).unwrap();
        assert_eq!(s.n_root, Some(2));
        assert!(s.fill(&parse_config("colour = 1").unwrap()).is_err());
    }

    #[test]
    fn z3_data_from_flags() {
        let s = Shared {
            n_root: Some(2),
            theta: Some("z3:1,0".into()),
            ..Shared::default()
        };
        let (theta, lattice) = s.fibration_data().unwrap();
        assert_eq!(
            finite_fibration(&theta, &lattice).unwrap().labels().len(),
            24
        );
    }

    #[test]
    fn explicit_forms() {
        let s = Shared {
            n_root: Some(3),
            group: Some("Z2".into()),
            theta: Some(r#"[[["0","1/3"],["-1/3","0"]]]"#.into()),
            ..Shared::default()
        };
        let (theta, _) = s.fibration_data().unwrap();
        assert_eq!(theta, flip_family(&rat(1, 3)));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            run([
                "dtorus",
                "verify",
                "rep",
                "--N",
                "2",
                "--degree",
                "3",
                "--out",
                "/dev/null"
            ]),
            0
        );
        assert_eq!(run(["dtorus", "verify", "rep", "--N", "1"]), 2);
        assert_eq!(run(["dtorus", "bogus"]), 2);
    }
}
