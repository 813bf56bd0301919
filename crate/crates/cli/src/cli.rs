//! Argument definitions and command dispatch.
//!
//! Vertex, simple-root and Levi indices on the command line are 1-based;
//! indices inside JSON documents are 0-based.

use std::fmt::Display;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use whskit::bruhat::{WeylGroup, DEFAULT_WEYL_CAP};
use whskit::cartan::CartanType;
use whskit::cluster::{self, ExchangeMatrix, Seed};
use whskit::kahler::{self, Group, PotentialSpec};
use whskit::rootsys::RootSystem;
use whskit::whs::{self, ParabolicData, RhoConvention, WeightSystem};
use whskit::wps::{self, WeightVector};
use whskit::wquiver::{self, WeightedQuiver};

use crate::json;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed invocation; exit code 1.
    #[error("{0}")]
    Usage(String),
    /// Well-formed request rejected by the mathematics; exit code 2.
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
        }
    }
}

fn domain(e: impl Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn usage(e: impl Display) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Parser, Debug)]
#[command(
    name = "whskit",
    version,
    about = "Weighted homogeneous spaces and weighted cluster algebras"
)]
pub struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cartan matrix and positive roots of a finite type.
    Root(TypeArg),
    /// Weyl group order, minimal coset representatives and Poincaré polynomial.
    Weyl(WeylArgs),
    /// Weighted projective spaces.
    #[command(subcommand)]
    Wps(WpsCommand),
    /// Weighted flag varieties G/P[psi].
    #[command(subcommand)]
    Whs(WhsCommand),
    /// Cluster algebras from exchange matrices.
    #[command(subcommand)]
    Cluster(ClusterCommand),
    /// Weighted quivers.
    #[command(subcommand)]
    Quiver(QuiverCommand),
    /// Numeric Kähler potentials.
    #[command(subcommand)]
    Kahler(KahlerCommand),
    /// Local JSON-over-HTTP service for interactive sessions.
    Serve(ServeArgs),
}

#[derive(Args, Debug)]
pub struct TypeArg {
    /// Cartan type such as A3, B2, G2.
    #[arg(long = "type", value_name = "TYPE")]
    pub cartan_type: String,
}

#[derive(Args, Debug)]
pub struct WeylArgs {
    #[command(flatten)]
    pub ty: TypeArg,
    /// Simple roots of the Levi factor, 1-based.
    #[arg(long, value_delimiter = ',')]
    pub levi: Vec<usize>,
    /// Largest group that will be enumerated.
    #[arg(long, default_value_t = DEFAULT_WEYL_CAP)]
    pub cap: usize,
}

#[derive(Subcommand, Debug)]
pub enum WpsCommand {
    /// Reduced (well-formed) weights.
    Reduce {
        #[arg(value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<i64>,
    },
    /// Decide whether two weighted projective spaces are isomorphic.
    Isom {
        #[arg(
            required = true,
            num_args = 1,
            value_delimiter = ',',
            allow_hyphen_values = true
        )]
        a: Vec<i64>,
        #[arg(
            required = true,
            num_args = 1,
            value_delimiter = ',',
            allow_hyphen_values = true
        )]
        b: Vec<i64>,
    },
}

#[derive(Args, Debug)]
pub struct WhsArgs {
    #[command(flatten)]
    pub ty: TypeArg,
    /// Weights <alpha_i, H> on the simple roots.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub psi: Vec<i64>,
    /// Simple roots of the Levi factor, 1-based; empty for the Borel.
    #[arg(long, value_delimiter = ',')]
    pub levi: Vec<usize>,
}

#[derive(Subcommand, Debug)]
pub enum WhsCommand {
    /// Degree of the quotient map G/P -> G/P[psi].
    Degree(WhsArgs),
    /// Orbifold charts, one per Bruhat cell.
    Charts {
        #[command(flatten)]
        args: WhsArgs,
        #[arg(long, default_value_t = DEFAULT_WEYL_CAP)]
        cap: usize,
    },
    /// Compare G/P[psi] with G/P[psi2].
    Isom {
        #[command(flatten)]
        args: WhsArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        psi2: Vec<i64>,
    },
    /// Chern coefficients of the canonical bundle and optionally of L_chi.
    Chern {
        #[command(flatten)]
        args: WhsArgs,
        /// Fundamental-weight coordinates of chi over the simple roots outside the Levi.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        chi: Option<Vec<i64>>,
        /// Take rho to be half the sum of the roots of the nilradical.
        #[arg(long)]
        rho_halfsum: bool,
    },
}

#[derive(Args, Debug)]
pub struct MatrixSource {
    /// Cartan type; the exchange matrix is its bipartite orientation.
    #[arg(long = "type", value_name = "TYPE", conflicts_with = "matrix")]
    pub cartan_type: Option<String>,
    /// Exchange matrix as JSON rows; extra rows are frozen.
    #[arg(long)]
    pub matrix: Option<String>,
    /// Number of mutable vertices when the matrix has frozen rows.
    #[arg(long)]
    pub mutable: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum ClusterCommand {
    /// Apply a mutation sequence to the initial seed.
    Mutate {
        #[command(flatten)]
        source: MatrixSource,
        /// Mutable vertices, 1-based.
        #[arg(long, value_delimiter = ',')]
        seq: Vec<usize>,
    },
    /// Count seeds and cluster variables of a finite-type exchange graph.
    Enumerate {
        #[command(flatten)]
        source: MatrixSource,
        #[arg(long, default_value_t = cluster::DEFAULT_SEED_CAP)]
        cap: usize,
        /// Also list the cluster variables.
        #[arg(long)]
        list: bool,
    },
    /// Decide finite type from the mutation class.
    FiniteType {
        #[command(flatten)]
        source: MatrixSource,
        #[arg(long, default_value_t = cluster::DEFAULT_DEPTH_CAP)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum QuiverCommand {
    /// Mutate a weighted quiver read from a JSON file (or inline JSON).
    Wmutate {
        #[arg(long)]
        quiver: String,
        /// Vertices, 1-based, applied in order.
        #[arg(long, value_delimiter = ',')]
        at: Vec<usize>,
    },
    /// Weights returning to themselves, up to relabelling, after a mutation sequence.
    Periodic {
        #[arg(long)]
        quiver: String,
        /// Search box [-b, b] per vertex.
        #[arg(long = "box", default_value_t = 3)]
        bound: i64,
        /// Mutation sequence, 1-based; defaults to vertex 1.
        #[arg(long, value_delimiter = ',')]
        seq: Vec<usize>,
        /// Relabelling as 1-based images; defaults to the rotation i -> i + 1.
        #[arg(long, value_delimiter = ',')]
        perm: Vec<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum KahlerCommand {
    /// Hessian positivity at seeded sample points of the big cell.
    Check {
        /// sl<n> or sp4.
        #[arg(long)]
        group: String,
        /// Coefficients on the fundamental weights.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8731)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    /// Directory for JSON-lines session logs; sessions found there are restored.
    #[arg(long)]
    pub persist: Option<PathBuf>,
}

fn root_system(t: &str) -> Result<RootSystem, CliError> {
    Ok(RootSystem::new(t.parse::<CartanType>().map_err(usage)?))
}

fn zero_based(v: &[usize], bound: usize, what: &str) -> Result<Vec<usize>, CliError> {
    v.iter()
        .map(|&i| {
            if i == 0 || i > bound {
                Err(usage(format!("{what} {i} out of range 1..={bound}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn parabolic(args: &WhsArgs) -> Result<(ParabolicData, WeightSystem), CliError> {
    let rs = root_system(&args.ty.cartan_type)?;
    let levi = zero_based(&args.levi, rs.rank(), "Levi index")?;
    let pd = ParabolicData::new(rs, &levi).map_err(domain)?;
    let psi = WeightSystem::new(&args.psi).map_err(domain)?;
    Ok((pd, psi))
}

fn exchange_matrix(src: &MatrixSource) -> Result<(ExchangeMatrix, Option<RootSystem>), CliError> {
    match (&src.cartan_type, &src.matrix) {
        (Some(t), None) => {
            let rs = root_system(t)?;
            Ok((cluster::exchange_for(&rs), Some(rs)))
        }
        (None, Some(m)) => {
            let rows: Vec<Vec<i64>> = serde_json::from_str(m).map_err(usage)?;
            let n = src.mutable.unwrap_or(rows.first().map_or(0, Vec::len));
            Ok((ExchangeMatrix::new(rows, n).map_err(domain)?, None))
        }
        _ => Err(usage("give exactly one of --type or --matrix")),
    }
}

fn read_quiver(arg: &str) -> Result<WeightedQuiver, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| usage(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| domain(format!("malformed quiver: {e}")))
}

/// Execute a parsed command that produces a single JSON document.
pub fn execute(command: &Command) -> Result<Value, CliError> {
    match command {
        Command::Root(t) => {
            let rs = root_system(&t.cartan_type)?;
            Ok(json!({
                "type": rs.cartan_type().to_string(),
                "rank": rs.rank(),
                "cartan": rs.cartan(),
                "symmetrizer": rs.symmetrizer(),
                "positive_roots": rs.positive_roots(),
                "highest_root": rs.highest_root(),
                "count": rs.positive_roots().len(),
            }))
        }
        Command::Weyl(a) => {
            let rs = root_system(&a.ty.cartan_type)?;
            let levi = zero_based(&a.levi, rs.rank(), "Levi index")?;
            let wg = WeylGroup::new(&rs);
            let reps = wg.min_coset_reps(&levi, a.cap).map_err(domain)?;
            let poincare = wg.poincare_poly(&levi, a.cap).map_err(domain)?;
            Ok(json!({
                "type": rs.cartan_type().to_string(),
                "levi": one_based(&levi),
                "order": json::big_u128(rs.cartan_type().weyl_order()),
                "cosets": reps.len(),
                "poincare": poincare,
                "representatives": reps.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            }))
        }
        Command::Wps(WpsCommand::Reduce { weights }) => {
            let w = WeightVector::new(weights).map_err(domain)?;
            Ok(json!({ "reduced": w.reduce().weights() }))
        }
        Command::Wps(WpsCommand::Isom { a, b }) => {
            let (a, b) = (
                WeightVector::new(a).map_err(domain)?,
                WeightVector::new(b).map_err(domain)?,
            );
            let r = wps::wps_isomorphic(&a, &b).map_err(domain)?;
            let witness = r.witness.as_ref().map(|e| {
                json!({
                    "phi": e.phi.iter().map(|row| json::bigs(row)).collect::<Vec<_>>(),
                    "perm": e.perm,
                })
            });
            Ok(json!({
                "isomorphic": r.isomorphic(),
                "reduced": [r.reduced.0.weights(), r.reduced.1.weights()],
                "witness": witness,
                "coordinate_test_agrees": r.tests_agree(),
            }))
        }
        Command::Whs(WhsCommand::Degree(args)) => {
            let (pd, psi) = parabolic(args)?;
            let d = whs::extension_degree(&pd, &psi).map_err(domain)?;
            Ok(json!({ "degree": json::big(&d) }))
        }
        Command::Whs(WhsCommand::Charts { args, cap }) => {
            let (pd, psi) = parabolic(args)?;
            let charts = whs::orbifold_charts(&pd, &psi, *cap).map_err(domain)?;
            let list: Vec<Value> = charts
                .iter()
                .map(|c| {
                    json!({
                        "rep": c.rep.to_string(),
                        "dim": c.dim(),
                        "weights": c.weights.iter().map(|(r, w)| json!({"root": r, "weight": w})).collect::<Vec<_>>(),
                        "order": json::big(&c.order),
                        "singular": c.singular,
                    })
                })
                .collect();
            Ok(json!({
                "degree": json::big(&whs::extension_degree(&pd, &psi).map_err(domain)?),
                "charts": list,
            }))
        }
        Command::Whs(WhsCommand::Isom { args, psi2 }) => {
            let (pd, psi) = parabolic(args)?;
            let psi2 = WeightSystem::new(psi2).map_err(domain)?;
            let r = whs::whs_isomorphic(&pd, &psi, &psi2).map_err(domain)?;
            Ok(json!({
                "isomorphic": r.isomorphic(),
                "extended_verdict": r.extended_verdict,
                "tests_agree": r.tests_agree(),
                "morphism": whs::whs_morphism_exists(&pd, &psi, &psi2).map_err(domain)?,
            }))
        }
        Command::Whs(WhsCommand::Chern {
            args,
            chi,
            rho_halfsum,
        }) => {
            let (pd, psi) = parabolic(args)?;
            let conv = if *rho_halfsum {
                RhoConvention::HalfSum
            } else {
                RhoConvention::FullSum
            };
            let canonical = whs::canonical_chern(&pd, &psi, conv).map_err(domain)?;
            let mut out = json!({
                "j": one_based(pd.j()),
                "rho": json::rationals(&whs::rho(&pd, conv)),
                "canonical": json::rationals(&canonical),
                "anticanonical_kahler": whs::kahler_cone_check(
                    &canonical.iter().map(|c| -c).collect::<Vec<BigRational>>()
                ),
            });
            if let Some(chi) = chi {
                let chi: Vec<BigRational> = chi
                    .iter()
                    .map(|&c| BigRational::from_integer(BigInt::from(c)))
                    .collect();
                let c = whs::chern_coeffs(&pd, &psi, &chi).map_err(domain)?;
                out["chern"] = json::rationals(&c);
                out["kahler"] = json!(whs::kahler_cone_check(&c));
            }
            Ok(out)
        }
        Command::Cluster(ClusterCommand::Mutate { source, seq }) => {
            let (b, _) = exchange_matrix(source)?;
            let seq = zero_based(seq, b.mutable_count(), "vertex")?;
            let s = Seed::initial(b).mutate_sequence(&seq).map_err(domain)?;
            Ok(json!({
                "matrix": s.matrix().rows(),
                "cluster": json::rendered(s.cluster()),
                "frozen": json::rendered(&s.vars()[s.matrix().mutable_count()..]),
            }))
        }
        Command::Cluster(ClusterCommand::Enumerate { source, cap, list }) => {
            let (b, rs) = exchange_matrix(source)?;
            let g = cluster::enumerate_seeds(&Seed::initial(b), *cap).map_err(domain)?;
            let mut out = json!({ "seeds": g.seed_count(), "variables": g.variable_count() });
            if *list {
                out["cluster_variables"] = json::rendered(&g.variables);
                if let Some(rs) = rs {
                    let labels = g
                        .variables
                        .iter()
                        .map(|v| cluster::denominator_vector(v, rs.rank()))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(domain)?;
                    out["denominators"] = json!(labels);
                }
            }
            Ok(out)
        }
        Command::Cluster(ClusterCommand::FiniteType { source, depth }) => {
            let (b, _) = exchange_matrix(source)?;
            Ok(json!({ "verdict": cluster::is_finite_type(&b, *depth) }))
        }
        Command::Quiver(QuiverCommand::Wmutate { quiver, at }) => {
            let mut q = read_quiver(quiver)?;
            let at = zero_based(at, q.len(), "vertex")?;
            let mut involutive = Vec::new();
            for k in at {
                let (next, inv) = q.mutate_report(k).map_err(domain)?;
                q = next;
                involutive.push(inv);
            }
            Ok(json!({ "quiver": json::quiver(&q), "weight_involutive": involutive }))
        }
        Command::Quiver(QuiverCommand::Periodic {
            quiver,
            bound,
            seq,
            perm,
        }) => {
            let q = read_quiver(quiver)?;
            let n = q.len();
            let seq = if seq.is_empty() {
                vec![0]
            } else {
                zero_based(seq, n, "vertex")?
            };
            let perm = if perm.is_empty() {
                (0..n).map(|i| (i + 1) % n).collect()
            } else {
                zero_based(perm, n, "vertex")?
            };
            if *bound < 0 {
                return Err(usage("--box must be nonnegative"));
            }
            let sols = wquiver::find_periodic_weights(&q, &seq, &perm, *bound).map_err(domain)?;
            Ok(json!({ "count": sols.len(), "solutions": sols }))
        }
        Command::Kahler(KahlerCommand::Check {
            group,
            c,
            samples,
            seed,
        }) => {
            let g = Group::parse(group).map_err(usage)?;
            let spec = PotentialSpec::new(g, c.clone()).map_err(domain)?;
            let r = kahler::sweep(&spec, *samples, *seed).map_err(domain)?;
            Ok(json!({
                "group": group.to_ascii_lowercase(),
                "c": c,
                "samples": r.samples,
                "seed": r.seed,
                "posdef": r.posdef,
                "negdef": r.negdef,
                "min_eig": json::float(r.min_eig),
                "max_eig": json::float(r.max_eig),
                "max_residual_below_tolerance": r.max_residual < kahler::HERMITIAN_TOLERANCE,
            }))
        }
        Command::Serve(_) => Err(usage("serve does not produce a document")),
    }
}

pub fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("serializable")
    } else {
        v.to_string()
    }
}
