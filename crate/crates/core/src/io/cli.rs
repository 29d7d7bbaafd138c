//! Subcommand dispatch and the command-line front end.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::algebra::scalar::format_rational;
use crate::algebra::Matrix;
use crate::asymptotics::{convergence_check, membership_scan, NilpotentOrbit, ParabolicDescriptor};
use crate::boundary::boundary_report;
use crate::error::Error;
use crate::hodge::domain_dimensions;
use crate::lie::restricted::{restricted_id, Field};
use crate::lie::sigma::rank_s;
use crate::lie::Structure;
use crate::nilpotent::{
    canonical_parabolic, horizontality_check, jm_triple, nilpotent_from_coefficients, restricted_coefficients, sl2_decompose_y,
    weight_filtration_g, weight_filtration_h, weighted_dynkin, DynkinNode, Space,
};
use crate::par::Exec;

use super::docs::*;
use super::render::render_text;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "kebab-case")]
pub enum Command {
    /// Dimensions of the period domain and its compact dual.
    DescribeDomain,
    /// Complex roots with Hodge degrees, and restricted roots.
    Roots,
    /// The strongly orthogonal set and the Cayley transform.
    Sigma,
    /// Dimensions of the Hodge grading of the Lie algebra.
    Grading,
    /// Weight filtration of a nilpotent on `H` or on the Lie algebra.
    WeightFiltration,
    /// Canonical parabolic of a nilpotent.
    Parabolic,
    /// Weighted Dynkin diagram of a nilpotent.
    Dynkin,
    /// Horizontality of a nilpotent by both criteria.
    Horizontal,
    /// Boundary data: induced forms, primitive parts, limit Hodge numbers.
    BoundaryReport,
    /// Membership of `exp(iyN) F` in the period domain over a grid of `y`.
    OrbitCheck,
    /// Convergence diagnostic for a horospherical sequence.
    ConvergeCheck,
    /// Siegel set membership.
    Siegel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum)]
pub enum FieldArg {
    #[default]
    #[value(name = "Q")]
    Q,
    #[value(name = "R")]
    R,
}

#[derive(Parser, Debug)]
#[command(name = "hodgerbs", version, about = "Exact computations on period domains and their boundary components")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Input JSON document.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Center of the weight filtration (default: m on H, 0 on the algebra).
    #[arg(long, allow_negative_numbers = true)]
    pub center: Option<i64>,
    /// Field of definition for the restricted root system.
    #[arg(long, value_enum, default_value_t = FieldArg::Q)]
    pub field: FieldArg,
    /// Run batch steps sequentially.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub center: Option<i64>,
    pub field: Field,
    pub exec: Exec,
}

impl Default for Options {
    fn default() -> Self {
        Options { center: None, field: Field::Rational, exec: Exec::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Schema(SchemaError),
    Domain(Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Schema(_) => 2,
            Failure::Domain(_) => 1,
        }
    }

    pub fn document(&self) -> ErrorOut {
        match self {
            Failure::Schema(e) => ErrorOut { kind: "schema", path: Some(e.path.clone()), message: e.message.clone() },
            Failure::Domain(e) => ErrorOut { kind: "domain", path: None, message: e.to_string() },
        }
    }
}

impl From<SchemaError> for Failure {
    fn from(e: SchemaError) -> Self {
        Failure::Schema(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// The output of one job as pretty JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: Command,
    pub json: String,
}

impl Report {
    fn new<T: Serialize>(command: Command, doc: &T) -> Self {
        let json = serde_json::to_string_pretty(doc).expect("output documents serialize");
        Report { command, json }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", self.json),
            Format::Text => render_text(self.command, &self.json),
        }
    }
}

fn load<T: serde::de::DeserializeOwned + Validate>(input: &str) -> Result<T, Failure> {
    let doc: T = parse(input)?;
    doc.validate()?;
    Ok(doc)
}

fn structure(doc_h: crate::hodge::HodgeNumbers, opts: &Options) -> Result<Structure, Failure> {
    Ok(Structure::build_with(&doc_h, opts.field, opts.exec)?)
}

fn resolve_nilpotent(st: &Structure, spec: &NilpotentSpec) -> Result<Matrix, Failure> {
    if let Some(m) = &spec.matrix {
        return Ok(m.clone());
    }
    let coeffs: Vec<(String, Vec<crate::algebra::Rational>)> =
        spec.coefficients.iter().flatten().map(|(k, v)| (k.clone(), v.values())).collect();
    Ok(nilpotent_from_coefficients(st, &coeffs)?)
}

fn node(n: &DynkinNode, id: String) -> NodeOut {
    NodeOut { id, value: format_rational(&n.value), label: format_rational(&n.label()) }
}

fn root_out(st: &Structure, coords: &[i64]) -> RootOut {
    let r = st.sys.root(coords).expect("root of the system");
    RootOut { id: r.id(), coords: r.coords.clone(), degree: r.degree, multiplicity: 1, compact: r.is_compact() }
}

/// Runs one subcommand on an input document.
pub fn run(command: Command, input: &str, opts: &Options) -> Result<Report, Failure> {
    use Command::*;
    match command {
        DescribeDomain => {
            let doc: DomainDoc = load(input)?;
            let h = doc.hodge();
            let d = domain_dimensions(&h)?;
            let sys = crate::lie::GradedSystem::build_with(&h, opts.exec)?;
            let out = DomainOut {
                m: h.m,
                h: h.h.clone(),
                dim_h: h.dim(),
                dim_d_complex: d.dim_c_d,
                dim_check_d_complex: d.dim_c_check_d,
                dim_d_real: d.dim_r_d,
                dim_g: d.dim_g,
                dim_v: d.dim_v,
                rank_t: sys.rank(),
                rank_s: rank_s(&h),
            };
            Ok(Report::new(command, &out))
        }
        Roots => {
            let doc: DomainDoc = load(input)?;
            let st = structure(doc.hodge(), opts)?;
            let roots = st.sys.roots.iter().map(|r| root_out(&st, &r.coords)).collect();
            let restricted = st
                .restricted
                .roots
                .iter()
                .map(|r| RestrictedOut {
                    id: r.id(),
                    coords: r.coords.clone(),
                    degrees: r.degrees.iter().copied().collect(),
                    multiplicity: r.multiplicity,
                    preimages: r.preimages.iter().map(|p| crate::lie::roots::root_id(p)).collect(),
                })
                .collect();
            Ok(Report::new(command, &RootsOut { roots, restricted }))
        }
        Sigma => {
            let doc: DomainDoc = load(input)?;
            let st = structure(doc.hodge(), opts)?;
            let out = SigmaOut {
                rank_s: st.sigma.len(),
                sigma: st.sigma.roots.iter().map(|c| root_out(&st, c)).collect(),
                y_basis: st.sigma.y_basis(),
                cayley: st.cayley.c.clone(),
            };
            Ok(Report::new(command, &out))
        }
        Grading => {
            let doc: DomainDoc = load(input)?;
            let sys = crate::lie::GradedSystem::build_with(&doc.hodge(), opts.exec)?;
            let dims = sys.grading.dims();
            let dim_k = dims.iter().filter(|(r, _)| *r % 2 == 0).map(|(_, d)| d).sum();
            let dim_p = dims.iter().filter(|(r, _)| *r % 2 != 0).map(|(_, d)| d).sum();
            let mut roots_by_degree = std::collections::BTreeMap::<i64, Vec<String>>::new();
            for r in &sys.roots {
                roots_by_degree.entry(r.degree).or_default().push(r.id());
            }
            Ok(Report::new(command, &GradingOut { dims, dim_k, dim_p, roots_by_degree }))
        }
        WeightFiltration | Parabolic | Dynkin | Horizontal | BoundaryReport => {
            let doc: NilpotentDoc = load(input)?;
            let st = structure(doc.hodge(), opts)?;
            let n = resolve_nilpotent(&st, &doc.nilpotent)?;
            if command == BoundaryReport {
                let f = doc.filtration.as_ref().map(|f| f.filtration(&doc.hodge()));
                let center = opts.center.unwrap_or(doc.m as i64);
                let report = boundary_report(&st, &n, f.as_ref(), center, opts.exec)?;
                return Ok(Report::new(command, &report));
            }
            let alg = &st.sys.algebra;
            let triple = jm_triple(alg, &n, &st.sigma.y_basis())?;
            match command {
                WeightFiltration => {
                    let space: Space = doc.space.unwrap_or(SpaceName::H).into();
                    let w = match space {
                        Space::H => weight_filtration_h(&triple, opts.center.unwrap_or(doc.m as i64))?,
                        Space::G => {
                            let w = weight_filtration_g(alg, &triple)?;
                            match opts.center {
                                Some(c) if c != 0 => {
                                    crate::nilpotent::WeightFiltration::from_grading(Space::G, &alg.ad(&triple.y), c)?
                                }
                                _ => w,
                            }
                        }
                    };
                    let gr_dims = w.gr_dims();
                    let (lo, hi) = w.range();
                    let out = WeightFiltrationOut {
                        space: w.space,
                        center: w.center,
                        jumps: gr_dims.iter().filter(|(_, d)| **d > 0).map(|(k, _)| *k).collect(),
                        gr_dims: gr_dims.into_iter().filter(|(_, d)| *d > 0).collect(),
                        w_dims: (lo..=hi).map(|k| (k, w.get(k).dim())).collect(),
                        y: triple.y.clone(),
                        n_plus: triple.n_plus.clone(),
                    };
                    Ok(Report::new(command, &out))
                }
                Parabolic => {
                    let p = canonical_parabolic(&st, &triple)?;
                    let double = p.q == p.levi.sum(&p.u);
                    let out = ParabolicOut {
                        y_coords: rationals(&p.y_coords),
                        simple: p.simple.iter().map(|s| node(s, restricted_id(&s.root))).collect(),
                        i_set: p.i_set.iter().map(|r| restricted_id(r)).collect(),
                        a_i_coords: p.a_i_coords.iter().map(|c| rationals(c)).collect(),
                        dim_q: p.q.dim(),
                        dim_levi: p.levi.dim(),
                        dim_u: p.u.dim(),
                        dim_m_q: p.m_q.dim(),
                        double_construction: double,
                        siegel_descriptor: ParabolicDescriptor::from_parabolic(&p),
                    };
                    Ok(Report::new(command, &out))
                }
                Dynkin => {
                    let d = weighted_dynkin(&st, &triple)?;
                    let out = DynkinOut {
                        complex: d.complex.iter().map(|s| node(s, crate::lie::roots::root_id(&s.root))).collect(),
                        restricted: d.restricted.iter().map(|s| node(s, restricted_id(&s.root))).collect(),
                        admissible: d.labels_admissible(),
                    };
                    Ok(Report::new(command, &out))
                }
                Horizontal => {
                    let h = horizontality_check(&st, &triple)?;
                    let coefficients = match restricted_coefficients(&st, &n) {
                        Ok(c) => c.into_iter().map(|(a, v)| (restricted_id(&a), rationals(&v))).collect(),
                        Err(Error::DecompositionUnavailable) => Default::default(),
                        Err(e) => return Err(e.into()),
                    };
                    let decomposition = match sl2_decompose_y(&st, &triple) {
                        Ok(d) => Some(DecompositionOut {
                            sigma_phi: d.sigma_phi_ids(),
                            coefficients: d.coefficients,
                            cayley_identity: d.cayley_identity,
                        }),
                        Err(Error::NotAlignedWithSigma | Error::NotInCartan) => None,
                        Err(e) => return Err(e.into()),
                    };
                    let out = HorizontalOut {
                        coefficients,
                        contributions: h
                            .contributions
                            .iter()
                            .map(|c| ContributionOut {
                                root: crate::lie::roots::root_id(&c.root),
                                degree: c.degree,
                                restricted: restricted_id(&c.restricted),
                                in_degree_minus_one: c.in_degree_minus_one,
                            })
                            .collect(),
                        x_plus_degrees: h.x_plus_degrees.clone(),
                        root_criterion: h.root_criterion,
                        direct_criterion: h.direct_criterion,
                        horizontal: h.horizontal(),
                        decomposition,
                    };
                    Ok(Report::new(command, &out))
                }
                _ => unreachable!(),
            }
        }
        OrbitCheck => {
            let doc: OrbitDoc = load(input)?;
            let h = doc.hodge();
            let st = structure(h.clone(), opts)?;
            let n = resolve_nilpotent(&st, &doc.nilpotent)?;
            let lattice = &st.sys.reference.lattice;
            let orbit = NilpotentOrbit::new(n, doc.filtration.filtration(&h), lattice)?;
            let scan = membership_scan(&orbit, lattice, &doc.y_grid, opts.exec)?;
            let out = OrbitOut {
                horizontal: orbit.is_horizontal(),
                memberships: scan.samples.iter().map(|(y, b)| MembershipOut { y: format_rational(y), in_d: *b }).collect(),
                threshold: scan.threshold.as_ref().map(format_rational),
            };
            Ok(Report::new(command, &out))
        }
        ConvergeCheck => {
            let doc: ConvergeDoc = load(input)?;
            Ok(Report::new(command, &convergence_check(&doc.sequence, &doc.policy)?))
        }
        Siegel => {
            let doc: SiegelDoc = load(input)?;
            let d = doc.descriptor();
            let values = d.values(&doc.log_a)?;
            let member = values.iter().all(|v| v > &doc.t);
            Ok(Report::new(command, &SiegelOut { values: rationals(&values), t: format_rational(&doc.t), member }))
        }
    }
}

/// Parses arguments, runs the job and returns `(stdout, stderr, exit code)`.
pub fn execute<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 { (e.to_string(), String::new(), 0) } else { (String::new(), e.to_string(), 2) };
        }
    };
    let opts = Options {
        center: cli.center,
        field: match cli.field {
            FieldArg::Q => Field::Rational,
            FieldArg::R => Field::Real,
        },
        exec: if cli.sequential { Exec::Sequential } else { Exec::Parallel },
    };
    let input = match std::fs::read_to_string(&cli.input) {
        Ok(s) => s,
        Err(e) => return (String::new(), format!("cannot read {}: {e}\n", cli.input.display()), 2),
    };
    match run(cli.command, &input, &opts) {
        Ok(report) => (report.render(cli.format), String::new(), 0),
        Err(f) => {
            let doc = f.document();
            let msg = match &doc.path {
                Some(p) => format!("error: {} (at `{p}`)\n", doc.message),
                None => format!("error: {}\n", doc.message),
            };
            let out = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&serde_json::json!({ "error": doc })).expect("error document")),
                Format::Text => String::new(),
            };
            (out, msg, f.exit_code())
        }
    }
}
