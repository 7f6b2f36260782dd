use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::chains::{
    chain_volume, filling_lp, isoperimetric_check, isoperimetric_constants, rank_certificate, regularity_constant_a,
    ChainDocument, CubicalChain, FillingSummary, IsoperimetricConstants, IsoperimetricReport, RankCertificate,
    RegularityConstant,
};
use crate::cubical::{
    build_extension_on_graph, embed_nodes, injectivity_check, lipschitz_report, ComplexDocument, CubeComplex,
    ExtensionCensus, ExtensionParams, InjectivityReport, LipschitzReport,
};
use crate::homotopy::{
    relative_systole, systolic_ratio, EdgeHomomorphism, GroupPresentation, HomomorphismDocument, Normality,
    PresentationDocument, SystoleOptions, SystoleResult,
};
use crate::mesh::{total_volume, MeshDocument, PlMetric, Pseudomanifold};
use crate::metric::{
    alpha_dense_net, ball_volume_profile, ball_volume_profiles, certify_net, hausdorff_distance, net_distortion_report,
    write_profile_csv, DistortionReport, EpsilonNet, FiniteMetric, GeodesicGraph, PairSelection,
};
use crate::par::Execution;
use crate::regularity::{
    coarea_from_profile, epsilon_regular_verdict, gromov_constant, maximal_packing, nerve_count_bound_check,
    nerve_of_cover, CoareaReport, NerveBoundReport, NerveComplex, RegularityReport,
};

use super::args::{Cli, Command, ExtensionArgs, MeshArgs, PhiArgs, RunConfig};
use super::Failure;

type Outcome = Result<String, Failure>;

const EXEC: Execution = Execution::Parallel;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn malformed<T>(message: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Malformed(message.into()))
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    config: &'a RunConfig,
    #[serde(flatten)]
    result: T,
}

fn report<T: Serialize>(config: &RunConfig, result: T) -> Outcome {
    let mut s = serde_json::to_string_pretty(&Report { config, result })
        .map_err(|e| Failure::Malformed(format!("cannot serialize report: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn load_mesh(args: &MeshArgs) -> Result<(Pseudomanifold, PlMetric), Failure> {
    let doc: MeshDocument = read_json(&args.mesh)?;
    Ok(doc.build()?)
}

fn load_phi(phi: &Path, presentation: Option<&Path>, v: &Pseudomanifold) -> Result<EdgeHomomorphism, Failure> {
    let doc: HomomorphismDocument = read_json(phi)?;
    let pdoc = match (presentation, &doc.presentation) {
        (Some(p), _) => read_json::<PresentationDocument>(p)?,
        (None, Some(p)) => p.clone(),
        (None, None) => return malformed("the homomorphism has no presentation; pass --presentation"),
    };
    let pi = GroupPresentation::from_document(&pdoc)?;
    Ok(EdgeHomomorphism::from_document(&doc, pi, v.complex())?)
}

fn systole_options(phi: &PhiArgs) -> SystoleOptions {
    SystoleOptions { max_states: phi.max_states, exec: EXEC, ..Default::default() }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum NetInput {
    List(Vec<usize>),
    Object { nodes: Vec<usize> },
}

fn load_net(path: &Path, graph: &GeodesicGraph) -> Result<EpsilonNet, Failure> {
    let nodes = match read_json::<NetInput>(path)? {
        NetInput::List(n) | NetInput::Object { nodes: n } => n,
    };
    Ok(certify_net(graph, &nodes, f64::INFINITY)?.0)
}

fn dimension_constant(cli: &Cli, n: usize) -> Result<f64, Failure> {
    cli.global.c(n).map_or_else(|| malformed(format!("no --c{n} flag; dimensions 1..=6 are supported")), Ok)
}

pub(super) fn dispatch(cli: &Cli) -> Outcome {
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.workers.unwrap_or(0))
            .build()
            .map_err(|e| Failure::Malformed(format!("cannot start workers: {e}")))?;
        pool.install(|| execute(cli))
    }
    #[cfg(not(feature = "parallel"))]
    execute(cli)
}

fn execute(cli: &Cli) -> Outcome {
    let config = RunConfig { global: cli.global.clone(), command: cli.command.clone() };
    log::info!("running {}", cli.command.name());
    let k = cli.global.subdivision;
    if k == 0 {
        return malformed("--subdivision must be at least 1");
    }
    match &cli.command {
        Command::Validate(mesh) => validate(&config, mesh),
        Command::Volume { mesh, center, radii, a_n } => volume(&config, mesh, *center, radii.as_deref(), *a_n, k),
        Command::Systole { mesh, phi } => systole(&config, mesh, phi, k),
        Command::Ratio { mesh, phi, a_n } => ratio(&config, mesh, phi, *a_n, k),
        Command::Net { mesh, alpha, nodes } => net(&config, mesh, *alpha, nodes.as_deref(), k),
        Command::Extend { mesh, ext } => extend(&config, mesh, ext, k),
        Command::EmbedReport { mesh, ext, pairs, seed, tol } => embed_report(&config, mesh, ext, *pairs, *seed, *tol, k),
        Command::Fill { complex, chain } => fill(&config, complex, chain),
        Command::IsoCheck { complex, chain } => iso_check(cli, &config, complex, chain),
        Command::Regularity { mesh, phi, presentation, sys, eps, a_n, shift, centers, steps, csv_dir } => {
            let phi = phi.as_deref().map(|p| (p, presentation.as_deref()));
            let grid = GridArgs { sys: *sys, eps: *eps, a_n: *a_n, shift: *shift, steps: *steps };
            regularity(&config, mesh, phi, grid, centers.as_deref(), csv_dir.as_deref(), k)
        }
        Command::Nerve { mesh, r0, a_n, cap, centers } => nerve(&config, mesh, *r0, *a_n, *cap, centers.as_deref(), k),
        Command::Hausdorff { mesh, a, b } => hausdorff(&config, mesh, a, b, k),
        Command::Constants { n } => constants(cli, &config, *n),
    }
}

#[derive(Serialize)]
struct ValidateReport {
    valid: bool,
    dim: usize,
    counts: Vec<usize>,
    orientable: bool,
    total_volume: f64,
}

fn validate(config: &RunConfig, mesh: &MeshArgs) -> Outcome {
    let (v, g) = load_mesh(mesh)?;
    let vol = total_volume(&v, &g)?;
    report(
        config,
        ValidateReport { valid: true, dim: v.dim(), counts: v.complex().counts(), orientable: v.orientable(), total_volume: vol },
    )
}

fn volume(config: &RunConfig, mesh: &MeshArgs, center: Option<usize>, radii: Option<&[f64]>, a_n: f64, k: usize) -> Outcome {
    let (v, g) = load_mesh(mesh)?;
    let Some(center) = center else {
        #[derive(Serialize)]
        struct VolumeReport {
            total_volume: f64,
            dim: usize,
            top_simplices: usize,
        }
        let total = total_volume(&v, &g)?;
        return report(config, VolumeReport { total_volume: total, dim: v.dim(), top_simplices: v.top_simplices().count() });
    };
    let Some(radii) = radii else {
        return malformed("--center needs --radii");
    };
    let graph = GeodesicGraph::new(&v, &g, k)?;
    let profile = ball_volume_profile(&graph, center, radii)?;
    let mut buf = Vec::new();
    write_profile_csv(&mut buf, &profile, a_n, v.dim()).map_err(|e| Failure::Malformed(e.to_string()))?;
    String::from_utf8(buf).map_err(|e| Failure::Malformed(e.to_string()))
}

#[derive(Serialize)]
struct SystoleReport {
    systole: f64,
    holonomy: Option<String>,
    normality: Normality,
    result: SystoleResult,
}

fn compute_systole(v: &Pseudomanifold, g: &PlMetric, phi: &PhiArgs, k: usize) -> Result<SystoleReport, Failure> {
    let hom = load_phi(&phi.phi, phi.presentation.as_deref(), v)?;
    let graph = GeodesicGraph::new(v, g, k)?;
    let result = relative_systole(&graph, &hom, &systole_options(phi))?;
    Ok(SystoleReport {
        systole: result.value,
        holonomy: result.witness.as_ref().map(|w| hom.presentation().format(&w.holonomy)),
        normality: hom.normality(),
        result,
    })
}

fn systole(config: &RunConfig, mesh: &MeshArgs, phi: &PhiArgs, k: usize) -> Outcome {
    let (v, g) = load_mesh(mesh)?;
    report(config, compute_systole(&v, &g, phi, k)?)
}

#[derive(Serialize)]
struct GromovComparison {
    a_n: f64,
    c_n: f64,
    ratio_at_least_c_n: bool,
}

#[derive(Serialize)]
struct RatioReport {
    volume: f64,
    systole: f64,
    dim: usize,
    ratio: f64,
    gromov: Option<GromovComparison>,
}

fn ratio(config: &RunConfig, mesh: &MeshArgs, phi: &PhiArgs, a_n: Option<f64>, k: usize) -> Outcome {
    let (v, g) = load_mesh(mesh)?;
    let sys = compute_systole(&v, &g, phi, k)?;
    let vol = total_volume(&v, &g)?;
    let r = systolic_ratio(vol, sys.systole, v.dim())?;
    let gromov = match a_n {
        Some(a) => {
            let c_n = gromov_constant(a, v.dim())?;
            Some(GromovComparison { a_n: a, c_n, ratio_at_least_c_n: r >= c_n })
        }
        None => None,
    };
    report(config, RatioReport { volume: vol, systole: sys.systole, dim: v.dim(), ratio: r, gromov })
}

#[derive(Serialize)]
struct NetReport {
    #[serde(flatten)]
    net: EpsilonNet,
    requested_alpha: f64,
    certified: bool,
}

fn net(config: &RunConfig, mesh: &MeshArgs, alpha: f64, nodes: Option<&[usize]>, k: usize) -> Outcome {
    let (v, g) = load_mesh(mesh)?;
    let graph = GeodesicGraph::new(&v, &g, k)?;
    let (net, certified) = match nodes {
        Some(n) => certify_net(&graph, n, alpha)?,
        None => (alpha_dense_net(&graph, alpha)?, true),
    };
    report(config, NetReport { net, requested_alpha: alpha, certified })
}

#[derive(Serialize)]
struct ExtendReport {
    #[serde(flatten)]
    complex: ComplexDocument,
    census: ExtensionCensus,
    net: EpsilonNet,
}

fn extension_setup(mesh: &MeshArgs, ext: &ExtensionArgs, k: usize) -> Result<(GeodesicGraph, EpsilonNet, ExtensionParams<f64>), Failure> {
    let (v, g) = load_mesh(mesh)?;
    let graph = GeodesicGraph::new(&v, &g, k)?;
    let net = load_net(&ext.net, &graph)?;
    let params = ExtensionParams::new(ext.eps, ext.delta)?;
    Ok((graph, net, params))
}

fn extend(config: &RunConfig, mesh: &MeshArgs, ext: &ExtensionArgs, k: usize) -> Outcome {
    let (graph, net, params) = extension_setup(mesh, ext, k)?;
    let e = build_extension_on_graph(&graph, &net, &params, ext.snap_tol, EXEC)?;
    report(config, ExtendReport { complex: e.complex.to_document(), census: e.census, net })
}

#[derive(Serialize)]
struct EmbedReport {
    lipschitz: LipschitzReport,
    injectivity: InjectivityReport,
    distortion: DistortionReport,
    net: EpsilonNet,
}

fn embed_report(
    config: &RunConfig,
    mesh: &MeshArgs,
    ext: &ExtensionArgs,
    pairs: Option<usize>,
    seed: u64,
    tol: f64,
    k: usize,
) -> Outcome {
    let (graph, net, params) = extension_setup(mesh, ext, k)?;
    let images = embed_nodes(&graph, &net, &params, EXEC)?;
    let selection = pairs.map_or(PairSelection::All, |count| PairSelection::Sample { count, seed });
    let scaled = |u: usize, w: usize| graph.distance(u, w).unwrap_or(f64::INFINITY) / params.delta;
    let lipschitz = lipschitz_report(&images, scaled, params.eps, selection, tol);
    let injectivity = injectivity_check(&images, scaled, params.eps, selection, tol);
    let distortion = net_distortion_report(&graph, &net, 0.5, selection, tol)?;
    report(config, EmbedReport { lipschitz, injectivity, distortion, net })
}

fn load_chain(complex: &Path, chain: &Path) -> Result<(CubeComplex, CubicalChain), Failure> {
    let kdoc: ComplexDocument = read_json(complex)?;
    let cdoc: ChainDocument = read_json(chain)?;
    let k = CubeComplex::from_document(&kdoc)?;
    let z = CubicalChain::from_document(&cdoc, k.ambient_dim())?;
    Ok((k, z))
}

#[derive(Serialize)]
struct FillReport {
    cycle_volume: f64,
    filling: FillingSummary,
    rank_certificate: RankCertificate,
}

fn fill(config: &RunConfig, complex: &Path, chain: &Path) -> Outcome {
    let (k, z) = load_chain(complex, chain)?;
    let lp_tol = config.global.lp_tol;
    let result = filling_lp(&z, &k, lp_tol)?;
    let cert = rank_certificate(&z, &k)?;
    report(config, FillReport { cycle_volume: chain_volume(&z), filling: result.summary(), rank_certificate: cert })
}

#[derive(Serialize)]
struct IsoReport {
    #[serde(flatten)]
    check: IsoperimetricReport,
    filling: FillingSummary,
}

fn iso_check(cli: &Cli, config: &RunConfig, complex: &Path, chain: &Path) -> Outcome {
    let (k, z) = load_chain(complex, chain)?;
    let n = z.degree();
    let consts = isoperimetric_constants(n, dimension_constant(cli, n)?)?;
    let result = filling_lp(&z, &k, config.global.lp_tol)?;
    let check = isoperimetric_check(&z, &result, &consts);
    report(config, IsoReport { check, filling: result.summary() })
}

struct GridArgs {
    sys: Option<f64>,
    eps: f64,
    a_n: f64,
    shift: Option<f64>,
    steps: usize,
}

#[derive(Serialize)]
struct GromovCheck {
    c_n: f64,
    ratio: f64,
    ratio_at_least_c_n: bool,
}

#[derive(Serialize)]
struct RegularityOutput {
    systole: f64,
    radii: Vec<f64>,
    epsilon_regular: RegularityReport,
    coarea: Vec<CoareaReport>,
    coarea_pass: bool,
    gromov: Option<GromovCheck>,
}

fn regularity(
    config: &RunConfig,
    mesh: &MeshArgs,
    phi: Option<(&Path, Option<&Path>)>,
    grid: GridArgs,
    centers: Option<&[usize]>,
    csv_dir: Option<&Path>,
    k: usize,
) -> Outcome {
    let (v, g) = load_mesh(mesh)?;
    let graph = GeodesicGraph::new(&v, &g, k)?;
    let sys = match (grid.sys, phi) {
        (Some(s), _) => s,
        (None, Some((p, pres))) => {
            let hom = load_phi(p, pres, &v)?;
            relative_systole(&graph, &hom, &SystoleOptions { exec: EXEC, ..Default::default() })?.value
        }
        (None, None) => return malformed("regularity needs --sys or --phi"),
    };
    if grid.steps < 2 {
        return malformed("--steps must be at least 2");
    }
    if !sys.is_finite() {
        return Err(crate::homotopy::HomotopyError::InfiniteSystole.into());
    }
    let n = v.dim();
    let radii: Vec<f64> = (0..=grid.steps).map(|i| 0.5 * sys * i as f64 / grid.steps as f64).collect();
    let centers: Vec<usize> = match centers {
        Some(c) => c.to_vec(),
        None => v.complex().vertices().filter_map(|x| graph.vertex_node(x)).collect(),
    };
    let profiles = ball_volume_profiles(&graph, &centers, &radii, EXEC)?;
    let verdict = epsilon_regular_verdict(&profiles, sys, grid.eps, grid.a_n, n, grid.shift)?;
    let coarea = profiles
        .iter()
        .map(|p| coarea_from_profile(p.center, &p.radii, &p.volumes, &p.error_bounds))
        .collect::<Result<Vec<_>, _>>()?;
    let gromov = if grid.a_n > 0.0 {
        let c_n = gromov_constant(grid.a_n, n)?;
        let r = systolic_ratio(graph.total_volume(), sys, n)?;
        Some(GromovCheck { c_n, ratio: r, ratio_at_least_c_n: r >= c_n })
    } else {
        None
    };
    if let Some(dir) = csv_dir {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Malformed(format!("{}: {e}", dir.display())))?;
        for p in &profiles {
            let path = dir.join(format!("profile-{}.csv", p.center));
            let file = std::fs::File::create(&path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
            write_profile_csv(file, p, grid.a_n, n).map_err(|e| Failure::Malformed(e.to_string()))?;
        }
    }
    report(
        config,
        RegularityOutput {
            systole: sys,
            radii,
            coarea_pass: coarea.iter().all(|c| c.pass),
            epsilon_regular: verdict,
            coarea,
            gromov,
        },
    )
}

#[derive(Serialize)]
struct NerveOutput {
    nerve: NerveComplex,
    bound: NerveBoundReport,
}

fn nerve(config: &RunConfig, mesh: &MeshArgs, r0: f64, a_n: f64, cap: usize, centers: Option<&[usize]>, k: usize) -> Outcome {
    let (v, g) = load_mesh(mesh)?;
    let graph = GeodesicGraph::new(&v, &g, k)?;
    let centers = match centers {
        Some(c) => c.to_vec(),
        None => maximal_packing(&graph, r0)?,
    };
    let nerve = nerve_of_cover(&graph, &centers, r0, cap)?;
    let profiles = ball_volume_profiles(&graph, &centers, &[r0], EXEC)?;
    let bound = nerve_count_bound_check(&nerve, graph.total_volume(), a_n, v.dim(), &profiles)?;
    report(config, NerveOutput { nerve, bound })
}

fn hausdorff(config: &RunConfig, mesh: &MeshArgs, a: &[usize], b: &[usize], k: usize) -> Outcome {
    #[derive(Serialize)]
    struct HausdorffReport {
        hausdorff: f64,
        nodes: usize,
    }
    let (v, g) = load_mesh(mesh)?;
    let graph = GeodesicGraph::new(&v, &g, k)?;
    let d = hausdorff_distance(&graph, a, b)?;
    report(config, HausdorffReport { hausdorff: d, nodes: graph.len() })
}

#[derive(Serialize)]
struct ConstantsReport {
    constants: Vec<IsoperimetricConstants>,
    regularity_constant: Option<RegularityConstant>,
}

fn constants(cli: &Cli, config: &RunConfig, n: usize) -> Outcome {
    if n == 0 {
        return malformed("--n must be at least 1");
    }
    let consts = (1..=n)
        .map(|d| Ok(isoperimetric_constants(d, dimension_constant(cli, d)?)?))
        .collect::<Result<Vec<_>, Failure>>()?;
    let regularity_constant = if n >= 2 {
        Some(regularity_constant_a(n, dimension_constant(cli, n - 1)?, dimension_constant(cli, n)?)?)
    } else {
        None
    };
    report(config, ConstantsReport { constants: consts, regularity_constant })
}
