use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

/// Parses `"p/q"` or a decimal.
pub fn parse_ratio(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
            let q: f64 = q.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
            if q == 0.0 {
                return Err(format!("zero denominator in `{s}`"));
            }
            p / q
        }
        None => s.parse().map_err(|_| format!("`{s}` is not a number"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}


#[derive(Debug, Parser)]
#[command(name = "systolekit", version, about = "Systolic geometry on piecewise-flat pseudomanifolds")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// Worker threads; defaults to the number of cores. Never changes results.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub workers: Option<usize>,
    /// Subdivision level of the chord graph.
    #[arg(long, global = true, default_value_t = 4)]
    pub subdivision: usize,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// LP tolerance for filling volumes.
    #[arg(long = "lp-tol", global = true, default_value_t = 1e-9)]
    pub lp_tol: f64,
    /// Filling constant `C_1`.
    #[arg(long, global = true, default_value_t = 1.0, value_parser = parse_ratio)]
    pub c1: f64,
    /// `C_2`.
    #[arg(long, global = true, default_value_t = 1.0, value_parser = parse_ratio)]
    pub c2: f64,
    /// `C_3`.
    #[arg(long, global = true, default_value_t = 1.0, value_parser = parse_ratio)]
    pub c3: f64,
    /// `C_4`.
    #[arg(long, global = true, default_value_t = 1.0, value_parser = parse_ratio)]
    pub c4: f64,
    /// `C_5`.
    #[arg(long, global = true, default_value_t = 1.0, value_parser = parse_ratio)]
    pub c5: f64,
    /// `C_6`.
    #[arg(long, global = true, default_value_t = 1.0, value_parser = parse_ratio)]
    pub c6: f64,
}

impl GlobalArgs {
    /// `C_n` for `1 <= n <= 6`.
    pub fn c(&self, n: usize) -> Option<f64> {
        [self.c1, self.c2, self.c3, self.c4, self.c5, self.c6].get(n.checked_sub(1)?).copied()
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MeshArgs {
    /// Mesh JSON.
    #[arg(long)]
    pub mesh: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PhiArgs {
    /// Homomorphism JSON.
    #[arg(long)]
    pub phi: PathBuf,
    /// Presentation JSON, when the homomorphism does not embed one.
    #[arg(long)]
    pub presentation: Option<PathBuf>,
    /// Lifted states settled per base node before giving up.
    #[arg(long = "max-states", default_value_t = 2_000_000)]
    pub max_states: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExtensionArgs {
    /// Net JSON: a list of node ids or `{"nodes": [...]}`.
    #[arg(long)]
    pub net: PathBuf,
    /// Collar width, `0 < eps < 1/2`; accepts `p/q`.
    #[arg(long, value_parser = parse_ratio)]
    pub eps: f64,
    /// Distance clamp; accepts `p/q`.
    #[arg(long, default_value_t = 1.0, value_parser = parse_ratio)]
    pub delta: f64,
    /// Coordinates this close to 0 or 1 count as fixed. The default absorbs
    /// the rounding in a four-digit decimal `--eps`.
    #[arg(long = "snap-tol", default_value_t = 1e-3)]
    pub snap_tol: f64,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Check the pseudomanifold axioms and the metric.
    Validate(MeshArgs),
    /// Total volume, or a ball-volume profile CSV with `--center`.
    Volume {
        #[command(flatten)]
        mesh: MeshArgs,
        /// Node id of the ball center.
        #[arg(long)]
        center: Option<usize>,
        /// Comma-separated radii.
        #[arg(long, value_delimiter = ',', value_parser = parse_ratio)]
        radii: Option<Vec<f64>>,
        /// `A_n` for the CSV lower-bound column.
        #[arg(long = "a-n", default_value_t = 0.0, value_parser = parse_ratio)]
        a_n: f64,
    },
    /// Relative systole.
    Systole {
        #[command(flatten)]
        mesh: MeshArgs,
        #[command(flatten)]
        phi: PhiArgs,
    },
    /// Systolic ratio `vol / sys^n`, compared with `A_n / 2^n` when `--a-n` is given.
    Ratio {
        #[command(flatten)]
        mesh: MeshArgs,
        #[command(flatten)]
        phi: PhiArgs,
        /// `A_n` for the comparison with `A_n / 2^n`.
        #[arg(long = "a-n", value_parser = parse_ratio)]
        a_n: Option<f64>,
    },
    /// Greedy α-dense net, or certification of `--nodes`.
    Net {
        #[command(flatten)]
        mesh: MeshArgs,
        /// Target covering radius; accepts `p/q`.
        #[arg(long, value_parser = parse_ratio)]
        alpha: f64,
        /// Candidate net to certify instead of building one.
        #[arg(long, value_delimiter = ',')]
        nodes: Option<Vec<usize>>,
    },
    /// Build the cube complex `K(V)`.
    Extend {
        #[command(flatten)]
        mesh: MeshArgs,
        #[command(flatten)]
        ext: ExtensionArgs,
    },
    /// Lipschitz, injectivity and distortion checks for `J` and `I_0`.
    EmbedReport {
        #[command(flatten)]
        mesh: MeshArgs,
        #[command(flatten)]
        ext: ExtensionArgs,
        /// Sampled pairs; all pairs when omitted.
        #[arg(long)]
        pairs: Option<usize>,
        /// Seed for pair sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Slack allowed in the Lipschitz bound.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// LP filling of a cubical cycle.
    Fill {
        /// Cube complex JSON.
        #[arg(long)]
        complex: PathBuf,
        /// Chain JSON.
        #[arg(long)]
        chain: PathBuf,
    },
    /// Isoperimetric inequality for the LP filling of a cycle.
    IsoCheck {
        /// Cube complex JSON.
        #[arg(long)]
        complex: PathBuf,
        /// Chain JSON.
        #[arg(long)]
        chain: PathBuf,
    },
    /// ε-regularity and coarea checks on ball profiles.
    Regularity {
        #[command(flatten)]
        mesh: MeshArgs,
        /// Homomorphism JSON used to compute the systole.
        #[arg(long)]
        phi: Option<PathBuf>,
        /// Presentation JSON, when the homomorphism does not embed one.
        #[arg(long)]
        presentation: Option<PathBuf>,
        /// Systole, instead of computing it from `--phi`.
        #[arg(long, value_parser = parse_ratio)]
        sys: Option<f64>,
        /// Lower end of the radius range `[eps, sys/2]`.
        #[arg(long, value_parser = parse_ratio)]
        eps: f64,
        /// The constant `A_n` in `vol(B(R)) >= A_n R^n`.
        #[arg(long = "a-n", value_parser = parse_ratio)]
        a_n: f64,
        /// Shift `a` for the bound `A_n (R - a)^n`.
        #[arg(long, value_parser = parse_ratio)]
        shift: Option<f64>,
        /// Centers; all mesh vertices when omitted.
        #[arg(long, value_delimiter = ',')]
        centers: Option<Vec<usize>>,
        /// Grid intervals on `[0, sys/2]`.
        #[arg(long, default_value_t = 40)]
        steps: usize,
        /// Directory for one profile CSV per center.
        #[arg(long = "csv-dir")]
        csv_dir: Option<PathBuf>,
    },
    /// Packing, nerve of the doubled balls and the count bound.
    Nerve {
        #[command(flatten)]
        mesh: MeshArgs,
        /// Packing radius `R_0`.
        #[arg(long, value_parser = parse_ratio)]
        r0: f64,
        /// `A_n` in the count bound `N_0 <= vol / (A_n R_0^n)`.
        #[arg(long = "a-n", default_value_t = 1.0, value_parser = parse_ratio)]
        a_n: f64,
        /// Highest nerve dimension built.
        #[arg(long, default_value_t = 3)]
        cap: usize,
        /// Centers; a greedy maximal packing when omitted.
        #[arg(long, value_delimiter = ',')]
        centers: Option<Vec<usize>>,
    },
    /// Hausdorff distance between two node sets.
    Hausdorff {
        #[command(flatten)]
        mesh: MeshArgs,
        /// First node set.
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
        /// Second node set.
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
    },
    /// `α_k`, `β_k` for `k <= n` and the feasible `A`.
    Constants {
        /// Top dimension.
        #[arg(long)]
        n: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Volume { .. } => "volume",
            Command::Systole { .. } => "systole",
            Command::Ratio { .. } => "ratio",
            Command::Net { .. } => "net",
            Command::Extend { .. } => "extend",
            Command::EmbedReport { .. } => "embed-report",
            Command::Fill { .. } => "fill",
            Command::IsoCheck { .. } => "iso-check",
            Command::Regularity { .. } => "regularity",
            Command::Nerve { .. } => "nerve",
            Command::Hausdorff { .. } => "hausdorff",
            Command::Constants { .. } => "constants",
        }
    }
}

/// Everything that determines a run, embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub global: GlobalArgs,
    pub command: Command,
}
