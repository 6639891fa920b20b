//! `zs`: perfect matching scheme tables, certificates and brute-force checks.

mod cache;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use serde::Serialize;

use zs_core::extremal::{self, CrossProductReport, ExtremalReport, SearchResult};
use zs_core::matchings::{
    canonical_family, cycle_type, enumerate_matchings, enumerate_near_matchings, near_cycle_type,
    sphere_size,
};
use zs_core::partitions::{classify_fat, derangement_count, enumerate_partitions, hook_dim, Partition};
use zs_core::scheme::{build_scheme, spherical_oracle_table};
use zs_core::spectral::{certify, threshold_scan};
use zs_core::symfunc::{self, MatrixKind};
use zs_core::{EdgeSet, Error, PerfectMatching, Rational, RationalMatrix};

use cache::DiskCache;

const EXIT_INVALID: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser, Debug)]
#[command(name = "zs", version, about = "Perfect matching association scheme toolkit")]
struct Cli {
    /// Directory for cached transition matrices (ZS_CACHE_DIR takes precedence).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Pretty,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Perm,
    Kostka,
    AlphaKostka,
    Zonal,
    Char,
    PTable,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    PTable,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partitions of n with dimensions and sphere sizes.
    Partitions {
        #[arg(long)]
        n: u32,
        /// Also classify each partition as fat or not for this t.
        #[arg(long)]
        t: Option<u32>,
    },
    /// Perfect matchings of K_2n with their cycle type against m*.
    Matchings {
        #[arg(long)]
        n: u32,
        /// Near-perfect matchings of K_(2n-1) instead.
        #[arg(long)]
        near: bool,
    },
    /// A labelled transition matrix or character table.
    #[command(alias = "dump-matrix")]
    Matrix {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: u32,
        /// Jack parameter for alpha-kostka, as an integer or p/q.
        #[arg(long, value_parser = parse_rational)]
        alpha: Option<Rational>,
    },
    /// The character table (P-table) of the scheme.
    Scheme {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "p-table")]
        emit: Emit,
        /// Check the scheme axioms and eigenvalues on explicit matrices (n <= 4).
        #[arg(long)]
        verify: bool,
    },
    /// Ratio-bound certificate for t-intersecting families; exit 2 if invalid.
    Certify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: u32,
    },
    /// Certificate verdicts over a range of n.
    Scan {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
    },
    /// Exact maximum t-intersecting family by branch and bound.
    Brute {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: u32,
        /// Search even when a valid certificate already proves the bound.
        #[arg(long)]
        force_brute: bool,
        /// Allow the n = 5, t = 1 search.
        #[arg(long)]
        extended: bool,
        /// Seed for the cross-intersecting samples.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Number of matchings sharing fewer than t edges with a fixed one.
    Derange {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: u32,
    },
    /// Spherical functions by group averaging, compared with the zonal table.
    Oracle {
        #[arg(long)]
        n: u32,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    zs_core::rational::parse(s).map_err(|e| e.to_string())
}

/// Emitted text plus the process status.
struct Outcome {
    text: String,
    code: u8,
}

impl From<String> for Outcome {
    fn from(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn nested(matrix: &RationalMatrix) -> IndexMap<String, IndexMap<String, String>> {
    matrix
        .row_labels
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let row = matrix
                .col_labels
                .iter()
                .enumerate()
                .map(|(j, c)| (c.to_string(), matrix.at(i, j).to_string()))
                .collect();
            (r.to_string(), row)
        })
        .collect()
}

fn render_matrix(matrix: &RationalMatrix, format: Format) -> String {
    match format {
        Format::Csv => matrix.to_csv(),
        Format::Json => json(&nested(matrix)),
        Format::Pretty => matrix.to_string(),
    }
}

struct Runner {
    cache: Option<DiskCache>,
}

impl Runner {
    fn prime(&self, kind: MatrixKind, n: u32, alpha: Option<&Rational>) -> zs_core::Result<()> {
        if let Some(cache) = &self.cache {
            cache.prime(kind, n, alpha)?;
        }
        Ok(())
    }

    fn run(&self, command: Command, format: Option<Format>) -> zs_core::Result<Outcome> {
        match command {
            Command::Partitions { n, t } => partitions(n, t, format.unwrap_or(Format::Csv)).map(Into::into),
            Command::Matchings { n, near } => matchings(n, near, format.unwrap_or(Format::Csv)).map(Into::into),
            Command::Matrix { kind, n, alpha } => {
                let matrix = match kind {
                    Kind::PTable => {
                        self.prime(MatrixKind::Zonal, n, None)?;
                        build_scheme(n)?.p_table
                    }
                    other => {
                        let kind = match other {
                            Kind::Perm => MatrixKind::PermChar,
                            Kind::Kostka => MatrixKind::Kostka,
                            Kind::AlphaKostka => MatrixKind::AlphaKostka,
                            Kind::Zonal => MatrixKind::Zonal,
                            _ => MatrixKind::SymChar,
                        };
                        if kind == MatrixKind::AlphaKostka && alpha.is_none() {
                            return Err(Error::Domain("--kind alpha-kostka needs --alpha".into()));
                        }
                        self.prime(kind, n, alpha.as_ref())?;
                        (*symfunc::matrix(kind, n, alpha.as_ref())?).clone()
                    }
                };
                Ok(render_matrix(&matrix, format.unwrap_or(Format::Csv)).into())
            }
            Command::Scheme { n, emit, verify } => {
                self.prime(MatrixKind::Zonal, n, None)?;
                let scheme = build_scheme(n)?;
                if verify {
                    if n > 4 {
                        return Err(Error::Resource("--verify runs on explicit matrices for n <= 4".into()));
                    }
                    scheme.verify_axioms()?;
                    scheme.verify_eigenvalues()?;
                    eprintln!("scheme axioms and eigenvalues verified for n={n}");
                }
                let format = match emit {
                    Emit::Json => Format::Json,
                    Emit::PTable => format.unwrap_or(Format::Csv),
                };
                Ok(render_matrix(&scheme.p_table, format).into())
            }
            Command::Certify { n, t } => {
                self.prime(MatrixKind::Zonal, n, None)?;
                let cert = certify(n, t)?;
                let text = match format.unwrap_or(Format::Pretty) {
                    Format::Json => json(&cert),
                    Format::Pretty => cert.to_pretty(),
                    Format::Csv => {
                        let mut out = String::from("lambda,fat,weight,eigenvalue\n");
                        for (label, eta) in &cert.eigenvalues {
                            let fat = classify_fat(label, n, t)?.is_fat();
                            let weight = cert.weights.get(label).map_or_else(String::new, ToString::to_string);
                            out.push_str(&format!("\"{label}\",{fat},{weight},{eta}\n"));
                        }
                        out
                    }
                };
                Ok(Outcome { text, code: if cert.valid { 0 } else { EXIT_INVALID } })
            }
            Command::Scan { t, n_min, n_max } => {
                if n_min > n_max {
                    return Err(Error::Domain(format!("empty range {n_min}..={n_max}")));
                }
                for n in n_min..=n_max {
                    self.prime(MatrixKind::Zonal, n, None)?;
                }
                let report = threshold_scan(t, n_min..=n_max)?;
                Ok(match format.unwrap_or(Format::Csv) {
                    Format::Json => json(&report),
                    _ => report.to_csv(),
                }
                .into())
            }
            Command::Brute { n, t, force_brute, extended, seed, samples } => {
                brute(self, n, t, force_brute, extended, seed, samples).map(Into::into)
            }
            Command::Derange { n, t } => {
                let count = derangement_count(n, t)?;
                Ok(match format {
                    Some(Format::Json) => json(&serde_json::json!({ "n": n, "t": t, "count": count.to_string() })),
                    _ => format!("{count}\n"),
                }
                .into())
            }
            Command::Oracle { n } => {
                self.prime(MatrixKind::Zonal, n, None)?;
                let oracle = spherical_oracle_table(n)?;
                if oracle != *symfunc::zonal_character_table(n)? {
                    return Err(Error::Internal(format!("oracle disagrees with the zonal table at n={n}")));
                }
                eprintln!("group-averaging oracle agrees with the zonal table for n={n}");
                Ok(render_matrix(&oracle, format.unwrap_or(Format::Csv)).into())
            }
        }
    }
}

fn partitions(n: u32, t: Option<u32>, format: Format) -> zs_core::Result<String> {
    #[derive(Serialize)]
    struct Row {
        partition: Partition,
        transpose: Partition,
        dim: String,
        dim_doubled: String,
        sphere_size: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        fat: Option<bool>,
    }
    let rows = enumerate_partitions(n)
        .into_iter()
        .map(|p| {
            Ok(Row {
                transpose: p.transpose(),
                dim: hook_dim(&p).to_string(),
                dim_doubled: hook_dim(&p.doubled()).to_string(),
                sphere_size: sphere_size(&p, n)?.to_string(),
                fat: t.map(|t| classify_fat(&p, n, t).map(|c| c.is_fat())).transpose()?,
                partition: p,
            })
        })
        .collect::<zs_core::Result<Vec<_>>>()?;
    Ok(match format {
        Format::Json => json(&rows),
        _ => {
            let mut out = String::from("partition,transpose,dim,dim_doubled,sphere_size");
            if t.is_some() {
                out.push_str(",fat");
            }
            out.push('\n');
            for r in rows {
                out.push_str(&format!(
                    "\"{}\",\"{}\",{},{},{}",
                    r.partition, r.transpose, r.dim, r.dim_doubled, r.sphere_size
                ));
                if let Some(fat) = r.fat {
                    out.push_str(&format!(",{fat}"));
                }
                out.push('\n');
            }
            out
        }
    })
}

fn matchings(n: u32, near: bool, format: Format) -> zs_core::Result<String> {
    let rows: Vec<(String, Partition)> = if near {
        let all = enumerate_near_matchings(n)?;
        let base = all[0].clone();
        all.iter().map(|m| Ok((m.to_string(), near_cycle_type(&base, m)?))).collect::<zs_core::Result<_>>()?
    } else {
        let base = PerfectMatching::base(n);
        enumerate_matchings(n)?
            .iter()
            .map(|m| Ok((m.to_string(), cycle_type(&base, m)?)))
            .collect::<zs_core::Result<_>>()?
    };
    Ok(match format {
        Format::Json => {
            let doc: Vec<_> = rows
                .iter()
                .map(|(m, p)| serde_json::json!({ "matching": m, "cycleType": p.to_string() }))
                .collect();
            json(&doc)
        }
        _ => {
            let mut out = String::from("matching,cycle_type\n");
            for (m, p) in rows {
                out.push_str(&format!("{m},\"{p}\"\n"));
            }
            out
        }
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct BruteReport {
    #[serde(flatten)]
    search: SearchResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    extremal: Option<ExtremalReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_product: Option<CrossProductReport>,
}

fn brute(
    runner: &Runner,
    n: u32,
    t: u32,
    force: bool,
    extended: bool,
    seed: u64,
    samples: usize,
) -> zs_core::Result<String> {
    let proven = if 2 * t < n && n <= zs_core::scheme::TABLE_CAP {
        runner.prime(MatrixKind::Zonal, n, None)?;
        certify(n, t)?.bound()
    } else {
        None
    };
    let search = match proven {
        Some(bound) if !force => {
            let base = PerfectMatching::base(n);
            let witness = canonical_family(&EdgeSet::new(&base.edges()[..t as usize])?, n)?;
            eprintln!("valid certificate proves the bound {bound}; pass --force-brute to search");
            SearchResult {
                n,
                t,
                optimum: witness.len() as u64,
                common_edges: extremal::common_edges(&witness),
                matches_canonical: true,
                witness,
                searched: false,
                elapsed: Default::default(),
            }
        }
        _ => {
            let r = extremal::max_independent_exact(n, t, extended)?;
            eprintln!("search finished in {:.3?}", r.elapsed);
            r
        }
    };
    let (extremal, cross_product) = if search.searched {
        (
            Some(extremal::verify_extremal(n, t, extended)?),
            (n <= extremal::SEARCH_CAP).then(|| extremal::cross_product_check(n, t, seed, samples)).transpose()?,
        )
    } else {
        (None, None)
    };
    Ok(json(&BruteReport { search, extremal, cross_product }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let cache_dir = std::env::var_os("ZS_CACHE_DIR").map(PathBuf::from).or(cli.cache_dir);
    let cache = match cache_dir.map(DiskCache::new).transpose() {
        Ok(cache) => cache,
        Err(e) => {
            eprintln!("error: cannot use cache directory: {e}");
            return ExitCode::from(1);
        }
    };
    let runner = Runner { cache };
    match runner.run(cli.command, cli.format) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Domain(_) | Error::Resource(_) => 1,
                Error::Parse(_) => EXIT_USAGE,
                Error::Internal(_) => EXIT_INTERNAL,
            })
        }
    }
}
