use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use committee_power::exact::{influence_exact_with_cap, DEFAULT_ENUMERATION_CAP};
use committee_power::io::{imf_committee, imf_dataset, read_imf_csv, CommitteeSpec, Era};
use committee_power::mc::{influence_mc, McConfig, GENERATOR};
use committee_power::report::{self, Table};
use committee_power::simplex::{self, GridCache, DEFAULT_RESOLUTION};
use committee_power::{render, rules, Committee, Error, Rule};

#[derive(Parser)]
#[command(
    name = "wcpower",
    version,
    about = "Voting power in weighted committees"
)]
struct Cli {
    /// Output format for tabular results.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write results to PATH instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Winner of one preference profile.
    Eval {
        #[command(flatten)]
        committee: CommitteeArgs,
        /// Print the rule's tally as well.
        #[arg(long)]
        verbose: bool,
        /// One ranking per player, e.g. `bca abc cba`.
        #[arg(required = true)]
        rankings: Vec<String>,
    },
    /// Influence index of every player.
    Power {
        #[command(subcommand)]
        method: PowerMethod,
    },
    /// IMF Executive Board election of the Managing Director (three candidates).
    Imf {
        #[arg(long)]
        rule: String,
        #[arg(long, value_enum, default_value_t = EraArg::Both)]
        era: EraArg,
        /// Add pre/post significance tests per member (needs --era both).
        #[arg(long)]
        diff: bool,
        /// Board shares as CSV (label,share_pre,share_post) instead of the built-in table.
        #[arg(long)]
        data: Option<PathBuf>,
        /// Print the built-in board table as CSV and exit.
        #[arg(long)]
        export_data: bool,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Ternary map over all weight triples of three players.
    Map {
        #[arg(long, required_unless_present = "best", conflicts_with = "best")]
        rule_a: Option<String>,
        #[arg(long, required_unless_present = "best", conflicts_with = "best")]
        rule_b: Option<String>,
        /// Map the set of influence-maximizing rules instead of a pairwise comparison.
        #[arg(long)]
        best: bool,
        /// Player whose influence is compared (1, 2 or 3).
        #[arg(long, default_value_t = 1)]
        player: usize,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: u64,
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// SVG output path.
        #[arg(long)]
        svg: PathBuf,
        /// JSON file of cached grid values, read if present and rewritten.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PowerMethod {
    /// Exact values by enumerating every profile.
    Exact {
        #[command(flatten)]
        committee: CommitteeArgs,
        /// One row per rule (players as columns) for the same weights.
        #[arg(long)]
        all_rules: bool,
        /// Largest number of profiles to enumerate.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Monte Carlo estimates with confidence intervals.
    Mc {
        #[command(flatten)]
        committee: CommitteeArgs,
        #[command(flatten)]
        mc: McArgs,
    },
}

#[derive(Args)]
struct CommitteeArgs {
    /// Committee file (TOML or JSON).
    #[arg(long)]
    committee: Option<PathBuf>,
    /// Player weights, overriding the file.
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<u64>>,
    /// Number of alternatives, overriding the file.
    #[arg(long)]
    m: Option<usize>,
    /// Voting rule, overriding the file.
    #[arg(long)]
    rule: Option<String>,
}

#[derive(Args)]
struct McArgs {
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.95)]
    confidence: f64,
    /// Worker threads (results do not depend on it).
    #[arg(long)]
    workers: Option<usize>,
}

impl McArgs {
    fn config(&self, seed: u64) -> McConfig {
        McConfig {
            samples: self.samples,
            seed,
            confidence: self.confidence,
            workers: self.workers,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EraArg {
    Pre,
    Post,
    Both,
}

impl CommitteeArgs {
    fn resolve(&self, rule_required: bool) -> Result<Committee, Error> {
        let mut spec = match &self.committee {
            Some(path) => CommitteeSpec::load(path)?,
            None => CommitteeSpec {
                m: Some(3),
                alternatives: None,
                weights: Vec::new(),
                rule: String::new(),
            },
        };
        if let Some(weights) = &self.weights {
            spec.weights = weights.clone();
        }
        if let Some(m) = self.m {
            spec.m = Some(m);
            if spec.alternatives.as_ref().is_some_and(|a| a.len() != m) {
                spec.alternatives = None;
            }
        }
        if let Some(rule) = &self.rule {
            spec.rule = rule.clone();
        }
        if spec.rule.is_empty() {
            if rule_required {
                return Err(Error::Invalid(
                    "a rule is required (--rule or committee file)".into(),
                ));
            }
            spec.rule = Rule::Plurality.name().to_string();
        }
        if spec.weights.is_empty() {
            return Err(Error::Invalid(
                "weights are required (--weights or committee file)".into(),
            ));
        }
        spec.committee()
    }
}

fn describe(committee: &Committee) -> String {
    let weights: Vec<String> = committee.weights().iter().map(u64::to_string).collect();
    format!(
        "rule={} m={} weights={}",
        committee.rule(),
        committee.m(),
        weights.join(",")
    )
}

struct Output {
    format: Format,
    path: Option<PathBuf>,
}

impl Output {
    fn emit(&self, params: &[String], table: &Table) -> Result<(), Error> {
        let mut text = String::new();
        for p in params {
            text.push_str("# ");
            text.push_str(p);
            text.push('\n');
        }
        text.push_str(&match self.format {
            Format::Csv => table.to_csv(),
            Format::Table => table.to_text(),
        });
        self.write(&text)
    }

    fn write(&self, text: &str) -> Result<(), Error> {
        match &self.path {
            Some(path) => std::fs::write(path, text).map_err(|e| Error::Io {
                path: path.clone(),
                source: e,
            }),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .and_then(|_| stdout.flush())
                    .map_err(|e| Error::Io {
                        path: "<stdout>".into(),
                        source: e,
                    })
            }
        }
    }
}

fn parse_rule(name: &str) -> Result<Rule, Error> {
    name.parse()
}

fn player_index(player: usize) -> Result<usize, Error> {
    if (1..=3).contains(&player) {
        Ok(player - 1)
    } else {
        Err(Error::Invalid(format!(
            "player must be 1, 2 or 3, got {player}"
        )))
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let out = Output {
        format: cli.format,
        path: cli.out,
    };
    match cli.command {
        Command::Eval {
            committee,
            verbose,
            rankings,
        } => {
            let committee = committee.resolve(true)?;
            let profile = committee.parse_profile(&rankings)?;
            let winner = rules::winner(&committee, &profile)?;
            let mut text = format!("{}\n", committee.label(winner));
            if verbose {
                for line in report::tally_lines(&committee, &profile)? {
                    text.push_str(&line);
                    text.push('\n');
                }
            }
            out.write(&text)
        }
        Command::Power {
            method:
                PowerMethod::Exact {
                    committee,
                    all_rules,
                    cap,
                },
        } => {
            let committee = committee.resolve(!all_rules)?;
            if all_rules {
                let reports = Rule::ALL
                    .iter()
                    .map(|&r| influence_exact_with_cap(&committee.with_rule(r), cap))
                    .collect::<Result<Vec<_>, _>>()?;
                let weights: Vec<String> = committee.weights().iter().map(u64::to_string).collect();
                let params = vec![format!(
                    "power exact all-rules m={} weights={}",
                    committee.m(),
                    weights.join(",")
                )];
                out.emit(&params, &report::rules_matrix(&reports))
            } else {
                let report = influence_exact_with_cap(&committee, cap)?;
                let params = vec![format!("power exact {}", describe(&committee))];
                out.emit(&params, &report::exact_table(&report))
            }
        }
        Command::Power {
            method: PowerMethod::Mc { committee, mc },
        } => {
            let committee = committee.resolve(true)?;
            let report = influence_mc(&committee, &mc.config(mc.seed))?;
            if report.players.iter().any(|p| p.exceeds_bound) {
                eprintln!("warning: some estimates exceed 1; increase --samples");
            }
            let params = vec![
                format!("power mc {}", describe(&committee)),
                format!(
                    "samples={} seed={} confidence={} generator={GENERATOR}",
                    mc.samples, mc.seed, mc.confidence
                ),
            ];
            out.emit(&params, &report::mc_table(&report, None))
        }
        Command::Imf {
            rule,
            era,
            diff,
            data,
            export_data,
            mc,
        } => {
            let members = match &data {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                        path: path.clone(),
                        source: e,
                    })?;
                    read_imf_csv(&text)?
                }
                None => imf_dataset(),
            };
            if export_data {
                return out.write(&committee_power::io::write_imf_csv(&members)?);
            }
            let rule = parse_rule(&rule)?;
            if !matches!(
                rule,
                Rule::Plurality | Rule::PluralityRunoff | Rule::Copeland
            ) {
                eprintln!(
                    "note: {rule} is outside the three procedures usually analyzed for this board"
                );
            }
            if diff && era != EraArg::Both {
                return Err(Error::Invalid("--diff needs --era both".into()));
            }
            // Eras are independent runs: post uses seed + 1.
            let run_era = |e: Era, seed: u64| -> Result<_, Error> {
                influence_mc(&imf_committee(&members, e, rule)?, &mc.config(seed))
            };
            let pre = match era {
                EraArg::Pre | EraArg::Both => Some(run_era(Era::Pre, mc.seed)?),
                EraArg::Post => None,
            };
            let post = match era {
                EraArg::Post | EraArg::Both => Some(run_era(Era::Post, mc.seed.wrapping_add(1))?),
                EraArg::Pre => None,
            };
            let table = report::imf_table(&members, pre.as_ref(), post.as_ref(), diff)?;
            let params = vec![
                format!(
                    "imf rule={rule} m=3 era={}",
                    match era {
                        EraArg::Pre => "pre",
                        EraArg::Post => "post",
                        EraArg::Both => "both",
                    }
                ),
                format!(
                    "samples={} seed={} (post: seed+1) confidence={} generator={GENERATOR}",
                    mc.samples, mc.seed, mc.confidence
                ),
            ];
            out.emit(&params, &table)
        }
        Command::Map {
            rule_a,
            rule_b,
            best,
            player,
            resolution,
            m,
            svg,
            cache,
        } => {
            let player = player_index(player)?;
            let mut grid_cache = match &cache {
                Some(path) if path.exists() => {
                    let loaded = GridCache::load(path)?;
                    if loaded.m() == m {
                        loaded
                    } else {
                        GridCache::new(m)
                    }
                }
                _ => GridCache::new(m),
            };
            let grid = simplex::scan_simplex_cached(resolution, &mut grid_cache)?;
            if let Some(path) = &cache {
                grid_cache.save(path)?;
            }
            let (image, csv, what) = if best {
                let map = simplex::best_rule_map(&grid, player)?;
                (
                    render::render_best_rules(&map),
                    simplex::best_rule_csv(&map),
                    "best".to_string(),
                )
            } else {
                let a = parse_rule(rule_a.as_deref().unwrap_or_default())?;
                let b = parse_rule(rule_b.as_deref().unwrap_or_default())?;
                let c = simplex::classify_pairwise(&grid, a, b, player)?;
                (
                    render::render_classification(&c),
                    simplex::classification_csv(&c),
                    format!("{a} vs {b}"),
                )
            };
            render::write_svg(&svg, &image)?;
            let header = format!(
                "# map {what} player={} resolution={resolution} m={m}\n",
                player + 1
            );
            out.write(&(header + &csv))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_resource_cap() {
                eprintln!("hint: try `wcpower power mc` for committees this large");
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inline(weights: &[u64], m: Option<usize>, rule: Option<&str>) -> CommitteeArgs {
        CommitteeArgs {
            committee: None,
            weights: Some(weights.to_vec()),
            m,
            rule: rule.map(String::from),
        }
    }

    #[test]
    fn inline_committee_defaults_to_three_alternatives() {
        let c = inline(&[6, 5, 3], None, Some("borda"))
            .resolve(true)
            .unwrap();
        assert_eq!((c.m(), c.rule()), (3, Rule::Borda));
        assert!(inline(&[6, 5, 3], Some(4), None).resolve(true).is_err());
        assert_eq!(
            inline(&[6, 5, 3], Some(4), None)
                .resolve(false)
                .unwrap()
                .m(),
            4
        );
    }

    #[test]
    fn weights_are_required() {
        let args = CommitteeArgs {
            committee: None,
            weights: None,
            m: None,
            rule: Some("borda".into()),
        };
        assert!(args
            .resolve(true)
            .unwrap_err()
            .to_string()
            .contains("weights"));
    }

    #[test]
    fn players_are_one_based() {
        assert_eq!(player_index(1).unwrap(), 0);
        assert_eq!(player_index(3).unwrap(), 2);
        assert!(player_index(0).is_err() && player_index(4).is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
