//! `hgs`: census tables of regular subgroups, obstruction reports, lattice
//! summaries and abelian partition counts.

mod cache;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hgs_core::holomorph::{count_r, direct_r};
use hgs_core::lattice::{index_two_count, z2_u2, LatticeSummary};
use hgs_core::obstruction::{assemble_census, char_obstruction, s_column};
use hgs_core::partitions::{alpha, canonical_tuples, nc_np_table, Partition, NC_NP_HEADER};
use hgs_core::{Catalog, Error, Limits, Result};

use cache::Cache;

#[derive(Parser)]
#[command(name = "hgs", version, about = "Regular subgroup census and characteristic-subgroup obstructions")]
struct Cli {
    /// Result cache file.
    #[arg(long, global = true, env = "HGS_CACHE")]
    cache: Option<PathBuf>,

    /// Recompute a random tenth of cache hits and fail on any mismatch.
    #[arg(long, global = true)]
    verify_cache: bool,

    /// Worker threads (output does not depend on this).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// |R(G,[M])| for every pair of catalog groups of one order.
    Census {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Also list the obstruction witness of each certified cell.
        #[arg(long)]
        witnesses: bool,
    },
    /// Characteristic-subgroup test for R(G,[M]) = ∅.
    Obstruct {
        #[arg(long)]
        g: String,
        #[arg(long)]
        m: String,
    },
    /// |R(G,[M])| through regular subgroups of Hol(M).
    Hgs {
        #[arg(long)]
        g: String,
        #[arg(long)]
        m: String,
    },
    /// Every regular subgroup of Sym(G) normalized by λ(G) (order ≤ 8).
    DirectR {
        #[arg(long)]
        g: String,
    },
    /// Number of index-two subgroups.
    I2 {
        #[arg(long)]
        g: String,
    },
    /// Groups of order N with no, and with exactly one, index-two subgroup.
    Z2u2 {
        #[arg(long)]
        order: usize,
    },
    /// Subgroup, normal and characteristic counts per order.
    Lattice {
        #[arg(long)]
        g: String,
    },
    /// Subgroups of type μ in the abelian p-group of type λ.
    Alpha {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        p: u64,
    },
    /// Canonical tuples of λ, for one r or all of them.
    Canonical {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Partitions with several characteristic subgroups of one order.
    Ncnp {
        #[arg(long)]
        max: usize,
    },
    /// Catalog listing.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    List {
        #[arg(long)]
        order: Option<usize>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnknownGroup { .. } | Error::UncoveredOrder(_) => 3,
        Error::Consistency(_) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let mut cache = match &cli.cache {
        Some(path) => match Cache::open(path, cli.verify_cache) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(exit_code(&e));
            }
        },
        None => Cache::disabled(),
    };
    // Whatever was computed before a failure is still worth keeping.
    let result = render(&cli.command, &mut cache);
    let saved = cache.save();
    match result.and_then(|out| {
        print!("{out}");
        saved
    }) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn render(command: &Command, cache: &mut Cache) -> Result<String> {
    let cat = Catalog::standard();
    let limits = Limits::default();
    Ok(match command {
        Command::Census { order, format, witnesses } => {
            let groups = cat.groups_of_order(*order)?;
            let mut columns = Vec::with_capacity(groups.len());
            for m in &groups {
                let key = Cache::key("s-column", &format!("{order}|{}", m.name()));
                columns.push(cache.get_or_compute(&key, || s_column(cat, m, &limits))?);
            }
            let table = assemble_census(cat, *order, &columns, &limits)?;
            match format {
                Format::Json => table.to_json(),
                Format::Csv if *witnesses => format!("{}\nwitnesses\n{}", table.to_csv(), table.witnesses_text()),
                Format::Csv => table.to_csv(),
            }
        }
        Command::Obstruct { g, m } => {
            let (g, m) = (cat.lookup(g)?, cat.lookup(m)?);
            format!("{}\n", char_obstruction(g.group(), m.group(), &limits)?)
        }
        Command::Hgs { g, m } => {
            let (ge, me) = (cat.lookup(g)?, cat.lookup(m)?);
            let key = Cache::key("hgs", &format!("{}|{}", ge.name(), me.name()));
            let count = cache.get_or_compute(&key, || count_r(cat, ge.name(), me.name(), &limits))?;
            format!("{count}\n")
        }
        Command::DirectR { g } => {
            let records = direct_r(cat.lookup(g)?.group(), cat)?;
            let mut out = String::new();
            for r in &records {
                out.push_str(&r.to_text());
                out.push('\n');
            }
            let mut counts: Vec<(String, usize)> = Vec::new();
            for r in &records {
                match counts.iter_mut().find(|(c, _)| *c == r.iso_class) {
                    Some((_, k)) => *k += 1,
                    None => counts.push((r.iso_class.clone(), 1)),
                }
            }
            counts.sort();
            out.push_str(&format!("total {}\n", records.len()));
            for (class, k) in counts {
                out.push_str(&format!("{class} {k}\n"));
            }
            out
        }
        Command::I2 { g } => format!("{}\n", index_two_count(cat.lookup(g)?.group())),
        Command::Z2u2 { order } => {
            let groups: Vec<_> = cat.groups_of_order(*order)?.iter().map(|e| e.group()).collect();
            let (z2, u2) = z2_u2(&groups)?;
            format!("z2,u2\n{z2},{u2}\n")
        }
        Command::Lattice { g } => LatticeSummary::compute(cat.lookup(g)?.group(), &limits)?.to_string(),
        Command::Alpha { lambda, mu, p } => {
            format!("{}\n", alpha(&Partition::parse(lambda)?, &Partition::parse(mu)?, *p)?)
        }
        Command::Canonical { lambda, r } => {
            let l = Partition::parse(lambda)?;
            if let Some(r) = r.filter(|&r| r > l.n()) {
                return Err(Error::InvalidArgument(format!("r = {r} exceeds |λ| = {}", l.n())));
            }
            let rs: Vec<usize> = match r {
                Some(r) => vec![*r],
                None => (0..=l.n()).collect(),
            };
            let mut out = String::new();
            for r in rs {
                let tuples: Vec<String> = canonical_tuples(&l, r).iter().map(|t| t.to_string()).collect();
                out.push_str(&format!("r={r} count={} {}\n", tuples.len(), tuples.join(" ")));
            }
            out
        }
        Command::Ncnp { max } => {
            let mut out = format!("{NC_NP_HEADER}\n");
            for row in nc_np_table(*max)? {
                out.push_str(&row.to_csv());
                out.push('\n');
            }
            out
        }
        Command::Catalog {
            action: CatalogCommand::List { order },
        } => {
            let entries: Vec<_> = match order {
                Some(n) => cat.entries_of_order(*n).collect(),
                None => cat.entries().iter().collect(),
            };
            if entries.is_empty() {
                return Err(Error::UncoveredOrder(order.unwrap_or(0)));
            }
            let mut out = String::new();
            for e in entries {
                out.push_str(&format!("{}\t{}\t{}\n", e.name(), e.order(), e.recipe()));
            }
            out
        }
    })
}
