//! Network sources: edge-list files or named builders.

use std::path::Path;

use resnet_core::builders;
use resnet_core::format::parse_network;
use resnet_core::spectra::{
    clique2_spectrum, cycle_spectrum, hypercube_spectrum, network_spectrum, path_spectrum,
    product_spectrum, Spectrum,
};
use resnet_core::{Error, ResistorNetwork};

use crate::CliError;

pub const BUILDER_HELP: &str = "\
builders (ids are row-major for products):
  path N                  a1..aN
  cycle N                 b1..bN
  clique2                 c1 c2
  empty N                 x1..xN
  complete_bipartite M N  x1..xM y1..yN
  hypercube K             K-bit labels
  ladder N                P_N x K2
  block_tower N           P_N x C4
  path_hypercube N K      P_N x Q_K
  fan N M                 P_N plus apex b, apex edges 1/M";

/// A named family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builder {
    Path(usize),
    Cycle(usize),
    Clique2,
    Empty(usize),
    CompleteBipartite(usize, usize),
    Hypercube(usize),
    Ladder(usize),
    BlockTower(usize),
    PathHypercube(usize, usize),
    Fan(usize, usize),
}

fn arity(name: &str, args: &[String], expected: usize) -> Result<Vec<usize>, CliError> {
    if args.len() != expected {
        return Err(CliError::Usage(format!(
            "builder `{name}` takes {expected} argument(s), got {}",
            args.len()
        )));
    }
    args.iter()
        .map(|a| {
            a.parse::<usize>().map_err(|_| {
                CliError::Usage(format!(
                    "builder `{name}`: `{a}` is not a nonnegative integer"
                ))
            })
        })
        .collect()
}

impl Builder {
    pub fn parse(spec: &[String]) -> Result<Self, CliError> {
        let (name, args) = spec
            .split_first()
            .ok_or_else(|| CliError::Usage("--builder needs a name".into()))?;
        let key = name.to_ascii_lowercase().replace('-', "_");
        Ok(match key.as_str() {
            "path" => Builder::Path(arity(name, args, 1)?[0]),
            "cycle" => Builder::Cycle(arity(name, args, 1)?[0]),
            "clique2" | "k2" => {
                arity(name, args, 0)?;
                Builder::Clique2
            }
            "empty" => Builder::Empty(arity(name, args, 1)?[0]),
            "complete_bipartite" | "kmn" => {
                let a = arity(name, args, 2)?;
                Builder::CompleteBipartite(a[0], a[1])
            }
            "hypercube" => Builder::Hypercube(arity(name, args, 1)?[0]),
            "ladder" => Builder::Ladder(arity(name, args, 1)?[0]),
            "block_tower" => Builder::BlockTower(arity(name, args, 1)?[0]),
            "path_hypercube" => {
                let a = arity(name, args, 2)?;
                Builder::PathHypercube(a[0], a[1])
            }
            "fan" => {
                let a = arity(name, args, 2)?;
                Builder::Fan(a[0], a[1])
            }
            _ => {
                return Err(CliError::Usage(format!(
                    "unknown builder `{name}`\n{BUILDER_HELP}"
                )))
            }
        })
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            Builder::Path(n) | Builder::Cycle(n) | Builder::Empty(n) => n,
            Builder::Clique2 => 2,
            Builder::CompleteBipartite(m, n) => m + n,
            Builder::Hypercube(k) => 1usize.checked_shl(k as u32).unwrap_or(usize::MAX),
            Builder::Ladder(n) => 2 * n,
            Builder::BlockTower(n) => 4 * n,
            Builder::PathHypercube(n, k) => {
                n.saturating_mul(1usize.checked_shl(k as u32).unwrap_or(usize::MAX))
            }
            Builder::Fan(n, _) => n + 1,
        }
    }

    pub fn build(&self) -> Result<ResistorNetwork, Error> {
        match *self {
            Builder::Path(n) => builders::path(n),
            Builder::Cycle(n) => builders::cycle(n),
            Builder::Clique2 => Ok(builders::clique2()),
            Builder::Empty(n) => builders::empty(n),
            Builder::CompleteBipartite(m, n) => builders::complete_bipartite(m, n),
            Builder::Hypercube(k) => builders::hypercube(k),
            Builder::Ladder(n) => builders::ladder(n),
            Builder::BlockTower(n) => builders::block_tower(n),
            Builder::PathHypercube(n, k) => builders::path_hypercube_product(n, k),
            Builder::Fan(n, m) => builders::fan(n, m),
        }
    }

    /// Closed-form spectrum where the family has one.
    pub fn spectrum(&self) -> Result<Option<Spectrum>, Error> {
        Ok(match *self {
            Builder::Path(n) => Some(path_spectrum(n)?),
            Builder::Cycle(n) => Some(cycle_spectrum(n)?),
            Builder::Clique2 => Some(clique2_spectrum()),
            Builder::Hypercube(k) => Some(hypercube_spectrum(k)?),
            Builder::Ladder(n) => Some(product_spectrum(&path_spectrum(n)?, &clique2_spectrum())),
            Builder::BlockTower(n) => {
                Some(product_spectrum(&path_spectrum(n)?, &cycle_spectrum(4)?))
            }
            Builder::PathHypercube(n, k) => Some(product_spectrum(
                &path_spectrum(n)?,
                &hypercube_spectrum(k)?,
            )),
            _ => None,
        })
    }
}

pub enum Source {
    File(ResistorNetwork),
    Built(Builder, ResistorNetwork),
}

impl Source {
    pub fn load(
        graph: Option<&Path>,
        builder: Option<&[String]>,
        budget: usize,
    ) -> Result<Self, CliError> {
        match (graph, builder) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                Ok(Source::File(parse_network(&text)?))
            }
            (None, Some(spec)) => {
                let b = Builder::parse(spec)?;
                let vertices = b.vertex_count();
                if vertices > budget {
                    return Err(Error::BudgetExceeded { vertices, budget }.into());
                }
                let net = b.build()?;
                Ok(Source::Built(b, net))
            }
            _ => Err(CliError::Usage(
                "give exactly one of --graph FILE or --builder NAME ARGS".into(),
            )),
        }
    }

    pub fn network(&self) -> &ResistorNetwork {
        match self {
            Source::File(net) | Source::Built(_, net) => net,
        }
    }

    pub fn spectrum(&self) -> Result<Spectrum, Error> {
        if let Source::Built(b, _) = self {
            if let Some(s) = b.spectrum()? {
                return Ok(s);
            }
        }
        network_spectrum(self.network())
    }
}
