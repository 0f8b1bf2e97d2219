//! End-to-end trials: palette, random colouring, adjacent-triangle 3-graph,
//! link check against short odd cycles and a search for `K_{n,n,n}` in the
//! complement.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aux_graph::{construct_auxiliary, AuxCertificate, AuxParams};
use crate::error::{Error, Result};
use crate::gamma::{build_gamma, find_tripartite_hole, random_coloring, verify_link_free, HoleMode, HoleOutcome};
use crate::graph::Graph;
use crate::limits::SearchLimits;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PaletteSource {
    /// Build the auxiliary graph for `(g, m)`.
    Auxiliary,
    Given {
        graph: Graph,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub g: usize,
    pub m: usize,
    /// Order of the 3-graph.
    #[serde(rename = "N")]
    pub big_n: usize,
    /// Part size of the forbidden `K_{n,n,n}`.
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub palette: PaletteSource,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkViolation {
    pub cycle: usize,
    pub vertex: usize,
    pub embedding: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trial: usize,
    pub seed: u64,
    pub triples: usize,
    pub link_free: bool,
    pub violation: Option<LinkViolation>,
    pub hole: HoleOutcome,
    /// Links have odd girth above `g` and the complement provably has no
    /// `K_{n,n,n}`.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub config: PipelineConfig,
    pub palette: Graph,
    pub auxiliary: Option<AuxCertificate>,
    pub trials: Vec<TrialReport>,
    pub first_certified: Option<usize>,
}

impl PipelineReport {
    pub fn all_links_free(&self) -> bool {
        self.trials.iter().all(|t| t.link_free)
    }
}

/// Runs `trials` independent colourings with seeds `seed + 1, seed + 2, ...`
/// (the auxiliary construction uses `seed`).
pub fn pipeline_theorem14(config: &PipelineConfig, limits: &SearchLimits) -> Result<PipelineReport> {
    if config.g < 3 || config.g.is_multiple_of(2) {
        return Err(Error::Domain(format!("g = {} must be odd and at least 3", config.g)));
    }
    if config.n == 0 || 3 * config.n > config.big_n {
        return Err(Error::Domain(format!(
            "need 1 <= 3n <= N, got n = {}, N = {}",
            config.n, config.big_n
        )));
    }
    let (palette, auxiliary) = match &config.palette {
        PaletteSource::Auxiliary => {
            let params = AuxParams::new(config.g, config.m, config.seed)?;
            let (a, cert) = construct_auxiliary(&params, limits)?;
            (a, Some(cert))
        }
        PaletteSource::Given { graph } => (graph.clone(), None),
    };
    let cycles: Vec<Graph> = (3..=config.g).step_by(2).map(Graph::cycle).collect();
    let trials = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = config.seed.wrapping_add(trial as u64 + 1);
            let chi = random_coloring(config.big_n, &palette, seed)?;
            let gamma = build_gamma(&chi);
            let mut violation = None;
            for c in &cycles {
                let check = verify_link_free(&gamma, c, limits)?;
                if !check.link_free {
                    violation = Some(LinkViolation {
                        cycle: c.vertex_count(),
                        vertex: check.vertex.unwrap_or(0),
                        embedding: check.embedding.unwrap_or_default(),
                    });
                    break;
                }
            }
            let hole = find_tripartite_hole(&gamma, config.n, HoleMode::Auto, seed, limits)?;
            let link_free = violation.is_none();
            Ok(TrialReport {
                trial,
                seed,
                triples: gamma.triple_count(),
                link_free,
                violation,
                certified: link_free && hole == HoleOutcome::Absent,
                hole,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let first_certified = trials.iter().find(|t| t.certified).map(|t| t.trial);
    Ok(PipelineReport {
        config: config.clone(),
        palette,
        auxiliary,
        trials,
        first_certified,
    })
}
