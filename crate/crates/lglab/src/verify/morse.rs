//! Critical points of the height function `z` restricted to the mesh.
//!
//! A vertex is classified by the sign pattern of `z(neighbor) - z(vertex)`
//! around its cyclic link: no sign change means extremum, `2m >= 4` changes a
//! saddle of multiplicity `m - 1`. Icospheres have rings of equal-height
//! vertices, so heights are jittered deterministically until no edge is level.

use crate::error::{Error, Result};
use crate::surface::SphereMesh;
use crate::tol::{JITTER_MAX, RESAMPLE_BUDGET};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriticalKind {
    Minimum,
    Saddle { multiplicity: u32 },
    Maximum,
}

impl CriticalKind {
    /// Morse indices contributed by this critical vertex.
    pub fn indices(self) -> Vec<u8> {
        match self {
            CriticalKind::Minimum => vec![0],
            CriticalKind::Saddle { multiplicity } => vec![1; multiplicity as usize],
            CriticalKind::Maximum => vec![2],
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CriticalPoint {
    pub vertex: usize,
    pub kind: CriticalKind,
    /// True (unjittered) height of the vertex.
    pub height: f64,
}

#[derive(Clone, Debug)]
pub struct MorseReport {
    pub criticals: Vec<CriticalPoint>,
    pub z_min: f64,
    pub z_max: f64,
    pub min_vertex: usize,
    pub max_vertex: usize,
    /// 0 when the raw heights already had no level edges.
    pub jitter_attempts: u32,
}

impl MorseReport {
    /// Expanded list of Morse indices, ascending.
    pub fn indices(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self
            .criticals
            .iter()
            .flat_map(|c| c.kind.indices())
            .collect();
        out.sort_unstable();
        out
    }

    /// `#minima - #saddles + #maxima`; equals 2 on any combinatorial sphere.
    pub fn index_sum(&self) -> i64 {
        self.criticals
            .iter()
            .map(|c| match c.kind {
                CriticalKind::Minimum | CriticalKind::Maximum => 1,
                CriticalKind::Saddle { multiplicity } => -(multiplicity as i64),
            })
            .sum()
    }
}

pub fn critical_points_of_height(mesh: &SphereMesh, seed: u64) -> Result<MorseReport> {
    let n = mesh.vertex_count();
    for attempt in 0..=RESAMPLE_BUDGET {
        let mut heights: Vec<f64> = mesh.vertices().iter().map(|v| v.z).collect();
        if attempt > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
            for h in &mut heights {
                *h += rng.gen_range(-JITTER_MAX..=JITTER_MAX);
            }
        }
        let level_edge = (0..n).any(|v| {
            mesh.vertex_link(v)
                .iter()
                .any(|&u| heights[u] == heights[v])
        });
        if level_edge {
            continue;
        }
        let mut criticals = Vec::new();
        for v in 0..n {
            let link = mesh.vertex_link(v);
            let above: Vec<bool> = link.iter().map(|&u| heights[u] > heights[v]).collect();
            let changes = (0..above.len())
                .filter(|&k| above[k] != above[(k + 1) % above.len()])
                .count();
            let kind = match changes {
                0 if above[0] => Some(CriticalKind::Minimum),
                0 => Some(CriticalKind::Maximum),
                2 => None,
                c => Some(CriticalKind::Saddle {
                    multiplicity: (c as u32 - 2) / 2,
                }),
            };
            if let Some(kind) = kind {
                criticals.push(CriticalPoint {
                    vertex: v,
                    kind,
                    height: mesh.vertices()[v].z,
                });
            }
        }
        let (mut min_vertex, mut max_vertex) = (0, 0);
        for v in 1..n {
            if mesh.vertices()[v].z < mesh.vertices()[min_vertex].z {
                min_vertex = v;
            }
            if mesh.vertices()[v].z > mesh.vertices()[max_vertex].z {
                max_vertex = v;
            }
        }
        return Ok(MorseReport {
            criticals,
            z_min: mesh.vertices()[min_vertex].z,
            z_max: mesh.vertices()[max_vertex].z,
            min_vertex,
            max_vertex,
            jitter_attempts: attempt,
        });
    }
    Err(Error::ResampleBudget {
        context: "height critical points".into(),
        attempts: RESAMPLE_BUDGET + 1,
    })
}
