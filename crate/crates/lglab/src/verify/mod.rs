//! Embeddedness verification for immersed sphere meshes.
//!
//! A single run checks the Gauss map, the height Morse structure, level
//! curve connectedness, fiber hit counts and the two-sheet decomposition in
//! the open-book model, the Poincaré-Hopf index sum around the central
//! fiber, and exact triangle self-intersection. `full_report` bundles the
//! results into a deterministic JSON-serializable report, and
//! `consistency_violations` cross-checks the implications that must hold
//! between them.

pub(crate) mod fibers;
mod hopf;
mod intersect;
mod level;
mod morse;

pub use fibers::{bigraph_check, fiber_hits, BigraphReport, FiberHit, FiberProbe};
pub use hopf::{poincare_hopf_index_sum, HopfReport};
pub use intersect::{self_intersections, tri_tri_intersect};
pub use level::{level_curves, LevelCurveSet};
pub use morse::{critical_points_of_height, CriticalKind, CriticalPoint, MorseReport};

use crate::error::{Error, Result};
use crate::group::LieGroupModel;
use crate::openbook::{make_open_book, Fiber};
use crate::surface::{is_gauss_diffeo, left_gauss_map, SphereMesh};
use crate::tol::{DIFFEO_JACOBIAN_TOL, RESAMPLE_BUDGET};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    /// Number of level-curve heights sampled strictly between z0 and z1.
    pub z_samples: usize,
    /// Side length of the fiber sample grid over the projected bounding box.
    pub fiber_grid: usize,
    /// Seed for all degeneracy-breaking jitter; recorded in the report.
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { z_samples: 32, fiber_grid: 64, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct GaussSection {
    pub degree: i64,
    pub min_abs_jacobian: f64,
    pub diffeo: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct MorseSection {
    pub count: usize,
    pub indices: Vec<u8>,
    pub z0: f64,
    pub z1: f64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct LevelCurveSection {
    pub z: f64,
    pub components: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct FiberSection {
    pub grid: usize,
    pub max_hits: usize,
    pub histogram: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct BigraphSection {
    pub ok: bool,
    pub sheet_sizes: (usize, usize),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub enum Verdict {
    Embedded,
    NotEmbedded,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct ConfigSection {
    pub z_samples: usize,
    pub fiber_grid: usize,
    /// Set when the open-book checks were skipped, with the reason.
    pub note: Option<String>,
}

/// Field order fixes the JSON key order, so serialization is byte-stable.
/// Open-book sections are null when the model admits no open book or when
/// a resample budget ran out before the section completed.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub group: String,
    pub gauss: GaussSection,
    pub morse: Option<MorseSection>,
    pub level_curves: Option<Vec<LevelCurveSection>>,
    pub fibers: Option<FiberSection>,
    pub bigraph: Option<BigraphSection>,
    pub self_intersections: Vec<[usize; 2]>,
    pub poincare_hopf: Option<i64>,
    pub verdict: Verdict,
    pub seed: u64,
    pub config: ConfigSection,
}

/// Treat an exhausted resample budget as "inconclusive section" rather than
/// a hard failure; every other error propagates.
fn soften<T>(r: Result<T>, inconclusive: &mut bool) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::ResampleBudget { .. }) => {
            *inconclusive = true;
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn sample_level_curves(
    mesh: &SphereMesh,
    z0: f64,
    z1: f64,
    samples: usize,
) -> Result<Vec<LevelCurveSection>> {
    let band = 2.0 * mesh.median_edge_length();
    let (mut lo, mut hi) = (z0 + band, z1 - band);
    if lo >= hi {
        lo = z0 + 0.25 * (z1 - z0);
        hi = z1 - 0.25 * (z1 - z0);
    }
    if lo >= hi {
        return Err(Error::DegenerateGeometry {
            reason: format!("height range [{z0}, {z1}] leaves no room for level samples"),
        });
    }
    let mut sections = Vec::with_capacity(samples);
    for i in 0..samples {
        let base = lo + (i as f64 + 0.5) * (hi - lo) / samples as f64;
        let mut placed = false;
        for attempt in 0..=RESAMPLE_BUDGET {
            let z = base + (hi - lo) * 1e-9 * attempt as f64;
            match level_curves(mesh, z) {
                Ok(set) => {
                    sections.push(LevelCurveSection { z, components: set.components() });
                    placed = true;
                    break;
                }
                Err(Error::VertexHeightCollision { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        if !placed {
            return Err(Error::ResampleBudget {
                context: format!("level curve height near z = {base}"),
                attempts: RESAMPLE_BUDGET + 1,
            });
        }
    }
    Ok(sections)
}

/// Run every applicable check on `mesh` in `model` and assemble the report.
///
/// The Gauss map and self-intersection checks always run. When the model
/// admits an open book, the mesh is carried into the upper-triangular model
/// by the classifying plane rotation and the Morse, level-curve, fiber,
/// bigraph, and index-sum checks run there.
pub fn full_report(
    model: &LieGroupModel,
    mesh: &SphereMesh,
    config: VerifyConfig,
) -> Result<VerificationReport> {
    let gauss_data = left_gauss_map(model, mesh)?;
    let check = is_gauss_diffeo(&gauss_data, DIFFEO_JACOBIAN_TOL);
    let gauss = GaussSection {
        degree: check.degree,
        min_abs_jacobian: check.min_abs_jacobian,
        diffeo: check.ok,
    };
    let pairs = self_intersections(mesh);

    let mut inconclusive = false;
    let mut morse = None;
    let mut level_sections = None;
    let mut fiber_section = None;
    let mut bigraph_section = None;
    let mut hopf_sum = None;
    let mut note = None;

    if model.admits_open_book {
        let book = make_open_book(model)?;
        let mesh_m = mesh.plane_rotated(book.basis_change);

        let morse_report = soften(critical_points_of_height(&mesh_m, config.seed), &mut inconclusive)?;
        if let Some(r) = &morse_report {
            morse = Some(MorseSection {
                count: r.criticals.len(),
                indices: r.indices(),
                z0: r.z_min,
                z1: r.z_max,
            });
            level_sections = soften(
                sample_level_curves(&mesh_m, r.z_min, r.z_max, config.z_samples),
                &mut inconclusive,
            )?;
        }

        let bigraph = soften(
            bigraph_check(&mesh_m, config.fiber_grid, config.seed),
            &mut inconclusive,
        )?;
        let central = bigraph.as_ref().and_then(|b| b.central_fiber).unwrap_or_else(|| {
            let (lo, hi) = mesh_m.bounding_box();
            Fiber { y: 0.5 * (lo[1] + hi[1]), z: 0.5 * (lo[2] + hi[2]) }
        });
        if let Some(b) = bigraph {
            fiber_section = Some(FiberSection {
                grid: b.grid,
                max_hits: b.max_hits,
                histogram: b.histogram.clone(),
            });
            bigraph_section = Some(BigraphSection { ok: b.ok, sheet_sizes: b.sheet_sizes });
        }

        let hopf = soften(
            poincare_hopf_index_sum(&mesh_m, central, config.seed),
            &mut inconclusive,
        )?;
        hopf_sum = hopf.map(|h| h.index_sum);
    } else {
        note = Some(format!(
            "open book checks skipped: {} admits no upper triangular model",
            model.label
        ));
    }

    let verdict = if inconclusive {
        Verdict::Inconclusive
    } else if pairs.is_empty() {
        Verdict::Embedded
    } else {
        Verdict::NotEmbedded
    };

    Ok(VerificationReport {
        group: model.label.to_string(),
        gauss,
        morse,
        level_curves: level_sections,
        fibers: fiber_section,
        bigraph: bigraph_section,
        self_intersections: pairs,
        poincare_hopf: hopf_sum,
        verdict,
        seed: config.seed,
        config: ConfigSection {
            z_samples: config.z_samples,
            fiber_grid: config.fiber_grid,
            note,
        },
    })
}

/// Implications between report sections that must hold on every run. A
/// nonempty result means the toolkit contradicted itself, not merely that
/// the surface failed a check.
pub fn consistency_violations(
    report: &VerificationReport,
    admits_open_book: bool,
) -> Vec<String> {
    let mut out = Vec::new();
    let diffeo = report.gauss.diffeo;
    if diffeo && admits_open_book && report.verdict == Verdict::NotEmbedded {
        out.push(format!(
            "Gauss map is a diffeomorphism in an open-book model, yet {} self-intersection pairs were found",
            report.self_intersections.len()
        ));
    }
    if diffeo {
        if let Some(f) = &report.fibers {
            if f.max_hits > 2 {
                out.push(format!(
                    "fiber hit bound violated: max {} hits on an interior fiber of a Gauss-diffeomorphic sphere",
                    f.max_hits
                ));
            }
        }
        if let Some(m) = &report.morse {
            if m.count != 2 || m.indices != [0, 2] {
                out.push(format!(
                    "height function of a Gauss-diffeomorphic sphere has critical indices {:?}, expected [0, 2]",
                    m.indices
                ));
            }
        }
        if let Some(levels) = &report.level_curves {
            for s in levels {
                if s.components != 1 {
                    out.push(format!(
                        "level curve at z = {} has {} components on a Gauss-diffeomorphic sphere",
                        s.z, s.components
                    ));
                }
            }
        }
        if let Some(b) = &report.bigraph {
            if !b.ok {
                out.push("two-sheet decomposition failed for a Gauss-diffeomorphic sphere".into());
            }
        }
    }
    if let (Some(f), Some(b), Some(sum)) = (&report.fibers, &report.bigraph, report.poincare_hopf)
    {
        // An empty histogram means no interior fiber was seen, so the index
        // sum had no two-point fiber to certify.
        if b.ok && !f.histogram.is_empty() && sum != 2 {
            out.push(format!(
                "index sum around the central fiber is {sum}, expected the Euler characteristic 2"
            ));
        }
    }
    out
}
