//! Poincaré-ball embedding and surface meshes of revolution for `n = 2`.

use std::collections::HashMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::assembly::AssemblyPlan;
use crate::error::{Error, Result};
use crate::rot_profile::{EndpointFlag, Profile};

/// A point of `H^n × R` with `H^n` in the Poincaré ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddedPoint {
    pub ball: Vec<f64>,
    pub t: f64,
}

/// `(tanh(ρ/2) ξ, t)` for a unit direction `ξ`.
pub fn embed(rho: f64, t: f64, xi: &[f64]) -> Result<EmbeddedPoint> {
    let norm = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !((norm - 1.0).abs() < 1e-12) || !rho.is_finite() || rho < 0.0 {
        return Err(Error::InvalidInput(format!(
            "need a unit direction and finite rho >= 0, got |xi| = {norm}, rho = {rho}"
        )));
    }
    let s = (0.5 * rho).tanh();
    Ok(EmbeddedPoint { ball: xi.iter().map(|x| s * x).collect(), t })
}

/// Vertices `(ball x, ball y, t)` and polygonal faces, 0-based.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<Vec<usize>>,
    /// Vertices on cusp, cone or curvature blow-up rows.
    pub singular: Vec<usize>,
}

#[derive(Debug, Clone, Copy)]
struct Row {
    rho: f64,
    t: f64,
    singular: bool,
}

impl Mesh {
    fn edges(&self) -> HashMap<(usize, usize), usize> {
        let mut e = HashMap::new();
        for f in &self.faces {
            for i in 0..f.len() {
                let (a, b) = (f[i], f[(i + 1) % f.len()]);
                *e.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        e
    }

    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges().len() as i64 + self.faces.len() as i64
    }

    /// Every edge bounds exactly two faces.
    pub fn is_closed(&self) -> bool {
        self.edges().values().all(|&c| c == 2)
    }

    pub fn max_ball_norm(&self) -> f64 {
        self.vertices.iter().map(|v| v[0].hypot(v[1])).fold(0.0, f64::max)
    }

    pub fn write_obj<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for v in &self.vertices {
            writeln!(w, "v {} {} {}", v[0], v[1], v[2])?;
        }
        for f in &self.faces {
            write!(w, "f")?;
            for i in f {
                write!(w, " {}", i + 1)?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    /// Sidecar listing singular vertices, 1-based as in the OBJ file.
    pub fn write_singular_sidecar<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# singular vertex indices (1-based)")?;
        for i in &self.singular {
            writeln!(w, "{}", i + 1)?;
        }
        Ok(())
    }
}

fn graph_rows(profile: &Profile, samples: usize) -> Result<Vec<Row>> {
    let dom = profile.domain();
    let r = profile.params().r;
    let mut pts = profile.sample_points(samples, profile.extent());
    let blowup = dom.rho_zero.filter(|_| r > 1);
    if let Some(r0) = blowup {
        if !pts.contains(&r0) {
            let at = pts.partition_point(|&x| x < r0);
            pts.insert(at, r0);
        }
    }
    let s = profile.sample_at(&pts)?;
    Ok(s.iter()
        .map(|q| {
            let cusp = q.rho == dom.rho_minus && dom.left == EndpointFlag::Cusp;
            let cone = q.rho == 0.0 && dom.left == EndpointFlag::Cone;
            Row { rho: q.rho, t: q.lambda, singular: cusp || cone || Some(q.rho) == blowup }
        })
        .collect())
}

/// Revolves the assembled profile curve about the vertical axis.
///
/// Rows on the axis collapse to one vertex with a triangle fan; shared
/// junction rows are welded, and a loop is closed back onto its first row.
pub fn build_mesh(profile: &Profile, plan: &AssemblyPlan, samples: usize, azimuthal: usize) -> Result<Mesh> {
    if profile.params().n != 2 {
        return Err(Error::InvalidInput(format!(
            "surface meshes need n = 2, got n = {}",
            profile.params().n
        )));
    }
    if samples < 2 || azimuthal < 3 {
        return Err(Error::InvalidInput(format!(
            "need samples >= 2 and azimuthal >= 3, got {samples} and {azimuthal}"
        )));
    }
    let graph = graph_rows(profile, samples)?;
    let mut rows: Vec<Row> = Vec::new();
    for piece in &plan.pieces {
        let mut seq: Vec<Row> = graph
            .iter()
            .map(|g| Row { rho: g.rho, t: piece.height(g.t), singular: g.singular })
            .collect();
        if piece.mirror {
            seq.reverse();
        }
        let skip = usize::from(!rows.is_empty());
        rows.extend(seq.into_iter().skip(skip));
    }
    if plan.closed_loop() && rows.len() > 2 {
        rows.pop();
    }
    let wrap = plan.closed_loop();

    let mut mesh = Mesh::default();
    // first vertex index and vertex count per row
    let mut ring: Vec<(usize, usize)> = Vec::with_capacity(rows.len());
    for row in &rows {
        let start = mesh.vertices.len();
        if row.rho == 0.0 {
            mesh.vertices.push([0.0, 0.0, row.t]);
        } else {
            let s = (0.5 * row.rho).tanh();
            for j in 0..azimuthal {
                let phi = std::f64::consts::TAU * j as f64 / azimuthal as f64;
                mesh.vertices.push([s * phi.cos(), s * phi.sin(), row.t]);
            }
        }
        let count = mesh.vertices.len() - start;
        if row.singular {
            mesh.singular.extend(start..start + count);
        }
        ring.push((start, count));
    }
    let m = azimuthal;
    let mut join = |a: (usize, usize), b: (usize, usize)| match (a.1, b.1) {
        (1, 1) => {}
        (1, _) => (0..m).for_each(|j| mesh.faces.push(vec![a.0, b.0 + j, b.0 + (j + 1) % m])),
        (_, 1) => (0..m).for_each(|j| mesh.faces.push(vec![a.0 + j, b.0, a.0 + (j + 1) % m])),
        _ => (0..m).for_each(|j| {
            let j1 = (j + 1) % m;
            mesh.faces.push(vec![a.0 + j, b.0 + j, b.0 + j1, a.0 + j1]);
        }),
    };
    for w in ring.windows(2) {
        join(w[0], w[1]);
    }
    if wrap {
        join(ring[ring.len() - 1], ring[0]);
    }
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::export::assembly::plan_assembly;
    use crate::rot_profile::{classify, ProfileParams};

    fn mesh_for(n: u32, r: u32, h: f64, d: f64, samples: usize) -> Mesh {
        let p = ProfileParams::new(n, r, h, d).unwrap();
        let prof = Profile::new(p).unwrap();
        let plan = plan_assembly(&prof, classify(&p).unwrap().table_row, 2).unwrap();
        build_mesh(&prof, &plan, samples, 24).unwrap()
    }

    #[test]
    fn embedding_radius() {
        let e = embed(1.2, 0.4, &[0.6, 0.8]).unwrap();
        let norm = e.ball[0].hypot(e.ball[1]);
        assert!((norm - 0.6f64.tanh()).abs() < 1e-15);
        assert!(embed(1.0, 0.0, &[1.0, 1.0]).is_err());
    }

    #[test]
    fn sphere_is_closed_genus_zero() {
        let m = mesh_for(2, 1, 1.0, 0.0, 40);
        assert!(m.is_closed());
        assert_eq!(m.euler_characteristic(), 2);
        assert!(m.max_ball_norm() < 1.0);
        assert!(m.singular.is_empty());
    }

    #[test]
    fn two_sample_band() {
        // (2,1,0.4,0.1): an unbounded annulus; two samples give one band per copy
        let p = ProfileParams::new(2, 1, 0.4, 0.1).unwrap();
        let prof = Profile::new(p).unwrap();
        let single = AssemblyPlan {
            pieces: vec![crate::export::assembly::Piece {
                rho_start: 0.0,
                rho_end: 1.0,
                offset: 0.0,
                mirror: false,
            }],
            periodic: false,
            period: None,
            closed: false,
        };
        let m = build_mesh(&prof, &single, 2, 8).unwrap();
        assert_eq!(m.vertices.len(), 16);
        assert_eq!(m.faces.len(), 8);
    }

    #[test]
    fn onduloid_is_an_open_tube() {
        let m = mesh_for(2, 1, 1.0, 0.1, 20);
        assert!(!m.is_closed());
        assert_eq!(m.euler_characteristic(), 0);
    }

    #[test]
    fn peaked_sphere_tags_cones() {
        let m = mesh_for(2, 2, 1.0, 0.5, 20);
        assert!(m.is_closed());
        assert_eq!(m.euler_characteristic(), 2);
        assert_eq!(m.singular.len(), 2);
    }

    #[test]
    fn rejects_higher_dimensions() {
        let p = ProfileParams::new(3, 1, 1.0, 0.0).unwrap();
        let prof = Profile::new(p).unwrap();
        let plan = plan_assembly(&prof, classify(&p).unwrap().table_row, 1).unwrap();
        assert!(build_mesh(&prof, &plan, 10, 8).is_err());
    }
}
