//! How reflected and translated copies of one profile graph fit together.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rot_profile::{EndpointFlag, Profile, TableRow};

/// One copy of the graph: heights `offset + λ`, or `offset - λ` when mirrored.
/// Mirrored copies are traversed from the right end of the graph to the left.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub rho_start: f64,
    pub rho_end: f64,
    pub offset: f64,
    pub mirror: bool,
}

impl Piece {
    pub fn height(&self, lambda: f64) -> f64 {
        if self.mirror {
            self.offset - lambda
        } else {
            self.offset + lambda
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssemblyPlan {
    pub pieces: Vec<Piece>,
    /// Whether the listed pieces are a truncation of a periodic surface.
    pub periodic: bool,
    /// Vertical period `2λ(ρ₊)` of periodic surfaces.
    pub period: Option<f64>,
    /// Compact without boundary: closed through the axis or as a loop.
    pub closed: bool,
}

impl AssemblyPlan {
    /// Rows where two pieces meet. A periodic plan counts the junction
    /// that continues into the next, unlisted period.
    pub fn junction_count(&self) -> usize {
        let k = self.pieces.len();
        if self.periodic || self.closed_loop() {
            k
        } else {
            k.saturating_sub(1)
        }
    }

    /// Closed without meeting the axis: the walk starts on a mirrored
    /// copy and returns to its first row.
    pub fn closed_loop(&self) -> bool {
        self.closed && self.pieces.first().is_some_and(|p| p.mirror)
    }
}

fn left_on_axis(profile: &Profile) -> bool {
    let d = profile.domain();
    d.rho_minus == 0.0 && matches!(d.left, EndpointFlag::RegularOrigin | EndpointFlag::Cone)
}

/// The assembly prescribed for `row`, with `periods` periods listed for
/// periodic surfaces.
///
/// * Graphs from the axis to a vertical end are mirrored across the slice
///   at `λ(ρ₊)`; the axial nodoid repeats this with period `2λ(ρ₊)`.
/// * Graphs with both ends off the axis are mirrored across the slice at
///   0 and, unless `λ(ρ₊) = 0`, translated by multiples of `2λ(ρ₊)`.
/// * Unbounded graphs are kept as they are from the axis, or mirrored
///   across 0 when they start off it.
pub fn plan_assembly(profile: &Profile, row: TableRow, periods: usize) -> Result<AssemblyPlan> {
    if periods == 0 {
        return Err(Error::InvalidInput("periods must be at least 1".into()));
    }
    let dom = profile.domain();
    let (a, b) = (dom.rho_minus, profile.extent());
    let piece = |offset: f64, mirror: bool| Piece { rho_start: a, rho_end: b, offset, mirror };
    let on_axis = left_on_axis(profile);
    let Some(_) = dom.rho_plus else {
        return Ok(if on_axis {
            AssemblyPlan { pieces: vec![piece(0.0, false)], periodic: false, period: None, closed: false }
        } else {
            AssemblyPlan {
                pieces: vec![piece(0.0, true), piece(0.0, false)],
                periodic: false,
                period: None,
                closed: false,
            }
        });
    };
    let lp = profile.lambda_plus()?.unwrap_or(f64::NAN);
    if on_axis {
        let periodic = row == TableRow::T3_2;
        let count = if periodic { periods } else { 1 };
        let mut pieces = Vec::with_capacity(2 * count);
        for j in 0..count {
            let base = 2.0 * lp * j as f64;
            pieces.push(piece(base, false));
            pieces.push(piece(base + 2.0 * lp, true));
        }
        return Ok(AssemblyPlan {
            pieces,
            periodic,
            period: periodic.then_some(2.0 * lp),
            closed: !periodic,
        });
    }
    if row == TableRow::T1_5 {
        return Ok(AssemblyPlan {
            pieces: vec![piece(0.0, true), piece(0.0, false)],
            periodic: false,
            period: None,
            closed: true,
        });
    }
    let mut pieces = Vec::with_capacity(2 * periods);
    for j in 0..periods {
        let base = 2.0 * lp * j as f64;
        pieces.push(piece(base, true));
        pieces.push(piece(base, false));
    }
    Ok(AssemblyPlan { pieces, periodic: true, period: Some(2.0 * lp), closed: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rot_profile::{classify, ProfileParams};

    fn plan(n: u32, r: u32, h: f64, d: f64, k: usize) -> AssemblyPlan {
        let p = ProfileParams::new(n, r, h, d).unwrap();
        let row = classify(&p).unwrap().table_row;
        plan_assembly(&Profile::new(p).unwrap(), row, k).unwrap()
    }

    #[test]
    fn sphere_is_two_closed_pieces() {
        let a = plan(2, 1, 1.0, 0.0, 3);
        assert_eq!(a.pieces.len(), 2);
        assert!(a.closed && !a.periodic);
        assert_eq!(a.junction_count(), 1);
        assert!(!a.pieces[0].mirror && a.pieces[1].mirror);
    }

    #[test]
    fn onduloid_periods() {
        let a = plan(3, 2, 0.9, 0.05, 3);
        assert!(a.periodic && !a.closed);
        assert_eq!(a.pieces.len(), 6);
        assert_eq!(a.junction_count(), 6);
        assert!(a.pieces.windows(2).all(|w| w[0].mirror != w[1].mirror));
        let per = a.period.unwrap();
        assert!(per > 0.0);
        assert!((a.pieces[2].offset - per).abs() < 1e-15);
    }

    #[test]
    fn adjacent_pieces_meet() {
        for (n, r, h, d) in [(3, 2, 0.9, 0.05), (2, 1, 1.0, 0.0), (3, 1, 1.0, -0.1), (3, 3, 1.0, -0.3)] {
            let p = ProfileParams::new(n, r, h, d).unwrap();
            let prof = Profile::new(p).unwrap();
            let row = classify(&p).unwrap().table_row;
            let a = plan_assembly(&prof, row, 2).unwrap();
            let lp = prof.lambda_plus().unwrap().unwrap();
            for w in a.pieces.windows(2) {
                // mirrored copies are walked right to left
                let end = |q: &Piece| if q.mirror { q.height(0.0) } else { q.height(lp) };
                let start = |q: &Piece| if q.mirror { q.height(lp) } else { q.height(0.0) };
                assert!((end(&w[0]) - start(&w[1])).abs() < 1e-12, "({n},{r},{h},{d})");
            }
        }
    }

    #[test]
    fn torus_closes_as_loop() {
        let a = plan(4, 3, 10.0, -0.10883841401201091, 3);
        assert!(a.closed && a.closed_loop());
        assert_eq!(a.junction_count(), 2);
    }

    #[test]
    fn unbounded_shapes() {
        assert_eq!(plan(3, 1, 0.5, 0.0, 2).pieces.len(), 1);
        assert_eq!(plan(3, 1, 0.5, 0.2, 2).pieces.len(), 2);
        assert!(plan_assembly(
            &Profile::new(ProfileParams::new(3, 1, 0.5, 0.0).unwrap()).unwrap(),
            TableRow::T2_2,
            0
        )
        .is_err());
    }
}
