//! Shape, topology and singularities of the complete hypersurface
//! assembled from a profile graph.

use serde::{Deserialize, Serialize};

use super::eval::Profile;
use super::{ProfileParams, Regime};
use crate::error::Result;

/// `λ(ρ₊)` counts as zero below this fraction of the total variation of `λ`.
pub const SIGN_ZERO_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Onduloid,
    Sphere,
    SingularOnduloid,
    Nodoid,
    TorusProduct,
    UnboundedAnnulus,
    EntireGraph,
    SingularAnnulus,
    SelfIntersectingAnnulus,
    PeakedSphere,
    HornTorus,
    SpindleTorusPortion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Topology {
    #[serde(rename = "S^n")]
    Sphere,
    #[serde(rename = "S^{n-1}xR")]
    Cylinder,
    #[serde(rename = "S^{n-1}xS^1")]
    Torus,
    #[serde(rename = "R^n")]
    Plane,
    /// Immersed with self-intersections; no simple homeomorphism type.
    #[serde(rename = "immersed")]
    Immersed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Multiplicity {
    One,
    Two,
    Infinite,
}

/// One component type of the singular set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "count", rename_all = "kebab-case")]
pub enum SingularPart {
    /// Spheres `S^{n-1}` made of cusps, in horizontal slices.
    CuspSpheres(Multiplicity),
    /// Spheres in horizontal slices along which `|A|² → ∞`.
    BlowupSpheres(Multiplicity),
    /// Points on the vertical axis where `|A|² → ∞`.
    AxisPoints(Multiplicity),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Regularity {
    C0,
    C1,
    C2,
}

/// Classification rows, grouped as T1 (supercritical `n > r`), T2
/// (sub/critical `n > r`) and T3 (`n = r`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableRow {
    #[serde(rename = "T1.1")]
    T1_1,
    #[serde(rename = "T1.2")]
    T1_2,
    #[serde(rename = "T1.3")]
    T1_3,
    #[serde(rename = "T1.4")]
    T1_4,
    #[serde(rename = "T1.5")]
    T1_5,
    #[serde(rename = "T2.1")]
    T2_1,
    #[serde(rename = "T2.2")]
    T2_2,
    #[serde(rename = "T2.3")]
    T2_3,
    #[serde(rename = "T2.4")]
    T2_4,
    #[serde(rename = "T3.1")]
    T3_1,
    #[serde(rename = "T3.2")]
    T3_2,
    #[serde(rename = "T3.3")]
    T3_3,
    #[serde(rename = "T3.4")]
    T3_4,
    #[serde(rename = "T3.5")]
    T3_5,
    #[serde(rename = "T3.6")]
    T3_6,
    #[serde(rename = "T3.7")]
    T3_7,
}

impl TableRow {
    pub const ALL: [TableRow; 16] = [
        TableRow::T1_1,
        TableRow::T1_2,
        TableRow::T1_3,
        TableRow::T1_4,
        TableRow::T1_5,
        TableRow::T2_1,
        TableRow::T2_2,
        TableRow::T2_3,
        TableRow::T2_4,
        TableRow::T3_1,
        TableRow::T3_2,
        TableRow::T3_3,
        TableRow::T3_4,
        TableRow::T3_5,
        TableRow::T3_6,
        TableRow::T3_7,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            TableRow::T1_1 => "T1.1",
            TableRow::T1_2 => "T1.2",
            TableRow::T1_3 => "T1.3",
            TableRow::T1_4 => "T1.4",
            TableRow::T1_5 => "T1.5",
            TableRow::T2_1 => "T2.1",
            TableRow::T2_2 => "T2.2",
            TableRow::T2_3 => "T2.3",
            TableRow::T2_4 => "T2.4",
            TableRow::T3_1 => "T3.1",
            TableRow::T3_2 => "T3.2",
            TableRow::T3_3 => "T3.3",
            TableRow::T3_4 => "T3.4",
            TableRow::T3_5 => "T3.5",
            TableRow::T3_6 => "T3.6",
            TableRow::T3_7 => "T3.7",
        }
    }

    /// Distinct (shape, topology, singular set) entry. Rows repeated across
    /// groups share a combination.
    pub fn combination(self) -> Combination {
        use Combination as C;
        match self {
            TableRow::T1_1 => C::Onduloid,
            TableRow::T1_2 | TableRow::T3_6 => C::Sphere,
            TableRow::T1_3 | TableRow::T3_5 => C::SingularOnduloid,
            TableRow::T1_4 | TableRow::T3_1 => C::Nodoid,
            TableRow::T1_5 => C::TorusProduct,
            TableRow::T2_1 => C::UnboundedAnnulus,
            TableRow::T2_2 => C::EntireGraph,
            TableRow::T2_3 => C::SingularAnnulus,
            TableRow::T2_4 => C::SelfIntersectingAnnulus,
            TableRow::T3_2 => C::AxialNodoid,
            TableRow::T3_3 => C::HornTorus,
            TableRow::T3_4 => C::SpindleTorusPortion,
            TableRow::T3_7 => C::PeakedSphere,
        }
    }
}

/// The 13 distinct classification entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Combination {
    Onduloid,
    Sphere,
    SingularOnduloid,
    /// Blow-up spheres in infinitely many slices (smooth when `r = 1`).
    Nodoid,
    TorusProduct,
    UnboundedAnnulus,
    EntireGraph,
    SingularAnnulus,
    SelfIntersectingAnnulus,
    /// Nodoid that also meets the axis at infinitely many singular points.
    AxialNodoid,
    HornTorus,
    SpindleTorusPortion,
    PeakedSphere,
}

impl Combination {
    pub const COUNT: usize = 13;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub params: ProfileParams,
    pub shape: Shape,
    pub topology: Topology,
    pub singular_set: Vec<SingularPart>,
    pub singularities: String,
    pub regularity: Regularity,
    pub table_row: TableRow,
    pub combination: Combination,
    /// `λ(ρ₊)` when it decided the row.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_plus: Option<f64>,
    /// Sign of `λ(ρ₊)` after the zero test, as -1, 0 or 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_plus_sign: Option<i8>,
}

/// Sign of `λ(ρ₊)`, with values below [`SIGN_ZERO_TOL`] times the total
/// variation of `λ` counted as zero.
fn endpoint_height_sign(profile: &Profile) -> Result<(f64, i8)> {
    let dom = profile.domain();
    let lp = profile.lambda_plus()?.unwrap_or(f64::NAN);
    let variation = match dom.rho_zero {
        Some(r0) => {
            let l0 = profile.lambda(r0)?;
            l0.abs() + (lp - l0).abs()
        }
        None => lp.abs(),
    };
    let sign = if lp.abs() <= SIGN_ZERO_TOL * variation {
        0
    } else if lp > 0.0 {
        1
    } else {
        -1
    };
    Ok((lp, sign))
}

pub fn classify(params: &ProfileParams) -> Result<ClassificationRecord> {
    params.check_admissible()?;
    let (n, r, d) = (params.n, params.r, params.d);
    let odd = r % 2 == 1;
    let mut lambda_plus = None;
    let mut sign_out = None;
    let mut sign_of_end = || -> Result<i8> {
        let profile = Profile::new(*params)?;
        if profile.height_diverges() {
            sign_out = Some(-1);
            return Ok(-1);
        }
        let (lp, s) = endpoint_height_sign(&profile)?;
        lambda_plus = Some(lp);
        sign_out = Some(s);
        Ok(s)
    };
    let row = if n == r {
        if d == 0.0 {
            TableRow::T3_6
        } else if d > 0.0 {
            TableRow::T3_7
        } else if !odd {
            TableRow::T3_5
        } else if d < -1.0 {
            TableRow::T3_1
        } else {
            match sign_of_end()? {
                1 => TableRow::T3_2,
                0 => TableRow::T3_3,
                _ => TableRow::T3_4,
            }
        }
    } else if params.regime() == Regime::Supercritical {
        if d > 0.0 {
            TableRow::T1_1
        } else if d == 0.0 {
            TableRow::T1_2
        } else if !odd {
            TableRow::T1_3
        } else if sign_of_end()? == 0 {
            TableRow::T1_5
        } else {
            TableRow::T1_4
        }
    } else if d > 0.0 {
        TableRow::T2_1
    } else if d == 0.0 {
        TableRow::T2_2
    } else if !odd {
        TableRow::T2_3
    } else {
        TableRow::T2_4
    };
    let (shape, topology, singular_set, regularity) = describe(row, r);
    Ok(ClassificationRecord {
        params: *params,
        shape,
        topology,
        singularities: describe_singular_set(&singular_set),
        singular_set,
        regularity,
        table_row: row,
        combination: row.combination(),
        lambda_plus,
        lambda_plus_sign: sign_out,
    })
}

fn describe(row: TableRow, r: u32) -> (Shape, Topology, Vec<SingularPart>, Regularity) {
    use Multiplicity::*;
    use SingularPart::*;
    let smooth = r == 1;
    match row {
        TableRow::T1_1 => (Shape::Onduloid, Topology::Cylinder, vec![], Regularity::C2),
        TableRow::T1_2 | TableRow::T3_6 => (Shape::Sphere, Topology::Sphere, vec![], Regularity::C2),
        TableRow::T1_3 | TableRow::T3_5 => (
            Shape::SingularOnduloid,
            Topology::Cylinder,
            vec![CuspSpheres(Infinite)],
            Regularity::C0,
        ),
        TableRow::T1_4 if smooth => (Shape::Nodoid, Topology::Immersed, vec![], Regularity::C2),
        TableRow::T1_4 | TableRow::T3_1 => (
            Shape::Nodoid,
            Topology::Immersed,
            vec![BlowupSpheres(Infinite)],
            Regularity::C1,
        ),
        TableRow::T1_5 => {
            (Shape::TorusProduct, Topology::Torus, vec![BlowupSpheres(Two)], Regularity::C1)
        }
        TableRow::T2_1 => (Shape::UnboundedAnnulus, Topology::Cylinder, vec![], Regularity::C2),
        TableRow::T2_2 => (Shape::EntireGraph, Topology::Plane, vec![], Regularity::C2),
        TableRow::T2_3 => {
            (Shape::SingularAnnulus, Topology::Cylinder, vec![CuspSpheres(One)], Regularity::C0)
        }
        TableRow::T2_4 if smooth => {
            (Shape::SelfIntersectingAnnulus, Topology::Cylinder, vec![], Regularity::C2)
        }
        TableRow::T2_4 => (
            Shape::SelfIntersectingAnnulus,
            Topology::Cylinder,
            vec![BlowupSpheres(Two)],
            Regularity::C1,
        ),
        TableRow::T3_2 => (
            Shape::Nodoid,
            Topology::Immersed,
            vec![AxisPoints(Infinite), BlowupSpheres(Infinite)],
            Regularity::C0,
        ),
        TableRow::T3_3 => (
            Shape::HornTorus,
            Topology::Immersed,
            vec![BlowupSpheres(Two), AxisPoints(One)],
            Regularity::C0,
        ),
        TableRow::T3_4 => (
            Shape::SpindleTorusPortion,
            Topology::Immersed,
            vec![BlowupSpheres(Two), AxisPoints(Two)],
            Regularity::C0,
        ),
        TableRow::T3_7 => {
            (Shape::PeakedSphere, Topology::Sphere, vec![AxisPoints(Two)], Regularity::C0)
        }
    }
}

fn describe_singular_set(parts: &[SingularPart]) -> String {
    if parts.is_empty() {
        return "none".into();
    }
    let count = |m: &Multiplicity, one: &str, many: &str| match m {
        Multiplicity::One => format!("one {one}"),
        Multiplicity::Two => format!("two {many}"),
        Multiplicity::Infinite => format!("infinitely many {many}"),
    };
    parts
        .iter()
        .map(|p| match p {
            SingularPart::CuspSpheres(m) => {
                format!("{} made of cusps in horizontal slices", count(m, "sphere", "spheres"))
            }
            SingularPart::BlowupSpheres(m) => {
                format!("|A|^2 blows up on {} in horizontal slices", count(m, "sphere", "spheres"))
            }
            SingularPart::AxisPoints(m) => {
                format!("|A|^2 blows up at {} on the axis", count(m, "point", "points"))
            }
        })
        .collect::<Vec<_>>()
        .join("; ")
}
