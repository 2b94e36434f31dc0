//! CSV and JSON profile files.
//!
//! Floats are written in shortest round-trip form, so a file re-parses to
//! the same bits. Non-finite values appear as `inf`, `-inf` and `NaN`
//! (JSON strings in JSON).

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rot_profile::{ProfileDomain, ProfileParams, ProfileSample};
use crate::trans_profile::{TranslationParams, TranslationSample};

pub const PROFILE_COLUMNS: [&str; 7] =
    ["rho", "lambda", "lambda_dot", "lambda_ddot", "k_tan", "k_n", "residual"];

pub const TRANSLATION_COLUMNS: [&str; 6] = ["rho", "mu", "mu_dot", "mu_ddot", "k_tan", "k_n"];

/// Shortest string that parses back to `x` exactly.
pub fn format_float(x: f64) -> String {
    if let Some(tag) = crate::float_serde::non_finite_tag(x) {
        return tag.to_string();
    }
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn parse_float(s: &str) -> Result<f64> {
    let t = s.trim();
    crate::float_serde::parse_tag(t)
        .or_else(|| t.parse::<f64>().ok())
        .ok_or_else(|| Error::InvalidInput(format!("not a number: {t:?}")))
}

/// `true` when both are NaN or the bits agree.
pub fn same_float(a: f64, b: f64) -> bool {
    (a.is_nan() && b.is_nan()) || a.to_bits() == b.to_bits()
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidInput(format!("csv: {e}"))
}

fn io_err(e: std::io::Error) -> Error {
    Error::Numeric(format!("i/o: {e}"))
}

fn write_table<W: Write>(w: W, header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(header).map_err(csv_err)?;
    for row in rows {
        wr.write_record(row.iter().map(|&x| format_float(x))).map_err(csv_err)?;
    }
    wr.flush().map_err(io_err)
}

fn read_table<R: Read>(r: R, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
    let got = rd.headers().map_err(csv_err)?.clone();
    if got.iter().map(str::trim).ne(header.iter().copied()) {
        return Err(Error::InvalidInput(format!(
            "expected columns {}, got {}",
            header.join(","),
            got.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(csv_err)?;
        if rec.len() != header.len() {
            return Err(Error::InvalidInput(format!(
                "row {} has {} fields, expected {}",
                rows.len() + 1,
                rec.len(),
                header.len()
            )));
        }
        rows.push(rec.iter().map(parse_float).collect::<Result<Vec<f64>>>()?);
    }
    Ok(rows)
}

pub fn write_profile_csv<W: Write>(w: W, samples: &[ProfileSample]) -> Result<()> {
    write_table(
        w,
        &PROFILE_COLUMNS,
        samples.iter().map(|s| {
            vec![s.rho, s.lambda, s.lambda_dot, s.lambda_ddot, s.k_tan, s.k_n, s.residual]
        }),
    )
}

pub fn read_profile_csv<R: Read>(r: R) -> Result<Vec<ProfileSample>> {
    Ok(read_table(r, &PROFILE_COLUMNS)?
        .into_iter()
        .map(|v| ProfileSample {
            rho: v[0],
            lambda: v[1],
            lambda_dot: v[2],
            lambda_ddot: v[3],
            k_tan: v[4],
            k_n: v[5],
            residual: v[6],
        })
        .collect())
}

pub fn write_translation_csv<W: Write>(w: W, samples: &[TranslationSample]) -> Result<()> {
    write_table(
        w,
        &TRANSLATION_COLUMNS,
        samples.iter().map(|s| vec![s.rho, s.mu, s.mu_dot, s.mu_ddot, s.k_tan, s.k_n]),
    )
}

pub fn read_translation_csv<R: Read>(r: R) -> Result<Vec<TranslationSample>> {
    Ok(read_table(r, &TRANSLATION_COLUMNS)?
        .into_iter()
        .map(|v| TranslationSample {
            rho: v[0],
            mu: v[1],
            mu_dot: v[2],
            mu_ddot: v[3],
            k_tan: v[4],
            k_n: v[5],
        })
        .collect())
}

/// A sampled rotational profile with the data that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileDocument {
    pub params: ProfileParams,
    pub domain: ProfileDomain,
    pub samples: Vec<ProfileSample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslationDocument {
    pub params: TranslationParams,
    pub rho_plus: f64,
    pub samples: Vec<TranslationSample>,
}

pub fn write_json<W: Write, T: Serialize>(w: W, doc: &T) -> Result<()> {
    serde_json::to_writer_pretty(w, doc).map_err(|e| Error::Numeric(format!("json: {e}")))
}

/// Parses a profile document and re-validates its parameters.
pub fn read_profile_json(s: &str) -> Result<ProfileDocument> {
    let doc: ProfileDocument =
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("json: {e}")))?;
    let p = doc.params;
    ProfileParams::new(p.n, p.r, p.h, p.d)?;
    Ok(doc)
}

pub fn read_translation_json(s: &str) -> Result<TranslationDocument> {
    let doc: TranslationDocument =
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("json: {e}")))?;
    let p = doc.params;
    TranslationParams::new(p.n, p.r, p.h, p.epsilon)?;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rot_profile::Profile;
    use proptest::prelude::*;

    fn same_sample(a: &ProfileSample, b: &ProfileSample) -> bool {
        [
            (a.rho, b.rho),
            (a.lambda, b.lambda),
            (a.lambda_dot, b.lambda_dot),
            (a.lambda_ddot, b.lambda_ddot),
            (a.k_tan, b.k_tan),
            (a.k_n, b.k_n),
            (a.residual, b.residual),
        ]
        .iter()
        .all(|&(x, y)| same_float(x, y))
    }

    fn sample_of(v: [f64; 7]) -> ProfileSample {
        ProfileSample {
            rho: v[0],
            lambda: v[1],
            lambda_dot: v[2],
            lambda_ddot: v[3],
            k_tan: v[4],
            k_n: v[5],
            residual: v[6],
        }
    }

    #[test]
    fn float_text() {
        assert_eq!(format_float(f64::INFINITY), "inf");
        assert_eq!(format_float(f64::NEG_INFINITY), "-inf");
        assert_eq!(format_float(f64::NAN), "NaN");
        assert_eq!(format_float(0.5), "0.5");
        assert_eq!(format_float(1e-300), "1e-300");
        assert_eq!(format_float(-0.0), "-0");
        assert!(parse_float("abc").is_err());
    }

    #[test]
    fn csv_round_trip_real_profile() {
        let p = Profile::new(ProfileParams::new(3, 2, 0.9, -0.05).unwrap()).unwrap();
        let s = p.sample(50).unwrap();
        let mut buf = Vec::new();
        write_profile_csv(&mut buf, &s).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("rho,lambda,lambda_dot,lambda_ddot,k_tan,k_n,residual\n"));
        let back = read_profile_csv(buf.as_slice()).unwrap();
        assert_eq!(back.len(), s.len());
        assert!(s.iter().zip(&back).all(|(a, b)| same_sample(a, b)));
    }

    #[test]
    fn json_round_trip_with_non_finite() {
        let p = Profile::new(ProfileParams::new(3, 2, 0.9, -0.05).unwrap()).unwrap();
        let mut s = p.sample(10).unwrap();
        s[0].lambda_ddot = f64::INFINITY;
        s[1].k_n = f64::NEG_INFINITY;
        s[2].residual = f64::NAN;
        let doc = ProfileDocument { params: *p.params(), domain: *p.domain(), samples: s };
        let mut buf = Vec::new();
        write_json(&mut buf, &doc).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\"inf\"") && text.contains("\"-inf\"") && text.contains("\"NaN\""));
        let back = read_profile_json(&text).unwrap();
        assert_eq!(back.params, doc.params);
        assert!(doc.samples.iter().zip(&back.samples).all(|(a, b)| same_sample(a, b)));
    }

    #[test]
    fn csv_rejects_bad_input() {
        assert!(read_profile_csv("rho,lambda\n1,2\n".as_bytes()).is_err());
        let hdr = PROFILE_COLUMNS.join(",");
        assert!(read_profile_csv(format!("{hdr}\n1,2,3\n").as_bytes()).is_err());
        assert!(read_profile_csv(format!("{hdr}\n1,2,3,4,5,6,x\n").as_bytes()).is_err());
        assert!(read_profile_csv(format!("{hdr}\n").as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn json_rejects_bad_params() {
        let bad = r#"{"params":{"n":1,"r":1,"H":1,"d":0},
            "domain":{"rho_minus":0,"rho_plus":null,"rho_zero":null,"left":"regular-origin","right":null},
            "samples":[]}"#;
        assert!(read_profile_json(bad).is_err());
        assert!(read_profile_json("{").is_err());
    }

    proptest! {
        #[test]
        fn csv_bits_survive(v in prop::array::uniform7(any::<f64>())) {
            let s = sample_of(v);
            let mut buf = Vec::new();
            write_profile_csv(&mut buf, &[s]).unwrap();
            let back = read_profile_csv(buf.as_slice()).unwrap();
            prop_assert!(same_sample(&s, &back[0]));
        }

        #[test]
        fn json_bits_survive(v in prop::array::uniform7(any::<f64>())) {
            let s = sample_of(v);
            let text = serde_json::to_string(&s).unwrap();
            let back: ProfileSample = serde_json::from_str(&text).unwrap();
            prop_assert!(same_sample(&s, &back));
        }
    }
}
