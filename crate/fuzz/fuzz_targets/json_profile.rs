#![no_main]

use hcmc_core::export::formats::{read_profile_json, same_float};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = read_profile_json(text) else { return };
    let written = serde_json::to_string(&doc).expect("accepted documents must serialize");
    let again = read_profile_json(&written).expect("written JSON must parse");
    assert_eq!(doc.samples.len(), again.samples.len());
    for (a, b) in doc.samples.iter().zip(&again.samples) {
        assert!(same_float(a.lambda_ddot, b.lambda_ddot) && same_float(a.k_n, b.k_n));
    }
});
