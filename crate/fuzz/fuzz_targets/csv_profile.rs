#![no_main]

use hcmc_core::export::formats::{read_profile_csv, same_float, write_profile_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(rows) = read_profile_csv(data) else { return };
    let mut buf = Vec::new();
    write_profile_csv(&mut buf, &rows).expect("accepted rows must serialize");
    let again = read_profile_csv(buf.as_slice()).expect("written CSV must parse");
    assert_eq!(rows.len(), again.len());
    for (a, b) in rows.iter().zip(&again) {
        assert!(same_float(a.rho, b.rho) && same_float(a.lambda, b.lambda));
        assert!(same_float(a.lambda_dot, b.lambda_dot) && same_float(a.residual, b.residual));
    }
});
