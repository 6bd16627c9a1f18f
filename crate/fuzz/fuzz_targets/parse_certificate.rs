#![no_main]

use bchroma::gadgets::{audit_certificate, ReductionCertificate};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(cert) = serde_json::from_slice::<ReductionCertificate>(data) {
        if cert.instance.n() <= 64 {
            let _ = audit_certificate(&cert);
        }
    }
});
