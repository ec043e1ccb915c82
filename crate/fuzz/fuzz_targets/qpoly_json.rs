#![no_main]
use glq_stab::qpoly::QPolynomial;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else {
        return;
    };
    if let Ok(p) = QPolynomial::from_json(&v) {
        assert_eq!(QPolynomial::from_json(&p.to_json()).unwrap(), p);
    }
});
