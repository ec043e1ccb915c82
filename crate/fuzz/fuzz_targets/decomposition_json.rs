#![no_main]
use glq_stab::branching::Decomposition;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else {
        return;
    };
    if let Ok(d) = Decomposition::from_json(&v) {
        let back = Decomposition::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
    }
});
