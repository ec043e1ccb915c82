#![no_main]
use glq_stab::LabelShape;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else {
        return;
    };
    if let Ok(s) = LabelShape::from_json(&v) {
        assert_eq!(LabelShape::from_json(&s.to_json()).unwrap(), s);
    }
});
