#![no_main]
use glq_stab::label::{stabilize, LabelFunction};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(l) = LabelFunction::parse(s) {
        let again = LabelFunction::parse(&l.to_string()).expect("display parses");
        assert_eq!(again.shape(), l.shape());
        assert_eq!(again.norm(), l.norm());
        if !l.iota().is_empty() {
            let _ = stabilize(&l);
        }
    }
});
