#![no_main]
use glq_stab::Partition;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = Partition::parse(s) {
        assert_eq!(Partition::parse(&p.to_string()).unwrap(), p);
        assert_eq!(p.transpose().transpose(), p);
    }
});
