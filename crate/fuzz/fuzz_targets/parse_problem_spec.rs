#![no_main]

use libfuzzer_sys::fuzz_target;

// Problem files are attacker-controlled input: parsing and module
// validation must never panic, only return errors.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = tatekit::problem::parse_problem(text) {
        let _ = spec.group().order();
        for name in spec.module_names() {
            let _ = spec.module(name);
        }
    }
});
