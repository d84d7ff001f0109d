#![no_main]

use libfuzzer_sys::fuzz_target;
use tatekit::gmodule::GModule;
use tatekit::group::FiniteGroup;

// Cocycle tables are attacker-controlled input: document parsing and the
// binding of a document to a module must never panic.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = tatekit::io::parse_cocycle(text) {
        let g = FiniteGroup::cyclic(2).expect("fixed group");
        let m = GModule::trivial_z(&g);
        let _ = tatekit::io::cocycle_from_doc(&doc, &m);
    }
});
