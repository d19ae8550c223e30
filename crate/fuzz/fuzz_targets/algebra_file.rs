#![no_main]

use libfuzzer_sys::fuzz_target;
use superchar::algebra::AlgebraFile;
use superchar::export::GroupSource;
use superchar::Budget;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(definition) = AlgebraFile::parse(s) {
        let _ = GroupSource::Algebra { definition }.build(&Budget::new(1 << 12));
    }
});
