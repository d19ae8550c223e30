#![no_main]

use libfuzzer_sys::fuzz_target;
use superchar::export::TheoryFile;
use superchar::Budget;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(file) = TheoryFile::from_json(s) {
        let _ = file.to_csv();
        let _ = file.reverify(&Budget::new(1 << 12), false);
    }
});
