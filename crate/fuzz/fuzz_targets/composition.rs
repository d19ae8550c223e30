#![no_main]

use std::str::FromStr;

use libfuzzer_sys::fuzz_target;
use superchar::parabolic::Composition;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(c) = Composition::from_str(s) {
            let back = Composition::from_str(&c.to_string()).expect("display reparses");
            assert_eq!(back, c);
        }
    }
});
