#![no_main]

use libfuzzer_sys::fuzz_target;
use superchar::parabolic::{Composition, RookPlacement};

// First line is the composition, the rest the placement.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let (head, tail) = s.split_once('\n').unwrap_or((s, ""));
    let Ok(comp) = head.parse::<Composition>() else { return };
    if let Ok(d) = RookPlacement::parse(&comp, tail) {
        assert_eq!(RookPlacement::parse(&comp, &d.to_string()).unwrap(), d);
        let _ = d.profile(&comp);
        let _ = d.elements(&comp);
    }
});
