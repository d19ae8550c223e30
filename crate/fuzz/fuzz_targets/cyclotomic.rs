#![no_main]

use libfuzzer_sys::fuzz_target;
use superchar::scalars::Cyclotomic;

// First byte picks the cyclotomic order.
fuzz_target!(|data: &[u8]| {
    let Some((&order, rest)) = data.split_first() else { return };
    let order = u32::from(order % 64) + 1;
    if let Ok(s) = std::str::from_utf8(rest) {
        if let Ok(c) = Cyclotomic::parse(s, order) {
            assert_eq!(Cyclotomic::parse(&c.to_string(), order).unwrap(), c);
        }
    }
});
