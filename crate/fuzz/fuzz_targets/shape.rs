#![no_main]

use libfuzzer_sys::fuzz_target;
use superchar::linalg::Matrix;
use superchar::parabolic::Shape;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(shape) = Shape::parse(s) {
            let n = shape.n();
            if n <= 16 {
                let _ = shape.matches(&Matrix::identity(n, 2));
                let _ = Shape::parse(&shape.to_string());
            }
        }
    }
});
