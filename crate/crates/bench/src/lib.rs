//! Sample equations shared by the benchmarks.

use painleve_core::{parse, QuadraticODE};

pub const SAMPLES: [(&str, &str); 5] = [
    ("painleve_i", "w'' = 6*w^2 + z"),
    ("chazy_xiii", "w''' = w*w'"),
    ("f_i", "w'''' = w*w'' + w'^2"),
    ("fifth_order", "w^(5) = -12*w'*w''' - 12*w''^2"),
    ("linearizable_6", "w^(6) = 2*w*w^(5) + 10*w'*w'''' + 20*w''*w'''"),
];

pub fn sample(name: &str) -> QuadraticODE {
    let (_, text) = SAMPLES
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no sample named {name}"));
    parse(text).expect("samples parse")
}

pub fn samples() -> impl Iterator<Item = (&'static str, QuadraticODE)> {
    SAMPLES.iter().map(|(n, t)| (*n, parse(t).expect("samples parse")))
}
