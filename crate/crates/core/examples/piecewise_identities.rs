//! Exact piecewise projective arithmetic on the generators a, b, c.

use projgroup::projective::{builtin_map, compose_word, Builtin::*, ExtRational};

fn main() {
    for (name, g) in [("a", A), ("b", B), ("c", C)] {
        println!("{name}:\n{}", builtin_map(g).table());
    }

    let w = compose_word(&[(B, 1), (C, 1), (A, -1), (C, -1), (A, 1)]);
    println!("b c a^-1 c^-1 a:\n{}", w.table());

    let half = ExtRational::new(1, 2);
    for (name, letters, lo, hi) in [
        ("a b a", vec![(A, 1), (B, 1), (A, 1)], ExtRational::integer(-1), half.neg()),
        ("b a^-3", vec![(B, 1), (A, -3)], half.clone(), ExtRational::one()),
    ] {
        for p in compose_word(&letters).restrict(&lo, &hi) {
            println!("{name} on [{}, {}]: {}", p.start, p.end, p.matrix);
        }
    }
}
