//! Advancing y-symbols through binary digits.

use projgroup::bcalc::{non_f_witness, BWord};
use projgroup::rewrite::{sufficiently_expand, to_standard_form};

fn main() -> projgroup::Result<()> {
    let w: BWord = "y0y1".parse().unwrap();
    let (once, at) = w.advance_tracked(2)?;
    println!("{w} -> {once} (occurrence now at {at})");
    println!("normal form of {w}: {}", w.normal_form());

    for s in ["yY", "y0y", "y01y", "Y10y11"] {
        let b: BWord = s.parse().unwrap();
        println!("{s}: potential cancellation {}", b.has_any_potential_cancellation());
    }

    for s in ["y", "Y", "y0", "y0y", "yyy"] {
        let b: BWord = s.parse().unwrap();
        let (u, v, n) = b.advance_to_power()?;
        println!("{s} . {u} advances to {v} y^{n}");
    }

    let form = sufficiently_expand(&to_standard_form(&"y[0]^-1 y[1]^2".parse()?, 0)?)?;
    let wit = non_f_witness(&form, true)?;
    println!("{form}: u={} v={} n={}", wit.u, wit.v, wit.n);
    Ok(())
}
