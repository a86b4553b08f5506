//! The actions of x and y on sequences, localized generators, and the
//! coordinate map to the projective line.

use projgroup::action::{apply_x, apply_y, evaluate, SWord};
use projgroup::projective::{builtin_map, phi_of_seq, small_phi_of_seq, Builtin};
use projgroup::sequences::Seq;

fn main() -> projgroup::Result<()> {
    let xi: Seq = "0010(1)".parse()?;
    println!("x:    {xi} -> {}", apply_x(&xi, 1));
    println!("y:    {xi} -> {}", apply_y(&xi, 1));
    println!("y^-1: {xi} -> {}", apply_y(&xi, -1));

    // y doubles the small coordinate.
    let eta: Seq = "1101(0)".parse()?;
    println!("phi({eta}) = {}, phi({eta}.y) = {}", small_phi_of_seq(&eta).unwrap(), small_phi_of_seq(&apply_y(&eta, 1)).unwrap());

    // c acts on the line as y[10] acts on sequences.
    let c: SWord = "y[10]".parse()?;
    let zeta: Seq = "1001(1)".parse()?;
    let t = phi_of_seq(&zeta).unwrap();
    println!(
        "Phi({zeta}) = {t}; c({t}) = {}; Phi({zeta}.y[10]) = {}",
        builtin_map(Builtin::C).apply(&t),
        phi_of_seq(&evaluate(&c, &zeta)).unwrap()
    );

    let w: SWord = "a b^-1 y[0110]^2".parse()?;
    println!("{w} at {zeta}: {}", evaluate(&w, &zeta));
    Ok(())
}
