//! Deciding the word problem, with witnesses for non-identities.

use projgroup::action::{evaluate, SWord};
use projgroup::decide::{decide_identity, equal};

fn main() -> projgroup::Result<()> {
    for text in ["a a^-1", "c a c^-1 a^-1", "b a^-2 b a a b^-1 a^-1 b^-1 a", "b a^-2 b a b^-1 a^-1 b^-1 a b a^-1", "x[1] x^-1", "c"] {
        let w: SWord = text.parse()?;
        let v = decide_identity(&w)?;
        println!("{text}: {}", if v.is_identity { "identity" } else { "not identity" });
        println!("  reduced form {}", v.reduced_form);
        if let Some(wit) = &v.witness {
            let input = wit.discriminating_input();
            println!("  maps {}.ξ to {}.(ξ.y^{}) for every ξ", wit.u, wit.v, wit.n);
            println!("  {input} -> {}", evaluate(&w, &input));
        }
        if let Some(xi) = &v.moved {
            println!("  moves {xi} to {}", evaluate(&w, xi));
        }
    }
    let y: SWord = "y".parse()?;
    let expanded: SWord = "x y[0] y[10]^-1 y[11]".parse()?;
    println!("{y} = {expanded}: {}", equal(&y, &expanded)?);
    println!("a = b: {}", equal(&"a".parse()?, &"b".parse()?)?);
    Ok(())
}
