//! Generators over the finite alphabets, and the relation harness.

use projgroup::action::SWord;
use projgroup::decide::{verify_relation_list, verify_relations};
use projgroup::rewrite::{conjugating_element, expand_to_finite_generators, f_word, Alphabet};

fn main() -> projgroup::Result<()> {
    for s in ["0110", "001", "1110"] {
        println!("f_{s} = {}", f_word(&s.parse()?)?);
    }
    let (g, s, t) = conjugating_element(&"0010".parse()?, &"11".parse()?)?;
    println!("{g} sends {s} to 0010 and {t} to 11");

    let w: SWord = "y[0110] x[01]^-1".parse()?;
    println!("{w} over five letters: {}", expand_to_finite_generators(&w, Alphabet::Five)?);
    println!("{w} over a, b, c: {}", expand_to_finite_generators(&w, Alphabet::Three)?.to_abc_string());

    print!("{}", verify_relations(2, 20, 1)?.to_text());

    let flipped = vec![("flipped".to_string(), "y[10] x[0]".parse()?, "x[0]^-1 y[10]".parse()?)];
    print!("{}", verify_relation_list(&flipped, 20, 1).to_text());
    Ok(())
}
