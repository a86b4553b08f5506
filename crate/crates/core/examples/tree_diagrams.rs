//! Labeled tree diagrams: the generators, conjugation by doubling, moves and rendering.

use projgroup::action::SWord;
use projgroup::decide::equal;
use projgroup::diagrams::{
    compose_diagrams, diagram_to_word, doubling_diagram, render, word_to_diagram, Direction, RenderFormat,
};
use projgroup::rewrite::to_standard_form;
use projgroup::sequences::Word;

fn main() -> projgroup::Result<()> {
    let diagram = |s: &str| -> projgroup::Result<_> { Ok(word_to_diagram(&to_standard_form(&s.parse()?, 0)?)) };
    for g in ["a", "b", "c"] {
        println!("{g}:\n{}", render(&diagram(g)?, RenderFormat::Ascii));
    }

    let d2 = doubling_diagram();
    let conj = compose_diagrams(&compose_diagrams(&d2.inverse(), &diagram("a")?), &d2);
    println!("doubling^-1 a doubling:\n{}", render(&conj, RenderFormat::Ascii));
    let a2: SWord = "a^2".parse()?;
    println!("equals a^2: {}\n", equal(&diagram_to_word(&conj), &a2)?);

    let c = diagram("c")?;
    let moved = c.target.vertex_move(&Word::empty(), Direction::Left);
    println!("left move at the root of c's target: {:?}", moved.map(|t| t.labels));
    let shifted = c.increment_labels(0, 1)?;
    println!("c with leaf 0 shifted still is c: {}\n", equal(&diagram_to_word(&shifted), &"c".parse()?)?);

    print!("{}", render(&c, RenderFormat::Dot));
    Ok(())
}
