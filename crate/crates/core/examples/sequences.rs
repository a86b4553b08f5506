//! Finite words, eventually periodic sequences and prefix sets.

use projgroup::sequences::{minimal_cover, PrefixSet, Seq, Word};

fn main() -> projgroup::Result<()> {
    let s: Word = "0110".parse()?;
    let t: Word = "01".parse()?;
    println!("{t} is a prefix of {s}: {}", t.is_prefix_of(&s));
    println!("{s} and 10 incompatible: {}", s.is_incompatible(&"10".parse()?));

    // Canonical forms: 0(10) and (01) name the same sequence.
    let xi: Seq = "0(10)".parse()?;
    println!("0(10) = {xi}, 12 digits: {}", xi.take(12));
    let eta: Seq = "111(01)".parse()?;
    println!("{xi} ~ {eta} (tail equivalent): {}", xi.tail_equivalent(&eta));

    let leaves = PrefixSet::new(vec!["00".parse()?, "01".parse()?, "1".parse()?])?;
    let (i, rest) = leaves.locate(&xi);
    println!("{xi} lies under leaf {i} of {leaves}, remainder {rest}");
    println!("internal vertices: {:?}", leaves.internal_vertices().iter().map(|w| w.to_string()).collect::<Vec<_>>());

    let cover = minimal_cover(&[s.clone(), "1".parse()?]);
    println!("smallest tree with 0110 and 1 as vertices: {cover}");
    Ok(())
}
