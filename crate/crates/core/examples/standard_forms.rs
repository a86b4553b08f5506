//! Rewriting words into standard form, depth requests and sufficient expansion.

use projgroup::action::SWord;
use projgroup::rewrite::{
    offenders, push_x_left, sufficiently_expand_with_measures, to_standard_form, to_standard_form_traced,
    StandardForm,
};

fn main() -> projgroup::Result<()> {
    let w: SWord = "c a".parse()?;
    let (form, trace) = to_standard_form_traced(&w, 0)?;
    trace.iter().for_each(|l| println!("{l}"));
    println!("{w} => {form}\n");

    let deep = to_standard_form(&"y[1]^-1".parse()?, 3)?;
    println!("y[1]^-1 at depth 3: {deep}\n");

    let f = StandardForm::from_sword(&"y[110]".parse()?)?;
    println!("y[110] . x => {}", push_x_left(&f, &"x".parse()?)?);
    let shallow = StandardForm::from_sword(&"y[0]".parse()?)?;
    println!("y[0] . x => {:?}\n", push_x_left(&shallow, &"x".parse()?).map(|f| f.to_string()));

    let g = to_standard_form(&"y[000] y[001]^-1 y[01] y[0]^2".parse()?, 0)?;
    println!("{g}: offenders {:?}", offenders(&g).iter().map(|s| s.to_string()).collect::<Vec<_>>());
    let exp = sufficiently_expand_with_measures(&g)?;
    for m in &exp.measures {
        println!("  tree size {}, exponents {:?}", m.tree_size, m.exponent_profile().iter().map(|(s, e)| format!("{s}:{e}")).collect::<Vec<_>>());
    }
    println!("sufficiently expanded after {} steps: {}", exp.steps(), exp.form);
    Ok(())
}
