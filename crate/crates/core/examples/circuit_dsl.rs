//! Parsing, validating and rendering the text circuit format.

use su11::dsl::{parse, render, validate};

const SOURCE: &str = "\
# three-mode primitive followed by a second squeezer
modes a:2 b:1
sq a1 b1 eta=0+0.2i
bs a2 a1 theta=pi/2 phi=pi
sq a2 b1 eta=0+0.3i
";

fn main() {
    let circuit = parse(SOURCE).expect("valid circuit");
    print!("canonical form:\n{}", render(&circuit.spec));
    for w in validate(&circuit) {
        println!("warning at {}: {}", w.span, w.message);
    }

    let broken = "modes a:1 b:1\nsq a1 b3 eta=abc\nfoo\n";
    for e in parse(broken).unwrap_err() {
        println!("error at {}: {}", e.span, e.message);
    }
}
